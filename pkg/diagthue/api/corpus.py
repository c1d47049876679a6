"""This module defines families of diagonalizable forms and the standard corpus they are checked against."""
from __future__ import annotations

import dataclasses as _dc
import itertools as _it
import random as _random

from . import errors as _errors
from .binary_forms import DiagForm
from .exactnum import QuadElem

I = QuadElem(0, 1, -1)


def power_difference(r: int) -> DiagForm:
    """x^r − y^r."""
    return DiagForm(r, 1, 0, 0, 1)


def shifted_power(r: int, k: int) -> DiagForm:
    """(x + ky)^r − x^r, with j = −k."""
    return DiagForm(r, 1, k, 1, 0)


def large_j(r: int, k: int) -> DiagForm:
    """(x + ky)^r − (x − ky)^r, with j = −2k."""
    return DiagForm(r, 1, k, 1, -k)


def conjugate_form(r: int, alpha: QuadElem, beta: QuadElem) -> DiagForm:
    """Build the form u^r − v^r where u = αx + βy and v is derived from the conjugate of u
    so that the expansion has integer coefficients:

    - for odd r, v = −σ(u), giving F = u^r + σ(u)^r;
    - for d = −1 and r ≡ 2 (mod 4), v = i·σ(u), giving again F = u^r + σ(u)^r.

    α and β must be algebraic integers of Q(√d) with β/α irrational.

    :raise InvalidFormError: If r and d admit neither construction.
    """
    alpha = alpha if isinstance(alpha, QuadElem) else QuadElem(alpha)
    beta = beta if isinstance(beta, QuadElem) else QuadElem(beta)
    d = beta.d or alpha.d
    if r % 2:
        return DiagForm(r, alpha, beta, -alpha.conjugate(), -beta.conjugate())
    if d == -1 and r % 4 == 2:
        return DiagForm(r, alpha, beta, I * alpha.conjugate(), I * beta.conjugate())
    raise _errors.InvalidFormError(f'no integral conjugate construction for r = {r} over Q(√{d})')


def gaussian(r: int, k: int) -> DiagForm:
    """(x + iky)^r − (−x + iky)^r = 2·Re((x + iky)^r) for odd r, with j = 2ik and D = −4k²."""
    return conjugate_form(r, QuadElem(1), QuadElem(0, k, -1))


def real_quadratic(r: int, d: int, half_integral: bool = False) -> DiagForm:
    """(x + β y)^r + (x − σ(β) y)^r-type form over Q(√d) for odd r,
    with β = √d, or β = (1 + √d)/2 when half_integral (requires d ≡ 1 mod 4)."""
    beta = QuadElem('1/2', '1/2', d) if half_integral else QuadElem(0, 1, d)
    return conjugate_form(r, QuadElem(1), beta)


@_dc.dataclass(frozen=True)
class CorpusEntry:
    name: str
    form: DiagForm
    h: int


def standard_corpus() -> tuple[CorpusEntry, ...]:
    """The reference corpus of (form, h) instances used by the lemma suite and the tests."""
    return (
        CorpusEntry('x^7-y^7, h=1', power_difference(7), 1),
        CorpusEntry('x^7-y^7, h=2', power_difference(7), 2),
        CorpusEntry('x^7-y^7, h=127', power_difference(7), 127),
        CorpusEntry('x^3-y^3, h=10', power_difference(3), 10),
        CorpusEntry('x^4-y^4, h=15', power_difference(4), 15),
        CorpusEntry('x^5-y^5, h=40', power_difference(5), 40),
        CorpusEntry('x^8-y^8, h=255', power_difference(8), 255),
        CorpusEntry('(x+2y)^7-x^7, h=200', shifted_power(7, 2), 200),
        CorpusEntry('(x+y)^5-x^5, h=50', shifted_power(5, 1), 50),
        CorpusEntry('(2x+y)^5-(x+y)^5, h=40', DiagForm(5, 2, 1, 1, 1), 40),
        CorpusEntry('(x+ky)^7-(x-ky)^7, k=3e6, h=1', large_j(7, 3 * 10 ** 6), 1),
        CorpusEntry('(x+ky)^7-(x-ky)^7, k=1e7, h=1', large_j(7, 10 ** 7), 1),
        CorpusEntry('(x+5y)^9-(x-5y)^9, h=10', large_j(9, 5), 10),
        CorpusEntry('2Re((x+iy)^7), h=2', gaussian(7, 1), 2),
        CorpusEntry('2Re((x+iy)^7), h=16', gaussian(7, 1), 16),
        CorpusEntry('2Re((x+2iy)^9), h=1000', gaussian(9, 2), 1000),
        CorpusEntry('2Re((x+iy)^10), h=1024', conjugate_form(10, QuadElem(1), I), 1024),
        CorpusEntry('Q(sqrt2), r=7, h=500', real_quadratic(7, 2), 500),
        CorpusEntry('Q(sqrt3), r=5, h=200', real_quadratic(5, 3), 200),
        CorpusEntry('Q(sqrt5) golden, r=7, h=100', real_quadratic(7, 5, half_integral=True), 100),
        CorpusEntry('Q(sqrt-2), r=5, h=100', conjugate_form(5, QuadElem(1), QuadElem(0, 1, -2)), 100),
        CorpusEntry('Q(sqrt-3), r=7, h=300', conjugate_form(7, QuadElem(1), QuadElem(0, 1, -3)), 300),
    )


def rational_forms(count: int, degrees: tuple[int, ...] = (3, 4, 5, 6)) -> list[DiagForm]:
    """Deterministically list distinct rational diagonalizable forms with small integer coefficients."""
    forms = []
    seen = set()
    for r in _it.cycle(degrees):
        for alpha, beta, gamma, delta in _it.product(range(-2, 3), repeat=4):
            if alpha * delta - beta * gamma == 0 or (r, alpha, beta, gamma, delta) in seen:
                continue
            seen.add((r, alpha, beta, gamma, delta))
            forms.append(DiagForm(r, alpha, beta, gamma, delta))
            break
        if len(forms) >= count:
            return forms


def random_forms(count: int, seed: int = 0, degrees: tuple[int, ...] = (7, 8, 9, 10),
                 radicands: tuple[int, ...] = (0, -1, 2, -2, 3, -3, 5)) -> list[DiagForm]:
    """Generate diagonalizable forms with random small coefficients over the given fields.
    Degree/field pairs without an integral construction fall back to rational coefficients."""
    rng = _random.Random(seed)
    forms = []
    while len(forms) < count:
        r = rng.choice(degrees)
        d = rng.choice(radicands)
        if d != 0 and (r % 2 == 1 or d == -1 and r % 4 == 2):
            alpha = QuadElem(rng.randint(1, 4), rng.randint(-3, 3), d)
            beta = QuadElem(rng.randint(-4, 4), rng.choice((-3, -2, -1, 1, 2, 3)), d)
            if (alpha * beta.conjugate() - beta * alpha.conjugate()).is_zero():
                continue
            forms.append(conjugate_form(r, alpha, beta))
        else:
            coeffs = [rng.randint(-4, 4) for _ in range(4)]
            if coeffs[0] * coeffs[3] - coeffs[1] * coeffs[2] == 0:
                continue
            forms.append(DiagForm(r, *coeffs))
    return forms
