"""This module defines diagonalizable binary forms (αx+βy)^r − (γx+δy)^r,
integer binary forms and the invariants j, χ, (A, B, C), D, Δ and Δ′."""
from __future__ import annotations

import dataclasses as _dc
import math as _math
from fractions import Fraction

import sympy as _sympy

from . import errors as _errors, exactnum as _exn
from .exactnum import QuadElem
from .. import settings as _settings


class IntBinaryForm:
    """A binary form c₀x^r + c₁x^{r−1}y + … + c_r y^r with integer coefficients."""

    def __init__(self, r: int, coeffs):
        """Create an integer binary form.

        :param r: The degree, at least 1.
        :param coeffs: The r + 1 coefficients, cₖ being the coefficient of x^{r−k}y^k.
        :raise InvalidFormError: If the degree or the coefficient vector is invalid.
        """
        coeffs = tuple(coeffs)
        if not isinstance(r, int) or r < 1:
            raise _errors.InvalidFormError(f'invalid degree: {r}')
        if len(coeffs) != r + 1:
            raise _errors.InvalidFormError(f'expected {r + 1} coefficients, got {len(coeffs)}')
        if any(not isinstance(c, int) or isinstance(c, bool) for c in coeffs):
            raise _errors.InvalidFormError('coefficients must be integers')
        if not any(coeffs):
            raise _errors.InvalidFormError('form is identically zero')
        self._r = r
        self._coeffs = coeffs

    @property
    def r(self) -> int:
        """The degree."""
        return self._r

    @property
    def coeffs(self) -> tuple[int, ...]:
        """The coefficients c₀ … c_r."""
        return self._coeffs

    def evaluate(self, x: int, y: int) -> int:
        """Evaluate the form at (x, y) by homogeneous Horner evaluation."""
        acc = self._coeffs[0]
        y_pow = 1
        for c in self._coeffs[1:]:
            y_pow *= y
            acc = acc * x + c * y_pow
        return acc

    __call__ = evaluate

    def swapped(self) -> IntBinaryForm:
        """Return the form F(y, x)."""
        return IntBinaryForm(self._r, reversed(self._coeffs))

    def univariate(self, symbol: _sympy.Symbol = None) -> _sympy.Poly:
        """Return the polynomial F(t, 1) as a sympy polynomial over the integers."""
        t = symbol or _sympy.Symbol('t')
        return _sympy.Poly(self._coeffs, t, domain='ZZ')

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntBinaryForm):
            return NotImplemented
        return self._r == other._r and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self._r, self._coeffs))

    def __repr__(self) -> str:
        return f'IntBinaryForm({self._r}, {self._coeffs})'

    def to_json(self) -> dict:
        return {'kind': 'integer', 'r': self._r, 'coeffs': [str(c) for c in self._coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> IntBinaryForm:
        try:
            r = int(obj['r'])
            coeffs = [int(c) for c in obj['coeffs']]
        except (KeyError, TypeError, ValueError) as e:
            raise _errors.InvalidFormError(f'malformed integer form: {e}') from e
        return cls(r, coeffs)


class DiagForm:
    """A diagonalizable form F(x, y) = (αx+βy)^r − (γx+δy)^r with α, β, γ, δ in a common field Q(√d).

    Construction validates the datum eagerly: j = αδ − βγ must be nonzero,
    the expansion must have rational integer coefficients, and the product of the two linear forms
    must factor as χ(Ax² + Bxy + Cy²) with χ² rational and j² = χ²D.
    """

    def __init__(self, r: int, alpha, beta, gamma, delta):
        """Create a diagonalizable form.

        :param r: The degree, at least 3.
        :param alpha: α, a QuadElem or a rational.
        :param beta: β, a QuadElem or a rational.
        :param gamma: γ, a QuadElem or a rational.
        :param delta: δ, a QuadElem or a rational.
        :raise InvalidFormError: If r < 3 or the quadratic part has no rational shape.
        :raise MixedFieldError: If the coefficients live in different quadratic fields.
        :raise DegenerateFormError: If j = 0.
        :raise NotIntegralError: If some expanded coefficient is not a rational integer.
        """
        if not isinstance(r, int) or isinstance(r, bool) or r < 3:
            raise _errors.InvalidFormError(f'degree must be an integer ≥ 3, got {r!r}')
        alpha, beta, gamma, delta = (x if isinstance(x, QuadElem) else QuadElem(x)
                                     for x in (alpha, beta, gamma, delta))
        self._r = r
        self._d = _exn.field_of(alpha, beta, gamma, delta)
        self._alpha, self._beta, self._gamma, self._delta = alpha, beta, gamma, delta
        self._j = alpha * delta - beta * gamma
        if self._j.is_zero():
            raise _errors.DegenerateFormError('j = αδ − βγ vanishes')
        self._expanded = IntBinaryForm(r, self._expand())
        self._chi, self._abc = self._quadratic_part()
        a, b, c = self._abc
        self._disc = b * b - 4 * a * c
        if self._j * self._j != self._chi * self._chi * self._disc:
            raise _errors.InvariantViolationError(f'j² ≠ χ²D for {self!r}')

    def _expand(self) -> list[int]:
        r = self._r
        coeffs = []
        for k in range(r + 1):
            c = _math.comb(r, k) * (self._alpha ** (r - k) * self._beta ** k
                                    - self._gamma ** (r - k) * self._delta ** k)
            if not c.is_integer():
                raise _errors.NotIntegralError(k, str(c))
            coeffs.append(int(c.a))
        return coeffs

    def _quadratic_part(self) -> tuple[QuadElem, tuple[int, int, int]]:
        q = (
            self._alpha * self._gamma,
            self._alpha * self._delta + self._beta * self._gamma,
            self._beta * self._delta,
        )
        lead = next(c for c in q if c)
        ratios = [c / lead for c in q]
        if not all(x.is_rational() for x in ratios):
            raise _errors.InvalidFormError('uv is not a multiple of a rational quadratic form')
        ratios = [x.to_fraction() for x in ratios]
        lcm = _math.lcm(*(x.denominator for x in ratios))
        ints = [int(x * lcm) for x in ratios]
        g = _math.gcd(*ints)
        ints = [i // g for i in ints]
        first = next(i for i in ints if i)
        # The first nonzero ratio is 1, so the first nonzero integer is already positive.
        chi = lead / first
        if not (chi * chi).is_rational():
            raise _errors.InvalidFormError(f'χ² is not rational (χ = {chi})')
        return chi, (ints[0], ints[1], ints[2])

    @property
    def r(self) -> int:
        """The degree."""
        return self._r

    @property
    def d(self) -> int:
        """The radicand of the common field, 0 for rational forms."""
        return self._d

    @property
    def alpha(self) -> QuadElem:
        return self._alpha

    @property
    def beta(self) -> QuadElem:
        return self._beta

    @property
    def gamma(self) -> QuadElem:
        return self._gamma

    @property
    def delta(self) -> QuadElem:
        return self._delta

    @property
    def j(self) -> QuadElem:
        """j = αδ − βγ."""
        return self._j

    @property
    def j_squared(self) -> Fraction:
        """j², always rational."""
        return (self._j * self._j).to_fraction()

    @property
    def j_abs(self) -> _exn.Magnitude:
        """|j| as an exact magnitude."""
        return _exn.Magnitude.of(self._j)

    @property
    def chi(self) -> QuadElem:
        """The constant χ in uv = χ(Ax² + Bxy + Cy²)."""
        return self._chi

    @property
    def quadratic_coeffs(self) -> tuple[int, int, int]:
        """The normalized triple (A, B, C)."""
        return self._abc

    @property
    def disc(self) -> int:
        """D = B² − 4AC."""
        return self._disc

    @property
    def expanded(self) -> IntBinaryForm:
        """The integer binary form this datum expands to."""
        return self._expanded

    def u(self, x: int, y: int) -> QuadElem:
        """The linear form αx + βy."""
        return self._alpha * x + self._beta * y

    def v(self, x: int, y: int) -> QuadElem:
        """The linear form γx + δy."""
        return self._gamma * x + self._delta * y

    def transformed(self, a: int, b: int, c: int, d: int) -> DiagForm:
        """Compose the unimodular substitution (x, y) ↦ (ax + by, cx + dy) into the linear forms.

        :raise ParameterOutOfRangeError: If ad − bc ≠ ±1.
        """
        if a * d - b * c not in (1, -1):
            raise _errors.ParameterOutOfRangeError(f'substitution is not unimodular: det = {a * d - b * c}')
        return DiagForm(
            self._r,
            self._alpha * a + self._beta * c,
            self._alpha * b + self._beta * d,
            self._gamma * a + self._delta * c,
            self._gamma * b + self._delta * d,
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiagForm):
            return NotImplemented
        return (self._r, self._alpha, self._beta, self._gamma, self._delta) == \
            (other._r, other._alpha, other._beta, other._gamma, other._delta)

    def __hash__(self) -> int:
        return hash((self._r, self._alpha, self._beta, self._gamma, self._delta))

    def __repr__(self) -> str:
        return f'DiagForm({self._r}, {self._alpha!s}, {self._beta!s}, {self._gamma!s}, {self._delta!s})'

    def __str__(self) -> str:
        return f'({self._alpha}·x + {self._beta}·y)^{self._r} − ({self._gamma}·x + {self._delta}·y)^{self._r}'

    def to_json(self) -> dict:
        return {
            'kind': 'diagonal',
            'r': self._r,
            'd': self._d,
            'alpha': self._alpha.to_json(),
            'beta': self._beta.to_json(),
            'gamma': self._gamma.to_json(),
            'delta': self._delta.to_json(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> DiagForm:
        """Build a form from a spec such as {"r": 7, "d": -1, "alpha": {...}, "beta": {...}, …}.
        The "d" field, when present, is the default radicand for elements that do not state theirs.

        :raise InvalidFormError: If the spec is malformed.
        """
        try:
            d = int(obj.get('d', 0))
            r = int(obj['r'])
            elements = []
            for name in ('alpha', 'beta', 'gamma', 'delta'):
                e = obj[name]
                if isinstance(e, dict) and 'd' not in e:
                    e = {**e, 'd': d}
                elements.append(QuadElem.from_json(e))
        except (KeyError, TypeError, ValueError) as e:
            raise _errors.InvalidFormError(f'malformed form spec: {e}') from e
        return cls(r, *elements)


AnyForm = DiagForm | IntBinaryForm


def form_from_json(obj: dict) -> AnyForm:
    """Build a form from a tagged spec. The "kind" field is "diagonal" (the default) or "integer".

    :raise InvalidFormError: If the kind is unknown or the spec is malformed.
    """
    if not isinstance(obj, dict):
        raise _errors.InvalidFormError('form spec must be a JSON object')
    match obj.get('kind', 'diagonal'):
        case 'diagonal':
            return DiagForm.from_json(obj)
        case 'integer':
            return IntBinaryForm.from_json(obj)
        case kind:
            raise _errors.InvalidFormError(f'unknown form kind: {kind!r}')


def expand(form: DiagForm) -> IntBinaryForm:
    """Return the integer binary form (αx+βy)^r − (γx+δy)^r.
    Integrality is validated when the form is built, see :class:`DiagForm`."""
    return form.expanded


@_dc.dataclass(frozen=True)
class InvariantSet:
    r: int
    h: int
    j: QuadElem
    chi: QuadElem
    A: int
    B: int
    C: int
    D: int
    Delta: int
    DeltaPrime: Fraction

    def to_json(self) -> dict:
        return {
            'r': self.r,
            'h': str(self.h),
            'j': self.j.to_json(),
            'chi': self.chi.to_json(),
            'A': str(self.A),
            'B': str(self.B),
            'C': str(self.C),
            'D': str(self.D),
            'Delta': str(self.Delta),
            'DeltaPrime': _exn.format_rational(self.DeltaPrime),
        }


def closed_form_discriminant(r: int, j: QuadElem) -> int:
    """Compute Δ = (−1)^{(r−1)(r+2)/2} r^r j^{r(r−1)}.

    :raise InvariantViolationError: If the result is not a rational integer.
    """
    j2 = j * j
    if not j2.is_rational():
        raise _errors.InvariantViolationError(f'j² is not rational: {j2}')
    value = Fraction(r) ** r * j2.to_fraction() ** (r * (r - 1) // 2)
    if value.denominator != 1:
        raise _errors.InvariantViolationError(f'Δ is not an integer: {value}')
    return -value.numerator if (r - 1) * (r + 2) // 2 % 2 else value.numerator


def normalized_discriminant(delta: int, r: int, h: int) -> Fraction:
    """Compute Δ′ = |Δ| / (2^{r²−r} r^r h^{2r−2})."""
    return Fraction(abs(delta), 2 ** (r * r - r) * r ** r * h ** (2 * r - 2))


def invariants(form: DiagForm, h: int) -> InvariantSet:
    """Compute all invariants of a diagonalizable form for the bound h.

    :param form: The form.
    :param h: The bound of the Thue inequality, at least 1.
    :raise ParameterOutOfRangeError: If h < 1.
    """
    if h < 1:
        raise _errors.ParameterOutOfRangeError(f'h must be ≥ 1, got {h}')
    delta = closed_form_discriminant(form.r, form.j)
    a, b, c = form.quadratic_coeffs
    return InvariantSet(
        r=form.r,
        h=h,
        j=form.j,
        chi=form.chi,
        A=a,
        B=b,
        C=c,
        D=form.disc,
        Delta=delta,
        DeltaPrime=normalized_discriminant(delta, form.r, h),
    )


@_dc.dataclass(frozen=True)
class FormClass:
    definite: bool
    degree: int

    @property
    def even(self) -> bool:
        return self.degree % 2 == 0

    @property
    def label(self) -> str:
        return f'{"definite" if self.definite else "indefinite"}/{"even" if self.even else "odd"}'

    def to_json(self) -> dict:
        return {'definite': self.definite, 'parity': 'even' if self.even else 'odd', 'label': self.label}


def _sign_variations(signs: list[int]) -> int:
    signs = [s for s in signs if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(poly: _sympy.Poly) -> int:
    """Count the distinct real roots of a univariate polynomial with a Sturm sequence,
    evaluating sign variations at −∞ and +∞."""
    if poly.degree() <= 0:
        return 0
    chain = poly.sturm()
    at_pos = [1 if p.LC() > 0 else -1 for p in chain]
    at_neg = [s if p.degree() % 2 == 0 else -s for s, p in zip(at_pos, chain)]
    return _sign_variations(at_neg) - _sign_variations(at_pos)


def classify(f: IntBinaryForm) -> FormClass:
    """Decide whether a form is definite. Odd-degree forms are always indefinite;
    an even-degree form is definite iff F(1, 0)·F(0, 1) > 0 and F(t, 1) has no real root."""
    if f.r % 2:
        return FormClass(False, f.r)
    if f.coeffs[0] * f.coeffs[-1] <= 0:
        return FormClass(False, f.r)
    return FormClass(count_real_roots(f.univariate()) == 0, f.r)


def resultant_discriminant(f: IntBinaryForm) -> int:
    """Compute the discriminant of F through the resultant-based discriminant of a univariate polynomial.

    When F(1, 0) = 0 the form is first replaced by G(x, y) = F(x, y + sx) for the smallest s ≥ 1
    with F(1, s) ≠ 0. The substitution is unimodular so the discriminant is unchanged.
    """
    t = _sympy.Symbol('t')
    if f.coeffs[0] != 0:
        poly = f.univariate(t)
    else:
        s = 1
        while f.evaluate(1, s) == 0:
            s += 1
        expr = sum(c * t ** (f.r - k) * (1 + s * t) ** k for k, c in enumerate(f.coeffs))
        poly = _sympy.Poly(expr, t, domain='ZZ')
    return int(poly.discriminant())


def discriminant_crosscheck(forms) -> Fraction:
    """Check that the closed-form Δ and the resultant discriminant differ by one constant factor
    across the given diagonalizable forms.

    :param forms: An iterable of DiagForm.
    :return: The common ratio resultant / closed form.
    :raise InvariantViolationError: If the ratio is not constant.
    """
    ratio = None
    for form in forms:
        closed = closed_form_discriminant(form.r, form.j)
        current = Fraction(resultant_discriminant(form.expanded), closed)
        if ratio is None:
            ratio = current
            _settings.LOGGER.debug(f'Discriminant normalization constant: {ratio}')
        elif current != ratio:
            raise _errors.InvariantViolationError(
                f'discriminant ratio {current} for {form!r} differs from {ratio}')
    if ratio is None:
        raise ValueError('no forms given')
    return ratio
