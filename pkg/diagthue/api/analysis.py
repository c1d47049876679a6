"""This module computes the functionals u, v, ξ, η, μ, Z, ζ of a solution,
relates each solution to an r-th root of unity and partitions solutions into classes S_ω."""
from __future__ import annotations

import dataclasses as _dc
import functools as _functools
import math as _math
from fractions import Fraction

import flint as _flint

from . import errors as _errors, exactnum as _exn
from .binary_forms import DiagForm
from .exactnum import Magnitude, QuadElem
from .. import settings as _settings

CERT_EXACT_REAL = 'exact-real'
CERT_EXACT_TIE = 'exact-tie'
CERT_DEGENERATE = 'degenerate'
CERT_BALL = 'ball'


@_dc.dataclass(frozen=True)
class RootRelation:
    """The r-th root of unity e^{2πik/r} a solution is related to, with k = arc_index ∈ {1, …, r}."""
    arc_index: int
    tie_flag: bool
    certificate: str
    precision: int | None = None

    def to_json(self) -> dict:
        return {
            'omega_index': self.arc_index,
            'tie_flag': self.tie_flag,
            'certificate': self.certificate,
            'precision': self.precision,
        }


@_dc.dataclass(frozen=True)
class SolutionRecord:
    """A primitive solution with its derived functionals.
    Both μ and μ⁻¹ are exact; whichever has a pole is None."""
    x: int
    y: int
    f_value: int
    u: QuadElem
    v: QuadElem
    xi: QuadElem
    eta: QuadElem
    mu: QuadElem | None
    mu_inverse: QuadElem | None
    z: Magnitude
    zeta: Magnitude
    epsilon: int | None
    omega_index: int | None = None
    tie_flag: bool = False
    certificate: str | None = None

    @property
    def point(self) -> tuple[int, int]:
        return self.x, self.y

    @property
    def u_abs(self) -> Magnitude:
        return Magnitude.of(self.u)

    @property
    def v_abs(self) -> Magnitude:
        return Magnitude.of(self.v)

    @property
    def degenerate(self) -> bool:
        """Whether u = 0 or v = 0."""
        return self.u.is_zero() or self.v.is_zero()

    def order_key(self) -> tuple[int, int, bool]:
        """Deterministic tie-break key among solutions with equal ζ."""
        return abs(self.x), abs(self.y), self.y < 0

    def to_json(self, precision: int = None) -> dict:
        def elem(e: QuadElem | None):
            if e is None:
                return None
            return _exn.format_rational(e.a) if e.is_rational() else e.to_json()

        return {
            'x': str(self.x),
            'y': str(self.y),
            'F': str(self.f_value),
            'u': elem(self.u),
            'v': elem(self.v),
            'xi': elem(self.xi),
            'eta': elem(self.eta),
            'mu': elem(self.mu),
            'mu_inverse': elem(self.mu_inverse),
            'Z': self.z.to_json(precision),
            'zeta': self.zeta.to_json(precision),
            'zeta_squared': elem(self.zeta.square),
            'epsilon': self.epsilon,
            'omega_index': self.omega_index,
            'tie_flag': self.tie_flag,
            'certificate': self.certificate,
        }


def _expected_zeta(mu: QuadElem | None, mu_inverse: QuadElem | None) -> QuadElem:
    if mu is None:
        return 1 - mu_inverse
    if mu.sign() >= 0:
        return 1 - mu if mu <= 1 else 1 - mu.inverse()
    return 1 - mu if mu >= -1 else 1 - mu.inverse()


def solution_profile(form: DiagForm, x: int, y: int, precision: int = None) -> SolutionRecord:
    """Compute every functional of the primitive solution (x, y) and relate it to a root of unity.
    The point is first replaced by its representative of the ± pair with x > 0, or x = 0 and y > 0,
    so F is evaluated there.

    When D > 0, the piecewise identity ζ = 1 − μ (0 ≤ μ ≤ 1), 1 − μ⁻¹ (μ > 1), 1 + |μ| (−1 ≤ μ < 0),
    1 + |μ⁻¹| (μ < −1) is asserted exactly.

    :param form: The diagonalizable form.
    :param x: First coordinate.
    :param y: Second coordinate.
    :param precision: Starting precision for ball computations.
    :raise NotPrimitiveError: If gcd(x, y) ≠ 1.
    :raise ZeroValueError: If F(x, y) = 0.
    """
    if _math.gcd(x, y) != 1:
        raise _errors.NotPrimitiveError(f'({x}, {y}) is not primitive')
    if x < 0 or x == 0 and y < 0:
        x, y = -x, -y
    f_value = form.expanded.evaluate(x, y)
    if f_value == 0:
        raise _errors.ZeroValueError(f'F({x}, {y}) = 0')
    r = form.r
    u, v = form.u(x, y), form.v(x, y)
    xi, eta = u ** r, v ** r
    if xi - eta != f_value:
        raise _errors.InvariantViolationError(f'ξ − η ≠ F at ({x}, {y})')
    mu = eta / xi if xi else None
    mu_inverse = xi / eta if eta else None
    z = max(Magnitude.of(u), Magnitude.of(v))
    zeta = Magnitude.of(f_value) / z ** r

    epsilon = None
    if form.disc > 0:
        if mu is not None and not mu.is_real():
            raise _errors.InvariantViolationError(f'μ is not real although D > 0 at ({x}, {y})')
        epsilon = 1 if mu is not None and mu.sign() < 0 else 0
        expected = _expected_zeta(mu, mu_inverse)
        if zeta.value is None or zeta.value != expected:
            raise _errors.InvariantViolationError(f'ζ identity fails at ({x}, {y}): {zeta} ≠ {expected}')

    record = SolutionRecord(
        x=x, y=y, f_value=f_value,
        u=u, v=v, xi=xi, eta=eta,
        mu=mu, mu_inverse=mu_inverse,
        z=z, zeta=zeta, epsilon=epsilon,
    )
    relation = related_root(record, r, precision)
    return _dc.replace(record, omega_index=relation.arc_index, tie_flag=relation.tie_flag,
                       certificate=relation.certificate)


def root_of_unity(k: int, r: int) -> _flint.acb:
    """Ball around e^{2πik/r} at the current working precision."""
    t = _exn.arb_of(Fraction(2 * k, r))
    return _flint.acb(t.cos_pi(), t.sin_pi())


def _lower_of_adjacent(ka: int, kb: int, r: int) -> int | None:
    if ka % r + 1 == kb:
        return ka
    if kb % r + 1 == ka:
        return kb
    return None


def _certified_nearest(dists: list[_flint.arb], tie: bool, r: int) -> int | None:
    order = sorted(range(r), key=lambda i: (float(dists[i].mid()), i))
    if not tie:
        a = order[0]
        return a + 1 if all(dists[a] < dists[i] for i in order[1:]) else None
    a, b = order[0], order[1]
    if not all(dists[a] < dists[i] and dists[b] < dists[i] for i in order[2:]):
        return None
    lower = _lower_of_adjacent(a + 1, b + 1, r)
    if lower is None:
        raise _errors.InvariantViolationError(f'tied roots {a + 1} and {b + 1} are not adjacent')
    return lower


def related_root(rec: SolutionRecord, r: int, precision: int = None) -> RootRelation:
    """Find the r-th root of unity ω minimizing |u − vω|.

    The decision is certified: real ratios u/v are settled exactly, exact ties are detected
    from (u/v)^r being a negative real, and everything else is settled by ball arithmetic
    refined until one root is strictly closest. Ties go to the lower root of the arc.
    When u = 0 or v = 0, all roots are equally close and ω = 1 (k = r) is taken with the tie flag set.

    :param rec: The solution.
    :param r: The degree.
    :param precision: Starting precision in bits.
    :raise PrecisionExhaustedError: If the maximum precision is reached without a certificate.
    """
    if rec.degenerate:
        return RootRelation(r, True, CERT_DEGENERATE)
    ratio = rec.u / rec.v
    if ratio.is_real():
        if ratio.sign() > 0:
            return RootRelation(r, False, CERT_EXACT_REAL)
        if r % 2 == 0:
            return RootRelation(r // 2, False, CERT_EXACT_REAL)
        return RootRelation((r - 1) // 2, True, CERT_EXACT_TIE)

    w = rec.xi / rec.eta
    tie = w.is_real() and w.sign() < 0
    p = None
    for p in _exn.precisions(precision):
        with _exn.working_precision(p):
            z = _exn.embed(ratio, p).value
            dists = [abs(z - root_of_unity(k, r)) for k in range(1, r + 1)]
            k = _certified_nearest(dists, tie, r)
        if k is not None:
            return RootRelation(k, tie, CERT_EXACT_TIE if tie else CERT_BALL, p)
        _settings.LOGGER.debug(f'Root relation of ({rec.x}, {rec.y}) undecided at {p} bits')
    raise _errors.PrecisionExhaustedError(f'cannot certify the root related to ({rec.x}, {rec.y})', p)


@_dc.dataclass(frozen=True)
class OmegaPartition:
    """Solutions grouped by related root, each class sorted by ζ descending."""
    r: int
    classes: dict[int, tuple[SolutionRecord, ...]]

    def __getitem__(self, k: int) -> tuple[SolutionRecord, ...]:
        return self.classes.get(k, ())

    def __len__(self) -> int:
        return sum(len(c) for c in self.classes.values())

    def sizes(self) -> dict[int, int]:
        return {k: len(c) for k, c in self.classes.items()}

    def to_json(self, precision: int = None) -> dict:
        return {
            'r': self.r,
            'classes': [
                {'omega_index': k, 'size': len(c), 'solutions': [rec.to_json(precision) for rec in c]}
                for k, c in self.classes.items()
            ],
        }


def _compare_records(a: SolutionRecord, b: SolutionRecord) -> int:
    if a.zeta != b.zeta:
        return -1 if a.zeta > b.zeta else 1
    ka, kb = a.order_key(), b.order_key()
    return (ka > kb) - (ka < kb)


def sort_class(records) -> tuple[SolutionRecord, ...]:
    """Sort solutions by ζ descending, breaking ties by (|x|, |y|, y < 0)."""
    return tuple(sorted(records, key=_functools.cmp_to_key(_compare_records)))


def partition(form: DiagForm, solutions) -> OmegaPartition:
    """Partition profiled solutions into classes S_ω keyed by related-root index.

    :param form: The form the solutions belong to.
    :param solutions: Iterable of SolutionRecord.
    :raise InvariantViolationError: If a solution appears twice or does not belong to the form.
    """
    groups: dict[int, list[SolutionRecord]] = {}
    seen = set()
    for rec in solutions:
        if rec.point in seen:
            raise _errors.InvariantViolationError(f'solution {rec.point} appears twice')
        if form.expanded.evaluate(rec.x, rec.y) != rec.f_value:
            raise _errors.InvariantViolationError(f'solution {rec.point} does not belong to {form!r}')
        seen.add(rec.point)
        groups.setdefault(rec.omega_index, []).append(rec)
    return OmegaPartition(
        r=form.r,
        classes={k: sort_class(groups[k]) for k in sorted(groups)},
    )
