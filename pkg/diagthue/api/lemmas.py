"""This module verifies the class-level lemma inequalities on concrete solution data
and implements the property bookkeeping behind the iterative lower bound on Z₃.

Every comparison is certified. A ball margin decides when it excludes zero,
otherwise the comparison is redone exactly in Q(√d) or on products of rational powers.
A comparison still undecided at the maximum precision raises PrecisionExhaustedError.
"""
from __future__ import annotations

import dataclasses as _dc
import enum as _enum
import math as _math
import typing as _typ
from fractions import Fraction

import flint as _flint

from . import errors as _errors, exactnum as _exn
from .analysis import OmegaPartition, SolutionRecord, root_of_unity, sort_class
from .binary_forms import DiagForm
from .exactnum import Ball, Magnitude, Ordering, PowerProduct
from .. import settings as _settings


class LemmaId(_enum.Enum):
    REALMU = 'REALMU'
    ALL_D = 'ALL_D'
    ZSTAR = 'ZSTAR'
    GAP = 'GAP'
    ZETA_NOTE = 'ZETA_NOTE'
    ITERATION = 'ITERATION'
    ZK_BOUND = 'ZK_BOUND'
    CROSS_TERM = 'CROSS_TERM'
    PROPERTY = 'PROPERTY'


LEMMA_ORDER = {lemma: i for i, lemma in enumerate(LemmaId)}


class Status(_enum.Enum):
    HOLDS = 'HOLDS'
    VIOLATED = 'VIOLATED'
    NOT_APPLICABLE = 'NOT_APPLICABLE'


@_dc.dataclass(frozen=True)
class LemmaVerdict:
    """Outcome of one lemma check.

    The margin is a ball around lhs − rhs (or its logarithm for product inequalities).
    A verdict is exact when it was settled without balls.
    """
    lemma: LemmaId
    status: Status
    hypothesis_trace: str
    margin: Ball | None = None
    subject: tuple[tuple[int, int], ...] = ()
    omega_index: int | None = None
    exact: bool = False
    details: dict = _dc.field(default_factory=dict, compare=False)

    @property
    def violated(self) -> bool:
        return self.status is Status.VIOLATED

    def to_json(self) -> dict:
        return {
            'lemma': self.lemma.value,
            'status': self.status.value,
            'hypothesis_trace': self.hypothesis_trace,
            'margin': self.margin.to_json() if self.margin is not None else None,
            'subject': [[str(x), str(y)] for x, y in self.subject],
            'omega_index': self.omega_index,
            'exact': self.exact,
            'details': self.details,
        }


def _not_applicable(lemma: LemmaId, trace: str, subject=(), omega_index=None, **details) -> LemmaVerdict:
    return LemmaVerdict(lemma, Status.NOT_APPLICABLE, trace, subject=tuple(subject),
                        omega_index=omega_index, exact=True, details=details)


def _rpow(x: _flint.arb, q: Fraction) -> _flint.arb:
    """x^q for a positive ball x at the current working precision."""
    q = Fraction(q)
    if q.denominator == 1 and q >= 0:
        return x ** int(q)
    return (x.log() * _exn.arb_of(q)).exp()


def _decide(lemma: LemmaId, trace: str, margin: _typ.Callable[[int], _flint.arb],
            exact: _typ.Callable[[], int] = None, *, strict: bool = False, precision: int = None,
            subject=(), omega_index: int = None, **details) -> LemmaVerdict:
    """Decide lhs ≥ rhs (or lhs > rhs when strict) from a margin function returning a ball around lhs − rhs
    at a given precision, and an optional exact sign of lhs − rhs."""
    subject = tuple(subject)
    p = None
    for p in _exn.precisions(precision):
        with _exn.working_precision(p):
            m = margin(p)
        ball = Ball(m, p)
        if not ball.contains_zero():
            status = Status.HOLDS if ball.is_positive() else Status.VIOLATED
            return LemmaVerdict(lemma, status, trace, ball, subject, omega_index, details=details)
        if exact is not None:
            s = exact()
            status = Status.HOLDS if s > 0 or s == 0 and not strict else Status.VIOLATED
            return LemmaVerdict(lemma, status, trace, ball, subject, omega_index, exact=True, details=details)
        _settings.LOGGER.debug(f'{lemma.value} undecided at {p} bits for {subject}')
    _settings.LOGGER.warning(f'{lemma.value} is undecided at {p} bits for {subject}')
    raise _errors.PrecisionExhaustedError(f'{lemma.value} margin still contains 0 at {p} bits for {subject}', p)


def _from_ordering(o: Ordering) -> int:
    return int(o)


def j_exceeds(form: DiagForm, h: int, two_exponent: Fraction = Fraction(1), *, strict: bool = True) -> bool:
    """Exactly decide whether |j| > 2^e·h^{2/r} (or ≥ when not strict)."""
    o = _exn.compare_power_product(
        PowerProduct.of((form.j_squared, Fraction(1, 2))),
        PowerProduct.of((2, two_exponent), (h, Fraction(2, form.r))),
    )
    return o > 0 if strict else o >= 0


def _gap_gate(form: DiagForm, h: int) -> bool:
    return form.disc < 0 or j_exceeds(form, h)


GAP_GATE_TRACE = 'D > 0 and |j| ≤ 2h^{2/r}'


@_dc.dataclass(frozen=True)
class GapChain:
    """The members of one class S_ω in ζ-descending order."""
    omega_index: int | None
    members: tuple[SolutionRecord, ...]

    @classmethod
    def of(cls, records) -> GapChain:
        members = sort_class(records)
        return cls(members[0].omega_index if members else None, members)

    @classmethod
    def from_partition(cls, partition: OmegaPartition, k: int) -> GapChain:
        return cls(k, partition[k])

    def __len__(self) -> int:
        return len(self.members)

    def __getitem__(self, i: int) -> SolutionRecord:
        return self.members[i]

    def __iter__(self):
        return iter(self.members)

    def consecutive(self):
        """Yield the pairs (previous, current) of consecutive members."""
        return zip(self.members, self.members[1:])

    @staticmethod
    def spacing(form: DiagForm, h: int, precision: int = None) -> _flint.arb:
        """The ball around H = 2h^{2/r}|j|⁻¹."""
        p = precision or _settings.DEFAULT_PRECISION
        with _exn.working_precision(p):
            return 2 * _rpow(_flint.arb(h), Fraction(2, form.r)) / form.j_abs.ball(p)

    @staticmethod
    def second_floor(form: DiagForm, h: int, precision: int = None) -> _flint.arb:
        """Lower bound |j|/(2h^{1/r}) on Z of the second member."""
        p = precision or _settings.DEFAULT_PRECISION
        with _exn.working_precision(p):
            return form.j_abs.ball(p) / (2 * _rpow(_flint.arb(h), Fraction(1, form.r)))

    @staticmethod
    def gap_floor(z_prev: Magnitude, form: DiagForm, h: int, precision: int = None) -> _flint.arb:
        """Lower bound (|j|/2h)·Z_{i−1}^{r−1} on the Z of the member following one of size z_prev."""
        p = precision or _settings.DEFAULT_PRECISION
        with _exn.working_precision(p):
            return form.j_abs.ball(p) / (2 * h) * z_prev.ball(p) ** (form.r - 1)

    def floors(self, form: DiagForm, h: int, precision: int = None) -> list[_flint.arb | None]:
        """Lower bounds on Z_i implied by the lemmas, None for the first member."""
        bounds = []
        for i, rec in enumerate(self.members):
            if i == 0:
                bounds.append(None)
            elif i == 1:
                bounds.append(self.second_floor(form, h, precision))
            else:
                bounds.append(self.gap_floor(self.members[i - 1].z, form, h, precision))
        return bounds


def check_realmu(rec: SolutionRecord, form: DiagForm, precision: int = None) -> LemmaVerdict:
    """Check u/v = |μ⁻¹|^{1/r}·e^{πiε/r}·ω for a solution of a form with D > 0."""
    subject, k, r = (rec.point,), rec.omega_index, form.r
    if form.disc < 0:
        return _not_applicable(LemmaId.REALMU, 'D < 0', subject, k)
    if rec.v.is_zero():
        return _not_applicable(LemmaId.REALMU, 'v = 0', subject, k)
    if rec.u.is_zero():
        return LemmaVerdict(LemmaId.REALMU, Status.HOLDS, 'u = 0, both sides vanish', None, subject, k, exact=True)
    z = rec.u / rec.v
    eps = rec.epsilon
    if z ** (2 * r) != rec.mu_inverse * rec.mu_inverse:
        raise _errors.InvariantViolationError(f'|u/v|^r ≠ |μ⁻¹| at {rec.point}')
    if not z.is_real():
        raise _errors.InvariantViolationError(f'u/v is not real at {rec.point} although D > 0')
    phase = (2 * k + eps) % (2 * r)
    expected = 0 if z.sign() > 0 else r
    status = Status.HOLDS if phase == expected else Status.VIOLATED
    return LemmaVerdict(LemmaId.REALMU, status, 'D > 0', None, subject, k, exact=True,
                        details={'epsilon': eps, 'phase': f'{phase}π/{r}'})


def check_all_d(rec: SolutionRecord, form: DiagForm, precision: int = None) -> LemmaVerdict:
    """Check |u/v − ω| ≤ (Z/|v|)·ζ, assuming ε = 0 when D > 0."""
    subject, k, r = (rec.point,), rec.omega_index, form.r
    if rec.v.is_zero():
        return _not_applicable(LemmaId.ALL_D, 'v = 0', subject, k)
    if form.disc > 0 and rec.epsilon != 0:
        return _not_applicable(LemmaId.ALL_D, 'D > 0 and ε = 1', subject, k)
    z = rec.u / rec.v
    rhs = rec.z / rec.v_abs * rec.zeta

    def margin(p):
        return rhs.ball(p) - abs(_exn.embed(z, p).value - root_of_unity(k, r))

    exact = None
    if z.is_real() and 2 * k % r == 0:
        omega = 1 if k == r else -1
        lhs = Magnitude.of(z - omega)
        exact = lambda: (rhs.square - lhs.square).sign()
    trace = 'D > 0, ε = 0' if form.disc > 0 else 'D < 0'
    return _decide(LemmaId.ALL_D, trace, margin, exact, precision=precision, subject=subject, omega_index=k)


def check_pair(rec: SolutionRecord, rec_star: SolutionRecord, form: DiagForm, h: int,
               precision: int = None) -> LemmaVerdict:
    """Check Z_* ≥ |j|/(2h^{1/r}) for two solutions of one class, along with the intermediate |j| ≤ 2ZZ_*.
    The pair is reordered so that ζ_* ≤ ζ.

    :raise SameSolutionError: If both records are the same solution.
    """
    if rec.point == rec_star.point:
        raise _errors.SameSolutionError(f'{rec.point} is paired with itself')
    if rec_star.zeta > rec.zeta:
        rec, rec_star = rec_star, rec
    subject, k, r = (rec.point, rec_star.point), rec.omega_index, form.r
    if rec.omega_index != rec_star.omega_index:
        return _not_applicable(LemmaId.ZSTAR, 'solutions are related to different roots', subject)
    j2 = form.j_squared
    if (4 * rec.z.square * rec_star.z.square - j2).sign() < 0:
        return LemmaVerdict(LemmaId.ZSTAR, Status.VIOLATED, '|j| ≤ 2ZZ_* fails', None, subject, k, exact=True)

    def margin(p):
        return rec_star.z.ball(p) - GapChain.second_floor(form, h, p)

    def exact():
        return ((4 * rec_star.z.square) ** r * (h * h) - j2 ** r).sign()

    return _decide(LemmaId.ZSTAR, 'ζ_* ≤ ζ, |j| ≤ 2ZZ_* holds', margin, exact, precision=precision,
                   subject=subject, omega_index=k)


def _check_order(prev: SolutionRecord, curr: SolutionRecord):
    if prev.point == curr.point:
        raise _errors.SameSolutionError(f'{prev.point} is paired with itself')
    if curr.zeta > prev.zeta:
        raise _errors.ParameterOutOfRangeError(f'{curr.point} has a larger ζ than {prev.point}')


def check_gap(prev: SolutionRecord, curr: SolutionRecord, form: DiagForm, h: int,
              precision: int = None) -> LemmaVerdict:
    """Check the gap principle Z_i ≥ (|j|/2h)·Z_{i−1}^{r−1} for consecutive members of a class.

    :raise SameSolutionError: If both records are the same solution.
    :raise ParameterOutOfRangeError: If ζ_curr > ζ_prev.
    """
    _check_order(prev, curr)
    subject, k, r = (prev.point, curr.point), curr.omega_index, form.r
    if not _gap_gate(form, h):
        return _not_applicable(LemmaId.GAP, GAP_GATE_TRACE, subject, k)
    j2 = form.j_squared

    def margin(p):
        return curr.z.ball(p) - GapChain.gap_floor(prev.z, form, h, p)

    def exact():
        return (curr.z.square * (4 * h * h) - prev.z.square ** (r - 1) * j2).sign()

    trace = 'D < 0' if form.disc < 0 else '|j| > 2h^{2/r}'
    return _decide(LemmaId.GAP, trace, margin, exact, precision=precision, subject=subject, omega_index=k)


def check_cross_term(prev: SolutionRecord, curr: SolutionRecord, form: DiagForm, h: int,
                     precision: int = None) -> LemmaVerdict:
    """Check |j| ≤ |u_{i−1}v_i − u_iv_{i−1}| ≤ 2·Z_{i−1}·Z_i·ζ_{i−1} for consecutive members of a class.
    The left half is exact since the middle term is |j|·|x_{i−1}y_i − x_iy_{i−1}|.

    :raise SameSolutionError: If both records are the same solution.
    :raise ParameterOutOfRangeError: If ζ_curr > ζ_prev.
    """
    _check_order(prev, curr)
    subject, k = (prev.point, curr.point), curr.omega_index
    if not _gap_gate(form, h):
        return _not_applicable(LemmaId.CROSS_TERM, GAP_GATE_TRACE, subject, k)
    w = prev.u * curr.v - curr.u * prev.v
    det = prev.x * curr.y - curr.x * prev.y
    if w != form.j * det:
        raise _errors.InvariantViolationError(f'cross term of {subject} differs from j·det')
    if det == 0:
        raise _errors.SameSolutionError(f'{prev.point} and {curr.point} are proportional')
    middle = Magnitude.of(w)
    bound = prev.z * curr.z * prev.zeta

    def margin(p):
        with _exn.working_precision(p):
            return 2 * bound.ball(p) - middle.ball(p)

    def exact():
        return (4 * bound.square - middle.square).sign()

    trace = 'D < 0' if form.disc < 0 else '|j| > 2h^{2/r}'
    return _decide(LemmaId.CROSS_TERM, trace, margin, exact, precision=precision, subject=subject,
                   omega_index=k, determinant=det)


def _zeta_note(chain: GapChain, form: DiagForm, h: int, precision: int = None) -> list[LemmaVerdict]:
    k = chain.omega_index
    if len(chain) < 2:
        return [_not_applicable(LemmaId.ZETA_NOTE, 'fewer than two members', omega_index=k)]
    if not j_exceeds(form, h):
        return [_not_applicable(LemmaId.ZETA_NOTE, '|j| ≤ 2h^{2/r}', omega_index=k)]
    verdicts = []
    for rec in chain.members[1:]:
        verdicts.append(_decide(
            LemmaId.ZETA_NOTE, '|j| > 2h^{2/r}',
            lambda p, rec=rec: 1 - rec.zeta.ball(p),
            lambda rec=rec: (1 - rec.zeta.square).sign(),
            strict=True, precision=precision, subject=(rec.point,), omega_index=k,
        ))
    return verdicts


def iteration_exponent(r: int, t: int) -> Fraction:
    """The power of 2 in the hypothesis |j| > 2^e·h^{2/r} for a class of t ≥ 3 members,
    e = 1 + (r−2)/(r(R(t−1)−1)) with R(k) = (r−1)^{k−1}."""
    big_r = (r - 1) ** (t - 2)
    return 1 + Fraction(r - 2, r * (big_r - 1))


def _iteration(chain: GapChain, form: DiagForm, h: int, precision: int = None) -> LemmaVerdict:
    k, t, r = chain.omega_index, len(chain), form.r
    if t < 3:
        return _not_applicable(LemmaId.ITERATION, 'fewer than three members', omega_index=k)
    e = iteration_exponent(r, t)
    details = {'t': t, 'R': str((r - 1) ** (t - 2)), 'two_exponent': _exn.format_rational(e)}
    trace = f'|j| > 2^({_exn.format_rational(e)})·h^(2/{r}), R(k) = (r−1)^(k−1)'
    if not j_exceeds(form, h, e):
        return _not_applicable(LemmaId.ITERATION, f'not {trace}', omega_index=k, **details)
    rec = chain[t - 2]
    return _decide(
        LemmaId.ITERATION, trace,
        lambda p: _exn.arb_of(Fraction(1, 2)) - rec.zeta.ball(p),
        lambda: (Fraction(1, 4) - rec.zeta.square).sign(),
        strict=True, precision=precision, subject=(rec.point,), omega_index=k, **details,
    )


def check_class(chain: GapChain, form: DiagForm, h: int, precision: int = None) -> list[LemmaVerdict]:
    """Run the per-class checks: REALMU and ALL_D on every member, ZETA_NOTE, ITERATION,
    and CROSS_TERM on every consecutive pair. Verdicts are ordered by lemma, then by member."""
    verdicts = [check_realmu(rec, form, precision) for rec in chain]
    verdicts += [check_all_d(rec, form, precision) for rec in chain]
    verdicts += _zeta_note(chain, form, h, precision)
    verdicts.append(_iteration(chain, form, h, precision))
    verdicts += [check_cross_term(prev, curr, form, h, precision) for prev, curr in chain.consecutive()]
    return verdicts


def zk_condition_exponents(r: int) -> tuple[Fraction, Fraction]:
    """Return (i₇, i₈) = (13r²/(r²−5r−2), 2(3r−1)(r−2)/(r²−5r−2))."""
    den = r * r - 5 * r - 2
    return Fraction(13 * r * r, den), Fraction(2 * (3 * r - 1) * (r - 2), den)


def zk_condition(form: DiagForm, h: int) -> bool:
    """Exactly decide |j| ≥ 2r^{i₇/r}h^{i₈/r}."""
    r = form.r
    i7, i8 = zk_condition_exponents(r)
    o = _exn.compare_power_product(
        PowerProduct.of((form.j_squared, Fraction(1, 2))),
        PowerProduct.of((2, 1), (r, i7 / r), (h, i8 / r)),
    )
    return o >= 0


def zk_exponents(r: int, n: int) -> tuple[Fraction, ...]:
    """The exponents (a₁, …, a₅) = (nr, n+4, (3nr+2)/(r−2), (nr+2)/(r−2), 2n+1) of the Z₃ lower bound."""
    return (Fraction(n * r), Fraction(n + 4), Fraction(3 * n * r + 2, r - 2),
            Fraction(n * r + 2, r - 2), Fraction(2 * n + 1))


def _bound_power_product(a: tuple[Fraction, ...], r: int, j_squared: Fraction, h: int,
                         z2_square: Fraction) -> PowerProduct:
    a1, a2, a3, a4, a5 = a
    return PowerProduct.of((z2_square, a1 / 2), (2, -a2), (r, -a3), (j_squared, -a4 / 2), (h, -a5))


def _bound_log(a: tuple[Fraction, ...], r: int, z2: Magnitude, j_squared: Fraction, h: int,
               precision: int) -> _flint.arb:
    a1, a2, a3, a4, a5 = a
    rest = PowerProduct.of((2, -a2), (r, -a3), (j_squared, -a4 / 2), (h, -a5))
    with _exn.working_precision(precision):
        return _exn.arb_of(a1) * z2.ball(precision).log() + rest.log_ball(precision)


def zk_rhs_log(r: int, n: int, z2: Magnitude, j_squared: Fraction, h: int, precision: int = None) -> _flint.arb:
    """Ball around log(Z₂^{nr}/(2^{n+4}·r^{(3nr+2)/(r−2)}·|j|^{(nr+2)/(r−2)}·h^{2n+1}))."""
    return _bound_log(zk_exponents(r, n), r, z2, Fraction(j_squared), h, precision or _settings.DEFAULT_PRECISION)


def divergence_index(r: int, z2: Magnitude, z3: Magnitude, j_squared: Fraction, h: int,
                     precision: int = None) -> int | None:
    """Smallest n ≥ 1 at which the Z₃ lower bound certainly exceeds Z₃, or None when the bound
    is not certainly increasing in n."""
    p = precision or _settings.DEFAULT_PRECISION
    with _exn.working_precision(p):
        lz2, lz3 = z2.ball(p).log(), z3.ball(p).log()
        l2, lr, lh = _flint.arb(2).log(), _flint.arb(r).log(), _flint.arb(h).log()
        lj = _exn.arb_of(j_squared).log() / 2
        slope = (r * lz2 - l2 - _exn.arb_of(Fraction(3 * r, r - 2)) * lr
                 - _exn.arb_of(Fraction(r, r - 2)) * lj - 2 * lh)
        if not slope > 0:
            return None
        c0 = -4 * l2 - _exn.arb_of(Fraction(2, r - 2)) * (lr + lj) - lh

        def exceeds(n: int) -> bool:
            return n * slope + c0 - lz3 > 0

        n = max(1, _math.floor((float(lz3.mid()) - float(c0.mid())) / float(slope.mid())) + 1)
        while n > 1 and exceeds(n - 1):
            n -= 1
        limit = n + 64
        while not exceeds(n):
            n += 1
            if n > limit:
                return None
        return n


def zk_bound(chain: GapChain, form: DiagForm, h: int, n: int = 1, precision: int = None) -> LemmaVerdict:
    """Compare Z₃ with the n-th lower bound Z₂^{nr}/(2^{n+4}r^{(3nr+2)/(r−2)}|j|^{(nr+2)/(r−2)}h^{2n+1})
    on a class of exactly three members, under |j| ≥ 2r^{i₇/r}h^{i₈/r}.
    The bound grows without limit in n, so data meeting the condition always produces a VIOLATED verdict
    at the reported divergence index.

    :raise WrongClassSizeError: If the class does not have three members.
    :raise ParameterOutOfRangeError: If r < 7 or n < 1.
    """
    r = form.r
    if r < 7:
        raise _errors.ParameterOutOfRangeError(f'the Z₃ bound needs r ≥ 7, got {r}')
    if n < 1:
        raise _errors.ParameterOutOfRangeError(f'n must be ≥ 1, got {n}')
    if len(chain) != 3:
        raise _errors.WrongClassSizeError(3, len(chain))
    k = chain.omega_index
    subject = tuple(rec.point for rec in chain)
    i7, i8 = zk_condition_exponents(r)
    condition = f'|j| ≥ 2·r^({_exn.format_rational(i7 / r)})·h^({_exn.format_rational(i8 / r)})'
    if not zk_condition(form, h):
        return _not_applicable(LemmaId.ZK_BOUND, f'not {condition}', subject, k, n=n)
    z2, z3 = chain[1].z, chain[2].z
    j2 = form.j_squared
    a = zk_exponents(r, n)

    def margin(p):
        with _exn.working_precision(p):
            return z3.ball(p).log() - _bound_log(a, r, z2, j2, h, p)

    exact = None
    if z2.square.is_rational() and z3.square.is_rational():
        def exact():
            return _from_ordering(_exn.compare_power_product(
                PowerProduct.of((z3.square.to_fraction(), Fraction(1, 2))),
                _bound_power_product(a, r, j2, h, z2.square.to_fraction()),
            ))

    p = precision or _settings.DEFAULT_PRECISION
    with _exn.working_precision(p):
        rhs_log10 = zk_rhs_log(r, n, z2, j2, h, p) / _flint.arb(10).log()
    return _decide(LemmaId.ZK_BOUND, condition, margin, exact, precision=precision, subject=subject,
                   omega_index=k, n=n, exponents=[_exn.format_rational(x) for x in a],
                   rhs_log10=Ball(rhs_log10, p).to_json(),
                   divergence_n=divergence_index(r, z2, z3, j2, h, p))


@_dc.dataclass(frozen=True)
class PropertyQuintuple:
    """The property P[a₁, …, a₅]: Z₃ ≥ Z₂^{a₁}/(2^{a₂}r^{a₃}|j|^{a₄}h^{a₅}), together with the step (n, g)
    it is about to be fed into. The quantities A₁ and B₁…B₄ are derived on access."""
    r: int
    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction
    a5: Fraction
    n: int = 1
    g: int = 0
    sigma_nonzero: bool = True

    def __post_init__(self):
        for name in ('a1', 'a2', 'a3', 'a4', 'a5'):
            object.__setattr__(self, name, _exn.to_rational(getattr(self, name)))
        if self.g not in (0, 1):
            raise _errors.ParameterOutOfRangeError(f'g must be 0 or 1, got {self.g}')
        if self.n < 1:
            raise _errors.ParameterOutOfRangeError(f'n must be ≥ 1, got {self.n}')

    @property
    def exponents(self) -> tuple[Fraction, ...]:
        return self.a1, self.a2, self.a3, self.a4, self.a5

    @property
    def A1(self) -> Fraction:
        r, n, g = self.r, self.n, self.g
        return self.a1 * (r - 1) - n * r - 1 + g

    @property
    def B1(self) -> Fraction:
        r, n, g = self.r, self.n, self.g
        return self.A1 - self.a4 * (r - 1) - Fraction(r * (g + n) + 2, r - 2)

    @property
    def B2(self) -> Fraction:
        return self.A1 + self.a2 * (self.r - 1) + 3 * self.n + 4

    @property
    def B3(self) -> Fraction:
        r, n, g = self.r, self.n, self.g
        return self.a3 * (r - 1) + Fraction(r * (2 * g + 3 * n) + 2, r - 2)

    @property
    def B4(self) -> Fraction:
        return self.A1 / self.r + self.a5 * (self.r - 1) + 1

    def with_step(self, n: int, g: int, sigma_nonzero: bool = True) -> PropertyQuintuple:
        return _dc.replace(self, n=n, g=g, sigma_nonzero=sigma_nonzero)

    def label(self) -> str:
        return '(' + ','.join(_exn.format_rational(a) for a in self.exponents) + ')'

    def to_json(self) -> dict:
        return {
            'r': self.r,
            'a': [_exn.format_rational(a) for a in self.exponents],
            'n': self.n,
            'g': self.g,
            'sigma_nonzero': self.sigma_nonzero,
            'A1': _exn.format_rational(self.A1),
            'B1': _exn.format_rational(self.B1),
            'B2': _exn.format_rational(self.B2),
            'B3': _exn.format_rational(self.B3),
            'B4': _exn.format_rational(self.B4),
        }


def seed(r: int, n: int = 1, g: int = 0, sigma_nonzero: bool = True) -> PropertyQuintuple:
    """The initial property P[r−1, 1, 0, −1, 1], which is the gap principle combined with the Z_* floor."""
    return PropertyQuintuple(r, Fraction(r - 1), Fraction(1), Fraction(0), Fraction(-1), Fraction(1),
                             n, g, sigma_nonzero)


@_dc.dataclass(frozen=True)
class InductionResult:
    source: PropertyQuintuple
    conditions: dict[str, bool]
    successor: PropertyQuintuple | None
    note: str = ''

    @property
    def failed(self) -> tuple[str, ...]:
        return tuple(label for label, ok in self.conditions.items() if not ok)

    def to_json(self) -> dict:
        return {
            'source': self.source.to_json(),
            'conditions': self.conditions,
            'failed': list(self.failed),
            'successor': self.successor.label() if self.successor is not None else None,
            'note': self.note,
        }


def induction_conditions(p: PropertyQuintuple) -> dict[str, bool]:
    """Evaluate conditions (i) to (iv) exactly."""
    r = p.r
    den = r * r - 5 * r - 2
    a1, b1, b2, b3, b4 = p.A1, p.B1, p.B2, p.B3, p.B4
    return {
        'i': a1 > 0,
        'ii': b1 > 0,
        'iii': b1 * Fraction(13 * r * r, den) >= r * (b3 + (b2 - b1) / 2),
        'iv': b1 * Fraction(2 * (3 * r - 1) * (r - 2), den) >= r * b4,
    }


def successor_exponents(r: int, n: int, g: int) -> tuple[Fraction, ...]:
    """The exponents obtained from a successful step (n, g)."""
    return (Fraction(r * (n + 1 - g) - 1 + g), Fraction(n + 4), Fraction(r * (2 * g + 3 * n) + 2, r - 2),
            Fraction(r * (g + n) + 2, r - 2), Fraction(2 * n + 1 - g))


def induction_step(p: PropertyQuintuple, r: int = None) -> InductionResult:
    """Apply one induction step to a property.

    When all four conditions hold and Σ_{n,g} does not vanish, the successor property is emitted,
    prepared for the step (n+1, g). When Σ_{n,g} vanishes the conditions are still reported
    but no successor is produced.

    :param p: The property and its step (n, g).
    :param r: The degree, defaults to the one of the property.
    :raise ParameterOutOfRangeError: If r < 7, r disagrees with the property, or a₂ + a₄ < 0.
    :raise ConditionFailedError: If any of the conditions fails.
    """
    r = p.r if r is None else r
    if r != p.r:
        raise _errors.ParameterOutOfRangeError(f'property is for r = {p.r}, not {r}')
    if r < 7:
        raise _errors.ParameterOutOfRangeError(f'induction needs r ≥ 7, got {r}')
    if p.a2 + p.a4 < 0:
        raise _errors.ParameterOutOfRangeError('induction needs a₂ + a₄ ≥ 0')
    conditions = induction_conditions(p)
    failed = [label for label, ok in conditions.items() if not ok]
    if failed:
        raise _errors.ConditionFailedError(*failed)
    if not p.sigma_nonzero:
        return InductionResult(p, conditions, None, f'Σ_{{{p.n},{p.g}}} = 0, no successor')
    a = successor_exponents(r, p.n, p.g)
    return InductionResult(p, conditions, PropertyQuintuple(r, *a, p.n + 1, p.g, True))


def induction_chain(r: int, steps: int, sigma: bool = True) -> list[InductionResult]:
    """Iterate induction steps from the seed.

    With sigma (Σ_{1,0} ≠ 0) the steps are (1,0), (2,0), …; otherwise the steps are (1,1), (2,1), ….
    A step whose conditions fail is reported with its failed conditions and ends the chain.
    """
    if steps < 1:
        raise _errors.ParameterOutOfRangeError(f'steps must be ≥ 1, got {steps}')
    p = seed(r, 1, 0 if sigma else 1)
    results = []
    for _ in range(steps):
        try:
            result = induction_step(p, r)
        except _errors.ConditionFailedError as e:
            _settings.LOGGER.info(f'Induction step (n, g) = ({p.n}, {p.g}) fails at r = {r}: {e.failed}')
            results.append(InductionResult(p, induction_conditions(p), None, 'ConditionFailed'))
            break
        results.append(result)
        if result.successor is None:
            break
        p = result.successor
    return results


def check_property(p: PropertyQuintuple, chain: GapChain, form: DiagForm, h: int,
                   precision: int = None) -> LemmaVerdict:
    """Evaluate P[a₁, …, a₅] on a concrete class of three members.

    :raise WrongClassSizeError: If the class does not have three members.
    """
    if len(chain) != 3:
        raise _errors.WrongClassSizeError(3, len(chain))
    k = chain.omega_index
    subject = tuple(rec.point for rec in chain)
    if not _gap_gate(form, h):
        return _not_applicable(LemmaId.PROPERTY, GAP_GATE_TRACE, subject, k, property=p.label())
    r, j2 = form.r, form.j_squared
    z2, z3 = chain[1].z, chain[2].z
    a = p.exponents

    def margin(q):
        with _exn.working_precision(q):
            return z3.ball(q).log() - _bound_log(a, r, z2, j2, h, q)

    exact = None
    if z2.square.is_rational() and z3.square.is_rational():
        def exact():
            return _from_ordering(_exn.compare_power_product(
                PowerProduct.of((z3.square.to_fraction(), Fraction(1, 2))),
                _bound_power_product(a, r, j2, h, z2.square.to_fraction()),
            ))

    return _decide(LemmaId.PROPERTY, f'P{p.label()}', margin, exact, precision=precision, subject=subject,
                   omega_index=k, property=p.label())


def verify_all(form: DiagForm, h: int, partition: OmegaPartition, precision: int = None) -> list[LemmaVerdict]:
    """Run every lemma over every class of a partition.
    Verdicts are ordered by class index, then by lemma, then by member."""
    verdicts = []
    for k in partition.classes:
        chain = GapChain.from_partition(partition, k)
        current = check_class(chain, form, h, precision)
        members = chain.members
        current += [check_pair(members[i], members[m], form, h, precision)
                    for i in range(len(members)) for m in range(i + 1, len(members))]
        current += [check_gap(prev, curr, form, h, precision) for prev, curr in chain.consecutive()]
        if len(chain) == 3:
            if form.r >= 7:
                current.append(zk_bound(chain, form, h, 1, precision))
            current.append(check_property(seed(form.r), chain, form, h, precision))
        current.sort(key=lambda v: LEMMA_ORDER[v.lemma])
        verdicts += current
    return verdicts
