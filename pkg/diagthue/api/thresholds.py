"""This module evaluates the discriminant thresholds of the counting theorems exactly,
checks their hypotheses on a given form and tabulates the thresholds against each other."""
from __future__ import annotations

import dataclasses as _dc
import enum as _enum
import functools as _functools
import re as _re
from fractions import Fraction

import flint as _flint

from . import errors as _errors, exactnum as _exn
from .binary_forms import DiagForm, classify, invariants
from .exactnum import Ordering, PowerProduct
from .. import settings as _settings

SIEGEL_CONSTANTS = {
    1: 45 + Fraction(593, 913),
    2: 6 + Fraction(134, 4583),
    3: 75 + Fraction(156, 167),
}

DEFINITE_NOTE = ('The definite row reads "1 if D<0 and F is definite" in the AKSS statements '
                 'and "1 if D>0 and F is definite" in the Siegel statement; the row is keyed on computed definiteness.')

SIEGEL_RANGE_NOTE = 'Siegel thresholds are stated for r ≥ 6 − ℓ, which is looser than the surrounding narrative.'

SPEC_PATTERN = _re.compile(r'(main|akss1|akss2:(\d+)|siegel:(\d+))')


class Theorem(_enum.Enum):
    SIEGEL = 'siegel'
    AKSS_I = 'akss1'
    AKSS_II = 'akss2'
    MAIN = 'main'


class CaseRow(_enum.Enum):
    D_NEG = 'D_NEG'
    D_POS_EVEN_INDEF = 'D_POS_EVEN_INDEF'
    D_POS_ODD_INDEF = 'D_POS_ODD_INDEF'
    DEFINITE = 'DEFINITE'


def _akss_ii_denominator(r: int, m: int) -> int:
    return (r - 1) ** (m - 1) - 2 * r - 1


@_dc.dataclass(frozen=True)
class ThresholdSpec:
    """A theorem instance: which threshold, for which degree and bound.
    The parameter is ℓ for SIEGEL and m for AKSS_II, None otherwise."""
    theorem: Theorem
    r: int
    h: int = 1
    param: int | None = None

    def __post_init__(self):
        r, h, t = self.r, self.h, self.theorem
        if h < 1:
            raise _errors.ParameterOutOfRangeError(f'h must be ≥ 1, got {h}')
        match t:
            case Theorem.SIEGEL:
                if self.param not in SIEGEL_CONSTANTS:
                    raise _errors.ParameterOutOfRangeError(f'ℓ must be 1, 2 or 3, got {self.param}')
                if r < 6 - self.param:
                    raise _errors.ParameterOutOfRangeError(f'SIEGEL(ℓ={self.param}) needs r ≥ {6 - self.param}')
            case Theorem.AKSS_I:
                if r < 6:
                    raise _errors.ParameterOutOfRangeError(f'AKSS_I needs r ≥ 6, got {r}')
            case Theorem.AKSS_II:
                m = self.param
                if m is None or m < 3:
                    raise _errors.ParameterOutOfRangeError(f'AKSS_II needs m ≥ 3, got {m}')
                if r < 5:
                    raise _errors.ParameterOutOfRangeError(f'AKSS_II needs r ≥ 5, got {r}')
                if _akss_ii_denominator(r, m) <= 0:
                    raise _errors.ParameterOutOfRangeError(f'AKSS_II needs (r−1)^(m−1) > 2r+1 (r={r}, m={m})')
            case Theorem.MAIN:
                if r < 7:
                    raise _errors.ParameterOutOfRangeError(f'MAIN needs r ≥ 7, got {r}')
        if t in (Theorem.AKSS_I, Theorem.MAIN) and self.param is not None:
            object.__setattr__(self, 'param', None)

    @classmethod
    def parse(cls, text: str, r: int, h: int = 1) -> ThresholdSpec:
        """Parse "main", "akss1", "akss2:m" or "siegel:ℓ".

        :raise ValueError: If the text has another shape.
        :raise ParameterOutOfRangeError: If the parameters are out of the theorem’s range.
        """
        m = SPEC_PATTERN.fullmatch(text.strip().lower())
        if not m:
            raise ValueError(f'Invalid theorem: {text!r}')
        if m.group(2) is not None:
            return cls(Theorem.AKSS_II, r, h, int(m.group(2)))
        if m.group(3) is not None:
            return cls(Theorem.SIEGEL, r, h, int(m.group(3)))
        return cls(Theorem(m.group(1)), r, h)

    @property
    def label(self) -> str:
        return self.theorem.value if self.param is None else f'{self.theorem.value}:{self.param}'

    @property
    def strict(self) -> bool:
        """Whether the hypothesis is Δ′ > threshold rather than Δ′ ≥ threshold."""
        return self.theorem is Theorem.SIEGEL

    @property
    def range_warning(self) -> bool:
        return self.theorem is Theorem.SIEGEL

    @property
    def value(self) -> PowerProduct:
        return threshold(self)

    def with_h(self, h: int) -> ThresholdSpec:
        return _dc.replace(self, h=h)

    def to_json(self) -> dict:
        return {
            'theorem': self.theorem.name,
            'label': self.label,
            'r': self.r,
            'h': str(self.h),
            'param': self.param,
            'value': self.value.to_json(),
            'range_warning': self.range_warning,
        }


def threshold(spec: ThresholdSpec) -> PowerProduct:
    """Return the exact lower bound on Δ′ required by a theorem.

    - SIEGEL(ℓ): (r⁴h)^{c_ℓ r^{2−ℓ}}
    - AKSS_I and MAIN: r^{13r²(r−1)/(r²−5r−2)}·h^{4(r−1)(r²−r+2)/(r²−5r−2)}
    - AKSS_II(m): r^{7r²(r−1)/E}·h^{(r−1)(r²+r+2)/E} with E = (r−1)^{m−1} − 2r − 1
    """
    r, h = spec.r, spec.h
    match spec.theorem:
        case Theorem.SIEGEL:
            e = SIEGEL_CONSTANTS[spec.param] * Fraction(r) ** (2 - spec.param)
            return PowerProduct.of((r, 4 * e), (h, e))
        case Theorem.AKSS_I | Theorem.MAIN:
            den = r * r - 5 * r - 2
            return PowerProduct.of((r, Fraction(13 * r * r * (r - 1), den)),
                                   (h, Fraction(4 * (r - 1) * (r * r - r + 2), den)))
        case Theorem.AKSS_II:
            den = _akss_ii_denominator(r, spec.param)
            return PowerProduct.of((r, Fraction(7 * r * r * (r - 1), den)),
                                   (h, Fraction((r - 1) * (r * r + r + 2), den)))


def predicted_bound(spec: ThresholdSpec, row: CaseRow) -> int:
    """The bound on N_F(h) the theorem predicts in a given case."""
    r = spec.r
    match spec.theorem:
        case Theorem.MAIN:
            table = (2 * r, 4, 2)
        case Theorem.AKSS_I:
            table = (2 * r + 1, 5, 3)
        case Theorem.AKSS_II:
            m = spec.param
            table = (r * m, 2 * m, m)
        case Theorem.SIEGEL:
            ell = spec.param
            table = (2 * ell * r, 4 * ell, 2 * ell)
    match row:
        case CaseRow.D_NEG:
            return table[0]
        case CaseRow.D_POS_EVEN_INDEF:
            return table[1]
        case CaseRow.D_POS_ODD_INDEF:
            return table[2]
    return 1


def case_row(form: DiagForm) -> CaseRow:
    """Select the case row of a form. Definiteness takes precedence over the sign of D."""
    if classify(form.expanded).definite:
        return CaseRow.DEFINITE
    if form.disc < 0:
        return CaseRow.D_NEG
    return CaseRow.D_POS_EVEN_INDEF if form.r % 2 == 0 else CaseRow.D_POS_ODD_INDEF


@_dc.dataclass(frozen=True)
class HypothesisReport:
    spec: ThresholdSpec
    delta_prime: Fraction
    verdict: bool
    case_row: CaseRow
    predicted_bound: int
    notes: tuple[str, ...] = ()

    @property
    def comparison(self) -> str:
        return '>' if self.spec.strict else '>='

    def log10_margin(self, precision: int = None) -> _flint.arb:
        """Ball around log₁₀(Δ′) − log₁₀(threshold)."""
        p = precision or _settings.DEFAULT_PRECISION
        ratio = PowerProduct.of((self.delta_prime, 1)) * self.spec.value.inverse()
        return ratio.log10_ball(p)

    def to_json(self) -> dict:
        p = _settings.DEFAULT_PRECISION
        return {
            'spec': self.spec.to_json(),
            'delta_prime': _exn.format_rational(self.delta_prime),
            'comparison': self.comparison,
            'verdict': self.verdict,
            'log10_margin': _exn.Ball(self.log10_margin(p), p).to_json(),
            'case_row': self.case_row.value,
            'predicted_bound': self.predicted_bound,
            'range_warning': self.spec.range_warning,
            'notes': list(self.notes),
        }


def check_hypothesis(form: DiagForm, h: int, spec: ThresholdSpec, *, digit_budget: int = None) -> HypothesisReport:
    """Decide whether a form meets a theorem’s discriminant hypothesis at bound h.

    :param form: The form.
    :param h: The bound.
    :param spec: The theorem. Its degree must match the form, its bound is replaced by h.
    :param digit_budget: Digit budget of the exact comparison.
    :raise ParameterOutOfRangeError: If the degrees disagree or h < 1.
    """
    if spec.r != form.r:
        raise _errors.ParameterOutOfRangeError(f'theorem is instantiated for r = {spec.r}, form has r = {form.r}')
    spec = spec.with_h(h)
    delta_prime = invariants(form, h).DeltaPrime
    o = _exn.compare_power_product(PowerProduct.of((delta_prime, 1)), spec.value, digit_budget=digit_budget)
    verdict = o > 0 if spec.strict else o >= 0
    row = case_row(form)
    notes = []
    if row is CaseRow.DEFINITE:
        notes.append(DEFINITE_NOTE)
    if spec.range_warning:
        notes.append(SIEGEL_RANGE_NOTE)
    _settings.LOGGER.info(f'{spec.label} hypothesis for {form!r} at h = {h}: {verdict}')
    return HypothesisReport(spec, delta_prime, verdict, row, predicted_bound(spec, row), tuple(notes))


def compare_thresholds(a: ThresholdSpec, b: ThresholdSpec, *, digit_budget: int = None) -> Ordering:
    return _exn.compare_power_product(a.value, b.value, digit_budget=digit_budget)


def _log10_str(x: _flint.arb) -> str:
    return x.mid().str(12, radius=False)


TABLE_COLUMNS = ('main', 'akss2:4', 'siegel:1')
CSV_HEADER = ('r', 'h', 'log10_main', 'log10_akss_ii_m4', 'log10_siegel_l1', 'min_theorem')


@_dc.dataclass(frozen=True)
class TableRow:
    r: int
    h: int
    specs: tuple[ThresholdSpec, ...]
    log10: tuple[_flint.arb, ...]
    minimum: str

    def csv_row(self) -> list[str]:
        return [str(self.r), str(self.h), *(_log10_str(x) for x in self.log10), self.minimum]

    def to_json(self) -> dict:
        p = _settings.DEFAULT_PRECISION
        return {
            'r': self.r,
            'h': str(self.h),
            'log10': {s.label: _exn.Ball(x, p).to_json() for s, x in zip(self.specs, self.log10)},
            'min_theorem': self.minimum,
        }


@_dc.dataclass(frozen=True)
class PairRow:
    """AKSS_II with m = 2ℓ against SIEGEL(ℓ)."""
    r: int
    h: int
    ell: int
    log10_akss_ii: _flint.arb
    log10_siegel: _flint.arb
    smaller: str

    def csv_row(self) -> list[str]:
        return [str(self.r), str(self.h), str(self.ell), _log10_str(self.log10_akss_ii),
                _log10_str(self.log10_siegel), self.smaller]

    def to_json(self) -> dict:
        p = _settings.DEFAULT_PRECISION
        return {
            'r': self.r,
            'h': str(self.h),
            'ell': self.ell,
            f'akss2:{2 * self.ell}': _exn.Ball(self.log10_akss_ii, p).to_json(),
            f'siegel:{self.ell}': _exn.Ball(self.log10_siegel, p).to_json(),
            'smaller': self.smaller,
        }


PAIR_CSV_HEADER = ('r', 'h', 'ell', 'log10_akss_ii_m2l', 'log10_siegel_l', 'smaller')


def _smallest(specs: list[ThresholdSpec], digit_budget: int = None) -> ThresholdSpec:
    def cmp(a, b):
        return int(compare_thresholds(a, b, digit_budget=digit_budget))

    return min(specs, key=_functools.cmp_to_key(cmp))


def table_row(r: int, h: int, *, precision: int = None, digit_budget: int = None) -> TableRow:
    p = precision or _settings.DEFAULT_PRECISION
    specs = tuple(ThresholdSpec.parse(label, r, h) for label in TABLE_COLUMNS)
    logs = tuple(s.value.log10_ball(p) for s in specs)
    return TableRow(r, h, specs, logs, _smallest(list(specs), digit_budget).label)


def pair_rows(r: int, h: int, *, precision: int = None, digit_budget: int = None) -> list[PairRow]:
    p = precision or _settings.DEFAULT_PRECISION
    rows = []
    for ell in (2, 3):
        akss = ThresholdSpec(Theorem.AKSS_II, r, h, 2 * ell)
        siegel = ThresholdSpec(Theorem.SIEGEL, r, h, ell)
        o = compare_thresholds(akss, siegel, digit_budget=digit_budget)
        smaller = akss.label if o <= 0 else siegel.label
        rows.append(PairRow(r, h, ell, akss.value.log10_ball(p), siegel.value.log10_ball(p), smaller))
    return rows


def compare_table(r_range, h_values, *, pairs: bool = False, precision: int = None,
                  digit_budget: int = None) -> tuple[list[TableRow], list[PairRow]]:
    """Tabulate thresholds over a grid, in sorted (r, h) order.

    :param r_range: Degrees, each at least 7.
    :param h_values: Bounds, each at least 1.
    :param pairs: Whether to also compare AKSS_II(2ℓ) with SIEGEL(ℓ) for ℓ ∈ {2, 3}.
    :return: The main rows and the pair rows (empty unless requested).
    :raise ParameterOutOfRangeError: If some r < 7 or some h < 1.
    """
    rows, extra = [], []
    for r in sorted(set(r_range)):
        if r < 7:
            raise _errors.ParameterOutOfRangeError(f'table degrees must be ≥ 7, got {r}')
        for h in sorted(set(h_values)):
            rows.append(table_row(r, h, precision=precision, digit_budget=digit_budget))
            if pairs:
                extra += pair_rows(r, h, precision=precision, digit_budget=digit_budget)
    return rows, extra
