"""This module enumerates the primitive solutions of 0 < |F(x, y)| ≤ h in a search box,
reports gap-principle saturation evidence and checks the counts against the predicted bounds."""
from __future__ import annotations

import concurrent.futures as _futures
import dataclasses as _dc
import math as _math

import flint as _flint

from . import errors as _errors, exactnum as _exn, lemmas as _lemmas, thresholds as _thr
from .analysis import OmegaPartition, SolutionRecord, partition, solution_profile
from .binary_forms import DiagForm, IntBinaryForm
from .. import settings as _settings

Triple = tuple[int, int, int]


@_dc.dataclass(frozen=True)
class SearchConfig:
    """Search box max(|x|, |y|) ≤ H, number of parallel chunks and starting ball precision."""
    H: int = _settings.DEFAULT_SEARCH_BOX
    parallel_chunks: int = None
    precision: int = None

    def __post_init__(self):
        if self.H < 1:
            raise _errors.ParameterOutOfRangeError(f'H must be ≥ 1, got {self.H}')
        if self.parallel_chunks is None:
            object.__setattr__(self, 'parallel_chunks', _settings.WORKERS)
        if self.parallel_chunks < 1:
            raise _errors.ParameterOutOfRangeError(f'parallel_chunks must be ≥ 1, got {self.parallel_chunks}')
        if self.precision is None:
            object.__setattr__(self, 'precision', _settings.DEFAULT_PRECISION)
        if self.precision < _settings.MIN_PRECISION:
            raise _errors.ParameterOutOfRangeError(
                f'precision must be at least {_settings.MIN_PRECISION} bits, got {self.precision}')

    def to_json(self) -> dict:
        return {'H': str(self.H), 'parallel_chunks': self.parallel_chunks, 'precision': self.precision}


def _scan_rows(r: int, coeffs: tuple[int, ...], h: int, H: int, x_start: int, x_stop: int) -> list[Triple]:
    """Scan the rows x_start ≤ x < x_stop of the box, keeping one representative per ± pair
    (x > 0, or x = 0 and y > 0)."""
    f = IntBinaryForm(r, coeffs)
    found = []
    for x in range(x_start, x_stop):
        for y in range(-H, H + 1) if x > 0 else range(1, H + 1):
            if _math.gcd(x, y) != 1:
                continue
            value = f.evaluate(x, y)
            if value != 0 and abs(value) <= h:
                found.append((x, y, value))
    return found


def _chunks(H: int, n: int) -> list[tuple[int, int]]:
    size = -(-(H + 1) // n)
    return [(start, min(start + size, H + 1)) for start in range(0, H + 1, size)]


def scan(f: IntBinaryForm, h: int, cfg: SearchConfig) -> list[Triple]:
    """Return the triples (x, y, F(x, y)) of primitive solutions in the box, in lexicographic order."""
    bounds = _chunks(cfg.H, cfg.parallel_chunks)
    if len(bounds) == 1:
        return _scan_rows(f.r, f.coeffs, h, cfg.H, *bounds[0])
    _settings.LOGGER.debug(f'Scanning {len(bounds)} chunks of rows with {cfg.parallel_chunks} workers')
    found = []
    with _futures.ProcessPoolExecutor(max_workers=cfg.parallel_chunks) as executor:
        futures = [executor.submit(_scan_rows, f.r, f.coeffs, h, cfg.H, start, stop) for start, stop in bounds]
        for future in futures:
            found += future.result()
    return found


def naive_solutions(f: IntBinaryForm, h: int, H: int) -> list[Triple]:
    """Independent oracle: a plain double loop over the whole box with term-by-term evaluation."""
    found = set()
    for x in range(-H, H + 1):
        for y in range(-H, H + 1):
            if (x, y) == (0, 0) or _math.gcd(x, y) != 1:
                continue
            value = sum(c * x ** (f.r - k) * y ** k for k, c in enumerate(f.coeffs))
            if 0 < abs(value) <= h:
                if x < 0 or x == 0 and y < 0:
                    x_rep, y_rep, value = -x, -y, value * (-1) ** f.r
                else:
                    x_rep, y_rep = x, y
                found.add((x_rep, y_rep, value))
    return sorted(found)


@_dc.dataclass(frozen=True)
class SolveReport:
    """Primitive solutions found within the search box. Completeness beyond the box is not claimed."""
    form: IntBinaryForm
    h: int
    config: SearchConfig
    triples: tuple[Triple, ...]
    solutions: tuple[SolutionRecord, ...] = ()
    partition: OmegaPartition | None = None

    @property
    def N(self) -> int:
        return len(self.triples)

    @property
    def points(self) -> list[tuple[int, int]]:
        return [(x, y) for x, y, _ in self.triples]

    def to_json(self, precision: int = None) -> dict:
        data = {
            'form': self.form.to_json(),
            'h': str(self.h),
            'config': self.config.to_json(),
            'within_box': True,
            'N': self.N,
        }
        if self.solutions:
            data['solutions'] = [rec.to_json(precision) for rec in self.solutions]
        else:
            data['solutions'] = [{'x': str(x), 'y': str(y), 'F': str(v)} for x, y, v in self.triples]
        if self.partition is not None:
            data['partition'] = {str(k): len(c) for k, c in self.partition.classes.items()}
        return data


def enumerate_solutions(f: IntBinaryForm, h: int, cfg: SearchConfig = None, form: DiagForm = None) -> SolveReport:
    """Enumerate the primitive solutions of 0 < |F(x, y)| ≤ h with max(|x|, |y|) ≤ H, one per ± pair.
    When the diagonal datum is given, the solutions are also profiled and partitioned.

    :param f: The integer form.
    :param h: The bound, at least 1.
    :param cfg: The search configuration.
    :param form: Optional diagonal datum of f.
    :raise ParameterOutOfRangeError: If h < 1.
    :raise InvalidFormError: If the datum does not expand to f.
    """
    if h < 1:
        raise _errors.ParameterOutOfRangeError(f'h must be ≥ 1, got {h}')
    cfg = cfg or SearchConfig()
    if form is not None and form.expanded != f:
        raise _errors.InvalidFormError(f'{form!r} does not expand to {f!r}')
    triples = tuple(scan(f, h, cfg))
    _settings.LOGGER.info(f'Found {len(triples)} primitive solutions with |F| ≤ {h} in the box of size {cfg.H}')
    if form is None:
        return SolveReport(f, h, cfg, triples)
    records = tuple(solution_profile(form, x, y, cfg.precision) for x, y, _ in triples)
    return SolveReport(f, h, cfg, triples, records, partition(form, records))


@_dc.dataclass(frozen=True)
class SaturationEntry:
    """The smallest Z and coordinate height an additional solution of a class could have.
    The saturated flag is evidence only, not a proof that the class is complete."""
    omega_index: int
    size: int
    applicable: bool
    trace: str
    z_floor: _flint.arb | None = None
    height_floor: _flint.arb | None = None
    saturated: bool = False

    def to_json(self, precision: int = None) -> dict:
        p = precision or _settings.DEFAULT_PRECISION
        return {
            'omega_index': self.omega_index,
            'size': self.size,
            'status': 'applicable' if self.applicable else 'NOT_APPLICABLE',
            'trace': self.trace,
            'z_floor': _exn.Ball(self.z_floor, p).to_json() if self.z_floor is not None else None,
            'height_floor': _exn.Ball(self.height_floor, p).to_json() if self.height_floor is not None else None,
            'saturated_within_box_evidence': self.saturated,
            'heuristic': True,
        }


def _height_scale(form: DiagForm, precision: int) -> _flint.arb:
    """Ball containing max(|α|+|β|, |γ|+|δ|). Overlapping sides are merged rather than guessed."""
    mag = _exn.Magnitude.of
    with _exn.working_precision(precision):
        a = mag(form.alpha).ball(precision) + mag(form.beta).ball(precision)
        b = mag(form.gamma).ball(precision) + mag(form.delta).ball(precision)
        if a > b:
            return a
        if b > a:
            return b
        return a.union(b)


def saturation(report: SolveReport, form: DiagForm, h: int, precision: int = None) -> list[SaturationEntry]:
    """Compute, for each class, the floor on Z of a further solution: the Z_* floor when the class has
    one member, the gap principle applied to the last member otherwise. The floor is turned into a
    coordinate-height floor with max(|α|+|β|, |γ|+|δ|)·max(|x|, |y|) ≥ Z.

    :raise ParameterOutOfRangeError: If the report carries no partition.
    """
    if report.partition is None:
        raise _errors.ParameterOutOfRangeError('saturation needs a partitioned report')
    p = precision or report.config.precision
    gate = form.disc < 0 or _lemmas.j_exceeds(form, h)
    scale = _height_scale(form, p)
    entries = []
    for k, members in report.partition.classes.items():
        if len(members) == 1:
            z_floor = _lemmas.GapChain.second_floor(form, h, p)
            trace = 'Z_* ≥ |j|/(2h^{1/r})'
        elif not gate:
            entries.append(SaturationEntry(k, len(members), False, _lemmas.GAP_GATE_TRACE))
            continue
        else:
            z_floor = _lemmas.GapChain.gap_floor(members[-1].z, form, h, p)
            trace = 'Z_i ≥ (|j|/2h)·Z_{i−1}^{r−1}'
        with _exn.working_precision(p):
            height = z_floor / scale
        saturated = bool(height > report.config.H)
        if saturated:
            _settings.LOGGER.info(f'Class {k} is saturated within the box (heuristic evidence)')
        entries.append(SaturationEntry(k, len(members), True, trace, z_floor, height, saturated))
    return entries


@_dc.dataclass(frozen=True)
class TheoremConsistency:
    covered: bool
    consistent: bool
    report: SolveReport
    hypothesis: _thr.HypothesisReport | None
    saturation: tuple[SaturationEntry, ...]
    evidence: tuple[str, ...]
    zk_verdicts: tuple[_lemmas.LemmaVerdict, ...] = ()

    def to_json(self, precision: int = None) -> dict:
        return {
            'covered': self.covered,
            'consistent': self.consistent,
            'verdict': 'consistent' if self.covered else 'not covered by theorem',
            'hypothesis': self.hypothesis.to_json() if self.hypothesis is not None else None,
            'solve': self.report.to_json(precision),
            'saturation': [e.to_json(precision) for e in self.saturation],
            'zk': [v.to_json() for v in self.zk_verdicts],
            'evidence': list(self.evidence),
        }


def _forbidden_shape(sizes: dict[int, int], r: int) -> int | None:
    """Return the class index k when exactly one class has three members and the r − 1 others have two."""
    threes = [k for k, s in sizes.items() if s == 3]
    twos = [k for k, s in sizes.items() if s == 2]
    if len(threes) == 1 and len(twos) == r - 1 and len(sizes) == r:
        return threes[0]
    return None


def verify_theorem(form: DiagForm, h: int, cfg: SearchConfig = None) -> TheoremConsistency:
    """Enumerate the solutions of a form within the box and check them against the MAIN theorem.

    :raise ParameterOutOfRangeError: If h < 1.
    :raise BoundExceededError: If the theorem’s hypothesis holds and the data contradicts it.
    """
    cfg = cfg or SearchConfig()
    report = enumerate_solutions(form.expanded, h, cfg, form)
    sat = tuple(saturation(report, form, h, cfg.precision))
    evidence = [f'N = {report.N} within the box of size {cfg.H}']
    if form.r < 7:
        evidence.append(f'MAIN needs r ≥ 7, got {form.r}')
        return TheoremConsistency(False, True, report, None, sat, tuple(evidence))
    hyp = _thr.check_hypothesis(form, h, _thr.ThresholdSpec(_thr.Theorem.MAIN, form.r, h))
    if not hyp.verdict:
        evidence.append('Δ′ is below the MAIN threshold')
        return TheoremConsistency(False, True, report, hyp, sat, tuple(evidence))
    evidence.append(f'Δ′ meets the MAIN threshold, predicted bound {hyp.predicted_bound} ({hyp.case_row.value})')
    sizes = report.partition.sizes()
    big = [k for k, s in sizes.items() if s >= 3]
    evidence.append(f'classes with at least three members: {big}')
    zk = []
    k = _forbidden_shape(sizes, form.r)
    if k is not None:
        chain = _lemmas.GapChain.from_partition(report.partition, k)
        verdict = _lemmas.zk_bound(chain, form, h, 1, cfg.precision)
        zk.append(verdict)
        n = verdict.details.get('divergence_n')
        if verdict.status is not _lemmas.Status.NOT_APPLICABLE and n is not None:
            evidence.append(f'forbidden class shape around root {k}, the Z₃ bound exceeds Z₃ at n = {n}')
        else:
            evidence.append(f'forbidden class shape around root {k}, the Z₃ bound does not apply')
    if report.N > hyp.predicted_bound:
        _settings.LOGGER.error(f'{form!r} at h = {h}: {report.N} solutions exceed the bound {hyp.predicted_bound}')
        raise _errors.BoundExceededError(report.N, hyp.predicted_bound, evidence)
    return TheoremConsistency(True, True, report, hyp, sat, tuple(evidence), tuple(zk))
