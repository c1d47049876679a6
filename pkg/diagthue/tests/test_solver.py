from unittest import mock

import django.test as dj_test
import flint
import hypothesis.strategies as st
from hypothesis import given, settings

from ..api import analysis, corpus, errors, exactnum, solver
from ..api.binary_forms import DiagForm
from ..api.exactnum import QuadElem
from ..api.solver import SearchConfig

X7 = corpus.power_difference(7)
LARGE_J = corpus.large_j(7, 3 * 10 ** 6)


def _serial(H: int) -> SearchConfig:
    return SearchConfig(H=H, parallel_chunks=1)


def _representative(x: int, y: int) -> tuple[int, int]:
    return (-x, -y) if x < 0 or x == 0 and y < 0 else (x, y)


def _one_class_of_three() -> solver.SolveReport:
    records = tuple(analysis.solution_profile(LARGE_J, 1, y) for y in (1, 2, 3))
    triples = tuple((rec.x, rec.y, rec.f_value) for rec in records)
    return solver.SolveReport(LARGE_J.expanded, 1, _serial(5), triples, records, analysis.partition(LARGE_J, records))


class SearchConfigTestCase(dj_test.SimpleTestCase):
    def test_box(self):
        with self.assertRaises(errors.ParameterOutOfRangeError):
            SearchConfig(H=0)

    def test_chunks(self):
        with self.assertRaises(errors.ParameterOutOfRangeError):
            SearchConfig(H=5, parallel_chunks=0)

    def test_precision(self):
        with self.assertRaises(errors.ParameterOutOfRangeError):
            SearchConfig(H=5, precision=16)


class EnumerateTestCase(dj_test.SimpleTestCase):
    def test_counts(self):
        for h, n in [(1, 2), (2, 3), (10, 3), (127, 5)]:
            self.assertEqual(n, solver.enumerate_solutions(X7.expanded, h, _serial(10)).N, h)

    def test_points(self):
        report = solver.enumerate_solutions(X7.expanded, 127, _serial(10))
        self.assertEqual([(0, 1), (1, -1), (1, 0), (1, 2), (2, 1)], report.points)
        self.assertEqual([-1, 2, 1, -127, 127], [v for _, _, v in report.triples])

    def test_agrees_with_naive_loop(self):
        for entry in corpus.standard_corpus()[:6]:
            f = entry.form.expanded
            for h in (1, 50):
                self.assertEqual(solver.naive_solutions(f, h, 6), list(solver.scan(f, h, _serial(6))), entry.name)

    def test_oracle_full_box(self):
        f = X7.expanded
        oracle = solver.naive_solutions(f, 127, 200)
        for h, n in [(1, 2), (2, 3), (10, 3), (127, 5)]:
            found = solver.scan(f, h, _serial(200))
            self.assertEqual([t for t in oracle if abs(t[2]) <= h], found, h)
            self.assertEqual(n, len(found), h)

    @settings(max_examples=15, deadline=None)
    @given(st.integers(min_value=1, max_value=300))
    def test_swap_symmetry(self, h):
        points = {(x, y) for x, y, _ in solver.scan(X7.expanded, h, _serial(10))}
        swapped = {_representative(y, x) for x, y, _ in solver.scan(X7.expanded.swapped(), h, _serial(10))}
        self.assertEqual(points, swapped)

    def test_parallel_matches_serial(self):
        f = corpus.shifted_power(7, 2).expanded
        serial = solver.enumerate_solutions(f, 1000, _serial(20))
        parallel = solver.enumerate_solutions(f, 1000, SearchConfig(H=20, parallel_chunks=2))
        self.assertEqual(serial.triples, parallel.triples)

    def test_no_solutions(self):
        self.assertEqual(0, solver.enumerate_solutions(corpus.large_j(9, 5).expanded, 10, _serial(20)).N)

    def test_partition_gaussian(self):
        form = corpus.gaussian(7, 1)
        report = solver.enumerate_solutions(form.expanded, 16, _serial(5), form)
        self.assertEqual({2: 1, 3: 1, 5: 1}, report.partition.sizes())

    def test_partition_even_gaussian(self):
        form = corpus.conjugate_form(10, QuadElem(1), corpus.I)
        report = solver.enumerate_solutions(form.expanded, 1024, _serial(3), form)
        found = {rec.point: rec.omega_index for rec in report.solutions}
        self.assertEqual({(1, 0): 7, (0, 1): 2, (2, 1): 9, (1, 2): 1, (2, -1): 6, (1, -2): 4}, found)
        self.assertEqual({1}, set(report.partition.sizes().values()))

    def test_h_positive(self):
        with self.assertRaises(errors.ParameterOutOfRangeError):
            solver.enumerate_solutions(X7.expanded, 0)

    def test_datum_must_match(self):
        with self.assertRaises(errors.InvalidFormError):
            solver.enumerate_solutions(X7.expanded, 1, _serial(3), corpus.shifted_power(7, 1))

    def test_json(self):
        data = solver.enumerate_solutions(X7.expanded, 127, _serial(10), X7).to_json()
        self.assertTrue(data['within_box'])
        self.assertEqual(5, data['N'])
        self.assertEqual({'3': 1, '7': 4}, data['partition'])


class SaturationTestCase(dj_test.SimpleTestCase):
    def test_power_difference(self):
        report = solver.enumerate_solutions(X7.expanded, 127, _serial(10), X7)
        entries = {e.omega_index: e for e in solver.saturation(report, X7, 127)}
        self.assertTrue(entries[3].applicable)
        self.assertFalse(entries[3].saturated)
        self.assertFalse(entries[7].applicable)
        self.assertEqual('NOT_APPLICABLE', entries[7].to_json()['status'])

    def test_complex_field(self):
        form = corpus.gaussian(7, 1)
        report = solver.enumerate_solutions(form.expanded, 16, _serial(5), form)
        entries = solver.saturation(report, form, 16)
        self.assertEqual(3, len(entries))
        self.assertTrue(all(e.applicable and e.to_json()['heuristic'] for e in entries))

    def test_height_scale_picks_larger_side(self):
        scale = solver._height_scale(DiagForm(5, 2, 1, 1, 1), 64)
        self.assertTrue(3 in scale)
        self.assertFalse(2 in scale)

    def test_height_scale_equal_sides(self):
        self.assertEqual(1.0, float(solver._height_scale(X7, 64).mid()))
        scale = solver._height_scale(corpus.real_quadratic(7, 2), 64)
        with exactnum.working_precision(64):
            self.assertTrue(scale.overlaps(1 + flint.arb(2).sqrt()))

    def test_needs_partition(self):
        report = solver.enumerate_solutions(X7.expanded, 1, _serial(3))
        with self.assertRaises(errors.ParameterOutOfRangeError):
            solver.saturation(report, X7, 1)


class VerifyTheoremTestCase(dj_test.SimpleTestCase):
    def test_covered(self):
        result = solver.verify_theorem(corpus.large_j(7, 3 * 10 ** 6), 1, _serial(60))
        self.assertTrue(result.covered)
        self.assertTrue(result.consistent)
        self.assertEqual(0, result.report.N)
        self.assertEqual('consistent', result.to_json()['verdict'])

    def test_below_threshold(self):
        result = solver.verify_theorem(corpus.shifted_power(7, 2), 1, _serial(10))
        self.assertFalse(result.covered)
        self.assertEqual('not covered by theorem', result.to_json()['verdict'])

    def test_small_degree(self):
        result = solver.verify_theorem(corpus.power_difference(5), 1, _serial(5))
        self.assertFalse(result.covered)
        self.assertIsNone(result.hypothesis)

    def test_h_positive(self):
        with self.assertRaises(errors.ParameterOutOfRangeError):
            solver.verify_theorem(X7, 0, _serial(5))

    def test_covered_at_full_box(self):
        result = solver.verify_theorem(corpus.large_j(7, 10 ** 7), 1, SearchConfig(H=1000, parallel_chunks=4))
        self.assertTrue(result.covered)
        self.assertTrue(result.consistent)
        self.assertEqual(0, result.report.N)

    def test_excess_carries_evidence(self):
        with mock.patch.object(solver, 'enumerate_solutions', return_value=_one_class_of_three()):
            with self.assertRaises(errors.BoundExceededError) as cm:
                solver.verify_theorem(LARGE_J, 1, _serial(5))
        self.assertEqual((3, 2), (cm.exception.found, cm.exception.bound))
        self.assertIn('classes with at least three members: [3]', cm.exception.evidence)

    def test_forbidden_shape_runs_zk_bound(self):
        with mock.patch.object(solver, 'enumerate_solutions', return_value=_one_class_of_three()), \
                mock.patch.object(solver, '_forbidden_shape', return_value=3):
            with self.assertRaises(errors.BoundExceededError) as cm:
                solver.verify_theorem(LARGE_J, 1, _serial(5))
        self.assertIn('forbidden class shape around root 3, the Z₃ bound exceeds Z₃ at n = 1', cm.exception.evidence)

    def test_forbidden_shape(self):
        sizes = {k: 2 for k in range(1, 8)}
        sizes[4] = 3
        self.assertEqual(4, solver._forbidden_shape(sizes, 7))
        sizes[5] = 3
        self.assertIsNone(solver._forbidden_shape(sizes, 7))
        self.assertIsNone(solver._forbidden_shape({4: 3}, 7))
