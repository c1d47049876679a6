import dataclasses
from fractions import Fraction
from unittest import mock

import django.test as dj_test
import flint
import hypothesis.strategies as st
from hypothesis import given, settings

from .. import settings as diagthue_settings
from ..api import analysis, corpus, errors, lemmas, solver
from ..api.lemmas import GapChain, LemmaId, PropertyQuintuple, Status

X7 = corpus.power_difference(7)
LARGE_J = corpus.large_j(7, 3 * 10 ** 6)


def _x7_partition():
    return solver.enumerate_solutions(X7.expanded, 127, solver.SearchConfig(H=10, parallel_chunks=1), X7).partition


def _large_j_chain():
    return GapChain.of([analysis.solution_profile(LARGE_J, 1, y) for y in (1, 2, 3)])


class PointLemmasTestCase(dj_test.SimpleTestCase):
    def test_realmu_holds(self):
        for x, y in [(1, 2), (2, 1), (1, -1)]:
            v = lemmas.check_realmu(analysis.solution_profile(X7, x, y), X7)
            self.assertIs(Status.HOLDS, v.status, (x, y))
            self.assertTrue(v.exact)

    def test_realmu_zero_u(self):
        v = lemmas.check_realmu(analysis.solution_profile(X7, 0, 1), X7)
        self.assertIs(Status.HOLDS, v.status)

    def test_realmu_zero_v(self):
        v = lemmas.check_realmu(analysis.solution_profile(X7, 1, 0), X7)
        self.assertIs(Status.NOT_APPLICABLE, v.status)

    def test_realmu_complex_field(self):
        v = lemmas.check_realmu(analysis.solution_profile(corpus.gaussian(7, 1), 1, 1), corpus.gaussian(7, 1))
        self.assertIs(Status.NOT_APPLICABLE, v.status)

    def test_all_d_exact_equality(self):
        v = lemmas.check_all_d(analysis.solution_profile(X7, 0, 1), X7)
        self.assertIs(Status.HOLDS, v.status)
        self.assertTrue(v.exact)

    def test_all_d_negative_mu(self):
        v = lemmas.check_all_d(analysis.solution_profile(X7, 1, -1), X7)
        self.assertIs(Status.NOT_APPLICABLE, v.status)
        self.assertEqual('D > 0 and ε = 1', v.hypothesis_trace)

    def test_pair_with_itself(self):
        rec = analysis.solution_profile(X7, 1, 2)
        with self.assertRaises(errors.SameSolutionError):
            lemmas.check_pair(rec, rec, X7, 127)

    def test_pair_of_different_classes(self):
        a, b = analysis.solution_profile(X7, 1, 2), analysis.solution_profile(X7, 1, -1)
        self.assertIs(Status.NOT_APPLICABLE, lemmas.check_pair(a, b, X7, 127).status)

    def test_gap_order(self):
        a, b = analysis.solution_profile(X7, 0, 1), analysis.solution_profile(X7, 1, 2)
        with self.assertRaises(errors.ParameterOutOfRangeError):
            lemmas.check_gap(b, a, X7, 127)

    def test_verdict_json(self):
        data = lemmas.check_all_d(analysis.solution_profile(X7, 0, 1), X7).to_json()
        self.assertEqual('ALL_D', data['lemma'])
        self.assertEqual('HOLDS', data['status'])
        self.assertEqual([['0', '1']], data['subject'])
        self.assertEqual(7, data['omega_index'])


class GapMonotonicityTestCase(dj_test.SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.form = corpus.gaussian(7, 1)
        cls.pair = next(GapChain.of([analysis.solution_profile(cls.form, x, y) for x, y in [(1, 0), (1, 1)]])
                        .consecutive())

    @settings(max_examples=30, deadline=None)
    @given(st.integers(min_value=1, max_value=10 ** 6), st.integers(min_value=1, max_value=10 ** 6))
    def test_larger_h_keeps_holding(self, h1, h2):
        lo, hi = sorted((h1, h2))
        tight = lemmas.check_gap(*self.pair, self.form, lo)
        loose = lemmas.check_gap(*self.pair, self.form, hi)
        self.assertIs(Status.HOLDS, tight.status)
        self.assertIs(Status.HOLDS, loose.status)
        self.assertGreaterEqual(float(loose.margin.real.mid()), float(tight.margin.real.mid()))


class DecideTestCase(dj_test.SimpleTestCase):
    def test_undecided_margin_raises(self):
        with mock.patch.object(diagthue_settings, 'MAX_PRECISION', 128):
            with self.assertRaises(errors.PrecisionExhaustedError) as cm:
                lemmas._decide(LemmaId.GAP, 'straddling', lambda p: flint.arb(0, 1), subject=[(1, 2)])
        self.assertEqual(128, cm.exception.precision)

    def test_exact_fallback(self):
        v = lemmas._decide(LemmaId.GAP, 'tie', lambda p: flint.arb(0, 1), lambda: 0)
        self.assertIs(Status.HOLDS, v.status)
        self.assertTrue(v.exact)
        strict = lemmas._decide(LemmaId.GAP, 'tie', lambda p: flint.arb(0, 1), lambda: 0, strict=True)
        self.assertIs(Status.VIOLATED, strict.status)

    @given(st.integers(min_value=-10 ** 6, max_value=10 ** 6).filter(bool))
    def test_sign_definite_margin(self, m):
        v = lemmas._decide(LemmaId.GAP, 'exact margin', lambda p: flint.arb(m))
        self.assertIs(Status.HOLDS if m > 0 else Status.VIOLATED, v.status)
        self.assertFalse(v.exact)
        self.assertFalse(v.margin.contains_zero())


class VerifyAllTestCase(dj_test.SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.verdicts = lemmas.verify_all(X7, 127, _x7_partition())

    def _statuses(self, lemma):
        return {v.status for v in self.verdicts if v.lemma is lemma}

    def test_nothing_violated(self):
        self.assertFalse(any(v.violated for v in self.verdicts))

    def test_zstar_holds(self):
        self.assertEqual({Status.HOLDS}, self._statuses(LemmaId.ZSTAR))

    def test_gated_lemmas(self):
        for lemma in (LemmaId.ZETA_NOTE, LemmaId.GAP, LemmaId.ITERATION, LemmaId.CROSS_TERM):
            self.assertEqual({Status.NOT_APPLICABLE}, self._statuses(lemma), lemma)

    def test_no_zk_bound_on_class_of_four(self):
        self.assertEqual(set(), self._statuses(LemmaId.ZK_BOUND))

    def test_ordered_by_class(self):
        classes = [v.omega_index for v in self.verdicts if v.omega_index is not None]
        self.assertEqual(sorted(classes), classes)

    def test_stable_across_precisions(self):
        for form, h, H in [(X7, 127, 10), (corpus.gaussian(7, 1), 16, 5), (corpus.real_quadratic(7, 2), 500, 8)]:
            report = solver.enumerate_solutions(form.expanded, h, solver.SearchConfig(H=H, parallel_chunks=1), form)
            runs = [[(v.lemma, v.status, v.subject) for v in lemmas.verify_all(form, h, report.partition, p)]
                    for p in (64, 256, 1024)]
            self.assertEqual(runs[0], runs[1], repr(form))
            self.assertEqual(runs[0], runs[2], repr(form))


class CorpusLemmasTestCase(dj_test.SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cfg = solver.SearchConfig(H=12, parallel_chunks=1)
        cls.runs = [(entry, solver.enumerate_solutions(entry.form.expanded, entry.h, cfg, entry.form))
                    for entry in corpus.standard_corpus()]

    def test_nothing_violated(self):
        for entry, report in self.runs:
            verdicts = lemmas.verify_all(entry.form, entry.h, report.partition)
            self.assertEqual([], [v.to_json() for v in verdicts if v.violated], entry.name)

    def test_realmu(self):
        for entry, report in self.runs:
            for rec in report.solutions:
                v = lemmas.check_realmu(rec, entry.form)
                if entry.form.disc > 0 and not rec.v.is_zero():
                    self.assertIs(Status.HOLDS, v.status, (entry.name, rec.point))
                else:
                    self.assertIs(Status.NOT_APPLICABLE, v.status, (entry.name, rec.point))


class ZkBoundTestCase(dj_test.SimpleTestCase):
    def test_condition_exponents(self):
        self.assertEqual((Fraction(637, 12), Fraction(50, 3)), lemmas.zk_condition_exponents(7))

    def test_condition(self):
        self.assertTrue(lemmas.zk_condition(LARGE_J, 1))
        self.assertFalse(lemmas.zk_condition(X7, 127))

    def test_diverges_on_synthetic_chain(self):
        v = lemmas.zk_bound(_large_j_chain(), LARGE_J, 1, 1)
        self.assertIs(Status.VIOLATED, v.status)
        self.assertEqual(1, v.details['divergence_n'])
        self.assertEqual(3, v.omega_index)

    @given(st.integers(min_value=1, max_value=40))
    def test_bound_grows_with_n(self, n):
        z2 = _large_j_chain()[1].z
        lower = lemmas.zk_rhs_log(7, n, z2, LARGE_J.j_squared, 1)
        upper = lemmas.zk_rhs_log(7, n + 1, z2, LARGE_J.j_squared, 1)
        self.assertTrue(upper > lower)

    def test_not_applicable_below_condition(self):
        chain = GapChain.of(_x7_partition()[7][:3])
        self.assertIs(Status.NOT_APPLICABLE, lemmas.zk_bound(chain, X7, 127).status)

    def test_wrong_class_size(self):
        with self.assertRaises(errors.WrongClassSizeError) as cm:
            lemmas.zk_bound(GapChain.of(_x7_partition()[7]), X7, 127)
        self.assertEqual((3, 4), (cm.exception.expected, cm.exception.actual))

    def test_small_degree(self):
        form = corpus.power_difference(5)
        chain = GapChain.of([analysis.solution_profile(form, x, 1) for x in (0, 2, 3)])
        with self.assertRaises(errors.ParameterOutOfRangeError):
            lemmas.zk_bound(chain, form, 1)

    def test_n_must_be_positive(self):
        with self.assertRaises(errors.ParameterOutOfRangeError):
            lemmas.zk_bound(_large_j_chain(), LARGE_J, 1, 0)

    def test_property_on_synthetic_chain(self):
        v = lemmas.check_property(lemmas.seed(7), _large_j_chain(), LARGE_J, 1)
        self.assertIs(Status.VIOLATED, v.status)
        self.assertEqual('(6,1,0,-1,1)', v.details['property'])


class InductionTestCase(dj_test.SimpleTestCase):
    def test_seed_quantities(self):
        p = lemmas.seed(7)
        self.assertEqual((6, 1, 0, -1, 1), p.exponents)
        self.assertEqual((28, Fraction(161, 5), 41, Fraction(23, 5), 11), (p.A1, p.B1, p.B2, p.B3, p.B4))

    def test_first_step(self):
        result = lemmas.induction_step(lemmas.seed(7))
        self.assertEqual((), result.failed)
        self.assertEqual('(13,5,23/5,9/5,3)', result.successor.label())
        self.assertEqual((2, 0), (result.successor.n, result.successor.g))

    def test_second_step(self):
        p = lemmas.induction_step(lemmas.seed(7)).successor
        self.assertEqual(63, p.A1)
        self.assertEqual('(20,6,44/5,16/5,5)', lemmas.induction_step(p).successor.label())

    def test_sigma_vanishes_first_step(self):
        result = lemmas.induction_step(lemmas.seed(7, 1, 1))
        self.assertEqual('(7,5,37/5,16/5,2)', result.successor.label())

    def test_sigma_zero_no_successor(self):
        result = lemmas.induction_step(lemmas.seed(7, sigma_nonzero=False))
        self.assertIsNone(result.successor)
        self.assertEqual((), result.failed)

    def test_chain_without_sigma_fails_at_seven(self):
        results = lemmas.induction_chain(7, 5, sigma=False)
        self.assertEqual(2, len(results))
        self.assertEqual('ConditionFailed', results[-1].note)
        self.assertEqual(('iii', 'iv'), results[-1].failed)

    def test_chain_without_sigma_at_twelve(self):
        results = lemmas.induction_chain(12, 2, sigma=False)
        self.assertEqual('(24,6,49/5,19/5,4)', results[-1].successor.label())

    def test_chain_with_sigma(self):
        for r in range(7, 13):
            results = lemmas.induction_chain(r, 10)
            self.assertEqual(10, len(results), r)
            self.assertTrue(all(res.successor is not None for res in results), r)
            self.assertEqual(r * 11 - 1, results[-1].successor.a1, r)

    def test_forced_failure(self):
        p = dataclasses.replace(lemmas.seed(7), a4=Fraction(100))
        with self.assertRaises(errors.ConditionFailedError) as cm:
            lemmas.induction_step(p)
        self.assertIn('ii', cm.exception.failed)

    def test_negative_a2_plus_a4(self):
        with self.assertRaises(errors.ParameterOutOfRangeError):
            lemmas.induction_step(PropertyQuintuple(7, 1, 0, 0, -1, 1))

    def test_small_degree(self):
        with self.assertRaises(errors.ParameterOutOfRangeError):
            lemmas.induction_step(lemmas.seed(6))

    def test_mismatched_degree(self):
        with self.assertRaises(errors.ParameterOutOfRangeError):
            lemmas.induction_step(lemmas.seed(7), 8)

    def test_invalid_step(self):
        with self.assertRaises(errors.ParameterOutOfRangeError):
            lemmas.seed(7, g=2)
        with self.assertRaises(errors.ParameterOutOfRangeError):
            lemmas.induction_chain(7, 0)

    def test_iteration_exponent(self):
        self.assertEqual(Fraction(8, 7), lemmas.iteration_exponent(7, 3))

    def test_json(self):
        data = lemmas.induction_step(lemmas.seed(7)).to_json()
        self.assertEqual('161/5', data['source']['B1'])
        self.assertEqual({'i': True, 'ii': True, 'iii': True, 'iv': True}, data['conditions'])
