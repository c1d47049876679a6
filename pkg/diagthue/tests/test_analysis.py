import cmath
import math
from fractions import Fraction

import django.test as dj_test
import hypothesis.strategies as st
from hypothesis import assume, given, settings

from ..api import analysis, corpus, errors
from ..api.exactnum import Magnitude, QuadElem

X7 = corpus.power_difference(7)
H127_POINTS = [(0, 1), (1, -1), (1, 0), (1, 2), (2, 1)]


def _complex(q: QuadElem) -> complex:
    s = math.sqrt(abs(q.d)) * float(q.b)
    return complex(float(q.a) + s, 0) if q.d >= 0 else complex(float(q.a), s)


class SolutionProfileTestCase(dj_test.SimpleTestCase):
    def test_functionals(self):
        rec = analysis.solution_profile(X7, 1, 2)
        self.assertEqual(-127, rec.f_value)
        self.assertEqual(QuadElem(1), rec.xi)
        self.assertEqual(QuadElem(128), rec.eta)
        self.assertEqual(QuadElem(128), rec.mu)
        self.assertEqual(Magnitude.of(2), rec.z)
        self.assertEqual(Magnitude.of(Fraction(127, 128)), rec.zeta)
        self.assertEqual(0, rec.epsilon)

    def test_negative_mu(self):
        rec = analysis.solution_profile(X7, 1, -1)
        self.assertEqual(1, rec.epsilon)
        self.assertEqual(QuadElem(2), rec.zeta.value)

    def test_pole_of_mu(self):
        rec = analysis.solution_profile(X7, 0, 1)
        self.assertIsNone(rec.mu)
        self.assertEqual(QuadElem(0), rec.mu_inverse)
        self.assertTrue(rec.degenerate)

    def test_sign_representative(self):
        rec = analysis.solution_profile(X7, -1, -2)
        self.assertEqual((1, 2), rec.point)
        self.assertEqual(-127, rec.f_value)
        self.assertEqual(analysis.solution_profile(X7, 1, 2), rec)
        self.assertEqual((1, 0), analysis.solution_profile(X7, -1, 0).point)
        self.assertEqual((0, 1), analysis.solution_profile(X7, 0, -1).point)

    def test_sign_representative_partition(self):
        with self.assertRaises(errors.InvariantViolationError):
            analysis.partition(X7, [analysis.solution_profile(X7, 1, 2), analysis.solution_profile(X7, -1, -2)])

    def test_not_primitive(self):
        with self.assertRaises(errors.NotPrimitiveError):
            analysis.solution_profile(X7, 2, 4)

    def test_zero_value(self):
        with self.assertRaises(errors.ZeroValueError):
            analysis.solution_profile(X7, 1, 1)

    def test_complex_field(self):
        rec = analysis.solution_profile(corpus.gaussian(7, 1), 1, 1)
        self.assertEqual(16, rec.f_value)
        self.assertEqual(QuadElem(2), rec.z.square)
        self.assertEqual(QuadElem(2), rec.zeta.square)
        self.assertIsNone(rec.epsilon)

    def test_json(self):
        data = analysis.solution_profile(X7, 1, 2).to_json()
        self.assertEqual('-127', data['F'])
        self.assertEqual('127/128', data['zeta'])
        self.assertEqual(7, data['omega_index'])
        self.assertFalse(data['tie_flag'])


class RelatedRootTestCase(dj_test.SimpleTestCase):
    def test_positive_real_ratio(self):
        rec = analysis.solution_profile(X7, 2, 1)
        self.assertEqual((7, False, analysis.CERT_EXACT_REAL), (rec.omega_index, rec.tie_flag, rec.certificate))

    def test_negative_real_ratio_odd_degree(self):
        rec = analysis.solution_profile(X7, 1, -1)
        self.assertEqual((3, True, analysis.CERT_EXACT_TIE), (rec.omega_index, rec.tie_flag, rec.certificate))

    def test_negative_real_ratio_even_degree(self):
        rec = analysis.solution_profile(corpus.power_difference(8), 1, -2)
        self.assertEqual((4, False), (rec.omega_index, rec.tie_flag))

    def test_degenerate(self):
        rec = analysis.solution_profile(X7, 1, 0)
        self.assertEqual((7, True, analysis.CERT_DEGENERATE), (rec.omega_index, rec.tie_flag, rec.certificate))

    def test_gaussian_classes(self):
        form = corpus.gaussian(7, 1)
        found = {(x, y): analysis.solution_profile(form, x, y).omega_index for x, y in [(1, -1), (1, 0), (1, 1)]}
        self.assertEqual({(1, -1): 2, (1, 0): 3, (1, 1): 5}, found)

    def test_gaussian_tie(self):
        rec = analysis.solution_profile(corpus.gaussian(7, 1), 1, 0)
        self.assertTrue(rec.tie_flag)
        self.assertEqual(analysis.CERT_EXACT_TIE, rec.certificate)

    def test_root_of_unity(self):
        w = analysis.root_of_unity(7, 7)
        self.assertLess(float(abs(w - 1)), 1e-10)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(min_value=-30, max_value=30), st.integers(min_value=-30, max_value=30),
           st.sampled_from([(7, 1), (9, 2), (7, 3)]))
    def test_nearest_root_matches_floats(self, x, y, params):
        r, k = params
        form = corpus.gaussian(r, k)
        assume(math.gcd(x, y) == 1 and form.expanded.evaluate(x, y) != 0)
        rec = analysis.solution_profile(form, x, y)
        assume(not rec.tie_flag)
        u, v = _complex(rec.u), _complex(rec.v)
        dists = sorted((abs(u - v * cmath.exp(2j * cmath.pi * m / r)), m) for m in range(1, r + 1))
        assume(dists[1][0] - dists[0][0] > 1e-9)
        self.assertEqual(dists[0][1], rec.omega_index)


class PartitionTestCase(dj_test.SimpleTestCase):
    def test_x7_minus_y7(self):
        records = [analysis.solution_profile(X7, x, y) for x, y in H127_POINTS]
        p = analysis.partition(X7, records)
        self.assertEqual({3: 1, 7: 4}, p.sizes())
        self.assertEqual([(0, 1), (1, 0), (1, 2), (2, 1)], [rec.point for rec in p[7]])
        self.assertEqual([(1, -1)], [rec.point for rec in p[3]])
        self.assertEqual((), p[1])
        self.assertEqual(5, len(p))

    def test_zeta_order(self):
        records = [analysis.solution_profile(X7, x, y) for x, y in H127_POINTS]
        zetas = [rec.zeta for rec in analysis.partition(X7, records)[7]]
        self.assertEqual(sorted(zetas, reverse=True), zetas)

    def test_duplicate(self):
        rec = analysis.solution_profile(X7, 1, 2)
        with self.assertRaises(errors.InvariantViolationError):
            analysis.partition(X7, [rec, rec])

    def test_wrong_form(self):
        rec = analysis.solution_profile(X7, 1, 2)
        with self.assertRaises(errors.InvariantViolationError):
            analysis.partition(corpus.shifted_power(7, 1), [rec])

    def test_json(self):
        records = [analysis.solution_profile(X7, x, y) for x, y in H127_POINTS]
        data = analysis.partition(X7, records).to_json()
        self.assertEqual([3, 7], [c['omega_index'] for c in data['classes']])
        self.assertEqual(4, data['classes'][1]['size'])
