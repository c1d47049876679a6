import django.test as dj_test

from ..api import corpus, errors
from ..api.exactnum import QuadElem


class FamiliesTestCase(dj_test.SimpleTestCase):
    def test_shifted_power_j(self):
        self.assertEqual(QuadElem(-3), corpus.shifted_power(7, 3).j)

    def test_large_j(self):
        form = corpus.large_j(7, 3 * 10 ** 6)
        self.assertEqual(QuadElem(-6 * 10 ** 6), form.j)
        self.assertEqual(0, form.expanded.coeffs[0])

    def test_gaussian(self):
        form = corpus.gaussian(9, 2)
        self.assertEqual(QuadElem(0, 4, -1), form.j)
        self.assertEqual(-16, form.disc)

    def test_even_gaussian(self):
        form = corpus.conjugate_form(10, QuadElem(1), corpus.I)
        self.assertEqual((2, 0), form.expanded.coeffs[:2])
        self.assertEqual(-2, form.expanded.coeffs[-1])

    def test_no_integral_construction(self):
        with self.assertRaises(errors.InvalidFormError):
            corpus.conjugate_form(8, QuadElem(1), QuadElem(0, 1, 2))

    def test_golden_form_is_integral(self):
        form = corpus.real_quadratic(7, 5, half_integral=True)
        self.assertEqual(5, form.d)
        self.assertTrue(all(isinstance(c, int) for c in form.expanded.coeffs))


class CorpusTestCase(dj_test.SimpleTestCase):
    def test_size(self):
        self.assertGreaterEqual(len(corpus.standard_corpus()), 20)

    def test_fields_covered(self):
        fields = {entry.form.d for entry in corpus.standard_corpus()}
        self.assertTrue({0, -1, 2, 3, 5} <= fields)

    def test_names_unique(self):
        names = [entry.name for entry in corpus.standard_corpus()]
        self.assertEqual(len(names), len(set(names)))

    def test_rational_forms(self):
        forms = corpus.rational_forms(12)
        self.assertEqual(12, len(forms))
        self.assertEqual(12, len(set(forms)))
        self.assertTrue(all(f.r in (3, 4, 5, 6) for f in forms))

    def test_random_forms_deterministic(self):
        self.assertEqual(corpus.random_forms(8, seed=3), corpus.random_forms(8, seed=3))

    def test_random_forms_degrees(self):
        self.assertTrue(all(f.r in (7, 8) for f in corpus.random_forms(10, seed=1, degrees=(7, 8))))
