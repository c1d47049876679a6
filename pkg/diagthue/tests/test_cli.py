import io
import json
import pathlib
import tempfile

import django.core.management as dj_mngmt
import django.test as dj_test

from .. import cli
from ..api import corpus

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / 'fixtures'


def _fixture(name: str) -> str:
    return str(FIXTURES / f'{name}.json')


def _call(*args) -> tuple[str, str]:
    out, err = io.StringIO(), io.StringIO()
    dj_mngmt.call_command(*args, stdout=out, stderr=err)
    return out.getvalue(), err.getvalue()


def _call_json(*args) -> dict:
    return json.loads(_call(*args)[0])


class FormCommandsTestCase(dj_test.SimpleTestCase):
    def test_expand(self):
        data = _call_json('expand', '--form', _fixture('gaussian_7_1'))
        self.assertEqual(['2', '0', '-42', '0', '70', '0', '-14', '0'], data['expanded']['coeffs'])
        self.assertEqual('expand', data['manifest']['command'])

    def test_invariants(self):
        data = _call_json('invariants', '--form', _fixture('x7_minus_y7'))
        self.assertEqual('-823543', data['Delta'])
        self.assertEqual('1/4398046511104', data['DeltaPrime'])

    def test_check_integer_form(self):
        data = _call_json('check', '--form', _fixture('x8_plus_y8'))
        self.assertIsNone(data['hypothesis'])
        self.assertEqual('definite/even', data['class']['label'])

    def test_check_large_j(self):
        data = _call_json('check', '--form', _fixture('large_j_7'))
        self.assertTrue(data['hypothesis']['verdict'])
        self.assertEqual(2, data['hypothesis']['predicted_bound'])
        self.assertEqual('main', data['manifest']['parameters']['theorem'])

    def test_check_verify(self):
        data = _call_json('check', '--form', _fixture('shifted_7_2'), '--verify', '--H', '10')
        self.assertFalse(data['theorem']['covered'])

    def test_check_unknown_theorem(self):
        with self.assertRaises(dj_mngmt.CommandError) as cm:
            _call('check', '--form', _fixture('x7_minus_y7'), '--theorem', 'akss3')
        self.assertEqual(2, cm.exception.returncode)


class SolveCommandsTestCase(dj_test.SimpleTestCase):
    def test_solve_json(self):
        data = _call_json('solve', '--form', _fixture('x7_minus_y7'), '--h', '127', '--H', '10')
        self.assertEqual(5, data['N'])
        self.assertIn('saturation', data)
        self.assertNotIn('timing_seconds', data['manifest'])

    def test_solve_csv(self):
        out, _ = _call('solve', '--form', _fixture('x7_minus_y7'), '--h', '127', '--H', '10', '--format', 'csv')
        lines = out.splitlines()
        self.assertEqual('x,y,F,Z,zeta,omega_index', lines[0])
        self.assertEqual(6, len(lines))
        self.assertEqual('1,2,-127,2,127/128,7', lines[4])

    def test_solve_integer_form(self):
        data = _call_json('solve', '--form', _fixture('x8_plus_y8'), '--h', '2', '--H', '5')
        found = {(s['x'], s['y'], s['F']) for s in data['solutions']}
        self.assertEqual({('0', '1', '1'), ('1', '0', '1'), ('1', '-1', '2'), ('1', '1', '2')}, found)
        self.assertNotIn('saturation', data)

    def test_partition(self):
        data = _call_json('partition', '--form', _fixture('gaussian_7_1'), '--h', '16', '--H', '5')
        self.assertEqual(3, data['N'])
        self.assertEqual([2, 3, 5], [c['omega_index'] for c in data['partition']['classes']])

    def test_timing(self):
        data = _call_json('invariants', '--form', _fixture('x7_minus_y7'), '--with-timing')
        self.assertIn('timing_seconds', data['manifest'])

    def test_out_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = pathlib.Path(tmp) / 'table.csv'
            out, _ = _call('table', '--r', '7', '--out', str(path))
            self.assertEqual('', out)
            self.assertTrue(path.read_text(encoding='utf-8').startswith('r,h,'))
            manifest = json.loads(path.with_suffix('.manifest.json').read_text(encoding='utf-8'))
            self.assertEqual([str(path)], manifest['outputs'])


class LemmaCommandsTestCase(dj_test.SimpleTestCase):
    def test_verify_lemmas(self):
        data = _call_json('verify_lemmas', '--form', _fixture('x7_minus_y7'), '--h', '127', '--H', '10')
        self.assertEqual(0, data['violated'])
        self.assertEqual(5, data['instances'][0]['N'])

    def test_verify_lemmas_corpus(self):
        data = _call_json('verify_lemmas', '--corpus', '--H', '6')
        self.assertEqual(0, data['violated'])
        self.assertEqual(len(corpus.standard_corpus()), len(data['instances']))

    def test_verify_lemmas_exclusive_flags(self):
        with self.assertRaises(dj_mngmt.CommandError) as cm:
            _call('verify_lemmas', '--form', _fixture('x7_minus_y7'), '--corpus')
        self.assertEqual(2, cm.exception.returncode)

    def test_zk_points(self):
        data = _call_json('zk', '--form', _fixture('large_j_7'), '--points', '1,1', '1,2', '1,3')
        self.assertTrue(data['condition']['holds'])
        self.assertEqual('VIOLATED', data['verdicts'][0]['status'])
        self.assertEqual(1, data['verdicts'][0]['details']['divergence_n'])

    def test_zk_no_class_of_three(self):
        data = _call_json('zk', '--form', _fixture('x7_minus_y7'), '--h', '127', '--H', '10')
        self.assertFalse(data['condition']['holds'])
        self.assertEqual([], data['verdicts'])

    def test_induction_step(self):
        data = _call_json('induction', '--r', '7')
        self.assertEqual('(13,5,23/5,9/5,3)', data['successor'])
        self.assertEqual('161/5', data['source']['B1'])

    def test_induction_custom_seed(self):
        data = _call_json('induction', '--r', '7', '--seed', '13,5,23/5,9/5,3', '--n', '2')
        self.assertEqual('(20,6,44/5,16/5,5)', data['successor'])

    def test_induction_chain(self):
        data = _call_json('induction', '--r', '7', '--steps', '5', '--sigma-zero')
        self.assertEqual(2, len(data['steps']))
        self.assertEqual(['iii', 'iv'], data['steps'][-1]['failed'])
        self.assertIsNone(data['successor'])

    def test_induction_bad_seed(self):
        with self.assertRaises(dj_mngmt.CommandError):
            _call('induction', '--r', '7', '--seed', '1,2,3')


class TableCommandTestCase(dj_test.SimpleTestCase):
    def test_csv(self):
        out, _ = _call('table', '--r', '7..8')
        lines = out.splitlines()
        self.assertEqual('r,h,log10_main,log10_akss_ii_m4,log10_siegel_l1,min_theorem', lines[0])
        self.assertEqual(3, len(lines))
        self.assertTrue(lines[1].startswith('7,1,'))

    def test_pairs(self):
        out, _ = _call('table', '--r', '7', '--pairs')
        tables = out.split('\n\n')
        self.assertEqual(2, len(tables))
        self.assertTrue(tables[1].startswith('r,h,ell,'))

    def test_json(self):
        data = _call_json('table', '--r', '7', '--h', '1,10', '--format', 'json')
        self.assertEqual(2, len(data['rows']))

    def test_bad_list(self):
        with self.assertRaises(dj_mngmt.CommandError) as cm:
            _call('table', '--r', 'seven')
        self.assertEqual(2, cm.exception.returncode)


class ErrorsTestCase(dj_test.SimpleTestCase):
    def test_domain_error(self):
        out, err = io.StringIO(), io.StringIO()
        with self.assertRaises(SystemExit) as cm:
            dj_mngmt.call_command('expand', '--form', _fixture('degenerate'), stdout=out, stderr=err)
        self.assertEqual(1, cm.exception.code)
        self.assertEqual('DegenerateFormError', json.loads(err.getvalue())['error'])

    def test_out_of_range(self):
        with self.assertRaises(SystemExit) as cm:
            _call('table', '--r', '6..7')
        self.assertEqual(1, cm.exception.code)

    def test_missing_form(self):
        with self.assertRaises(dj_mngmt.CommandError) as cm:
            _call('invariants')
        self.assertEqual(2, cm.exception.returncode)

    def test_unreadable_form(self):
        with self.assertRaises(dj_mngmt.CommandError):
            _call('invariants', '--form', str(FIXTURES / 'missing.json'))

    def test_verify_on_integer_form(self):
        with self.assertRaises(SystemExit):
            _call('check', '--form', _fixture('x8_plus_y8'), '--verify')


class MainTestCase(dj_test.SimpleTestCase):
    def test_unknown_subcommand(self):
        self.assertEqual(2, cli.main(['frobnicate']))

    def test_no_subcommand(self):
        self.assertEqual(2, cli.main([]))
