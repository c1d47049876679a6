"""This module defines a command that compares Z₃ with the n-th lower bound on classes of three solutions."""
from ._core import DiagThueCommand, usage_error
from ...api import analysis as _analysis, lemmas as _lemmas, solver as _solver
from ...api.exactnum import format_rational


def _point(text: str) -> tuple[int, int]:
    try:
        x, y = text.split(',')
        return int(x), int(y)
    except ValueError:
        raise usage_error(f'invalid point: {text!r}, expected x,y')


class Command(DiagThueCommand):
    help = 'Evaluates the Z₃ lower bound on the classes of three solutions of a form'
    uses_box = True

    def add_command_arguments(self, parser):
        parser.add_argument('--n', dest='n', type=int, default=1, help='Index of the bound.')
        parser.add_argument('--omega', dest='omega', type=int, default=None,
                            help='Only check the class of this root index.')
        parser.add_argument('--points', dest='points', nargs='+', metavar='X,Y',
                            help='Check this chain of three points instead of enumerating the box.')

    def manifest_parameters(self):
        return 'n', 'omega', 'points'

    def run(self, **options):
        form = self.load_diag_form(options)
        h, n, precision = options['h'], options['n'], options['precision']
        if options['points']:
            records = [_analysis.solution_profile(form, *_point(p), precision) for p in options['points']]
            chains = [_lemmas.GapChain.of(records)]
        else:
            cfg = _solver.SearchConfig(H=options['H'], precision=precision)
            partition = _solver.enumerate_solutions(form.expanded, h, cfg, form).partition
            if options['omega'] is not None:
                chains = [_lemmas.GapChain.from_partition(partition, options['omega'])]
            else:
                chains = [_lemmas.GapChain.from_partition(partition, k)
                          for k, members in partition.classes.items() if len(members) == 3]
        i7, i8 = _lemmas.zk_condition_exponents(form.r)
        return {
            'form': form.to_json(),
            'h': str(h),
            'n': n,
            'condition': {
                'i7': format_rational(i7),
                'i8': format_rational(i8),
                'holds': _lemmas.zk_condition(form, h),
            },
            'verdicts': [_lemmas.zk_bound(chain, form, h, n, precision).to_json() for chain in chains],
        }
