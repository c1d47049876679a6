"""This module defines a command that runs the induction on the properties P[a₁, …, a₅]."""
from ._core import DiagThueCommand, usage_error
from ...api import exactnum as _exn, lemmas as _lemmas


class Command(DiagThueCommand):
    help = 'Applies induction steps to the seed property or to a given one'
    uses_form = False
    uses_h = False

    def add_command_arguments(self, parser):
        parser.add_argument('--r', dest='r', type=int, required=True, help='Degree, at least 7.')
        parser.add_argument('--seed', dest='seed', default='default',
                            help='"default" for P[r−1,1,0,−1,1], or five exponents "a1,a2,a3,a4,a5".')
        parser.add_argument('--n', dest='n', type=int, default=1)
        parser.add_argument('--g', dest='g', type=int, default=0, choices=(0, 1))
        parser.add_argument('--sigma-zero', action='store_true', dest='sigma_zero',
                            help='Σ_{n,g} vanishes, no successor is produced.')
        parser.add_argument('--steps', dest='steps', type=int, default=None,
                            help='Iterate this many steps from the seed and report every one.')

    def manifest_parameters(self):
        return 'r', 'seed', 'n', 'g', 'sigma_zero', 'steps'

    def run(self, **options):
        r = options['r']
        if options['steps'] is not None:
            chain = _lemmas.induction_chain(r, options['steps'], sigma=not options['sigma_zero'])
            return {
                'r': r,
                'steps': [result.to_json() for result in chain],
                'successor': chain[-1].successor.label() if chain[-1].successor is not None else None,
            }
        p = self._property(options)
        result = _lemmas.induction_step(p, r)
        return {'r': r, **result.to_json()}

    @staticmethod
    def _property(options: dict) -> _lemmas.PropertyQuintuple:
        r, n, g, sigma = options['r'], options['n'], options['g'], not options['sigma_zero']
        if options['seed'] == 'default':
            return _lemmas.seed(r, n, g, sigma)
        try:
            a = [_exn.parse_rational(v) for v in options['seed'].split(',')]
        except ValueError:
            raise usage_error(f'invalid seed: {options["seed"]!r}')
        if len(a) != 5:
            raise usage_error(f'a seed has five exponents, got {len(a)}')
        return _lemmas.PropertyQuintuple(r, *a, n, g, sigma)
