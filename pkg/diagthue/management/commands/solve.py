"""This module defines a command that enumerates the primitive solutions of 0 < |F(x, y)| ≤ h in a box."""
from ._core import DiagThueCommand
from ...api import solver as _solver
from ...api.binary_forms import DiagForm
from ...api.exactnum import Magnitude

CSV_COLUMNS = ('x', 'y', 'F', 'Z', 'zeta', 'omega_index')


def _cell(m: Magnitude, precision: int | None) -> str:
    match m.to_json(precision):
        case str() as s:
            return s
        case {'center': str() as center}:
            return center
        case _:
            return str(m)


class Command(DiagThueCommand):
    help = 'Enumerates the primitive solutions of 0 < |F(x, y)| ≤ h with max(|x|, |y|) ≤ H'
    uses_box = True
    formats = ('json', 'csv')

    def add_command_arguments(self, parser):
        parser.add_argument('--workers', dest='workers', type=int, default=None,
                            help='Number of parallel chunks of the x-range.')

    def manifest_parameters(self):
        return 'workers',

    def run(self, **options):
        form = self.load_form(options)
        precision = options['precision']
        cfg = _solver.SearchConfig(H=options['H'], parallel_chunks=options['workers'], precision=precision)
        h = options['h']
        if isinstance(form, DiagForm):
            report = _solver.enumerate_solutions(form.expanded, h, cfg, form)
        else:
            report = _solver.enumerate_solutions(form, h, cfg)

        if options['format'] == 'csv':
            rows = [CSV_COLUMNS]
            if report.solutions:
                rows += [(str(rec.x), str(rec.y), str(rec.f_value), _cell(rec.z, precision),
                          _cell(rec.zeta, precision), str(rec.omega_index)) for rec in report.solutions]
            else:
                rows += [(str(x), str(y), str(v), '', '', '') for x, y, v in report.triples]
            return [rows]

        data = report.to_json(precision)
        if isinstance(form, DiagForm):
            data['saturation'] = [e.to_json(precision) for e in _solver.saturation(report, form, h, precision)]
        return data
