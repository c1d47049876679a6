"""This module defines a command that partitions the solutions of a form into the classes S_ω."""
from ._core import DiagThueCommand
from ...api import solver as _solver


class Command(DiagThueCommand):
    help = 'Relates every solution in the box to an r-th root of unity and groups them by root'
    uses_box = True

    def run(self, **options):
        form = self.load_diag_form(options)
        precision = options['precision']
        cfg = _solver.SearchConfig(H=options['H'], precision=precision)
        report = _solver.enumerate_solutions(form.expanded, options['h'], cfg, form)
        return {
            'form': form.to_json(),
            'h': str(options['h']),
            'within_box': True,
            'N': report.N,
            'partition': report.partition.to_json(precision),
        }
