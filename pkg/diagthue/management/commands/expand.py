"""This module defines a command that expands a diagonalizable form into its integer coefficients."""
from ._core import DiagThueCommand
from ...api import binary_forms as _forms


class Command(DiagThueCommand):
    help = 'Expands (αx+βy)^r − (γx+δy)^r into an integer binary form and classifies it'
    uses_h = False

    def run(self, **options):
        form = self.load_diag_form(options)
        f = _forms.expand(form)
        return {
            'form': form.to_json(),
            'expanded': f.to_json(),
            'class': _forms.classify(f).to_json(),
        }
