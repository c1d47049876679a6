"""This module defines a command that prints the invariants of a diagonalizable form."""
from ._core import DiagThueCommand
from ...api import binary_forms as _forms


class Command(DiagThueCommand):
    help = 'Computes j, χ, the quadratic form (A, B, C), D, Δ and Δ′ of a diagonalizable form'

    def run(self, **options):
        form = self.load_diag_form(options)
        return {
            'form': form.to_json(),
            **_forms.invariants(form, options['h']).to_json(),
        }
