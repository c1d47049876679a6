"""This module defines a command that classifies a form and checks a theorem’s discriminant hypothesis."""
from ._core import DiagThueCommand, usage_error
from ...api import binary_forms as _forms, errors as _errors, solver as _solver, thresholds as _thr


class Command(DiagThueCommand):
    help = 'Classifies a form and checks the discriminant hypothesis of a theorem on it'
    uses_box = True

    def add_command_arguments(self, parser):
        parser.add_argument('--theorem', dest='theorem', default='main',
                            help='One of main, akss1, akss2:m or siegel:l.')
        parser.add_argument('--verify', action='store_true', dest='verify',
                            help='Also enumerate the solutions in the box and check them against MAIN.')

    def manifest_parameters(self):
        return 'verify',

    def run(self, **options):
        form = self.load_form(options)
        if isinstance(form, _forms.IntBinaryForm):
            if options['verify']:
                raise _errors.InvalidFormError('--verify needs a diagonal form spec')
            return {'form': form.to_json(), 'class': _forms.classify(form).to_json(), 'hypothesis': None}
        try:
            spec = _thr.ThresholdSpec.parse(options['theorem'], form.r, options['h'])
        except _errors.DOMAIN_ERRORS:
            raise
        except ValueError as e:
            raise usage_error(str(e))
        report = {
            'form': form.to_json(),
            'class': _forms.classify(form.expanded).to_json(),
            'hypothesis': _thr.check_hypothesis(form, options['h'], spec).to_json(),
        }
        if options['verify']:
            cfg = _solver.SearchConfig(H=options['H'], precision=options['precision'])
            report['theorem'] = _solver.verify_theorem(form, options['h'], cfg).to_json(options['precision'])
        return report
