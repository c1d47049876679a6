"""This module defines a command that checks every lemma on the solutions of a form or of the whole corpus.
It exits with status 1 when any verdict is VIOLATED."""
from ._core import DOMAIN_EXIT, DiagThueCommand, usage_error
from ...api import corpus as _corpus, lemmas as _lemmas, solver as _solver
from ... import settings as _settings


class Command(DiagThueCommand):
    help = 'Checks the lemmas on every class of solutions of a form, or of every corpus instance'
    uses_box = True

    def add_command_arguments(self, parser):
        parser.add_argument('--corpus', action='store_true', dest='corpus',
                            help='Run on the standard corpus instead of --form.')

    def manifest_parameters(self):
        return 'corpus',

    def run(self, **options):
        if options['corpus']:
            if options.get('form'):
                raise usage_error('--form and --corpus are mutually exclusive')
            instances = [(e.name, e.form, e.h) for e in _corpus.standard_corpus()]
        else:
            instances = [(options.get('form'), self.load_diag_form(options), options['h'])]
        precision = options['precision']
        cfg = _solver.SearchConfig(H=options['H'], precision=precision)

        results = []
        violated = 0
        for name, form, h in instances:
            _settings.LOGGER.info(f'Checking lemmas on {name}')
            report = _solver.enumerate_solutions(form.expanded, h, cfg, form)
            verdicts = _lemmas.verify_all(form, h, report.partition, precision)
            count = sum(v.violated for v in verdicts)
            violated += count
            results.append({
                'name': name,
                'form': form.to_json(),
                'h': str(h),
                'N': report.N,
                'violated': count,
                'verdicts': [v.to_json() for v in verdicts],
            })
        return {'instances': results, 'violated': violated}

    def after_report(self, report):
        if report['violated']:
            _settings.LOGGER.warning(f'{report["violated"]} verdict(s) VIOLATED')
            raise SystemExit(DOMAIN_EXIT)
