"""This module defines a command that tabulates the discriminant thresholds of the counting theorems."""
from ._core import DiagThueCommand, int_list
from ...api import thresholds as _thr


class Command(DiagThueCommand):
    help = 'Tabulates log₁₀ of the MAIN, AKSS_II (m = 4) and Siegel (ℓ = 1) thresholds'
    uses_form = False
    uses_h = False
    formats = ('csv', 'json')

    def add_command_arguments(self, parser):
        parser.add_argument('--r', dest='r', default='7..12', help='Degrees, as "7..12" or "7,9".')
        parser.add_argument('--h', dest='h', default='1', help='Bounds, as "1,10,100".')
        parser.add_argument('--pairs', action='store_true', dest='pairs',
                            help='Also compare AKSS_II with m = 2ℓ against Siegel ℓ for ℓ ∈ {2, 3}.')

    def manifest_parameters(self):
        return 'r', 'pairs'

    def run(self, **options):
        rows, pairs = _thr.compare_table(int_list(options['r']), int_list(options['h']), pairs=options['pairs'],
                                         precision=options['precision'])
        if options['format'] == 'csv':
            tables = [[_thr.CSV_HEADER, *(row.csv_row() for row in rows)]]
            if options['pairs']:
                tables.append([_thr.PAIR_CSV_HEADER, *(row.csv_row() for row in pairs)])
            return tables
        report = {'rows': [row.to_json() for row in rows]}
        if options['pairs']:
            report['pairs'] = [row.to_json() for row in pairs]
        return report
