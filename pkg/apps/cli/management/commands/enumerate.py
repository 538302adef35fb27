from collections import Counter

from apps.extremal.services import ExtremalService
from apps.hypercore.services import HypergraphService

from ...base import ReportCommand, RunOutput


class Command(ReportCommand):
    help = 'List k-uniform hypertrees with m edges, one per isomorphism class'

    def add_command_arguments(self, parser):
        parser.add_argument('--m', type=int, required=True)
        parser.add_argument('--k', type=int, required=True)

    def run(self, **options):
        m, k = options['m'], options['k']
        population = ExtremalService.enumerate_hypertrees(m, k)
        records, rows = [], []
        for g in population:
            code = HypergraphService.canonical_code(g).hex()
            census = dict(sorted(Counter(g.degrees).items()))
            records.append(dict(g.to_dict(), code=code, degree_census=census))
            rows.append({'code': code, 'vertices': g.vertex_count, 'max_degree': g.max_degree, 'degree_census': census})
        self.stderr.write(f'{len(population)} classes of {k}-uniform hypertrees with {m} edges')
        document = {'m': m, 'k': k, 'count': len(population), 'graphs': records}
        return RunOutput(document, rows, records)
