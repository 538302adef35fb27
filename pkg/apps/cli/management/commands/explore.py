from collections import Counter

from ...base import ReportCommand, RunOutput
from ...grids import parse_values
from ...services import ExploreService


class Command(ReportCommand):
    help = 'Evidence sweeps for the open G_c shift and two-path shift questions; never fails'

    def add_command_arguments(self, parser):
        parser.add_argument('mode', choices=('conjecture', 'question1'))
        parser.add_argument('--k', default='3')
        parser.add_argument('--s', default='2..4', help='conjecture: first spine part')
        parser.add_argument('--t', default='2..4', help='conjecture: second spine part')
        parser.add_argument('--core-edges', type=int, default=3, help='conjecture: largest core size')
        parser.add_argument('--host-m', default='1..2', help='question1: host edge counts')
        parser.add_argument('--p', default='1..3', help='question1: longer path')
        parser.add_argument('--q', default='1..3', help='question1: shorter path')
        parser.add_argument('--star', default='0..1', help='question1: edges of the star hung along the paths')

    def run(self, **options):
        ks = parse_values(options['k'])
        if options['mode'] == 'conjecture':
            records = ExploreService.conjecture(
                ks, parse_values(options['s']), parse_values(options['t']), options['core_edges'],
            )
            rows = [
                {key: record[key] for key in ('k', 's', 't', 'c', 'case', 'rho_before', 'rho_after', 'sign', 'consistent')}
                for record in records
            ]
        else:
            records = ExploreService.question1(
                ks, parse_values(options['host_m']), parse_values(options['p']),
                parse_values(options['q']), parse_values(options['star']),
            )
            rows = [
                {key: record[key] for key in ('k', 'u', 'v', 'p', 'q', 'star', 'distance', 'degree_u', 'degree_v', 'sign')}
                for record in records
            ]
        signs = dict(sorted(Counter(record['sign'] for record in records).items()))
        self.stderr.write(f'{options["mode"]}: {len(records)} instances, {signs}')
        document = {'mode': options['mode'], 'instances': len(records), 'signs': signs, 'records': records}
        return RunOutput(document, rows, records)
