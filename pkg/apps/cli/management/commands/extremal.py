import itertools

from apps.extremal.serializers import ExtremalReportSerializer, ExtremalSummarySerializer
from apps.extremal.services import ExtremalService
from apps.extremal.structures import FamilyKey

from ...base import ReportCommand, RunOutput
from ...grids import parse_values


class Command(ReportCommand):
    help = 'Exhaustive argmax of ρ over T_k(m, Δ, n) against the balanced caterpillar'

    def add_command_arguments(self, parser):
        parser.add_argument('--k', required=True, help='Value, lo..hi or list')
        parser.add_argument('--m', required=True)
        parser.add_argument('--delta', default='3')
        parser.add_argument('--n', required=True)
        parser.add_argument('--caterpillars-only', action='store_true', help='Restrict candidates to caterpillars')

    def run(self, **options):
        axes = [parse_values(options[name]) for name in ('k', 'm', 'delta', 'n')]
        verify = ExtremalService.verify_caterpillar_theorem if options['caterpillars_only'] else ExtremalService.verify_family
        reports = [verify(FamilyKey(*values)) for values in itertools.product(*axes)]

        records = [ExtremalReportSerializer(report).data for report in reports]
        rows = [ExtremalSummarySerializer(report).data for report in reports]
        failing = [str(report.family) for report in reports if not report.verdict]
        failure = f'No unique balanced-caterpillar maximizer in {", ".join(failing)}' if failing else ''
        document = {'families': records, 'caterpillars_only': options['caterpillars_only']}
        return RunOutput(document, rows, records, failure)
