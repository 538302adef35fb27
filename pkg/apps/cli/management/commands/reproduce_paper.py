from apps.grafts import counterexamples
from apps.spectral.serializers import CheckReportSerializer

from ...base import ReportCommand, RunOutput


class Command(ReportCommand):
    help = 'Recompute the four published radii of the two non-uniform constructions'

    def run(self, **options):
        examples = (counterexamples.nonuniform_bridge(), counterexamples.vertex_transfer())
        reports = [counterexamples.evaluate(example) for example in examples]
        rows = []
        for example, report in zip(examples, reports):
            rows.append({
                'example': example.name,
                'rho_before': report.data['rho_before'],
                'rho_after': report.data['rho_after'],
                'published': ' / '.join(f'{value:.2f}' for value in example.published),
                'ordered': example.ordered,
                'outcome': report.data['outcome'],
            })

        failing = [row for row, report in zip(rows, reports) if not report.passed]
        failure = '; '.join(
            f'{row["example"]}: computed {row["rho_before"]:.4f} / {row["rho_after"]:.4f}, '
            f'published {row["published"]} ({row["outcome"]})'
            for row in failing
        )
        document = {'examples': [CheckReportSerializer(report).data for report in reports]}
        return RunOutput(document, rows, failure=failure)
