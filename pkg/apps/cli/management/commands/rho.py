from apps.hypercore import io
from apps.spectral.identities import IdentityService
from apps.spectral.serializers import CheckReportSerializer, SpectralResultSerializer
from apps.spectral.services import SpectralService

from ...base import ReportCommand, RunOutput


class Command(ReportCommand):
    help = 'Distance spectral radius and Perron vector of a hypergraph file'

    def add_command_arguments(self, parser):
        parser.add_argument('path', help='Hypergraph file, canonical JSON or plain text')
        parser.add_argument('--vector', action='store_true', help='Include the Perron vector')
        parser.add_argument('--identities', action='store_true', help='Also run the identity checks')

    def run(self, **options):
        g = io.load(options['path'])
        dm, result = SpectralService.analyze(g)
        document = dict(SpectralResultSerializer(result).data)
        if not options['vector']:
            document.pop('x')
        document.update({'vertex_count': g.vertex_count, 'edge_count': g.edge_count})
        row = {'path': options['path'], 'rho': result.rho, 'residual': result.residual, 'iterations': result.iterations}

        failure = ''
        if options['identities']:
            report = IdentityService.check_all(g, dm, result)
            document['identities'] = CheckReportSerializer(report).data
            row['identities'] = report.verdict.value
            if report.failed:
                failure = f'Identity checks failed on {options["path"]}'
        return RunOutput(document, [row], failure=failure)
