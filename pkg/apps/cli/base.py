import logging
import time
from dataclasses import dataclass, field

from django.core.management.base import BaseCommand, CommandError
from django.test.utils import override_settings
from django.utils import timezone

from apps.extremal.exceptions import ExtremalError
from apps.hypercore.exceptions import HypergraphError
from apps.spectral.exceptions import PerronConvergenceError, SpectralError

from . import reporting
from .exceptions import SweepSpecError
from .serializers import RunManifestSerializer

logger = logging.getLogger(__name__)

USAGE_ERRORS = (HypergraphError, SpectralError, ExtremalError, SweepSpecError)
DJANGO_OPTIONS = {
    'verbosity', 'settings', 'pythonpath', 'traceback', 'no_color', 'force_color', 'skip_checks', 'stdout', 'stderr',
}

EXIT_FAILURE = 1
EXIT_USAGE = 2


@dataclass
class RunOutput:
    """``document`` goes to stdout or --out, ``rows`` to --csv and tables, ``records`` to --log."""

    document: object
    rows: list = field(default_factory=list)
    records: list = None
    failure: str = ''


class ReportCommand(BaseCommand):
    """
    Shared surface of the report commands: output files, tolerance flags and
    the exit-code contract (0 pass, 1 verification failure, 2 usage error).
    """

    def add_arguments(self, parser):
        parser.add_argument('--out', help='Write the JSON report here instead of stdout')
        parser.add_argument('--csv', dest='csv_path', help='Write a CSV summary table')
        parser.add_argument('--log', dest='log_path', help='Append one JSON line per record')
        parser.add_argument('--manifest', help='Write the run manifest listing every output')
        parser.add_argument('--format', choices=('json', 'table'), default='json')
        parser.add_argument('--tol', type=float, help='Relative tolerance of the power iteration')
        parser.add_argument('--gap', type=float, help='Relative gap for strict verdicts')
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def run(self, **options):
        raise NotImplementedError

    def handle(self, *args, **options):
        started = timezone.now().isoformat()
        clock = time.perf_counter()
        overrides = {}
        if options.get('tol') is not None:
            overrides['SPECTRAL_TOLERANCE'] = options['tol']
        if options.get('gap') is not None:
            overrides['STRICT_GAP'] = options['gap']

        try:
            with override_settings(**overrides):
                output = self.run(**options)
                tolerances = reporting.current_tolerances()
        except USAGE_ERRORS as exc:
            raise CommandError(str(exc), returncode=EXIT_USAGE)
        except PerronConvergenceError as exc:
            raise CommandError(str(exc), returncode=EXIT_FAILURE)

        outputs = self.emit(output, options)
        if options.get('manifest'):
            manifest = reporting.RunManifest(
                command=self.command_name(),
                parameters={key: value for key, value in options.items() if key not in DJANGO_OPTIONS},
                tolerances=tolerances,
                started=started,
                wall_clock=time.perf_counter() - clock,
                outputs=outputs + [options['manifest']],
            )
            reporting.write_text(options['manifest'], reporting.dumps(RunManifestSerializer(manifest).data))

        if output.failure:
            raise CommandError(output.failure, returncode=EXIT_FAILURE)

    def command_name(self):
        return self.__module__.rsplit('.', 1)[-1]

    def emit(self, output, options):
        outputs = []
        document = output.document
        text = document if isinstance(document, str) else reporting.dumps(document)
        if options.get('out'):
            outputs.append(reporting.write_text(options['out'], text))
        if options.get('format') == 'table':
            self.stdout.write(reporting.table_text(output.rows), ending='')
        elif not options.get('out'):
            self.stdout.write(text, ending='')
        if options.get('csv_path'):
            outputs.append(reporting.write_text(options['csv_path'], reporting.csv_text(output.rows)))
        if options.get('log_path'):
            records = output.rows if output.records is None else output.records
            reporting.append_jsonl(options['log_path'], records)
            outputs.append(options['log_path'])
        return outputs
