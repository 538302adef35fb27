import json
from pathlib import Path

from rest_framework.exceptions import ValidationError

from apps.grafts import counterexamples
from apps.spectral.serializers import CheckReportSerializer

from ...base import ReportCommand, RunOutput
from ...exceptions import SweepSpecError
from ...serializers import SweepSpecSerializer
from ...services import TARGETS, SweepService

GRID_FLAGS = (
    ('k', 'uniformity'),
    ('m', 'edge count'),
    ('mstar', 'spine length m*'),
    ('delta', 'maximum degree'),
    ('delta_hi', 'largest maximum degree of a sweep'),
    ('n', 'number of maximum-degree vertices'),
    ('a', 'stars at the start of the spine'),
    ('b', 'stars at the end of the spine'),
    ('s', 'first path length or spine index'),
    ('t', 'second path length or spine index'),
    ('r', 'sign-chain depth'),
    ('u', 'attachment vertex of the host'),
    ('u2', 'spine index receiving the moved attachment'),
    ('g1', 'edges of the first attached star'),
    ('g2', 'edges of the second attached star'),
    ('host_m', 'edges of the host loose path'),
    ('case', 'core configuration: i, ii or iii'),
    ('family', 'identity-suite family: path, star, cat or gc'),
)


def load_grid_file(path, target):
    try:
        payload = json.loads(Path(path).read_text(encoding='utf-8'))
    except OSError as exc:
        raise SweepSpecError(f'Cannot read {path}: {exc.strerror}')
    except json.JSONDecodeError as exc:
        raise SweepSpecError(f'Invalid grid file {path}: {exc.msg} at line {exc.lineno}')
    if isinstance(payload, dict):
        payload.setdefault('target', target)
    serializer = SweepSpecSerializer(data=payload)
    try:
        serializer.is_valid(raise_exception=True)
    except ValidationError as exc:
        raise SweepSpecError(f'Invalid grid file {path}: {exc.detail}')
    if serializer.validated_data['target'] != target:
        raise SweepSpecError(f'Grid file is for {serializer.validated_data["target"]}, not {target}')
    return serializer.validated_data['grids']


class Command(ReportCommand):
    help = 'Run a verifier over a parameter grid; exit 1 if any grid point fails'

    def add_command_arguments(self, parser):
        parser.add_argument('target', choices=sorted(TARGETS))
        parser.add_argument('--grid', help='JSON grid file {"target": ..., "grids": [{key: values}]}')
        parser.add_argument(
            '--nonuniform-counterexample', action='store_true',
            help='graft2 only: evaluate the non-uniform bridge construction instead of a grid',
        )
        for key, meaning in GRID_FLAGS:
            parser.add_argument(f'--{key.replace("_", "-")}', dest=f'grid_{key}', help=f'{meaning} (value, lo..hi or list)')

    def run(self, **options):
        target = options['target']
        if options['nonuniform_counterexample']:
            return self.counterexample(target)

        overrides = {
            key: options[f'grid_{key}'] for key, _ in GRID_FLAGS if options.get(f'grid_{key}') is not None
        }
        grid_list = load_grid_file(options['grid'], target) if options.get('grid') else None
        points = SweepService.points(target, grid_list, overrides)
        records = SweepService.run(target, points)
        summary = SweepService.summarize(records)
        evaluated = len(records) - summary['skipped']
        if points and not evaluated:
            raise SweepSpecError(f'No grid point of {target} satisfies its hypotheses ({summary["skipped"]} skipped)')

        rows = [self.row(record) for record in records]
        failure = ''
        if summary['fail']:
            failing = [record['index'] for record in records if record.get('report', {}).get('verdict') == 'fail']
            failure = f'{target}: {summary["fail"]} of {evaluated} grid points fail (indices {failing[:10]})'
        self.stderr.write(
            f'{target}: {summary["pass"]} pass, {summary["fail"]} fail, '
            f'{summary["vacuous"]} vacuous, {summary["skipped"]} skipped'
        )
        document = {'target': target, 'summary': summary, 'points': records}
        return RunOutput(document, rows, records, failure)

    @staticmethod
    def row(record):
        row = {'index': record['index'], 'point': record['point'], 'status': record['status']}
        if record['status'] == 'skipped':
            row['verdict'] = ''
            row['max_residual'] = ''
        else:
            row['verdict'] = record['report']['verdict']
            row['max_residual'] = record['report']['max_residual']
        return row

    @staticmethod
    def counterexample(target):
        if target != 'graft2':
            raise SweepSpecError('--nonuniform-counterexample applies to graft2 only')
        report = counterexamples.evaluate(counterexamples.nonuniform_bridge())
        data = CheckReportSerializer(report).data
        row = {
            'example': report.name,
            'rho_before': report.data['rho_before'],
            'rho_after': report.data['rho_after'],
            'verdict': report.data['outcome'],
        }
        document = {'target': target, 'counterexample': data, 'verdict': report.data['outcome']}
        failure = '' if report.passed else f'{report.name}: {report.data["outcome"]} ({report.detail})'
        return RunOutput(document, [row], failure=failure)
