import json
import math
import tempfile
from io import StringIO
from pathlib import Path

import numpy as np
from django.core.management import CommandError, call_command
from django.test import SimpleTestCase, tag

from apps.grafts.counterexamples import CONFIRMED
from apps.hypercore import io
from apps.hypercore.hypergraph import Hypergraph

from . import grids, reporting
from .exceptions import SweepSpecError
from .serializers import SweepSpecSerializer
from .services import TARGETS, SweepService
from .tasks import evaluate_grid_point


def run(*args):
    out, err = StringIO(), StringIO()
    call_command(*args, stdout=out, stderr=err)
    return out.getvalue()


def run_json(*args):
    return json.loads(run(*args))


class GridTest(SimpleTestCase):
    """Value parsing and grid expansion"""

    def test_values(self):
        self.assertEqual(grids.parse_values('5..7'), [5, 6, 7])
        self.assertEqual(grids.parse_values('1,2,4'), [1, 2, 4])
        self.assertEqual(grids.parse_values(3), [3])
        self.assertEqual(grids.parse_values(['i', 'iii']), ['i', 'iii'])
        self.assertEqual(grids.parse_values('3..2'), [])
        with self.assertRaises(SweepSpecError):
            grids.parse_values([True])

    def test_expand_sorted_product(self):
        points = grids.expand([{'t': '1..2', 's': '3'}])
        self.assertEqual(points, [{'s': 3, 't': 1}, {'s': 3, 't': 2}])

    def test_overrides_pick_matching_grids(self):
        family = [{'k': '2', 'm': '5..6'}, {'k': '3', 'm': '5..9'}]
        points = grids.expand(family, {'k': '3', 'm': '8'})
        self.assertEqual(points, [{'k': 3, 'm': 8}])
        points = grids.expand(family, {'k': '4'})
        self.assertEqual(len(points), 2 + 5)

    def test_duplicates_and_empty(self):
        self.assertEqual(len(grids.expand([{'a': '1'}, {'a': '1'}])), 1)
        self.assertEqual(grids.expand([{'a': '1..3'}], {'a': '3..2'}), [])


class ReportingTest(SimpleTestCase):
    """Deterministic float formatting"""

    def test_normalize(self):
        self.assertEqual(reporting.normalize(1 / 3), 0.333333333333)
        self.assertEqual(reporting.normalize(np.float64(2.0)), 2.0)
        self.assertEqual(reporting.normalize(np.int64(7)), 7)
        self.assertEqual(reporting.normalize({1: (1, 2), 'x': {3, 1}}), {'1': [1, 2], 'x': [1, 3]})
        self.assertEqual(reporting.normalize(math.inf), 'inf')
        self.assertEqual(reporting.normalize(np.array([0.5, 1.0])), [0.5, 1.0])

    def test_dumps_sorted(self):
        text = reporting.dumps({'b': 1, 'a': 1 / 7})
        self.assertLess(text.index('"a"'), text.index('"b"'))
        self.assertIn('0.142857142857', text)

    def test_csv_and_table(self):
        rows = [{'name': 'lem5', 'point': {'k': 3}}, {'name': 'lem7', 'extra': 1}]
        text = reporting.csv_text(rows)
        self.assertEqual(text.splitlines()[0], 'name,point,extra')
        self.assertIn('lem7', reporting.table_text(rows))
        self.assertEqual(reporting.table_text([]), '(no rows)\n')


class ConstructCommandTest(SimpleTestCase):
    """Family specs to canonical JSON"""

    def test_caterpillar(self):
        g = io.loads(run('construct', 'cat:3,5,3,1,2'))
        self.assertEqual((g.vertex_count, g.edge_count), (17, 8))

    def test_path_and_star(self):
        self.assertEqual(io.loads(run('construct', 'path:5,3')).edge_count, 5)
        star = io.loads(run('construct', 'star:4,2'))
        self.assertEqual(star.vertex_count, 5)

    def test_roles(self):
        data = run_json('construct', 'cat:3,5,3,1,2', '--roles')
        self.assertEqual(len(data['spine']), 6)

    def test_out_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'g.json'
            run('construct', 'path:2,2', '--out', str(path))
            self.assertEqual(io.load(path), Hypergraph(3, ((0, 1), (1, 2))))

    def test_errors(self):
        with self.assertRaises(CommandError) as ctx:
            run('construct', 'cat:3,5,x')
        self.assertEqual(ctx.exception.returncode, 2)
        self.assertIn('position', str(ctx.exception))
        with self.assertRaises(CommandError) as ctx:
            run('construct', 'cat:3,5,3,3,2')
        self.assertEqual(ctx.exception.returncode, 2)


class RhoCommandTest(SimpleTestCase):
    """ρ of a hypergraph file"""

    def write(self, tmp, text):
        path = Path(tmp) / 'g.txt'
        path.write_text(text)
        return str(path)

    def test_closed_forms(self):
        with tempfile.TemporaryDirectory() as tmp:
            data = run_json('rho', self.write(tmp, '3\n0 1 2\n'))
            self.assertAlmostEqual(data['rho'], 2.0, places=10)
            self.assertNotIn('x', data)
            data = run_json('rho', self.write(tmp, '3\n0 1\n1 2\n'), '--vector')
            self.assertAlmostEqual(data['rho'], 1 + math.sqrt(3), places=9)
            self.assertEqual(len(data['x']), 3)

    def test_published_caterpillar(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'cat.json'
            run('construct', 'cat:3,5,3,1,2', '--out', str(path))
            data = run_json('rho', str(path), '--identities')
            self.assertAlmostEqual(data['rho'], 45.33, delta=0.01)
            self.assertEqual(data['identities']['verdict'], 'pass')

    def test_disconnected(self):
        with tempfile.TemporaryDirectory() as tmp:
            with self.assertRaises(CommandError) as ctx:
                run('rho', self.write(tmp, '4\n0 1\n2 3\n'))
            self.assertEqual(ctx.exception.returncode, 2)


class VerifyCommandTest(SimpleTestCase):
    """Verifier sweeps and the exit-code contract"""

    def test_star_shift_grid(self):
        data = run_json('verify', 'lem5', '--k', '3', '--mstar', '5..7', '--delta', '3', '--n', '3')
        self.assertEqual(data['summary']['fail'], 0)
        self.assertEqual(data['summary']['pass'], 3)
        self.assertEqual([record['index'] for record in data['points']], list(range(len(data['points']))))

    def test_path_shifts(self):
        data = run_json('verify', 'graft1', '--k', '3', '--host-m', '1', '--u', '0', '--s', '1..2', '--t', '1..2')
        self.assertEqual(data['summary'], {'pass': 3, 'fail': 0, 'vacuous': 0, 'skipped': 1})
        data = run_json('verify', 'graft2', '--k', '3', '--host-m', '1..2', '--s', '1..2', '--t', '1')
        self.assertEqual(data['summary']['fail'], 0)
        self.assertEqual(data['summary']['pass'], 4)

    def test_core_shift_cases(self):
        data = run_json('verify', 'lem7', '--k', '3', '--s', '2', '--t', '2')
        cases = sorted(record['report']['name'] for record in data['points'])
        self.assertEqual(cases, ['lem7-i', 'lem7-ii', 'lem7-iii'])
        self.assertEqual(data['summary']['pass'], 3)

    def test_facts(self):
        for name in ('fact1', 'fact2', 'fact3'):
            data = run_json('verify', name, '--k', '3', '--mstar', '8', '--delta', '3', '--a', '0', '--b', '2')
            self.assertEqual(data['summary']['pass'], 1, name)

    def test_family_theorem(self):
        data = run_json('verify', 'thm2', '--k', '3', '--m', '5', '--delta', '3', '--n', '2')
        self.assertEqual(data['summary']['pass'], 1)
        self.assertTrue(data['points'][0]['report']['data']['verdict'])

    def test_family_theorem_with_four_stars(self):
        data = run_json('verify', 'thm2', '--k', '3', '--m', '9', '--delta', '3', '--n', '4')
        self.assertEqual(len(data['points']), 1)
        self.assertEqual(data['summary']['pass'], 1)

    def test_identity_suite_family(self):
        data = run_json('verify', 'eigen-identities', '--family', 'path', '--k', '3', '--m', '2..3')
        self.assertEqual(data['summary']['pass'], 2)

    def test_nonuniform_counterexample(self):
        data = run_json('verify', 'graft2', '--nonuniform-counterexample')
        self.assertEqual(data['verdict'], CONFIRMED)
        with self.assertRaises(CommandError) as ctx:
            run('verify', 'lem5', '--nonuniform-counterexample')
        self.assertEqual(ctx.exception.returncode, 2)

    def test_usage_errors(self):
        with self.assertRaises(CommandError) as ctx:
            run('verify', 'lem5', '--m', '3')
        self.assertEqual(ctx.exception.returncode, 2)
        with self.assertRaises(CommandError) as ctx:
            run('verify', 'lem5', '--k', '3', '--mstar', '5', '--delta', '3', '--n', '3', '--a', '1')
        self.assertEqual(ctx.exception.returncode, 2)
        with self.assertRaises(CommandError):
            run('verify', 'lem99')

    def test_empty_grid(self):
        data = run_json('verify', 'lem5', '--mstar', '3..2')
        self.assertEqual(data['points'], [])

    def test_grid_file_and_artifacts(self):
        with tempfile.TemporaryDirectory() as tmp:
            tmp = Path(tmp)
            grid = tmp / 'grid.json'
            grid.write_text(json.dumps({'target': 'lem7', 'grids': [{'k': 3, 's': '2..3', 't': 2, 'case': ['i']}]}))
            paths = {name: tmp / name for name in ('out.json', 'out.csv', 'run.jsonl', 'manifest.json')}
            run(
                'verify', 'lem7', '--grid', str(grid),
                '--out', str(paths['out.json']), '--csv', str(paths['out.csv']),
                '--log', str(paths['run.jsonl']), '--manifest', str(paths['manifest.json']),
            )
            document = json.loads(paths['out.json'].read_text())
            self.assertEqual(document['summary']['pass'], 2)
            self.assertEqual(len(paths['run.jsonl'].read_text().splitlines()), 2)
            self.assertEqual(len(paths['out.csv'].read_text().splitlines()), 3)
            manifest = json.loads(paths['manifest.json'].read_text())
            self.assertEqual(manifest['command'], 'verify')
            self.assertEqual(len(manifest['outputs']), 4)
            self.assertIn('STRICT_GAP', manifest['tolerances'])

    def test_grid_file_for_other_target(self):
        with tempfile.TemporaryDirectory() as tmp:
            grid = Path(tmp) / 'grid.json'
            grid.write_text(json.dumps({'target': 'lem5', 'grids': []}))
            with self.assertRaises(CommandError) as ctx:
                run('verify', 'lem7', '--grid', str(grid))
            self.assertEqual(ctx.exception.returncode, 2)

    def test_byte_identical_reruns(self):
        args = ('verify', 'lem7', '--k', '3', '--s', '2..3', '--t', '2', '--case', 'i')
        self.assertEqual(run(*args), run(*args))

    def test_gap_flag_turns_pass_into_failure(self):
        with self.assertRaises(CommandError) as ctx:
            run('verify', 'lem5', '--k', '3', '--mstar', '5', '--delta', '3', '--n', '3', '--a', '0', '--gap', '10')
        self.assertEqual(ctx.exception.returncode, 1)

    @tag('slow')
    def test_default_grids(self):
        for target in ('graft1', 'graft2', 'alem', 'lem5', 'lem6', 'lem7', 'fact1', 'fact2', 'fact3',
                       'nlem1', 'ncor1', 'ncor2', 'corollary-delta', 'eigen-identities'):
            data = run_json('verify', target)
            self.assertEqual(data['summary']['fail'], 0, target)


class SweepServiceTest(SimpleTestCase):
    """Registry and per-point records"""

    def test_registry(self):
        expected = {
            'graft1', 'graft2', 'alem', 'lem5', 'lem6', 'lem7', 'nlem1', 'ncor1', 'ncor2', 'fact1', 'fact2',
            'fact3', 'nlem3', 'thm1', 'thm2', 'corollary-delta', 'eigen-identities',
        }
        self.assertEqual(set(TARGETS), expected)

    def test_identity_suite_size(self):
        self.assertGreaterEqual(len(SweepService.points('eigen-identities')), 20)

    def test_family_grid_reaches_widest_n(self):
        for name in ('thm1', 'thm2', 'nlem3'):
            points = SweepService.points(name)
            self.assertIn({'delta': 3, 'k': 3, 'm': 9, 'n': 4}, points, name)
            self.assertIn({'delta': 3, 'k': 2, 'm': 8, 'n': 3}, points, name)
            self.assertTrue(all(2 <= p['n'] <= (p['m'] - 1) // 2 for p in points), name)

    def test_task_record(self):
        record = evaluate_grid_point.delay('lem7', {'k': 3, 's': 2, 't': 2, 'case': 'i'}).get()
        self.assertEqual(record['status'], 'evaluated')
        self.assertEqual(record['report']['verdict'], 'pass')
        record = evaluate_grid_point.delay('lem7', {'k': 3, 's': 2, 't': 1, 'case': 'i'}).get()
        self.assertEqual(record['status'], 'skipped')

    def test_missing_parameter(self):
        with self.assertRaises(SweepSpecError):
            SweepService.evaluate_point('lem7', {'k': 3, 's': 2})

    def test_sweep_spec_serializer(self):
        serializer = SweepSpecSerializer(data={'target': 'lem5', 'grids': [{'k': '3', 'mstar': '5..6'}]})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.validated_data['grids'][0]['mstar'], [5, 6])
        self.assertFalse(SweepSpecSerializer(data={'target': 'lem5', 'grids': [{'m': '3'}]}).is_valid())


class EnumerateCommandTest(SimpleTestCase):
    """Census listing"""

    def test_trees(self):
        data = run_json('enumerate', '--m', '4', '--k', '2')
        self.assertEqual(data['count'], 3)
        self.assertEqual(len({graph['code'] for graph in data['graphs']}), 3)

    def test_budget_refusal(self):
        with self.assertRaises(CommandError) as ctx:
            run('enumerate', '--m', '40', '--k', '2')
        self.assertEqual(ctx.exception.returncode, 2)
        self.assertIn('budget', str(ctx.exception))


class ExtremalCommandTest(SimpleTestCase):
    """Family verdicts"""

    def test_families(self):
        data = run_json('extremal', '--k', '3', '--m', '5', '--n', '2')
        self.assertTrue(data['families'][0]['verdict'])

    def test_empty_family(self):
        data = run_json('extremal', '--k', '2', '--m', '4', '--n', '2')
        self.assertTrue(data['families'][0]['empty'])
        self.assertIsNone(data['families'][0]['predicted'])

    def test_csv_summary(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'summary.csv'
            run('extremal', '--k', '2', '--m', '5..6', '--n', '2', '--csv', str(path))
            lines = path.read_text().splitlines()
            self.assertTrue(lines[0].startswith('k,m,delta,n,m_star'))
            self.assertEqual(len(lines), 3)


class ReproduceCommandTest(SimpleTestCase):
    """Published radii of the non-uniform constructions"""

    def test_values(self):
        data = run_json('reproduce_paper')
        outcomes = [example['data']['outcome'] for example in data['examples']]
        self.assertEqual(outcomes, [CONFIRMED, CONFIRMED])
        transfer = data['examples'][1]['data']
        self.assertAlmostEqual(transfer['rho_before'], 45.33, delta=0.01)
        self.assertAlmostEqual(transfer['rho_after'], 46.31, delta=0.01)
        bridge = data['examples'][0]['data']
        self.assertAlmostEqual(sorted([bridge['rho_before'], bridge['rho_after']])[0], 46.91, delta=0.01)
        self.assertAlmostEqual(max(bridge['rho_before'], bridge['rho_after']), 53.04, delta=0.01)

    def test_table(self):
        text = run('reproduce_paper', '--format', 'table')
        self.assertIn('vertex-transfer', text)
        self.assertIn('45.33 / 46.31', text)


class ExploreCommandTest(SimpleTestCase):
    """Evidence sweeps"""

    def test_conjecture(self):
        data = run_json('explore', 'conjecture', '--k', '3', '--s', '2', '--t', '2', '--core-edges', '2')
        self.assertGreater(data['instances'], 0)
        for record in data['records']:
            if record['case'] != 'open':
                self.assertTrue(record['consistent'])

    def test_question1_on_a_bridge(self):
        data = run_json('explore', 'question1', '--k', '3', '--host-m', '1', '--p', '1..2', '--q', '1', '--star', '0')
        self.assertEqual(data['instances'], 2)
        for record in data['records']:
            self.assertTrue(record['common_edge'])
            self.assertEqual(record['sign'], 'increase')

    def test_empty_grid(self):
        data = run_json('explore', 'conjecture', '--s', '3..2')
        self.assertEqual(data['instances'], 0)
        self.assertEqual(data['records'], [])
