import math

import networkx as nx
from django.test import SimpleTestCase, override_settings, tag

from apps.families.services import FamilyService
from apps.families.structures import CaterpillarParams
from apps.hypercore.hypergraph import Hypergraph
from apps.hypercore.services import HypergraphService
from apps.spectral.reports import Verdict

from .exceptions import EnumerationBudgetError, ExtremalError
from .serializers import ExtremalReportSerializer, ExtremalSummarySerializer, FamilyKeySerializer
from .services import ExtremalService
from .structures import FamilyKey
from .tasks import compute_rho


def incidence_tree_census(m, k):
    """Unlabeled trees on m + n nodes whose bipartition is m nodes of degree k against n = m(k-1)+1 nodes."""
    n = m * (k - 1) + 1
    count = 0
    for tree in nx.nonisomorphic_trees(n + m):
        left, right = nx.bipartite.sets(tree)
        for side in (left, right):
            if len(side) == m and all(tree.degree(v) == k for v in side):
                count += 1
                break
    return count


def caterpillar(*args):
    return FamilyService.caterpillar(CaterpillarParams(*args)).graph


class EnumerationTest(SimpleTestCase):
    """Pendant-edge augmentation up to isomorphism"""

    def test_small_censuses(self):
        self.assertEqual(len(ExtremalService.enumerate_hypertrees(3, 2)), 2)
        self.assertEqual(len(ExtremalService.enumerate_hypertrees(4, 2)), 3)
        self.assertEqual(len(ExtremalService.enumerate_hypertrees(3, 3)), 2)
        self.assertEqual(len(ExtremalService.enumerate_hypertrees(1, 4)), 1)

    def test_ordinary_trees_against_networkx(self):
        for m in range(2, 7):
            expected = sum(1 for _ in nx.nonisomorphic_trees(m + 1))
            self.assertEqual(len(ExtremalService.enumerate_hypertrees(m, 2)), expected, m)
        self.assertEqual([len(ExtremalService.enumerate_hypertrees(m, 2)) for m in range(3, 7)], [2, 3, 6, 11])

    def test_three_uniform_against_incidence_trees(self):
        for m in range(2, 5):
            self.assertEqual(len(ExtremalService.enumerate_hypertrees(m, 3)), incidence_tree_census(m, 3), m)

    def test_members_are_uniform_hypertrees_sorted_by_code(self):
        population = ExtremalService.enumerate_hypertrees(5, 3)
        codes = [HypergraphService.canonical_code(g) for g in population]
        self.assertEqual(codes, sorted(codes))
        self.assertEqual(len(set(codes)), len(codes))
        for g in population:
            self.assertTrue(HypergraphService.is_hypertree(g))
            self.assertTrue(HypergraphService.is_k_uniform(g, 3))
            self.assertEqual(g.vertex_count, 5 * 2 + 1)

    def test_star_and_path_present(self):
        population = ExtremalService.enumerate_hypertrees(3, 3)
        self.assertTrue(any(HypergraphService.is_isomorphic(g, FamilyService.hyperstar(3, 3).graph) for g in population))
        self.assertTrue(any(HypergraphService.is_isomorphic(g, FamilyService.loose_path(3, 3).graph) for g in population))

    @override_settings(ENUMERATION_MAX_EDGES={2: 3})
    def test_budget(self):
        with self.assertRaises(EnumerationBudgetError) as ctx:
            ExtremalService.enumerate_hypertrees(4, 2)
        self.assertEqual(ctx.exception.estimate, 2 * 3 * 4)
        with self.assertRaises(EnumerationBudgetError):
            ExtremalService.enumerate_hypertrees(4, 5)
        self.assertEqual(len(ExtremalService.enumerate_hypertrees(3, 2)), 2)

    def test_invalid_arguments(self):
        with self.assertRaises(ExtremalError):
            ExtremalService.enumerate_hypertrees(0, 3)
        with self.assertRaises(ExtremalError):
            ExtremalService.enumerate_hypertrees(3, 1)


class FamilyKeyTest(SimpleTestCase):
    """𝕋_k(m, Δ, n) keys and their predicted caterpillar"""

    def test_m_star_and_prediction(self):
        key = FamilyKey(3, 8, 3, 3)
        self.assertEqual(key.m_star, 5)
        self.assertEqual(key.predicted_params(), CaterpillarParams(3, 5, 3, 1, 2))
        self.assertEqual(str(key), 'T_3(8,3,3)')

    def test_infeasible_prediction(self):
        self.assertIsNone(FamilyKey(2, 4, 3, 2).predicted_params())
        self.assertIsNone(FamilyKey(3, 3, 4, 2).predicted_params())

    def test_invalid(self):
        for args in ((1, 5, 3, 2), (3, 0, 3, 2), (3, 5, 2, 2), (3, 5, 3, 1)):
            with self.assertRaises(ExtremalError):
                FamilyKey(*args)


class FamilyFilterTest(SimpleTestCase):
    """Maximum degree attained by exactly n vertices"""

    def test_caterpillar_member(self):
        g = caterpillar(3, 5, 3, 1, 2)
        self.assertEqual(ExtremalService.family_filter([g], FamilyKey(3, 8, 3, 3)), [g])
        self.assertEqual(ExtremalService.family_filter([g], FamilyKey(3, 8, 3, 2)), [])

    def test_double_star_family_is_empty(self):
        population = ExtremalService.enumerate_hypertrees(4, 2)
        self.assertEqual(ExtremalService.family_filter(population, FamilyKey(2, 4, 3, 2)), [])

    def test_delta_above_m(self):
        population = ExtremalService.enumerate_hypertrees(3, 3)
        self.assertEqual(ExtremalService.family_filter(population, FamilyKey(3, 3, 4, 2)), [])


class CaterpillarRecognizerTest(SimpleTestCase):
    """Edges with two heavy vertices form a path"""

    def test_caterpillars(self):
        self.assertTrue(ExtremalService.is_caterpillar(caterpillar(3, 5, 3, 1, 2)))
        self.assertTrue(ExtremalService.is_caterpillar(FamilyService.loose_path(4, 3).graph))
        self.assertTrue(ExtremalService.is_caterpillar(FamilyService.hyperstar(4, 3).graph))
        self.assertTrue(ExtremalService.is_caterpillar(Hypergraph(3, ((0, 1, 2),))))

    def test_spider_is_not(self):
        spider = Hypergraph(7, ((0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)))
        self.assertFalse(ExtremalService.is_caterpillar(spider))

    def test_edge_with_three_heavy_vertices(self):
        g = Hypergraph(9, ((0, 1, 2), (0, 3, 4), (1, 5, 6), (2, 7, 8)))
        self.assertFalse(ExtremalService.is_caterpillar(g))

    def test_cycle_is_not(self):
        self.assertFalse(ExtremalService.is_caterpillar(Hypergraph(6, ((0, 1, 3), (1, 2, 4), (0, 2, 5)))))


class ArgmaxTest(SimpleTestCase):
    """Brute-force argmax with a relative tie band"""

    def test_task_matches_closed_form(self):
        rho = compute_rho.delay(Hypergraph(3, ((0, 1, 2),)).to_dict()).get()
        self.assertAlmostEqual(rho, 2.0, places=10)

    def test_singleton(self):
        g = caterpillar(3, 5, 3, 1, 2)
        report = ExtremalService.argmax_rho([g])
        self.assertTrue(report.verdict)
        self.assertEqual(report.argmax, [HypergraphService.canonical_code(g).hex()])
        self.assertIsNone(report.runner_up_rho)
        self.assertTrue(report.edge_degree_ok)

    def test_path_beats_star(self):
        path, star = FamilyService.loose_path(3, 3).graph, FamilyService.hyperstar(3, 3).graph
        report = ExtremalService.argmax_rho([star, path], predicted=path)
        self.assertTrue(report.verdict)
        self.assertLess(report.runner_up_rho, report.max_rho)
        report = ExtremalService.argmax_rho([star, path], predicted=star)
        self.assertFalse(report.verdict)

    def test_tie_is_reported(self):
        g = FamilyService.loose_path(3, 3).graph
        relabeled = Hypergraph(g.vertex_count, tuple(tuple(g.vertex_count - 1 - v for v in e) for e in g.edges))
        report = ExtremalService.argmax_rho([g, relabeled])
        self.assertEqual(len(report.argmax), 2)
        self.assertFalse(report.verdict)

    def test_empty(self):
        with self.assertRaises(ExtremalError):
            ExtremalService.argmax_rho([])


class TheoremTest(SimpleTestCase):
    """The balanced caterpillar is the unique maximizer"""

    def test_small_three_uniform_family(self):
        report = ExtremalService.verify_family(FamilyKey(3, 5, 3, 2))
        self.assertTrue(report.verdict)
        self.assertEqual(report.argmax, [report.predicted])
        self.assertEqual(report.predicted, HypergraphService.canonical_code(caterpillar(3, 3, 3, 1, 1)).hex())
        self.assertTrue(report.edge_degree_ok)

    def test_small_ordinary_tree_family(self):
        report = ExtremalService.verify_family(FamilyKey(2, 6, 3, 2))
        self.assertTrue(report.verdict)
        self.assertEqual(report.population, 11)

    def test_empty_by_prediction(self):
        report = ExtremalService.verify_family(FamilyKey(2, 4, 3, 2))
        self.assertTrue(report.empty)
        self.assertTrue(report.verdict)
        self.assertIsNone(report.predicted)

    def test_caterpillars_only(self):
        report = ExtremalService.verify_caterpillar_theorem(FamilyKey(2, 7, 3, 3))
        self.assertTrue(report.caterpillars_only)
        self.assertTrue(report.verdict)

    def test_rank_caterpillars(self):
        ranked = ExtremalService.rank_caterpillars(3, 5, 3, 3)
        self.assertEqual((ranked[0][0].a, ranked[0][0].b), (1, 2))
        ranked = ExtremalService.rank_caterpillars(3, 6, 3, 4)
        self.assertEqual([params.a for params, _ in ranked], [2, 1, 0])
        ranked = ExtremalService.rank_caterpillars(2, 5, 3, 2)
        self.assertEqual([params.a for params, _ in ranked], [1, 0])

    @tag('slow')
    def test_three_uniform_eight_edges(self):
        report = ExtremalService.verify_family(FamilyKey(3, 8, 3, 3))
        self.assertTrue(report.verdict)
        self.assertEqual(report.predicted, HypergraphService.canonical_code(caterpillar(3, 5, 3, 1, 2)).hex())

    @tag('slow')
    def test_desk_scale_sweep(self):
        for k, top in ((2, 8), (3, 9)):
            for m in range(5, top + 1):
                for n in range(2, (m - 1) // 2 + 1):
                    report = ExtremalService.verify_family(FamilyKey(k, m, 3, n))
                    self.assertTrue(report.verdict, f'k={k}, m={m}, n={n}')
                    self.assertFalse(report.empty)
                    self.assertTrue(report.edge_degree_ok)


class DeltaMonotonicityTest(SimpleTestCase):
    """ρ of the balanced caterpillar falls as Δ grows at fixed m and n"""

    def test_decreasing(self):
        for m, k in ((10, 3), (9, 2)):
            report = ExtremalService.delta_monotonicity(m, k, 2, 4)
            self.assertEqual(report.verdict, Verdict.PASS)
            rhos = [point['rho'] for point in report.data['points']]
            self.assertEqual(len(rhos), 2)
            self.assertGreater(rhos[0], rhos[1])

    def test_single_point_is_vacuous(self):
        report = ExtremalService.delta_monotonicity(10, 3, 2, 3)
        self.assertEqual(report.verdict, Verdict.VACUOUS)

    def test_infeasible_points_skipped(self):
        report = ExtremalService.delta_monotonicity(9, 2, 4, 4)
        self.assertEqual(report.data['skipped'], [4])
        self.assertEqual(report.verdict, Verdict.VACUOUS)

    def test_precondition(self):
        with self.assertRaises(ExtremalError):
            ExtremalService.delta_monotonicity(10, 3, 5, 4)
        with self.assertRaises(ExtremalError):
            ExtremalService.delta_monotonicity(10, 3, 1, 4)


class SerializerTest(SimpleTestCase):
    """JSON-lines rows and CSV summary rows"""

    def test_report(self):
        report = ExtremalService.verify_family(FamilyKey(3, 5, 3, 2))
        data = ExtremalReportSerializer(report).data
        self.assertEqual(data['family'], {'k': 3, 'm': 5, 'delta': 3, 'n': 2, 'm_star': 3})
        self.assertTrue(data['verdict'])
        self.assertFalse(data['empty'])
        self.assertTrue(math.isfinite(data['max_rho']))
        row = ExtremalSummarySerializer(report).data
        self.assertEqual(row['m_star'], 3)
        self.assertEqual(row['population'], report.population)

    def test_family_key_input(self):
        serializer = FamilyKeySerializer(data={'k': 3, 'm': 8, 'delta': 3, 'n': 3})
        self.assertTrue(serializer.is_valid())
        self.assertEqual(serializer.validated_data['key'], FamilyKey(3, 8, 3, 3))
        self.assertFalse(FamilyKeySerializer(data={'k': 3, 'm': 8, 'delta': 2, 'n': 3}).is_valid())
