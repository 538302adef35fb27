from django.test import SimpleTestCase

from apps.families.services import FamilyService
from apps.families.structures import CaterpillarParams, GcParams, RootedHypergraph
from apps.hypercore.hypergraph import Hypergraph
from apps.hypercore.services import HypergraphService
from apps.spectral.reports import Verdict

from . import counterexamples
from .exceptions import GraftPreconditionError
from .serializers import GraftOutcomeSerializer
from .services import GraftService
from .verifiers import GraftVerifier


def single_edge(k=3):
    return RootedHypergraph(Hypergraph(k, (tuple(range(k)),)), 0)


def path_core(length=2, k=3):
    return RootedHypergraph(FamilyService.loose_path(length, k).graph, 0)


def two_part_core(first):
    return FamilyService.assemble_core([first, single_edge()]).core


class PathShiftTest(SimpleTestCase):
    """Pendant paths at one vertex and across a bridging edge"""

    def assertIncrease(self, outcome):
        self.assertTrue(outcome.holds(), msg=GraftOutcomeSerializer(outcome).data)
        self.assertEqual(outcome.report().verdict, Verdict.PASS)

    def test_graft1(self):
        host = Hypergraph(3, ((0, 1, 2),))
        for s, t in ((1, 1), (2, 1), (2, 2), (3, 2)):
            self.assertIncrease(GraftService.graft_path_shift(host, 0, s, t))

    def test_graft1_preconditions(self):
        host = Hypergraph(3, ((0, 1, 2),))
        with self.assertRaises(GraftPreconditionError):
            GraftService.graft_path_shift(host, 0, 1, 2)
        with self.assertRaises(GraftPreconditionError):
            GraftService.graft_path_shift(host, 0, 1, 0)
        with self.assertRaises(GraftPreconditionError):
            GraftService.graft_path_shift(Hypergraph(1, ()), 0, 1, 1)

    def test_graft2(self):
        host = FamilyService.loose_path(1, 3)
        for s, t in ((1, 1), (2, 1), (2, 2)):
            outcome = GraftService.graft_two_vertex_shift(host, 0, 1, s, t)
            self.assertIncrease(outcome)
            self.assertEqual(outcome.params, {'u': 0, 'v': 1, 's': s, 't': t})

    def test_graft2_preconditions(self):
        path = FamilyService.loose_path(2, 3).graph
        with self.assertRaises(GraftPreconditionError):
            GraftService.graft_two_vertex_shift(path, 0, 4, 1, 1)
        with self.assertRaises(GraftPreconditionError):
            GraftService.graft_two_vertex_shift(path, 0, 1, 1, 1)

    def test_bridge_component_count(self):
        looped = Hypergraph(5, ((0, 1, 2, 3), (2, 4), (3, 4)))
        with self.assertRaises(GraftPreconditionError) as ctx:
            GraftService.graft_two_vertex_shift(looped, 0, 1, 1, 1)
        self.assertIn('components', str(ctx.exception))
        self.assertEqual(GraftService.bridge_edge(FamilyService.loose_path(2, 3).graph, 0, 3), 0)


class StarShiftTest(SimpleTestCase):
    """Moving a star towards the middle of a caterpillar"""

    def test_increase_and_target(self):
        for args in ((3, 5, 3, 0, 3), (3, 6, 3, 0, 2), (4, 7, 4, 1, 3), (2, 6, 3, 0, 4)):
            outcome = GraftService.star_shift(CaterpillarParams(*args))
            self.assertTrue(outcome.holds(), msg=args)
            self.assertTrue(outcome.expected_match, msg=args)
            self.assertEqual(outcome.report().verdict, Verdict.PASS)

    def test_degree_census_kept(self):
        outcome = GraftService.star_shift(CaterpillarParams(3, 6, 4, 0, 3))
        self.assertEqual(sorted(outcome.before.degrees), sorted(outcome.after.degrees))

    def test_preconditions(self):
        with self.assertRaises(GraftPreconditionError):
            GraftService.star_shift(CaterpillarParams(3, 6, 3, 1, 1))
        with self.assertRaises(GraftPreconditionError):
            GraftService.star_shift(CaterpillarParams(3, 4, 3, 0, 3))

    def test_full_spine_pair_is_isomorphic(self):
        before = FamilyService.caterpillar(CaterpillarParams(3, 4, 3, 0, 3)).graph
        after = FamilyService.caterpillar(CaterpillarParams(3, 4, 3, 1, 2)).graph
        self.assertTrue(HypergraphService.is_isomorphic(before, after))
        with self.assertRaises(GraftPreconditionError):
            GraftService.normalize_caterpillar(CaterpillarParams(3, 4, 3, 0, 3))

    def test_normalization(self):
        for m_star, n in ((6, 4), (7, 5)):
            outcomes, final = GraftService.normalize_caterpillar(CaterpillarParams(3, m_star, 3, 0, n))
            self.assertEqual(len(outcomes), n // 2)
            self.assertEqual((final.a, final.b), (n // 2, n - n // 2))
            self.assertTrue(all(outcome.holds() for outcome in outcomes))

        outcomes, final = GraftService.normalize_caterpillar(CaterpillarParams(3, 6, 3, 4, 0))
        self.assertEqual(len(outcomes), 2)
        self.assertEqual((final.a, final.b), (2, 2))

        outcomes, final = GraftService.normalize_caterpillar(CaterpillarParams(3, 6, 3, 2, 1))
        self.assertEqual(outcomes, [])


class CoreShiftTest(SimpleTestCase):
    """G_c(s, t) → G_c(s+1, t−1) in the three proven configurations"""

    def assertCase(self, params, case):
        outcome = GraftService.gc_shift(params)
        self.assertEqual(outcome.case, case)
        self.assertTrue(outcome.expected_match)
        self.assertTrue(outcome.holds(), msg=GraftOutcomeSerializer(outcome).data)
        self.assertEqual(outcome.report().verdict, Verdict.PASS)
        return outcome

    def test_single_branch(self):
        self.assertCase(GcParams(3, 2, 2, 1, path_core()), 'i')
        self.assertCase(GcParams(3, 3, 2, 1, path_core()), 'i')

    def test_path_branch(self):
        outcome = self.assertCase(GcParams(3, 2, 2, 2, two_part_core(path_core())), 'ii')
        moved = [i for i, (a, b) in enumerate(zip(outcome.before.edges, outcome.after.edges)) if a != b]
        self.assertEqual(len(moved), 1)

    def test_pendant_heavy_branch(self):
        branch = RootedHypergraph(Hypergraph(7, ((0, 1, 2), (1, 3, 4), (1, 5, 6))), 0)
        self.assertCase(GcParams(3, 2, 2, 2, two_part_core(branch)), 'iii')

    def test_preconditions(self):
        with self.assertRaises(GraftPreconditionError):
            GraftService.gc_shift(GcParams(3, 2, 1, 1, path_core()))
        with self.assertRaises(GraftPreconditionError):
            GraftService.gc_shift(GcParams(3, 2, 2, 2, path_core()))
        star = FamilyService.hyperstar(2, 3)
        with self.assertRaises(GraftPreconditionError):
            GraftService.gc_shift(GcParams(3, 2, 2, 2, star))
        two_paths = FamilyService.assemble_core([path_core(), path_core()]).core
        with self.assertRaises(GraftPreconditionError) as ctx:
            GraftService.gc_shift(GcParams(3, 2, 2, 2, two_paths))
        self.assertIn('none of the proven configurations', str(ctx.exception))


class FactsTest(SimpleTestCase):
    """Perron-component chains on caterpillars"""

    def test_chains_hold(self):
        for args in ((3, 8, 3, 0, 2), (3, 9, 3, 1, 3), (4, 7, 4, 0, 3)):
            report = GraftVerifier.verify_facts(CaterpillarParams(*args))
            self.assertEqual(report.verdict, Verdict.PASS, msg=args)
            self.assertEqual([check.name for check in report.checks], ['fact1', 'fact2', 'fact3'])

    def test_u_chains_only_for_graphs(self):
        report = GraftVerifier.verify_facts(CaterpillarParams(2, 8, 3, 0, 2))
        self.assertEqual(report.verdict, Verdict.PASS)
        self.assertNotIn('w_chain', report.checks[0].data)

    def test_precondition(self):
        with self.assertRaises(GraftPreconditionError):
            GraftVerifier.verify_facts(CaterpillarParams(3, 6, 3, 1, 1))


class SignChainTest(SimpleTestCase):
    """Common-sign and monotone difference chains"""

    def setUp(self):
        self.h = FamilyService.caterpillar(CaterpillarParams(3, 9, 3, 1, 3))

    def test_chain_from_the_middle(self):
        self.assertEqual(GraftVerifier.verify_sign_chain(self.h, 5, 4, 0).verdict, Verdict.PASS)
        self.assertEqual(GraftVerifier.verify_sign_chain(self.h, 5, 4, 0, 'ncor1').verdict, Verdict.PASS)
        report = GraftVerifier.verify_sign_chain(self.h, 5, 4, 0, 'ncor2')
        self.assertEqual(report.verdict, Verdict.VACUOUS)
        self.assertEqual(report.data['outcome'], 'hypothesis-vacuous')

    def test_symmetric_instance(self):
        report = GraftVerifier.verify_sign_chain(FamilyService.loose_path(3, 3), 2, 1, 0)
        self.assertEqual(report.verdict, Verdict.VACUOUS)
        self.assertEqual(report.data['outcome'], 'vacuous-zero')

    def test_preconditions(self):
        with self.assertRaises(GraftPreconditionError):
            GraftVerifier.verify_sign_chain(self.h, 7, 4, 0)
        with self.assertRaises(GraftPreconditionError):
            GraftVerifier.verify_sign_chain(self.h, 5, 4, 4)
        with self.assertRaises(GraftPreconditionError):
            GraftVerifier.verify_sign_chain(self.h, 5, 4, 0, 'lem9')
        with self.assertRaises(GraftPreconditionError):
            GraftVerifier.verify_sign_chain(FamilyService.loose_path(5, 2), 3, 2, 0)

    def test_core_balance(self):
        for s, t in ((3, 2), (2, 2), (4, 3)):
            report = GraftVerifier.verify_core_balance(GcParams(3, s, t, 1, path_core()))
            self.assertEqual(report.verdict, Verdict.PASS, msg=(s, t))
        with self.assertRaises(GraftPreconditionError):
            GraftVerifier.verify_core_balance(GcParams(3, 3, 1, 1, path_core()))


class EdgeDegreeTest(SimpleTestCase):
    """Per-edge census of vertices of degree at least 2"""

    def test_census(self):
        report = GraftVerifier.verify_edge_degree_bound(
            FamilyService.caterpillar(CaterpillarParams(3, 5, 3, 1, 2)).graph,
        )
        self.assertEqual(report.data['max_heavy'], 2)
        self.assertEqual(report.verdict, Verdict.PASS)
        self.assertEqual(GraftVerifier.verify_edge_degree_bound(FamilyService.hyperstar(3, 3).graph).data['max_heavy'], 1)

    def test_flags_crowded_edge(self):
        crowded = Hypergraph(9, ((0, 1, 2), (0, 3, 4), (1, 5, 6), (2, 7, 8)))
        report = GraftVerifier.verify_edge_degree_bound(crowded)
        self.assertEqual(report.data['max_heavy'], 3)
        self.assertEqual(report.data['offending'], [0])
        self.assertEqual(report.verdict, Verdict.FAIL)


class AttachmentTest(SimpleTestCase):
    """Moving and swapping rooted graphs between host vertices"""

    def test_move_identities(self):
        host = FamilyService.loose_path(3, 3).graph
        for u1, u2 in ((0, 2), (1, 3), (4, 1)):
            report = GraftVerifier.verify_attachment_move(host, u1, u2, FamilyService.hyperstar(1, 3))
            self.assertEqual(report.verdict, Verdict.PASS, msg=(u1, u2))

    def test_swap_identity(self):
        host = FamilyService.loose_path(3, 3).graph
        report = GraftVerifier.verify_attachment_swap(
            host, 1, FamilyService.hyperstar(2, 3), 3, FamilyService.hyperstar(1, 3),
        )
        self.assertEqual(report.verdict, Verdict.PASS)

    def test_lemma_adjacent_leaves(self):
        report = GraftVerifier.verify_attachment_lemma(
            Hypergraph(3, ((0, 1, 2),)), 0, 1, single_edge(), single_edge(),
        )
        self.assertEqual(report.verdict, Verdict.PASS)
        self.assertTrue(report.data['condition_1'])

    def test_lemma_vacuous(self):
        report = GraftVerifier.verify_attachment_lemma(
            FamilyService.loose_path(4, 3).graph, 2, 1, single_edge(), single_edge(),
        )
        self.assertEqual(report.verdict, Verdict.VACUOUS)

    def test_preconditions(self):
        host = FamilyService.loose_path(2, 3).graph
        with self.assertRaises(GraftPreconditionError):
            GraftVerifier.verify_attachment_lemma(host, 0, 0, single_edge(), single_edge())
        with self.assertRaises(GraftPreconditionError):
            GraftVerifier.verify_attachment_move(host, 0, 2, RootedHypergraph.trivial())


class CounterexampleTest(SimpleTestCase):
    """Non-uniform constructions"""

    def test_bridge(self):
        example = counterexamples.nonuniform_bridge()
        report = counterexamples.evaluate(example)
        self.assertEqual(report.data['outcome'], counterexamples.CONFIRMED)
        self.assertAlmostEqual(report.data['rho_before'], 53.0366652825, places=6)
        self.assertAlmostEqual(report.data['rho_after'], 46.9072715140, places=6)

    def test_vertex_transfer(self):
        example = counterexamples.vertex_transfer()
        self.assertEqual(sorted(len(e) for e in example.after.edges)[:2], [2, 3])
        report = counterexamples.evaluate(example)
        self.assertEqual(report.data['outcome'], counterexamples.CONFIRMED)
        self.assertAlmostEqual(report.data['rho_before'], 45.3266817036, places=6)
        self.assertAlmostEqual(report.data['rho_after'], 46.3144866274, places=6)

    def test_value_mismatch(self):
        report = counterexamples.evaluate(counterexamples.vertex_transfer(), tolerance=1e-6)
        self.assertEqual(report.data['outcome'], counterexamples.VALUE_MISMATCH)
        self.assertEqual(report.verdict, Verdict.FAIL)

    def test_all(self):
        self.assertEqual(counterexamples.evaluate_all().verdict, Verdict.PASS)


class SerializerTest(SimpleTestCase):
    def test_outcome(self):
        outcome = GraftService.star_shift(CaterpillarParams(3, 5, 3, 0, 3))
        data = GraftOutcomeSerializer(outcome).data
        self.assertTrue(data['holds'])
        self.assertEqual(data['observed_direction'], 'increase')
        self.assertNotIn('before', data)
        data = GraftOutcomeSerializer(outcome, context={'include_graphs': True}).data
        self.assertEqual(data['after']['vertex_count'], outcome.after.vertex_count)
