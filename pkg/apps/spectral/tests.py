import math

import numpy as np
from django.test import SimpleTestCase, override_settings

from apps.families.services import FamilyService
from apps.families.structures import CaterpillarParams, GcParams, RootedHypergraph
from apps.hypercore.exceptions import DisconnectedHypergraphError
from apps.hypercore.hypergraph import Hypergraph

from .exceptions import PerronConvergenceError, SpectralError
from .identities import IdentityService
from .reports import CheckReport, SignRule, Verdict
from .serializers import CheckReportSerializer, SpectralResultSerializer
from .services import SpectralService
from .structures import Accumulators, StarPair


def caterpillar(*args):
    return FamilyService.caterpillar(CaterpillarParams(*args))


class DistanceMatrixTest(SimpleTestCase):
    """Distances on the co-edge relation"""

    def test_single_edge(self):
        dm = SpectralService.distance_matrix(Hypergraph(3, ((0, 1, 2),)))
        np.testing.assert_array_equal(dm.d, np.ones((3, 3)) - np.eye(3))

    def test_ordinary_path(self):
        dm = SpectralService.distance_matrix(FamilyService.loose_path(2, 2).graph)
        np.testing.assert_array_equal(dm.d, [[0, 1, 2], [1, 0, 1], [2, 1, 0]])

    def test_hyperstar(self):
        dm = SpectralService.distance_matrix(FamilyService.hyperstar(2, 3).graph)
        self.assertEqual(dm.distance(1, 3), 2)
        self.assertEqual(dm.distance(1, 2), 1)
        self.assertEqual(dm.distance(0, 4), 1)
        np.testing.assert_array_equal(dm.d, dm.d.T)

    def test_disconnected(self):
        with self.assertRaises(DisconnectedHypergraphError) as ctx:
            SpectralService.distance_matrix(Hypergraph(4, ((0, 1), (2, 3))))
        self.assertEqual(len(ctx.exception.components), 2)


class PerronTest(SimpleTestCase):
    """Power iteration against closed forms and numpy"""

    def test_closed_forms(self):
        cases = [
            (Hypergraph(3, ((0, 1, 2),)), 2.0),
            (FamilyService.loose_path(2, 2).graph, 1 + math.sqrt(3)),
            (FamilyService.hyperstar(2, 3).graph, (5 + math.sqrt(41)) / 2),
        ]
        for g, expected in cases:
            _, result = SpectralService.analyze(g)
            self.assertAlmostEqual(result.rho, expected, places=10)
            self.assertAlmostEqual(float(np.linalg.norm(result.x)), 1.0, places=12)
            self.assertTrue(np.all(result.x > 0))

    def test_single_edge_vector(self):
        _, result = SpectralService.analyze(Hypergraph(3, ((0, 1, 2),)))
        np.testing.assert_allclose(result.x, np.full(3, 1 / math.sqrt(3)))

    def test_agrees_with_eigvalsh(self):
        for h in (caterpillar(3, 5, 3, 1, 2), caterpillar(2, 6, 4, 1, 1), FamilyService.non_uniform_path([9, 3, 3, 3, 6])):
            dm, result = SpectralService.analyze(h.graph)
            expected = np.linalg.eigvalsh(dm.d.astype(float))[-1]
            self.assertAlmostEqual(result.rho, expected, places=9)

    def test_caterpillar_value(self):
        self.assertAlmostEqual(SpectralService.spectral_radius(caterpillar(3, 5, 3, 1, 2).graph), 45.3266817036, places=8)

    def test_two_vertices(self):
        _, result = SpectralService.analyze(Hypergraph(2, ((0, 1),)))
        self.assertAlmostEqual(result.rho, 1.0, places=12)

    def test_non_convergence_carries_last_iterate(self):
        dm = SpectralService.distance_matrix(caterpillar(3, 5, 3, 1, 2).graph)
        with self.assertRaises(PerronConvergenceError) as ctx:
            SpectralService.perron(dm, max_iter=3)
        self.assertFalse(ctx.exception.result.converged)
        report = IdentityService.check_eigenequation(dm, ctx.exception.result)
        self.assertEqual(report.verdict, Verdict.FAIL)

    @override_settings(SPECTRAL_MAX_ITER=2)
    def test_iteration_cap_from_settings(self):
        with self.assertRaises(PerronConvergenceError):
            SpectralService.analyze(caterpillar(3, 5, 3, 1, 2).graph)

    def test_trivial_graph_rejected(self):
        with self.assertRaises(SpectralError):
            SpectralService.analyze(Hypergraph(1, ()))


class RayleighTest(SimpleTestCase):
    """Rayleigh quotients and their differences"""

    def setUp(self):
        self.dm, self.result = SpectralService.analyze(caterpillar(3, 5, 3, 1, 2).graph)

    def test_perron_vector_attains_rho(self):
        self.assertAlmostEqual(SpectralService.rayleigh(self.dm, self.result.x), self.result.rho, places=9)

    def test_non_unit_rejected(self):
        with self.assertRaises(SpectralError):
            SpectralService.rayleigh(self.dm, np.ones(self.dm.n))

    def test_difference(self):
        self.assertEqual(SpectralService.rayleigh_difference(self.result.x, self.dm, self.dm), 0.0)
        other = SpectralService.distance_matrix(Hypergraph(3, ((0, 1, 2),)))
        with self.assertRaises(SpectralError):
            SpectralService.rayleigh_difference(self.result.x, self.dm, other)

    def test_bound_on_random_vectors(self):
        report = IdentityService.check_rayleigh_bound(self.dm, self.result)
        self.assertEqual(report.verdict, Verdict.PASS)
        self.assertEqual(report.data['count'], 101)
        self.assertGreater(report.data['smallest_gap'], 0)


class AccumulatorTest(SimpleTestCase):
    """σ and W sums"""

    def test_sums(self):
        dm, result = SpectralService.analyze(FamilyService.loose_path(3, 3).graph)
        acc = Accumulators(dm, result.x)
        everything = set(range(dm.n))
        self.assertAlmostEqual(acc.sigma(everything), result.total(), places=12)
        self.assertAlmostEqual(acc.W(everything, 2), result.rho * result.x[2], places=9)
        self.assertEqual(acc.W0({0, 1}, 2), 3.0)
        self.assertEqual(acc.sigma(set()), 0.0)
        self.assertAlmostEqual(acc.WD(everything, {1}, {1}), 0.0)
        self.assertAlmostEqual(acc.W_between({0}, {1, 2}), result.x[0] * 3)


class IdentityTest(SimpleTestCase):
    """Eigen-identities on families"""

    def assertPasses(self, report):
        self.assertEqual(report.verdict, Verdict.PASS, msg=CheckReportSerializer(report).data)

    def test_eigenequation(self):
        dm, result = SpectralService.analyze(caterpillar(3, 5, 3, 1, 2).graph)
        self.assertPasses(IdentityService.check_eigenequation(dm, result, tol=1e-10))

    def test_pendant_identity(self):
        for g in (FamilyService.hyperstar(2, 3).graph, Hypergraph(4, ((0, 1, 2, 3),)), FamilyService.loose_path(3, 3).graph):
            dm, result = SpectralService.analyze(g)
            self.assertPasses(IdentityService.check_pendant_identity(dm, result))

    def test_sign_identity_symmetric(self):
        h = caterpillar(3, 6, 3, 1, 1)
        dm, result = SpectralService.analyze(h.graph)
        report = IdentityService.check_sign_identity(dm, result, IdentityService.star_pair(h.graph, 1, 5))
        self.assertPasses(report)
        self.assertEqual(report.data['sign'], 0)

    def test_sign_identity_asymmetric(self):
        h = caterpillar(3, 7, 3, 0, 2)
        dm, result = SpectralService.analyze(h.graph)
        pair = IdentityService.attached_star_pair(h, 5, 6)
        report = IdentityService.check_sign_identity(dm, result, pair)
        self.assertPasses(report)
        self.assertNotEqual(report.data['sign'], 0)

    def test_sign_identity_rejects_unequal_stars(self):
        h = caterpillar(3, 6, 3, 1, 1)
        dm, result = SpectralService.analyze(h.graph)
        with self.assertRaises(SpectralError):
            IdentityService.check_sign_identity(dm, result, StarPair(1, (5,), 5, ()))

    def test_spine_identities(self):
        core = RootedHypergraph(FamilyService.loose_path(2, 3).graph, 0)
        for h in (
            FamilyService.loose_path(4, 3),
            caterpillar(3, 5, 3, 1, 2),
            caterpillar(4, 6, 4, 1, 2),
            FamilyService.non_uniform_path([9, 3, 3, 3, 6]),
            FamilyService.g_c(GcParams(3, 3, 2, 1, core)),
        ):
            dm, result = SpectralService.analyze(h.graph)
            self.assertPasses(IdentityService.check_spine_identities(h, dm, result))

    def test_symmetric_central_difference(self):
        h = caterpillar(3, 4, 3, 1, 1)
        dm, result = SpectralService.analyze(h.graph)
        self.assertAlmostEqual(float(result.x[h.u(1)] - result.x[h.u(3)]), 0.0, places=11)

    def test_spine_identities_need_interior_vertices(self):
        h = FamilyService.loose_path(3, 2)
        dm, result = SpectralService.analyze(h.graph)
        with self.assertRaises(SpectralError):
            IdentityService.check_spine_identities(h, dm, result)

    def test_pendant_ordering_and_row_sums(self):
        dm, result = SpectralService.analyze(caterpillar(3, 5, 3, 1, 2).graph)
        self.assertPasses(IdentityService.check_pendant_ordering(dm, result))
        self.assertPasses(IdentityService.check_row_sum_bounds(dm, result))

    def test_automorphism_invariance(self):
        h = caterpillar(3, 4, 3, 1, 1)
        dm, result = SpectralService.analyze(h.graph)
        permutation = IdentityService.spine_reversal(h)
        self.assertPasses(IdentityService.check_automorphism_invariance(dm, result, permutation))
        with self.assertRaises(SpectralError):
            IdentityService.spine_reversal(caterpillar(3, 5, 3, 1, 2))
        with self.assertRaises(SpectralError):
            IdentityService.check_automorphism_invariance(dm, result, [1, 0] + list(range(2, dm.n)))

    def test_check_all(self):
        h = caterpillar(3, 5, 3, 1, 2)
        dm, result = SpectralService.analyze(h.graph)
        report = IdentityService.check_all(h.graph, dm, result, h)
        self.assertPasses(report)
        self.assertEqual(len(report.checks), 6)


class ReportTest(SimpleTestCase):
    """Verdict composition and serialization"""

    def test_combine(self):
        ok = CheckReport('a', Verdict.PASS)
        vacuous = CheckReport('b', Verdict.VACUOUS)
        bad = CheckReport('c', Verdict.FAIL, 1.0)
        self.assertEqual(CheckReport.combine('x', [ok, vacuous]).verdict, Verdict.PASS)
        self.assertEqual(CheckReport.combine('x', [vacuous]).verdict, Verdict.VACUOUS)
        self.assertEqual(CheckReport.combine('x', [ok, bad]).verdict, Verdict.FAIL)
        self.assertEqual(CheckReport.combine('x', [ok, bad]).max_residual, 1.0)

    def test_sign_rule(self):
        rule = SignRule(scale=1.0, gap=1e-9, zero_band=1e-11)
        self.assertEqual(rule.sign(1e-6), 1)
        self.assertEqual(rule.sign(-1e-6), -1)
        self.assertEqual(rule.sign(1e-13), 0)
        self.assertIsNone(rule.sign(1e-10))
        self.assertTrue(rule.increasing([0.0, 1.0, 2.0]))
        self.assertFalse(rule.increasing([0.0, 1.0, 1.0]))

    def test_serializers(self):
        _, result = SpectralService.analyze(Hypergraph(3, ((0, 1, 2),)))
        data = SpectralResultSerializer(result).data
        self.assertAlmostEqual(data['rho'], 2.0)
        self.assertEqual(len(data['x']), 3)

        nested = CheckReport.combine('outer', [CheckReport('inner', Verdict.PASS, 1e-14)])
        data = CheckReportSerializer(nested).data
        self.assertEqual(data['verdict'], 'pass')
        self.assertEqual(data['checks'][0]['name'], 'inner')
