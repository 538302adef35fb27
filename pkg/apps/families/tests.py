import tempfile
from pathlib import Path

from django.test import SimpleTestCase

from apps.hypercore.hypergraph import Hypergraph
from apps.hypercore.services import HypergraphService

from .exceptions import FamilyParameterError, FamilySpecError
from .serializers import SpineLabeledHypergraphSerializer
from .services import FamilyService
from .specs import build, loads_rooted, parse
from .structures import CaterpillarParams, GcParams, RootedHypergraph


def single_edge(k):
    return RootedHypergraph(Hypergraph(k, (tuple(range(k)),)), 0)


class ConstructorTest(SimpleTestCase):
    """Hyperstars, loose paths and caterpillars"""

    def test_hyperstar(self):
        star = FamilyService.hyperstar(2, 3)
        self.assertEqual(star.graph, Hypergraph(5, ((0, 1, 2), (0, 3, 4))))
        self.assertEqual(star.root, 0)
        self.assertTrue(FamilyService.hyperstar(0, 3).is_trivial)
        with self.assertRaises(FamilyParameterError):
            FamilyService.hyperstar(2, 1)

    def test_loose_path(self):
        path = FamilyService.loose_path(3, 3)
        self.assertEqual(path.graph.edges, ((0, 1, 4), (1, 2, 5), (2, 3, 6)))
        self.assertEqual(path.interior_reps, {1: 4, 2: 5, 3: 6})
        self.assertEqual(path.interior_vertices(2), (5,))
        self.assertEqual(FamilyService.loose_path(0, 3).graph.vertex_count, 1)
        self.assertEqual(FamilyService.loose_path(2, 2).interior_reps, {})

    def test_caterpillar_numbering(self):
        params = CaterpillarParams(3, 5, 3, 1, 2)
        h = FamilyService.caterpillar(params)
        self.assertEqual(h.graph.edges, (
            (0, 1, 6), (1, 2, 7), (2, 3, 8), (3, 4, 9), (4, 5, 10),
            (1, 11, 12), (3, 13, 14), (4, 15, 16),
        ))
        self.assertEqual(h.graph.edge_count, params.edge_count)
        self.assertEqual(h.graph.vertex_count, params.vertex_count)
        self.assertEqual(h.pendant_reps, {1: 11, 3: 13, 4: 15})
        self.assertEqual(h.graph.max_degree, 3)
        self.assertEqual(h.attachment_edges(3), (6,))
        self.assertTrue(HypergraphService.is_hypertree(h.graph))

    def test_caterpillar_parameters(self):
        for args in ((1, 5, 3, 1, 1), (3, 0, 3, 0, 0), (3, 5, 2, 1, 1), (3, 5, 3, -1, 1), (3, 4, 3, 2, 2)):
            with self.assertRaises(FamilyParameterError):
                CaterpillarParams(*args)
        params = CaterpillarParams.balanced(3, 7, 4, 3)
        self.assertEqual((params.a, params.b), (1, 2))
        self.assertEqual(params.mirrored().a, 2)
        self.assertEqual(params.shifted().b, 1)

    def test_non_uniform_path(self):
        h = FamilyService.non_uniform_path([9, 3, 3, 3, 6])
        self.assertEqual(h.graph.edges[0], (0, 1, 6, 7, 8, 9, 10, 11, 12))
        self.assertEqual(h.graph.edges[4], (4, 5, 16, 17, 18, 19))
        self.assertEqual(h.graph.vertex_count, 20)


class ProductTest(SimpleTestCase):
    """Rooted products and two-path attachments"""

    def test_rooted_product_keeps_host_ids(self):
        host = Hypergraph(3, ((0, 1, 2),))
        g = FamilyService.rooted_product(host, [1, 1], [single_edge(3), single_edge(2)])
        self.assertEqual(g.edges, ((0, 1, 2), (1, 3, 4), (1, 5)))
        with self.assertRaises(FamilyParameterError):
            FamilyService.rooted_product(host, [1], [])
        with self.assertRaises(FamilyParameterError):
            FamilyService.rooted_product(host, [5], [single_edge(3)])

    def test_attach_two_paths(self):
        host = Hypergraph(3, ((0, 1, 2),))
        g = FamilyService.attach_two_paths(host, 0, 1, 2, 1)
        self.assertEqual(g.vertex_count, 9)
        self.assertEqual(g.edge_count, 4)
        self.assertTrue(HypergraphService.is_hypertree(g))
        self.assertEqual(FamilyService.attach_two_paths(host, 0, 0, 0, 0), host)

        mixed = Hypergraph(4, ((0, 1, 2), (2, 3)))
        with self.assertRaises(FamilyParameterError):
            FamilyService.attach_two_paths(mixed, 0, 1, 1, 1)
        self.assertEqual(FamilyService.attach_two_paths(mixed, 0, 1, 1, 1, k=3).edge_count, 4)

    def test_limb_with_pendant_attachments(self):
        limb = FamilyService.limb(3, 3, single_edge(3))
        self.assertEqual(limb.graph.edge_count, 5)
        self.assertEqual(limb.root, 0)


class CoreTest(SimpleTestCase):
    """G_c and its cores"""

    def test_assemble_and_decompose(self):
        assembly = FamilyService.assemble_core([single_edge(3), single_edge(3)])
        self.assertEqual(assembly.core.graph.edges, ((0, 1, 2), (0, 3, 4)))
        self.assertEqual(assembly.anchors, (1, 3))

        again = FamilyService.decompose_core(assembly.core)
        self.assertEqual(again.c, 2)
        self.assertEqual(again.anchors, (1, 3))
        self.assertEqual(again.part_maps, ((0, 1, 2), (0, 3, 4)))

    def test_decompose_path_branch(self):
        core = RootedHypergraph(Hypergraph(5, ((0, 1, 3), (1, 2, 4))), 0)
        assembly = FamilyService.decompose_core(core)
        self.assertEqual(assembly.c, 1)
        self.assertEqual(assembly.anchors, (1,))

    def test_assemble_rejects_non_pendant_root(self):
        bad = RootedHypergraph(Hypergraph(5, ((0, 1, 2), (1, 3), (2, 4))), 0)
        with self.assertRaises(FamilyParameterError):
            FamilyService.assemble_core([bad])
        with self.assertRaises(FamilyParameterError):
            FamilyService.assemble_core([FamilyService.hyperstar(2, 3)])

    def test_g_c(self):
        params = GcParams(3, 2, 2, 1, single_edge(3))
        h = FamilyService.g_c(params)
        self.assertEqual(h.graph.edge_count, params.edge_count)
        self.assertEqual(h.graph.edge_count, 7)
        self.assertEqual(h.core_index, 2)
        self.assertEqual([h.graph.degrees[h.u(i)] for i in range(5)], [1, 3, 3, 3, 1])
        with self.assertRaises(FamilyParameterError):
            FamilyService.g_c(GcParams(3, 2, 2, 1, RootedHypergraph(Hypergraph(2, ((0, 1),)), 0)))
        with self.assertRaises(FamilyParameterError):
            GcParams(3, 0, 2, 1, single_edge(3))


class SpineSplitTest(SimpleTestCase):
    """Vertex sets around spine positions"""

    def setUp(self):
        self.h = FamilyService.caterpillar(CaterpillarParams(3, 5, 3, 1, 2))

    def test_split_partitions_vertices(self):
        everything = frozenset(range(self.h.graph.vertex_count))
        for i in range(self.h.length + 1):
            split = FamilyService.spine_split(self.h, i)
            self.assertEqual(split.upper_prime | split.lower_prime | split.attachment, everything)
            self.assertFalse(split.upper_prime & split.lower_prime)

    def test_split_sets(self):
        split = FamilyService.spine_split(self.h, 2)
        self.assertEqual(split.upper, frozenset({0, 1, 2, 6, 7, 11, 12}))
        self.assertEqual(split.attachment, frozenset({2}))
        self.assertIn(16, split.lower)
        self.assertEqual(FamilyService.spine_split(self.h, 0).upper_prime, frozenset())
        with self.assertRaises(FamilyParameterError):
            FamilyService.spine_split(self.h, 6)

    def test_middle(self):
        self.assertEqual(FamilyService.middle(self.h, 1, 3), frozenset({1, 2, 3, 7, 8}))
        with self.assertRaises(FamilyParameterError):
            FamilyService.middle(self.h, 3, 3)


class FamilySpecTest(SimpleTestCase):
    """Family strings"""

    def test_parse(self):
        spec = parse('cat:3,5,3,1,2')
        self.assertEqual(spec.args, {'k': 3, 'mstar': 5, 'delta': 3, 'a': 1, 'b': 2})
        self.assertEqual(build('cat:3,5,3,1,2').graph, FamilyService.caterpillar(CaterpillarParams(3, 5, 3, 1, 2)).graph)
        self.assertEqual(build('star:2,3').graph.edge_count, 2)

    def test_parse_errors(self):
        with self.assertRaises(FamilySpecError) as ctx:
            parse('star:2,x')
        self.assertEqual(ctx.exception.position, 7)
        for text in ('foo:1', 'cat:3,5,3,1', 'path', 'gc:3,2,2,1', 'star:1,2,3', 'path:2,3,core=x'):
            with self.assertRaises(FamilySpecError):
                parse(text)
        with self.assertRaises(FamilyParameterError):
            build('cat:3,5,3,3,2')

    def test_gc_with_core_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'core.txt'
            path.write_text('5\n0 1 2\n0 3 4\nroot 0\n')
            h = build(f'gc:3,2,2,2,core={path}')
        self.assertEqual(h.graph.edge_count, 4 + 2 * 2 + 2)

    def test_loads_rooted_json(self):
        rooted = loads_rooted('{"vertex_count": 3, "edges": [[0, 1, 2]], "root": 2}')
        self.assertEqual(rooted.root, 2)

    def test_serializer_output(self):
        h = FamilyService.caterpillar(CaterpillarParams(3, 5, 3, 1, 2))
        data = SpineLabeledHypergraphSerializer(h).data
        self.assertEqual(data['spine'], [0, 1, 2, 3, 4, 5])
        self.assertEqual(data['pendant_reps'], {'1': 11, '3': 13, '4': 15})
        self.assertEqual(data['attachments']['1'], [1, 11, 12])
