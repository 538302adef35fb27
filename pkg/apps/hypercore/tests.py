import itertools
import random

import networkx as nx
from django.test import SimpleTestCase

from .canonical import permutation_code
from .exceptions import DisconnectedHypergraphError, EdgeMoveError, HypergraphError
from .hypergraph import Hypergraph
from .io import dumps, loads
from .serializers import HypergraphSerializer
from .services import HypergraphService


def incidence_graph(g):
    graph = nx.Graph()
    for v in range(g.vertex_count):
        graph.add_node(('v', v), kind='v')
    for index, edge in enumerate(g.edges):
        graph.add_node(('e', index), kind='e')
        for v in edge:
            graph.add_edge(('v', v), ('e', index))
    return graph


def random_hypertree(rng, m, k):
    """Grow a k-uniform hypertree by gluing each new edge at a random existing vertex."""
    edges = [tuple(range(k))]
    n = k
    for _ in range(m - 1):
        anchor = rng.randrange(n)
        edges.append((anchor,) + tuple(range(n, n + k - 1)))
        n += k - 1
    return Hypergraph(n, tuple(edges))


def relabel(g, rng):
    perm = list(range(g.vertex_count))
    rng.shuffle(perm)
    edges = [tuple(perm[v] for v in edge) for edge in g.edges]
    rng.shuffle(edges)
    return Hypergraph(g.vertex_count, tuple(edges))


class HypergraphModelTest(SimpleTestCase):
    """Validation and structural equality"""

    def test_edges_are_sorted(self):
        g = Hypergraph(4, ((3, 0, 1), (2, 1)))
        self.assertEqual(g.edges, ((0, 1, 3), (1, 2)))

    def test_equality_ignores_edge_order(self):
        self.assertEqual(Hypergraph(4, ((0, 1), (2, 3))), Hypergraph(4, ((3, 2), (1, 0))))
        self.assertNotEqual(Hypergraph(4, ((0, 1),)), Hypergraph(5, ((0, 1),)))

    def test_invalid_inputs_rejected(self):
        with self.assertRaises(HypergraphError):
            Hypergraph(-1, ())
        with self.assertRaises(HypergraphError):
            Hypergraph(3, ((),))
        with self.assertRaises(HypergraphError):
            Hypergraph(3, ((0, 3),))
        with self.assertRaises(HypergraphError):
            Hypergraph(3, ((0, 0, 1),))
        with self.assertRaises(HypergraphError):
            Hypergraph(3, ((0, 1), (1, 0)))
        with self.assertRaises(HypergraphError):
            Hypergraph(3, ((0, 'a'),))

    def test_degrees_and_isolated(self):
        g = Hypergraph(6, ((0, 1, 2), (2, 3, 4)))
        self.assertEqual(g.degrees, (1, 1, 2, 1, 1, 0))
        self.assertEqual(g.max_degree, 2)
        self.assertEqual(g.isolated_vertices, (5,))
        self.assertEqual(g.total_incidence, 6)

    def test_disconnected_error_message(self):
        error = DisconnectedHypergraphError([(0, 1), (2,)])
        self.assertIn('2 components', str(error))
        self.assertEqual(error.components, ((0, 1), (2,)))


class HypergraphServiceTest(SimpleTestCase):
    """Predicates and edits"""

    def setUp(self):
        # 3-uniform loose path of length 3 with a pendant edge at vertex 1
        self.path = Hypergraph(9, ((0, 1, 4), (1, 2, 5), (2, 3, 6), (1, 7, 8)))

    def test_degree(self):
        self.assertEqual(HypergraphService.degree(self.path, 1), 3)
        self.assertEqual(HypergraphService.degree(self.path, 8), 1)
        with self.assertRaises(HypergraphError):
            HypergraphService.degree(self.path, 9)

    def test_uniform_connected_hypertree(self):
        self.assertTrue(HypergraphService.is_k_uniform(self.path, 3))
        self.assertFalse(HypergraphService.is_k_uniform(self.path, 2))
        self.assertTrue(HypergraphService.is_connected(self.path))
        self.assertTrue(HypergraphService.is_hypertree(self.path))

        cycle = Hypergraph(6, ((0, 1, 2), (2, 3, 4), (4, 5, 0)))
        self.assertTrue(HypergraphService.is_connected(cycle))
        self.assertFalse(HypergraphService.is_hypertree(cycle))
        self.assertFalse(HypergraphService.is_connected(Hypergraph(0, ())))

    def test_components_ordered_by_smallest_vertex(self):
        g = Hypergraph(6, ((3, 4), (0, 5)))
        self.assertEqual(HypergraphService.components(g), ((0, 5), (1,), (2,), (3, 4)))
        self.assertEqual(HypergraphService.component_of(g, 4), frozenset({3, 4}))

    def test_pendant_edges(self):
        self.assertEqual(HypergraphService.pendant_center(self.path, 3), 1)
        self.assertIsNone(HypergraphService.pendant_center(self.path, 1))
        self.assertEqual(HypergraphService.pendant_edges_at(self.path, 1), (0, 3))

    def test_delete_edge_keeps_isolated_vertices(self):
        g = HypergraphService.delete_edge(self.path, 2)
        self.assertEqual(g.vertex_count, 9)
        self.assertEqual(g.isolated_vertices, (3, 6))
        self.assertEqual(len(HypergraphService.components(g)), 3)

    def test_weak_delete(self):
        g, remap = HypergraphService.weak_delete(self.path, {1})
        self.assertEqual(g.vertex_count, 8)
        self.assertEqual(remap[2], 1)
        self.assertEqual(g.edge_count, 4)
        self.assertEqual(len(HypergraphService.components(g)), 3)
        with self.assertRaises(HypergraphError):
            HypergraphService.weak_delete(Hypergraph(2, ((0, 1),)), {0, 1})
        with self.assertRaises(HypergraphError):
            HypergraphService.weak_delete(Hypergraph(3, ((0,), (1, 2))), {0})

    def test_move_edges_round_trip(self):
        moved = HypergraphService.move_edges(self.path, 1, 2, [3])
        self.assertIn((2, 7, 8), moved.edges)
        self.assertEqual(moved.degrees[1], 2)
        back = HypergraphService.move_edges(moved, 2, 1, [3])
        self.assertEqual(back, self.path)

    def test_move_edges_rejects_bad_edges(self):
        with self.assertRaises(EdgeMoveError) as ctx:
            HypergraphService.move_edges(self.path, 1, 2, [1, 2])
        self.assertEqual(ctx.exception.offending_edges, (1, 2))
        with self.assertRaises(HypergraphError):
            HypergraphService.move_edges(self.path, 1, 3, [3, 3])

    def test_transfer_vertex(self):
        g = HypergraphService.transfer_vertex(self.path, 5, 1, 0)
        self.assertEqual(g.edges[1], (1, 2))
        self.assertEqual(g.edges[0], (0, 1, 4, 5))
        back = HypergraphService.transfer_vertex(g, 5, 0, 1)
        self.assertEqual(back, self.path)

    def test_transfer_vertex_preconditions(self):
        with self.assertRaises(HypergraphError):
            HypergraphService.transfer_vertex(self.path, 1, 0, 1)
        with self.assertRaises(HypergraphError):
            HypergraphService.transfer_vertex(self.path, 5, 1, 1)
        with self.assertRaises(HypergraphError):
            HypergraphService.transfer_vertex(self.path, 4, 1, 2)
        pair = Hypergraph(3, ((0, 1), (1, 2)))
        with self.assertRaises(HypergraphError):
            HypergraphService.transfer_vertex(pair, 0, 0, 1)


class CanonicalCodeTest(SimpleTestCase):
    """Canonical codes against brute force and networkx"""

    def test_two_classes_for_three_edge_hypertrees(self):
        codes = set()
        path = Hypergraph(7, ((0, 1, 2), (2, 3, 4), (4, 5, 6)))
        star = Hypergraph(7, ((0, 1, 2), (0, 3, 4), (0, 5, 6)))
        rng = random.Random(3)
        for _ in range(30):
            g = random_hypertree(rng, 3, 3)
            codes.add(HypergraphService.canonical_code(g))
        expected = {HypergraphService.canonical_code(path), HypergraphService.canonical_code(star)}
        self.assertEqual(len(expected), 2)
        self.assertLessEqual(codes, expected)

    def test_relabeling_preserves_code(self):
        rng = random.Random(11)
        for _ in range(25):
            g = random_hypertree(rng, rng.randint(1, 6), rng.choice([2, 3, 4]))
            h = relabel(g, rng)
            self.assertEqual(HypergraphService.canonical_code(g), HypergraphService.canonical_code(h))

    def test_agrees_with_permutation_oracle(self):
        rng = random.Random(5)
        graphs = [random_hypertree(rng, rng.randint(1, 3), rng.choice([2, 3])) for _ in range(20)]
        graphs += [
            Hypergraph(6, ((0, 1, 2), (2, 3, 4), (4, 5, 0))),
            Hypergraph(6, ((0, 1, 2), (1, 2, 3), (3, 4, 5))),
            Hypergraph(5, ((0, 1), (2, 3))),
        ]
        for g, h in itertools.combinations(graphs, 2):
            if g.vertex_count > 8 or h.vertex_count > 8:
                continue
            same = permutation_code(g) == permutation_code(h)
            self.assertEqual(HypergraphService.is_isomorphic(g, h), same)

    def test_agrees_with_networkx_on_random_graphs(self):
        rng = random.Random(7)
        for _ in range(30):
            n = rng.randint(4, 7)
            edges = set()
            while len(edges) < rng.randint(2, 5):
                edges.add(tuple(sorted(rng.sample(range(n), rng.randint(2, 3)))))
            g = Hypergraph(n, tuple(edges))
            h = relabel(g, rng)
            other = Hypergraph(n, tuple(sorted(edges))[:-1] + ((0, n - 1),)) if (0, n - 1) not in edges else g
            self.assertEqual(HypergraphService.canonical_code(g), HypergraphService.canonical_code(h))
            expected = nx.is_isomorphic(
                incidence_graph(g), incidence_graph(other), node_match=lambda a, b: a['kind'] == b['kind'],
            )
            self.assertEqual(HypergraphService.is_isomorphic(g, other), expected)

    def test_permutation_oracle_refuses_large_graphs(self):
        with self.assertRaises(HypergraphError):
            permutation_code(Hypergraph(9, ((0, 1),)))


class HypergraphIOTest(SimpleTestCase):
    """File formats"""

    def test_plain_text(self):
        text = '# a path\n5\n0 1 2\n2 3 4  # second edge\n'
        g = loads(text)
        self.assertEqual(g, Hypergraph(5, ((0, 1, 2), (2, 3, 4))))
        self.assertEqual(loads(dumps(g)), g)

    def test_json_is_canonical(self):
        g = Hypergraph(4, ((3, 2), (1, 0)))
        self.assertEqual(dumps(g), '{"edges": [[0, 1], [2, 3]], "vertex_count": 4}\n')

    def test_invalid_documents(self):
        for text in ('', '{"vertex_count": 2, "edges": [[0, 2]]}', '3\n0 x\n', '[1, 2]', '{"edges": '):
            with self.assertRaises(HypergraphError):
                loads(text)

    def test_serializer_errors(self):
        serializer = HypergraphSerializer(data={'vertex_count': 2, 'edges': [[]]})
        self.assertFalse(serializer.is_valid())
        self.assertIn('edges', serializer.errors)
