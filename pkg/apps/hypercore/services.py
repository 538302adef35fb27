import logging

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .canonical import canonical_code
from .exceptions import EdgeMoveError, HypergraphError
from .hypergraph import Hypergraph

logger = logging.getLogger(__name__)


class HypergraphService:
    """Structural predicates and edit operations on hypergraphs"""

    @staticmethod
    def check_vertex(g, v):
        if isinstance(v, bool) or not isinstance(v, (int, np.integer)) or not 0 <= v < g.vertex_count:
            raise HypergraphError(f'Vertex {v!r} out of range for {g.vertex_count} vertices')
        return int(v)

    @staticmethod
    def check_edge_index(g, index):
        if isinstance(index, bool) or not isinstance(index, (int, np.integer)) or not 0 <= index < g.edge_count:
            raise HypergraphError(f'Edge index {index!r} out of range for {g.edge_count} edges')
        return int(index)

    @classmethod
    def degree(cls, g, v):
        return g.degrees[cls.check_vertex(g, v)]

    @staticmethod
    def is_k_uniform(g, k):
        return all(len(edge) == k for edge in g.edges)

    @staticmethod
    def components(g):
        """Vertex sets of the connected components, ordered by smallest vertex."""
        n = g.vertex_count
        if n == 0:
            return ()
        rows, cols = [], []
        for index, edge in enumerate(g.edges):
            for v in edge:
                rows.append(v)
                cols.append(n + index)
        size = n + g.edge_count
        incidence = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(size, size))
        _, labels = connected_components(incidence, directed=False)

        groups = {}
        for v in range(n):
            groups.setdefault(int(labels[v]), []).append(v)
        return tuple(sorted((tuple(group) for group in groups.values()), key=lambda c: c[0]))

    @classmethod
    def component_labels(cls, g):
        labels = [0] * g.vertex_count
        for label, component in enumerate(cls.components(g)):
            for v in component:
                labels[v] = label
        return tuple(labels)

    @classmethod
    def component_of(cls, g, v):
        cls.check_vertex(g, v)
        for component in cls.components(g):
            if v in component:
                return frozenset(component)
        raise HypergraphError(f'Vertex {v} belongs to no component')

    @classmethod
    def is_connected(cls, g):
        return g.vertex_count > 0 and len(cls.components(g)) == 1

    @classmethod
    def is_hypertree(cls, g):
        if not cls.is_connected(g):
            return False
        return sum(len(edge) - 1 for edge in g.edges) == g.vertex_count - 1

    @staticmethod
    def pendant_center(g, index):
        """The unique vertex of degree > 1 in edge ``index``, or None if the edge is not pendant."""
        heavy = [v for v in g.edges[index] if g.degrees[v] > 1]
        return heavy[0] if len(heavy) == 1 else None

    @classmethod
    def pendant_edges_at(cls, g, v):
        return tuple(index for index in g.incidence[v] if cls.pendant_center(g, index) == v)

    @classmethod
    def weak_delete(cls, g, u_set):
        """Remove ``u_set`` from the vertex set and from every edge; returns (graph, remap)."""
        removed = frozenset(cls.check_vertex(g, v) for v in u_set)
        if len(removed) == g.vertex_count:
            raise HypergraphError('Weak deletion of every vertex leaves no hypergraph')

        remap = {}
        for v in range(g.vertex_count):
            if v not in removed:
                remap[v] = len(remap)
        edges = []
        for index, edge in enumerate(g.edges):
            kept = [remap[v] for v in edge if v not in removed]
            if not kept:
                raise HypergraphError(f'Weak deletion empties edge {index}: {list(edge)}')
            edges.append(kept)
        return Hypergraph(len(remap), tuple(edges)), remap

    @classmethod
    def delete_edge(cls, g, index):
        """Drop one edge and keep every vertex, isolated ones included."""
        index = cls.check_edge_index(g, index)
        result = Hypergraph(g.vertex_count, g.edges[:index] + g.edges[index + 1:])
        if result.isolated_vertices:
            logger.debug(f'Deleting edge {index} isolates vertices {list(result.isolated_vertices)}')
        return result

    @classmethod
    def move_edges(cls, g, from_v, to_v, edge_indices):
        """Replace ``from_v`` by ``to_v`` in each selected edge."""
        from_v = cls.check_vertex(g, from_v)
        to_v = cls.check_vertex(g, to_v)
        indices = [cls.check_edge_index(g, index) for index in edge_indices]
        if len(set(indices)) != len(indices):
            raise HypergraphError(f'Edge indices repeat: {indices}')

        offending = [i for i in indices if from_v not in g.edges[i] or to_v in g.edges[i]]
        if offending:
            raise EdgeMoveError(
                f'Cannot move edges {offending} from {from_v} to {to_v}: '
                f'each must contain {from_v} and not {to_v}',
                offending,
            )

        edges = list(g.edges)
        for i in indices:
            edges[i] = tuple(v for v in edges[i] if v != from_v) + (to_v,)
        return Hypergraph(g.vertex_count, tuple(edges))

    @classmethod
    def transfer_vertex(cls, g, v, from_edge, to_edge):
        """Move a degree-1 vertex out of ``from_edge`` into ``to_edge``."""
        v = cls.check_vertex(g, v)
        from_edge = cls.check_edge_index(g, from_edge)
        to_edge = cls.check_edge_index(g, to_edge)
        source, target = g.edges[from_edge], g.edges[to_edge]

        if from_edge == to_edge:
            raise HypergraphError('Source and target edge coincide')
        if v not in source:
            raise HypergraphError(f'Vertex {v} is not in edge {from_edge}')
        if g.degrees[v] != 1:
            raise HypergraphError(f'Vertex {v} has degree {g.degrees[v]}, expected 1')
        if v in target:
            raise HypergraphError(f'Vertex {v} already lies in edge {to_edge}')
        if len(source) < 3:
            raise HypergraphError(
                f'Edge {from_edge} has {len(source)} vertices; it must keep at least 2 after the transfer'
            )

        edges = list(g.edges)
        edges[from_edge] = tuple(u for u in source if u != v)
        edges[to_edge] = target + (v,)
        return Hypergraph(g.vertex_count, tuple(edges))

    @classmethod
    def canonical_code(cls, g):
        return canonical_code(g, cls.components(g))

    @classmethod
    def is_isomorphic(cls, g1, g2):
        if g1.vertex_count != g2.vertex_count or g1.edge_count != g2.edge_count:
            return False
        if sorted(len(e) for e in g1.edges) != sorted(len(e) for e in g2.edges):
            return False
        return cls.canonical_code(g1) == cls.canonical_code(g2)
