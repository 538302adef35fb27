import operator
from dataclasses import dataclass
from functools import cached_property

from .exceptions import HypergraphError


def _vertex_id(value, edge_index, vertex_count):
    try:
        vertex = operator.index(value)
    except TypeError:
        raise HypergraphError(f'Edge {edge_index} holds a non-integer vertex id {value!r}')
    if isinstance(value, bool) or not 0 <= vertex < vertex_count:
        raise HypergraphError(
            f'Edge {edge_index} holds invalid vertex id {value!r} (vertex_count={vertex_count})'
        )
    return vertex


@dataclass(frozen=True, eq=False)
class Hypergraph:
    """
    Vertex count plus an ordered list of edges.

    Edges are stored as sorted tuples so serialization is deterministic.
    Equality is structural: same vertex count and same edge multiset,
    independent of edge order. Isolated vertices are allowed because
    edge deletion keeps them.
    """

    vertex_count: int
    edges: tuple = ()

    def __post_init__(self):
        if isinstance(self.vertex_count, bool):
            raise HypergraphError('vertex_count must be an integer')
        try:
            vertex_count = operator.index(self.vertex_count)
        except TypeError:
            raise HypergraphError(f'vertex_count must be an integer, got {self.vertex_count!r}')
        if vertex_count < 0:
            raise HypergraphError(f'vertex_count must be nonnegative, got {vertex_count}')

        normalized = []
        for index, edge in enumerate(self.edges):
            members = [_vertex_id(v, index, vertex_count) for v in edge]
            if not members:
                raise HypergraphError(f'Edge {index} is empty')
            if len(set(members)) != len(members):
                raise HypergraphError(f'Edge {index} repeats a vertex: {members}')
            normalized.append(tuple(sorted(members)))
        if len(set(normalized)) != len(normalized):
            raise HypergraphError('Multi-edges are not supported')

        object.__setattr__(self, 'vertex_count', vertex_count)
        object.__setattr__(self, 'edges', tuple(normalized))

    def __eq__(self, other):
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return self.vertex_count == other.vertex_count and self.edge_multiset == other.edge_multiset

    def __hash__(self):
        return hash((self.vertex_count, self.edge_multiset))

    @property
    def edge_count(self):
        return len(self.edges)

    @cached_property
    def edge_multiset(self):
        return tuple(sorted(self.edges))

    @cached_property
    def incidence(self):
        """Edge indices incident to each vertex."""
        incident = [[] for _ in range(self.vertex_count)]
        for index, edge in enumerate(self.edges):
            for v in edge:
                incident[v].append(index)
        return tuple(tuple(edges) for edges in incident)

    @cached_property
    def degrees(self):
        return tuple(len(edges) for edges in self.incidence)

    @property
    def max_degree(self):
        return max(self.degrees, default=0)

    @property
    def isolated_vertices(self):
        return tuple(v for v, d in enumerate(self.degrees) if d == 0)

    @property
    def total_incidence(self):
        return sum(len(edge) for edge in self.edges)

    def to_dict(self):
        """Canonical JSON form: sorted ids, edges sorted lexicographically."""
        return {
            'vertex_count': self.vertex_count,
            'edges': [list(edge) for edge in self.edge_multiset],
        }
