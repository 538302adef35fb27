from dataclasses import dataclass, field

from apps.hypercore.hypergraph import Hypergraph

from .exceptions import FamilyParameterError


@dataclass(frozen=True)
class RootedHypergraph:
    graph: Hypergraph
    root: int = 0

    def __post_init__(self):
        if not 0 <= self.root < self.graph.vertex_count:
            raise FamilyParameterError(
                f'Root {self.root} out of range for {self.graph.vertex_count} vertices'
            )

    @property
    def is_trivial(self):
        return self.graph.edge_count == 0

    @property
    def non_root_vertices(self):
        return tuple(v for v in range(self.graph.vertex_count) if v != self.root)

    @classmethod
    def trivial(cls):
        return cls(Hypergraph(1, ()), 0)


@dataclass(frozen=True)
class SpineSplit:
    """Vertex sets around spine index i: H^{u_i}, H_{u_i} and V(G_{u_i})."""

    index: int
    upper: frozenset
    lower: frozenset
    attachment: frozenset

    @property
    def upper_prime(self):
        return self.upper - self.attachment

    @property
    def lower_prime(self):
        return self.lower - self.attachment


@dataclass(frozen=True, eq=False)
class SpineLabeledHypergraph:
    """
    A rooted product of a loose path u_0 e_1 u_1 ... e_m u_m with rooted
    graphs glued at spine vertices, plus the role maps the spine identities
    index.

    ``spine_edges[i - 1]`` is the edge index of e_i. ``attachment_maps[i]``
    sends each vertex of the rooted graph G_{u_i} to its id in ``graph``.
    """

    graph: Hypergraph
    spine: tuple
    spine_edges: tuple
    attached: dict = field(default_factory=dict)
    attachment_maps: dict = field(default_factory=dict)
    interior_reps: dict = field(default_factory=dict)
    pendant_reps: dict = field(default_factory=dict)
    core_index: int = None

    @property
    def length(self):
        return len(self.spine_edges)

    def u(self, i):
        return self.spine[i]

    def w(self, i):
        try:
            return self.interior_reps[i]
        except KeyError:
            raise FamilyParameterError(f'Spine edge e_{i} has no degree-1 interior vertex')

    def spine_edge(self, i):
        return self.graph.edges[self.spine_edges[i - 1]]

    def interior_vertices(self, i):
        ends = {self.spine[i - 1], self.spine[i]}
        return tuple(v for v in self.spine_edge(i) if v not in ends)

    def attachment_vertices(self, i):
        mapping = self.attachment_maps.get(i)
        if mapping is None:
            return frozenset({self.spine[i]})
        return frozenset(mapping)

    def attachment_edges(self, i):
        """Edge indices of ``graph`` that came from G_{u_i}."""
        members = self.attachment_vertices(i)
        spine = set(self.spine_edges)
        return tuple(
            index for index, edge in enumerate(self.graph.edges)
            if index not in spine and set(edge) <= members
        )


@dataclass(frozen=True)
class CaterpillarParams:
    """C_k(m*, delta, a, b): stars S_{delta-2} at u_1..u_a and u_{m*-b}..u_{m*-1}."""

    k: int
    m_star: int
    delta: int
    a: int
    b: int

    def __post_init__(self):
        if self.k < 2:
            raise FamilyParameterError(f'Caterpillar needs k >= 2, got {self.k}')
        if self.m_star < 1:
            raise FamilyParameterError(f'Caterpillar needs m* >= 1, got {self.m_star}')
        if self.delta < 3:
            raise FamilyParameterError(f'Caterpillar needs delta >= 3, got {self.delta}')
        if self.a < 0 or self.b < 0:
            raise FamilyParameterError(f'Caterpillar needs a, b >= 0, got a={self.a}, b={self.b}')
        if self.a + self.b >= self.m_star:
            raise FamilyParameterError(
                f'Caterpillar needs a + b < m*, got a={self.a}, b={self.b}, m*={self.m_star}'
            )

    @property
    def n(self):
        return self.a + self.b

    @property
    def edge_count(self):
        return self.m_star + self.n * (self.delta - 2)

    @property
    def vertex_count(self):
        return self.edge_count * (self.k - 1) + 1

    @property
    def star_positions(self):
        return tuple(range(1, self.a + 1)) + tuple(range(self.m_star - self.b, self.m_star))

    def mirrored(self):
        return CaterpillarParams(self.k, self.m_star, self.delta, self.b, self.a)

    def shifted(self):
        return CaterpillarParams(self.k, self.m_star, self.delta, self.a + 1, self.b - 1)

    @classmethod
    def balanced(cls, k, m_star, delta, n):
        return cls(k, m_star, delta, n // 2, n - n // 2)

    def as_dict(self):
        return {'k': self.k, 'm_star': self.m_star, 'delta': self.delta, 'a': self.a, 'b': self.b}


@dataclass(frozen=True)
class CoreAssembly:
    """
    A core G_{r_s} together with its parts G_1..G_c.

    ``part_maps[i]`` sends vertices of ``parts[i]`` to core ids; every part
    root h_i maps to the core root. ``anchors[i]`` is f_i in core ids.
    """

    core: RootedHypergraph
    parts: tuple
    part_maps: tuple
    anchors: tuple

    @property
    def c(self):
        return len(self.parts)


@dataclass(frozen=True)
class GcParams:
    """G_c(s, t): stars S_c at interior spine vertices except u_s, which carries ``core``."""

    k: int
    s: int
    t: int
    c: int
    core: RootedHypergraph
    uniform: bool = True

    def __post_init__(self):
        if self.k < 2:
            raise FamilyParameterError(f'G_c needs k >= 2, got {self.k}')
        if self.s < 1 or self.t < 1:
            raise FamilyParameterError(f'G_c needs s, t >= 1, got s={self.s}, t={self.t}')
        if self.c < 1:
            raise FamilyParameterError(f'G_c needs c >= 1, got {self.c}')

    @property
    def spine_length(self):
        return self.s + self.t

    @property
    def edge_count(self):
        return self.s + self.t + (self.s + self.t - 2) * self.c + self.core.graph.edge_count

    def shifted(self):
        return GcParams(self.k, self.s + 1, self.t - 1, self.c, self.core, self.uniform)

    def as_dict(self):
        return {
            'k': self.k, 's': self.s, 't': self.t, 'c': self.c,
            'core': self.core.graph.to_dict(), 'root': self.core.root,
        }
