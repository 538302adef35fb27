import logging

from apps.hypercore.hypergraph import Hypergraph
from apps.hypercore.services import HypergraphService

from .exceptions import FamilyParameterError
from .structures import (
    CoreAssembly,
    RootedHypergraph,
    SpineLabeledHypergraph,
    SpineSplit,
)

logger = logging.getLogger(__name__)


def _graph_of(h):
    if isinstance(h, SpineLabeledHypergraph):
        return h.graph
    if isinstance(h, RootedHypergraph):
        return h.graph
    return h


class FamilyService:
    """
    Constructors for the hypertree families.

    Vertex numbering is fixed: spine vertices u_0..u_m take 0..m, interior
    vertices of e_1..e_m follow in edge order, then the non-root vertices of
    each attachment in increasing spine index. Spine edges come first in the
    edge list.
    """

    @staticmethod
    def hyperstar(m, k):
        """S_m^k rooted at its center 0; m = 0 is the single vertex."""
        if m < 0 or k < 2:
            raise FamilyParameterError(f'Hyperstar needs m >= 0 and k >= 2, got m={m}, k={k}')
        edges = tuple(
            (0,) + tuple(range(1 + j * (k - 1), 1 + (j + 1) * (k - 1)))
            for j in range(m)
        )
        return RootedHypergraph(Hypergraph(1 + m * (k - 1), edges), 0)

    @staticmethod
    def _glue(host, attach_points, roots):
        if len(attach_points) != len(roots):
            raise FamilyParameterError(
                f'Got {len(attach_points)} attach points for {len(roots)} rooted graphs'
            )
        next_id = host.vertex_count
        edges = list(host.edges)
        maps = []
        for point, rooted in zip(attach_points, roots):
            if not 0 <= point < host.vertex_count:
                raise FamilyParameterError(
                    f'Attach point {point} out of range for {host.vertex_count} vertices'
                )
            mapping = [None] * rooted.graph.vertex_count
            mapping[rooted.root] = point
            for v in rooted.non_root_vertices:
                mapping[v] = next_id
                next_id += 1
            edges.extend(tuple(mapping[v] for v in edge) for edge in rooted.graph.edges)
            maps.append(tuple(mapping))
        return Hypergraph(next_id, tuple(edges)), maps

    @classmethod
    def rooted_product(cls, host, attach_points, roots):
        """Glue the root of each rooted graph onto the matching host vertex; host ids are kept."""
        graph, _ = cls._glue(_graph_of(host), list(attach_points), list(roots))
        return graph

    @classmethod
    def spine_product(cls, sizes, attachments=None, core_index=None):
        """
        Loose path with edge sizes ``sizes`` and rooted graphs glued at spine
        vertices; ``attachments`` maps spine index to RootedHypergraph.
        """
        m = len(sizes)
        if m < 1:
            raise FamilyParameterError('A spine needs at least one edge')
        if any(size < 2 for size in sizes):
            raise FamilyParameterError(f'Spine edges need at least 2 vertices, got sizes {list(sizes)}')
        attachments = {i: g for i, g in (attachments or {}).items() if not g.is_trivial}
        bad = [i for i in attachments if not 0 <= i <= m]
        if bad:
            raise FamilyParameterError(f'Attachment indices {bad} outside spine 0..{m}')

        next_id = m + 1
        edges = []
        interior_reps = {}
        for i, size in enumerate(sizes, start=1):
            interior = tuple(range(next_id, next_id + size - 2))
            next_id += size - 2
            edges.append((i - 1, i) + interior)
            if interior:
                interior_reps[i] = interior[0]
        path = Hypergraph(next_id, tuple(edges))

        order = sorted(attachments)
        graph, maps = cls._glue(path, order, [attachments[i] for i in order])
        attachment_maps = dict(zip(order, maps))

        pendant_reps = {}
        offset = m
        for i in order:
            count = attachments[i].graph.edge_count
            for index in range(offset, offset + count):
                if HypergraphService.pendant_center(graph, index) == i:
                    pendant_reps[i] = min(v for v in graph.edges[index] if v != i)
                    break
            offset += count

        return SpineLabeledHypergraph(
            graph=graph,
            spine=tuple(range(m + 1)),
            spine_edges=tuple(range(m)),
            attached=dict(attachments),
            attachment_maps=attachment_maps,
            interior_reps=interior_reps,
            pendant_reps=pendant_reps,
            core_index=core_index,
        )

    @classmethod
    def loose_path(cls, m, k):
        if k < 2:
            raise FamilyParameterError(f'Loose path needs k >= 2, got {k}')
        if m == 0:
            return SpineLabeledHypergraph(Hypergraph(1, ()), (0,), ())
        return cls.spine_product([k] * m)

    @classmethod
    def non_uniform_path(cls, sizes, attachments=None):
        return cls.spine_product(list(sizes), attachments)

    @classmethod
    def caterpillar(cls, params):
        star = cls.hyperstar(params.delta - 2, params.k)
        attachments = {i: star for i in params.star_positions}
        h = cls.spine_product([params.k] * params.m_star, attachments)
        logger.debug(
            f'Built C_{params.k}({params.m_star}, {params.delta}, {params.a}, {params.b}) '
            f'with {h.graph.edge_count} edges'
        )
        return h

    @classmethod
    def g_c(cls, params):
        core = params.core
        if not HypergraphService.is_hypertree(core.graph):
            raise FamilyParameterError('G_c core must be a connected hypertree')
        if params.uniform and not HypergraphService.is_k_uniform(core.graph, params.k):
            raise FamilyParameterError(f'G_c core is not {params.k}-uniform')
        star = cls.hyperstar(params.c, params.k)
        attachments = {i: star for i in range(1, params.spine_length) if i != params.s}
        attachments[params.s] = core
        return cls.spine_product([params.k] * params.spine_length, attachments, core_index=params.s)

    @classmethod
    def assemble_core(cls, parts):
        """Identify the roots of ``parts`` into a single root 0."""
        if not parts:
            raise FamilyParameterError('A core needs at least one part')
        anchors_local = []
        for position, part in enumerate(parts):
            g = part.graph
            if not HypergraphService.is_hypertree(g):
                raise FamilyParameterError(f'Core part {position} is not a connected hypertree')
            if g.degrees[part.root] != 1:
                raise FamilyParameterError(
                    f'Core part {position} root has degree {g.degrees[part.root]}, expected 1'
                )
            root_edge = g.incidence[part.root][0]
            if g.edge_count == 1:
                anchors_local.append(min(v for v in g.edges[root_edge] if v != part.root))
                continue
            center = HypergraphService.pendant_center(g, root_edge)
            if center is None:
                raise FamilyParameterError(f'Core part {position} root edge is not a pendant edge')
            anchors_local.append(center)

        graph, maps = cls._glue(Hypergraph(1, ()), [0] * len(parts), list(parts))
        anchors = tuple(mapping[f] for mapping, f in zip(maps, anchors_local))
        return CoreAssembly(RootedHypergraph(graph, 0), tuple(parts), tuple(maps), anchors)

    @classmethod
    def decompose_core(cls, core):
        """Split a rooted hypertree into its branches at the root, in core ids."""
        g, root = core.graph, core.root
        if not HypergraphService.is_hypertree(g):
            raise FamilyParameterError('Core must be a connected hypertree')
        if g.edge_count == 0:
            return CoreAssembly(core, (), (), ())
        weakened, remap = HypergraphService.weak_delete(g, {root})
        inverse = {new: old for old, new in remap.items()}

        branches = []
        for component in HypergraphService.components(weakened):
            members = {inverse[v] for v in component}
            edge_indices = [i for i, edge in enumerate(g.edges) if set(edge) <= members | {root}]
            branches.append((min(i for i in edge_indices if root in g.edges[i]), members, edge_indices))
        branches.sort(key=lambda branch: branch[0])

        parts, part_maps, anchors = [], [], []
        for root_edge, members, edge_indices in branches:
            mapping = (root,) + tuple(sorted(members))
            local = {v: position for position, v in enumerate(mapping)}
            part = Hypergraph(len(mapping), tuple(tuple(local[v] for v in g.edges[i]) for i in edge_indices))
            parts.append(RootedHypergraph(part, 0))
            part_maps.append(mapping)
            if len(edge_indices) == 1:
                anchors.append(min(members))
            else:
                heavy = [v for v in g.edges[root_edge] if v != root and g.degrees[v] > 1]
                anchors.append(heavy[0] if len(heavy) == 1 else None)
        return CoreAssembly(core, tuple(parts), tuple(part_maps), tuple(anchors))

    @classmethod
    def limb(cls, length, k, g_r=None):
        """P_length with ``g_r`` at every interior spine vertex, rooted at u_0."""
        if length == 0:
            return RootedHypergraph.trivial()
        attachments = {}
        if g_r is not None and not g_r.is_trivial:
            attachments = {i: g_r for i in range(1, length)}
        return RootedHypergraph(cls.spine_product([k] * length, attachments).graph, 0)

    @classmethod
    def attach_two_paths(cls, h, u, v, s, t, g_r=None, k=None):
        """H_{u,v}(s, t, G_r): limbs of lengths s and t hung at u and v."""
        graph = _graph_of(h)
        if s < 0 or t < 0:
            raise FamilyParameterError(f'Path lengths must be nonnegative, got s={s}, t={t}')
        if k is None:
            sizes = {len(edge) for edge in graph.edges}
            if len(sizes) != 1:
                raise FamilyParameterError('Host is not uniform; pass the limb edge size k')
            k = sizes.pop()
        HypergraphService.check_vertex(graph, u)
        HypergraphService.check_vertex(graph, v)
        return cls.rooted_product(graph, [u, v], [cls.limb(s, k, g_r), cls.limb(t, k, g_r)])

    @classmethod
    def spine_split(cls, h, i):
        m = h.length
        if not 0 <= i <= m:
            raise FamilyParameterError(f'Spine index {i} outside 0..{m}')
        g = h.graph
        everything = frozenset(range(g.vertex_count))
        if i == m:
            upper = everything
        else:
            upper = HypergraphService.component_of(
                HypergraphService.delete_edge(g, h.spine_edges[i]), h.u(0),
            )
        if i == 0:
            lower = everything
        else:
            lower = HypergraphService.component_of(
                HypergraphService.delete_edge(g, h.spine_edges[i - 1]), h.u(m),
            )
        return SpineSplit(i, upper, lower, h.attachment_vertices(i))

    @classmethod
    def middle(cls, h, c, d):
        """Vertex set of H_{u_c}^{u_d} for c < d."""
        if not 0 <= c < d <= h.length:
            raise FamilyParameterError(f'Middle segment needs 0 <= c < d <= {h.length}, got c={c}, d={d}')
        upper = cls.spine_split(h, c)
        lower = cls.spine_split(h, d)
        removed = (
            upper.upper_prime
            | lower.lower_prime
            | (upper.attachment - {h.u(c)})
            | (lower.attachment - {h.u(d)})
        )
        return frozenset(range(h.graph.vertex_count)) - removed
