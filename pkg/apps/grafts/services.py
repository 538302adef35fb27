import logging

from apps.families.services import FamilyService
from apps.families.structures import SpineLabeledHypergraph
from apps.hypercore.services import HypergraphService
from apps.spectral.services import SpectralService

from .exceptions import GraftPreconditionError
from .structures import INCREASE, GraftOutcome

logger = logging.getLogger(__name__)


def _plain(h):
    return h.graph if isinstance(h, SpineLabeledHypergraph) else h


class GraftService:
    """Edge-relocation rewrites whose effect on ρ is known in the uniform case"""

    @staticmethod
    def outcome(name, before, after, direction=INCREASE, params=None, case='', expected=None, uniform=True):
        rho_before = SpectralService.spectral_radius(before)
        rho_after = SpectralService.spectral_radius(after)
        match = None if expected is None else HypergraphService.is_isomorphic(after, expected)
        result = GraftOutcome(
            name=name,
            before=before,
            after=after,
            rho_before=rho_before,
            rho_after=rho_after,
            claimed_direction=direction,
            params=params or {},
            case=case,
            expected_match=match,
            uniform=uniform,
        )
        logger.info(
            f'{name}{" case " + case if case else ""}: rho {rho_before:.12g} -> {rho_after:.12g} '
            f'(gap {result.gap:.3e}, claimed {direction})'
        )
        return result

    @staticmethod
    def _check_lengths(s, t):
        if not s >= t >= 1:
            raise GraftPreconditionError(f'Path lengths need s >= t >= 1, got s={s}, t={t}')

    @staticmethod
    def _check_host(g):
        if g.edge_count < 1:
            raise GraftPreconditionError('Host needs at least one edge')
        if not HypergraphService.is_hypertree(g):
            raise GraftPreconditionError('Host must be a connected hypertree')

    @classmethod
    def graft_path_shift(cls, h, u, s, t, k=None):
        """H_u(s, t) → H_u(s+1, t−1): two pendant paths at the same vertex, one edge moved across."""
        g = _plain(h)
        cls._check_lengths(s, t)
        cls._check_host(g)
        HypergraphService.check_vertex(g, u)
        before = FamilyService.attach_two_paths(g, u, u, s, t, k=k)
        after = FamilyService.attach_two_paths(g, u, u, s + 1, t - 1, k=k)
        return cls.outcome('graft1', before, after, params={'u': u, 's': s, 't': t})

    @classmethod
    def bridge_edge(cls, g, u, v):
        """The edge e holding degree-1 vertices u and v, provided H − e has |e| components."""
        for w in (u, v):
            if HypergraphService.degree(g, w) != 1:
                raise GraftPreconditionError(f'Vertex {w} has degree {g.degrees[w]}, expected 1')
        if u == v:
            raise GraftPreconditionError('u and v must be distinct')
        index = g.incidence[u][0]
        if g.incidence[v][0] != index:
            raise GraftPreconditionError(f'Vertices {u} and {v} do not share an edge')
        pieces = len(HypergraphService.components(HypergraphService.delete_edge(g, index)))
        size = len(g.edges[index])
        if pieces != size:
            raise GraftPreconditionError(
                f'Removing edge {index} leaves {pieces} components, expected {size}'
            )
        return index

    @classmethod
    def graft_two_vertex_shift(cls, h, u, v, s, t, k=None):
        """H_{u,v}(s, t) → H_{u,v}(s+1, t−1) across a bridging edge."""
        g = _plain(h)
        cls._check_lengths(s, t)
        cls.bridge_edge(g, u, v)
        cls._check_host(g)
        before = FamilyService.attach_two_paths(g, u, v, s, t, k=k)
        after = FamilyService.attach_two_paths(g, u, v, s + 1, t - 1, k=k)
        return cls.outcome('graft2', before, after, params={'u': u, 'v': v, 's': s, 't': t})

    @staticmethod
    def check_star_shift(params):
        if params.a + 2 > params.b:
            raise GraftPreconditionError(f'Star shift needs a + 2 <= b, got a={params.a}, b={params.b}')
        if params.a + params.b + 2 > params.m_star:
            raise GraftPreconditionError(
                f'Star shift needs a + b + 2 <= m*, got a={params.a}, b={params.b}, m*={params.m_star}'
            )

    @classmethod
    def star_shift(cls, params):
        """
        C_k(m*, Δ, a, b) → C_k(m*, Δ, a+1, b−1) by moving the star at u_{m*−b} to u_{a+1}.

        Needs a + 2 <= b and a + b + 2 <= m*. At a + b = m* − 1 the two
        caterpillars are isomorphic (the mirror of one is the other), so no
        strict increase is possible and the move is rejected.
        """
        cls.check_star_shift(params)
        h = FamilyService.caterpillar(params)
        source, target = params.m_star - params.b, params.a + 1
        after = HypergraphService.move_edges(h.graph, h.u(source), h.u(target), h.attachment_edges(source))
        expected = FamilyService.caterpillar(params.shifted()).graph
        return cls.outcome('lem5', h.graph, after, params=params.as_dict(), expected=expected)

    @classmethod
    def normalize_caterpillar(cls, params):
        """
        Apply star_shift until |a − b| <= 1; returns (outcomes, final params).
        Raises GraftPreconditionError when a step lands on a + b = m* − 1.
        """
        if params.a > params.b:
            logger.debug(f'Mirroring caterpillar ({params.a}, {params.b}) before normalizing')
            params = params.mirrored()
        outcomes = []
        while params.b - params.a >= 2:
            outcomes.append(cls.star_shift(params))
            params = params.shifted()
        return outcomes, params

    @staticmethod
    def swap_attachments(h, i, j):
        """Exchange the edges at u_i coming from G_{u_i} with those at u_j coming from G_{u_j}."""
        g = h.graph
        ui, uj = h.u(i), h.u(j)
        at_i = [index for index in h.attachment_edges(i) if ui in g.edges[index]]
        at_j = [index for index in h.attachment_edges(j) if uj in g.edges[index]]
        moved = HypergraphService.move_edges(g, ui, uj, at_i)
        return HypergraphService.move_edges(moved, uj, ui, at_j)

    @staticmethod
    def _is_rooted_loose_path(part):
        g = part.graph
        sizes = {len(edge) for edge in g.edges}
        if len(sizes) != 1:
            return False
        path = FamilyService.loose_path(g.edge_count, sizes.pop()).graph
        if not HypergraphService.is_isomorphic(g, path):
            return False
        return HypergraphService.pendant_center(g, g.incidence[part.root][0]) is not None

    @staticmethod
    def _pendant_load(h, assembly, position):
        """Most pendant edges (in H) at one non-root vertex of branch ``position``."""
        to_h = h.attachment_maps[h.core_index]
        part = assembly.parts[position]
        mapping = assembly.part_maps[position]
        return max(
            (len(HypergraphService.pendant_edges_at(h.graph, to_h[mapping[v]])) for v in part.non_root_vertices),
            default=0,
        )

    @classmethod
    def gc_case(cls, h, params, assembly):
        """The proven configuration the core falls in, with the branch playing G_1."""
        heavy = [i for i, part in enumerate(assembly.parts) if part.graph.edge_count > 1]
        if not heavy:
            raise GraftPreconditionError('Every branch of the core is a single edge; |E(G_1)| > 1 fails')
        if params.c == 1:
            return 'i', heavy[0]
        for i in heavy:
            others = [part for j, part in enumerate(assembly.parts) if j != i]
            if all(part.graph.edge_count == 1 for part in others) and cls._is_rooted_loose_path(assembly.parts[i]):
                return 'ii', i
        for i in heavy:
            if cls._pendant_load(h, assembly, i) >= params.c:
                return 'iii', i
        raise GraftPreconditionError(
            'Core matches none of the proven configurations; the general case is open'
        )

    @classmethod
    def gc_shift(cls, params):
        """G_c(s, t) → G_c(s+1, t−1) by the rewrite matching the core's configuration."""
        if not params.s >= params.t >= 2:
            raise GraftPreconditionError(f'G_c shift needs s >= t >= 2, got s={params.s}, t={params.t}')
        assembly = FamilyService.decompose_core(params.core)
        if assembly.c != params.c:
            raise GraftPreconditionError(f'Core root has degree {assembly.c}, expected c={params.c}')

        h = FamilyService.g_c(params)
        case, position = cls.gc_case(h, params, assembly)
        s = params.s
        if case == 'ii':
            g = h.graph
            anchor = h.attachment_maps[s][assembly.anchors[position]]
            onward = [index for index in g.incidence[anchor] if h.u(s) not in g.edges[index]]
            after = HypergraphService.move_edges(g, anchor, h.pendant_reps[s + 1], onward)
        else:
            after = cls.swap_attachments(h, s, s + 1)

        expected = FamilyService.g_c(params.shifted()).graph
        data = {'k': params.k, 's': params.s, 't': params.t, 'c': params.c, 'branch': position}
        return cls.outcome('lem7', h.graph, after, params=data, case=case, expected=expected)
