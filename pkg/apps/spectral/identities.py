"""
Numeric checks of the eigen-identities satisfied by the distance Perron
vector of a hypertree.

Every check returns a CheckReport; none of them raise on a failing
identity. Residual bounds are relative: ``tol * ρ`` for the eigenequation,
``tol * max(ρ, σ(H))`` for identities mixing ρx terms with σ sums.
"""
import logging

import numpy as np
from django.conf import settings

from apps.families.services import FamilyService
from apps.hypercore.services import HypergraphService

from .exceptions import SpectralError
from .reports import CheckReport, SignRule
from .services import SpectralService
from .structures import Accumulators, StarPair

logger = logging.getLogger(__name__)


def _tolerance(tol):
    return settings.IDENTITY_TOLERANCE if tol is None else tol


class SpineQuantities:
    """σ(H^{u_j}), σ(H_{u_j}), σ(G_{u_j}) and ι(j) = (|e_j| − 2)·x_{w_j} along a spine."""

    def __init__(self, h, result):
        self.h = h
        self.m = h.length
        self.x = result.x
        self.rho = result.rho
        self.splits = [FamilyService.spine_split(h, j) for j in range(self.m + 1)]
        self.upper = [result.sigma(split.upper) for split in self.splits]
        self.lower = [result.sigma(split.lower) for split in self.splits]
        self.attached = [result.sigma(split.attachment) for split in self.splits]
        self.total = result.total()

    def xu(self, j):
        return float(self.x[self.h.u(j)])

    def xw(self, j):
        return float(self.x[self.h.w(j)])

    def size(self, j):
        return len(self.h.spine_edge(j))

    def iota(self, j):
        if j not in self.h.interior_reps:
            return 0.0
        return (self.size(j) - 2) * self.xw(j)

    def telescope(self, s, t, count):
        """Σ_{l<count} (g(t−l) − g(s+l) + ι(t−l) − ι(s+1+l))."""
        return sum(
            self.attached[t - l] - self.attached[s + l] + self.iota(t - l) - self.iota(s + 1 + l)
            for l in range(count)
        )


class IdentityService:
    """Checks of the Perron vector against the closed-form identities"""

    @staticmethod
    def check_eigenequation(dm, result, tol=None):
        tol = _tolerance(tol)
        violations = np.abs(result.rho * result.x - dm.d @ result.x)
        residuals = [(u, float(r)) for u, r in enumerate(violations)]
        return CheckReport.from_residuals(
            'eigenequation', residuals, tol * result.rho, 'ρ·x_u = W(G, u) at every vertex',
        )

    @staticmethod
    def check_pendant_identity(dm, result, tol=None):
        """(ρ + |e|)·x_{u′} − ρ·x_u = σ(G) for every pendant vertex u′ of a pendant edge at u."""
        tol = _tolerance(tol)
        g = dm.graph
        rho, x, total = result.rho, result.x, result.total()
        residuals = []
        for index, edge in enumerate(g.edges):
            center = HypergraphService.pendant_center(g, index)
            if center is None:
                if any(g.degrees[v] > 1 for v in edge):
                    continue
                center = edge[0]
            for leaf in edge:
                if leaf == center or g.degrees[leaf] != 1:
                    continue
                lhs = (rho + len(edge)) * x[leaf] - rho * x[center]
                residuals.append(((center, leaf), abs(float(lhs) - total)))
        return CheckReport.from_residuals(
            'pendant-identity', residuals, tol * max(total, rho), '(ρ+|e|)x_{u′} − ρx_u = σ(G)',
        )

    @staticmethod
    def star_pair(g, u1, u2):
        """All pendant edges at u1 and at u2, as a StarPair."""
        edges1 = HypergraphService.pendant_edges_at(g, u1)
        edges2 = HypergraphService.pendant_edges_at(g, u2)
        return StarPair(u1, edges1, u2, edges2)

    @staticmethod
    def attached_star_pair(h, i, j):
        """The hyperstars glued at spine vertices u_i and u_j."""
        return StarPair(h.u(i), h.attachment_edges(i), h.u(j), h.attachment_edges(j))

    @staticmethod
    def check_sign_identity(dm, result, pair, tol=None):
        """σ(S1) − σ(S2) = (ρ·l(k−1)/(ρ+k) + 1)(x_{u1} − x_{u2}), with matching signs."""
        tol = _tolerance(tol)
        g = dm.graph
        if len(pair.edges1) != len(pair.edges2) or not pair.edges1:
            raise SpectralError(
                f'Star pair needs two nonempty stars of equal size, got {len(pair.edges1)} and {len(pair.edges2)}'
            )
        sizes = {len(g.edges[i]) for i in pair.edges1 + pair.edges2}
        if len(sizes) != 1:
            raise SpectralError(f'Star pair edges have mixed sizes {sorted(sizes)}')
        for center, edges in ((pair.u1, pair.edges1), (pair.u2, pair.edges2)):
            for index in edges:
                if HypergraphService.pendant_center(g, index) != center:
                    raise SpectralError(f'Edge {index} is not a pendant edge at {center}')

        k = sizes.pop()
        l = len(pair.edges1)
        rho, x = result.rho, result.x
        star1 = {v for i in pair.edges1 for v in g.edges[i]}
        star2 = {v for i in pair.edges2 for v in g.edges[i]}
        difference = result.sigma(star1) - result.sigma(star2)
        gap = float(x[pair.u1] - x[pair.u2])
        rhs = (rho * l * (k - 1) / (rho + k) + 1) * gap

        rule = SignRule()
        identity = CheckReport.from_residuals(
            'sign-identity-closed-form', [((pair.u1, pair.u2), abs(difference - rhs))],
            tol * max(result.total(), rho),
        )
        left, right = rule.sign(difference), rule.sign(gap)
        agreement = CheckReport.from_conditions(
            'sign-identity-agreement', [((pair.u1, pair.u2), left is not None and left == right)],
            f'sgn(σ(S1) − σ(S2)) = {left}, sgn(x_u1 − x_u2) = {right}',
        )
        return CheckReport.combine(
            'sign-identity', [identity, agreement],
            data={'sigma_difference': difference, 'x_difference': gap, 'sign': right},
        )

    @classmethod
    def check_spine_identities(cls, h, dm, result, tol=None):
        """
        Identities along the spine u_0 e_1 u_1 ... e_m u_m, for every valid
        index: the w_i relations, the consecutive-difference forms, the two
        telescoped chains over arbitrary (s, t), and the cut-vertex identity.
        """
        tol = _tolerance(tol)
        missing = [i for i in range(1, h.length + 1) if i not in h.interior_reps]
        if missing:
            raise SpectralError(
                f'Spine edges {missing} have no degree-1 interior vertex; the w_i identities need k >= 3'
            )
        q = SpineQuantities(h, result)
        rho, m = q.rho, q.m
        bound = tol * max(rho, q.total)

        w_relation, u_difference, w_difference, w_sum, second_difference = [], [], [], [], []
        for i in range(1, m + 1):
            lhs = (rho + 1) * q.xw(i)
            w_relation.append((i, abs(lhs - (rho * q.xu(i) + q.lower[i]))))
            w_relation.append((i, abs(lhs - (rho * q.xu(i - 1) + q.upper[i - 1]))))
            u_difference.append((i, abs(rho * (q.xu(i - 1) - q.xu(i)) - (q.lower[i] - q.upper[i - 1]))))
            w_sum.append((i, abs(
                rho * (q.xu(i) + q.xu(i - 1)) - ((2 * rho + q.size(i)) * q.xw(i) - q.total)
            )))
        for i in range(1, m):
            delta_w = q.xw(i) - q.xw(i + 1)
            w_difference.append((i, abs((rho + 1) * delta_w - (q.lower[i] - q.upper[i]))))
            k = q.size(i)
            if q.size(i + 1) != k:
                continue
            lhs = rho * (q.xu(i - 1) - q.xu(i + 1))
            second_difference.append((i, abs(lhs - (2 * rho + k) * delta_w)))
            closed = (2 * rho + k) / (rho + k - 1) * (q.lower[i + 1] - q.upper[i - 1])
            second_difference.append((i, abs(lhs - closed)))

        checks = [
            CheckReport.from_residuals('w-relation', w_relation, bound),
            CheckReport.from_residuals('u-difference', u_difference, bound),
            CheckReport.from_residuals('w-difference', w_difference, bound),
            CheckReport.from_residuals('w-sum', w_sum, bound),
            CheckReport.from_residuals('second-difference', second_difference, bound),
            cls._check_u_chain(q, bound),
            cls._check_w_chain(q, bound),
            cls._check_cut_vertex(h, dm, result, q, bound),
        ]
        return CheckReport.combine('spine-identities', checks, data={'spine_length': m})

    @staticmethod
    def _check_u_chain(q, bound):
        """ρ(D_i − D_{i−1}) with D_i = x_{u_{t−i}} − x_{u_{s+i}}, in its three forms."""
        m, rho = q.m, q.rho
        residuals = []
        for s in range(m + 1):
            for t in range(m + 1):
                for i in range(1, min(t, m - s) + 1):
                    d_now = q.xu(t - i) - q.xu(s + i)
                    d_before = q.xu(t - i + 1) - q.xu(s + i - 1)
                    lhs = rho * (d_now - d_before)
                    direct = q.lower[t + 1 - i] - q.upper[t - i] + q.lower[s + i] - q.upper[s + i - 1]
                    paired = 2 * (q.lower[s + i] - q.upper[t - i]) + q.iota(s + i) - q.iota(t + 1 - i)
                    telescoped = (
                        2 * (q.lower[s] - q.upper[t]) + 2 * q.telescope(s, t, i)
                        + q.iota(s + i) - q.iota(t + 1 - i)
                    )
                    worst = max(abs(lhs - direct), abs(lhs - paired), abs(lhs - telescoped))
                    residuals.append(((s, t, i), worst))
        return CheckReport.from_residuals('u-chain', residuals, bound)

    @staticmethod
    def _check_w_chain(q, bound):
        """(ρ+1)(E_i − E_{i−1}) with E_i = x_{w_{t−i+1}} − x_{w_{s+i}}, direct and telescoped."""
        m, rho = q.m, q.rho
        residuals = []
        for s in range(m + 1):
            for t in range(m + 1):
                i = 1
                while 1 <= t - i + 1 <= m - 1 and 1 <= s + i - 1 <= m - 1:
                    e_now = q.xw(t - i + 1) - q.xw(s + i)
                    e_before = q.xw(t + 2 - i) - q.xw(s + i - 1)
                    lhs = (rho + 1) * (e_now - e_before)
                    g_term = q.attached[t - i + 1] - q.attached[s + i - 1]
                    direct = 2 * (q.lower[s + i - 1] - q.upper[t - i + 1]) + g_term
                    telescoped = 2 * (q.lower[s] - q.upper[t]) + 2 * q.telescope(s, t, i - 1) + g_term
                    residuals.append(((s, t, i), max(abs(lhs - direct), abs(lhs - telescoped))))
                    i += 1
        return CheckReport.from_residuals('w-chain', residuals, bound)

    @staticmethod
    def _check_cut_vertex(h, dm, result, q, bound):
        """W(H^{u_i}, z) = W(H^{u_i}, u_i) + d(u_i, z)·σ(H^{u_i}) for z beyond the cut at u_i."""
        acc = Accumulators(dm, result.x)
        residuals = []
        for i in range(q.m):
            split = q.splits[i]
            base = acc.W(split.upper, h.u(i))
            for z in sorted(split.lower - split.upper):
                expected = base + dm.distance(h.u(i), z) * q.upper[i]
                residuals.append(((i, z), abs(acc.W(split.upper, z) - expected)))
        return CheckReport.from_residuals('cut-vertex', residuals, bound)

    @staticmethod
    def check_pendant_ordering(dm, result):
        """x_u ≥ x_v for a degree-1 u and any v in the same edge, equal exactly when deg(v) = 1."""
        g = dm.graph
        rule = SignRule()
        conditions = []
        for index, edge in enumerate(g.edges):
            for u in edge:
                if g.degrees[u] != 1:
                    continue
                for v in edge:
                    if v == u:
                        continue
                    sign = rule.sign(float(result.x[u] - result.x[v]))
                    expected = 0 if g.degrees[v] == 1 else 1
                    conditions.append(((index, u, v), sign == expected))
        return CheckReport.from_conditions('pendant-ordering', conditions)

    @staticmethod
    def check_row_sum_bounds(dm, result, tol=None):
        tol = _tolerance(tol)
        sums = dm.row_sums
        low, high = float(sums.min()), float(sums.max())
        slack = tol * result.rho
        ok = low - slack <= result.rho <= high + slack
        report = CheckReport.from_conditions('row-sum-bounds', [('rho', ok)])
        report.data.update({'min_row_sum': low, 'max_row_sum': high, 'rho': result.rho})
        return report

    @staticmethod
    def check_automorphism_invariance(dm, result, permutation, tol=None):
        """x is constant on the orbits of a vertex permutation preserving the edge set."""
        tol = _tolerance(tol)
        g = dm.graph
        if sorted(permutation) != list(range(g.vertex_count)):
            raise SpectralError('Permutation must be a bijection on the vertex set')
        mapped = {tuple(sorted(permutation[v] for v in edge)) for edge in g.edges}
        if mapped != set(g.edges):
            raise SpectralError('Permutation does not preserve the edge set')
        residuals = [(v, abs(float(result.x[v] - result.x[permutation[v]]))) for v in range(g.vertex_count)]
        return CheckReport.from_residuals('automorphism-invariance', residuals, tol)

    @staticmethod
    def spine_reversal(h):
        """Vertex permutation u_i ↦ u_{m−i}, when the attachments mirror exactly."""
        m = h.length
        permutation = list(range(h.graph.vertex_count))
        for i in range(m + 1):
            permutation[h.u(i)] = h.u(m - i)
        for i in range(1, m + 1):
            here, there = h.interior_vertices(i), h.interior_vertices(m + 1 - i)
            if len(here) != len(there):
                raise SpectralError(f'Spine edges e_{i} and e_{m + 1 - i} differ in size')
            for a, b in zip(here, there):
                permutation[a] = b
        for i in range(m + 1):
            mine, theirs = h.attached.get(i), h.attached.get(m - i)
            if (mine is None) != (theirs is None) or (mine is not None and mine.graph != theirs.graph):
                raise SpectralError(f'Attachments at u_{i} and u_{m - i} do not mirror')
            if mine is not None:
                for a, b in zip(h.attachment_maps[i], h.attachment_maps[m - i]):
                    permutation[a] = b
        return permutation

    @staticmethod
    def check_rayleigh_bound(dm, result, samples=100, seed=0, tol=None):
        """xᵀDx ≤ ρ on random unit vectors, with equality at the Perron vector."""
        tol = _tolerance(tol)
        rng = np.random.default_rng(seed)
        slack = tol * result.rho
        conditions = []
        worst_gap = np.inf
        for sample in range(samples):
            y = rng.standard_normal(dm.n)
            y /= np.linalg.norm(y)
            value = SpectralService.rayleigh(dm, y)
            worst_gap = min(worst_gap, result.rho - value)
            conditions.append((sample, value <= result.rho + slack))
        at_perron = SpectralService.rayleigh(dm, result.x)
        conditions.append(('perron', abs(at_perron - result.rho) <= slack))
        report = CheckReport.from_conditions('rayleigh-bound', conditions)
        report.data['smallest_gap'] = float(worst_gap)
        return report

    @classmethod
    def check_all(cls, g, dm, result, h=None, tol=None):
        """Every identity applicable to ``g``; spine identities when a spine labeling is given."""
        checks = [
            cls.check_eigenequation(dm, result, tol),
            cls.check_pendant_identity(dm, result, tol),
            cls.check_pendant_ordering(dm, result),
            cls.check_row_sum_bounds(dm, result, tol),
            cls.check_rayleigh_bound(dm, result, tol=tol),
        ]
        if h is not None and h.length >= 1 and all(i in h.interior_reps for i in range(1, h.length + 1)):
            checks.append(cls.check_spine_identities(h, dm, result, tol))
        return CheckReport.combine('eigen-identities', checks, data={'rho': result.rho})
