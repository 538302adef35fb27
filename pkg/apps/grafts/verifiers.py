"""
Perron-component orderings behind the graft results.

Strict inequalities go through SignRule: x-differences on scale 1,
σ-differences on scale σ(H). A difference in the indeterminate band fails
the condition it appears in.
"""
import logging

from django.conf import settings

from apps.families.services import FamilyService
from apps.hypercore.services import HypergraphService
from apps.spectral.identities import SpineQuantities
from apps.spectral.reports import CheckReport, SignRule, Verdict
from apps.spectral.services import SpectralService
from apps.spectral.structures import Accumulators

from .exceptions import GraftPreconditionError
from .services import GraftService

logger = logging.getLogger(__name__)

SIGN_CHAIN_KINDS = ('nlem1', 'ncor1', 'ncor2')


def _split_sum(m):
    """(p, q) with p + q = m and 1 <= q − p <= 2."""
    if m % 2:
        return (m - 1) // 2, (m + 1) // 2
    return m // 2 - 1, m // 2 + 1


def _vacuous(name, outcome, **data):
    report = CheckReport(name, Verdict.VACUOUS, detail=outcome, data=dict(data, outcome=outcome))
    report.log()
    return report


def _chain_data(**chains):
    return {name: [float(value) for value in values] for name, values in chains.items()}


class GraftVerifier:
    """Orderings and identities the graft proofs rely on, checked on concrete instances"""

    @staticmethod
    def verify_facts(params):
        """Monotone difference chains of the Perron vector on a caterpillar with a + 2 <= b."""
        GraftService.check_star_shift(params)
        h = FamilyService.caterpillar(params)
        _, result = SpectralService.analyze(h.graph)
        x = result.x
        m, a, b = params.m_star, params.a, params.b
        rule = SignRule()
        has_w = params.k >= 3

        def xu(j):
            return float(x[h.u(j)])

        def xw(j):
            return float(x[h.w(j)])

        # outer pairs u_j, u_{m*-j}
        u1 = [xu(j) - xu(m - j) for j in range(a + 2)]
        conditions = [('u-chain starts positive', rule.positive(u1[0])), ('u-chain increasing', rule.increasing(u1))]
        data = _chain_data(u_chain=u1)
        if has_w:
            w1 = [xw(j) - xw(m - j + 1) for j in range(1, a + 2)]
            conditions += [
                ('w-chain starts positive', rule.positive(w1[0])),
                ('w-chain increasing', rule.increasing(w1)),
                ('w-chain below u-chain', rule.positive(u1[-1] - w1[-1])),
            ]
            data.update(_chain_data(w_chain=w1))
        fact1 = CheckReport.from_conditions('fact1', conditions)
        fact1.data.update(data)

        # pairs symmetric about m' between u_{a+1} and u_{m*-b}
        m1 = m + a - b + 1
        p1, q1 = _split_sum(m1)
        u2 = [xu(i) - xu(m1 - i) for i in range(p1, a, -1)]
        conditions = [('u-chain starts positive', rule.positive(u2[0])), ('u-chain increasing', rule.increasing(u2))]
        data = _chain_data(u_chain=u2)
        if has_w:
            # w_{p'+1} = w_{q'} when q' = p' + 1; that term is identically zero
            start = p1 - 1 if q1 == p1 + 1 else p1
            w2 = [xw(i + 1) - xw(m1 - i) for i in range(start, a, -1)]
            if w2:
                conditions += [
                    ('w-chain starts positive', rule.positive(w2[0])),
                    ('w-chain increasing', rule.increasing(w2)),
                    ('w-chain below u-chain', rule.positive(u2[-1] - w2[-1])),
                ]
            data.update(_chain_data(w_chain=w2))
        fact2 = CheckReport.from_conditions('fact2', conditions, f"m'={m1}, p'={p1}, q'={q1}")
        fact2.data.update(data)

        # pairs symmetric about m'' between u_{m*-b} and u_{m*-a-1}
        m2 = 2 * m - a - b - 1
        p2, q2 = _split_sum(m2)
        u3 = [xu(j) - xu(m2 - j) for j in range(m - b, p2 + 1)]
        conditions = [('u-chain increasing', rule.increasing(u3)), ('u-chain ends negative', rule.negative(u3[-1]))]
        data = _chain_data(u_chain=u3)
        if has_w:
            w3 = [xw(j + 1) - xw(m2 - j) for j in range(m - b, p2 + 1)]
            conditions += [
                ('w-chain increasing', rule.increasing(w3)),
                ('w-chain ends non-positive', rule.sign(w3[-1]) in (-1, 0)),
            ]
            data.update(_chain_data(w_chain=w3))
        fact3 = CheckReport.from_conditions('fact3', conditions, f"m''={m2}, p''={p2}, q''={q2}")
        fact3.data.update(data)

        return CheckReport.combine('facts', [fact1, fact2, fact3], data={'params': params.as_dict(), 'rho': result.rho})

    @staticmethod
    def verify_sign_chain(h, s, t, r, kind='nlem1', result=None):
        """
        With 1 <= s − t <= 2 and sgn(σ(G_{u_{t−l}}) − σ(G_{u_{s+l}})) =
        sgn(x_{u_{t−l}} − x_{u_{s+l}}) for l <= r, the differences
        D_l = x_{u_{t−l}} − x_{u_{s+l}} and E_l = x_{w_{t−l+1}} − x_{w_{s+l}}
        follow the sign of σ(H_{u_s}) − σ(H^{u_t}) up to l = r + 1; the
        corollaries add strict monotonicity for either sign.
        """
        if kind not in SIGN_CHAIN_KINDS:
            raise GraftPreconditionError(f'Unknown sign chain {kind!r}; choose from {", ".join(SIGN_CHAIN_KINDS)}')
        if not 1 <= s - t <= 2:
            raise GraftPreconditionError(f'Sign chain needs 1 <= s - t <= 2, got s={s}, t={t}')
        if len(h.interior_reps) != h.length:
            raise GraftPreconditionError('Sign chain needs a degree-1 interior vertex in every spine edge (k >= 3)')
        if r < 0 or r + 1 > min(t, h.length - s):
            raise GraftPreconditionError(
                f'Sign chain needs 0 <= r and r + 1 <= min(t, m - s), got r={r}, t={t}, s={s}, m={h.length}'
            )
        if result is None:
            _, result = SpectralService.analyze(h.graph)
        q = SpineQuantities(h, result)
        x_rule, sigma_rule = SignRule(), SignRule(scale=q.total)
        name = f'{kind}(s={s}, t={t}, r={r})'

        hypotheses = []
        for l in range(r + 1):
            left = sigma_rule.sign(q.attached[t - l] - q.attached[s + l])
            right = x_rule.sign(q.xu(t - l) - q.xu(s + l))
            hypotheses.append((l, left is not None and left == right))
        failing = [l for l, ok in hypotheses if not ok]
        if failing:
            return _vacuous(name, 'hypothesis-vacuous', failing=failing)

        base = q.lower[s] - q.upper[t]
        sign = sigma_rule.sign(base)
        if sign == 0:
            return _vacuous(name, 'vacuous-zero', base=base)
        if sign is None:
            report = CheckReport(name, Verdict.FAIL, abs(base), 'σ(H_u_s) − σ(H^u_t) is indeterminate', {'base': base})
            report.log()
            return report
        wanted = {'ncor1': 1, 'ncor2': -1}.get(kind)
        if wanted is not None and sign != wanted:
            return _vacuous(name, 'hypothesis-vacuous', base=base)

        d = [q.xu(t - l) - q.xu(s + l) for l in range(r + 2)]
        e = [q.xw(t - l + 1) - q.xw(s + l) for l in range(r + 2)]
        if kind == 'nlem1':
            conditions = [(f'D_{l} has the common sign', x_rule.sign(value) == sign) for l, value in enumerate(d)]
            conditions.append(('E_0 has the common sign or vanishes', x_rule.sign(e[0]) in (sign, 0)))
            conditions += [(f'E_{l} has the common sign', x_rule.sign(e[l]) == sign) for l in range(1, len(e))]
        else:
            d_signed = [sign * value for value in d]
            e_signed = [sign * value for value in e]
            conditions = [
                ('D_0 away from zero', x_rule.positive(d_signed[0])),
                ('D chain strictly monotone', x_rule.increasing(d_signed)),
                ('E_0 on the common side', x_rule.sign(e_signed[0]) in (1, 0)),
                ('E chain strictly monotone', x_rule.increasing(e_signed)),
            ]
        report = CheckReport.from_conditions(name, conditions)
        report.data.update(_chain_data(d_chain=d, e_chain=e))
        report.data['sign'] = sign
        report.log()
        return report

    @staticmethod
    def verify_core_balance(params):
        """σ(V′(H^{u_s})) + x_{u_s} > σ(V′(H_{u_{s+1}})) + x_{u_{s+1}} and σ(V′(H^{u_s})) >= σ(V′(H_{u_s}))."""
        if not params.s >= params.t >= 2:
            raise GraftPreconditionError(f'Core balance needs s >= t >= 2, got s={params.s}, t={params.t}')
        h = FamilyService.g_c(params)
        _, result = SpectralService.analyze(h.graph)
        s = params.s
        us, un = h.u(s), h.u(s + 1)
        at_s = FamilyService.spine_split(h, s)
        at_next = FamilyService.spine_split(h, s + 1)

        upper = result.sigma(at_s.upper - {us})
        lower = result.sigma(at_s.lower - {us})
        lower_next = result.sigma(at_next.lower - {un})
        x = result.x
        left = upper + float(x[us])
        right = lower_next + float(x[un])

        rule = SignRule(scale=result.total())
        report = CheckReport.from_conditions('lem6', [
            ('upper side outweighs next lower side', rule.positive(left - right)),
            ('upper side at least lower side', rule.sign(upper - lower) in (1, 0)),
        ])
        report.data.update({'first_gap': left - right, 'second_gap': upper - lower, 'rho': result.rho})
        report.log()
        return report

    @staticmethod
    def verify_edge_degree_bound(g):
        """Per edge, the number of vertices of degree >= 2; at most 2 everywhere passes."""
        if not HypergraphService.is_hypertree(g):
            raise GraftPreconditionError('Edge degree census needs a connected hypertree')
        counts = [sum(1 for v in edge if g.degrees[v] >= 2) for edge in g.edges]
        worst = max(counts, default=0)
        offending = [index for index, count in enumerate(counts) if count > 2]
        verdict = Verdict.FAIL if offending else Verdict.PASS
        return CheckReport(
            'nlem3', verdict, 0.0,
            f'{len(offending)} edges hold more than 2 vertices of degree >= 2' if offending else '',
            {'max_heavy': worst, 'per_edge': counts, 'offending': offending},
        )

    @staticmethod
    def _host_sums(dm, x, host_vertices, u1, u2):
        acc = Accumulators(dm, x)
        return acc.W(host_vertices, u2) - acc.W(host_vertices, u1)

    @classmethod
    def verify_attachment_move(cls, h0, u1, u2, g, tol=None):
        """
        H_1 = H_0(u_1, G) against H_2 = H_0(u_2, G) on a shared numbering,
        with x = x(H_1): the Rayleigh difference, the u_2 − u_1 eigen-relation
        and the lower bound on ρ(H_2) − ρ(H_1).
        """
        tol = settings.IDENTITY_TOLERANCE if tol is None else tol
        if u1 == u2:
            raise GraftPreconditionError('Attachment move needs two distinct host vertices')
        if g.is_trivial:
            raise GraftPreconditionError('Attachment move needs a nontrivial rooted graph')
        host = h0
        HypergraphService.check_vertex(host, u1)
        HypergraphService.check_vertex(host, u2)
        h1 = FamilyService.rooted_product(host, [u1], [g])
        h2 = FamilyService.rooted_product(host, [u2], [g])
        dm1, result = SpectralService.analyze(h1)
        dm2, result2 = SpectralService.analyze(h2)
        x, rho = result.x, result.rho

        host_vertices = set(range(host.vertex_count))
        attached = set(range(host.vertex_count, h1.vertex_count))
        sigma_g = result.sigma(attached)
        dm0 = SpectralService.distance_matrix(host)
        w_gap = cls._host_sums(dm1, x, host_vertices, u1, u2)
        half = SpectralService.rayleigh_difference(x, dm1, dm2)
        bound = tol * max(rho, result.total())

        identities = CheckReport.from_residuals('attachment-move-identities', [
            ('rayleigh difference', abs(half - sigma_g * w_gap)),
            ('eigen relation', abs(
                rho * float(x[u2] - x[u1]) - (dm0.distance(u1, u2) * sigma_g + w_gap)
            )),
        ], bound)
        lower = CheckReport.from_conditions('attachment-move-bound', [
            ('ρ gap at least the Rayleigh difference', result2.rho - rho >= 2 * half - bound),
        ])
        return CheckReport.combine(
            'attachment-move', [identities, lower],
            data={'rho_before': rho, 'rho_after': result2.rho, 'rayleigh_difference': half},
        )

    @classmethod
    def verify_attachment_swap(cls, h0, u1, g1, u2, g2, tol=None):
        """G_1 at u_1, G_2 at u_2 against the swapped placement, on a shared numbering."""
        tol = settings.IDENTITY_TOLERANCE if tol is None else tol
        if u1 == u2:
            raise GraftPreconditionError('Attachment swap needs two distinct host vertices')
        h1 = FamilyService.rooted_product(h0, [u1, u2], [g1, g2])
        h2 = FamilyService.rooted_product(h0, [u2, u1], [g1, g2])
        dm1, result = SpectralService.analyze(h1)
        dm2 = SpectralService.distance_matrix(h2)
        x = result.x

        n0 = h0.vertex_count
        first = set(range(n0, n0 + g1.graph.vertex_count - 1))
        second = set(range(n0 + g1.graph.vertex_count - 1, h1.vertex_count))
        w_gap = cls._host_sums(dm1, x, set(range(n0)), u1, u2)
        expected = (result.sigma(first) - result.sigma(second)) * w_gap
        half = SpectralService.rayleigh_difference(x, dm1, dm2)
        return CheckReport.from_residuals(
            'attachment-swap', [('rayleigh difference', abs(half - expected))],
            tol * max(result.rho, result.total()),
        )

    @staticmethod
    def verify_attachment_lemma(h0, u1, u2, g1, g2):
        """
        Both rooted graphs at u_1 against G_{r_2} moved to u_2. ρ must rise
        strictly when u_1, u_2 are adjacent degree-1 host vertices, or when
        σ(V′(G_{r_1})) + x_{u_1} >= σ(H) under x(H_1); otherwise vacuous.
        """
        if u1 == u2:
            raise GraftPreconditionError('Attachment lemma needs two distinct host vertices')
        if g1.is_trivial or g2.is_trivial:
            raise GraftPreconditionError('Attachment lemma needs two nontrivial rooted graphs')
        h1 = FamilyService.rooted_product(h0, [u1, u1], [g1, g2])
        h2 = FamilyService.rooted_product(h0, [u1, u2], [g1, g2])
        dm0 = SpectralService.distance_matrix(h0)
        _, result = SpectralService.analyze(h1)

        n0 = h0.vertex_count
        first = set(range(n0, n0 + g1.graph.vertex_count - 1))
        rule = SignRule(scale=result.total())
        adjacent_leaves = h0.degrees[u1] == 1 and h0.degrees[u2] == 1 and dm0.distance(u1, u2) == 1
        heavy_side = rule.sign(result.sigma(first) + float(result.x[u1]) - result.sigma(set(range(n0)))) in (1, 0)
        name = 'alem'
        data = {'condition_1': adjacent_leaves, 'condition_2': heavy_side}
        if not (adjacent_leaves or heavy_side):
            return _vacuous(name, 'hypothesis-vacuous', **data)

        outcome = GraftService.outcome(name, h1, h2, params={'u1': u1, 'u2': u2})
        report = outcome.report()
        report.data.update(data)
        return report
