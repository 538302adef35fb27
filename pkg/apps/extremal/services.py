import logging
import math
from functools import lru_cache

from django.conf import settings

from apps.families.services import FamilyService
from apps.families.structures import CaterpillarParams
from apps.grafts.verifiers import GraftVerifier
from apps.hypercore.hypergraph import Hypergraph
from apps.hypercore.services import HypergraphService
from apps.spectral.reports import CheckReport, SignRule
from apps.spectral.services import SpectralService

from .exceptions import EnumerationBudgetError, ExtremalError
from .structures import ExtremalReport
from .tasks import compute_rho

logger = logging.getLogger(__name__)


def attachment_sequences(m, k):
    """Labeled pendant-attachment sequences reaching m edges; bounds the enumeration work."""
    return math.prod(j * (k - 1) + 1 for j in range(1, m))


@lru_cache(maxsize=None)
def _enumerate(m, k):
    level = {}
    first = Hypergraph(k, (tuple(range(k)),))
    level[HypergraphService.canonical_code(first)] = first
    for size in range(2, m + 1):
        following = {}
        for g in level.values():
            n = g.vertex_count
            fresh = tuple(range(n, n + k - 1))
            for v in range(n):
                grown = Hypergraph(n + k - 1, g.edges + ((v,) + fresh,))
                code = HypergraphService.canonical_code(grown)
                if code not in following:
                    following[code] = grown
        level = following
        logger.info(f'Enumeration k={k}: {len(level)} classes with {size} edges')
    return tuple(g for _, g in sorted(level.items()))


class ExtremalService:
    """Exhaustive search over k-uniform hypertrees and the caterpillar theorems"""

    @staticmethod
    def enumerate_hypertrees(m, k):
        """One hypertree per isomorphism class, sorted by canonical code."""
        if m < 1 or k < 2:
            raise ExtremalError(f'Enumeration needs m >= 1 and k >= 2, got m={m}, k={k}')
        budget = settings.ENUMERATION_MAX_EDGES
        limit = budget.get(k, min(budget.values(), default=0))
        if m > limit:
            estimate = attachment_sequences(m, k)
            raise EnumerationBudgetError(
                f'Enumerating {k}-uniform hypertrees with {m} edges exceeds the budget of {limit} edges '
                f'(about 10^{len(str(estimate)) - 1} attachment sequences)',
                estimate,
            )
        return list(_enumerate(m, k))

    @staticmethod
    def family_filter(population, key):
        """Graphs whose maximum degree is exactly key.delta, attained by exactly key.n vertices."""
        return [
            g for g in population
            if g.max_degree == key.delta and sum(1 for d in g.degrees if d == key.delta) == key.n
        ]

    @staticmethod
    def is_caterpillar(g):
        """Every edge holds at most two vertices of degree >= 2, and the edges with two form a path."""
        if not HypergraphService.is_hypertree(g):
            return False
        links = []
        for edge in g.edges:
            heavy = [v for v in edge if g.degrees[v] >= 2]
            if len(heavy) > 2:
                return False
            if len(heavy) == 2:
                links.append(heavy)
        touched = {}
        for a, b in links:
            touched[a] = touched.get(a, 0) + 1
            touched[b] = touched.get(b, 0) + 1
        return all(count <= 2 for count in touched.values())

    @staticmethod
    def evaluate(candidates):
        """ρ for each candidate, in input order."""
        pending = [compute_rho.delay(g.to_dict()) for g in candidates]
        return [result.get() for result in pending]

    @classmethod
    def argmax_rho(cls, candidates, predicted=None, family=None):
        """
        Every candidate within ARGMAX_TOLERANCE of the largest ρ. Ties are kept;
        the verdict needs a single maximizer isomorphic to ``predicted``.
        """
        candidates = list(candidates)
        if not candidates:
            raise ExtremalError('argmax over an empty candidate list')
        rhos = cls.evaluate(candidates)
        best = max(rhos)
        band = settings.ARGMAX_TOLERANCE * best
        winners = [g for g, rho in zip(candidates, rhos) if best - rho <= band]
        others = [rho for rho in rhos if best - rho > band]
        codes = [HypergraphService.canonical_code(g).hex() for g in winners]

        predicted_code = None
        if predicted is not None:
            predicted_code = HypergraphService.canonical_code(predicted).hex()
        verdict = len(codes) == 1 and (predicted_code is None or codes[0] == predicted_code)
        degree_ok = all(GraftVerifier.verify_edge_degree_bound(g).passed for g in winners)

        if len(winners) > 1:
            logger.warning(f'{family or "candidates"}: {len(winners)} graphs tie at rho={best:.12g}')
        return ExtremalReport(
            family=family,
            candidates=len(candidates),
            population=len(candidates),
            argmax=codes,
            max_rho=best,
            runner_up_rho=max(others, default=None),
            predicted=predicted_code,
            verdict=verdict,
            edge_degree_ok=degree_ok,
        )

    @classmethod
    def _verify(cls, key, caterpillars_only):
        population = cls.enumerate_hypertrees(key.m, key.k)
        candidates = cls.family_filter(population, key)
        if caterpillars_only:
            candidates = [g for g in candidates if cls.is_caterpillar(g)]
        params = key.predicted_params()
        predicted = None if params is None else FamilyService.caterpillar(params).graph

        if not candidates:
            if params is not None:
                logger.error(f'{key}: no candidates although C_{key.k}({params.m_star},{key.delta},{params.a},{params.b}) exists')
            else:
                logger.info(f'{key}: empty, as predicted')
            report = ExtremalReport(family=key, population=len(population), verdict=params is None)
        else:
            if predicted is None:
                logger.error(f'{key}: {len(candidates)} candidates but no balanced caterpillar predicted')
            report = cls.argmax_rho(candidates, predicted, key)
            report.population = len(population)
            if predicted is None:
                report.verdict = False
        report.caterpillars_only = caterpillars_only
        level = logging.INFO if report.verdict else logging.ERROR
        logger.log(level, f'{key}: {report.candidates} candidates, max rho {report.max_rho}, verdict {report.verdict}')
        return report

    @classmethod
    def verify_family(cls, key):
        """Full enumeration: the unique maximizer of 𝕋_k(m, Δ, n) is the balanced caterpillar."""
        return cls._verify(key, caterpillars_only=False)

    @classmethod
    def verify_caterpillar_theorem(cls, key):
        return cls._verify(key, caterpillars_only=True)

    @staticmethod
    def rank_caterpillars(k, m_star, delta, n):
        """Every C_k(m*, Δ, a, n − a) with a <= n − a, by decreasing ρ."""
        ranked = []
        for a in range(n // 2 + 1):
            params = CaterpillarParams(k, m_star, delta, a, n - a)
            ranked.append((params, SpectralService.spectral_radius(FamilyService.caterpillar(params).graph)))
        ranked.sort(key=lambda item: -item[1])
        return ranked

    @staticmethod
    def delta_monotonicity(m, k, n, delta_hi):
        """ρ(C_k(m − n(Δ−2), Δ, ⌊n/2⌋, ⌈n/2⌉)) strictly decreases as Δ runs over 3..delta_hi."""
        if not 2 <= n <= (m - 1) // 2:
            raise ExtremalError(f'Degree sweep needs 2 <= n <= (m - 1) // 2, got n={n}, m={m}')
        if delta_hi < 3:
            raise ExtremalError(f'Degree sweep needs delta_hi >= 3, got {delta_hi}')
        points, skipped = [], []
        for delta in range(3, delta_hi + 1):
            m_star = m - n * (delta - 2)
            if n >= m_star:
                logger.warning(f'Skipping delta={delta}: m*={m_star} leaves no room for {n} stars')
                skipped.append(delta)
                continue
            params = CaterpillarParams.balanced(k, m_star, delta, n)
            rho = SpectralService.spectral_radius(FamilyService.caterpillar(params).graph)
            points.append({'delta': delta, 'm_star': m_star, 'rho': rho})

        conditions = []
        for before, after in zip(points, points[1:]):
            rule = SignRule(scale=before['rho'])
            conditions.append((f'delta {before["delta"]} -> {after["delta"]}', rule.positive(before['rho'] - after['rho'])))
        report = CheckReport.from_conditions('corollary-delta', conditions, f'k={k}, m={m}, n={n}')
        report.data.update({'points': points, 'skipped': skipped})
        report.log()
        return report
