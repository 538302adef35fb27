from dataclasses import dataclass, field

from django.conf import settings

from apps.hypercore.hypergraph import Hypergraph
from apps.hypercore.services import HypergraphService
from apps.spectral.reports import CheckReport

INCREASE = 'increase'
DECREASE = 'decrease'


def _size_profile(g):
    return sorted(len(edge) for edge in g.edges)


@dataclass(frozen=True, eq=False)
class GraftOutcome:
    """
    A before/after pair of one rewrite with both spectral radii.

    ``expected_match`` is None when the rewrite has no named target graph,
    otherwise whether ``after`` is isomorphic to it.
    """

    name: str
    before: Hypergraph
    after: Hypergraph
    rho_before: float
    rho_after: float
    claimed_direction: str = INCREASE
    params: dict = field(default_factory=dict)
    case: str = ''
    expected_match: bool = None
    uniform: bool = True

    @property
    def gap(self):
        return self.rho_after - self.rho_before

    @property
    def threshold(self):
        return settings.STRICT_GAP * self.rho_before

    def holds(self):
        if self.claimed_direction == INCREASE:
            return self.gap > self.threshold
        return self.gap < -self.threshold

    @property
    def observed_direction(self):
        if self.gap > self.threshold:
            return INCREASE
        if self.gap < -self.threshold:
            return DECREASE
        return 'flat'

    def report(self):
        before, after = self.before, self.after
        conditions = [
            (f'strict {self.claimed_direction}', self.holds()),
            ('vertex count kept', before.vertex_count == after.vertex_count),
            ('edge count kept', before.edge_count == after.edge_count),
            ('hypertree kept', HypergraphService.is_hypertree(after)),
        ]
        if self.uniform:
            conditions.append(('edge sizes kept', _size_profile(before) == _size_profile(after)))
        if self.expected_match is not None:
            conditions.append(('matches target', self.expected_match))

        label = f'{self.name}-{self.case}' if self.case else self.name
        report = CheckReport.from_conditions(label, conditions, f'ρ {self.rho_before:.12g} → {self.rho_after:.12g}')
        report.max_residual = 0.0 if self.holds() else abs(self.gap)
        report.data.update({
            'params': self.params,
            'rho_before': self.rho_before,
            'rho_after': self.rho_after,
            'gap': self.gap,
            'observed': self.observed_direction,
        })
        report.log()
        return report
