"""
The two non-uniform constructions showing the uniform results do not carry
over: a bridge example where the two-vertex path shift lowers ρ, and a
vertex transfer that lifts a balanced caterpillar above itself.

Published values are quoted to two decimals; comparisons use
``PUBLISHED_VALUE_TOLERANCE``.
"""
import logging
from dataclasses import dataclass

from django.conf import settings

from apps.families.services import FamilyService
from apps.families.structures import CaterpillarParams
from apps.hypercore.hypergraph import Hypergraph
from apps.hypercore.services import HypergraphService
from apps.spectral.reports import CheckReport, Verdict

from .services import GraftService
from .structures import DECREASE, INCREASE

logger = logging.getLogger(__name__)

CONFIRMED = 'paper-confirmed-counterexample'
VALUE_MISMATCH = 'counterexample-value-mismatch'
NOT_COUNTEREXAMPLE = 'not-a-counterexample'

BRIDGE_SIZES = (9, 3, 3, 3, 6)
BRIDGE_VALUES = (53.04, 46.91)
TRANSFER_PARAMS = CaterpillarParams(3, 5, 3, 1, 2)
TRANSFER_VALUES = (45.33, 46.31)


@dataclass(frozen=True, eq=False)
class Counterexample:
    """
    ``uniform_prediction`` is what the uniform theory says about going from
    ``before`` to ``after``. The published values are unordered when
    ``ordered`` is False.
    """

    name: str
    before: Hypergraph
    after: Hypergraph
    uniform_prediction: str
    published: tuple
    ordered: bool = True


def nonuniform_bridge():
    """
    Paths of sizes (9, 3) and (3, 6) hung at the two ends of a 3-edge, i.e.
    H_{u,v}(2, 2); then e_1 moves from u_1 to u_5, giving H_{u,v}(1, 3).
    """
    h = FamilyService.non_uniform_path(BRIDGE_SIZES)
    after = HypergraphService.move_edges(h.graph, h.u(1), h.u(5), [h.spine_edges[0]])
    return Counterexample('nonuniform-bridge', h.graph, after, INCREASE, BRIDGE_VALUES, ordered=False)


def vertex_transfer():
    """C_3(5, 3, 1, 2) with a degree-1 vertex of e_2 moved into e_1."""
    h = FamilyService.caterpillar(TRANSFER_PARAMS)
    after = HypergraphService.transfer_vertex(h.graph, h.w(2), h.spine_edges[1], h.spine_edges[0])
    return Counterexample('vertex-transfer', h.graph, after, DECREASE, TRANSFER_VALUES)


def _values_match(observed, published, ordered, tolerance):
    if not ordered:
        observed, published = sorted(observed), sorted(published)
    return all(abs(a - b) <= tolerance for a, b in zip(observed, published))


def evaluate(example, tolerance=None):
    tolerance = settings.PUBLISHED_VALUE_TOLERANCE if tolerance is None else tolerance
    outcome = GraftService.outcome(
        example.name, example.before, example.after, direction=example.uniform_prediction, uniform=False,
    )
    observed = (outcome.rho_before, outcome.rho_after)
    matches = _values_match(observed, example.published, example.ordered, tolerance)

    if outcome.holds():
        label = NOT_COUNTEREXAMPLE
    elif outcome.observed_direction == 'flat' or not matches:
        label = VALUE_MISMATCH
    else:
        label = CONFIRMED

    verdict = Verdict.PASS if label == CONFIRMED else Verdict.FAIL
    report = CheckReport(
        example.name,
        verdict,
        0.0 if matches else max(abs(a - b) for a, b in zip(sorted(observed), sorted(example.published))),
        f'uniform theory predicts {example.uniform_prediction}, observed {outcome.observed_direction}',
        {
            'outcome': label,
            'rho_before': outcome.rho_before,
            'rho_after': outcome.rho_after,
            'published': list(example.published),
            'ordered': example.ordered,
        },
    )
    report.log()
    return report


def evaluate_all(tolerance=None):
    return CheckReport.combine(
        'nonuniform-counterexamples',
        [evaluate(nonuniform_bridge(), tolerance), evaluate(vertex_transfer(), tolerance)],
    )
