import logging
from dataclasses import dataclass, field

from django.conf import settings

from apps.extremal.exceptions import ExtremalError
from apps.extremal.serializers import ExtremalReportSerializer
from apps.extremal.services import ExtremalService
from apps.extremal.structures import FamilyKey
from apps.families.services import FamilyService
from apps.families.structures import CaterpillarParams, GcParams, RootedHypergraph
from apps.grafts.exceptions import GraftPreconditionError
from apps.grafts.services import GraftService
from apps.grafts.verifiers import GraftVerifier
from apps.hypercore.exceptions import HypergraphError
from apps.hypercore.hypergraph import Hypergraph
from apps.hypercore.services import HypergraphService
from apps.spectral.identities import IdentityService
from apps.spectral.reports import CheckReport, SignRule, Verdict
from apps.spectral.serializers import CheckReportSerializer
from apps.spectral.services import SpectralService

from . import grids
from .exceptions import SweepSpecError

logger = logging.getLogger(__name__)

# Raised by an evaluator when a grid point lies outside the result's hypotheses.
INFEASIBLE = (HypergraphError, ExtremalError)

CORE_CASES = ('i', 'ii', 'iii')


def single_edge(k):
    return RootedHypergraph(Hypergraph(k, (tuple(range(k)),)), 0)


def case_core(case, k):
    """A core of the given proven configuration, with its root degree c."""
    path = RootedHypergraph(FamilyService.loose_path(2, k).graph, 0)
    if case == 'i':
        return path, 1
    if case == 'ii':
        return FamilyService.assemble_core([path, single_edge(k)]).core, 2
    if case == 'iii':
        root_edge = tuple(range(k))
        first = (1,) + tuple(range(k, 2 * k - 1))
        second = (1,) + tuple(range(2 * k - 1, 3 * k - 2))
        branch = RootedHypergraph(Hypergraph(3 * k - 2, (root_edge, first, second)), 0)
        return FamilyService.assemble_core([branch, single_edge(k)]).core, 2
    raise SweepSpecError(f'Unknown core case {case!r}; choose from {", ".join(CORE_CASES)}')


def gc_params(point):
    core, c = case_core(point['case'], point['k'])
    return GcParams(point['k'], point['s'], point['t'], c, core)


def caterpillar_params(point):
    if 'n' in point:
        b = point['n'] - point['a']
        if b < 0:
            raise GraftPreconditionError(f'a={point["a"]} exceeds n={point["n"]}')
        return CaterpillarParams(point['k'], point['mstar'], point['delta'], point['a'], b)
    return CaterpillarParams(point['k'], point['mstar'], point['delta'], point['a'], point['b'])


def family_key(point):
    return FamilyKey(point['k'], point['m'], point['delta'], point['n'])


def host_path(point):
    return FamilyService.loose_path(point['host_m'], point['k'])


@dataclass(frozen=True)
class Target:
    name: str
    keys: frozenset
    evaluate: object
    grids: list = field(default_factory=list)


TARGETS = {}


def target(name, keys, default_grids):
    def register(function):
        TARGETS[name] = Target(name, frozenset(keys), function, default_grids)
        return function
    return register


@target('graft1', ('k', 'host_m', 'u', 's', 't'), [
    {'k': '2..4', 'host_m': '1..2', 'u': '0..1', 's': '1..3', 't': '1..3'},
])
def _graft1(point):
    host = host_path(point).graph
    return GraftService.graft_path_shift(host, point['u'], point['s'], point['t']).report()


@target('graft2', ('k', 'host_m', 's', 't'), [
    {'k': '2..4', 'host_m': '1..3', 's': '1..3', 't': '1..3'},
])
def _graft2(point):
    h = host_path(point)
    edge = h.graph.edges[h.spine_edges[0]]
    leaves = [v for v in edge if h.graph.degrees[v] == 1]
    if len(leaves) < 2:
        raise GraftPreconditionError(f'The first edge of {h.length}-edge path holds {len(leaves)} degree-1 vertices')
    return GraftService.graft_two_vertex_shift(h.graph, leaves[0], leaves[1], point['s'], point['t']).report()


@target('alem', ('k', 'host_m', 'u2', 'g1', 'g2'), [
    {'k': '2..4', 'host_m': '1..3', 'u2': '1..3', 'g1': '1..2', 'g2': '1..2'},
])
def _alem(point):
    h = host_path(point)
    if point['u2'] > h.length:
        raise GraftPreconditionError(f'Spine index {point["u2"]} outside 1..{h.length}')
    k = point['k']
    return GraftVerifier.verify_attachment_lemma(
        h.graph, h.u(0), h.u(point['u2']),
        FamilyService.hyperstar(point['g1'], k), FamilyService.hyperstar(point['g2'], k),
    )


@target('lem5', ('k', 'mstar', 'delta', 'n', 'a'), [
    {'k': '2..4', 'mstar': '4..8', 'delta': '3..5', 'n': '2..4', 'a': '0..2'},
])
def _lem5(point):
    return GraftService.star_shift(caterpillar_params(point)).report()


@target('lem6', ('k', 's', 't', 'case'), [
    {'k': '2..4', 's': '2..4', 't': '2..4', 'case': list(CORE_CASES)},
])
def _lem6(point):
    return GraftVerifier.verify_core_balance(gc_params(point))


@target('lem7', ('k', 's', 't', 'case'), [
    {'k': '2..4', 's': '2..4', 't': '2..4', 'case': list(CORE_CASES)},
])
def _lem7(point):
    return GraftService.gc_shift(gc_params(point)).report()


SIGN_CHAIN_GRID = [{
    'k': '3..4', 'mstar': '6..8', 'delta': '3', 'a': '0..1', 'b': '2..3', 's': '3..5', 't': '2..4', 'r': '0..1',
}]
SIGN_CHAIN_KEYS = ('k', 'mstar', 'delta', 'a', 'b', 's', 't', 'r')


def _sign_chain(kind):
    def evaluate(point):
        h = FamilyService.caterpillar(caterpillar_params(point))
        return GraftVerifier.verify_sign_chain(h, point['s'], point['t'], point['r'], kind=kind)
    return evaluate


for _kind in ('nlem1', 'ncor1', 'ncor2'):
    target(_kind, SIGN_CHAIN_KEYS, SIGN_CHAIN_GRID)(_sign_chain(_kind))

FACT_GRID = [{'k': '3..4', 'mstar': '4..9', 'delta': '3..4', 'a': '0..2', 'b': '2..5'}]


def _fact(name):
    def evaluate(point):
        combined = GraftVerifier.verify_facts(caterpillar_params(point))
        return next(check for check in combined.checks if check.name == name)
    return evaluate


for _name in ('fact1', 'fact2', 'fact3'):
    target(_name, ('k', 'mstar', 'delta', 'a', 'b'), FACT_GRID)(_fact(_name))

# every n with 2 <= n <= (m - 1) // 2 at each edge count
FAMILY_GRID = [
    {'k': str(k), 'm': str(m), 'delta': '3', 'n': f'2..{(m - 1) // 2}'}
    for k, top in ((2, 8), (3, 9))
    for m in range(5, top + 1)
]
FAMILY_KEYS = ('k', 'm', 'delta', 'n')


def _extremal_check(name, report):
    data = ExtremalReportSerializer(report).data
    if not report.verdict:
        verdict = Verdict.FAIL
    else:
        verdict = Verdict.VACUOUS if report.empty else Verdict.PASS
    check = CheckReport(name, verdict, 0.0, str(report.family), dict(data))
    check.log()
    return check


@target('thm1', FAMILY_KEYS, FAMILY_GRID)
def _thm1(point):
    return _extremal_check('thm1', ExtremalService.verify_caterpillar_theorem(family_key(point)))


@target('thm2', FAMILY_KEYS, FAMILY_GRID)
def _thm2(point):
    return _extremal_check('thm2', ExtremalService.verify_family(family_key(point)))


@target('nlem3', FAMILY_KEYS, FAMILY_GRID)
def _nlem3(point):
    report = ExtremalService.verify_family(family_key(point))
    if report.empty:
        check = CheckReport('nlem3', Verdict.VACUOUS, detail=f'{report.family} is empty')
        check.log()
        return check
    check = CheckReport.from_conditions('nlem3', [('argmax obeys the edge-degree bound', report.edge_degree_ok)])
    check.data['argmax'] = report.argmax
    check.log()
    return check


@target('corollary-delta', ('k', 'm', 'n', 'delta_hi'), [
    {'k': '2..3', 'm': '9..12', 'n': '2..3', 'delta_hi': '5'},
])
def _corollary_delta(point):
    return ExtremalService.delta_monotonicity(point['m'], point['k'], point['n'], point['delta_hi'])


def build_instance(point):
    """(graph, spine labeling or None) for an identity-suite point."""
    family = point['family']
    if family == 'path':
        h = FamilyService.loose_path(point['m'], point['k'])
    elif family == 'cat':
        h = FamilyService.caterpillar(caterpillar_params(point))
    elif family == 'gc':
        h = FamilyService.g_c(gc_params(point))
    elif family == 'star':
        return FamilyService.hyperstar(point['m'], point['k']).graph, None
    else:
        raise SweepSpecError(f'Unknown family {family!r}; choose from path, cat, gc, star')
    return h.graph, h


@target('eigen-identities', ('family', 'k', 'm', 'mstar', 'delta', 'a', 'b', 's', 't', 'case'), [
    {'family': 'path', 'k': '2..4', 'm': '1..5'},
    {'family': 'star', 'k': '2..3', 'm': '2..4'},
    {'family': 'cat', 'k': '2..4', 'mstar': '5..6', 'delta': '3..4', 'a': '1', 'b': '2'},
    {'family': 'gc', 'k': '3', 's': '2..3', 't': '2', 'case': list(CORE_CASES)},
])
def _eigen_identities(point):
    g, h = build_instance(point)
    dm, result = SpectralService.analyze(g)
    return IdentityService.check_all(g, dm, result, h)


class SweepService:
    """Grid expansion and evaluation for ``verify``"""

    @staticmethod
    def get_target(name):
        try:
            return TARGETS[name]
        except KeyError:
            raise SweepSpecError(f'Unknown target {name!r}; choose from {", ".join(sorted(TARGETS))}')

    @classmethod
    def points(cls, name, grid_list=None, overrides=None):
        spec = cls.get_target(name)
        overrides = overrides or {}
        unknown = sorted(set(overrides) - spec.keys)
        if unknown:
            raise SweepSpecError(f'Target {name} does not take {", ".join(unknown)}')
        grid_list = spec.grids if grid_list is None else grid_list
        for grid in grid_list:
            extra = sorted(set(grid) - spec.keys)
            if extra:
                raise SweepSpecError(f'Target {name} does not take {", ".join(extra)}')
        return grids.expand(grid_list, overrides)

    @classmethod
    def evaluate_point(cls, name, point):
        """JSON-safe record for one grid point; infeasible points come back skipped."""
        spec = cls.get_target(name)
        try:
            report = spec.evaluate(point)
        except KeyError as exc:
            raise SweepSpecError(f'Target {name} needs parameter {exc.args[0]!r} at point {point}')
        except INFEASIBLE as exc:
            logger.warning(f'{name} {point}: skipped, {exc}')
            return {'point': point, 'status': 'skipped', 'reason': str(exc)}
        return {'point': point, 'status': 'evaluated', 'report': CheckReportSerializer(report).data}

    @staticmethod
    def run(name, points):
        from .tasks import evaluate_grid_point

        pending = [evaluate_grid_point.delay(name, point) for point in points]
        records = []
        for index, result in enumerate(pending):
            record = result.get()
            record['index'] = index
            records.append(record)
        logger.info(f'{name}: {len(records)} grid points done')
        return records

    @staticmethod
    def summarize(records):
        summary = {'pass': 0, 'fail': 0, 'vacuous': 0, 'skipped': 0}
        for record in records:
            if record['status'] == 'skipped':
                summary['skipped'] += 1
            else:
                summary[record['report']['verdict']] += 1
        return summary


class ExploreService:
    """Evidence sweeps outside the proven cases; nothing here asserts"""

    @staticmethod
    def _sign(rho_before, rho_after):
        sign = SignRule(scale=rho_before).sign(rho_after - rho_before)
        return {1: 'increase', -1: 'decrease', 0: 'flat', None: 'indeterminate'}[sign]

    @staticmethod
    def rooted_cores(k, max_edges):
        """Rooted hypertrees with 2..max_edges edges, one per vertex of degree >= 2."""
        cores = []
        for m in range(2, max_edges + 1):
            for g in ExtremalService.enumerate_hypertrees(m, k):
                cores.extend(RootedHypergraph(g, v) for v in range(g.vertex_count) if g.degrees[v] >= 2)
        return cores

    @classmethod
    def conjecture(cls, ks, ss, ts, core_edges):
        """
        G_c(s, t) against G_c(s+1, t−1) for cores with more than c edges and
        root degree at least c. Proven-case instances are cross-checked
        against ``gc_shift``.
        """
        records, seen = [], set()
        for k in ks:
            cores = cls.rooted_cores(k, core_edges)
            for core in cores:
                root_degree = core.graph.degrees[core.root]
                for c in range(1, root_degree + 1):
                    if core.graph.edge_count <= c:
                        continue
                    for s in ss:
                        for t in ts:
                            if not s >= t >= 2:
                                continue
                            record = cls._conjecture_point(GcParams(k, s, t, c, core), root_degree, seen)
                            if record is not None:
                                records.append(record)
        logger.info(f'Conjecture sweep: {len(records)} instances')
        return records

    @classmethod
    def _conjecture_point(cls, params, root_degree, seen):
        before = FamilyService.g_c(params).graph
        code = HypergraphService.canonical_code(before)
        if code in seen:
            return None
        seen.add(code)
        after = FamilyService.g_c(params.shifted()).graph
        rho_before, rho_after = ExtremalService.evaluate([before, after])
        case = 'open'
        consistent = None
        if root_degree == params.c:
            try:
                outcome = GraftService.gc_shift(params)
            except GraftPreconditionError:
                pass
            else:
                case = outcome.case
                consistent = abs(outcome.rho_after - rho_after) <= settings.IDENTITY_TOLERANCE * rho_after
        sign = cls._sign(rho_before, rho_after)
        level = logging.INFO if sign == 'increase' else logging.WARNING
        logger.log(level, f'G_{params.c}({params.s},{params.t}) k={params.k} case {case}: {sign}')
        return {
            'k': params.k, 's': params.s, 't': params.t, 'c': params.c,
            'core': dict(params.core.graph.to_dict(), root=params.core.root),
            'case': case,
            'rho_before': rho_before,
            'rho_after': rho_after,
            'gap': rho_after - rho_before,
            'sign': sign,
            'consistent': consistent,
        }

    @classmethod
    def question1(cls, ks, host_edges, ps, qs, stars):
        """H_{u,v}(p, q; G_r) against H_{u,v}(p+1, q−1; G_r) over small hosts, every vertex pair."""
        records, seen = [], set()
        for k in ks:
            for host_m in host_edges:
                for host in ExtremalService.enumerate_hypertrees(host_m, k):
                    dm = SpectralService.distance_matrix(host)
                    for u in range(host.vertex_count):
                        for v in range(u + 1, host.vertex_count):
                            for p in ps:
                                for q in qs:
                                    if not p >= q >= 1:
                                        continue
                                    for star in stars:
                                        record = cls._question1_point(host, dm, u, v, p, q, star, k, seen)
                                        if record is not None:
                                            records.append(record)
        logger.info(f'Question sweep: {len(records)} instances')
        return records

    @classmethod
    def _question1_point(cls, host, dm, u, v, p, q, star, k, seen):
        g_r = FamilyService.hyperstar(star, k) if star > 0 else None
        before = FamilyService.attach_two_paths(host, u, v, p, q, g_r=g_r, k=k)
        after = FamilyService.attach_two_paths(host, u, v, p + 1, q - 1, g_r=g_r, k=k)
        key = (HypergraphService.canonical_code(before), HypergraphService.canonical_code(after))
        if key in seen:
            return None
        seen.add(key)
        rho_before, rho_after = ExtremalService.evaluate([before, after])
        sign = cls._sign(rho_before, rho_after)
        common_edge = any(v in host.edges[index] for index in host.incidence[u])
        logger.debug(f'H_{{{u},{v}}}({p},{q}) star={star}: {sign}, d={dm.distance(u, v)}')
        return {
            'k': k, 'host': host.to_dict(), 'u': u, 'v': v, 'p': p, 'q': q, 'star': star,
            'distance': dm.distance(u, v),
            'degree_u': host.degrees[u],
            'degree_v': host.degrees[v],
            'common_edge': common_edge,
            'rho_before': rho_before,
            'rho_after': rho_after,
            'sign': sign,
        }
