"""
Canonical codes for hypergraphs.

Hypertree components are encoded with a rooted tree code of their
vertex-edge incidence tree, taken at the tree centers. Components with a
cycle go through exhaustive individualization-refinement on the incidence
graph, keeping the smallest leaf certificate. Both are exact.
"""
import itertools
import logging
from collections import Counter
from dataclasses import dataclass

from django.conf import settings

from .exceptions import HypergraphError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class CanonicalCode:
    value: bytes

    def hex(self):
        return self.value.hex()

    def __str__(self):
        return self.hex()

    @classmethod
    def fromhex(cls, text):
        return cls(bytes.fromhex(text))


def canonical_code(g, components):
    """Isomorphism-invariant code of ``g``; ``components`` are its vertex components."""
    codes = sorted(_component_code(g, component) for component in components)
    if len(codes) == 1:
        return CanonicalCode(codes[0])
    framed = b''.join(len(code).to_bytes(4, 'big') + code for code in codes)
    return CanonicalCode(b'F' + len(codes).to_bytes(4, 'big') + framed)


def _component_code(g, component):
    members = set(component)
    edge_indices = sorted({index for v in component for index in g.incidence[v]})
    if sum(len(g.edges[i]) - 1 for i in edge_indices) == len(members) - 1:
        return b'T' + _tree_code(g, component, edge_indices)
    return b'G' + _refinement_code(g, component, edge_indices)


def _tree_code(g, component, edge_indices):
    n = g.vertex_count
    adjacency = {v: [n + i for i in g.incidence[v]] for v in component}
    for i in edge_indices:
        adjacency[n + i] = list(g.edges[i])
    return min(_rooted_code(adjacency, center, n) for center in _tree_centers(adjacency))


def _tree_centers(adjacency):
    degree = {node: len(neighbors) for node, neighbors in adjacency.items()}
    remaining = len(adjacency)
    layer = [node for node, d in degree.items() if d <= 1]
    while remaining > 2:
        remaining -= len(layer)
        next_layer = []
        for node in layer:
            for neighbor in adjacency[node]:
                degree[neighbor] -= 1
                if degree[neighbor] == 1:
                    next_layer.append(neighbor)
        layer = next_layer
    return layer


def _rooted_code(adjacency, root, n):
    parent = {root: None}
    order = []
    stack = [root]
    while stack:
        node = stack.pop()
        order.append(node)
        for neighbor in adjacency[node]:
            if neighbor != parent[node]:
                parent[neighbor] = node
                stack.append(neighbor)

    codes = {}
    for node in reversed(order):
        children = sorted(codes.pop(child) for child in adjacency[node] if child != parent[node])
        tag = b'v' if node < n else b'e'
        codes[node] = tag + b'(' + b''.join(children) + b')'
    return codes[root]


def _refinement_code(g, component, edge_indices):
    local = {v: position for position, v in enumerate(component)}
    vertex_total = len(component)
    adjacency = [[] for _ in range(vertex_total + len(edge_indices))]
    for offset, index in enumerate(edge_indices):
        node = vertex_total + offset
        for v in g.edges[index]:
            adjacency[node].append(local[v])
            adjacency[local[v]].append(node)

    colors = [0] * vertex_total + [1] * len(edge_indices)
    best = _search(colors, adjacency, vertex_total, None)
    edges = ';'.join(','.join(str(v) for v in edge) for edge in best)
    return f'{vertex_total}:{edges}'.encode()


def _refine(colors, adjacency):
    while True:
        signatures = [
            (colors[node], tuple(sorted(colors[other] for other in adjacency[node])))
            for node in range(len(colors))
        ]
        ranking = {signature: rank for rank, signature in enumerate(sorted(set(signatures)))}
        refined = [ranking[signature] for signature in signatures]
        if len(ranking) == len(set(colors)):
            return refined
        colors = refined


def _individualize(colors, chosen):
    pairs = [(color, -1 if node == chosen else 0) for node, color in enumerate(colors)]
    ranking = {pair: rank for rank, pair in enumerate(sorted(set(pairs)))}
    return [ranking[pair] for pair in pairs]


def _search(colors, adjacency, vertex_total, best):
    colors = _refine(colors, adjacency)
    sizes = Counter(colors)
    target = min((color for color, size in sizes.items() if size > 1), default=None)
    if target is None:
        certificate = tuple(sorted(
            tuple(sorted(colors[v] for v in adjacency[node]))
            for node in range(vertex_total, len(colors))
        ))
        if best is None or certificate < best:
            return certificate
        return best
    for node in [node for node, color in enumerate(colors) if color == target]:
        best = _search(_individualize(colors, node), adjacency, vertex_total, best)
    return best


def permutation_code(g):
    """Brute-force minimum over all vertex relabelings; small graphs only."""
    limit = settings.CANONICAL_BRUTE_FORCE_LIMIT
    if g.vertex_count > limit:
        raise HypergraphError(
            f'Permutation search refused for {g.vertex_count} vertices (limit {limit})'
        )
    best = None
    for perm in itertools.permutations(range(g.vertex_count)):
        relabeled = tuple(sorted(tuple(sorted(perm[v] for v in edge)) for edge in g.edges))
        if best is None or relabeled < best:
            best = relabeled
    return g.vertex_count, best
