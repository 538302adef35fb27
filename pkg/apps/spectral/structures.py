from dataclasses import dataclass

import numpy as np

from apps.hypercore.hypergraph import Hypergraph


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    graph: Hypergraph
    d: np.ndarray

    @property
    def n(self):
        return self.d.shape[0]

    def distance(self, u, v):
        return int(self.d[u, v])

    @property
    def row_sums(self):
        return self.d.sum(axis=1)


@dataclass(frozen=True, eq=False)
class SpectralResult:
    """ρ and the positive unit Perron vector x of a distance matrix."""

    rho: float
    x: np.ndarray
    residual: float
    iterations: int
    converged: bool = True

    def sigma(self, vertices):
        return float(self.x[sorted(vertices)].sum()) if vertices else 0.0

    def total(self):
        return float(self.x.sum())


@dataclass(frozen=True)
class StarPair:
    """Two hyperstars of equal size: pendant edge indices at centers u1 and u2."""

    u1: int
    edges1: tuple
    u2: int
    edges2: tuple


class Accumulators:
    """σ, W, W_0 and WD sums over a fixed weight vector."""

    def __init__(self, dm, x):
        self.dm = dm
        self.x = np.asarray(x, dtype=float)

    @staticmethod
    def _index(vertices):
        return np.fromiter(sorted(vertices), dtype=int, count=len(vertices))

    def sigma(self, vertices):
        if not vertices:
            return 0.0
        return float(self.x[self._index(vertices)].sum())

    def W(self, vertices, v):
        if not vertices:
            return 0.0
        index = self._index(vertices)
        return float(self.x[index] @ self.dm.d[index, v])

    def W0(self, vertices, v):
        if not vertices:
            return 0.0
        return float(self.dm.d[self._index(vertices), v].sum())

    def W_between(self, first, second):
        if not first or not second:
            return 0.0
        rows, cols = self._index(first), self._index(second)
        return float(self.x[rows] @ self.dm.d[np.ix_(rows, cols)].sum(axis=1))

    def WD(self, vertices, first, second):
        return self.W_between(vertices, first) - self.W_between(vertices, second)
