import logging

import numpy as np
from django.conf import settings
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import shortest_path

from apps.hypercore.exceptions import DisconnectedHypergraphError
from apps.hypercore.services import HypergraphService

from .exceptions import PerronConvergenceError, SpectralError
from .structures import DistanceMatrix, SpectralResult

logger = logging.getLogger(__name__)

UNIT_NORM_TOLERANCE = 1e-9


class SpectralService:
    """Distance matrices, the distance spectral radius and its Perron vector"""

    @staticmethod
    def distance_matrix(g):
        components = HypergraphService.components(g)
        if len(components) != 1:
            raise DisconnectedHypergraphError(components)

        rows, cols = [], []
        for edge in g.edges:
            for u in edge:
                for v in edge:
                    if u != v:
                        rows.append(u)
                        cols.append(v)
        n = g.vertex_count
        adjacency = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n)).tocsr()
        adjacency.sum_duplicates()
        distances = shortest_path(adjacency, method='D', directed=False, unweighted=True)
        return DistanceMatrix(g, distances.astype(np.int64))

    @staticmethod
    def perron(dm, tol=None, max_iter=None):
        """Power iteration on D + I from the all-ones vector; returns ρ(D) and x."""
        tol = settings.SPECTRAL_TOLERANCE if tol is None else tol
        max_iter = settings.SPECTRAL_MAX_ITER if max_iter is None else max_iter
        n = dm.n
        if n < 2:
            raise SpectralError(f'Perron vector needs at least 2 vertices, got {n}')

        d = dm.d.astype(float)
        x = np.full(n, 1.0 / np.sqrt(n))
        previous = None
        rho, residual = 0.0, np.inf
        for iteration in range(1, max_iter + 1):
            z = d @ x
            rho = float(x @ z)
            residual = float(np.max(np.abs(z - rho * x)))
            if previous is not None and abs(rho - previous) < tol * rho and residual <= tol * rho:
                logger.debug(f'Perron iteration converged after {iteration} steps, rho={rho:.12g}')
                return SpectralResult(rho, x, residual, iteration)
            previous = rho
            shifted = z + x
            x = shifted / np.linalg.norm(shifted)

        last = SpectralResult(rho, x, residual, max_iter, converged=False)
        raise PerronConvergenceError(
            f'Power iteration did not converge in {max_iter} steps '
            f'(rho={rho:.12g}, residual={residual:.3e})',
            last,
        )

    @classmethod
    def analyze(cls, g, tol=None, max_iter=None):
        dm = cls.distance_matrix(g)
        return dm, cls.perron(dm, tol, max_iter)

    @classmethod
    def spectral_radius(cls, g, tol=None, max_iter=None):
        return cls.analyze(g, tol, max_iter)[1].rho

    @staticmethod
    def rayleigh(dm, x):
        x = np.asarray(x, dtype=float)
        if x.shape != (dm.n,):
            raise SpectralError(f'Vector of shape {x.shape} does not match order {dm.n}')
        norm = float(np.linalg.norm(x))
        if abs(norm - 1.0) > UNIT_NORM_TOLERANCE:
            raise SpectralError(f'Rayleigh quotient needs a unit vector, got norm {norm:.12g}')
        return float(x @ dm.d @ x)

    @staticmethod
    def rayleigh_difference(x, dm1, dm2):
        """½ xᵀ(D₂ − D₁)x over a shared vertex numbering."""
        if dm1.n != dm2.n:
            raise SpectralError(f'Distance matrices differ in order: {dm1.n} vs {dm2.n}')
        x = np.asarray(x, dtype=float)
        if x.shape != (dm1.n,):
            raise SpectralError(f'Vector of shape {x.shape} does not match order {dm1.n}')
        return 0.5 * float(x @ (dm2.d - dm1.d) @ x)
