from dataclasses import dataclass, field

from apps.families.exceptions import FamilyParameterError
from apps.families.structures import CaterpillarParams

from .exceptions import ExtremalError


@dataclass(frozen=True)
class FamilyKey:
    """
    𝕋_k(m, Δ, n): k-uniform hypertrees with m edges whose maximum degree Δ
    is attained by exactly n vertices.

    Keys with no balanced caterpillar (m* < 1 or n >= m*) are allowed and
    predict an empty family.
    """

    k: int
    m: int
    delta: int
    n: int

    def __post_init__(self):
        if self.k < 2:
            raise ExtremalError(f'Family needs k >= 2, got {self.k}')
        if self.m < 1:
            raise ExtremalError(f'Family needs m >= 1, got {self.m}')
        if self.delta < 3:
            raise ExtremalError(f'Family needs delta >= 3, got {self.delta}')
        if self.n < 2:
            raise ExtremalError(f'Family needs n >= 2, got {self.n}')

    @property
    def m_star(self):
        return self.m - self.n * (self.delta - 2)

    def predicted_params(self):
        try:
            return CaterpillarParams.balanced(self.k, self.m_star, self.delta, self.n)
        except FamilyParameterError:
            return None

    def as_dict(self):
        return {'k': self.k, 'm': self.m, 'delta': self.delta, 'n': self.n, 'm_star': self.m_star}

    def __str__(self):
        return f'T_{self.k}({self.m},{self.delta},{self.n})'


@dataclass
class ExtremalReport:
    """Result of an exhaustive argmax; ``argmax`` and ``predicted`` hold canonical codes in hex."""

    family: FamilyKey = None
    population: int = 0
    candidates: int = 0
    argmax: list = field(default_factory=list)
    max_rho: float = None
    runner_up_rho: float = None
    predicted: str = None
    verdict: bool = False
    caterpillars_only: bool = False
    edge_degree_ok: bool = True

    @property
    def empty(self):
        return self.candidates == 0
