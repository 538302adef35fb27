import logging
from dataclasses import dataclass, field
from enum import Enum

from django.conf import settings

logger = logging.getLogger(__name__)


class Verdict(str, Enum):
    PASS = 'pass'
    FAIL = 'fail'
    VACUOUS = 'vacuous'


@dataclass
class CheckReport:
    """Outcome of one check; composite checks nest their parts in ``checks``."""

    name: str
    verdict: Verdict
    max_residual: float = 0.0
    detail: str = ''
    data: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)

    @property
    def passed(self):
        return self.verdict == Verdict.PASS

    @property
    def failed(self):
        return self.verdict == Verdict.FAIL

    @classmethod
    def combine(cls, name, checks, detail='', data=None):
        """FAIL if any part fails, VACUOUS if every part is vacuous, PASS otherwise."""
        checks = list(checks)
        if any(check.failed for check in checks):
            verdict = Verdict.FAIL
        elif all(check.verdict == Verdict.VACUOUS for check in checks):
            verdict = Verdict.VACUOUS
        else:
            verdict = Verdict.PASS
        worst = max((check.max_residual for check in checks), default=0.0)
        report = cls(name, verdict, worst, detail, data or {}, checks)
        report.log()
        return report

    @classmethod
    def from_residuals(cls, name, residuals, bound, detail=''):
        """``residuals`` is a list of (label, residual); PASS when the worst is within ``bound``."""
        if not residuals:
            return cls(name, Verdict.VACUOUS, 0.0, detail or 'no instances to check')
        label, worst = max(residuals, key=lambda item: item[1])
        verdict = Verdict.PASS if worst <= bound else Verdict.FAIL
        data = {'count': len(residuals), 'bound': bound, 'worst_at': str(label)}
        return cls(name, verdict, float(worst), detail, data)

    @classmethod
    def from_conditions(cls, name, conditions, detail=''):
        """``conditions`` is a list of (label, ok); PASS when every condition holds."""
        if not conditions:
            return cls(name, Verdict.VACUOUS, 0.0, detail or 'no instances to check')
        failing = [str(label) for label, ok in conditions if not ok]
        verdict = Verdict.FAIL if failing else Verdict.PASS
        return cls(name, verdict, 0.0, detail, {'count': len(conditions), 'failing': failing[:20]})

    def log(self):
        if self.verdict == Verdict.FAIL:
            logger.error(f'{self.name}: FAIL (max residual {self.max_residual:.3e}) {self.detail}')
        elif self.verdict == Verdict.VACUOUS:
            logger.warning(f'{self.name}: vacuous {self.detail}')
        else:
            logger.info(f'{self.name}: pass (max residual {self.max_residual:.3e})')


@dataclass(frozen=True)
class SignRule:
    """
    Three-way sign with an explicit indeterminate band.

    ``value`` is positive above ``gap * scale``, zero within
    ``zero_band * scale``, and indeterminate (None) in between.
    """

    scale: float = 1.0
    gap: float = None
    zero_band: float = None

    def __post_init__(self):
        if self.gap is None:
            object.__setattr__(self, 'gap', settings.STRICT_GAP)
        if self.zero_band is None:
            object.__setattr__(self, 'zero_band', settings.ZERO_BAND)

    def sign(self, value):
        if value > self.gap * self.scale:
            return 1
        if value < -self.gap * self.scale:
            return -1
        if abs(value) <= self.zero_band * self.scale:
            return 0
        return None

    def positive(self, value):
        return self.sign(value) == 1

    def negative(self, value):
        return self.sign(value) == -1

    def zero(self, value):
        return self.sign(value) == 0

    def increasing(self, values):
        """Strictly increasing chain: every consecutive difference positive."""
        return all(self.positive(b - a) for a, b in zip(values, values[1:]))
