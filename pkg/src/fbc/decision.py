"""Three-valued answers from bounded searches, and search budgets."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any


class Verdict(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Decision:
    """``YES`` always carries an exactly verified certificate; ``NO`` only comes
    from exact procedures; ``UNKNOWN`` records the budget that was spent."""

    verdict: Verdict
    certificate: Any = None
    spent: Any = None

    @classmethod
    def yes(cls, certificate) -> "Decision":
        return cls(Verdict.YES, certificate)

    @classmethod
    def no(cls) -> "Decision":
        return cls(Verdict.NO)

    @classmethod
    def unknown(cls, spent=None) -> "Decision":
        return cls(Verdict.UNKNOWN, None, spent)

    @property
    def is_yes(self) -> bool:
        return self.verdict is Verdict.YES

    @property
    def is_no(self) -> bool:
        return self.verdict is Verdict.NO

    @property
    def is_unknown(self) -> bool:
        return self.verdict is Verdict.UNKNOWN


@dataclass(frozen=True)
class Budget:
    radius: int = 6   # conjugator ball radius in F_n
    kmax: int = 12    # range of phi exponents scanned

    def __post_init__(self):
        if self.radius < 0 or self.kmax < 0:
            raise ValueError("budget values must be non-negative")


DEFAULT_BUDGET = Budget()
