from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from .rules import ReconfSequence

INF = math.inf


class Answer(str, Enum):
    YES = "YES"
    NO = "NO"


@dataclass
class SolveResult:
    """Outcome of a solve.

    ``distance`` is an int for YES answers and ``math.inf`` for NO answers.
    ``shortest`` is False when the solver only guarantees reachability, in which
    case ``distance`` is the length of the witness, not the true distance.
    ``tar_k`` records the token addition/removal threshold that backed a token
    jumping or sliding answer.
    """

    answer: Answer
    distance: float | int
    sequence: ReconfSequence | None = None
    solver: str = ""
    shortest: bool = True
    reason: str | None = None
    tar_k: int | None = None
    stats: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if (self.answer is Answer.YES) == (self.distance == INF):
            raise ValueError("YES answers need a finite distance and NO answers an infinite one")
        if self.answer is Answer.NO and self.sequence is not None:
            raise ValueError("NO answers carry no sequence")

    @property
    def reachable(self) -> bool:
        return self.answer is Answer.YES

    @classmethod
    def no(cls, solver: str, reason: str | None = None, **kw: Any) -> SolveResult:
        return cls(Answer.NO, INF, None, solver=solver, reason=reason, **kw)

    def to_dict(self, with_sequence: bool = True) -> dict[str, Any]:
        out: dict[str, Any] = {
            "answer": self.answer.value,
            "distance": None if self.distance == INF else int(self.distance),
            "solver": self.solver,
            "shortest": self.shortest,
            "reason": self.reason,
            "tar_k": self.tar_k,
            "stats": self.stats,
        }
        if with_sequence and self.sequence is not None:
            out["sequence"] = [[v + 1 for v in sorted(c)] for c in self.sequence.cliques]
        return out
