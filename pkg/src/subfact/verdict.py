"""Outcome of a bounded condition check."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class SearchBound:
    """Coordinate radius B (|v_i| <= B) and exponent cap K."""

    B: int = 12
    K: int = 6

    def __post_init__(self):
        if self.B < 1:
            raise ValueError("B must be >= 1")
        if self.K < 2:
            raise ValueError("K must be >= 2")

    def to_dict(self):
        return {"B": self.B, "K": self.K}


HOLDS = "holds"
FAILS = "fails"
HYPOTHESIS_VIOLATED = "hypothesis_violated"


@dataclass(frozen=True)
class Verdict:
    outcome: str
    bound: SearchBound
    witness: tuple | None = None
    reason: str | None = None
    condition: str | None = None
    note: str | None = None

    @classmethod
    def holds(cls, bound, condition=None, note=None):
        return cls(HOLDS, bound, condition=condition, note=note)

    @classmethod
    def fails(cls, bound, witness, condition=None, reason=None):
        return cls(FAILS, bound, witness=tuple(witness), condition=condition, reason=reason)

    @classmethod
    def violated(cls, bound, reason, condition=None):
        return cls(HYPOTHESIS_VIOLATED, bound, reason=reason, condition=condition)

    @property
    def ok(self) -> bool:
        return self.outcome == HOLDS

    @property
    def failed(self) -> bool:
        return self.outcome == FAILS

    def named(self, condition: str) -> "Verdict":
        return Verdict(self.outcome, self.bound, self.witness, self.reason, condition, self.note)

    def to_dict(self) -> dict[str, Any]:
        out = {
            "condition": self.condition,
            "outcome": self.outcome,
            "bound": self.bound.to_dict(),
            "witness": _jsonable(self.witness),
            "reason": self.reason,
        }
        if self.note:
            out["note"] = self.note
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "Verdict":
        w = d.get("witness")
        return cls(
            d["outcome"],
            SearchBound(**d["bound"]),
            witness=_from_jsonable(w) if w is not None else None,
            reason=d.get("reason"),
            condition=d.get("condition"),
            note=d.get("note"),
        )

    def __str__(self):
        head = f"{self.condition or '?'}: {self.outcome}"
        if self.witness is not None:
            head += f" witness={self.witness}"
        if self.reason:
            head += f" ({self.reason})"
        return head


def _jsonable(w):
    if w is None:
        return None
    if isinstance(w, (tuple, list)):
        return [_jsonable(x) for x in w]
    return w


def _from_jsonable(w):
    if isinstance(w, list):
        return tuple(_from_jsonable(x) for x in w)
    return w
