"""Evaluation results shared by the quantum and classical evaluators."""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping


@dataclass(frozen=True, eq=False)
class EvaluationResult:
    """Per-(input, index) success probabilities and their worst case.

    Keys are (x, i) with x the input bit string and i the 1-based index of the
    bit Bob is asked for.  p_min is the minimum entry.
    """

    success: Mapping[tuple[str, int], float]
    p_min: float = field(init=False)

    def __post_init__(self):
        if not self.success:
            raise ValueError("success table must not be empty")
        table = {}
        for (x, i), p in self.success.items():
            p = float(p)
            if not -1e-12 <= p <= 1.0 + 1e-12:
                raise ValueError(f"success probability {p} for ({x}, {i}) out of range")
            table[(str(x), int(i))] = min(max(p, 0.0), 1.0)
        object.__setattr__(self, "success", MappingProxyType(table))
        object.__setattr__(self, "p_min", min(table.values()))

    def rows(self) -> list[tuple[str, int, float]]:
        """(x, i, probability) rows in input-then-index order."""
        return [(x, i, p) for (x, i), p in sorted(self.success.items())]

    def to_json_dict(self) -> dict:
        return {
            "success": {f"{x}:{i}": p for (x, i), p in sorted(self.success.items())},
            "p_min": self.p_min,
        }
