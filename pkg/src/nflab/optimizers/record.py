"""Seeded run records shared by all optimizers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional


@dataclass(frozen=True)
class RunRecord:
    """Output of one seeded optimizer run.

    best_so_far holds one entry per iteration (the running best including
    the initial population) and is monotone in the declared direction:
    non-increasing for mode "min", non-decreasing for mode "max".
    """

    seed: Optional[int]
    mode: str  # "min" or "max"
    best_so_far: list = field(default_factory=list)
    best_solution: Any = None
    best_value: float = float("nan")
    evaluations: int = 0

    def __post_init__(self):
        if self.mode not in ("min", "max"):
            raise ValueError(f"mode must be 'min' or 'max', got {self.mode!r}")
