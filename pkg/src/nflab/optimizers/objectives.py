"""A small catalog of benchmark objectives with known optima."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np


@dataclass(frozen=True)
class Objective:
    """A pure evaluation function plus the metadata needed to test against it."""

    name: str
    fn: Callable
    mode: str  # "min" or "max"
    optimum_value: float
    dimensions: Optional[int] = None  # continuous objectives
    length: Optional[int] = None  # bitstring objectives
    bounds: Optional[tuple] = None

    def __call__(self, x):
        return self.fn(x)


def sphere(x) -> float:
    """Sum of squares; global minimum 0 at the origin."""
    v = np.asarray(x, dtype=float)
    return float(np.sum(v * v))


def onemax(bits) -> float:
    """Number of one-bits; accepts '1011', [1, 0, 1, 1], or an int array."""
    return float(sum(int(b) for b in bits))


def needle(x, nx: int) -> float:
    """1 at point 0, 0 everywhere else on {0, ..., nx-1}."""
    if not 0 <= int(x) < nx:
        raise ValueError(f"point {x} outside domain of size {nx}")
    return 1.0 if int(x) == 0 else 0.0


def objective_catalog(name: str) -> Objective:
    """Look up an objective by a parameterized name.

    Supported names: "sphere-D" (D-dimensional sum of squares, minimize),
    "onemax-L" (L-bit count, maximize), "needle-N" (needle in a haystack of
    N points, maximize).
    """
    head, _, arg = name.partition("-")
    if not arg or not arg.isdigit() or int(arg) < 1:
        raise ValueError(f"unknown objective {name!r}; expected e.g. sphere-2, onemax-4, needle-5")
    size = int(arg)
    if head == "sphere":
        return Objective(name, sphere, "min", 0.0, dimensions=size,
                         bounds=tuple((-5.0, 5.0) for _ in range(size)))
    if head == "onemax":
        return Objective(name, onemax, "max", float(size), length=size)
    if head == "needle":
        return Objective(name, lambda x: needle(x, size), "max", 1.0, dimensions=1,
                         bounds=((0.0, float(size - 1)),))
    raise ValueError(f"unknown objective {name!r}; expected e.g. sphere-2, onemax-4, needle-5")
