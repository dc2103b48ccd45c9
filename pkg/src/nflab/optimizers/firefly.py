"""Firefly algorithm: attraction-biased random walk toward brighter peers.

Each firefly i is pulled toward every firefly j that was brighter at the
start of the step (minimization: lower objective is brighter):

    x_i <- x_i + beta0 * exp(-gamma * r_ij^2) * (x_j - x_i) + alpha * eps

with r_ij the Euclidean distance.  Fireflies are scanned in index order with
the inner loop over j, moves applied immediately to x_i; one noise vector is
drawn per applied move, Gaussian or uniform on [-0.5, 0.5].  With beta0 = 0
the step is a plain random walk.  Positions are clamped to the bounds once
at the end of each step.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .record import RunRecord


@dataclass(frozen=True)
class FaConfig:
    beta0: float = 1.0  # attractiveness at distance 0
    gamma: float = 1.0  # absorption; sets the attraction length scale
    alpha: float = 0.2  # randomization strength
    population: int = 15
    dimensions: int = 2
    bounds: tuple = ((-5.0, 5.0), (-5.0, 5.0))
    noise: str = "gaussian"  # or "uniform"
    beta0_final: Optional[float] = None  # enables linear decay of beta0 over a run

    def __post_init__(self):
        if not 0.0 <= self.beta0 <= 1.0:
            raise ValueError(f"beta0 must lie in [0, 1], got {self.beta0}")
        if self.gamma <= 0:
            raise ValueError(f"gamma must be > 0, got {self.gamma}")
        if self.alpha < 0:
            raise ValueError(f"alpha must be >= 0, got {self.alpha}")
        if self.population < 2:
            raise ValueError(f"population must be >= 2, got {self.population}")
        if self.dimensions < 1:
            raise ValueError("dimensions must be >= 1")
        if len(self.bounds) != self.dimensions:
            raise ValueError(f"need {self.dimensions} bound pairs, got {len(self.bounds)}")
        if any(lo >= hi for lo, hi in self.bounds):
            raise ValueError("each bound must satisfy lo < hi")
        if self.noise not in ("gaussian", "uniform"):
            raise ValueError(f"unknown noise {self.noise!r}")
        if self.beta0_final is not None and not 0.0 <= self.beta0_final <= 1.0:
            raise ValueError(f"beta0_final must lie in [0, 1], got {self.beta0_final}")

    def beta0_at(self, t: int, total: int) -> float:
        """Attractiveness at iteration t; linear decay when beta0_final is set."""
        if self.beta0_final is None:
            return self.beta0
        frac = t / max(total - 1, 1)
        return self.beta0 + (self.beta0_final - self.beta0) * frac


def _draw_noise(config, rng):
    if config.noise == "gaussian":
        return rng.standard_normal(config.dimensions)
    return rng.uniform(-0.5, 0.5, config.dimensions)


def fa_step(positions: np.ndarray, config: FaConfig, objective, rng,
            beta0: Optional[float] = None) -> np.ndarray:
    """Advance every firefly one step and return the new positions.

    Brightness is fixed at the start of the step (one evaluation per
    firefly); positions mutate immediately as moves apply, so later moves
    see current coordinates.  `beta0` overrides the config's attractiveness
    for this step, which run loops use for the optional decay schedule.
    """
    if beta0 is None:
        beta0 = config.beta0
    values = np.array([objective(x) for x in positions])
    pos = np.array(positions, dtype=float, copy=True)
    n = config.population
    if pos.shape != (n, config.dimensions):
        raise ValueError(f"expected positions of shape {(n, config.dimensions)}, got {pos.shape}")
    for i in range(n):
        for j in range(n):
            if values[j] < values[i]:
                diff = pos[j] - pos[i]
                r2 = float(np.dot(pos[i] - pos[j], pos[i] - pos[j]))
                attract = beta0 * np.exp(-config.gamma * r2)
                pos[i] = pos[i] + attract * diff + config.alpha * _draw_noise(config, rng)
    b = np.asarray(config.bounds, dtype=float)
    return np.clip(pos, b[:, 0], b[:, 1])


def fa_run(objective, config: FaConfig, iters: int, seed: int) -> RunRecord:
    """Run a seeded firefly swarm and record the best-so-far curve (minimization)."""
    if iters < 1:
        raise ValueError(f"iters must be >= 1, got {iters}")
    rng = np.random.default_rng(seed)
    b = np.asarray(config.bounds, dtype=float)
    pos = rng.uniform(b[:, 0], b[:, 1], size=(config.population, config.dimensions))
    values = np.array([objective(x) for x in pos])
    best = int(np.argmin(values))
    best_value = float(values[best])
    best_solution = pos[best].copy()
    evaluations = config.population
    best_so_far = []
    for t in range(iters):
        pos = fa_step(pos, config, objective, rng, beta0=config.beta0_at(t, iters))
        evaluations += config.population
        values = np.array([objective(x) for x in pos])
        evaluations += config.population
        i = int(np.argmin(values))
        if values[i] < best_value:
            best_value = float(values[i])
            best_solution = pos[i].copy()
        best_so_far.append(best_value)
    return RunRecord(
        seed=seed,
        mode="min",
        best_so_far=best_so_far,
        best_solution=best_solution,
        best_value=best_value,
        evaluations=evaluations,
    )
