"""Particle swarm optimization with the optional inertia-weight variant.

Velocity update per particle i:

    v <- theta * v + alpha * e1 * (gbest - x) + beta * e2 * (pbest_i - x)
    x <- clip(x + v, bounds)

with e1, e2 drawn entrywise uniform on [0, 1], e1 before e2, particles in
index order.  Minimization throughout; argmin ties break to the lowest
particle index.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .record import RunRecord


@dataclass(frozen=True)
class PsoConfig:
    """Swarm parameters.  alpha couples to the global best, beta to the
    personal best; theta is the inertia weight (1 recovers the plain update)."""

    alpha: float = 2.0
    beta: float = 2.0
    swarm_size: int = 20
    dimensions: int = 2
    bounds: tuple = ((-5.0, 5.0), (-5.0, 5.0))
    inertia_mode: str = "constant"  # or "linear"
    theta: float = 1.0
    theta_hi: float = 0.9
    theta_lo: float = 0.4

    def __post_init__(self):
        if self.alpha < 0 or self.beta < 0:
            raise ValueError("alpha and beta must be >= 0")
        if self.swarm_size < 1 or self.dimensions < 1:
            raise ValueError("swarm_size and dimensions must be >= 1")
        if len(self.bounds) != self.dimensions:
            raise ValueError(f"need {self.dimensions} bound pairs, got {len(self.bounds)}")
        if any(lo >= hi for lo, hi in self.bounds):
            raise ValueError("each bound must satisfy lo < hi")
        if self.inertia_mode not in ("constant", "linear"):
            raise ValueError(f"unknown inertia_mode {self.inertia_mode!r}")
        for name, v in (("theta", self.theta), ("theta_hi", self.theta_hi),
                        ("theta_lo", self.theta_lo)):
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")

    def theta_at(self, t: int, total: int) -> float:
        """Inertia weight at iteration t of `total` (linear decay hi -> lo)."""
        if self.inertia_mode == "constant":
            return self.theta
        frac = t / max(total - 1, 1)
        return self.theta_hi + (self.theta_lo - self.theta_hi) * frac


@dataclass(frozen=True)
class PsoState:
    """Positions, velocities, and bests of the swarm at one iteration."""

    positions: np.ndarray  # (n, d)
    velocities: np.ndarray
    pbest_positions: np.ndarray
    pbest_values: np.ndarray  # (n,)
    gbest_position: np.ndarray  # (d,)
    gbest_value: float
    iteration: int = 0


def _lower_upper(config):
    b = np.asarray(config.bounds, dtype=float)
    return b[:, 0], b[:, 1]


def init_pso(objective, config: PsoConfig, rng) -> PsoState:
    """Draw initial positions uniformly inside the bounds; velocities start at 0."""
    lo, hi = _lower_upper(config)
    positions = rng.uniform(lo, hi, size=(config.swarm_size, config.dimensions))
    values = np.array([objective(x) for x in positions])
    best = int(np.argmin(values))
    return PsoState(
        positions=positions,
        velocities=np.zeros_like(positions),
        pbest_positions=positions.copy(),
        pbest_values=values,
        gbest_position=positions[best].copy(),
        gbest_value=float(values[best]),
        iteration=0,
    )


def pso_step(state: PsoState, config: PsoConfig, objective, rng,
             theta: Optional[float] = None) -> PsoState:
    """Advance the swarm one iteration and refresh both levels of bests.

    `theta` overrides the inertia weight for this step; runs with linear
    decay pass it explicitly, otherwise the config's constant applies.
    Positions leaving the box are clamped to it.
    """
    if theta is None:
        if config.inertia_mode != "constant":
            raise ValueError("linear inertia needs an explicit theta; pso_run supplies it")
        theta = config.theta
    lo, hi = _lower_upper(config)
    positions = state.positions.copy()
    velocities = state.velocities.copy()
    pbest_pos = state.pbest_positions.copy()
    pbest_val = state.pbest_values.copy()
    for i in range(config.swarm_size):
        e1 = rng.random(config.dimensions)
        e2 = rng.random(config.dimensions)
        v = (theta * velocities[i]
             + config.alpha * e1 * (state.gbest_position - positions[i])
             + config.beta * e2 * (pbest_pos[i] - positions[i]))
        x = np.clip(positions[i] + v, lo, hi)
        velocities[i] = v
        positions[i] = x
        value = objective(x)
        if value < pbest_val[i]:
            pbest_val[i] = value
            pbest_pos[i] = x.copy()
    best = int(np.argmin(pbest_val))
    return PsoState(
        positions=positions,
        velocities=velocities,
        pbest_positions=pbest_pos,
        pbest_values=pbest_val,
        gbest_position=pbest_pos[best].copy(),
        gbest_value=float(pbest_val[best]),
        iteration=state.iteration + 1,
    )


def pso_run(objective, config: PsoConfig, iters: int, seed: int) -> RunRecord:
    """Run a seeded swarm for `iters` iterations and record the best-so-far curve."""
    if iters < 1:
        raise ValueError(f"iters must be >= 1, got {iters}")
    rng = np.random.default_rng(seed)
    state = init_pso(objective, config, rng)
    best_so_far = []
    for t in range(iters):
        state = pso_step(state, config, objective, rng,
                         theta=config.theta_at(t, iters))
        best_so_far.append(state.gbest_value)
    return RunRecord(
        seed=seed,
        mode="min",
        best_so_far=best_so_far,
        best_solution=state.gbest_position.copy(),
        best_value=state.gbest_value,
        evaluations=config.swarm_size * (iters + 1),
    )
