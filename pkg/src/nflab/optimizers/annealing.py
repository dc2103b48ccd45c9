"""Simulated annealing under the logarithmic cooling schedule.

Accepts every improving candidate and a worsening one with probability
exp(-delta / T_k), where T_k = a / log(k + 1) decreases to zero slowly
enough for the classic convergence guarantees.  Per iteration the draw
order is: one neighbor proposal, then one acceptance uniform only if the
candidate is worse.
"""

from __future__ import annotations

import math

import numpy as np

from ..markov import sa_temperature
from .record import RunRecord


def sa_run(objective, neighbor_fn, x0, a: float, iters: int,
           seed=None, rng=None) -> RunRecord:
    """Minimize `objective` from `x0` with Metropolis acceptance.

    Parameters
    ----------
    objective : callable state -> float
    neighbor_fn : callable (state, rng) -> state, the proposal move
    x0 : initial state
    a : cooling constant; the temperature at iteration k is a / log(k + 1)
    iters : number of iterations, >= 1
    seed, rng : pass one of them; `rng` takes precedence and allows test stubs
    """
    if iters < 1:
        raise ValueError(f"iters must be >= 1, got {iters}")
    if a <= 0:
        raise ValueError(f"a must be > 0, got {a}")
    if rng is None:
        rng = np.random.default_rng(seed)
    x = x0
    fx = float(objective(x))
    best_x, best_f = x, fx
    evaluations = 1
    best_so_far = []
    for k in range(1, iters + 1):
        t = sa_temperature(a, k)
        cand = neighbor_fn(x, rng)
        fc = float(objective(cand))
        evaluations += 1
        delta = fc - fx
        if delta <= 0 or rng.random() < math.exp(-delta / t):
            x, fx = cand, fc
            if fx < best_f:
                best_x, best_f = x, fx
        best_so_far.append(best_f)
    return RunRecord(
        seed=seed,
        mode="min",
        best_so_far=best_so_far,
        best_solution=best_x,
        best_value=best_f,
        evaluations=evaluations,
    )
