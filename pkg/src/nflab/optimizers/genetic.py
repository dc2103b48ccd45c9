"""Bitstring genetic algorithm: tournament selection, per-bit mutation,
optional single-elite copy, and one-point crossover behind a flag.

Fitness is maximized.  Per offspring the draw order is: tournament indices
(one call), a second tournament plus the cut point when crossover is on,
then one uniform vector of length L for the mutation mask.  The elite, when
enabled, is copied first and consumes no draws.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .record import RunRecord


@dataclass(frozen=True)
class GaConfig:
    length: int  # bits per individual
    population: int
    mutation_rate: float
    elitism: bool = True
    tournament: int = 2
    crossover: bool = False  # one-point, off by default

    def __post_init__(self):
        if self.length < 1:
            raise ValueError(f"length must be >= 1, got {self.length}")
        if self.population < 1:
            raise ValueError(f"population must be >= 1, got {self.population}")
        if not 0.0 <= self.mutation_rate <= 1.0:
            raise ValueError(f"mutation_rate must lie in [0, 1], got {self.mutation_rate}")
        if self.tournament < 1:
            raise ValueError(f"tournament size must be >= 1, got {self.tournament}")
        if self.crossover and self.length < 2:
            raise ValueError("one-point crossover needs length >= 2")


def _tournament_pick(fits, config, rng) -> int:
    idx = rng.integers(0, len(fits), size=config.tournament)
    # Highest fitness wins; ties break to the lowest population index.
    return min((-fits[i], i) for i in idx)[1]


def ga_step(population: np.ndarray, config: GaConfig, fitness, rng) -> np.ndarray:
    """Produce the next generation; population size is preserved.

    With elitism the single best individual (ties to the lowest index) is
    copied unchanged into slot 0.  Every other slot is filled by tournament
    selection, optional one-point crossover, and per-bit mutation with
    probability mutation_rate.
    """
    pop = np.asarray(population, dtype=np.uint8)
    n, length = config.population, config.length
    if pop.shape != (n, length):
        raise ValueError(f"expected population of shape {(n, length)}, got {pop.shape}")
    fits = np.array([fitness(ind) for ind in pop])
    children = []
    if config.elitism:
        children.append(pop[int(np.argmax(fits))].copy())
    while len(children) < n:
        child = pop[_tournament_pick(fits, config, rng)].copy()
        if config.crossover:
            other = pop[_tournament_pick(fits, config, rng)]
            cut = int(rng.integers(1, length))
            child[cut:] = other[cut:]
        flips = rng.random(length) < config.mutation_rate
        child[flips] ^= 1
        children.append(child)
    return np.array(children, dtype=np.uint8)


def ga_run(fitness, config: GaConfig, generations: int, seed: int,
           target: Optional[float] = None) -> RunRecord:
    """Run a seeded GA and record the best-so-far fitness per generation.

    The initial population is uniform random bits; its best seeds the
    running maximum, and each generation appends one entry.  A `target`
    fitness stops the run early once the running best reaches it, leaving
    best_so_far shorter than `generations`.
    """
    if generations < 1:
        raise ValueError(f"generations must be >= 1, got {generations}")
    rng = np.random.default_rng(seed)
    pop = rng.integers(0, 2, size=(config.population, config.length), dtype=np.uint8)
    fits = np.array([fitness(ind) for ind in pop])
    i = int(np.argmax(fits))
    best_f = float(fits[i])
    best_ind = pop[i].copy()
    evaluations = config.population
    best_so_far = []
    for _ in range(generations):
        if target is not None and best_f >= target:
            break
        pop = ga_step(pop, config, fitness, rng)
        evaluations += config.population
        fits = np.array([fitness(ind) for ind in pop])
        evaluations += config.population
        i = int(np.argmax(fits))
        if fits[i] > best_f:
            best_f = float(fits[i])
            best_ind = pop[i].copy()
        best_so_far.append(best_f)
    return RunRecord(
        seed=seed,
        mode="max",
        best_so_far=best_so_far,
        best_solution=best_ind,
        best_value=best_f,
        evaluations=evaluations,
    )
