"""Run all four seeded optimizers and show their best-so-far curves.

PSO and the firefly algorithm minimize the 2-D sphere, simulated annealing
walks a 1-D lattice, and the GA maximizes OneMax; every run is reproducible
from its seed.

Run: python demos/metaheuristics.py
"""

import numpy as np

from nflab.optimizers import (
    FaConfig,
    GaConfig,
    PsoConfig,
    fa_run,
    ga_run,
    onemax,
    pso_run,
    sa_run,
    sphere,
)


def show(label, record, marks=(0, 4, 19, -1)):
    picks = " -> ".join(f"{record.best_so_far[i]:.4g}" for i in marks)
    print(f"  {label:<26} best 1/5/20/final: {picks}")


BOUNDS = ((-5.0, 5.0), (-5.0, 5.0))

print("PSO on sphere-2 (inertia damping vs none), 60 iterations, seed 7:")
show("theta = 1 (plain)", pso_run(sphere, PsoConfig(
    alpha=2.0, beta=2.0, swarm_size=15, dimensions=2, bounds=BOUNDS), 60, seed=7))
show("linear inertia 0.9->0.4", pso_run(sphere, PsoConfig(
    alpha=2.0, beta=2.0, swarm_size=15, dimensions=2, bounds=BOUNDS,
    inertia_mode="linear", theta_hi=0.9, theta_lo=0.4), 60, seed=7))

print("\nFirefly algorithm on sphere-2, 60 iterations, seed 7:")
show("beta0 = 1, alpha = 0.05", fa_run(sphere, FaConfig(
    beta0=1.0, gamma=1.0, alpha=0.05, population=12, dimensions=2,
    bounds=BOUNDS), 60, seed=7))
show("beta0 decaying 1 -> 0.2", fa_run(sphere, FaConfig(
    beta0=1.0, beta0_final=0.2, gamma=1.0, alpha=0.05, population=12,
    dimensions=2, bounds=BOUNDS), 60, seed=7))

print("\nSimulated annealing on |x| over the integers, 400 iterations:")
walk = lambda x, rng: x + (1 if rng.random() < 0.5 else -1)
show("slow cooling (A = 4)", sa_run(abs, walk, 25, a=4.0, iters=400, seed=3))
show("near-greedy (A = 1e-9)", sa_run(abs, walk, 25, a=1e-9, iters=400, seed=3))

print("\nGA on OneMax with 12 bits, 80 generations, seed 5:")
show("elitism on, mu = 0.05", ga_run(onemax, GaConfig(
    length=12, population=16, mutation_rate=0.05, elitism=True), 80, seed=5))
show("elitism off, mu = 0.05", ga_run(onemax, GaConfig(
    length=12, population=16, mutation_rate=0.05, elitism=False), 80, seed=5))

print("\nsame seed, same curve (byte-for-byte):")
a = pso_run(sphere, PsoConfig(dimensions=2, bounds=BOUNDS), 30, seed=11)
b = pso_run(sphere, PsoConfig(dimensions=2, bounds=BOUNDS), 30, seed=11)
print(f"  identical best-so-far series: {a.best_so_far == b.best_so_far}")
print(f"  identical final solutions:   {np.array_equal(a.best_solution, b.best_solution)}")
