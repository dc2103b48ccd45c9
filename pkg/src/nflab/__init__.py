"""nflab: finite-domain no-free-lunch experiments and metaheuristic
convergence analysis.

Four analysis areas plus a reproducible experiment harness:

- ``function_space``: enumerate every objective on a finite domain, run
  deterministic search policies, and compare their trace distributions.
- ``swarm_dynamics``: reduced particle-swarm linear dynamics, firefly and
  logistic maps, invariant densities, Beta/Gamma closed forms.
- ``optimizers``: PSO, firefly algorithm, simulated annealing, bitstring GA.
- ``markov``: regularity, stationary distributions, geometric mixing bound,
  GA iteration bound, logarithmic cooling schedule.
- ``harness``: seeded experiment runner emitting CSV/JSON artifacts.
"""

__version__ = "0.1.0"
