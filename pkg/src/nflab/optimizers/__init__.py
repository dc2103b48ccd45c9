"""Metaheuristic optimizers: PSO, firefly, simulated annealing, and a bitstring GA."""

from .annealing import sa_run
from .firefly import FaConfig, fa_run, fa_step
from .genetic import GaConfig, ga_run, ga_step
from .objectives import Objective, needle, objective_catalog, onemax, sphere
from .pso import PsoConfig, PsoState, init_pso, pso_run, pso_step
from .record import RunRecord

__all__ = [
    "FaConfig",
    "GaConfig",
    "Objective",
    "PsoConfig",
    "PsoState",
    "RunRecord",
    "fa_run",
    "fa_step",
    "ga_run",
    "ga_step",
    "init_pso",
    "needle",
    "objective_catalog",
    "onemax",
    "pso_run",
    "pso_step",
    "sa_run",
    "sphere",
]
