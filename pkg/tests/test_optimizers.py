"""Tests for the PSO, firefly, annealing, and GA implementations."""

import math

import numpy as np
import pytest

from nflab.optimizers import (
    FaConfig,
    GaConfig,
    PsoConfig,
    PsoState,
    RunRecord,
    fa_run,
    fa_step,
    ga_run,
    ga_step,
    init_pso,
    needle,
    objective_catalog,
    onemax,
    pso_run,
    pso_step,
    sa_run,
    sphere,
)


class OnesRng:
    """Test hook pinning every uniform draw to 1.0."""

    def random(self, size=None):
        return np.ones(size) if size is not None else 1.0


def _state_1d(x, v, pbest, gbest):
    return PsoState(
        positions=np.array([[float(x)]]),
        velocities=np.array([[float(v)]]),
        pbest_positions=np.array([[float(pbest)]]),
        pbest_values=np.array([sphere([pbest])]),
        gbest_position=np.array([float(gbest)]),
        gbest_value=sphere([gbest]),
    )


# ---------------------------------------------------------------------------
# PSO
# ---------------------------------------------------------------------------

def test_pso_step_hand_example():
    # one particle at 0 with v=1, global best 5, personal best 3, both
    # acceleration constants 1 and pinned draws: v' = 1 + 5 + 3 = 9
    config = PsoConfig(alpha=1.0, beta=1.0, swarm_size=1, dimensions=1,
                       bounds=((-10.0, 10.0),))
    state = _state_1d(x=0, v=1, pbest=3, gbest=5)
    out = pso_step(state, config, sphere, OnesRng())
    assert out.velocities[0, 0] == 9.0
    assert out.positions[0, 0] == 9.0


def test_pso_step_inertia_hand_example():
    config = PsoConfig(alpha=1.0, beta=1.0, swarm_size=1, dimensions=1,
                       bounds=((-10.0, 10.0),))
    state = _state_1d(x=0, v=1, pbest=3, gbest=5)
    out = pso_step(state, config, sphere, OnesRng(), theta=0.5)
    assert out.velocities[0, 0] == 8.5
    assert out.positions[0, 0] == 8.5


def test_pso_step_zero_acceleration_is_drift():
    config = PsoConfig(alpha=0.0, beta=0.0, swarm_size=1, dimensions=1,
                       bounds=((-10.0, 10.0),), theta=1.0)
    state = _state_1d(x=0, v=1, pbest=0, gbest=0)
    rng = np.random.default_rng(0)
    for step in range(1, 4):
        state = pso_step(state, config, sphere, rng)
        assert state.velocities[0, 0] == 1.0
        assert state.positions[0, 0] == float(step)


def test_pso_gbest_consistency_and_bounds():
    config = PsoConfig(swarm_size=8, dimensions=2, bounds=((-3.0, 3.0), (-3.0, 3.0)))
    rng = np.random.default_rng(42)
    state = init_pso(sphere, config, rng)
    for _ in range(25):
        state = pso_step(state, config, sphere, rng)
        assert state.gbest_value == float(np.min(state.pbest_values))
        assert np.all(state.positions >= -3.0) and np.all(state.positions <= 3.0)
        # personal bests never exceed the current position's value
        for i in range(8):
            assert state.pbest_values[i] <= sphere(state.positions[i]) + 1e-12


def test_pso_run_seed_determinism():
    config = PsoConfig(swarm_size=6, dimensions=2, bounds=((-5.0, 5.0), (-5.0, 5.0)))
    a = pso_run(sphere, config, 40, seed=7)
    b = pso_run(sphere, config, 40, seed=7)
    assert a.best_so_far == b.best_so_far
    assert np.array_equal(a.best_solution, b.best_solution)
    assert a.evaluations == b.evaluations == 6 * 41
    c = pso_run(sphere, config, 40, seed=8)
    assert c.best_so_far != a.best_so_far


def test_pso_run_monotone_and_converges():
    config = PsoConfig(alpha=1.5, beta=1.5, swarm_size=12, dimensions=2,
                       bounds=((-5.0, 5.0), (-5.0, 5.0)),
                       inertia_mode="linear", theta_hi=0.9, theta_lo=0.4)
    rec = pso_run(sphere, config, 60, seed=3)
    assert len(rec.best_so_far) == 60
    assert all(b <= a for a, b in zip(rec.best_so_far, rec.best_so_far[1:]))
    assert rec.best_value < 1e-2


def test_pso_config_validation():
    with pytest.raises(ValueError):
        PsoConfig(theta=1.5)
    with pytest.raises(ValueError):
        PsoConfig(alpha=-1.0)
    with pytest.raises(ValueError):
        PsoConfig(dimensions=2, bounds=((-1.0, 1.0),))
    with pytest.raises(ValueError):
        PsoConfig(inertia_mode="cubic")
    config = PsoConfig(inertia_mode="linear")
    with pytest.raises(ValueError, match="explicit theta"):
        pso_step(init_pso(sphere, config, np.random.default_rng(0)), config,
                 sphere, np.random.default_rng(0))


def test_pso_linear_inertia_schedule():
    config = PsoConfig(inertia_mode="linear", theta_hi=0.9, theta_lo=0.4)
    assert config.theta_at(0, 11) == 0.9
    assert config.theta_at(10, 11) == 0.4
    assert abs(config.theta_at(5, 11) - 0.65) < 1e-12


# ---------------------------------------------------------------------------
# Firefly
# ---------------------------------------------------------------------------

def test_fa_step_pure_attraction_hand_example():
    # 1-D fireflies at 0 and 1; brightness favors x = 1, so the dim one moves
    # to exp(-1) with alpha = 0.
    config = FaConfig(beta0=1.0, gamma=1.0, alpha=0.0, population=2, dimensions=1,
                      bounds=((-10.0, 10.0),))
    brighter_right = lambda x: -float(x[0])
    out = fa_step(np.array([[0.0], [1.0]]), config, brighter_right,
                  np.random.default_rng(0))
    assert abs(out[0, 0] - math.exp(-1.0)) < 1e-15
    assert out[1, 0] == 1.0


def test_fa_step_identical_positions_do_not_move():
    config = FaConfig(beta0=1.0, gamma=2.0, alpha=0.0, population=2, dimensions=2,
                      bounds=((-5.0, 5.0), (-5.0, 5.0)))
    pos = np.array([[1.0, -1.0], [1.0, -1.0]])
    out = fa_step(pos, config, sphere, np.random.default_rng(0))
    assert np.array_equal(out, pos)


def test_fa_step_zero_beta_is_exact_random_walk():
    # with beta0 = 0 the position change is exactly alpha times the drawn
    # noise, accumulated per brighter peer in scan order
    config = FaConfig(beta0=0.0, gamma=1.0, alpha=0.3, population=4, dimensions=2,
                      bounds=((-100.0, 100.0), (-100.0, 100.0)))
    rng = np.random.default_rng(99)
    start = rng.uniform(-1.0, 1.0, size=(4, 2))
    out = fa_step(start.copy(), config, sphere, np.random.default_rng(5))

    values = np.array([sphere(x) for x in start])
    replay = np.random.default_rng(5)
    expected = start.copy()
    for i in range(4):
        for j in range(4):
            if values[j] < values[i]:
                expected[i] = expected[i] + 0.3 * replay.standard_normal(2)
    assert np.array_equal(out, expected)


def test_fa_step_uniform_noise_and_bounds():
    config = FaConfig(beta0=0.0, gamma=1.0, alpha=50.0, population=3, dimensions=1,
                      bounds=((-1.0, 1.0),), noise="uniform")
    pos = np.array([[0.5], [-0.5], [0.0]])
    out = fa_step(pos, config, sphere, np.random.default_rng(1))
    assert np.all(out >= -1.0) and np.all(out <= 1.0)


def test_fa_run_determinism_and_progress():
    config = FaConfig(beta0=1.0, gamma=1.0, alpha=0.05, population=10, dimensions=2,
                      bounds=((-5.0, 5.0), (-5.0, 5.0)))
    a = fa_run(sphere, config, 40, seed=11)
    b = fa_run(sphere, config, 40, seed=11)
    assert a.best_so_far == b.best_so_far
    assert all(y <= x for x, y in zip(a.best_so_far, a.best_so_far[1:]))
    assert a.best_value < 0.5


def test_fa_beta0_decay_schedule():
    config = FaConfig(beta0=1.0, beta0_final=0.2, population=2, dimensions=1,
                      bounds=((-1.0, 1.0),))
    assert config.beta0_at(0, 5) == 1.0
    assert abs(config.beta0_at(4, 5) - 0.2) < 1e-12
    plain = FaConfig(population=2, dimensions=1, bounds=((-1.0, 1.0),))
    assert plain.beta0_at(3, 10) == plain.beta0


def test_fa_config_validation():
    with pytest.raises(ValueError):
        FaConfig(beta0=1.5)
    with pytest.raises(ValueError):
        FaConfig(gamma=0.0)
    with pytest.raises(ValueError):
        FaConfig(population=1)
    with pytest.raises(ValueError):
        FaConfig(noise="levy")


# ---------------------------------------------------------------------------
# Simulated annealing
# ---------------------------------------------------------------------------

def lattice_walk(x, rng):
    return x + (1 if rng.random() < 0.5 else -1)


def test_sa_cold_limit_is_greedy():
    # Temperatures ~1e-12 zero out every uphill acceptance on a unit lattice,
    # so the trajectory must match a greedy replay consuming the same draws.
    record = sa_run(abs, lattice_walk, 7, a=1e-12, iters=200, seed=21)

    replay = np.random.default_rng(21)
    x = 7
    best = abs(x)
    expected = []
    for _ in range(200):
        cand = lattice_walk(x, replay)
        delta = abs(cand) - abs(x)
        if delta <= 0:
            x = cand
        else:
            replay.random()  # rejected uphill move still consumes one draw
        best = min(best, abs(x))
        expected.append(best)
    assert record.best_so_far == expected
    assert record.best_value == 0


def test_sa_accepts_uphill_when_hot():
    # at a = 50 the first uphill move has acceptance ~ exp(-1/72) and the
    # walk must leave the initial basin at least once
    record = sa_run(abs, lattice_walk, 0, a=50.0, iters=100, seed=2)
    assert max(record.best_so_far) == 0  # best never worsens
    assert record.evaluations == 101


def test_sa_best_so_far_monotone():
    record = sa_run(sphere,
                    lambda x, rng: x + 0.3 * rng.standard_normal(2),
                    np.array([3.0, -2.0]), a=1.0, iters=300, seed=5)
    assert all(y <= x for x, y in zip(record.best_so_far, record.best_so_far[1:]))
    assert record.mode == "min"


def test_sa_determinism():
    neighbor = lambda x, rng: x + rng.standard_normal(1)
    a = sa_run(sphere, neighbor, np.array([2.0]), a=2.0, iters=50, seed=9)
    b = sa_run(sphere, neighbor, np.array([2.0]), a=2.0, iters=50, seed=9)
    assert a.best_so_far == b.best_so_far


def test_sa_validation():
    with pytest.raises(ValueError):
        sa_run(abs, lattice_walk, 0, a=0.0, iters=10, seed=0)
    with pytest.raises(ValueError):
        sa_run(abs, lattice_walk, 0, a=1.0, iters=0, seed=0)


# ---------------------------------------------------------------------------
# Genetic algorithm
# ---------------------------------------------------------------------------

def test_ga_step_full_mutation_flips_everything():
    config = GaConfig(length=5, population=4, mutation_rate=1.0, elitism=True)
    pop = np.zeros((4, 5), dtype=np.uint8)
    out = ga_step(pop, config, onemax, np.random.default_rng(3))
    assert out.shape == (4, 5)
    assert np.array_equal(out[0], np.zeros(5))  # elite copied unchanged
    assert np.array_equal(out[1:], np.ones((3, 5)))  # every other bit flipped


def test_ga_step_no_mutation_copies_parents():
    config = GaConfig(length=4, population=6, mutation_rate=0.0, elitism=True)
    rng = np.random.default_rng(14)
    pop = rng.integers(0, 2, size=(6, 4), dtype=np.uint8)
    out = ga_step(pop, config, onemax, rng)
    parents = {tuple(row) for row in pop}
    assert all(tuple(row) in parents for row in out)
    best = pop[int(np.argmax([onemax(r) for r in pop]))]
    assert np.array_equal(out[0], best)


def test_ga_crossover_produces_prefix_suffix_splices():
    config = GaConfig(length=6, population=4, mutation_rate=0.0, elitism=False,
                      crossover=True)
    pop = np.array([[0] * 6, [1] * 6, [0] * 6, [1] * 6], dtype=np.uint8)
    out = ga_step(pop, config, onemax, np.random.default_rng(8))
    for row in out:
        # any splice of all-zero and all-one parents is sorted one way or other
        bits = list(row)
        assert bits == sorted(bits) or bits == sorted(bits, reverse=True)


def test_ga_elitist_monotonicity():
    config = GaConfig(length=8, population=10, mutation_rate=0.2, elitism=True)
    for seed in range(5):
        rec = ga_run(onemax, config, 60, seed=seed)
        assert all(b >= a for a, b in zip(rec.best_so_far, rec.best_so_far[1:]))
        assert rec.mode == "max"


def test_ga_onemax_reaches_optimum():
    # small OneMax with elitism: 100 seeded runs, expect near-universal success
    config = GaConfig(length=4, population=8, mutation_rate=0.1, elitism=True)
    hits = 0
    for seed in range(100):
        rec = ga_run(onemax, config, 500, seed=seed, target=4.0)
        if rec.best_value == 4.0:
            hits += 1
    assert hits >= 99


def test_ga_early_stop_target():
    config = GaConfig(length=4, population=8, mutation_rate=0.1, elitism=True)
    full = ga_run(onemax, config, 400, seed=1)
    stopped = ga_run(onemax, config, 400, seed=1, target=4.0)
    assert len(stopped.best_so_far) <= len(full.best_so_far)
    assert stopped.best_value == 4.0
    # identical draws up to the stopping point
    assert full.best_so_far[: len(stopped.best_so_far)] == stopped.best_so_far


def test_ga_determinism():
    config = GaConfig(length=6, population=8, mutation_rate=0.05, elitism=True)
    a = ga_run(onemax, config, 30, seed=12)
    b = ga_run(onemax, config, 30, seed=12)
    assert a.best_so_far == b.best_so_far
    assert np.array_equal(a.best_solution, b.best_solution)


def test_ga_config_validation():
    with pytest.raises(ValueError):
        GaConfig(length=0, population=4, mutation_rate=0.1)
    with pytest.raises(ValueError):
        GaConfig(length=4, population=4, mutation_rate=1.5)
    with pytest.raises(ValueError):
        GaConfig(length=1, population=4, mutation_rate=0.1, crossover=True)
    with pytest.raises(ValueError):
        ga_step(np.zeros((3, 4), dtype=np.uint8),
                GaConfig(length=4, population=4, mutation_rate=0.1),
                onemax, np.random.default_rng(0))


# ---------------------------------------------------------------------------
# Objective catalog
# ---------------------------------------------------------------------------

def test_sphere_values():
    assert sphere([0.0, 0.0]) == 0.0
    assert sphere([3.0, 4.0]) == 25.0


def test_onemax_values():
    assert onemax("1111") == 4.0
    assert onemax([1, 0, 1, 1]) == 3.0
    assert onemax(np.array([0, 0], dtype=np.uint8)) == 0.0


def test_needle_values():
    assert needle(0, 5) == 1.0
    assert needle(3, 5) == 0.0
    with pytest.raises(ValueError):
        needle(9, 5)


def test_catalog_lookup():
    obj = objective_catalog("sphere-3")
    assert obj.mode == "min" and obj.dimensions == 3 and obj.optimum_value == 0.0
    assert obj([0, 0, 0]) == 0.0
    obj = objective_catalog("onemax-6")
    assert obj.mode == "max" and obj.length == 6 and obj.optimum_value == 6.0
    obj = objective_catalog("needle-4")
    assert obj(0) == 1.0 and obj(2) == 0.0
    for bad in ("rastrigin-2", "sphere", "sphere-0", "sphere-x"):
        with pytest.raises(ValueError):
            objective_catalog(bad)


def test_run_record_mode_validation():
    with pytest.raises(ValueError):
        RunRecord(seed=0, mode="sideways")
