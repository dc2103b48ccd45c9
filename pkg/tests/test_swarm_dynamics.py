"""Tests for the reduced swarm dynamics, 1-D maps, and density tooling."""

import math

import numpy as np
import pytest

from nflab.swarm_dynamics import (
    KIND_APERIODIC,
    KIND_DIVERGED,
    KIND_FIXED_POINT,
    KIND_PERIODIC,
    MAP_FIREFLY,
    MAP_FIREFLY_RAW,
    MAP_LOGISTIC,
    REGIME_BIFURCATION,
    REGIME_CYCLIC,
    REGIME_DIVERGENT,
    REGIME_STATIONARY,
    arcsine_cdf,
    beta_density,
    bifurcation_scan,
    classify_pso_regime,
    empirical_ks,
    firefly_map_step,
    firefly_raw_step,
    gamma_function,
    invariant_density,
    iterate_pso_linear,
    logistic_step,
    orbit,
    pso_eigenvalues,
)


# ---------------------------------------------------------------------------
# Eigenvalues and regimes
# ---------------------------------------------------------------------------

def test_eigenvalues_at_boundary():
    pair = pso_eigenvalues(4.0)
    assert pair.lambda1 == -1 and pair.lambda2 == -1
    pair = pso_eigenvalues(0.0)
    assert pair.lambda1 == 1 and pair.lambda2 == 1


def test_eigenvalues_complex_regime():
    pair = pso_eigenvalues(2.0)
    assert pair.lambda1 == 1j and pair.lambda2 == -1j
    assert abs(abs(pair.lambda1) - 1.0) < 1e-15


def test_eigenvalues_divergent_example():
    pair = pso_eigenvalues(5.0)
    assert pair.lambda1.imag == 0 and pair.lambda2.imag == 0
    assert abs(pair.lambda1.real - (-0.3819660112501051)) < 1e-9
    assert abs(pair.lambda2.real - (-2.618033988749895)) < 1e-9
    assert abs(pair.lambda1 * pair.lambda2 - 1.0) < 1e-12


def test_eigenvalue_identities_property():
    rng = np.random.default_rng(41)
    for gamma in rng.uniform(0.0, 20.0, size=200):
        pair = pso_eigenvalues(float(gamma))
        assert abs(pair.lambda1 * pair.lambda2 - 1.0) < 1e-12
        assert abs(pair.lambda1 + pair.lambda2 - (2.0 - gamma)) < 1e-12
    for gamma in rng.uniform(0.0, 4.0, size=200):
        if gamma == 0.0:
            continue
        pair = pso_eigenvalues(float(gamma))
        assert abs(abs(pair.lambda1) - 1.0) <= 1e-9
        assert abs(abs(pair.lambda2) - 1.0) <= 1e-9
    for gamma in rng.uniform(4.0 + 1e-6, 50.0, size=100):
        pair = pso_eigenvalues(float(gamma))
        assert max(abs(pair.lambda1), abs(pair.lambda2)) > 1.0


def test_regime_classification():
    assert classify_pso_regime(2.0) == REGIME_CYCLIC
    assert classify_pso_regime(4.0) == REGIME_BIFURCATION
    assert classify_pso_regime(4.0 + 1e-13) == REGIME_BIFURCATION
    assert classify_pso_regime(5.0) == REGIME_DIVERGENT
    assert classify_pso_regime(0.0) == REGIME_STATIONARY
    with pytest.raises(ValueError):
        classify_pso_regime(-0.1)
    with pytest.raises(ValueError):
        pso_eigenvalues(-1.0)


def test_linear_orbit_fixed_point():
    o = iterate_pso_linear(3.0, 0.0, 0.0, 10)
    assert all(s == (0.0, 0.0) for s in o.states)
    assert all(d == 0.0 for d in o.distances)


def test_linear_orbit_hand_step():
    o = iterate_pso_linear(1.0, 1.0, 0.0, 1)
    assert o.states[0] == (1.0, 0.0)
    assert o.states[1] == (1.0, -1.0)


def test_linear_orbit_divergent_distances():
    o = iterate_pso_linear(5.0, 0.0, 1.0, 100)
    assert len(o.states) == 101
    assert all(b > a for a, b in zip(o.distances, o.distances[1:]))


# ---------------------------------------------------------------------------
# Map steps
# ---------------------------------------------------------------------------

def test_firefly_map_values():
    assert firefly_map_step(0.0, 1.7) == 0.0
    assert abs(firefly_map_step(1.0, 1.0) - (1.0 - math.exp(-1.0))) < 1e-15
    assert abs(firefly_map_step(0.5, 2.0) - (-0.2788007830714049)) < 1e-12
    with pytest.raises(ValueError):
        firefly_map_step(0.5, -0.1)


def test_firefly_raw_values():
    assert firefly_raw_step(0.0, 1.0, 2.0) == 0.0
    assert firefly_raw_step(1.0, 1.0, 1.0) == firefly_map_step(1.0, 1.0)
    # u = sqrt(4) * y rescaling, bit-exact because sqrt(4) is a power of two
    assert firefly_raw_step(0.5, 1.0, 4.0) == firefly_map_step(1.0, 1.0) / 2.0
    with pytest.raises(ValueError):
        firefly_raw_step(0.5, 1.0, 0.0)
    with pytest.raises(ValueError):
        firefly_raw_step(0.5, -1.0, 1.0)


def test_rescaling_equivalence_exact_for_power_of_two_scales():
    for gamma in (0.25, 1.0, 4.0):
        s = math.sqrt(gamma)
        u, y = 0.5, 0.5 / s
        for _ in range(1000):
            u = firefly_map_step(u, 1.5)
            y = firefly_raw_step(y, 1.5, gamma)
            assert s * y == u


def test_rescaling_equivalence_close_otherwise():
    for gamma in (0.5, 2.0, 3.7):
        s = math.sqrt(gamma)
        u, y = 0.4, 0.4 / s
        for _ in range(500):
            u = firefly_map_step(u, 1.2)
            y = firefly_raw_step(y, 1.2, gamma)
            assert abs(s * y - u) < 1e-12


def test_logistic_step_values():
    assert logistic_step(0.5, 4.0) == 1.0
    assert logistic_step(1.0, 4.0) == 0.0
    assert logistic_step(0.75, 4.0) == 0.75  # fixed point 1 - 1/lambda
    with pytest.raises(ValueError):
        logistic_step(1.5, 4.0)
    with pytest.raises(ValueError):
        logistic_step(0.5, 4.5)
    with pytest.raises(ValueError):
        logistic_step(-0.1, 2.0)


def test_logistic_range_closure_property():
    rng = np.random.default_rng(7)
    for _ in range(500):
        u = float(rng.uniform(0.0, 1.0))
        lam = float(rng.uniform(0.0, 4.0))
        out = logistic_step(u, lam)
        assert 0.0 <= out <= 1.0


# ---------------------------------------------------------------------------
# Orbits and classification
# ---------------------------------------------------------------------------

def test_orbit_firefly_converges_below_two():
    o = orbit(MAP_FIREFLY, 1.5, 0.5, 10_000)
    assert o.kind == KIND_FIXED_POINT
    assert abs(o.iterates[-1]) < 1e-9


def test_orbit_firefly_two_cycle():
    o = orbit(MAP_FIREFLY, 3.0, 0.5, 5000, 1000)
    assert o.kind == KIND_PERIODIC
    assert o.period == 2
    assert o.label() == "periodic(2)"
    # cycle sits at +/- sqrt(ln(3/2)), where attraction exactly reverses sign
    assert abs(abs(o.iterates[-1]) - math.sqrt(math.log(1.5))) < 1e-9


def test_orbit_logistic_chaotic():
    o = orbit(MAP_LOGISTIC, 4.0, 0.3, 11_000, 1000)
    assert o.kind == KIND_APERIODIC


def test_orbit_diverged():
    o = orbit(MAP_FIREFLY, 0.5, 5e12, 100)
    assert o.kind == KIND_DIVERGED


def test_orbit_validation():
    with pytest.raises(ValueError, match="unknown map"):
        orbit("not-a-map", 1.0, 0.5, 10)
    with pytest.raises(ValueError):
        orbit(MAP_FIREFLY, 1.0, 0.5, 10, transient=10)


def test_orbit_raw_map_uses_scale():
    o = orbit(MAP_FIREFLY_RAW, 1.5, 0.5, 2000, gamma_scale=4.0)
    assert o.kind == KIND_FIXED_POINT


def test_firefly_local_stability_property():
    # derivative at 0 is 1 - beta0: contraction iff 0 < beta0 < 2
    for beta0 in (0.25, 0.75, 1.25, 1.75):
        o = orbit(MAP_FIREFLY, beta0, 0.1, 5000)
        assert o.kind == KIND_FIXED_POINT, beta0
    for beta0 in (2.5, 3.0, 3.5, 4.0):
        o = orbit(MAP_FIREFLY, beta0, 0.1, 5000, 1000)
        assert o.kind != KIND_FIXED_POINT, beta0


def test_bifurcation_scan_firefly_stable_band():
    points = bifurcation_scan(MAP_FIREFLY, 0.1, 1.9, 10, u0=0.5, steps=4000,
                              transient=2000, keep=32)
    assert len(points) == 10
    assert all(pt.kind == KIND_FIXED_POINT for pt in points)


def test_bifurcation_scan_firefly_chaotic_band():
    points = bifurcation_scan(MAP_FIREFLY, 3.8, 4.2, 9, u0=0.5, steps=12_000,
                              transient=2000, keep=64)
    assert any(pt.kind == KIND_APERIODIC for pt in points)


def test_bifurcation_scan_logistic_stable_band():
    points = bifurcation_scan(MAP_LOGISTIC, 0.0, 2.95, 25, u0=0.3, steps=12_000,
                              transient=2000, keep=16)
    assert all(pt.kind == KIND_FIXED_POINT or
               (pt.kind == KIND_PERIODIC and pt.period == 1) for pt in points)


def test_bifurcation_scan_validation():
    with pytest.raises(ValueError):
        bifurcation_scan(MAP_FIREFLY, 2.0, 1.0, 5)
    with pytest.raises(ValueError):
        bifurcation_scan(MAP_FIREFLY, 1.0, 2.0, 5, steps=100, transient=50, keep=60)


# ---------------------------------------------------------------------------
# Invariant density
# ---------------------------------------------------------------------------

def test_density_counts_and_edges():
    hist = invariant_density(4.0, 0.3, 20_000, 50)
    assert sum(hist.counts) == hist.total == 20_000
    assert hist.edges[0] == 0.0 and hist.edges[-1] == 1.0
    assert len(hist.counts) == 50
    assert not hist.degenerate


def test_density_degenerate_start():
    hist = invariant_density(4.0, 0.75, 10_000, 50)
    assert hist.degenerate
    assert max(hist.counts) == hist.total


def test_density_single_bin():
    hist = invariant_density(4.0, 0.3, 10_000, 1)
    assert hist.counts == (10_000,)


def test_density_validation():
    with pytest.raises(ValueError, match="10\\^4"):
        invariant_density(4.0, 0.3, 100, 10)
    with pytest.raises(ValueError):
        invariant_density(4.0, 0.3, 10_000, 0)


def test_density_approaches_arcsine_law():
    hist = invariant_density(4.0, 0.3, 100_000, 50)
    # compare bin masses against the closed-form CDF increments
    edges = np.asarray(hist.edges)
    expected = np.diff(arcsine_cdf(edges))
    observed = np.asarray(hist.counts) / hist.total
    assert float(np.max(np.abs(np.cumsum(observed) - np.cumsum(expected)))) < 0.02


def test_empirical_ks_uniform_sanity():
    samples = (np.arange(1000) + 0.5) / 1000.0
    assert empirical_ks(samples, lambda u: u) < 1e-3
    with pytest.raises(ValueError):
        empirical_ks([], lambda u: u)


# ---------------------------------------------------------------------------
# Gamma and Beta closed forms
# ---------------------------------------------------------------------------

def test_gamma_integer_values():
    assert gamma_function(5) == 24.0
    assert gamma_function(1) == 1.0
    for n in range(1, 21):
        assert gamma_function(n) == float(math.factorial(n - 1))


def test_gamma_half():
    assert abs(gamma_function(0.5) - math.sqrt(math.pi)) < 1e-9 * math.sqrt(math.pi)


def test_gamma_against_stdlib_oracle():
    # math.gamma is an independent implementation; require 1e-9 relative
    # agreement across (0, 20].
    zs = np.concatenate([np.linspace(0.01, 0.49, 25), np.linspace(0.51, 20.0, 200)])
    for z in zs:
        mine = gamma_function(float(z))
        ref = math.gamma(float(z))
        assert abs(mine - ref) <= 1e-9 * abs(ref), z


def test_gamma_recurrence_property():
    rng = np.random.default_rng(2)
    for z in rng.uniform(0.05, 10.0, size=100):
        z = float(z)
        lhs = gamma_function(z + 1.0)
        rhs = z * gamma_function(z)
        assert abs(lhs - rhs) <= 1e-10 * abs(lhs)


def test_gamma_domain():
    with pytest.raises(ValueError):
        gamma_function(0.0)
    with pytest.raises(ValueError):
        gamma_function(-2.5)


def test_beta_density_arcsine_center():
    assert abs(beta_density(0.5, 0.5, 0.5) - 2.0 / math.pi) < 1e-12


def test_beta_density_uniform():
    for u in (0.1, 0.25, 0.5, 0.9):
        assert beta_density(u, 1.0, 1.0) == 1.0


def test_beta_density_quarter_point():
    expected = 1.0 / (math.pi * math.sqrt(0.1875))
    assert abs(beta_density(0.25, 0.5, 0.5) - expected) < 1e-12


def test_beta_density_boundaries():
    assert beta_density(0.0, 0.5, 0.5) == math.inf
    assert beta_density(1.0, 2.0, 0.5) == math.inf
    assert beta_density(0.0, 2.0, 2.0) == 0.0
    assert beta_density(0.0, 1.0, 1.0) == 1.0
    with pytest.raises(ValueError):
        beta_density(0.5, 0.0, 1.0)
    with pytest.raises(ValueError):
        beta_density(1.5, 1.0, 1.0)
