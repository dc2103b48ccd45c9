"""Reduced dynamical-systems views of swarm optimizers.

Covers the two-variable linear recurrence obtained from the particle-swarm
update when randomness is frozen, the one-dimensional firefly attraction
maps (raw and rescaled), the logistic map, and invariant-density tooling
with the Beta/Gamma closed forms needed to compare against the arcsine law.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

REGIME_STATIONARY = "stationary"
REGIME_CYCLIC = "cyclic/quasi-cyclic"
REGIME_BIFURCATION = "bifurcation-boundary"
REGIME_DIVERGENT = "divergent"

KIND_FIXED_POINT = "fixed-point"
KIND_PERIODIC = "periodic"
KIND_APERIODIC = "aperiodic"
KIND_DIVERGED = "diverged"

MAP_FIREFLY = "firefly-normalized"
MAP_FIREFLY_RAW = "firefly-raw"
MAP_LOGISTIC = "logistic"

DIVERGENCE_LIMIT = 1e12
FIXED_POINT_TOL = 1e-9
PERIOD_TOL = 1e-6
MAX_PERIOD = 64


# ---------------------------------------------------------------------------
# Particle-swarm reduced linear system
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Eigenpair:
    """The two eigenvalues of the reduced update matrix [[1, g], [-1, 1-g]]."""

    lambda1: complex
    lambda2: complex


def pso_eigenvalues(gamma: float) -> Eigenpair:
    """Eigenvalues 1 - g/2 +/- sqrt(g^2 - 4g)/2 of the reduced swarm system.

    The matrix has determinant 1 and trace 2 - g, so the product of the
    eigenvalues is always 1; for 0 < g < 4 they are complex with modulus 1.
    """
    if gamma < 0:
        raise ValueError(f"gamma must be >= 0, got {gamma}")
    half_root = cmath.sqrt(complex(gamma * gamma - 4.0 * gamma, 0.0)) / 2.0
    center = 1.0 - gamma / 2.0
    return Eigenpair(center + half_root, center - half_root)


def classify_pso_regime(gamma: float, boundary_tol: float = 1e-12) -> str:
    """Classify the reduced swarm dynamics by gamma.

    gamma = 0 is stationary, 0 < gamma < 4 gives cyclic or quasi-cyclic
    orbits, gamma = 4 (within `boundary_tol`) sits on the bifurcation, and
    gamma > 4 diverges.
    """
    if gamma < 0:
        raise ValueError(f"gamma must be >= 0, got {gamma}")
    if gamma == 0:
        return REGIME_STATIONARY
    if abs(gamma - 4.0) <= boundary_tol:
        return REGIME_BIFURCATION
    if gamma < 4.0:
        return REGIME_CYCLIC
    return REGIME_DIVERGENT


@dataclass(frozen=True)
class Orbit2D:
    """States and center distances of the linear recurrence Y -> A Y."""

    gamma: float
    states: tuple  # (v, u) pairs, initial state first
    distances: tuple


def iterate_pso_linear(gamma: float, v0: float, u0: float, steps: int) -> Orbit2D:
    """Iterate v' = v + g*u, u' = -v + (1-g)*u for `steps` steps.

    The orbit includes the initial state, so `states` has steps + 1 entries.
    Divergence is recorded in the distances, never raised.
    """
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    v, u = float(v0), float(u0)
    states = [(v, u)]
    for _ in range(steps):
        v, u = v + gamma * u, -v + (1.0 - gamma) * u
        states.append((v, u))
    distances = tuple(math.hypot(v, u) for v, u in states)
    return Orbit2D(gamma, tuple(states), distances)


# ---------------------------------------------------------------------------
# One-dimensional maps
# ---------------------------------------------------------------------------

def firefly_map_step(u: float, beta0: float) -> float:
    """One step of the rescaled firefly attraction map u * (1 - b0 * exp(-u^2))."""
    if beta0 < 0:
        raise ValueError(f"beta0 must be >= 0, got {beta0}")
    return u * (1.0 - beta0 * math.exp(-u * u))

def firefly_raw_step(y: float, beta0: float, gamma_scale: float) -> float:
    """One step of the unscaled firefly map y * (1 - b0 * exp(-g * y^2)).

    gamma_scale only sets the length scale: substituting u = sqrt(g) * y
    recovers the rescaled map.  Both steps share the factored evaluation
    order, so when sqrt(g) is a power of two the correspondence is exact in
    floating point, not just algebraically.
    """
    if beta0 < 0:
        raise ValueError(f"beta0 must be >= 0, got {beta0}")
    if gamma_scale <= 0:
        raise ValueError(f"gamma_scale must be > 0, got {gamma_scale}")
    return y * (1.0 - beta0 * math.exp(-gamma_scale * y * y))

def logistic_step(u: float, lam: float) -> float:
    """One step of the logistic map lam * u * (1 - u) on [0, 1], lam in [0, 4]."""
    if not 0.0 <= u <= 1.0:
        raise ValueError(f"u must lie in [0, 1], got {u}")
    if not 0.0 <= lam <= 4.0:
        raise ValueError(f"lambda must lie in [0, 4], got {lam}")
    return lam * u * (1.0 - u)


_MAP_STEPS = {
    MAP_FIREFLY: lambda u, p, g: firefly_map_step(u, p),
    MAP_FIREFLY_RAW: lambda u, p, g: firefly_raw_step(u, p, g),
    MAP_LOGISTIC: lambda u, p, g: logistic_step(u, p),
}


@dataclass(frozen=True)
class MapOrbit:
    """Post-transient iterates of a 1-D map with an empirical classification.

    kind is one of fixed-point, periodic, aperiodic, diverged; period is set
    only for periodic orbits.
    """

    map_id: str
    param: float
    gamma_scale: float
    u0: float
    transient: int
    iterates: tuple
    kind: str
    period: Optional[int] = None

    def label(self) -> str:
        return f"{KIND_PERIODIC}({self.period})" if self.kind == KIND_PERIODIC else self.kind


def _classify_tail(tail) -> tuple:
    """Classify a post-transient orbit tail as (kind, period)."""
    n = len(tail)
    if n >= 2 and abs(tail[-1] - tail[-2]) < FIXED_POINT_TOL:
        return KIND_FIXED_POINT, None
    for p in range(1, min(MAX_PERIOD, n - 1) + 1):
        # Verify the cycle across a trailing window, not just the endpoint;
        # chaotic orbits make close returns that do not repeat.
        window = min(n - p, max(128, 4 * p))
        if all(abs(tail[-1 - j] - tail[-1 - j - p]) < PERIOD_TOL for j in range(window)):
            return KIND_PERIODIC, p
    return KIND_APERIODIC, None


def orbit(map_id: str, param: float, u0: float, steps: int, transient: int = 0,
          gamma_scale: float = 1.0) -> MapOrbit:
    """Iterate a named 1-D map and classify its post-transient behavior.

    Parameters
    ----------
    map_id : one of "firefly-normalized", "firefly-raw", "logistic"
    param : the map parameter (attractiveness b0, or lambda for the logistic map)
    u0 : initial state
    steps : total iterations; the first `transient` are discarded
    transient : burn-in length, 0 <= transient < steps
    gamma_scale : length scale, used by the firefly-raw map only
    """
    if map_id not in _MAP_STEPS:
        raise ValueError(f"unknown map {map_id!r}; expected one of {sorted(_MAP_STEPS)}")
    if not steps > transient >= 0:
        raise ValueError(f"need steps > transient >= 0, got steps={steps}, transient={transient}")
    step = _MAP_STEPS[map_id]
    u = float(u0)
    kept = []
    diverged = False
    for t in range(steps):
        u = step(u, param, gamma_scale)
        if t >= transient:
            kept.append(u)
        if abs(u) > DIVERGENCE_LIMIT:
            diverged = True
            break
    if diverged:
        return MapOrbit(map_id, param, gamma_scale, u0, transient, tuple(kept), KIND_DIVERGED)
    kind, period = _classify_tail(kept)
    return MapOrbit(map_id, param, gamma_scale, u0, transient, tuple(kept), kind, period)


@dataclass(frozen=True)
class ScanPoint:
    """One parameter sample of a bifurcation scan."""

    param: float
    attractor: tuple  # last `keep` iterates
    kind: str
    period: Optional[int]


def bifurcation_scan(map_id: str, param_lo: float, param_hi: float, param_samples: int,
                     u0: float = 0.5, steps: int = 2000, transient: int = 1000,
                     keep: int = 64, gamma_scale: float = 1.0) -> list:
    """Sample a parameter range and record each attractor's tail and class.

    Returns one ScanPoint per sampled parameter, in increasing parameter
    order.  Samples are independent, so results do not depend on the order
    they are computed in.
    """
    if not param_lo < param_hi:
        raise ValueError(f"need param_lo < param_hi, got {param_lo}, {param_hi}")
    if param_samples < 2:
        raise ValueError(f"need at least 2 samples, got {param_samples}")
    if keep > steps - transient:
        raise ValueError(f"keep={keep} exceeds recorded length {steps - transient}")
    points = []
    for p in np.linspace(param_lo, param_hi, param_samples):
        o = orbit(map_id, float(p), u0, steps, transient, gamma_scale)
        points.append(ScanPoint(float(p), o.iterates[-keep:], o.kind, o.period))
    return points


# ---------------------------------------------------------------------------
# Invariant density and the Beta/Gamma closed forms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DensityHistogram:
    """Histogram over [0, 1] of a map orbit, with a degeneracy flag."""

    bins: int
    edges: tuple
    counts: tuple
    total: int
    degenerate: bool  # initial state sat on a fixed point; all mass in one bin


def invariant_density(lam: float, u0: float, n: int, bins: int,
                      transient: int = 100) -> DensityHistogram:
    """Histogram n post-transient logistic iterates over [0, 1].

    At lam = 4 the empirical density approaches the arcsine (Beta(1/2, 1/2))
    law for almost every u0; initial states on a fixed point (0, 1, or
    1 - 1/lam) produce a degenerate histogram, reported via the flag.
    Requires n >= 10**4 so the histogram is meaningful.
    """
    if n < 10**4:
        raise ValueError(f"n must be >= 10^4 for a usable histogram, got {n}")
    if bins < 1:
        raise ValueError(f"bins must be >= 1, got {bins}")
    u = float(u0)
    for _ in range(transient):
        u = logistic_step(u, lam)
    out = np.empty(n)
    for i in range(n):
        u = logistic_step(u, lam)
        out[i] = u
    counts, edges = np.histogram(out, bins=bins, range=(0.0, 1.0))
    degenerate = bool(out.max() - out.min() < 1e-15)
    return DensityHistogram(bins, tuple(float(e) for e in edges),
                            tuple(int(c) for c in counts), int(n), degenerate)


def gamma_function(z: float) -> float:
    """The Gamma function for z > 0.

    Integer arguments up to 20 take the exact factorial path; otherwise a
    Lanczos approximation (g = 7, 9 terms) is used, accurate to well below
    1e-9 relative error on (0, 20].
    """
    if z <= 0:
        raise ValueError(f"gamma_function requires z > 0, got {z}")
    if float(z).is_integer() and z <= 20:
        return float(math.factorial(int(z) - 1))
    if z < 0.5:
        return gamma_function(z + 1.0) / z
    return _lanczos(float(z))


_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def _lanczos(z: float) -> float:
    z -= 1.0
    x = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        x += _LANCZOS_COEF[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * math.exp(-t) * x


def beta_density(u: float, p: float, q: float) -> float:
    """Beta density G(p+q)/(G(p)G(q)) * u^(p-1) * (1-u)^(q-1) on [0, 1].

    For p = q = 1/2 this is the arcsine density 1/(pi * sqrt(u(1-u))).
    At the boundary the density is infinite when the adjacent exponent is
    negative, and that is reported as math.inf rather than an error.
    """
    if p <= 0 or q <= 0:
        raise ValueError(f"p and q must be > 0, got p={p}, q={q}")
    if not 0.0 <= u <= 1.0:
        raise ValueError(f"u must lie in [0, 1], got {u}")
    norm = gamma_function(p + q) / (gamma_function(p) * gamma_function(q))
    if u == 0.0:
        return math.inf if p < 1 else (norm if p == 1 else 0.0)
    if u == 1.0:
        return math.inf if q < 1 else (norm if q == 1 else 0.0)
    return norm * u ** (p - 1.0) * (1.0 - u) ** (q - 1.0)


def arcsine_cdf(u):
    """CDF (2/pi) * asin(sqrt(u)) of the Beta(1/2, 1/2) law; accepts arrays."""
    return (2.0 / math.pi) * np.arcsin(np.sqrt(np.asarray(u, dtype=float)))


def empirical_ks(samples, cdf) -> float:
    """Kolmogorov-Smirnov distance between a sample and a continuous CDF."""
    s = np.sort(np.asarray(samples, dtype=float))
    n = s.size
    if n == 0:
        raise ValueError("empty sample")
    f = np.asarray(cdf(s), dtype=float)
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - f), np.max(f - (i - 1) / n)))
