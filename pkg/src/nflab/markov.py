"""Finite Markov chain utilities and closed-form convergence bounds.

Regularity checks and stationary distributions for row-stochastic matrices,
a geometric mixing-bound checker, the two-group mutation coefficient it
relies on, the iteration bound for mutation-driven genetic search, and the
logarithmic annealing schedule.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

ROW_SUM_TOL = 1e-12
STATIONARY_RESIDUAL_TOL = 1e-10
# Absolute slack when comparing |P^k_ij - pi_j| against (1 - zeta)^(k-1):
# once the true gap decays below machine precision, the computed matrix
# powers saturate at rounding noise and would otherwise report spurious
# violations.
BOUND_NUMERICAL_SLACK = 1e-13


class TransitionMatrix:
    """A validated row-stochastic matrix.

    Entries must be non-negative and every row must sum to 1 within 1e-12.
    The wrapped array is frozen after construction.
    """

    def __init__(self, rows):
        p = np.array(rows, dtype=float)
        if p.ndim != 2 or p.shape[0] != p.shape[1]:
            raise ValueError(f"matrix must be square, got shape {p.shape}")
        if p.shape[0] < 1:
            raise ValueError("matrix must have at least one state")
        if np.any(p < 0):
            raise ValueError("entries must be non-negative")
        sums = p.sum(axis=1)
        if np.any(np.abs(sums - 1.0) > ROW_SUM_TOL):
            bad = int(np.argmax(np.abs(sums - 1.0)))
            raise ValueError(f"row {bad} sums to {sums[bad]!r}, not 1")
        p.setflags(write=False)
        self.p = p
        self.size = p.shape[0]

    def __repr__(self):
        return f"TransitionMatrix(size={self.size})"


def _as_matrix(p) -> TransitionMatrix:
    return p if isinstance(p, TransitionMatrix) else TransitionMatrix(p)


@dataclass(frozen=True)
class RegularityReport:
    regular: bool
    witness_power: Optional[int]
    max_power: int


def is_regular(p, max_power: Optional[int] = None) -> RegularityReport:
    """Find the smallest k <= max_power with P^k strictly positive.

    Uses boolean positivity patterns rather than float powers, so tiny
    probabilities cannot underflow to spurious zeros.  max_power defaults to
    size^2 + 1, which suffices to certify primitivity; regular=False is
    therefore conclusive at the default horizon and merely "not witnessed"
    below it.
    """
    m = _as_matrix(p)
    if max_power is None:
        max_power = m.size**2 + 1
    if max_power < 1:
        raise ValueError(f"max_power must be >= 1, got {max_power}")
    base = (m.p > 0).astype(np.uint8)
    pattern = base.copy()
    for k in range(1, max_power + 1):
        if pattern.all():
            return RegularityReport(True, k, max_power)
        pattern = ((pattern @ base) > 0).astype(np.uint8)
    return RegularityReport(False, None, max_power)


def stationary_distribution(p, max_power: Optional[int] = None) -> np.ndarray:
    """Solve pi = pi P with sum(pi) = 1 for a regular chain.

    Solved as a linear system (one balance row replaced by normalization),
    which reaches 1e-10 residuals on small matrices; the power-iteration
    route is kept separately as a cross-check.  Non-regular input raises
    ValueError naming the failed regularity check.
    """
    m = _as_matrix(p)
    reg = is_regular(m, max_power)
    if not reg.regular:
        raise ValueError(
            f"chain is not regular: no power up to {reg.max_power} of the "
            "transition matrix is strictly positive"
        )
    a = m.p.T - np.eye(m.size)
    a[-1, :] = 1.0
    b = np.zeros(m.size)
    b[-1] = 1.0
    pi = np.linalg.solve(a, b)
    residual = float(np.max(np.abs(pi @ m.p - pi)))
    if residual > STATIONARY_RESIDUAL_TOL:
        raise RuntimeError(f"stationary solve residual {residual} exceeds {STATIONARY_RESIDUAL_TOL}")
    return pi


def stationary_by_power_iteration(p, start=None, tol: float = 1e-13,
                                  max_iter: int = 1_000_000) -> np.ndarray:
    """Iterate pi <- pi P from a positive start until it stops moving.

    Independent cross-check for stationary_distribution; converges for any
    regular chain because the leading eigenvalue is 1 and isolated.
    """
    m = _as_matrix(p)
    pi = np.full(m.size, 1.0 / m.size) if start is None else np.asarray(start, dtype=float)
    if np.any(pi <= 0):
        raise ValueError("start vector must be strictly positive")
    pi = pi / pi.sum()
    for _ in range(max_iter):
        nxt = pi @ m.p
        nxt /= nxt.sum()
        if np.max(np.abs(nxt - pi)) < tol:
            return nxt
        pi = nxt
    raise RuntimeError(f"power iteration did not converge within {max_iter} iterations")


@dataclass(frozen=True)
class GeoBoundReport:
    """Result of checking |P^k_ij - pi_j| <= (1 - zeta)^(k-1) for k = 1..K."""

    holds: bool
    first_violation: Optional[tuple]  # (i, j, k)
    max_gap: float  # max over all (i, j, k) of |P^k_ij - pi_j| - (1-zeta)^(k-1)
    zeta: float
    K: int


def geometric_bound_check(p, zeta: float, K: int,
                          atol: float = BOUND_NUMERICAL_SLACK) -> GeoBoundReport:
    """Check the geometric convergence bound against explicit matrix powers.

    Scans k = 1..K in order (rows, then columns, within each k) and reports
    the first (i, j, k) where |P^k_ij - pi_j| exceeds (1 - zeta)^(k-1) by
    more than `atol`.  The slack absorbs float rounding once the true gap
    decays below machine precision; set atol=0 for the raw comparison.
    """
    if not 0.0 < zeta <= 1.0:
        raise ValueError(f"zeta must lie in (0, 1], got {zeta}")
    if K < 1:
        raise ValueError(f"K must be >= 1, got {K}")
    m = _as_matrix(p)
    pi = stationary_distribution(m)
    power = np.eye(m.size)
    first = None
    max_gap = -math.inf
    for k in range(1, K + 1):
        power = power @ m.p
        bound = (1.0 - zeta) ** (k - 1)
        excess = np.abs(power - pi[None, :]) - bound
        max_gap = max(max_gap, float(excess.max()))
        if first is None and np.any(excess > atol):
            i, j = np.unravel_index(int(np.argmax(excess > atol)), excess.shape)
            first = (int(i), int(j), k)
    return GeoBoundReport(first is None, first, max_gap, zeta, K)


def zeta_two_group(n: int, n1: int, L: int, mu1: Optional[float] = None,
                   mu2: Optional[float] = None) -> float:
    """Mixing coefficient 2^(nL) * mu1^(n1 L) * mu2^((n-n1) L) for a population
    split into two groups with their own mutation rates.

    Computed in the log domain so extreme exponents neither overflow nor
    underflow.  A result >= 1 makes the geometric bound vacuous and emits a
    RuntimeWarning.  A group's rate may be omitted when that group is empty.
    """
    if not 0 <= n1 <= n:
        raise ValueError(f"need 0 <= n1 <= n, got n1={n1}, n={n}")
    if L < 1 or n < 1:
        raise ValueError(f"need L >= 1 and n >= 1, got L={L}, n={n}")
    log_zeta = n * L * math.log(2.0)
    for rate, count, label in ((mu1, n1, "mu1"), (mu2, n - n1, "mu2")):
        if count == 0:
            continue
        if rate is None:
            raise ValueError(f"{label} is required when its group is nonempty")
        if not 0.0 < rate < 1.0:
            raise ValueError(f"{label} must lie in (0, 1), got {rate}")
        log_zeta += count * L * math.log(rate)
    zeta = math.exp(log_zeta)
    if zeta >= 1.0:
        warnings.warn(
            f"zeta = {zeta} >= 1 makes the geometric bound vacuous",
            RuntimeWarning,
            stacklevel=2,
        )
    return zeta


def ga_iteration_bound(zeta: float, mu: float, L: int, n: int) -> int:
    """Iterations needed to hit the optimum with probability zeta:
    ceil(ln(1-zeta) / ln(1 - min[(1-mu)^(Ln), mu^(Ln)])).

    mu = 0 and mu = 1 make the denominator vanish and are rejected.  When
    min(mu, 1-mu)^(Ln) underflows double precision the ratio is evaluated
    with extended-precision arithmetic instead, so very long genomes still
    get a finite integer.
    """
    if not 0.0 < zeta < 1.0:
        raise ValueError(f"zeta must lie in (0, 1), got {zeta}")
    if not 0.0 < mu < 1.0:
        raise ValueError(f"mu must lie in (0, 1), got {mu}")
    if L < 1 or n < 1:
        raise ValueError(f"need L >= 1 and n >= 1, got L={L}, n={n}")
    ln_total = L * n
    num = math.log1p(-zeta)
    log_m = ln_total * math.log(min(mu, 1.0 - mu))
    if log_m > -700.0:
        m = min((1.0 - mu) ** ln_total, mu ** ln_total)
        return math.ceil(num / math.log1p(-m))
    # min(mu, 1-mu)^(Ln) underflows; |ln(1 - m)| ~ m, so the result has
    # about -log_m digits and needs matching precision to take its ceiling.
    import mpmath

    with mpmath.workprec(int(-log_m / math.log(2.0)) + 64):
        m = mpmath.exp(log_m)
        t = mpmath.ceil(mpmath.log1p(-zeta) / mpmath.log1p(-m))
        return int(t)


def sa_temperature(a: float, k: int) -> float:
    """Logarithmic cooling temperature a / log(k + 1) at iteration k >= 1.

    The index shift keeps the schedule finite at k = 1 while preserving the
    a / log(k) asymptotics; the sequence is strictly decreasing and tends
    to zero.
    """
    if a <= 0:
        raise ValueError(f"a must be > 0, got {a}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return a / math.log(k + 1)
