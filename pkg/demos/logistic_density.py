"""Compare the logistic map's long-run histogram with the arcsine law.

At lambda = 4 the map u' = 4u(1-u) is chaotic and its orbit spends most of
its time near the interval ends; the invariant density is the Beta(1/2,1/2)
curve 1/(pi*sqrt(u(1-u))) with CDF (2/pi)*asin(sqrt(u)).

Run: python demos/logistic_density.py  (writes logistic_density.png next to
it if matplotlib is available)
"""

import math
from pathlib import Path

import numpy as np

from nflab.swarm_dynamics import (
    arcsine_cdf,
    beta_density,
    empirical_ks,
    gamma_function,
    invariant_density,
    logistic_step,
)

# the closed-form normalization constant behind the Beta(1/2,1/2) density
print(f"Gamma(1)   = {gamma_function(1.0):.12f}")
print(f"Gamma(1/2) = {gamma_function(0.5):.12f}  (sqrt(pi) = {math.sqrt(math.pi):.12f})")
print(f"density at u=0.5: {beta_density(0.5, 0.5, 0.5):.12f}  (2/pi = {2 / math.pi:.12f})\n")

N, BINS = 200_000, 40
hist = invariant_density(4.0, u0=0.3, n=N, bins=BINS)
print(f"histogram of {N} iterates in {BINS} bins (degenerate={hist.degenerate})")

widths = np.diff(hist.edges)
observed = np.asarray(hist.counts) / (hist.total * widths)
centers = (np.asarray(hist.edges[:-1]) + np.asarray(hist.edges[1:])) / 2
expected = np.array([beta_density(u, 0.5, 0.5) for u in centers])
print("  bin center   empirical   Beta(1/2,1/2)")
for i in range(0, BINS, 8):
    print(f"  {centers[i]:10.3f} {observed[i]:11.4f} {expected[i]:14.4f}")

# KS distance of the raw orbit against the closed-form CDF
u = 0.3
for _ in range(100):
    u = logistic_step(u, 4.0)
samples = np.empty(N)
for i in range(N):
    u = logistic_step(u, 4.0)
    samples[i] = u
ks = empirical_ks(samples, arcsine_cdf)
print(f"\nKS distance to (2/pi)asin(sqrt(u)) over {N} iterates: {ks:.5f}")

# a start on the unstable fixed point never leaves it
degenerate = invariant_density(4.0, u0=0.75, n=10_000, bins=BINS)
print(f"starting at the fixed point 0.75: degenerate={degenerate.degenerate}")

try:
    import matplotlib
    matplotlib.use("Agg")
    from matplotlib import pyplot as plt
except ImportError:
    print("\nmatplotlib not installed; skipping the density plot")
else:
    grid = np.linspace(0.003, 0.997, 400)
    curve = [beta_density(float(g), 0.5, 0.5) for g in grid]
    plt.figure(figsize=(7, 4.5))
    plt.bar(centers, observed, width=widths, alpha=0.45, label="empirical")
    plt.plot(grid, curve, "r-", linewidth=1.5, label="Beta(1/2, 1/2)")
    plt.xlabel("u")
    plt.ylabel("density")
    plt.title("logistic map invariant density, lambda = 4")
    plt.legend()
    plt.tight_layout()
    out = Path(__file__).with_name("logistic_density.png")
    plt.savefig(out, dpi=130)
    print(f"\nwrote {out}")
