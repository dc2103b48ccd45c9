"""Map out the three regimes of the reduced particle-swarm recurrence.

Freezing the random factors and merging the two attraction terms into a
single strength gamma leaves the linear system

    v' = v + gamma * u,   u' = -v + (1 - gamma) * u

whose eigenvalues sit on the unit circle for 0 < gamma < 4, collide at -1
when gamma = 4, and split off the circle beyond it.

Run: python demos/pso_regimes.py  (writes pso_regimes.png next to it if
matplotlib is available)
"""

from pathlib import Path

from nflab.swarm_dynamics import classify_pso_regime, iterate_pso_linear, pso_eigenvalues

print(f"{'gamma':>7} {'lambda1':>24} {'lambda2':>24} {'|l1|':>8}  regime")
for gamma in (0.0, 0.5, 2.0, 3.9, 4.0, 4.1, 5.0, 8.0):
    pair = pso_eigenvalues(gamma)
    print(f"{gamma:7.2f} {pair.lambda1:>24.6g} {pair.lambda2:>24.6g} "
          f"{abs(pair.lambda1):8.4f}  {classify_pso_regime(gamma)}")

print("\norbit samples from (v, u) = (0, 1):")
for gamma in (2.0, 4.0, 5.0):
    orbit = iterate_pso_linear(gamma, 0.0, 1.0, 60)
    d = orbit.distances
    print(f"  gamma={gamma}: |Y_0|={d[0]:.3f} |Y_20|={d[20]:.3f} "
          f"|Y_40|={d[40]:.3g} |Y_60|={d[60]:.3g}")
print("Inside (0, 4) the orbit circles at a bounded radius; at the gamma=4")
print("boundary the repeated eigenvalue makes it grow linearly, and beyond")
print("it the distance grows geometrically.")

try:
    import matplotlib
    matplotlib.use("Agg")
    from matplotlib import pyplot as plt
except ImportError:
    print("\nmatplotlib not installed; skipping the phase plot")
else:
    fig, axes = plt.subplots(1, 3, figsize=(12, 4))
    for ax, gamma in zip(axes, (2.0, 4.0, 5.0)):
        orbit = iterate_pso_linear(gamma, 0.0, 1.0, 60)
        vs, us = zip(*orbit.states)
        ax.plot(vs, us, ".-", markersize=3, linewidth=0.6)
        ax.set_title(f"gamma = {gamma}: {classify_pso_regime(gamma)}")
        ax.set_xlabel("v")
        ax.set_ylabel("u")
    fig.tight_layout()
    out = Path(__file__).with_name("pso_regimes.png")
    fig.savefig(out, dpi=130)
    print(f"\nwrote {out}")
