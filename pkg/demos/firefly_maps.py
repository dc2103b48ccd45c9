"""Follow the one-dimensional firefly attraction map from stable to chaotic.

The distance-to-best recurrence u' = u * (1 - beta0 * exp(-u^2)) contracts
to 0 for attractiveness beta0 below 2 (the derivative at 0 is 1 - beta0),
flips into cycles beyond that, and loses all periodicity near beta0 = 4.

Run: python demos/firefly_maps.py  (writes firefly_bifurcation.png next to
it if matplotlib is available)
"""

import math
from pathlib import Path

from nflab.swarm_dynamics import (
    MAP_FIREFLY,
    bifurcation_scan,
    firefly_map_step,
    firefly_raw_step,
    orbit,
)

# ----------------------------------------------------------------------
# 1. Orbit classification across attractiveness values
# ----------------------------------------------------------------------
print("orbit from u0 = 0.5, 10^4 steps after a 10^3 transient:")
for beta0 in (0.5, 1.0, 1.5, 1.9, 2.5, 3.0, 3.5, 4.0):
    o = orbit(MAP_FIREFLY, beta0, 0.5, 11_000, transient=1000)
    tail = ", ".join(f"{u:+.4f}" for u in o.iterates[-4:])
    print(f"  beta0={beta0:<4} {o.label():<14} tail [{tail}]")
print("The 2-cycle below beta0=3 sits at +/-sqrt(ln(beta0/(beta0-2))):")
beta0 = 3.0
print(f"  predicted {math.sqrt(math.log(beta0 / (beta0 - 2))):.6f}, "
      f"observed {abs(orbit(MAP_FIREFLY, beta0, 0.5, 5000, 1000).iterates[-1]):.6f}")

# ----------------------------------------------------------------------
# 2. The absorption coefficient is only a length scale: u = sqrt(g) * y
# ----------------------------------------------------------------------
print("\nraw map with gamma=4 against the normalized map:")
u, y = 0.8, 0.8 / 2.0
for step in range(4):
    u = firefly_map_step(u, 1.5)
    y = firefly_raw_step(y, 1.5, 4.0)
    print(f"  step {step + 1}: u = {u:+.12f}   2*y = {2 * y:+.12f}   equal: {u == 2 * y}")

# ----------------------------------------------------------------------
# 3. Bifurcation scan over beta0 in [0.5, 4.2]
# ----------------------------------------------------------------------
points = bifurcation_scan(MAP_FIREFLY, 0.5, 4.2, 150, u0=0.5,
                          steps=4000, transient=3000, keep=64)
changes = []
last = None
for pt in points:
    label = pt.kind if pt.period is None else f"periodic({pt.period})"
    if label != last:
        changes.append((pt.param, label))
        last = label
print("\nclassification changes along the scan:")
for param, label in changes:
    print(f"  beta0 >= {param:.3f}: {label}")

try:
    import matplotlib
    matplotlib.use("Agg")
    from matplotlib import pyplot as plt
except ImportError:
    print("\nmatplotlib not installed; skipping the bifurcation diagram")
else:
    xs, ys = [], []
    for pt in points:
        xs.extend([pt.param] * len(pt.attractor))
        ys.extend(pt.attractor)
    plt.figure(figsize=(8, 5))
    plt.plot(xs, ys, "k.", markersize=0.8)
    plt.xlabel(r"$\beta_0$")
    plt.ylabel("attractor samples")
    plt.title("firefly map bifurcation diagram")
    plt.tight_layout()
    out = Path(__file__).with_name("firefly_bifurcation.png")
    plt.savefig(out, dpi=130)
    print(f"\nwrote {out}")
