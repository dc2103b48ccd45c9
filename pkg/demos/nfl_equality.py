"""Walk through the no-free-lunch equality on a complete finite space,
then break it twice: once with a restricted subset, once with revisiting.

Run: python demos/nfl_equality.py
"""

from nflab import function_space as fs

# ----------------------------------------------------------------------
# 1. A complete space: every function from 4 points to 2 values
# ----------------------------------------------------------------------
domain = fs.FiniteDomain(nx=4, ny=2)
print(f"domain: {domain.nx} points, {domain.ny} values, "
      f"{domain.function_count} total functions\n")

policies = [fs.AscendingSweep(), fs.DescendingSweep(), fs.ShuffleSweep(7),
            fs.GreedyAdjacent()]

print("y-trace multisets at k=2 (sequence: count) per policy:")
for policy in policies:
    dist = fs.trace_distribution(policy, domain, k=2)
    pretty = ", ".join(f"{seq}:{n}" for seq, n in sorted(dist.items()))
    print(f"  {policy.name:<12} {pretty}")
print("Every policy sees each y-sequence equally often: averaged over the")
print("whole space, no search order beats any other.\n")

for a, b in [(policies[0], policies[1]), (policies[0], policies[3])]:
    rep = fs.nfl_equality(a, b, domain, k=4)
    print(f"equality {a.name} vs {b.name}: equal={rep.equal}")

# ----------------------------------------------------------------------
# 2. A free lunch: restrict to a needle subset (not closed under
#    permutation) and the sweeps stop being interchangeable
# ----------------------------------------------------------------------
print("\nneedle subset {[1,0,0,0]}:")
subset = fs.FunctionSubset.from_values(domain, [(1, 0, 0, 0)])
print(f"  closed under permutation? {fs.is_closed_under_permutation(subset)}")
rep = fs.free_lunch_report(fs.AscendingSweep(), fs.DescendingSweep(), subset, k=4)
for step in range(4):
    print(f"  k={step + 1}: ascending {rep.mean_best_a[step]:.3f}  "
          f"descending {rep.mean_best_b[step]:.3f}  winner={rep.winner_at[step]}")

# ----------------------------------------------------------------------
# 3. Revisiting also breaks the assumptions: a policy stuck on one point
#    loses to the sweep even averaged over the FULL space
# ----------------------------------------------------------------------
print("\nfull space, ascending sweep vs a policy stuck at x=0:")
demo = fs.revisiting_demo(fs.FiniteDomain(3, 2), k=3)
for step in range(3):
    print(f"  k={step + 1}: sweep {demo.sweep_mean[step]:.4f}  "
          f"stuck {demo.stuck_mean[step]:.4f}  gap {demo.gap[step]:+.4f}")
