"""Exhaustive search-policy experiments on finite objective-function spaces.

Enumerates every function f: {0..nx-1} -> {0..ny-1}, runs deterministic
search policies against them, and compares the resulting y-trace multisets
and best-so-far curves.  y values are compared as integers, "better" means
larger throughout this module, and every tie breaks toward the lower domain
index.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, Union

import numpy as np

DEFAULT_CAP = 10**7


class EnumerationBudgetError(ValueError):
    """Raised when a full-space enumeration would exceed the configured cap."""


class PolicyContractError(RuntimeError):
    """Raised when a policy flagged non-revisiting proposes a visited point."""


@dataclass(frozen=True)
class FiniteDomain:
    """A finite search domain of nx points with ny possible objective values."""

    nx: int
    ny: int

    def __post_init__(self):
        if self.nx < 1 or self.ny < 1:
            raise ValueError(f"nx and ny must be >= 1, got nx={self.nx}, ny={self.ny}")

    @property
    def function_count(self) -> int:
        """Number of distinct objective tables on this domain (ny ** nx)."""
        return self.ny**self.nx

    def check_cap(self, cap: int = DEFAULT_CAP) -> None:
        if self.function_count > cap:
            raise EnumerationBudgetError(
                f"full space holds {self.function_count} functions, "
                f"which exceeds the enumeration cap of {cap}"
            )


@dataclass(frozen=True)
class ObjectiveTable:
    """A total mapping from domain points to integer objective values."""

    domain: FiniteDomain
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if len(self.values) != self.domain.nx:
            raise ValueError(
                f"table needs {self.domain.nx} values, got {len(self.values)}"
            )
        if any(v < 0 or v >= self.domain.ny for v in self.values):
            raise ValueError(f"values must lie in [0, {self.domain.ny})")

    def __getitem__(self, x: int) -> int:
        return self.values[x]

    def index(self) -> int:
        """Encode the table as a base-ny integer, values[0] most significant."""
        i = 0
        for v in self.values:
            i = i * self.domain.ny + v
        return i

    @classmethod
    def from_index(cls, domain: FiniteDomain, i: int) -> "ObjectiveTable":
        if not 0 <= i < domain.function_count:
            raise ValueError(f"index {i} outside [0, {domain.function_count})")
        digits = []
        for _ in range(domain.nx):
            i, d = divmod(i, domain.ny)
            digits.append(d)
        return cls(domain, tuple(reversed(digits)))

    def permuted(self, sigma: Sequence[int]) -> "ObjectiveTable":
        """Return the table x -> values[sigma[x]]."""
        return ObjectiveTable(self.domain, tuple(self.values[sigma[x]] for x in range(self.domain.nx)))


def enumerate_function_space(domain: FiniteDomain, cap: int = DEFAULT_CAP) -> Iterator[ObjectiveTable]:
    """Yield every objective table on `domain` once, in lexicographic order.

    The order matches the base-ny encoding of ``ObjectiveTable.index``:
    table i has the digits of i, most significant first.  Raises
    EnumerationBudgetError when ny**nx exceeds `cap`.
    """
    domain.check_cap(cap)
    for vals in itertools.product(range(domain.ny), repeat=domain.nx):
        yield ObjectiveTable(domain, vals)


# ---------------------------------------------------------------------------
# Search policies
# ---------------------------------------------------------------------------

class SearchPolicy:
    """A deterministic rule mapping the trace-so-far to the next point.

    Policies never see the objective table directly; `propose` may use only
    the (x, y) pairs already visited.  Non-revisiting policies must always
    return an unvisited point while one remains.
    """

    name = "policy"
    kind = "abstract"
    revisiting = False

    def propose(self, domain: FiniteDomain, entries: Sequence[tuple]) -> int:
        raise NotImplementedError


class AscendingSweep(SearchPolicy):
    """Visits domain points in index order 0, 1, 2, ..."""

    name = "ascending"
    kind = "fixed-permutation sweep"

    def propose(self, domain, entries):
        visited = {x for x, _ in entries}
        return min(x for x in range(domain.nx) if x not in visited)


class DescendingSweep(SearchPolicy):
    """Visits domain points in reverse index order nx-1, nx-2, ..."""

    name = "descending"
    kind = "fixed-permutation sweep"

    def propose(self, domain, entries):
        visited = {x for x, _ in entries}
        return max(x for x in range(domain.nx) if x not in visited)


class PermutationSweep(SearchPolicy):
    """Visits domain points in an explicit fixed order."""

    kind = "fixed-permutation sweep"

    def __init__(self, order: Sequence[int]):
        self.order = tuple(int(x) for x in order)
        if sorted(self.order) != list(range(len(self.order))):
            raise ValueError(f"not a permutation of 0..{len(self.order) - 1}: {self.order}")
        self.name = "sweep:" + ",".join(str(x) for x in self.order)

    def propose(self, domain, entries):
        if len(self.order) != domain.nx:
            raise ValueError(f"permutation of length {len(self.order)} on domain of size {domain.nx}")
        return self.order[len(entries)]


class ShuffleSweep(SearchPolicy):
    """Visits domain points in a seeded-shuffle order, fixed once the seed is."""

    kind = "seeded-shuffle sweep"

    def __init__(self, seed: int):
        self.seed = int(seed)
        self.name = f"shuffle:{self.seed}"
        self._orders = {}

    def _order(self, nx: int) -> tuple:
        if nx not in self._orders:
            perm = np.random.default_rng(self.seed).permutation(nx)
            self._orders[nx] = tuple(int(x) for x in perm)
        return self._orders[nx]

    def propose(self, domain, entries):
        return self._order(domain.nx)[len(entries)]


class GreedyAdjacent(SearchPolicy):
    """Hill climber that walks to the most promising unvisited neighbor.

    From the current point it considers the unvisited neighbors x-1 and x+1,
    predicts each candidate's value as the y of the nearest visited point
    (ties toward the lower visited index), and moves to the candidate with
    the higher prediction, ties toward the lower index.  When both neighbors
    are exhausted it jumps to the nearest unvisited point.  The prediction
    uses only the trace, never the table.
    """

    kind = "greedy-adjacent"

    def __init__(self, start: int = 0):
        self.start = int(start)
        self.name = f"greedy:{self.start}" if self.start else "greedy"

    def propose(self, domain, entries):
        if not entries:
            if not 0 <= self.start < domain.nx:
                raise ValueError(f"start {self.start} outside domain of size {domain.nx}")
            return self.start
        visited = {x for x, _ in entries}
        cur = entries[-1][0]
        cands = [c for c in (cur - 1, cur + 1) if 0 <= c < domain.nx and c not in visited]
        if not cands:
            unvisited = (x for x in range(domain.nx) if x not in visited)
            return min(unvisited, key=lambda x: (abs(x - cur), x))
        if len(cands) == 1:
            return cands[0]

        def predict(c):
            _, _, y = min((abs(xv - c), xv, y) for xv, y in entries)
            return y

        return max(cands, key=lambda c: (predict(c), -c))


class StuckRevisiting(SearchPolicy):
    """Deliberately broken policy that proposes the same pinned point forever."""

    kind = "stuck-revisiting"
    revisiting = True

    def __init__(self, pin: int = 0):
        self.pin = int(pin)
        self.name = f"stuck:{self.pin}" if self.pin else "stuck"

    def propose(self, domain, entries):
        if not 0 <= self.pin < domain.nx:
            raise ValueError(f"pin {self.pin} outside domain of size {domain.nx}")
        return self.pin


def parse_policy(text: str) -> SearchPolicy:
    """Build a policy from a compact string such as 'ascending' or 'shuffle:7'."""
    head, _, arg = text.partition(":")
    head = head.strip().lower()
    if head == "ascending":
        return AscendingSweep()
    if head == "descending":
        return DescendingSweep()
    if head == "shuffle":
        if not arg:
            raise ValueError("shuffle policy needs a seed, e.g. shuffle:7")
        return ShuffleSweep(int(arg))
    if head == "sweep":
        return PermutationSweep([int(x) for x in arg.split(",")])
    if head == "greedy":
        return GreedyAdjacent(int(arg) if arg else 0)
    if head == "stuck":
        return StuckRevisiting(int(arg) if arg else 0)
    raise ValueError(f"unknown policy {text!r}")


# ---------------------------------------------------------------------------
# Traces and distributions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Trace:
    """The time-ordered sequence of visited (x, y) pairs."""

    entries: tuple

    @property
    def k(self) -> int:
        return len(self.entries)

    @property
    def xs(self) -> tuple:
        return tuple(x for x, _ in self.entries)

    @property
    def ys(self) -> tuple:
        return tuple(y for _, y in self.entries)

    def best_so_far(self) -> list:
        """Running maximum of the y values."""
        out, best = [], None
        for _, y in self.entries:
            best = y if best is None else max(best, y)
            out.append(best)
        return out


def run_policy(policy: SearchPolicy, table: ObjectiveTable, k: int) -> Trace:
    """Run `policy` on `table` for k steps and return the visited trace.

    Non-revisiting policies must satisfy k <= nx and are checked at runtime:
    proposing an already-visited point raises PolicyContractError.
    """
    nx = table.domain.nx
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if not policy.revisiting and k > nx:
        raise ValueError(f"non-revisiting policy cannot take {k} > nx={nx} steps")
    entries = []
    visited = set()
    for _ in range(k):
        x = policy.propose(table.domain, tuple(entries))
        if not 0 <= x < nx:
            raise ValueError(f"policy {policy.name} proposed {x} outside domain of size {nx}")
        if not policy.revisiting and x in visited:
            raise PolicyContractError(
                f"policy {policy.name} is flagged non-revisiting but proposed visited point {x}"
            )
        visited.add(x)
        entries.append((x, table.values[x]))
    return Trace(tuple(entries))


@dataclass(frozen=True)
class FunctionSubset:
    """An explicit set of objective tables over one shared domain."""

    members: tuple

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        if not self.members:
            raise ValueError("subset must be nonempty")
        dom = self.members[0].domain
        if any(t.domain != dom for t in self.members):
            raise ValueError("subset members must share one domain")
        seen = set()
        for t in self.members:
            if t.values in seen:
                raise ValueError(f"duplicate table {t.values}")
            seen.add(t.values)

    @property
    def domain(self) -> FiniteDomain:
        return self.members[0].domain

    @classmethod
    def from_values(cls, domain: FiniteDomain, rows: Iterable[Sequence[int]]) -> "FunctionSubset":
        return cls(tuple(ObjectiveTable(domain, tuple(r)) for r in rows))


FunctionSet = Union[FunctionSubset, FiniteDomain, Iterable[ObjectiveTable]]


def _iter_functions(functions: FunctionSet, cap: int) -> Iterator[ObjectiveTable]:
    if isinstance(functions, FiniteDomain):
        return enumerate_function_space(functions, cap)
    if isinstance(functions, FunctionSubset):
        return iter(functions.members)
    return iter(functions)


def trace_distribution(policy: SearchPolicy, functions: FunctionSet, k: int,
                       cap: int = DEFAULT_CAP) -> Counter:
    """Multiset of k-step y-sequences of `policy` across a function set.

    Passing a FiniteDomain means the full space of ny**nx tables.  The
    returned Counter maps each y-tuple to its number of occurrences; counts
    sum to the number of functions.
    """
    counts = Counter()
    for table in _iter_functions(functions, cap):
        counts[run_policy(policy, table, k).ys] += 1
    return counts


@dataclass(frozen=True)
class NflReport:
    """Outcome of comparing two policies' trace distributions on a full space."""

    equal: bool
    first_divergence: Optional[tuple]
    nx: int
    ny: int
    k: int
    policy_a: str
    policy_b: str
    note: str = "comparison restricted to deterministic (possibly seeded) policies"


def nfl_equality(policy_a: SearchPolicy, policy_b: SearchPolicy,
                 domain: FiniteDomain, k: int, cap: int = DEFAULT_CAP) -> NflReport:
    """Check whether two non-revisiting policies induce the same y-trace multiset
    over the full function space.

    Returns a report with equal=True iff the two multisets are identical.
    When they differ, first_divergence holds the lexicographically smallest
    y-sequence whose counts disagree.  Revisiting policies are rejected; use
    revisiting_demo for those.
    """
    for p in (policy_a, policy_b):
        if p.revisiting:
            raise ValueError(
                f"policy {p.name} revisits points; the full-space comparison "
                "assumes non-revisiting policies (see revisiting_demo)"
            )
    if k > domain.nx:
        raise ValueError(f"k={k} exceeds nx={domain.nx}")
    dist_a = trace_distribution(policy_a, domain, k, cap)
    dist_b = trace_distribution(policy_b, domain, k, cap)
    if dist_a == dist_b:
        return NflReport(True, None, domain.nx, domain.ny, k, policy_a.name, policy_b.name)
    witness = min(seq for seq in (set(dist_a) | set(dist_b)) if dist_a[seq] != dist_b[seq])
    return NflReport(False, witness, domain.nx, domain.ny, k, policy_a.name, policy_b.name)


def is_closed_under_permutation(subset: FunctionSubset) -> bool:
    """True iff the subset maps to itself under every permutation of the domain.

    Checks the two generators of the symmetric group (the transposition of
    points 0 and 1 and the full cycle); a finite set closed under both is
    closed under every permutation they generate.
    """
    nx = subset.domain.nx
    if nx == 1:
        return True
    members = {t.values for t in subset.members}
    swap = list(range(nx))
    swap[0], swap[1] = 1, 0
    cycle = [(x + 1) % nx for x in range(nx)]
    for sigma in (swap, cycle):
        for vals in members:
            if tuple(vals[sigma[x]] for x in range(nx)) not in members:
                return False
    return True


def mean_best_so_far(policy: SearchPolicy, functions: FunctionSet, k: int,
                     cap: int = DEFAULT_CAP) -> list:
    """Per-step mean of the running-best y value across a function set."""
    totals = [0.0] * k
    count = 0
    for table in _iter_functions(functions, cap):
        for i, b in enumerate(run_policy(policy, table, k).best_so_far()):
            totals[i] += b
        count += 1
    if count == 0:
        raise ValueError("empty function set")
    return [t / count for t in totals]


@dataclass(frozen=True)
class FreeLunchReport:
    """Best-so-far comparison of two policies on a restricted function subset."""

    mean_best_a: list
    mean_best_b: list
    winner_at: list  # per step: "a", "b", or "tie"
    subset_is_cup: bool
    k: int
    policy_a: str
    policy_b: str


def free_lunch_report(policy_a: SearchPolicy, policy_b: SearchPolicy,
                      subset: FunctionSubset, k: int) -> FreeLunchReport:
    """Compare mean best-so-far curves of two non-revisiting policies on a subset.

    Flags whether the subset is closed under permutation; when it is, the two
    curves must coincide and a mismatch raises RuntimeError as a self-check.
    """
    for p in (policy_a, policy_b):
        if p.revisiting:
            raise ValueError(f"policy {p.name} revisits points")
    if k > subset.domain.nx:
        raise ValueError(f"k={k} exceeds nx={subset.domain.nx}")
    mean_a = mean_best_so_far(policy_a, subset, k)
    mean_b = mean_best_so_far(policy_b, subset, k)
    cup = is_closed_under_permutation(subset)
    if cup and any(abs(a - b) > 1e-12 for a, b in zip(mean_a, mean_b)):
        raise RuntimeError(
            "subset is closed under permutation but the mean curves differ; "
            "this contradicts the full-closure equality and indicates a bug"
        )
    winner = ["a" if a > b else "b" if b > a else "tie" for a, b in zip(mean_a, mean_b)]
    return FreeLunchReport(mean_a, mean_b, winner, cup, k, policy_a.name, policy_b.name)


@dataclass(frozen=True)
class RevisitReport:
    """Full-space best-so-far gap between a sweep and a stuck revisiting policy."""

    sweep_mean: list
    stuck_mean: list
    gap: list
    nx: int
    ny: int
    k: int


def revisiting_demo(domain: FiniteDomain, k: int, pin: int = 0,
                    cap: int = DEFAULT_CAP) -> RevisitReport:
    """Show that dropping the non-revisiting assumption breaks the equality.

    Compares the full-space mean best-so-far of the ascending sweep against a
    policy stuck revisiting one pinned point.  Requires 1 <= k <= nx so the
    sweep stays within its contract.
    """
    if not 1 <= k <= domain.nx:
        raise ValueError(f"k must satisfy 1 <= k <= nx={domain.nx}, got {k}")
    sweep = mean_best_so_far(AscendingSweep(), domain, k, cap)
    stuck = mean_best_so_far(StuckRevisiting(pin), domain, k, cap)
    gap = [s - t for s, t in zip(sweep, stuck)]
    return RevisitReport(sweep, stuck, gap, domain.nx, domain.ny, k)
