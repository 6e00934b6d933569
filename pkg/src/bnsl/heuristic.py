"""Admissible, consistent lower bounds on the cost of completing a search node.

Both heuristics relax the acyclicity constraint for variables not yet in
the subnetwork.  The simple bound lets every remaining variable pick its
optimal parents from all other variables.  The pattern-database bound
partitions the variables into groups and enforces acyclicity within each
group, which can only tighten the bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import ceil
from typing import Callable, Sequence

from .core import InvalidPartition, VarSet, full_set, members
from .pops import PopsStore


def simple_h(store: PopsStore, u: VarSet) -> float:
    """Sum over variables outside ``u`` of their unconstrained best score."""
    total = 0.0
    remaining = full_set(store.n) & ~u
    while remaining:
        low = remaining & -remaining
        x = low.bit_length() - 1
        # With every other variable admissible, the first list entry wins.
        total += store.scores[x][0]
        remaining ^= low
    return total


@dataclass(frozen=True)
class PatternDatabase:
    """Per-group exact completion costs, summed across groups at query time.

    ``tables[i]`` maps each subset R of group i to the cheapest cost of
    adding the variables of R, in some order, when everything outside R is
    already available as a potential parent.
    """

    n: int
    groups: tuple[VarSet, ...]
    tables: tuple[dict[VarSet, float], ...]


def default_partition(n: int) -> tuple[VarSet, ...]:
    """Two groups split at ceil(n/2) by variable index (one group if n == 1)."""
    k = ceil(n / 2)
    g1 = full_set(k)
    g2 = full_set(n) & ~g1
    return (g1,) if g2 == 0 else (g1, g2)


def build_pd(store: PopsStore, groups: Sequence[VarSet]) -> PatternDatabase:
    """Tabulate completion costs for every subset of every group.

    The recurrence peels one variable X off the remaining set R and lets X
    pick parents from everything outside R:

        table[empty] = 0
        table[R] = min over X in R of best(X, V minus R) + table[R minus X]
    """
    n = store.n
    full = full_set(n)
    union = 0
    for g in groups:
        if g == 0:
            raise InvalidPartition("empty group")
        if g & ~full:
            raise InvalidPartition("group contains out-of-range variables")
        if g & union:
            raise InvalidPartition("groups overlap")
        union |= g
    if union != full:
        raise InvalidPartition("groups do not cover all variables")

    tables: list[dict[VarSet, float]] = []
    for g in groups:
        elems = members(g)
        table: dict[VarSet, float] = {0: 0.0}
        for size in range(1, len(elems) + 1):
            for combo in combinations(elems, size):
                r = 0
                for i in combo:
                    r |= 1 << i
                avail = full & ~r
                best = min(
                    store.best(x, avail)[0] + table[r ^ (1 << x)] for x in combo
                )
                table[r] = best
        tables.append(table)
    return PatternDatabase(n=n, groups=tuple(groups), tables=tuple(tables))


def pd_h(pd: PatternDatabase, u: VarSet) -> float:
    """Sum of per-group completion costs for the variables still missing from ``u``."""
    return sum(table[g & ~u] for g, table in zip(pd.groups, pd.tables))


def make_heuristic(
    store: PopsStore,
    kind: str = "pd",
    groups: Sequence[VarSet] | None = None,
) -> Callable[[VarSet], float]:
    """Build a fast ``h(mask) -> float`` callable for the search engines."""
    n = store.n
    if kind == "simple":
        per_var = [store.scores[x][0] for x in range(n)]
        total = sum(per_var)

        def h_simple(u: VarSet) -> float:
            acc = total
            while u:
                low = u & -u
                acc -= per_var[low.bit_length() - 1]
                u ^= low
            return acc

        return h_simple
    if kind == "pd":
        pd = build_pd(store, groups if groups is not None else default_partition(n))
        pd_groups = pd.groups
        pd_tables = pd.tables

        def h_pd(u: VarSet) -> float:
            return sum(t[g & ~u] for g, t in zip(pd_groups, pd_tables))

        return h_pd
    if kind == "zero":
        # Testing hook: the trivial bound.
        return lambda u: 0.0
    raise InvalidPartition(f"unknown heuristic kind {kind!r}")
