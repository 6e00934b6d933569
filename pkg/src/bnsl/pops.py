"""Candidate parent-set enumeration, dominance pruning, and best-score queries.

A parent set P is kept only if no proper subset of P scores at least as
well; the survivors are the only parent sets any optimal network can use.
Each variable's survivors are stored ascending by score, so the lowest
score over all subsets of a candidate pool is found by scanning the list
until the first entry whose mask is contained in the pool.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

from .core import (
    ChildInCandidates,
    Dataset,
    MissingEmptySet,
    VariableId,
    VarSet,
)
from .scoring import mdl_local


def effective_parent_cap(num_records: int, max_parents: int, n: int) -> int:
    """Largest parent-set cardinality worth scoring.

    Beyond ceil(log2(2N / log2 N)) parents, the parameter penalty of a
    binary CPT alone exceeds any possible drop in log-loss, so such sets
    can never win.  The user cap is clamped into [1, n-1] first.
    """
    cap = max(1, min(max_parents, n - 1))
    if num_records >= 2:
        bound = math.ceil(math.log2(2 * num_records / math.log2(num_records)))
        cap = min(cap, max(1, bound))
    return cap


def enumerate_scores(
    data: Dataset, child: VariableId, max_parents: int
) -> list[tuple[VarSet, float]]:
    """Score every parent set of ``child`` up to the effective cardinality cap.

    Output order is deterministic: ascending cardinality, then the order
    ``itertools.combinations`` yields over ascending variable indices.
    """
    cap = effective_parent_cap(data.num_records, max_parents, data.n)
    others = [i for i in range(data.n) if i != child]
    out: list[tuple[VarSet, float]] = []
    for size in range(cap + 1):
        for combo in combinations(others, size):
            mask = 0
            for i in combo:
                mask |= 1 << i
            out.append((mask, mdl_local(data, child, mask).score))
    return out


def _sort_key(entry: tuple[VarSet, float]):
    mask, score = entry
    return (score, mask.bit_count(), mask)


def prune_to_pops(raw: list[tuple[VarSet, float]]) -> list[tuple[VarSet, float]]:
    """Drop every entry dominated by a proper subset with equal or better score.

    The result is sorted ascending by score, ties broken by smaller
    cardinality then smaller mask, which is also the scan order used by
    ``best_score``.
    """
    if not any(mask == 0 for mask, _ in raw):
        raise MissingEmptySet("raw scores must include the empty parent set")
    kept: list[tuple[VarSet, float]] = []
    seen: set[VarSet] = set()
    for mask, score in sorted(raw, key=_sort_key):
        if mask in seen:
            continue
        # Every possible dominator sorts earlier, and if a dominator was
        # itself pruned, whatever pruned it also dominates this entry.
        dominated = any(km != mask and km & ~mask == 0 for km, _ in kept)
        if not dominated:
            kept.append((mask, score))
            seen.add(mask)
    return kept


@dataclass(frozen=True)
class PopsStore:
    """Per-variable surviving parent sets, each list ascending by score."""

    n: int
    names: tuple[str, ...]
    masks: tuple[tuple[VarSet, ...], ...]
    scores: tuple[tuple[float, ...], ...]
    num_records: int | None = None
    counts: tuple[int, ...] = field(init=False)

    def __post_init__(self) -> None:
        if not (len(self.names) == len(self.masks) == len(self.scores) == self.n):
            raise ValueError("per-variable fields must have length n")
        object.__setattr__(self, "counts", tuple(len(m) for m in self.masks))

    def best(self, child: VariableId, candidates: VarSet) -> tuple[float, VarSet]:
        """Lowest score over parent sets contained in ``candidates``.

        The per-child list is scanned in ascending-score order; the first
        subset hit is the minimum.  The empty set guarantees a hit.
        """
        if candidates >> child & 1:
            raise ChildInCandidates(f"variable {child} is in its own candidate pool")
        blocked = ~candidates
        for mask, score in zip(self.masks[child], self.scores[child]):
            if mask & blocked == 0:
                return score, mask
        raise MissingEmptySet(f"variable {child} has no admissible parent set")


def best_score(
    store: PopsStore, child: VariableId, candidates: VarSet
) -> tuple[float, VarSet]:
    return store.best(child, candidates)


def build_pops_store(data: Dataset, max_parents: int, *, prune: bool = True) -> PopsStore:
    """Enumerate, optionally prune, and package scores for every variable."""
    masks: list[tuple[VarSet, ...]] = []
    scores: list[tuple[float, ...]] = []
    for child in range(data.n):
        entries = enumerate_scores(data, child, max_parents)
        if prune:
            entries = prune_to_pops(entries)
        else:
            entries = sorted(entries, key=_sort_key)
        masks.append(tuple(m for m, _ in entries))
        scores.append(tuple(s for _, s in entries))
    return PopsStore(
        n=data.n,
        names=data.names,
        masks=tuple(masks),
        scores=tuple(scores),
        num_records=data.num_records,
    )
