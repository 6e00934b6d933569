"""Local description-length scores for discrete data.

The local score of a child given a parent set is the empirical
conditional log-loss of the data plus a parameter-count penalty:

    score = H + (log2 N / 2) * K

with H the conditional entropy term in bits summed over records and
K = (r_child - 1) * prod(r_parent) the number of free parameters of the
conditional probability table.  Lower is better.  A network score is the
sum of local scores, one per variable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    ChildInParents,
    CyclicStructure,
    Dataset,
    Network,
    VariableId,
    VarSet,
    members,
    topological_order,
)


@dataclass(frozen=True)
class CountTable:
    """Joint counts of a child against one parent configuration per row.

    ``counts`` maps (parent configuration, child state) to the number of
    records showing that combination; ``marginals`` maps each parent
    configuration to its total.  Configurations are tuples of parent
    states in ascending parent-index order, and only configurations that
    occur in the data appear.
    """

    child: VariableId
    parents: VarSet
    counts: dict[tuple[tuple[int, ...], int], int]
    marginals: dict[tuple[int, ...], int]


@dataclass(frozen=True)
class LocalScore:
    child: VariableId
    parents: VarSet
    score: float


def contingency(data: Dataset, child: VariableId, parents: VarSet) -> CountTable:
    """Exact joint counts of ``child`` against each observed parent configuration."""
    if parents >> child & 1:
        raise ChildInParents(f"variable {child} cannot be its own parent")
    pa = members(parents)
    cols = data.records[:, pa + [child]]
    uniq, cnt = np.unique(cols, axis=0, return_counts=True)
    counts: dict[tuple[tuple[int, ...], int], int] = {}
    marginals: dict[tuple[int, ...], int] = {}
    for row, c in zip(uniq, cnt):
        cfg = tuple(int(v) for v in row[:-1])
        state = int(row[-1])
        counts[(cfg, state)] = int(c)
        marginals[cfg] = marginals.get(cfg, 0) + int(c)
    return CountTable(child=child, parents=parents, counts=counts, marginals=marginals)


def _conditional_entropy_bits(data: Dataset, child: VariableId, pa: list[int]) -> float:
    """H = -sum over observed cells of N_cell * log2(N_cell / N_config)."""
    records = data.records
    n_records = records.shape[0]
    r_child = data.arities[child]
    child_col = records[:, child]
    if not pa:
        cells = np.bincount(child_col, minlength=r_child).astype(np.float64)
        totals = np.array([n_records], dtype=np.float64)
        cells = cells[None, :]
    else:
        num_cfg = math.prod(data.arities[p] for p in pa)
        if num_cfg <= max(4 * n_records, 1024):
            # Dense path: encode each parent configuration as one integer.
            code = np.zeros(n_records, dtype=np.int64)
            for p in pa:
                code = code * data.arities[p] + records[:, p]
            flat = np.bincount(code * r_child + child_col, minlength=num_cfg * r_child)
            cells = flat.reshape(num_cfg, r_child).astype(np.float64)
        else:
            # Sparse path: only observed configurations are materialized.
            _, inv = np.unique(records[:, pa], axis=0, return_inverse=True)
            flat = np.bincount(inv * r_child + child_col)
            pad = (-len(flat)) % r_child
            if pad:
                flat = np.concatenate([flat, np.zeros(pad, dtype=flat.dtype)])
            cells = flat.reshape(-1, r_child).astype(np.float64)
        totals = cells.sum(axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        cell_term = np.where(cells > 0, cells * np.log2(cells), 0.0).sum()
        total_term = np.where(totals > 0, totals * np.log2(totals), 0.0).sum()
    return max(0.0, float(total_term - cell_term))


def mdl_local(data: Dataset, child: VariableId, parents: VarSet) -> LocalScore:
    """Penalized log-loss of ``child`` given ``parents``, in bits.

    Unobserved parent configurations contribute nothing to H, but K counts
    the full configuration space: the penalty is structural, not data
    dependent.
    """
    if parents >> child & 1:
        raise ChildInParents(f"variable {child} cannot be its own parent")
    pa = members(parents)
    h = _conditional_entropy_bits(data, child, pa)
    k = (data.arities[child] - 1) * math.prod(data.arities[p] for p in pa)
    penalty = 0.5 * math.log2(data.num_records) * k
    return LocalScore(child=child, parents=parents, score=h + penalty)


def mdl_network(data: Dataset, net: Network) -> float:
    """Sum of local scores over all variables with their parent sets in ``net``."""
    if net.n != data.n:
        raise ValueError("network and dataset variable counts differ")
    try:
        topological_order(net)
    except CyclicStructure:
        raise CyclicStructure("cannot score a cyclic structure") from None
    return sum(mdl_local(data, i, net.parents[i]).score for i in range(net.n))
