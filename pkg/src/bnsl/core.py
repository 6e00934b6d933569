"""Shared domain types: variables, variable subsets, datasets, and networks.

Variable subsets live on the hot path of every search and scoring routine,
so they are represented as plain Python ints used as bitmasks (bit i set
means variable i is in the set).  The helpers below exist for readability;
callers are free to use ``&``, ``|`` and ``int.bit_count`` directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, Iterator

import numpy as np

# A single machine word keeps subset tests to one operation and covers the
# problem sizes this library is meant for.
MAX_VARS = 64

VariableId = int
VarSet = int


class BnslError(Exception):
    """Base class for all errors raised by this package."""


class CyclicStructure(BnslError):
    """A directed graph that must be acyclic contains a cycle."""


class ParseError(BnslError):
    """Malformed input file or stream."""


class EmptyDataset(BnslError):
    """A dataset with zero records."""


class TooManyVariables(BnslError):
    """Problem size exceeds a configured or hard limit."""


class ChildInParents(BnslError):
    """A variable was offered as its own parent."""


class ChildInCandidates(BnslError):
    """A variable was included in its own candidate parent pool."""


class MissingEmptySet(BnslError):
    """A raw score list lacks the empty parent set."""


class InvalidPartition(BnslError):
    """Groups do not form a partition of the variable set."""


class BrokenPath(BnslError):
    """Predecessor links do not form a complete start-to-goal chain."""


class InvalidConfig(BnslError):
    """A configuration object violates its own constraints."""


class DimensionMismatch(BnslError):
    """Two structures with different variable counts were combined."""


# ---------------------------------------------------------------------------
# VarSet helpers


def varset_of(indices: Iterable[int]) -> VarSet:
    """Build a bitmask from an iterable of variable indices."""
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def full_set(n: int) -> VarSet:
    """The set containing all of variables 0..n-1."""
    return (1 << n) - 1


def members(mask: VarSet) -> list[int]:
    """Indices of the set bits, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def iter_members(mask: VarSet) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def is_subset(a: VarSet, b: VarSet) -> bool:
    return a & ~b == 0


def cardinality(mask: VarSet) -> int:
    return mask.bit_count()


# ---------------------------------------------------------------------------
# Dataset


@dataclass(frozen=True)
class Dataset:
    """N complete discrete records over n variables.

    ``records`` is an (N, n) integer array; cell (j, i) is the state of
    variable i in record j and must lie in [0, arities[i]).  The array is
    made read-only so instances can be shared across threads.
    """

    names: tuple[str, ...]
    arities: tuple[int, ...]
    records: np.ndarray

    def __post_init__(self) -> None:
        n = len(self.names)
        if n != len(self.arities):
            raise ValueError("names and arities length mismatch")
        if n > MAX_VARS:
            raise TooManyVariables(f"{n} variables exceeds the {MAX_VARS} limit")
        if self.records.ndim != 2 or self.records.shape[1] != n:
            raise ValueError("records must be an (N, n) array")
        if self.records.shape[0] == 0:
            raise EmptyDataset("dataset has no records")
        if not np.issubdtype(self.records.dtype, np.integer):
            raise ValueError("records must be integers")
        if self.records.min(initial=0) < 0:
            raise ValueError("negative state value")
        for i, r in enumerate(self.arities):
            if r < 2:
                raise ValueError(f"arity of variable {i} must be at least 2")
            if self.records[:, i].max() >= r:
                raise ValueError(f"state out of range for variable {i}")
        self.records.flags.writeable = False

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def num_records(self) -> int:
        return int(self.records.shape[0])

    @classmethod
    def from_records(
        cls,
        records,
        names: tuple[str, ...] | None = None,
        arities: tuple[int, ...] | None = None,
    ) -> "Dataset":
        """Build a dataset from row-major integer data, inferring arities.

        Inferred arity is max observed state + 1, floored at 2 so that a
        constant column still describes a binary variable.
        """
        arr = np.ascontiguousarray(records, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError("records must be two-dimensional")
        n = arr.shape[1]
        if names is None:
            names = tuple(f"X{i}" for i in range(n))
        if arities is None:
            if arr.shape[0] == 0:
                raise EmptyDataset("dataset has no records")
            arities = tuple(max(2, int(arr[:, i].max()) + 1) for i in range(n))
        return cls(names=tuple(names), arities=tuple(arities), records=arr)


def _open_source(source) -> tuple[IO[str], bool]:
    if hasattr(source, "read"):
        return source, False
    return open(Path(source), "r", encoding="utf-8"), True


def load_dataset(source, *, normalize_labels: bool = False) -> Dataset:
    """Read a dataset from CSV text.

    The first line is a comma-separated header of variable names; every
    following line is one record of comma-separated non-negative integers.
    No quoting and no missing values.

    With ``normalize_labels`` set, a column whose cells are not all
    integers is recoded to dense integer states in order of first
    appearance; by default such a cell is a ParseError.
    """
    stream, owned = _open_source(source)
    try:
        header = stream.readline()
        if header == "":
            raise ParseError("empty input")
        names = tuple(h.strip() for h in header.rstrip("\n").split(","))
        if any(not name for name in names):
            raise ParseError("empty column name in header")
        n = len(names)
        raw_rows: list[list[str]] = []
        for lineno, line in enumerate(stream, start=2):
            line = line.rstrip("\n")
            if line == "":
                continue
            cells = line.split(",")
            if len(cells) != n:
                raise ParseError(f"line {lineno}: expected {n} cells, got {len(cells)}")
            raw_rows.append(cells)
    finally:
        if owned:
            stream.close()
    if not raw_rows:
        raise EmptyDataset("dataset has no records")

    columns = []
    for i in range(n):
        cells = [row[i] for row in raw_rows]
        try:
            values = [int(c) for c in cells]
            if any(v < 0 for v in values):
                raise ValueError
        except ValueError:
            if not normalize_labels:
                raise ParseError(
                    f"column {names[i]!r}: non-integer cell (use normalize_labels for labeled data)"
                ) from None
            codes: dict[str, int] = {}
            values = [codes.setdefault(c, len(codes)) for c in cells]
        columns.append(values)
    records = np.array(columns, dtype=np.int64).T
    return Dataset.from_records(records, names=names)


def save_dataset(dataset: Dataset, dest) -> None:
    """Write a dataset in the same CSV format ``load_dataset`` reads."""
    stream, owned = (dest, False) if hasattr(dest, "write") else (
        open(Path(dest), "w", encoding="utf-8"),
        True,
    )
    try:
        stream.write(",".join(dataset.names) + "\n")
        for row in dataset.records:
            stream.write(",".join(str(int(v)) for v in row) + "\n")
    finally:
        if owned:
            stream.close()


# ---------------------------------------------------------------------------
# Network


@dataclass(frozen=True)
class Network:
    """A directed graph given as one parent set (bitmask) per variable.

    The container itself does not enforce acyclicity; ``topological_order``
    is the witness and raises ``CyclicStructure`` when no order exists.
    """

    n: int
    parents: tuple[VarSet, ...]

    def __post_init__(self) -> None:
        if len(self.parents) != self.n:
            raise ValueError("parents must have one entry per variable")
        full = full_set(self.n)
        for i, pa in enumerate(self.parents):
            if pa & ~full:
                raise ValueError(f"parent set of variable {i} is out of range")
            if pa >> i & 1:
                raise ValueError(f"variable {i} is its own parent")

    @classmethod
    def empty(cls, n: int) -> "Network":
        return cls(n, (0,) * n)

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> "Network":
        parents = [0] * n
        for src, dst in arcs:
            parents[dst] |= 1 << src
        return cls(n, tuple(parents))

    def arcs(self) -> list[tuple[int, int]]:
        return [(src, dst) for dst in range(self.n) for src in members(self.parents[dst])]

    def num_arcs(self) -> int:
        return sum(pa.bit_count() for pa in self.parents)


def topological_order(net: Network) -> list[VariableId]:
    """Order variables so each appears after all of its parents.

    Kahn's algorithm with a smallest-index-first tie break, so the result
    is deterministic.  Raises ``CyclicStructure`` if no order exists.
    """
    indeg = [pa.bit_count() for pa in net.parents]
    children: list[list[int]] = [[] for _ in range(net.n)]
    for dst in range(net.n):
        for src in members(net.parents[dst]):
            children[src].append(dst)
    import heapq

    ready = [i for i in range(net.n) if indeg[i] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        v = heapq.heappop(ready)
        order.append(v)
        for c in children[v]:
            indeg[c] -= 1
            if indeg[c] == 0:
                heapq.heappush(ready, c)
    if len(order) != net.n:
        raise CyclicStructure("graph contains a directed cycle")
    return order


def is_acyclic(net: Network) -> bool:
    try:
        topological_order(net)
        return True
    except CyclicStructure:
        return False
