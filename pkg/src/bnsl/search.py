"""Shortest-path engines over the subset lattice of variables.

A node is a variable subset U (a bitmask): the best subnetwork over U.
An edge U -> U + {X} adds X as a leaf with its optimal parents drawn from
U, so the edge costs ``best(X, U)`` and a start-to-goal path is a variable
ordering whose accumulated cost is the score of the best network
consistent with that ordering.  The cheapest path is the global optimum.

Engines:

* ``astar`` / ``weighted_astar``: best-first on g + h (or g + eps * h),
  stop at the first goal expansion.
* ``anytime_weighted_astar``: weighted order, keeps searching after the
  first solution, re-expands improved nodes, prunes on the incumbent.
* ``ara_star``: repeated weighted searches with a shrinking weight,
  reusing g values and deferring re-expansions to the next iteration.
* ``anytime_window_astar``: unweighted order restricted by a deepening
  layer window; nodes behind the window freeze and seed the next pass.

All engines report a monotone lower bound and the matching error bound
(incumbent / bound), maintain an event trace, and honor time, node and
cancellation limits.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from .core import (
    BrokenPath,
    Dataset,
    InvalidConfig,
    Network,
    VariableId,
    VarSet,
    full_set,
)
from .heuristic import make_heuristic
from .pops import PopsStore, build_pops_store

Heuristic = Callable[[VarSet], float]

EVENT_INCUMBENT = "incumbentImproved"
EVENT_BOUND = "boundImproved"
EVENT_ITERATION = "iterationEnd"
EVENT_TERMINATED = "terminated"

TERM_OPTIMAL = "optimal"
TERM_TIME = "timeLimit"
TERM_NODE = "nodeLimit"
TERM_EXHAUSTED = "exhausted"
TERM_CANCELLED = "cancelled"

ALGORITHMS = ("astar", "wastar", "aweia", "ara", "awina")

_REL_PROOF = 1e-9  # relative slack when declaring an error bound equal to 1


@dataclass(frozen=True)
class SearchNode:
    """A lattice node: the subset built so far, its best known cost, and
    the variable whose addition produced it on that best path."""

    vars: VarSet
    g: float
    last_var: VariableId | None = None

    @property
    def layer(self) -> int:
        return self.vars.bit_count()


@dataclass
class SearchConfig:
    """Algorithm selection plus the knobs shared by the engine family."""

    algorithm: str = "astar"
    epsilon: float = 1.25
    epsilon_step: float = 0.05
    window_init: int = 0
    window_step: int = 1
    time_limit_ms: int | None = None
    node_limit: int | None = None
    heuristic: str = "pd"
    pd_groups: tuple[VarSet, ...] | None = None

    def validate(self) -> None:
        if self.algorithm not in ALGORITHMS:
            raise InvalidConfig(f"unknown algorithm {self.algorithm!r}")
        if self.epsilon < 1.0:
            raise InvalidConfig("epsilon must be >= 1")
        if self.epsilon_step <= 0.0:
            raise InvalidConfig("epsilon_step must be > 0")
        if self.window_init < 0:
            raise InvalidConfig("window_init must be >= 0")
        if self.window_step < 1:
            raise InvalidConfig("window_step must be >= 1")
        if self.time_limit_ms is not None and self.time_limit_ms < 0:
            raise InvalidConfig("time_limit_ms must be >= 0")
        if self.node_limit is not None and self.node_limit < 1:
            raise InvalidConfig("node_limit must be >= 1")
        if self.heuristic not in ("simple", "pd", "zero"):
            raise InvalidConfig(f"unknown heuristic {self.heuristic!r}")


@dataclass(frozen=True)
class Incumbent:
    network: Network
    score: float
    found_at_ms: int


@dataclass(frozen=True)
class TraceRecord:
    elapsed_ms: int
    event: str
    incumbent_score: float | None
    lower_bound: float
    error_bound: float
    expanded: int


@dataclass
class SearchStats:
    expanded: int = 0
    generated: int = 0
    reexpanded: int = 0
    open_size: int = 0
    frozen_size: int = 0


@dataclass(frozen=True)
class SolveResult:
    incumbent: Incumbent | None
    lower_bound: float
    error_bound: float
    proved_optimal: bool
    termination: str
    trace: tuple[TraceRecord, ...]
    stats: SearchStats


def expand(
    store: PopsStore, node: SearchNode
) -> list[tuple[VarSet, float, VarSet]]:
    """Successors of a node: one per missing variable X, at cost best(X, U)."""
    succs = []
    remaining = full_set(store.n) & ~node.vars
    while remaining:
        low = remaining & -remaining
        x = low.bit_length() - 1
        score, parents = store.best(x, node.vars)
        succs.append((node.vars | low, score, parents))
        remaining ^= low
    return succs


def reconstruct(
    store: PopsStore,
    links: Mapping[VarSet, VariableId],
    goal_vars: VarSet | None = None,
) -> Network:
    """Rebuild the network from last-variable links along a start-goal chain.

    For each step that added X to the subset U, X receives the parents
    chosen by ``best(X, U)``; parents always precede their child in the
    induced ordering, so the result is acyclic by construction.
    """
    mask = full_set(store.n) if goal_vars is None else goal_vars
    parents = [0] * store.n
    while mask:
        if mask not in links:
            raise BrokenPath(f"no predecessor link for subset {mask:#x}")
        last = links[mask]
        if last is None or not (mask >> last & 1):
            raise BrokenPath(f"link at {mask:#x} names a variable outside the subset")
        prev = mask ^ (1 << last)
        parents[last] = store.best(last, prev)[1]
        mask = prev
    return Network(store.n, tuple(parents))


# ---------------------------------------------------------------------------
# Shared engine state: clock, limits, incumbent, bound bookkeeping, trace.


class _Run:
    def __init__(
        self,
        store: PopsStore,
        h: Heuristic,
        time_limit_ms: int | None,
        node_limit: int | None,
        cancel,
    ) -> None:
        self.store = store
        self.h = h
        self.n = store.n
        self.full = full_set(store.n)
        self.gmap: dict[int, tuple[float, int]] = {0: (0.0, -1)}
        self.stats = SearchStats()
        self.trace: list[TraceRecord] = []
        self.incumbent: Incumbent | None = None
        self.lb = 0.0
        self._last_traced_lb = float("-inf")
        self.time_limit_ms = time_limit_ms
        self.node_limit = node_limit
        self.cancel = cancel
        self._t0 = time.perf_counter()

    def elapsed_ms(self) -> int:
        return int((time.perf_counter() - self._t0) * 1000)

    def interrupted(self) -> str | None:
        c = self.cancel
        if c is not None and (c.is_set() if hasattr(c, "is_set") else c()):
            return TERM_CANCELLED
        if self.time_limit_ms is not None and self.elapsed_ms() >= self.time_limit_ms:
            return TERM_TIME
        return None

    def over_budget(self, open_len: int, frozen_len: int, headroom: int) -> bool:
        if self.node_limit is None:
            return False
        return self.stats.expanded + open_len + frozen_len + headroom > self.node_limit

    # -- incumbent ---------------------------------------------------------

    def walk_solution(self) -> tuple[Network, float]:
        """Follow last-variable links from the goal and re-price every edge.

        Link g values can keep improving after the goal entry was written,
        so the walked path is re-summed from the store; the result is a
        real network whose score equals that sum exactly.
        """
        mask = self.full
        parents = [0] * self.n
        total = 0.0
        while mask:
            entry = self.gmap.get(mask)
            if entry is None or entry[1] < 0:
                raise BrokenPath(f"no predecessor link for subset {mask:#x}")
            last = entry[1]
            prev = mask ^ (1 << last)
            score, pmask = self.store.best(last, prev)
            parents[last] = pmask
            total += score
            mask = prev
        return Network(self.n, tuple(parents)), total

    def improve_incumbent(self) -> bool:
        net, score = self.walk_solution()
        if self.incumbent is None or score < self.incumbent.score:
            self.incumbent = Incumbent(net, score, self.elapsed_ms())
            if score < self.lb:
                # The bounds have met; noise aside, this is a proof.
                self.lb = score
            return True
        return False

    # -- bounds and trace --------------------------------------------------

    def reported_lb(self) -> float:
        if self.incumbent is not None:
            return min(self.lb, self.incumbent.score)
        return self.lb

    def error_bound(self) -> float:
        if self.incumbent is None:
            return float("inf")
        lb = self.reported_lb()
        if lb <= 0.0:
            return 1.0 if self.incumbent.score <= 0.0 else float("inf")
        return max(1.0, self.incumbent.score / lb)

    def proved(self) -> bool:
        if self.incumbent is None:
            return False
        lb = self.reported_lb()
        return self.incumbent.score <= lb * (1.0 + _REL_PROOF)

    def emit(self, event: str) -> None:
        lb = self.reported_lb()
        self.trace.append(
            TraceRecord(
                elapsed_ms=self.elapsed_ms(),
                event=event,
                incumbent_score=None if self.incumbent is None else self.incumbent.score,
                lower_bound=lb,
                error_bound=self.error_bound(),
                expanded=self.stats.expanded,
            )
        )
        self._last_traced_lb = max(self._last_traced_lb, lb)

    def raise_lb(self, candidate: float | None) -> None:
        if candidate is not None and candidate > self.lb:
            self.lb = candidate
        if self.reported_lb() > self._last_traced_lb + 1e-9:
            self.emit(EVENT_BOUND)

    def finish(self, termination: str, open_len: int = 0, frozen_len: int = 0) -> SolveResult:
        self.stats.open_size = open_len
        self.stats.frozen_size = frozen_len
        proved = self.proved()
        if proved:
            termination = TERM_OPTIMAL
            self.lb = self.incumbent.score
        eb = 1.0 if proved else self.error_bound()
        self.emit(EVENT_TERMINATED)
        return SolveResult(
            incumbent=self.incumbent,
            lower_bound=self.reported_lb(),
            error_bound=eb,
            proved_optimal=proved,
            termination=termination,
            trace=tuple(self.trace),
            stats=self.stats,
        )


def _make_fpeek(fheap: list, membership: Callable[[int, float], bool]):
    """Smallest unweighted f over live nodes, with lazy deletion."""

    def fpeek() -> float | None:
        while fheap:
            fu, mask, g = fheap[0]
            if membership(mask, g):
                return fu
            heapq.heappop(fheap)
        return None

    return fpeek


# ---------------------------------------------------------------------------
# A* and Weighted A*


def _run_wastar(
    store: PopsStore,
    h: Heuristic,
    eps: float,
    time_limit_ms: int | None,
    node_limit: int | None,
    cancel,
) -> SolveResult:
    run = _Run(store, h, time_limit_ms, node_limit, cancel)
    n, full, gmap, stats = run.n, run.full, run.gmap, run.stats
    best = store.best

    h0 = h(0)
    open_g: dict[int, float] = {0: 0.0}
    wheap: list[tuple[float, float, int]] = [(eps * h0, 0.0, 0)]
    fheap: list[tuple[float, int, float]] = [(h0, 0, 0.0)]
    closed: set[int] = set()
    fpeek = _make_fpeek(fheap, lambda m, g: open_g.get(m) == g)

    def lb_candidate() -> float | None:
        fp = fpeek()
        if fp is not None:
            return fp / eps
        if run.incumbent is not None:
            return run.incumbent.score
        return None

    while True:
        term = run.interrupted()
        if term is not None:
            return run.finish(term, len(open_g))
        mask = -1
        while wheap:
            _, neg_g, m = heapq.heappop(wheap)
            if open_g.get(m) == -neg_g:
                mask = m
                g = -neg_g
                break
        if mask < 0:
            return run.finish(TERM_EXHAUSTED, 0)
        layer = mask.bit_count()
        if run.over_budget(len(open_g), 0, n - layer):
            return run.finish(TERM_NODE, len(open_g))

        del open_g[mask]
        closed.add(mask)
        stats.expanded += 1
        if mask == full:
            run.improve_incumbent()
            run.raise_lb(lb_candidate())
            if run.incumbent is not None:
                run.raise_lb(run.incumbent.score / eps)
            return run.finish(TERM_EXHAUSTED, len(open_g))

        remaining = full & ~mask
        while remaining:
            low = remaining & -remaining
            remaining ^= low
            succ = mask | low
            if succ in closed:
                # Better paths to closed nodes are disregarded; with a
                # consistent heuristic and eps == 1 they cannot occur.
                continue
            x = low.bit_length() - 1
            g_new = g + best(x, mask)[0]
            old = gmap.get(succ)
            if old is None or g_new < old[0]:
                gmap[succ] = (g_new, x)
                open_g[succ] = g_new
                hs = h(succ)
                heapq.heappush(wheap, (g_new + eps * hs, -g_new, succ))
                heapq.heappush(fheap, (g_new + hs, succ, g_new))
                stats.generated += 1
        run.raise_lb(lb_candidate())


# ---------------------------------------------------------------------------
# Anytime Weighted A*


def _run_aweia(
    store: PopsStore,
    h: Heuristic,
    eps: float,
    time_limit_ms: int | None,
    node_limit: int | None,
    cancel,
) -> SolveResult:
    run = _Run(store, h, time_limit_ms, node_limit, cancel)
    n, full, gmap, stats = run.n, run.full, run.gmap, run.stats
    best = store.best

    h0 = h(0)
    open_g: dict[int, float] = {0: 0.0}
    wheap: list[tuple[float, float, int]] = [(eps * h0, 0.0, 0)]
    fheap: list[tuple[float, int, float]] = [(h0, 0, 0.0)]
    closed: set[int] = set()
    ever_expanded: set[int] = set()
    fpeek = _make_fpeek(fheap, lambda m, g: open_g.get(m) == g)

    def lb_candidate() -> float | None:
        cands = []
        fp = fpeek()
        if fp is not None:
            cands.append(fp)
        elif run.incumbent is not None:
            cands.append(run.incumbent.score)
        if run.incumbent is not None:
            # The first solution of the weighted search is eps-admissible
            # and the incumbent only improves afterwards.
            cands.append(run.incumbent.score / eps)
        return max(cands) if cands else None

    while True:
        term = run.interrupted()
        if term is not None:
            return run.finish(term, len(open_g))
        mask = -1
        while wheap:
            _, neg_g, m = heapq.heappop(wheap)
            if open_g.get(m) == -neg_g:
                mask = m
                g = -neg_g
                break
        if mask < 0:
            if run.incumbent is not None:
                run.lb = max(run.lb, run.incumbent.score)
            return run.finish(TERM_EXHAUSTED, 0)
        layer = mask.bit_count()
        if run.over_budget(len(open_g), 0, n - layer):
            return run.finish(TERM_NODE, len(open_g))
        inc = run.incumbent
        if inc is not None and g + h(mask) >= inc.score:
            del open_g[mask]
            continue

        del open_g[mask]
        closed.add(mask)
        stats.expanded += 1
        if mask in ever_expanded:
            stats.reexpanded += 1
        else:
            ever_expanded.add(mask)

        remaining = full & ~mask
        while remaining:
            low = remaining & -remaining
            remaining ^= low
            succ = mask | low
            x = low.bit_length() - 1
            g_new = g + best(x, mask)[0]
            old = gmap.get(succ)
            if old is not None and g_new >= old[0]:
                continue
            if succ == full:
                gmap[succ] = (g_new, x)
                if run.improve_incumbent():
                    run.emit(EVENT_INCUMBENT)
                continue
            hs = h(succ)
            inc = run.incumbent
            if inc is not None and g_new + hs >= inc.score:
                continue
            gmap[succ] = (g_new, x)
            closed.discard(succ)
            open_g[succ] = g_new
            heapq.heappush(wheap, (g_new + eps * hs, -g_new, succ))
            heapq.heappush(fheap, (g_new + hs, succ, g_new))
            stats.generated += 1
        run.raise_lb(lb_candidate())
        if run.proved():
            return run.finish(TERM_EXHAUSTED, len(open_g))


# ---------------------------------------------------------------------------
# Anytime Repairing A*


def _run_ara(
    store: PopsStore,
    h: Heuristic,
    eps0: float,
    step: float,
    time_limit_ms: int | None,
    node_limit: int | None,
    cancel,
) -> SolveResult:
    run = _Run(store, h, time_limit_ms, node_limit, cancel)
    n, full, gmap, stats = run.n, run.full, run.gmap, run.stats
    best = store.best

    open_g: dict[int, float] = {0: 0.0}
    repair_g: dict[int, float] = {}
    fheap: list[tuple[float, int, float]] = [(h(0), 0, 0.0)]
    ever_expanded: set[int] = set()
    fpeek = _make_fpeek(
        fheap, lambda m, g: open_g.get(m) == g or repair_g.get(m) == g
    )

    def lb_candidate() -> float | None:
        fp = fpeek()
        if fp is not None:
            return fp
        if run.incumbent is not None:
            return run.incumbent.score
        return None

    iteration = 0
    while True:
        eps_i = max(1.0, eps0 - iteration * step)
        if iteration > 0:
            open_g.update(repair_g)
            repair_g = {}
        # Weighted keys change with eps, so the open heap is rebuilt.
        wheap = [(gv + eps_i * h(m), -gv, m) for m, gv in open_g.items()]
        heapq.heapify(wheap)
        closed_iter: set[int] = set()

        while True:
            term = run.interrupted()
            if term is not None:
                return run.finish(term, len(open_g) + len(repair_g))
            mask = -1
            while wheap:
                _, neg_g, m = heapq.heappop(wheap)
                if open_g.get(m) == -neg_g:
                    mask = m
                    g = -neg_g
                    break
            if mask < 0:
                break
            layer = mask.bit_count()
            if run.over_budget(len(open_g) + len(repair_g), 0, n - layer):
                return run.finish(TERM_NODE, len(open_g) + len(repair_g))
            inc = run.incumbent
            if inc is not None and g + h(mask) >= inc.score:
                del open_g[mask]
                continue

            del open_g[mask]
            stats.expanded += 1
            if mask in ever_expanded:
                stats.reexpanded += 1
            else:
                ever_expanded.add(mask)
            if mask == full:
                if run.improve_incumbent():
                    run.emit(EVENT_INCUMBENT)
                break  # a solution ends the iteration
            closed_iter.add(mask)

            remaining = full & ~mask
            while remaining:
                low = remaining & -remaining
                remaining ^= low
                succ = mask | low
                x = low.bit_length() - 1
                g_new = g + best(x, mask)[0]
                old = gmap.get(succ)
                if old is not None and g_new >= old[0]:
                    continue
                hs = h(succ)
                inc = run.incumbent
                if inc is not None and g_new + hs >= inc.score:
                    continue
                gmap[succ] = (g_new, x)
                if succ in closed_iter:
                    # Deferred to the next iteration instead of reopening.
                    repair_g[succ] = g_new
                else:
                    open_g[succ] = g_new
                    heapq.heappush(wheap, (g_new + eps_i * hs, -g_new, succ))
                heapq.heappush(fheap, (g_new + hs, succ, g_new))
                stats.generated += 1
            run.raise_lb(lb_candidate())
            if run.proved():
                return run.finish(
                    TERM_EXHAUSTED, len(open_g) + len(repair_g)
                )

        if run.incumbent is not None:
            # Completing an iteration at weight eps_i certifies the
            # incumbent to within that factor.
            run.raise_lb(run.incumbent.score / eps_i)
        run.emit(EVENT_ITERATION)
        live = len(open_g) + len(repair_g)
        if live == 0 and run.incumbent is not None:
            run.lb = max(run.lb, run.incumbent.score)
            return run.finish(TERM_EXHAUSTED, 0)
        if run.proved() or eps_i <= 1.0:
            if run.incumbent is not None and eps_i <= 1.0:
                run.lb = max(run.lb, run.incumbent.score)
            return run.finish(TERM_EXHAUSTED, live)
        iteration += 1


# ---------------------------------------------------------------------------
# Anytime Window A*


def _run_awina(
    store: PopsStore,
    h: Heuristic,
    w0: int,
    wstep: int,
    time_limit_ms: int | None,
    node_limit: int | None,
    cancel,
) -> SolveResult:
    run = _Run(store, h, time_limit_ms, node_limit, cancel)
    n, full, gmap, stats = run.n, run.full, run.gmap, run.stats
    best = store.best

    open_g: dict[int, float] = {0: 0.0}
    frozen_g: dict[int, float] = {}
    fheap: list[tuple[float, int, float]] = [(h(0), 0, 0.0)]
    ever_expanded: set[int] = set()
    fpeek = _make_fpeek(
        fheap, lambda m, g: open_g.get(m) == g or frozen_g.get(m) == g
    )

    def lb_candidate() -> float | None:
        fp = fpeek()
        if fp is not None:
            return fp
        if run.incumbent is not None:
            return run.incumbent.score
        return None

    goal_expanded = False
    iteration = 0
    while True:
        w = w0 + iteration * wstep
        if iteration > 0:
            open_g = frozen_g
            frozen_g = {}
        wheap = [(gv + h(m), -gv, m) for m, gv in open_g.items()]
        heapq.heapify(wheap)
        closed_iter: set[int] = set()
        freeze_below = -1

        while True:
            term = run.interrupted()
            if term is not None:
                return run.finish(term, len(open_g), len(frozen_g))
            mask = -1
            while wheap:
                _, neg_g, m = heapq.heappop(wheap)
                if open_g.get(m) == -neg_g:
                    mask = m
                    g = -neg_g
                    break
            if mask < 0:
                break
            layer = mask.bit_count()
            if run.over_budget(len(open_g), len(frozen_g), n - layer):
                return run.finish(TERM_NODE, len(open_g), len(frozen_g))
            if layer <= freeze_below:
                del open_g[mask]
                frozen_g[mask] = g  # stored for the next iteration
                continue
            inc = run.incumbent
            if inc is not None and g + h(mask) >= inc.score:
                del open_g[mask]
                continue

            del open_g[mask]
            stats.expanded += 1
            if mask in ever_expanded:
                stats.reexpanded += 1
            else:
                ever_expanded.add(mask)
            freeze_below = max(freeze_below, layer - w)
            if mask == full:
                goal_expanded = True
                if run.improve_incumbent():
                    run.emit(EVENT_INCUMBENT)
                run.raise_lb(lb_candidate())
                if run.proved():
                    return run.finish(
                        TERM_EXHAUSTED, len(open_g), len(frozen_g)
                    )
                continue  # expanding the goal does not end the iteration
            closed_iter.add(mask)

            remaining = full & ~mask
            while remaining:
                low = remaining & -remaining
                remaining ^= low
                succ = mask | low
                x = low.bit_length() - 1
                g_new = g + best(x, mask)[0]
                old = gmap.get(succ)
                if old is not None and g_new >= old[0]:
                    continue
                hs = h(succ)
                inc = run.incumbent
                if inc is not None and g_new + hs >= inc.score:
                    continue
                gmap[succ] = (g_new, x)
                if succ in closed_iter or succ in frozen_g:
                    # Expanded or frozen this iteration: record the better
                    # path and hand the node to the next iteration.
                    frozen_g[succ] = g_new
                else:
                    open_g[succ] = g_new
                    heapq.heappush(wheap, (g_new + hs, -g_new, succ))
                heapq.heappush(fheap, (g_new + hs, succ, g_new))
                stats.generated += 1
            run.raise_lb(lb_candidate())
            if run.proved():
                return run.finish(TERM_EXHAUSTED, len(open_g), len(frozen_g))

        run.raise_lb(lb_candidate())
        run.emit(EVENT_ITERATION)
        if not frozen_g:
            # Nothing was frozen: this iteration was an unrestricted
            # search, so the incumbent is optimal.
            if run.incumbent is not None and goal_expanded:
                run.lb = max(run.lb, run.incumbent.score)
            return run.finish(TERM_EXHAUSTED, len(open_g), 0)
        if run.proved():
            return run.finish(TERM_EXHAUSTED, len(open_g), len(frozen_g))
        iteration += 1


# ---------------------------------------------------------------------------
# Public entry points


def astar(store, h, *, time_limit_ms=None, node_limit=None, cancel=None) -> SolveResult:
    return _run_wastar(store, h, 1.0, time_limit_ms, node_limit, cancel)


def weighted_astar(
    store, h, epsilon, *, time_limit_ms=None, node_limit=None, cancel=None
) -> SolveResult:
    if epsilon < 1.0:
        raise InvalidConfig("epsilon must be >= 1")
    return _run_wastar(store, h, epsilon, time_limit_ms, node_limit, cancel)


def anytime_weighted_astar(
    store, h, epsilon=1.25, *, time_limit_ms=None, node_limit=None, cancel=None
) -> SolveResult:
    if epsilon < 1.0:
        raise InvalidConfig("epsilon must be >= 1")
    return _run_aweia(store, h, epsilon, time_limit_ms, node_limit, cancel)


def ara_star(
    store,
    h,
    epsilon=1.25,
    epsilon_step=0.05,
    *,
    time_limit_ms=None,
    node_limit=None,
    cancel=None,
) -> SolveResult:
    if epsilon < 1.0:
        raise InvalidConfig("epsilon must be >= 1")
    if epsilon_step <= 0.0:
        raise InvalidConfig("epsilon_step must be > 0")
    return _run_ara(store, h, epsilon, epsilon_step, time_limit_ms, node_limit, cancel)


def anytime_window_astar(
    store,
    h,
    window_init=0,
    window_step=1,
    *,
    time_limit_ms=None,
    node_limit=None,
    cancel=None,
) -> SolveResult:
    if window_init < 0 or window_step < 1:
        raise InvalidConfig("window_init must be >= 0 and window_step >= 1")
    return _run_awina(
        store, h, window_init, window_step, time_limit_ms, node_limit, cancel
    )


def solve(
    source: Dataset | PopsStore,
    config: SearchConfig | None = None,
    *,
    max_parents: int | None = None,
    cancel=None,
) -> SolveResult:
    """Dispatch one configured search over a dataset or a prebuilt score store."""
    cfg = config if config is not None else SearchConfig()
    cfg.validate()
    if isinstance(source, PopsStore):
        store = source
    elif isinstance(source, Dataset):
        cap = max_parents if max_parents is not None else source.n - 1
        store = build_pops_store(source, max(1, cap))
    else:
        raise InvalidConfig("source must be a Dataset or a PopsStore")
    h = make_heuristic(store, cfg.heuristic, cfg.pd_groups)
    limits = dict(
        time_limit_ms=cfg.time_limit_ms, node_limit=cfg.node_limit, cancel=cancel
    )
    if cfg.algorithm == "astar":
        return astar(store, h, **limits)
    if cfg.algorithm == "wastar":
        return weighted_astar(store, h, cfg.epsilon, **limits)
    if cfg.algorithm == "aweia":
        return anytime_weighted_astar(store, h, cfg.epsilon, **limits)
    if cfg.algorithm == "ara":
        return ara_star(store, h, cfg.epsilon, cfg.epsilon_step, **limits)
    return anytime_window_astar(store, h, cfg.window_init, cfg.window_step, **limits)


def write_trace_csv(trace: Sequence[TraceRecord], dest) -> None:
    """One row per record; scores use six decimal places, a missing
    incumbent is an empty field."""
    stream, owned = (dest, False) if hasattr(dest, "write") else (
        open(dest, "w", encoding="utf-8"),
        True,
    )
    try:
        stream.write("elapsed_ms,event,incumbent_score,lower_bound,error_bound,expanded\n")
        for rec in trace:
            inc = "" if rec.incumbent_score is None else f"{rec.incumbent_score:.6f}"
            stream.write(
                f"{rec.elapsed_ms},{rec.event},{inc},"
                f"{rec.lower_bound:.6f},{rec.error_bound:.6f},{rec.expanded}\n"
            )
    finally:
        if owned:
            stream.close()
