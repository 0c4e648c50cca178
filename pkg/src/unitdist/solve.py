"""Exact maximum-independent-set and chromatic-number search.

A maximum independent set is computed as a maximum clique of the complement
graph, by branch and bound with greedy-coloring upper bounds at every node
(candidate sets and color classes are Python integers, so the inner loops are
bit-parallel). The branching vertex is always the one in the highest color
class. Chromatic numbers are bracketed between max(clique bound, ceil(n/alpha))
and a DSATUR coloring, then closed with a complete k-colorability search that
forces the first occurrence of each new color.

Tie-breaking is everywhere by lowest vertex index, so single-threaded runs are
bit-reproducible. With several worker threads the branch tree is split at the
root into independent subproblems sharing only the monotone best-so-far value;
the optimum value is thread-count independent because pruning against a stale
bound is sound, but the witness may differ from the single-threaded one.
"""
from __future__ import annotations

import random
import sys
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .core import (
    Graph,
    VertexSet,
    connected_components,
    induced_subgraph,
    iter_bits,
    ratio_lower_bound,
)


@dataclass(frozen=True)
class SolveOptions:
    """Search limits and determinism knobs shared by all solver entry points.

    Budgets default to unlimited; exceeding one yields an explicit incomplete
    or unknown result, never a silently wrong value. The node budget is
    enforced in small batches, so the actual node count may overshoot the
    limit by a few hundred nodes.
    """

    node_budget: int | None = None
    time_budget: float | None = None
    threads: int = 1
    seed: int = 1
    seed_tries: int = 300

    def __post_init__(self):
        if self.threads < 1:
            raise ValueError("threads must be at least 1")
        if self.node_budget is not None and self.node_budget < 0:
            raise ValueError("negative node budget")
        if self.time_budget is not None and self.time_budget <= 0:
            raise ValueError("time budget must be positive")


@dataclass(frozen=True)
class MisResult:
    """Exact independence number with an explicit witness."""

    alpha: int
    witness: VertexSet
    nodes_explored: int
    wall_time: float


@dataclass(frozen=True)
class MisIncomplete:
    """Budget ran out: best independent set found plus a certified upper bound."""

    lower_bound: int
    upper_bound: int
    witness: VertexSet
    nodes_explored: int
    wall_time: float


@dataclass(frozen=True)
class ColoringResult:
    """Exact chromatic number with a proper coloring, colors 1..chi."""

    chi: int
    coloring: tuple[int, ...]
    nodes_explored: int


@dataclass(frozen=True)
class ChiBracket:
    """Budget ran out: chi lies in [lower, upper]; coloring uses `upper` colors."""

    lower: int
    upper: int
    coloring: tuple[int, ...]
    nodes_explored: int


@dataclass(frozen=True)
class KColorOutcome:
    """Outcome of a k-colorability decision.

    status is "colorable" (with witness), "uncolorable" (search completed,
    no coloring exists), or "unknown" (budget exceeded before a decision).
    """

    status: str
    coloring: tuple[int, ...] | None
    nodes_explored: int


def check_independent_set(g: Graph, witness: VertexSet) -> bool:
    """Re-validate a claimed independent set straight off the adjacency rows."""
    if witness.n != g.n or witness.bits >> g.n:
        return False
    bits = witness.bits
    for v in iter_bits(bits):
        if g.adj[v] & bits:
            return False
    return True


def check_coloring(g: Graph, coloring: tuple[int, ...], k: int | None = None) -> bool:
    """Re-validate a claimed proper coloring; colors must lie in 1..k if given."""
    if len(coloring) != g.n:
        return False
    for v in range(g.n):
        c = coloring[v]
        if c < 1 or (k is not None and c > k):
            return False
        for w in iter_bits(g.adj[v]):
            if coloring[w] == c:
                return False
    return True


# ---------------------------------------------------------------------------
# Maximum clique kernel (bit-row branch and bound with coloring bounds)
# ---------------------------------------------------------------------------


class _Abort(Exception):
    pass


class _Incumbent:
    """Best clique found so far; the only value shared between workers."""

    __slots__ = ("value", "mask", "lock")

    def __init__(self, value: int, mask: int):
        self.value = value
        self.mask = mask
        self.lock = threading.Lock()

    def offer(self, value: int, mask: int) -> None:
        with self.lock:
            if value > self.value:
                self.value = value
                self.mask = mask


class _Limits:
    """Shared node/time budget and stop flag; monotone, checked in batches."""

    __slots__ = ("node_limit", "deadline", "stop_at", "nodes", "stop",
                 "budget_hit", "target_hit", "lock")

    def __init__(self, node_limit, deadline, stop_at):
        self.node_limit = node_limit
        self.deadline = deadline
        self.stop_at = stop_at
        self.nodes = 0
        self.stop = False
        self.budget_hit = False
        self.target_hit = False
        self.lock = threading.Lock()

    def flush(self, delta: int) -> None:
        with self.lock:
            self.nodes += delta
            if self.stop:
                raise _Abort
            if self.node_limit is not None and self.nodes > self.node_limit:
                self.budget_hit = True
                self.stop = True
                raise _Abort
        if self.deadline is not None and time.monotonic() > self.deadline:
            with self.lock:
                self.budget_hit = True
                self.stop = True
            raise _Abort

    def hit_target(self) -> None:
        with self.lock:
            self.target_hit = True
            self.stop = True
        raise _Abort


def _degeneracy_order(adj: list[int] | tuple[int, ...], n: int) -> list[int]:
    """Vertices in smallest-last removal order; ties broken by lowest index."""
    alive = (1 << n) - 1
    deg = [(adj[v]).bit_count() for v in range(n)]
    order = []
    for _ in range(n):
        best_v, best_d = -1, n + 1
        rest = alive
        while rest:
            low = rest & -rest
            rest ^= low
            v = low.bit_length() - 1
            if deg[v] < best_d:
                best_d, best_v = deg[v], v
        order.append(best_v)
        alive ^= 1 << best_v
        row = adj[best_v] & alive
        while row:
            low = row & -row
            row ^= low
            deg[low.bit_length() - 1] -= 1
    return order


def _relabel(adj, n: int, order: list[int]) -> list[int]:
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    out = [0] * n
    for v in range(n):
        row = adj[v]
        new_row = 0
        while row:
            low = row & -row
            row ^= low
            new_row |= 1 << pos[low.bit_length() - 1]
        out[pos[v]] = new_row
    return out


def _greedy_clique_multistart(nbr: list[int], n: int, rng: random.Random, tries: int) -> tuple[int, int]:
    """Randomized greedy cliques for an initial incumbent (value, mask)."""
    best, best_mask = 0, 0
    for _ in range(tries):
        v = rng.randrange(n)
        cur = 1 << v
        size = 1
        cand = nbr[v]
        while cand:
            nb = cand.bit_count()
            pick = -1
            pick_score = -1
            for _ in range(min(4, nb)):
                k = rng.randrange(nb)
                cc = cand
                for _ in range(k):
                    cc &= cc - 1
                w = (cc & -cc).bit_length() - 1
                score = (nbr[w] & cand).bit_count()
                if score > pick_score:
                    pick_score, pick = score, w
            cur |= 1 << pick
            size += 1
            cand &= nbr[pick]
        if size > best:
            best, best_mask = size, cur
    return best, best_mask


def _greedy_color_count(nbr: list[int], pool: int) -> int:
    """Colors used by first-fit coloring of `pool`, an upper bound on its clique number."""
    colors = 0
    rest = pool
    while rest:
        colors += 1
        q = rest
        while q:
            low = q & -q
            v = low.bit_length() - 1
            q = (q ^ low) & ~nbr[v]
            rest ^= low
    return colors


def _search_subtree(nbr: list[int], r_size0: int, r_mask0: int, p0: int,
                    inc: _Incumbent, lim: _Limits) -> tuple[int, bool]:
    """Run the branch and bound below one subproblem; returns (nodes, aborted)."""
    order_bufs: list[list[int]] = []
    color_bufs: list[list[int]] = []
    n = len(nbr)
    nodes = 0
    aborted = False

    def expand(depth: int, r_size: int, r_mask: int, pool: int) -> None:
        nonlocal nodes
        nodes += 1
        if nodes & 255 == 0:
            lim.flush(256)
        if depth == len(order_bufs):
            order_bufs.append([0] * n)
            color_bufs.append([0] * n)
        ob = order_bufs[depth]
        cb = color_bufs[depth]
        # Greedy color classes over the candidate pool, lowest index first.
        m = 0
        rest = pool
        color = 0
        while rest:
            color += 1
            q = rest
            while q:
                low = q & -q
                v = low.bit_length() - 1
                q = (q ^ low) & ~nbr[v]
                rest ^= low
                ob[m] = v
                cb[m] = color
                m += 1
        # Branch highest color first; everything at or below the cut is pruned.
        best = inc.value
        for i in range(m - 1, -1, -1):
            if r_size + cb[i] <= best:
                return
            v = ob[i]
            low = 1 << v
            new_pool = pool & nbr[v]
            if new_pool:
                expand(depth + 1, r_size + 1, r_mask | low, new_pool)
                best = inc.value
            elif r_size + 1 > best:
                inc.offer(r_size + 1, r_mask | low)
                best = inc.value
                if lim.stop_at is not None and best >= lim.stop_at:
                    lim.hit_target()
            pool ^= low

    try:
        if p0:
            expand(0, r_size0, r_mask0, p0)
        elif r_size0 > inc.value:
            inc.offer(r_size0, r_mask0)
            if lim.stop_at is not None and inc.value >= lim.stop_at:
                lim.hit_target()
    except _Abort:
        aborted = True
    return nodes, aborted


def _max_clique_masks(adj, n: int, *, initial_best: int = 0, stop_at: int | None = None,
                      options: SolveOptions) -> tuple[int, int, int, str, int]:
    """Maximum clique over bit rows `adj`.

    initial_best acts as a virtual incumbent: only cliques strictly larger are
    searched for, and the returned value equals initial_best when none exists.
    Returns (value, mask, nodes, status, coloring_upper_bound) with status one
    of "complete", "target", "budget".
    """
    if n == 0:
        return (0, 0, 0, "complete", 0)
    # branch depth is bounded by the clique size, which can reach n
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 2 * n + 200))
    order = _degeneracy_order(adj, n)
    nbr = _relabel(adj, n, order)
    full = (1 << n) - 1
    upper = _greedy_color_count(nbr, full)

    inc = _Incumbent(initial_best, 0)
    if options.seed_tries > 0:
        rng = random.Random(options.seed)
        seed_val, seed_mask = _greedy_clique_multistart(nbr, n, rng, options.seed_tries)
        inc.offer(seed_val, seed_mask)

    deadline = None
    if options.time_budget is not None:
        deadline = time.monotonic() + options.time_budget
    lim = _Limits(options.node_budget, deadline, stop_at)

    status = "complete"
    total_nodes = 0
    if stop_at is not None and inc.value >= stop_at:
        status = "target"
    elif inc.value >= upper:
        status = "complete"  # greedy already met the coloring bound
    elif options.threads == 1:
        nodes, aborted = _search_subtree(nbr, 0, 0, full, inc, lim)
        total_nodes = nodes
        if aborted:
            status = "target" if lim.target_hit else "budget"
    else:
        # Split the root's branch list into independent subproblems, highest
        # color first, exactly as the sequential loop would visit them.
        rest = full
        color = 0
        seen: list[tuple[int, int]] = []
        while rest:
            color += 1
            q = rest
            while q:
                low = q & -q
                v = low.bit_length() - 1
                q = (q ^ low) & ~nbr[v]
                rest ^= low
                seen.append((v, color))
        pool = full
        tasks: list[tuple[int, int, int]] = []
        for v, c in reversed(seen):
            tasks.append((v, c, pool & nbr[v]))
            pool ^= 1 << v

        def run(task):
            v, c, sub_pool = task
            if lim.stop:
                return (0, True)
            if c <= inc.value:
                return (0, False)
            return _search_subtree(nbr, 1, 1 << v, sub_pool, inc, lim)

        with ThreadPoolExecutor(max_workers=options.threads) as pool_exec:
            for nodes, _ in pool_exec.map(run, tasks):
                total_nodes += nodes
        if lim.target_hit:
            status = "target"
        elif lim.budget_hit:
            status = "budget"

    # Map the winning mask back to the caller's vertex labels.
    mask = 0
    rest = inc.mask
    while rest:
        low = rest & -rest
        rest ^= low
        mask |= 1 << order[low.bit_length() - 1]
    return (inc.value, mask, total_nodes, status, upper)


def _complement_rows(g: Graph) -> list[int]:
    full = g.full_mask
    return [full ^ g.adj[v] ^ (1 << v) for v in range(g.n)]


# ---------------------------------------------------------------------------
# Public solver entry points
# ---------------------------------------------------------------------------


def max_independent_set(g: Graph, options: SolveOptions | None = None) -> MisResult | MisIncomplete:
    """Exact alpha(g) with witness, as maximum clique of the complement."""
    opts = options or SolveOptions()
    t0 = time.perf_counter()
    if g.n == 0:
        return MisResult(0, VertexSet.empty(0), 0, time.perf_counter() - t0)
    value, mask, nodes, status, upper = _max_clique_masks(
        _complement_rows(g), g.n, options=opts)
    elapsed = time.perf_counter() - t0
    witness = VertexSet(g.n, mask)
    if status == "complete":
        return MisResult(value, witness, nodes, elapsed)
    return MisIncomplete(value, min(upper, g.n), witness, nodes, elapsed)


def alpha_vertex_transitive(g: Graph, pivot: int,
                            options: SolveOptions | None = None) -> MisResult | MisIncomplete:
    """alpha(g) for vertex-transitive g, via one level of pivot reduction.

    Valid only when the caller knows g is vertex-transitive: some maximum
    independent set then contains the pivot, so alpha(g) equals one plus the
    independence number of the subgraph induced on the pivot's non-neighbors.
    The reduced graph need not be vertex-transitive, so the reduction is never
    nested.
    """
    opts = options or SolveOptions()
    if not 0 <= pivot < g.n:
        raise ValueError(f"pivot {pivot} out of range")
    t0 = time.perf_counter()
    non_neighbors = g.full_mask ^ g.adj[pivot] ^ (1 << pivot)
    sub, index_map = induced_subgraph(g, VertexSet(g.n, non_neighbors))
    inner = max_independent_set(sub, opts)
    back = {new: old for old, new in index_map.items()}
    lift = (1 << pivot)
    for v in inner.witness:
        lift |= 1 << back[v]
    witness = VertexSet(g.n, lift)
    elapsed = time.perf_counter() - t0
    if isinstance(inner, MisResult):
        return MisResult(inner.alpha + 1, witness, inner.nodes_explored, elapsed)
    return MisIncomplete(inner.lower_bound + 1, min(inner.upper_bound + 1, g.n),
                         witness, inner.nodes_explored, elapsed)


def independent_set_decision(g: Graph, target: int,
                             options: SolveOptions | None = None) -> str:
    """Does g contain an independent set of size >= target?

    Returns "yes", "no", or "unknown" (budget exceeded). The search stops as
    soon as any qualifying set is found, so "yes" is usually much cheaper than
    an exact solve.
    """
    opts = options or SolveOptions()
    if target <= 0:
        return "yes"
    if target > g.n:
        return "no"
    value, _, _, status, _ = _max_clique_masks(
        _complement_rows(g), g.n,
        initial_best=target - 1, stop_at=target, options=opts)
    if status == "target" or value >= target:
        return "yes"
    if status == "complete":
        return "no"
    return "unknown"


def clique_lower_bound(g: Graph, tries: int | None = None) -> int:
    """Size of some clique found by deterministic greedy multistart; <= chi(g)."""
    n = g.n
    if n == 0:
        return 0
    starts = range(n) if tries is None else range(min(n, tries))
    best = 1
    for v in starts:
        cur_size = 1
        cand = g.adj[v]
        while cand:
            pick = -1
            pick_score = -1
            rest = cand
            while rest:
                low = rest & -rest
                rest ^= low
                w = low.bit_length() - 1
                score = (g.adj[w] & cand).bit_count()
                if score > pick_score:
                    pick_score, pick = score, w
            cur_size += 1
            cand &= g.adj[pick]
        if cur_size > best:
            best = cur_size
    return best


def greedy_coloring_bound(g: Graph, order: str = "dsatur") -> tuple[int, tuple[int, ...]]:
    """Valid coloring by a greedy policy; (color count, coloring with colors 1..k).

    Policies: "dsatur" (max saturation, tie max degree, tie lowest index),
    "degree" (static descending degree), "lex" (vertex index order).
    """
    n = g.n
    if n == 0:
        return (0, ())
    colors = [0] * n
    if order == "lex":
        sequence = list(range(n))
    elif order == "degree":
        sequence = sorted(range(n), key=lambda v: (-g.adj[v].bit_count(), v))
    elif order == "dsatur":
        sequence = None
    else:
        raise ValueError(f"unknown ordering policy {order!r}")

    forbidden = [0] * n
    if sequence is not None:
        for v in sequence:
            c = 0
            used = forbidden[v]
            while (used >> c) & 1:
                c += 1
            colors[v] = c + 1
            for w in iter_bits(g.adj[v]):
                forbidden[w] |= 1 << c
    else:
        degs = [g.adj[v].bit_count() for v in range(n)]
        uncolored = g.full_mask
        for _ in range(n):
            best_v = -1
            best_key = (-1, -1)
            rest = uncolored
            while rest:
                low = rest & -rest
                rest ^= low
                v = low.bit_length() - 1
                key = (forbidden[v].bit_count(), degs[v])
                if key > best_key:
                    best_key, best_v = key, v
            c = 0
            used = forbidden[best_v]
            while (used >> c) & 1:
                c += 1
            colors[best_v] = c + 1
            uncolored ^= 1 << best_v
            for w in iter_bits(g.adj[best_v] & uncolored):
                forbidden[w] |= 1 << c
    return (max(colors), tuple(colors))


def k_colorable(g: Graph, k: int, options: SolveOptions | None = None) -> KColorOutcome:
    """Complete k-colorability decision with a witness when colorable.

    Branch and bound with saturation-degree vertex selection; color symmetry
    is broken by allowing at most one fresh color per vertex, so the first
    occurrence of each new color is forced.
    """
    opts = options or SolveOptions()
    if k < 1:
        raise ValueError("k must be at least 1")
    n = g.n
    if n == 0:
        return KColorOutcome("colorable", (), 0)
    greedy_k, greedy_cols = greedy_coloring_bound(g, "dsatur")
    if greedy_k <= k:
        return KColorOutcome("colorable", greedy_cols, 0)
    if any(g.adj[v] for v in range(n)) and k == 1:
        return KColorOutcome("uncolorable", None, 0)

    sys.setrecursionlimit(max(sys.getrecursionlimit(), 2 * n + 200))
    colors = [0] * n
    forbidden = [0] * n
    degs = [g.adj[v].bit_count() for v in range(n)]
    full_c = (1 << k) - 1
    nodes = 0
    node_limit = opts.node_budget
    deadline = (time.monotonic() + opts.time_budget) if opts.time_budget else None

    def place(count: int, max_used: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes & 255 == 0:
            if node_limit is not None and nodes > node_limit:
                raise _Abort
            if deadline is not None and time.monotonic() > deadline:
                raise _Abort
        if count == n:
            return True
        # DSATUR selection: max saturation, tie max degree, tie lowest index.
        v = -1
        best_key = (-1, -1)
        for w in range(n):
            if colors[w] == 0:
                key = (forbidden[w].bit_count(), degs[w])
                if key > best_key:
                    best_key, v = key, w
        allowed = ~forbidden[v] & ((1 << min(max_used + 1, k)) - 1)
        while allowed:
            low = allowed & -allowed
            allowed ^= low
            c = low.bit_length() - 1
            colors[v] = c + 1
            touched: list[int] = []
            dead = False
            for w in iter_bits(g.adj[v]):
                if colors[w] == 0 and not (forbidden[w] >> c) & 1:
                    forbidden[w] |= low
                    touched.append(w)
                    if forbidden[w] == full_c:
                        dead = True
            if not dead and place(count + 1, max(max_used, c + 1)):
                return True
            colors[v] = 0
            for w in touched:
                forbidden[w] ^= low
        return False

    try:
        found = place(0, 0)
    except _Abort:
        return KColorOutcome("unknown", None, nodes)
    if found:
        witness = tuple(colors)
        return KColorOutcome("colorable", witness, nodes)
    return KColorOutcome("uncolorable", None, nodes)


def _chi_connected(g: Graph, opts: SolveOptions, deadline: float | None) -> ColoringResult | ChiBracket:
    """Exact chromatic number of one connected graph by bracket-and-close."""
    if g.edge_count() == 0:
        return ColoringResult(1, (1,) * g.n, 0)
    upper, upper_coloring = greedy_coloring_bound(g, "dsatur")
    lower = clique_lower_bound(g)
    nodes = 0

    def remaining() -> float | None:
        if deadline is None:
            return None
        return max(deadline - time.monotonic(), 0.001)

    mis = max_independent_set(
        g, SolveOptions(node_budget=opts.node_budget, time_budget=remaining(),
                        threads=opts.threads, seed=opts.seed, seed_tries=opts.seed_tries))
    nodes += mis.nodes_explored
    alpha_high = mis.alpha if isinstance(mis, MisResult) else mis.upper_bound
    lower = max(lower, ratio_lower_bound(g.n, alpha_high))

    k = lower
    while k < upper:
        outcome = k_colorable(
            g, k, SolveOptions(node_budget=opts.node_budget, time_budget=remaining(),
                               threads=1, seed=opts.seed, seed_tries=opts.seed_tries))
        nodes += outcome.nodes_explored
        if outcome.status == "colorable":
            return ColoringResult(k, outcome.coloring, nodes)
        if outcome.status == "unknown":
            return ChiBracket(k, upper, upper_coloring, nodes)
        k += 1
    return ColoringResult(upper, upper_coloring, nodes)


def chromatic_number(g: Graph, options: SolveOptions | None = None) -> ColoringResult | ChiBracket:
    """Exact chi(g), or the surviving bracket when a budget is exceeded.

    Components are solved independently (the chromatic number of a graph is
    the maximum over its connected components) and their colorings are
    stitched back together.
    """
    opts = options or SolveOptions()
    if g.n == 0:
        return ColoringResult(0, (), 0)
    deadline = (time.monotonic() + opts.time_budget) if opts.time_budget else None

    coloring = [0] * g.n
    lower = 0
    upper = 0
    nodes = 0
    exact = True
    for comp in connected_components(g):
        sub, index_map = induced_subgraph(g, comp)
        res = _chi_connected(sub, opts, deadline)
        nodes += res.nodes_explored
        if isinstance(res, ColoringResult):
            lower = max(lower, res.chi)
            upper = max(upper, res.chi)
            sub_coloring = res.coloring
        else:
            exact = False
            lower = max(lower, res.lower)
            upper = max(upper, res.upper)
            sub_coloring = res.coloring
        for old, new in index_map.items():
            coloring[old] = sub_coloring[new]
    if exact:
        return ColoringResult(upper, tuple(coloring), nodes)
    return ChiBracket(lower, upper, tuple(coloring), nodes)
