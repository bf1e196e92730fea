"""Exact equitable coloring by saturation-guided branch and bound.

Search contract: depth-first, root seeded with a greedily colored maximal
clique; at each node branch on an uncolored vertex of maximum saturation
(ties: maximum degree, then lowest index) over the free colors up to one
new class, in increasing order. A child survives only if its color index
stays below the incumbent bound, the arithmetic largest-class test passes,
and (for the flow/comb variants) the chosen pruning engine finds some
candidate color count still alive. All tie-breaking is deterministic so
node counts are comparable across variants.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .coloring import PartialColoring, is_equitable, deficit_prune
from .decomposition import find_non_adjacent_cliques, restarted_decomposition
from .flownet import flow_prune
from .graph import Graph, greedy_maximal_clique
from .hallrules import comb_prune

VARIANTS = ("std", "flow", "comb")

_CLIQUE_STARTS = 5
_TIME_CHECK_MASK = 1023


@dataclass
class SolverConfig:
    variant: str = "std"
    time_limit: float = 3600.0
    cd_stride: int = 1
    cd_tries: int = 1
    seed: int = 0  # reserved for randomized tie-breaks; default path is deterministic

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}")
        if self.cd_stride < 1:
            raise ValueError("cd_stride must be >= 1")
        if self.time_limit <= 0:
            raise ValueError("time_limit must be positive")


@dataclass
class SearchStats:
    nodes: int = 0
    prunes_deficit: int = 0
    prunes_flow: int = 0
    prunes_hall_by_rule: dict = field(default_factory=dict)
    flow_solves: int = 0
    elapsed: float = 0.0
    timed_out: bool = False
    gap_closed_at_root: bool = False

    @property
    def prunes_hall(self) -> int:
        return sum(self.prunes_hall_by_rule.values())


@dataclass
class Solution:
    chi_eq: int
    coloring: list[int]
    optimal: bool


def _best_greedy_clique(g: Graph) -> list[int]:
    """Largest of a few greedy maximal cliques, grown from the
    highest-degree vertices; deterministic."""
    starts = sorted(range(g.n), key=lambda v: (-g.degree[v], v))[:_CLIQUE_STARTS]
    best = None
    for s in starts:
        clique = greedy_maximal_clique(g, s)
        if best is None or len(clique) > len(best):
            best = clique
    return best


def _capped_greedy(g: Graph, k: int):
    """Saturation-order greedy into k classes capped at ceil(n/k); returns
    (colors_used, coloring) when the result is a complete equitable
    coloring, else None."""
    n = g.n
    cap = -(-n // k)
    full = (1 << k) - 1
    color = [-1] * n
    fmask = [0] * n
    sat = [0] * n
    degree = g.degree
    adj = g.adj
    size = [0] * k
    for _ in range(n):
        best_v = -1
        best_key = None
        for v in range(n):
            if color[v] >= 0:
                continue
            key = (sat[v], degree[v], -v)
            if best_key is None or key > best_key:
                best_v, best_key = v, key
        v = best_v
        mask = ~fmask[v] & full
        chosen = -1
        while mask:
            bit = mask & -mask
            i = bit.bit_length() - 1
            if size[i] < cap:
                chosen = i
                break
            mask ^= bit
        if chosen < 0:
            return None
        color[v] = chosen
        size[chosen] += 1
        bit = 1 << chosen
        for w in adj[v]:
            if color[w] < 0 and not fmask[w] & bit:
                fmask[w] |= bit
                sat[w] += 1
    used = [i for i in range(k) if size[i] > 0]
    sizes = [size[i] for i in used]
    if max(sizes) - min(sizes) > 1:
        return None
    if len(used) < k:
        remap = {old: new for new, old in enumerate(used)}
        color = [remap[c] for c in color]
    return len(used), color


def initial_bounds(g: Graph):
    """(k_lower, k_upper, incumbent): clique bound below, capped greedy
    above. The greedy retries with one more color on failure and cannot
    fail at k = n."""
    if g.n == 0:
        raise ValueError("graph must be nonempty")
    k_lower = len(_best_greedy_clique(g))
    for k in range(k_lower, g.n + 1):
        result = _capped_greedy(g, k)
        if result is not None:
            k_upper, coloring = result
            return k_lower, k_upper, coloring
    raise AssertionError("capped greedy must succeed at k = n")


def solve(g: Graph, cfg: SolverConfig | None = None):
    """Exact chi_eq with witness, or the best incumbent on timeout."""
    if cfg is None:
        cfg = SolverConfig()
    t0 = time.perf_counter()
    deadline = t0 + cfg.time_limit
    stats = SearchStats()
    k_lower, k_upper, incumbent = initial_bounds(g)
    if k_lower >= k_upper:
        stats.nodes = 1
        stats.gap_closed_at_root = True
        stats.elapsed = time.perf_counter() - t0
        return Solution(k_upper, incumbent, True), stats

    variant = cfg.variant
    pc = PartialColoring(g, k_cap=k_upper)
    root_clique = _best_greedy_clique(g)
    for idx, v in enumerate(root_clique):
        pc.extend(v, idx)
    root_depth = pc.depth

    decomp = None
    if variant != "std":
        decomp = restarted_decomposition(g, pc.uncolored, cfg.cd_tries)

    degree = g.degree
    sat = pc.sat
    uncolored = pc.uncolored
    stride = cfg.cd_stride
    stack = []
    timed_out = False

    def push_children(depth: int) -> None:
        v = -1
        best_key = None
        for u in uncolored:
            key = (sat[u], degree[u], -u)
            if best_key is None or key > best_key:
                v, best_key = u, key
        limit = pc.k_used + 1
        if limit > k_upper - 1:
            limit = k_upper - 1
        mask = pc.free_mask(v, limit)
        child_depth = depth + 1
        # iterate colors descending so the LIFO pop order is ascending
        while mask:
            i = mask.bit_length() - 1
            mask ^= 1 << i
            pc.extend(v, i)
            if deficit_prune(pc, k_lower):
                stats.prunes_deficit += 1
            elif variant == "flow":
                child_decomp = decomp.restricted_to(uncolored)
                if flow_prune(pc, child_decomp, k_lower, k_upper, stats):
                    stats.prunes_flow += 1
                else:
                    stack.append((child_depth, v, i))
            elif variant == "comb":
                child_decomp = decomp.restricted_to(uncolored)
                if not comb_prune(pc, child_decomp, k_lower, k_upper, stats):
                    stack.append((child_depth, v, i))
            else:
                stack.append((child_depth, v, i))
            pc.retract()

    nodes = 1  # root
    if uncolored:
        push_children(0)
    else:
        if is_equitable(pc, pc.k_used) and pc.k_used < k_upper:
            k_upper = pc.k_used
            incumbent = list(pc.color_of)

    while stack:
        depth, v, i = stack.pop()
        if i > k_upper - 2:
            continue  # bound improved since this child was queued
        while pc.depth - root_depth >= depth:
            pc.retract()
        pc.extend(v, i)
        nodes += 1
        if nodes & _TIME_CHECK_MASK == 0 and time.perf_counter() > deadline:
            timed_out = True
            break
        if not uncolored:
            if pc.k_used < k_upper and is_equitable(pc, pc.k_used):
                k_upper = pc.k_used
                incumbent = list(pc.color_of)
                if k_upper <= k_lower:
                    break  # bounds met: optimal proven
            continue
        if variant != "std" and nodes % stride == 0:
            decomp = find_non_adjacent_cliques(g, uncolored)
        push_children(depth)

    stats.nodes = nodes
    stats.elapsed = time.perf_counter() - t0
    stats.timed_out = timed_out
    return Solution(k_upper, incumbent, not timed_out), stats
