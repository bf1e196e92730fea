"""Shared test utilities: random state generators and independent
reference implementations used to cross-check the package (kept separate
from the library so each check has two routes)."""

from __future__ import annotations

import random

from eqcolor import (
    CliqueDecomposition,
    FlowNetwork,
    Graph,
    PartialColoring,
    gen_gnp,
)
from eqcolor.decomposition import find_non_adjacent_cliques


def random_partial_coloring(rng, g: Graph, k0: int) -> PartialColoring:
    """Color a random subset greedily within the size windows of k0 so the
    state is a plausible search node (k_used <= k0, M <= ceil)."""
    n = g.n
    pc = PartialColoring(g)
    ceil = -(-n // k0)
    order = list(range(n))
    rng.shuffle(order)
    ncol = rng.randint(0, n - 1)
    for v in order[:ncol]:
        lim = min(pc.k_used + 1, k0)
        mask = pc.free_mask(v, lim)
        choices = [
            i for i in range(lim) if (mask >> i) & 1 and pc.class_size[i] < ceil
        ]
        if choices:
            pc.extend(v, rng.choice(choices))
    return pc


def random_state(rng, n_max=10, n_min=2, k0_max=None):
    """(graph, partial coloring, decomposition, k0) tuple satisfying the
    network preconditions; decomposition flavor is randomized."""
    while True:
        n = rng.randint(n_min, n_max)
        p = rng.uniform(0.05, 0.95)
        g = gen_gnp(n, p, rng.getrandbits(32))
        hi = n if k0_max is None else min(n, k0_max)
        k0 = rng.randint(1, hi)
        pc = random_partial_coloring(rng, g, k0)
        if pc.k_used > k0 or pc.M > -(-n // k0):
            continue
        decomp = random_decomposition(rng, g, pc.uncolored)
        return g, pc, decomp, k0


def random_decomposition(rng, g: Graph, uncolored) -> CliqueDecomposition:
    """Trivial, greedy, or randomly seeded-greedy decomposition."""
    kind = rng.randrange(3)
    if kind == 0 or not uncolored:
        return CliqueDecomposition((), set(uncolored))
    if kind == 1:
        return find_non_adjacent_cliques(g, uncolored)
    return find_non_adjacent_cliques(g, uncolored, first_pick=rng.choice(sorted(uncolored)))


def cliques_only_state(rng, max_cliques=3, max_colored=4):
    """A state whose uncolored set is exactly a union of pairwise
    non-adjacent cliques (empty residual), for the exactness corpus."""
    sizes = [rng.randint(2, 3) for _ in range(rng.randint(1, max_cliques))]
    extra = rng.randint(0, max_colored)
    n = sum(sizes) + extra
    if n > 10:
        return None
    edges = []
    cliques = []
    base = 0
    for s in sizes:
        members = list(range(base, base + s))
        cliques.append(members)
        for a in range(s):
            for b in range(a + 1, s):
                edges.append((members[a], members[b]))
        base += s
    colored = list(range(base, n))
    for v in colored:
        for u in range(v):
            if rng.random() < 0.4:
                edges.append((u, v))
    g = Graph(n, edges)
    k0 = rng.randint(1, n)
    ceil = -(-n // k0)
    pc = PartialColoring(g)
    for v in colored:
        lim = min(pc.k_used + 1, k0)
        mask = pc.free_mask(v, lim)
        choices = [
            i for i in range(lim) if (mask >> i) & 1 and pc.class_size[i] < ceil
        ]
        if not choices:
            return None
        pc.extend(v, rng.choice(choices))
    if pc.k_used > k0 or pc.M > ceil:
        return None
    decomp = CliqueDecomposition(cliques, set())
    return g, pc, decomp, k0


def find_extension(g: Graph, pc: PartialColoring, k0: int):
    """Independent extension search (no symmetry breaking, no pruning
    beyond the size windows): returns a full color list or None."""
    n = g.n
    floor_size = n // k0
    ceil_size = -(-n // k0)
    color_of = list(pc.color_of)
    sizes = [0] * k0
    for c in color_of:
        if c >= k0:
            return None
        if c >= 0:
            sizes[c] += 1
    if any(s > ceil_size for s in sizes):
        return None
    todo = sorted(pc.uncolored)

    def rec(idx):
        if idx == len(todo):
            if all(floor_size <= s <= ceil_size for s in sizes):
                return True
            return False
        v = todo[idx]
        for i in range(k0):
            if sizes[i] >= ceil_size:
                continue
            if any(color_of[w] == i for w in g.adj[v]):
                continue
            color_of[v] = i
            sizes[i] += 1
            if rec(idx + 1):
                return True
            sizes[i] -= 1
            color_of[v] = -1
        return False

    return color_of if rec(0) else None


def table1_flow(net: FlowNetwork, full_coloring) -> list[int]:
    """Transform a complete extension into per-arc flow values: one unit
    from the source per uncolored vertex, through its chosen color copy,
    summed per part on the copy->color arcs and per color into the sink."""
    flows = []
    part_of = {}
    for j, part in enumerate(net.parts):
        for v in part:
            part_of[v] = j
    k0 = net.k0
    for v in net.u_vertices:
        flows.append(1)
    f_loads = {}
    for v, i in net.a2_info:
        x = 1 if full_coloring[v] == i else 0
        flows.append(x)
        if x:
            key = (part_of[v], i)
            f_loads[key] = f_loads.get(key, 0) + 1
    c_loads = [0] * k0
    for j in range(len(net.parts)):
        for i in range(k0):
            x = f_loads.get((j, i), 0)
            flows.append(x)
            c_loads[i] += x
    for i in range(k0):
        flows.append(c_loads[i])
    return flows


def check_flow(net: FlowNetwork, flows) -> None:
    """Validate a flow vector: window per arc, conservation at internal
    nodes, and full value out of the source."""
    assert len(flows) == len(net.arcs)
    balance = [0] * net.num_nodes
    for (tail, head, lo, up), x in zip(net.arcs, flows):
        assert lo <= x <= up, f"arc ({tail},{head}) flow {x} outside [{lo},{up}]"
        balance[tail] -= x
        balance[head] += x
    for node in range(net.num_nodes):
        if node in (net.source, net.sink):
            continue
        assert balance[node] == 0, f"conservation violated at node {node}"
    assert -balance[net.source] == net.value_target
    assert balance[net.sink] == net.value_target


def assignment_feasible(net: FlowNetwork) -> bool:
    """Brute-force feasibility oracle for tiny networks: try every way of
    assigning each uncolored vertex one of its arcs (or checking the color
    windows directly), independent of any flow algorithm."""
    k0 = net.k0
    part_of = {}
    for j, part in enumerate(net.parts):
        for v in part:
            part_of[v] = j
    options = {v: [] for v in net.u_vertices}
    for v, i in net.a2_info:
        options[v].append(i)
    lo = []
    hi = []
    for tail, head, l, u in net.arcs[-k0:]:
        lo.append(l)
        hi.append(u)
    verts = list(net.u_vertices)
    loads = [0] * k0
    part_use = {}

    def rec(idx):
        if idx == len(verts):
            return all(lo[i] <= loads[i] <= hi[i] for i in range(k0))
        rest = len(verts) - idx
        need = sum(max(0, lo[i] - loads[i]) for i in range(k0))
        if need > rest:
            return False
        v = verts[idx]
        j = part_of[v]
        alpha = net.alphas[j]
        for i in options[v]:
            if loads[i] >= hi[i]:
                continue
            key = (j, i)
            if part_use.get(key, 0) >= alpha:
                continue
            loads[i] += 1
            part_use[key] = part_use.get(key, 0) + 1
            if rec(idx + 1):
                return True
            loads[i] -= 1
            part_use[key] -= 1
        return False

    return rec(0)


def recompute_conflicts(pc: PartialColoring):
    """From-scratch forbidden sets and saturation, for comparing against
    the incrementally maintained ones."""
    g = pc.g
    forbidden = [0] * g.n
    sat = [0] * g.n
    for v in range(g.n):
        seen = set()
        for w in g.adj[v]:
            c = pc.color_of[w]
            if c >= 0:
                seen.add(c)
        for c in seen:
            forbidden[v] |= 1 << c
        sat[v] = len(seen)
    return forbidden, sat


def proper_and_equitable(g: Graph, coloring, k: int) -> bool:
    """Independent validity check of a complete coloring."""
    if any(c < 0 for c in coloring):
        return False
    for u, v in g.edges:
        if coloring[u] == coloring[v]:
            return False
    sizes = {}
    for c in coloring:
        sizes[c] = sizes.get(c, 0) + 1
    if len(sizes) != k:
        return False
    return max(sizes.values()) - min(sizes.values()) <= 1
