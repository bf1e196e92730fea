"""Partial colorings with incremental bookkeeping and arithmetic pruning.

Colors are 0-based indices internally. A partial coloring tracks, per
vertex, the set of colors used by colored neighbors (as a bitmask plus a
multiplicity counter so retraction is exact), the saturation degree, and a
histogram of class sizes so the largest-class statistics cost O(1).
"""

from __future__ import annotations

from typing import NamedTuple

from .graph import Graph


class ClassSizeProfile(NamedTuple):
    count_ceil: int
    count_floor: int
    ceil_size: int
    floor_size: int


def class_size_profile(n: int, k0: int) -> ClassSizeProfile:
    """Class sizes forced by an equitable k0-coloring of n vertices:
    n mod k0 classes of size ceil(n/k0) and the rest of size floor(n/k0)."""
    if not 1 <= k0 <= n:
        raise ValueError(f"need 1 <= k0 <= n, got k0={k0}, n={n}")
    p = n % k0
    return ClassSizeProfile(p, k0 - p, -(-n // k0), n // k0)


class PartialColoring:
    """Mutable partial coloring supporting O(deg) extend/retract.

    `conflicts[v][i]` counts colored neighbors of v wearing color i;
    `forbidden_mask[v]` has bit i set iff conflicts[v][i] > 0 and `sat[v]`
    is the popcount of that mask. These are maintained for every vertex,
    colored or not, so a retract sequence restores earlier states exactly.

    `k_cap` bounds the largest color index ever assigned (memory for the
    conflict counters); it defaults to n.
    """

    __slots__ = (
        "g",
        "n",
        "k_cap",
        "color_of",
        "classes",
        "class_size",
        "uncolored",
        "conflicts",
        "forbidden_mask",
        "sat",
        "k_used",
        "M",
        "_size_hist",
        "_trail",
    )

    def __init__(self, g: Graph, k_cap: int | None = None):
        n = g.n
        k_cap = n if k_cap is None else k_cap
        self.g = g
        self.n = n
        self.k_cap = k_cap
        self.color_of = [-1] * n
        self.classes = [[] for _ in range(k_cap)]
        self.class_size = [0] * k_cap
        self.uncolored = set(range(n))
        self.conflicts = [[0] * k_cap for _ in range(n)]
        self.forbidden_mask = [0] * n
        self.sat = [0] * n
        self.k_used = 0
        self.M = 0
        self._size_hist = [0] * (n + 1)
        self._trail = []

    @property
    def t(self) -> int:
        """Number of classes of maximum size M (0 for the empty coloring)."""
        return self._size_hist[self.M] if self.M > 0 else 0

    @property
    def depth(self) -> int:
        return len(self._trail)

    def free_mask(self, v: int, k0: int) -> int:
        """Bitmask of colors in {0..k0-1} not forbidden for v."""
        return ~self.forbidden_mask[v] & ((1 << k0) - 1)

    def extend(self, v: int, i: int) -> None:
        """Place uncolored v into class i. Violating the preconditions
        (v uncolored, i free for v) is a programming error."""
        assert self.color_of[v] == -1, f"vertex {v} already colored"
        assert not (self.forbidden_mask[v] >> i) & 1, f"color {i} forbidden for {v}"
        self.color_of[v] = i
        self.uncolored.remove(v)
        self.classes[i].append(v)
        s = self.class_size[i]
        self.class_size[i] = s + 1
        if s == 0:
            self.k_used += 1
        else:
            self._size_hist[s] -= 1
        self._size_hist[s + 1] += 1
        if s + 1 > self.M:
            self.M = s + 1
        bit = 1 << i
        color_of = self.color_of
        forbidden = self.forbidden_mask
        sat = self.sat
        for w in self.g.adj[v]:
            cw = self.conflicts[w]
            if cw[i] == 0:
                forbidden[w] |= bit
                sat[w] += 1
            cw[i] += 1
        self._trail.append((v, i))

    def retract(self) -> tuple[int, int]:
        """Undo the most recent extend; returns the (vertex, color) undone."""
        v, i = self._trail.pop()
        self.color_of[v] = -1
        self.uncolored.add(v)
        popped = self.classes[i].pop()
        assert popped == v, "retract must mirror extend order (LIFO)"
        s = self.class_size[i]
        self.class_size[i] = s - 1
        self._size_hist[s] -= 1
        if s - 1 == 0:
            self.k_used -= 1
        else:
            self._size_hist[s - 1] += 1
        if s == self.M and self._size_hist[s] == 0:
            self.M = s - 1
        bit = 1 << i
        forbidden = self.forbidden_mask
        sat = self.sat
        for w in self.g.adj[v]:
            cw = self.conflicts[w]
            cw[i] -= 1
            if cw[i] == 0:
                forbidden[w] &= ~bit
                sat[w] -= 1
        return v, i


def deficit_prune(pc: PartialColoring, k_lower: int) -> bool:
    """Necessary-condition prune: a partial coloring extendable to an
    equitable coloring satisfies n >= (M-1)*max(k_lower, k_used) + t.
    Returns True when that fails (prune); False guarantees nothing."""
    M = pc.M
    if M == 0:
        return False
    k = pc.k_used
    if k_lower > k:
        k = k_lower
    return pc.n < (M - 1) * k + pc._size_hist[M]


def is_equitable(pc: PartialColoring, k0: int) -> bool:
    """True iff pc is a complete coloring into exactly k0 nonempty classes
    whose sizes pairwise differ by at most one."""
    if pc.uncolored:
        return False
    sizes = [s for s in pc.class_size if s > 0]
    if len(sizes) != k0:
        return False
    return max(sizes) - min(sizes) <= 1


def candidate_k0_values(pc: PartialColoring, k_lower: int, k_upper: int):
    """Color counts a pruning test must examine at this node: from
    max(k_used, k_lower) up to k_upper - 1, stopping as soon as the largest
    class no longer fits below ceil(n/k0)."""
    n = pc.n
    M = pc.M
    k0 = pc.k_used
    if k_lower > k0:
        k0 = k_lower
    if k0 < 1:
        k0 = 1
    while k0 <= k_upper - 1:
        if M > -(-n // k0):
            break
        yield k0
        k0 += 1
