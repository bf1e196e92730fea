"""Arithmetic pruning rules derived from the extendability network.

Each rule is a necessary condition for the network to carry a full flow,
so a single failing rule proves the branch dead for that color count. The
menu follows the practical selection: color sets of size one or all-but-one
on both the "fill up" (positive) and the "must fit" (negative) side, plus
a complete per-clique distinct-representatives check done by bipartite
matching instead of enumerating subsets.
"""

from __future__ import annotations

from .coloring import PartialColoring, candidate_k0_values
from .decomposition import CliqueDecomposition

RULE_NAMES = (
    "positive_single",
    "clique_hall",
    "negative",
    "positive_complement",
)


class HallContext:
    """Per-(coloring, decomposition, k0) aggregates the rules read.

    All counts restrict free colors to {0..k0-1}: only those exist in the
    network. Vertices with no free color at all still count on the
    "must be colored within T" side.
    """

    __slots__ = (
        "pc",
        "decomp",
        "k0",
        "floor_size",
        "ceil_size",
        "n_u",
        "class_sizes",
        "clique_masks",
        "cliques_with_color",
        "resid_with_color",
        "free_count",
        "single_free",
        "empty_free",
    )

    def __init__(self, pc: PartialColoring, decomp: CliqueDecomposition, k0: int):
        n = pc.n
        self.pc = pc
        self.decomp = decomp
        self.k0 = k0
        self.floor_size = n // k0
        self.ceil_size = -(-n // k0)
        self.n_u = len(pc.uncolored)
        self.class_sizes = [
            pc.class_size[i] if i < pc.k_cap else 0 for i in range(k0)
        ]
        full = (1 << k0) - 1
        forbidden = pc.forbidden_mask

        free_count = [0] * k0
        single_free = [0] * k0
        empty_free = 0
        cliques_with_color = [0] * k0
        resid_with_color = [0] * k0
        clique_masks = []

        for clique in decomp.cliques:
            masks = []
            or_mask = 0
            for v in clique:
                fm = ~forbidden[v] & full
                masks.append(fm)
                or_mask |= fm
                _count_bits(fm, free_count)
                if fm == 0:
                    empty_free += 1
                elif fm & (fm - 1) == 0:
                    single_free[fm.bit_length() - 1] += 1
            _count_bits(or_mask, cliques_with_color)
            clique_masks.append(masks)
        for v in decomp.residual:
            fm = ~forbidden[v] & full
            _count_bits(fm, free_count)
            _count_bits(fm, resid_with_color)
            if fm == 0:
                empty_free += 1
            elif fm & (fm - 1) == 0:
                single_free[fm.bit_length() - 1] += 1

        self.clique_masks = clique_masks
        self.cliques_with_color = cliques_with_color
        self.resid_with_color = resid_with_color
        self.free_count = free_count
        self.single_free = single_free
        self.empty_free = empty_free


_BITS8 = [tuple(b for b in range(8) if (x >> b) & 1) for x in range(256)]


def _count_bits(mask: int, counts: list[int]) -> None:
    base = 0
    while mask:
        for b in _BITS8[mask & 255]:
            counts[base + b] += 1
        mask >>= 8
        base += 8


def check_positive_single(ctx: HallContext) -> bool:
    """Every color must be fillable to floor(n/k0): at most one vertex per
    clique plus every residual vertex that can still take it."""
    floor_size = ctx.floor_size
    cliques_with = ctx.cliques_with_color
    resid_with = ctx.resid_with_color
    for f, size in enumerate(ctx.class_sizes):
        if floor_size - size > cliques_with[f] + resid_with[f]:
            return False
    return True


def check_positive_complement(ctx: HallContext) -> bool:
    """For each color g, the classes of the other k0-1 colors must be
    fillable from the vertices with a free color outside {g}."""
    k0 = ctx.k0
    if k0 == 1:
        return True
    floor_size = ctx.floor_size
    sizes = ctx.class_sizes
    total = k0 * floor_size - sum(sizes)
    n_u = ctx.n_u
    single = ctx.single_free
    empty = ctx.empty_free
    for g in range(k0):
        lhs = total - (floor_size - sizes[g])
        rhs = n_u - single[g] - empty
        if lhs > rhs:
            return False
    return True


def _clique_has_sdr(masks: list[int], k0: int) -> bool:
    """Can every clique vertex get a distinct color from its free set?
    Augmenting-path bipartite matching; cliques are small."""
    if len(masks) > k0:
        return False
    owner = {}

    def augment(idx: int, visited: int) -> tuple[bool, int]:
        while True:
            m = masks[idx] & ~visited
            if not m:
                return False, visited
            bit = m & -m
            visited |= bit
            c = bit.bit_length() - 1
            if c not in owner:
                owner[c] = idx
                return True, visited
            ok, visited = augment(owner[c], visited)
            if ok:
                owner[c] = idx
                return True, visited

    for idx in range(len(masks)):
        ok, _ = augment(idx, 0)
        if not ok:
            return False
    return True


def check_clique_hall(ctx: HallContext) -> bool:
    """Each clique needs a system of distinct representatives among the
    colors; by Hall's theorem the matching test covers the whole family of
    per-clique subset conditions at once."""
    k0 = ctx.k0
    for masks in ctx.clique_masks:
        if not _clique_has_sdr(masks, k0):
            return False
    return True


def check_negative_single_and_complement(ctx: HallContext) -> bool:
    """Vertices forced into few colors must fit under the ceiling: (a) per
    single color f, the vertices with free set inside {f}; (b) per color g,
    the vertices that cannot take g against the combined slack of the other
    classes."""
    k0 = ctx.k0
    ceil_size = ctx.ceil_size
    sizes = ctx.class_sizes
    single = ctx.single_free
    empty = ctx.empty_free
    for f in range(k0):
        if single[f] + empty > ceil_size - sizes[f]:
            return False
    total_slack = k0 * ceil_size - sum(sizes)
    n_u = ctx.n_u
    free_count = ctx.free_count
    for g in range(k0):
        if n_u - free_count[g] > total_slack - (ceil_size - sizes[g]):
            return False
    return True


_RULES = (
    ("positive_single", check_positive_single),
    ("clique_hall", check_clique_hall),
    ("negative", check_negative_single_and_complement),
    ("positive_complement", check_positive_complement),
)


def failing_rule(ctx: HallContext) -> str | None:
    """Name of the first failing rule in cheapest-first order, or None when
    all pass for this k0."""
    for name, rule in _RULES:
        if not rule(ctx):
            return name
    return None


def comb_prune(
    pc: PartialColoring,
    decomp: CliqueDecomposition,
    k_lower: int,
    k_upper: int,
    stats=None,
) -> bool:
    """True iff every candidate k0 fails at least one rule. Weaker than the
    flow test (a passing rule set proves nothing) but evaluated in
    O(k0 + |U|) arithmetic per color count."""
    for k0 in candidate_k0_values(pc, k_lower, k_upper):
        ctx = HallContext(pc, decomp, k0)
        failed = failing_rule(ctx)
        if failed is None:
            return False
        if stats is not None:
            stats.prunes_hall_by_rule[failed] = (
                stats.prunes_hall_by_rule.get(failed, 0) + 1
            )
    return True
