"""Brute-force ground truth for tests: exact equitable chromatic numbers,
exact extendability, and exhaustive inequality enumeration on tiny
networks. Hard size caps make accidental blowups an error instead of a
silent hang."""

from __future__ import annotations

from dataclasses import dataclass

from .coloring import PartialColoring
from .flownet import FlowNetwork
from .graph import Graph


@dataclass(frozen=True)
class OracleLimits:
    max_n: int = 12
    max_network_nodes: int = 14


DEFAULT_LIMITS = OracleLimits()


class OracleCapError(ValueError):
    pass


def _search_equitable(g: Graph, color_of, sizes, k0, order, idx, symmetry):
    """Depth-first completion with the forced class-size windows.

    `symmetry` canonicalizes use of still-empty classes (first-use order);
    that is sound because empty classes are interchangeable.
    """
    n = g.n
    floor_size = n // k0
    remaining = len(order) - idx
    deficit = 0
    for s in sizes:
        if s < floor_size:
            deficit += floor_size - s
    if deficit > remaining:
        return False
    if idx == len(order):
        return True
    v = order[idx]
    ceil_size = -(-n // k0)
    forbidden = 0
    for w in g.adj[v]:
        c = color_of[w]
        if c >= 0:
            forbidden |= 1 << c
    new_class_seen = False
    for i in range(k0):
        if sizes[i] >= ceil_size or (forbidden >> i) & 1:
            continue
        if symmetry and sizes[i] == 0:
            if new_class_seen:
                break
            new_class_seen = True
        color_of[v] = i
        sizes[i] += 1
        if _search_equitable(g, color_of, sizes, k0, order, idx + 1, symmetry):
            return True
        sizes[i] -= 1
        color_of[v] = -1
    return False


def brute_chi_eq(g: Graph, limits: OracleLimits = DEFAULT_LIMITS) -> int:
    """Exact equitable chromatic number by capped enumeration."""
    if g.n > limits.max_n:
        raise OracleCapError(f"n={g.n} exceeds oracle cap {limits.max_n}")
    if g.n == 0:
        return 0
    order = sorted(range(g.n), key=lambda v: (-g.degree[v], v))
    for k0 in range(1, g.n + 1):
        color_of = [-1] * g.n
        sizes = [0] * k0
        if _search_equitable(g, color_of, sizes, k0, order, 0, symmetry=True):
            return k0
    raise AssertionError("k0 = n is always feasible")


def brute_extendable(
    g: Graph, pc: PartialColoring, k0: int, limits: OracleLimits = DEFAULT_LIMITS
) -> bool:
    """True iff some completion of pc is a proper equitable k0-coloring
    preserving every existing class as a subset."""
    if g.n > limits.max_n:
        raise OracleCapError(f"n={g.n} exceeds oracle cap {limits.max_n}")
    if not 1 <= k0 <= g.n:
        raise ValueError(f"need 1 <= k0 <= n, got {k0}")
    sizes = [0] * k0
    for v, c in enumerate(pc.color_of):
        if c >= 0:
            if c >= k0:
                return False
            sizes[c] += 1
    ceil_size = -(-g.n // k0)
    if any(s > ceil_size for s in sizes):
        return False
    color_of = list(pc.color_of)
    order = sorted(pc.uncolored, key=lambda v: (-g.degree[v], v))
    return _search_equitable(g, color_of, sizes, k0, order, 0, symmetry=True)


@dataclass
class HoffmanViolation:
    """One violated inequality: the signed node selection and its slack."""

    t_plus: tuple[int, ...]
    t_minus: tuple[int, ...]
    s_plus: tuple[tuple[int, int], ...]
    s_minus: tuple[tuple[int, int], ...]
    r_plus: tuple[int, ...]
    r_minus: tuple[int, ...]
    slack: int


def _network_tables(net: FlowNetwork):
    """Per-layer data for the source/sink-free model: for each F node its
    stability bound and color; for each U node the list of its F targets."""
    k0 = net.k0
    nparts = len(net.parts)
    f_alpha = [net.alphas[j] for j in range(nparts) for _ in range(k0)]
    f_color = [i for _ in range(nparts) for i in range(k0)]
    u_index = {v: idx for idx, v in enumerate(net.u_vertices)}
    part_of = {v: j for j, part in enumerate(net.parts) for v in part}
    u_targets = [[] for _ in net.u_vertices]
    for v, i in net.a2_info:
        u_targets[u_index[v]].append(part_of[v] * k0 + i)
    return f_alpha, f_color, u_targets


def hoffman_slack(net: FlowNetwork, t_plus, t_minus, s_plus, s_minus, r_plus, r_minus):
    """Right-hand side minus left-hand side of the inequality induced by an
    explicit signed selection (colors in t_*, (part,color) pairs in s_*,
    U-layer indices in r_*). Computed literally from the arc lists, so it
    is independent of the optimized enumerator. Raises ValueError when the
    selection violates the sign-compatibility requirements."""
    k0 = net.k0
    f_alpha, f_color, u_targets = _network_tables(net)
    sp = {j * k0 + i for j, i in s_plus}
    sm = {j * k0 + i for j, i in s_minus}
    tp = set(t_plus)
    tm = set(t_minus)
    rp = set(r_plus)
    rm = set(r_minus)
    if rp & rm or sp & sm or tp & tm:
        raise ValueError("signed selections must be disjoint")
    for u in rp:
        if set(u_targets[u]) & sm:
            raise ValueError("arc from R+ into S-")
    for u in rm:
        if set(u_targets[u]) & sp:
            raise ValueError("arc from R- into S+")
    for f in sp:
        if f_color[f] in tm:
            raise ValueError("arc from S+ into T-")
    for f in sm:
        if f_color[f] in tp:
            raise ValueError("arc from S- into T+")
    floor_size, ceil_size = net.floor_size, net.ceil_size
    sizes = net.class_sizes
    lhs = len(rm) + sum(sizes[i] - ceil_size for i in tm)
    rhs = len(rp) + sum(sizes[i] - floor_size for i in tp)
    for u in range(len(u_targets)):
        if u in rm:
            rhs += sum(1 for f in u_targets[u] if f not in sm)
        elif u not in rp:
            rhs += sum(1 for f in u_targets[u] if f in sp)
    for f in range(len(f_color)):
        if f in sm:
            if f_color[f] not in tm:
                rhs += f_alpha[f]
        elif f not in sp and f_color[f] in tp:
            rhs += f_alpha[f]
    return rhs - lhs


def enumerate_hoffman(net: FlowNetwork, limits: OracleLimits = DEFAULT_LIMITS):
    """Exhaust every sign-compatible selection over the U/F/C layers and
    evaluate its inequality, choosing the U-layer signs optimally per
    assignment (the dominance arguments make that choice independent per
    vertex). Returns (all_hold, first_violation_or_None)."""
    k0 = net.k0
    n_f = len(net.parts) * k0
    n_u = len(net.u_vertices)
    internal = n_u + n_f + k0
    if internal > limits.max_network_nodes:
        raise OracleCapError(
            f"{internal} internal nodes exceed cap {limits.max_network_nodes}"
        )
    f_alpha, f_color, u_targets = _network_tables(net)
    floor_size, ceil_size = net.floor_size, net.ceil_size
    sizes = net.class_sizes

    c_signs = [0] * k0
    f_signs = [0] * n_f

    def eval_u(slack_base):
        """Optimal U contributions; returns (slack, choices)."""
        slack = slack_base
        choices = []
        for targets in u_targets:
            plus_ok = True
            minus_ok = True
            zero_gain = 0
            minus_gain = -1
            for f in targets:
                s = f_signs[f]
                if s == -1:
                    plus_ok = False
                elif s == 1:
                    minus_ok = False
                    zero_gain += 1
                else:
                    minus_gain += 1
            best, pick = zero_gain, 0
            if plus_ok and 1 < best:
                best, pick = 1, 1
            if minus_ok and minus_gain < best:
                best, pick = minus_gain, -1
            slack += best
            choices.append(pick)
        return slack, choices

    def assign_f(pos, slack):
        if pos == n_f:
            total, choices = eval_u(slack)
            if total < 0:
                return _violation(total, choices)
            return None
        c_sign = c_signs[f_color[pos]]
        for s in (0, 1, -1):
            if s * c_sign == -1:
                continue
            extra = 0
            if s == 0 and c_sign == 1:
                extra = f_alpha[pos]
            elif s == -1 and c_sign == 0:
                extra = f_alpha[pos]
            f_signs[pos] = s
            found = assign_f(pos + 1, slack + extra)
            if found is not None:
                f_signs[pos] = 0
                return found
        f_signs[pos] = 0
        return None

    def _violation(slack, u_choices):
        return HoffmanViolation(
            t_plus=tuple(i for i in range(k0) if c_signs[i] == 1),
            t_minus=tuple(i for i in range(k0) if c_signs[i] == -1),
            s_plus=tuple(
                (f // k0, f % k0) for f in range(n_f) if f_signs[f] == 1
            ),
            s_minus=tuple(
                (f // k0, f % k0) for f in range(n_f) if f_signs[f] == -1
            ),
            r_plus=tuple(u for u, c in enumerate(u_choices) if c == 1),
            r_minus=tuple(u for u, c in enumerate(u_choices) if c == -1),
            slack=slack,
        )

    def assign_c(pos, slack):
        if pos == k0:
            return assign_f(0, slack)
        for s in (0, 1, -1):
            if s == 1:
                extra = sizes[pos] - floor_size
            elif s == -1:
                extra = ceil_size - sizes[pos]
            else:
                extra = 0
            c_signs[pos] = s
            found = assign_c(pos + 1, slack + extra)
            if found is not None:
                c_signs[pos] = 0
                return found
        c_signs[pos] = 0
        return None

    violation = assign_c(0, 0)
    return violation is None, violation
