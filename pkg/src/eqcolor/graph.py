"""Immutable simple graphs, DIMACS .col I/O, G(n,p) generation, greedy cliques."""

from __future__ import annotations

import random
import warnings


class DimacsError(ValueError):
    """Malformed DIMACS input. Carries the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class Graph:
    """Simple undirected graph on vertices 0..n-1, immutable after construction.

    Duplicate edges and both orientations of the same pair collapse to a
    single undirected edge. Self-loops are rejected.
    """

    __slots__ = ("n", "adj", "edges", "degree")

    def __init__(self, n: int, edges=()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        adj = [set() for _ in range(n)]
        edge_set = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u > v:
                u, v = v, u
            if (u, v) in edge_set:
                continue
            edge_set.add((u, v))
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.adj = tuple(frozenset(s) for s in adj)
        self.edges = frozenset(edge_set)
        self.degree = tuple(len(s) for s in adj)

    @property
    def m(self) -> int:
        return len(self.edges)

    def density(self) -> float:
        if self.n < 2:
            return 0.0
        return 2.0 * self.m / (self.n * (self.n - 1))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def parse_dimacs(text: str) -> Graph:
    """Parse a DIMACS .col file: `c` comments, one `p edge <n> <m>` line,
    and `e <u> <v>` lines with 1-based vertices.

    Vertices are re-indexed to 0-based. A `p` line whose edge count differs
    from the actual number of distinct edges is accepted with a warning;
    files in the wild are frequently inconsistent here.
    """
    n = None
    m_declared = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] == "c":
            continue
        tokens = line.split()
        kind = tokens[0]
        if kind == "p":
            if n is not None:
                raise DimacsError("duplicate 'p' line", lineno)
            if len(tokens) != 4 or tokens[1] not in ("edge", "edges", "col"):
                raise DimacsError(f"malformed problem line: {line!r}", lineno)
            try:
                n = int(tokens[2])
                m_declared = int(tokens[3])
            except ValueError:
                raise DimacsError(f"malformed problem line: {line!r}", lineno) from None
            if n < 0:
                raise DimacsError(f"negative vertex count {n}", lineno)
        elif kind == "e":
            if n is None:
                raise DimacsError("'e' line before 'p' line", lineno)
            if len(tokens) != 3:
                raise DimacsError(f"malformed edge line: {line!r}", lineno)
            try:
                u = int(tokens[1])
                v = int(tokens[2])
            except ValueError:
                raise DimacsError(f"malformed edge line: {line!r}", lineno) from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise DimacsError(f"vertex index out of range [1,{n}]: {line!r}", lineno)
            if u == v:
                raise DimacsError(f"self-loop: {line!r}", lineno)
            edges.append((u - 1, v - 1))
        else:
            raise DimacsError(f"unrecognized line type {kind!r}", lineno)
    if n is None:
        raise DimacsError("missing 'p' line")
    g = Graph(n, edges)
    if m_declared != g.m:
        warnings.warn(
            f"DIMACS header declares {m_declared} edges, file has {g.m} distinct edges",
            stacklevel=2,
        )
    return g


def write_dimacs(g: Graph, name: str | None = None) -> str:
    """Serialize a graph to DIMACS .col text (1-based vertices, sorted edges)."""
    lines = []
    if name:
        lines.append(f"c {name}")
    lines.append(f"p edge {g.n} {g.m}")
    for u, v in sorted(g.edges):
        lines.append(f"e {u + 1} {v + 1}")
    return "\n".join(lines) + "\n"


def gen_gnp(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi G(n,p) with a seeded Mersenne Twister.

    Reproducibility contract: vertex pairs are scanned in lexicographic
    order (u < v) and each pair consumes exactly one rng.random() draw, so
    the same (n, p, seed) always yields the identical edge set.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0,1]")
    rng = random.Random(seed)
    edges = []
    for u in range(n - 1):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.append((u, v))
    return Graph(n, edges)


def greedy_maximal_clique(g: Graph, start: int) -> list[int]:
    """Grow an inclusion-maximal clique from `start` by repeatedly adding the
    highest-degree common neighbor (ties broken to the lowest index).

    Returns the clique in growth order.
    """
    if not 0 <= start < g.n:
        raise ValueError(f"start vertex {start} out of range")
    degree = g.degree
    clique = [start]
    common = set(g.adj[start])
    while common:
        v = min(common, key=lambda w: (-degree[w], w))
        clique.append(v)
        common &= g.adj[v]
    return clique
