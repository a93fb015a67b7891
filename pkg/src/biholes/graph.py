"""Bipartite graphs with dense per-side indices, plus analytics and generators.

Vertices carry no labels: side A is indexed 0..n_a-1 and side B is indexed
0..n_b-1.  Adjacency is stored from both sides so that degree queries are
cheap no matter which side an algorithm walks.  Graphs are immutable after
construction and safe to share across workers; generators are pure functions
of their parameters and seed.
"""

from __future__ import annotations

import hashlib
import random as _random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence


class GraphInputError(ValueError):
    """Invalid arguments for graph construction or graph queries."""


def _substream(*parts: object) -> _random.Random:
    """Deterministic RNG derived from a tuple of parts.

    Uses sha256 of the textual parts, so streams are stable across runs and
    machines (unlike ``hash()``, which is salted per process).
    """
    key = ":".join(str(p) for p in parts).encode()
    seed = int.from_bytes(hashlib.sha256(key).digest()[:8], "big")
    return _random.Random(seed)


class BipartiteGraph:
    """Simple bipartite graph with sorted adjacency stored from both sides.

    Attributes:
        n_a, n_b: side cardinalities.
        adj_a: tuple of tuples; adj_a[u] lists the B-neighbours of A-vertex u.
        adj_b: mirrored view from the B side.
        m: number of edges.
    """

    __slots__ = ("n_a", "n_b", "adj_a", "adj_b", "m")

    def __init__(
        self,
        n_a: int,
        n_b: int,
        adj_a: tuple[tuple[int, ...], ...],
        adj_b: tuple[tuple[int, ...], ...],
        m: int,
    ):
        self.n_a = n_a
        self.n_b = n_b
        self.adj_a = adj_a
        self.adj_b = adj_b
        self.m = m

    @property
    def balanced(self) -> bool:
        return self.n_a == self.n_b

    @property
    def avg_degree(self) -> Fraction:
        """Average A-side degree m / n_a (0 for an empty side)."""
        if self.n_a == 0:
            return Fraction(0)
        return Fraction(self.m, self.n_a)

    def deg_a(self, u: int) -> int:
        return len(self.adj_a[u])

    def deg_b(self, v: int) -> int:
        return len(self.adj_b[v])

    @property
    def delta_a(self) -> int:
        """Maximum A-side degree (0 when A is empty)."""
        return max(map(len, self.adj_a), default=0)

    @property
    def delta_b(self) -> int:
        return max(map(len, self.adj_b), default=0)

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, nbrs in enumerate(self.adj_a):
            for v in nbrs:
                yield (u, v)

    def swapped(self) -> "BipartiteGraph":
        """The same graph with the roles of the two sides exchanged."""
        return BipartiteGraph(self.n_b, self.n_a, self.adj_b, self.adj_a, self.m)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BipartiteGraph):
            return NotImplemented
        return (
            self.n_a == other.n_a
            and self.n_b == other.n_b
            and self.adj_a == other.adj_a
        )

    def __hash__(self) -> int:
        return hash((self.n_a, self.n_b, self.adj_a))

    def __repr__(self) -> str:
        return f"BipartiteGraph(n_a={self.n_a}, n_b={self.n_b}, m={self.m})"


def build_graph(
    n_a: int, n_b: int, edges: Iterable[tuple[int, int]]
) -> BipartiteGraph:
    """Build a simple bipartite graph; duplicate edges are dropped.

    Raises GraphInputError for negative side counts or out-of-range indices.
    """
    if not isinstance(n_a, int) or not isinstance(n_b, int) or n_a < 0 or n_b < 0:
        raise GraphInputError(f"side counts must be non-negative integers, got {n_a}, {n_b}")
    sets_a: list[set[int]] = [set() for _ in range(n_a)]
    sets_b: list[set[int]] = [set() for _ in range(n_b)]
    for a, b in edges:
        if not (0 <= a < n_a):
            raise GraphInputError(f"A-index {a} out of range [0, {n_a})")
        if not (0 <= b < n_b):
            raise GraphInputError(f"B-index {b} out of range [0, {n_b})")
        sets_a[a].add(b)
        sets_b[b].add(a)
    adj_a = tuple(tuple(sorted(s)) for s in sets_a)
    adj_b = tuple(tuple(sorted(s)) for s in sets_b)
    m = sum(len(s) for s in sets_a)
    return BipartiteGraph(n_a, n_b, adj_a, adj_b, m)


@dataclass(frozen=True)
class Bihole:
    """A balanced independent pair: S from side A, T from side B, no S-T edge.

    The order of a bihole is the common cardinality |S| = |T|, i.e. half the
    size of the underlying vertex set.
    """

    s: frozenset[int]
    t: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "s", frozenset(self.s))
        object.__setattr__(self, "t", frozenset(self.t))
        if len(self.s) != len(self.t):
            raise GraphInputError(
                f"bihole sides must have equal size, got {len(self.s)} and {len(self.t)}"
            )

    @property
    def order(self) -> int:
        return len(self.s)

    def sorted_pair(self) -> tuple[list[int], list[int]]:
        return sorted(self.s), sorted(self.t)


EMPTY_BIHOLE = Bihole(frozenset(), frozenset())


def is_bihole(g: BipartiteGraph, s: Iterable[int], t: Iterable[int]) -> bool:
    """True iff |s| = |t| and the graph has no edge between s and t."""
    s_set = set(s)
    t_set = set(t)
    for u in s_set:
        if not (0 <= u < g.n_a):
            raise GraphInputError(f"A-index {u} out of range [0, {g.n_a})")
    for v in t_set:
        if not (0 <= v < g.n_b):
            raise GraphInputError(f"B-index {v} out of range [0, {g.n_b})")
    if len(s_set) != len(t_set):
        return False
    for u in s_set:
        for v in g.adj_a[u]:
            if v in t_set:
                return False
    return True


@dataclass(frozen=True)
class DegreeProfile:
    """Counts of vertices by degree on one side of a graph."""

    side: str
    counts: dict[int, int]

    def count(self, degree: int) -> int:
        return self.counts.get(degree, 0)

    @property
    def n0(self) -> int:
        return self.count(0)

    @property
    def n1(self) -> int:
        return self.count(1)

    @property
    def n2(self) -> int:
        return self.count(2)

    @property
    def n3(self) -> int:
        return self.count(3)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def edge_sum(self) -> int:
        return sum(d * c for d, c in self.counts.items())

    @property
    def max_degree(self) -> int:
        return max(self.counts, default=0)

    @property
    def min_degree(self) -> int:
        return min(self.counts, default=0)


def degree_profile(g: BipartiteGraph, side: str = "A") -> DegreeProfile:
    """Degree histogram for one side ("A" or "B")."""
    if side not in ("A", "B"):
        raise GraphInputError(f"side must be 'A' or 'B', got {side!r}")
    adj = g.adj_a if side == "A" else g.adj_b
    counts: dict[int, int] = {}
    for nbrs in adj:
        d = len(nbrs)
        counts[d] = counts.get(d, 0) + 1
    return DegreeProfile(side=side, counts=counts)


@dataclass(frozen=True)
class ComponentView:
    """One maximal connected component of a bipartite graph."""

    a_vertices: tuple[int, ...]
    b_vertices: tuple[int, ...]
    edge_count: int

    @property
    def a_size(self) -> int:
        return len(self.a_vertices)

    @property
    def b_size(self) -> int:
        return len(self.b_vertices)

    @property
    def is_tree(self) -> bool:
        return self.edge_count == self.a_size + self.b_size - 1

    @property
    def b_excess(self) -> int:
        return self.b_size - self.a_size


def components(g: BipartiteGraph) -> list[ComponentView]:
    """Maximal connected components; isolated vertices come out as singletons.

    Components are listed in order of their smallest vertex (side A scanned
    first), which makes downstream algorithms reproducible.
    """
    seen_a = [False] * g.n_a
    seen_b = [False] * g.n_b
    out: list[ComponentView] = []

    def sweep(start: int, start_side: str) -> ComponentView:
        stack = [(start, start_side)]
        comp_a: list[int] = []
        comp_b: list[int] = []
        edges = 0
        if start_side == "A":
            seen_a[start] = True
        else:
            seen_b[start] = True
        while stack:
            x, side = stack.pop()
            if side == "A":
                comp_a.append(x)
                edges += len(g.adj_a[x])
                for v in g.adj_a[x]:
                    if not seen_b[v]:
                        seen_b[v] = True
                        stack.append((v, "B"))
            else:
                comp_b.append(x)
                for u in g.adj_b[x]:
                    if not seen_a[u]:
                        seen_a[u] = True
                        stack.append((u, "A"))
        return ComponentView(tuple(sorted(comp_a)), tuple(sorted(comp_b)), edges)

    for u in range(g.n_a):
        if not seen_a[u]:
            out.append(sweep(u, "A"))
    for v in range(g.n_b):
        if not seen_b[v]:
            out.append(sweep(v, "B"))
    return out


def induced_subgraph(
    g: BipartiteGraph, a_keep: Sequence[int], b_keep: Sequence[int]
) -> tuple[BipartiteGraph, tuple[int, ...], tuple[int, ...]]:
    """Induced subgraph on the given vertices plus local-to-original index maps."""
    a_ids = tuple(sorted(set(a_keep)))
    b_ids = tuple(sorted(set(b_keep)))
    b_local = {v: i for i, v in enumerate(b_ids)}
    edges = []
    for local_u, u in enumerate(a_ids):
        for v in g.adj_a[u]:
            lv = b_local.get(v)
            if lv is not None:
                edges.append((local_u, lv))
    sub = build_graph(len(a_ids), len(b_ids), edges)
    return sub, a_ids, b_ids


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------


def gen_extremal_paths(i: int) -> BipartiteGraph:
    """Family of i isolated A-vertices plus i paths of order 4i+1 ending in B.

    Every path alternates B-A-B-...-B, so it has 2i A-vertices of degree 2 and
    2i+1 B-vertices.  Both sides have i + 2i^2 vertices in total.  The family
    pins the 3/4 coefficient of the degree-0 count in the profile-based lower
    bound: its maximum bihole order is exactly floor(i^2 + 3i/4).
    """
    if not isinstance(i, int) or i < 2 or i % 2 != 0:
        raise GraphInputError(f"i must be an even integer >= 2, got {i}")
    n = i + 2 * i * i
    edges = []
    for p in range(i):
        a_base = i + p * (2 * i)
        b_base = p * (2 * i + 1)
        for j in range(2 * i):
            edges.append((a_base + j, b_base + j))
            edges.append((a_base + j, b_base + j + 1))
    return build_graph(n, n, edges)


def gen_random_bounded(
    n: int, delta: int, edge_prob: Fraction | float, seed: int
) -> BipartiteGraph:
    """Balanced random graph whose A-side degrees never exceed delta.

    Each A-vertex draws its degree as Binomial(delta, edge_prob) from its own
    sha256-derived substream, then samples that many distinct B-neighbours.
    edge_prob = 1 therefore saturates every A-degree at delta, and a fixed
    seed reproduces the graph bit for bit.
    """
    if delta > n:
        raise GraphInputError(f"delta ({delta}) must not exceed n ({n})")
    if delta < 0 or n < 0:
        raise GraphInputError("n and delta must be non-negative")
    p = float(edge_prob)
    edges = []
    for u in range(n):
        rng = _substream(seed, "bounded", n, delta, u)
        deg = sum(1 for _ in range(delta) if rng.random() < p)
        if deg:
            edges.extend((u, v) for v in rng.sample(range(n), deg))
    return build_graph(n, n, edges)


def gen_random_edges(n: int, m: int, seed: int) -> BipartiteGraph:
    """Balanced random graph with exactly m distinct edges, uniform without
    replacement; deterministic per seed."""
    if m > n * n:
        raise GraphInputError(f"m ({m}) exceeds n^2 ({n * n})")
    if m < 0 or n < 0:
        raise GraphInputError("n and m must be non-negative")
    rng = _substream(seed, "edges", n, m)
    picks = rng.sample(range(n * n), m)
    return build_graph(n, n, [(idx // n, idx % n) for idx in picks])
