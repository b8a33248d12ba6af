"""Undirected simple graphs on indexed vertices, with the enumeration
machinery every other module builds on: maximal cliques and stable sets,
split partitions, induced-pattern search and large (non-)adjacent pairs.

Adjacency is stored as one bitmask per vertex (bit v of adj[u] set iff uv is
an edge), which keeps the branch-and-bound enumerations fast without leaving
pure Python integers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .rng import SplitMix64, bernoulli_threshold

VertexSet = frozenset


def mask_of(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(mask: int):
    """Iterate set bit positions in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def set_of(mask: int) -> frozenset:
    return frozenset(bits(mask))


class Graph:
    """Immutable graph; ``n`` vertices, ``adj`` a tuple of neighbor bitmasks."""

    __slots__ = ("n", "adj")

    def __init__(self, n: int, adj, *, validate: bool | None = None):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        adj = tuple(adj)
        if len(adj) != n:
            raise ValueError("adjacency row count does not match n")
        full = (1 << n) - 1
        for v, row in enumerate(adj):
            if row & ~full:
                raise ValueError(f"adjacency row {v} references vertices >= {n}")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
        if validate is None:
            validate = n <= 256
        if validate:
            for u in range(n):
                for v in bits(adj[u]):
                    if not adj[v] >> u & 1:
                        raise ValueError(f"adjacency not symmetric at ({u}, {v})")
        self.n = n
        self.adj = adj

    # -- basic queries -------------------------------------------------
    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> frozenset:
        return set_of(self.adj[v])

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u in range(self.n):
            row = self.adj[u] >> (u + 1) << (u + 1)
            for v in bits(row):
                out.append((u, v))
        return out

    def edge_count(self) -> int:
        return sum(self.degree(v) for v in range(self.n)) // 2

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.edge_count()})"


def from_edges(n: int, edges, *, validate_input: bool = True) -> Graph:
    adj = [0] * n
    seen = set()
    for u, v in edges:
        if validate_input:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range")
            if u == v:
                raise ValueError(f"self-loop ({u}, {v})")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, adj, validate=False)


# -- generators ---------------------------------------------------------


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n, validate=False)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << v) for v in range(n)), validate=False)


def path_graph(n: int) -> Graph:
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def net_graph() -> Graph:
    """Triangle 0-1-2 with pendant vertices 3, 4, 5 attached to 0, 1, 2."""
    return from_edges(6, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 4), (2, 5)])


def gen_gnp(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi sample; pair (u, v), u < v, consumes one SplitMix64 draw
    in lexicographic order and the edge is present iff draw < p * 2**64."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    if n < 0:
        raise ValueError("n must be nonnegative")
    rng = SplitMix64(seed)
    threshold = bernoulli_threshold(p)
    adj = [0] * n
    for u in range(n):
        for v in range(u + 1, n):
            if rng.next_u64() < threshold:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
    return Graph(n, adj, validate=False)


def comparability_from_random_poset(n: int, seed: int) -> Graph:
    """Comparability graph of a random two-dimensional dominance order.

    Each vertex gets two 64-bit keys; u < v in the order iff both keys are
    smaller (ties broken by index, which almost never matters).
    """
    rng = SplitMix64(seed)
    xs = [(rng.next_u64(), i) for i in range(n)]
    ys = [(rng.next_u64(), i) for i in range(n)]
    adj = [0] * n
    for u in range(n):
        for v in range(u + 1, n):
            below = xs[u] < xs[v] and ys[u] < ys[v]
            above = xs[u] > xs[v] and ys[u] > ys[v]
            if below or above:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
    return Graph(n, adj, validate=False)


# -- elementary operations ----------------------------------------------


def complement(g: Graph) -> Graph:
    full = g.full_mask
    return Graph(g.n, tuple((full ^ row) & ~(1 << v) for v, row in enumerate(g.adj)),
                 validate=False)


def induced(g: Graph, vertices) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph plus the tuple mapping new index -> original vertex."""
    ids = tuple(sorted(vertices))
    for v in ids:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range")
    pos = {v: i for i, v in enumerate(ids)}
    adj = [0] * len(ids)
    for i, v in enumerate(ids):
        for w in bits(g.adj[v]):
            j = pos.get(w)
            if j is not None:
                adj[i] |= 1 << j
    return Graph(len(ids), adj, validate=False), ids


def is_clique(g: Graph, members: int | frozenset) -> bool:
    m = members if isinstance(members, int) else mask_of(members)
    for v in bits(m):
        if m & ~g.adj[v] & ~(1 << v):
            return False
    return True


def is_stable(g: Graph, members: int | frozenset) -> bool:
    m = members if isinstance(members, int) else mask_of(members)
    for v in bits(m):
        if g.adj[v] & m:
            return False
    return True


# -- maximal cliques and stable sets --------------------------------------


def _sort_key(s: frozenset):
    return tuple(sorted(s))


def maximal_cliques(g: Graph) -> list[frozenset]:
    """All inclusion-maximal cliques, Bron-Kerbosch with pivoting, returned in
    lexicographic order of their sorted member lists."""
    if g.n == 0:
        return []
    out = []
    adj = g.adj

    def expand(r: int, p: int, x: int):
        if p == 0 and x == 0:
            out.append(r)
            return
        # pivot: vertex of p | x with most neighbors inside p
        best, best_cnt = -1, -1
        for u in bits(p | x):
            cnt = (p & adj[u]).bit_count()
            if cnt > best_cnt:
                best, best_cnt = u, cnt
        cand = p & ~adj[best]
        for v in bits(cand):
            bv = 1 << v
            expand(r | bv, p & adj[v], x & adj[v])
            p &= ~bv
            x |= bv

    expand(0, g.full_mask, 0)
    return sorted((set_of(m) for m in out), key=_sort_key)


def maximal_stables(g: Graph) -> list[frozenset]:
    return maximal_cliques(complement(g))


# -- split structure -------------------------------------------------------


@dataclass(frozen=True)
class SplitPartition:
    clique_part: frozenset
    stable_part: frozenset


def is_split_graph(g: Graph) -> bool:
    """Degree-sequence split test (Hammer-Simeone)."""
    if g.n == 0:
        return True
    d = sorted((g.degree(v) for v in range(g.n)), reverse=True)
    m = 0
    for i, di in enumerate(d, start=1):
        if di >= i - 1:
            m = i
    lhs = sum(d[:m])
    rhs = m * (m - 1) + sum(d[m:])
    return lhs == rhs


def _all_clique_masks(g: Graph):
    """Every vertex subset inducing a clique (including the empty set),
    emitted in increasing lexicographic-order of sorted member lists."""
    n = g.n
    adj = g.adj

    def grow(current: int, lo: int):
        yield current
        for v in range(lo, n):
            bv = 1 << v
            if current & ~adj[v]:
                continue
            yield from grow(current | bv, v + 1)

    yield from grow(0, 0)


def split_partitions(g: Graph) -> list[SplitPartition]:
    """All bipartitions (U, W) of the vertices with U a clique and W stable.

    Empty iff the graph is not split.  Brute force over clique candidates,
    guarded by the degree-sequence split test; capped at 20 vertices.
    """
    if g.n > 20:
        raise ValueError("split_partitions is exhaustive; 20-vertex cap exceeded")
    if not is_split_graph(g):
        return []
    full = g.full_mask
    out = []
    for u in _all_clique_masks(g):
        w = full & ~u
        if is_stable(g, w):
            out.append(SplitPartition(set_of(u), set_of(w)))
    out.sort(key=lambda sp: _sort_key(sp.clique_part))
    return out


# -- induced pattern search ------------------------------------------------


def contains_induced(g: Graph, pattern: Graph) -> tuple[int, ...] | None:
    """Injective map (tuple indexed by pattern vertex) realizing pattern as an
    induced subgraph of g, or None.  Deterministic: lexicographically first
    assignment in the fixed search order."""
    k = pattern.n
    if k > g.n:
        return None
    if k == 0:
        return ()
    # order pattern vertices so each after the first attaches to a previous
    # one when possible; ties by degree then index for pruning
    order = []
    placed = 0
    remaining = set(range(k))
    while remaining:
        connected = [v for v in remaining if pattern.adj[v] & placed]
        pool = connected if connected else list(remaining)
        v = max(pool, key=lambda u: (pattern.degree(u), -u))
        order.append(v)
        placed |= 1 << v
        remaining.discard(v)

    assign = [-1] * k
    used = 0

    def backtrack(i: int):
        nonlocal used
        if i == k:
            return True
        pv = order[i]
        for cand in range(g.n):
            bc = 1 << cand
            if used & bc:
                continue
            ok = True
            for j in range(i):
                pu = order[j]
                if pattern.has_edge(pv, pu) != g.has_edge(cand, assign[pu]):
                    ok = False
                    break
            if ok:
                assign[pv] = cand
                used |= bc
                if backtrack(i + 1):
                    return True
                used &= ~bc
                assign[pv] = -1
        return False

    if backtrack(0):
        return tuple(assign)
    return None


# -- completely (non-)adjacent pairs ---------------------------------------


@dataclass(frozen=True)
class BicliquePair:
    a: frozenset
    b: frozenset
    mode: str  # "adjacent" | "nonadjacent"
    exact: bool


def _pair_search_exact(g: Graph, size: int, mode: str) -> BicliquePair | None:
    adj = g.adj
    full = g.full_mask
    for combo in itertools.combinations(range(g.n), size):
        a_mask = mask_of(combo)
        cand = full & ~a_mask
        for v in combo:
            cand &= adj[v] if mode == "adjacent" else ~adj[v]
        if cand.bit_count() >= size:
            b_mask = cand
            # extend the seed side against the full opposite side
            a_full = 0
            for v in range(g.n):
                if b_mask >> v & 1:
                    continue
                row = adj[v] if mode == "adjacent" else ~adj[v] & full & ~(1 << v)
                if b_mask & ~row == 0:
                    a_full |= 1 << v
            return BicliquePair(set_of(a_full), set_of(b_mask), mode, True)
    return None


def _pair_search_greedy(g: Graph, size: int, mode: str) -> BicliquePair | None:
    adj = g.adj
    full = g.full_mask
    for u in range(g.n):
        for v in range(u + 1, g.n):
            want = g.has_edge(u, v) if mode == "adjacent" else not g.has_edge(u, v)
            if not want:
                continue
            a, b = 1 << u, 1 << v
            while True:
                grown = False
                for side in (0, 1):
                    other = b if side == 0 else a
                    best = -1
                    for w in bits(full & ~(a | b)):
                        row = adj[w] if mode == "adjacent" else ~adj[w] & full & ~(1 << w)
                        if other & ~row == 0:
                            best = w
                            break
                    if best >= 0:
                        if side == 0:
                            a |= 1 << best
                        else:
                            b |= 1 << best
                        grown = True
                if not grown:
                    break
            if a.bit_count() >= size and b.bit_count() >= size:
                return BicliquePair(set_of(a), set_of(b), mode, False)
    return None


def find_biclique_pair(g: Graph, min_size: int) -> BicliquePair | None:
    """Two disjoint vertex sets, each of size >= min_size, completely
    non-adjacent or completely adjacent (non-adjacent preferred).

    Exact search for n <= 24 (a miss means no such pair exists); beyond that
    a greedy seed-and-grow heuristic whose misses are flagged exact=False.
    """
    if min_size < 1:
        raise ValueError("min_size must be positive")
    search = _pair_search_exact if g.n <= 24 else _pair_search_greedy
    for mode in ("nonadjacent", "adjacent"):
        hit = search(g, min_size, mode)
        if hit is not None:
            return hit
    return None


# -- coloring helper --------------------------------------------------------


def greedy_coloring(g: Graph) -> tuple[int, ...]:
    """First-fit proper coloring in vertex order."""
    colors = [-1] * g.n
    for v in range(g.n):
        taken = {colors[w] for w in bits(g.adj[v]) if colors[w] >= 0}
        c = 0
        while c in taken:
            c += 1
        colors[v] = c
    return tuple(colors)


def is_proper_coloring(g: Graph, colors) -> bool:
    return all(colors[u] != colors[v] for u, v in g.edges())
