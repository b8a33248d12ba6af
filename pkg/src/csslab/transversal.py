"""Conflict digraphs, antisymmetric-game weights, hypergraph transversals and
VC dimension, and the two structured separator builders that rest on them:
one for graphs excluding a fixed split pattern, one for graphs excluding a
long path and its complement.

All linear programs are solved exactly over the rationals (see ``lp``), so
every bound reported here is certified, not approximated.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .graphs import (Graph, SplitPartition, bits, complement, contains_induced,
                     find_biclique_pair, induced, is_clique, is_stable, mask_of,
                     path_graph, set_of, split_partitions)
from .lp import ZERO, LpResult, lp_feasible, solve_lp
from .separator import Cut, CutFamily, all_cuts_family, disjoint_maximal_pairs, \
    family_from_masks


class BicliquePairNotFound(RuntimeError):
    def __init__(self, level_vertices: tuple[int, ...], needed: int):
        super().__init__(
            f"no completely (non-)adjacent pair of size {needed} on the "
            f"{len(level_vertices)}-vertex recursion level {sorted(level_vertices)}")
        self.level_vertices = level_vertices
        self.needed = needed


# -- digraphs ---------------------------------------------------------------


class Digraph:
    """Antisymmetric digraph: ``out[u]`` is the bitmask of out-neighbors."""

    __slots__ = ("n", "out")

    def __init__(self, n: int, out):
        out = tuple(out)
        if len(out) != n:
            raise ValueError("arc row count does not match n")
        for u, row in enumerate(out):
            if row >> n:
                raise ValueError("arc row references vertices out of range")
            if row >> u & 1:
                raise ValueError(f"self-arc at {u}")
        for u in range(n):
            for v in bits(out[u]):
                if out[v] >> u & 1:
                    raise ValueError(f"arcs in both directions between {u} and {v}")
        self.n = n
        self.out = out

    def in_mask(self, v: int) -> int:
        m = 0
        for u in range(self.n):
            if self.out[u] >> v & 1:
                m |= 1 << u
        return m


@dataclass(frozen=True)
class ConflictDigraph:
    digraph: Digraph
    clique: tuple[int, ...]   # original vertex ids, sorted; digraph ids 0..|K|-1
    stable: tuple[int, ...]   # original vertex ids, sorted; digraph ids |K|..


def conflict_digraph(g: Graph, k: frozenset, s: frozenset) -> ConflictDigraph:
    """Bipartite tournament on K then S: the arc runs from the clique vertex
    to the stable vertex when they are adjacent, backwards otherwise."""
    if k & s:
        raise ValueError(f"clique and stable set intersect in {sorted(k & s)}")
    if not is_clique(g, k):
        raise ValueError(f"{sorted(k)} is not a clique")
    if not is_stable(g, s):
        raise ValueError(f"{sorted(s)} is not a stable set")
    ks = tuple(sorted(k))
    ss = tuple(sorted(s))
    nk = len(ks)
    n = nk + len(ss)
    out = [0] * n
    for i, x in enumerate(ks):
        for j, y in enumerate(ss):
            if g.has_edge(x, y):
                out[i] |= 1 << (nk + j)
            else:
                out[nk + j] |= 1 << i
    return ConflictDigraph(Digraph(n, out), ks, ss)


def antisym_game_weights(d: Digraph) -> tuple[Fraction, ...]:
    """Exact nonnegative weights summing to one with every vertex's
    out-neighborhood at least as heavy as its in-neighborhood.

    Existence is guaranteed for antisymmetric digraphs, so infeasibility of
    the program signals an implementation bug and raises.
    """
    n = d.n
    if n == 0:
        return ()
    a_ub = []
    for x in range(n):
        inm = d.in_mask(x)
        row = [ZERO] * n
        for y in bits(d.out[x]):
            row[y] = Fraction(-1)
        for y in bits(inm):
            row[y] = Fraction(1)
        a_ub.append(row)  # w(N-) - w(N+) <= 0
    w = lp_feasible(a_ub=a_ub, b_ub=[ZERO] * n,
                    a_eq=[[Fraction(1)] * n], b_eq=[Fraction(1)])
    if w is None:
        raise RuntimeError("antisymmetric game infeasible: implementation bug")
    total = sum(w, ZERO)
    assert total == 1 and all(v >= 0 for v in w)
    for x in range(n):
        outw = sum((w[y] for y in bits(d.out[x])), ZERO)
        inw = sum((w[y] for y in bits(d.in_mask(x))), ZERO)
        assert outw >= inw, "returned weights violate the game inequality"
    return tuple(w)


@dataclass(frozen=True)
class SideWeights:
    side: str                       # "K" | "S"
    weights: dict                   # original vertex id -> Fraction, total 2


def _side_feasible(signs: list[list[int]], nv: int) -> tuple[Fraction, ...] | None:
    """Weights w >= 0 with sum 2 and signs . w >= 0 componentwise."""
    if nv == 0:
        return None
    if not signs:
        return (Fraction(2),) + (ZERO,) * (nv - 1)
    a_ub = [[Fraction(-c) for c in row] for row in signs]
    b_ub = [ZERO] * len(signs)
    return lp_feasible(a_ub=a_ub, b_ub=b_ub,
                       a_eq=[[Fraction(1)] * nv], b_eq=[Fraction(2)], nvars=nv)


def side_weights(cd: ConflictDigraph, g: Graph) -> SideWeights:
    """Pick the side of the conflict digraph carrying weight and rescale it to
    total 2, so that every opposite-side vertex sees out-weight at least 1.

    The clique side is certified first; by the game argument at least one
    side always works.  All three conditions are checked exactly before
    returning.
    """
    ks, ss = cd.clique, cd.stable
    if not ks and not ss:
        return SideWeights("K", {})
    # sign[x][k] = +1 if the arc runs x -> k (k outside N(x)), else -1
    k_rows = [[1 if not g.has_edge(x, kk) else -1 for kk in ks] for x in ss]
    w = _side_feasible(k_rows, len(ks))
    if w is not None:
        side, ids, opp = "K", ks, ss
    else:
        s_rows = [[1 if g.has_edge(y, svtx) else -1 for svtx in ss] for y in ks]
        w = _side_feasible(s_rows, len(ss))
        if w is None:
            raise RuntimeError("neither side admits game weights: implementation bug")
        side, ids, opp = "S", ss, ks
    weights = dict(zip(ids, w))
    assert sum(weights.values()) == 2 and all(v >= 0 for v in weights.values())
    chosen = frozenset(ids)
    for x in opp:
        if side == "K":
            outw = sum((weights[v] for v in ids if not g.has_edge(x, v)), ZERO)
        else:
            outw = sum((weights[v] for v in ids if g.has_edge(x, v)), ZERO)
        assert outw >= 1, f"out-weight below 1 at vertex {x} against side {sorted(chosen)}"
    return SideWeights(side, weights)


# -- hypergraphs -------------------------------------------------------------


class Hypergraph:
    """Vertices 0..n-1; ``edges`` is a tuple of frozensets, duplicates kept
    (one hyperedge per generating vertex)."""

    __slots__ = ("n", "edges")

    def __init__(self, n: int, edges):
        edges = tuple(frozenset(e) for e in edges)
        for e in edges:
            for v in e:
                if not 0 <= v < n:
                    raise ValueError(f"hyperedge vertex {v} out of range")
        self.n = n
        self.edges = edges

    def __repr__(self):
        return f"Hypergraph(n={self.n}, m={len(self.edges)})"


def build_hypergraph(g: Graph, base: frozenset, opposite: frozenset,
                     mode: str) -> tuple[Hypergraph, tuple[int, ...]]:
    """One hyperedge per opposite vertex x: the base vertices outside N(x)
    (mode "nonneighbors") or inside N(x) (mode "neighbors").  Returns the
    hypergraph over re-indexed base vertices plus the id map."""
    if base & opposite:
        raise ValueError("base and opposite sets intersect")
    if mode not in ("nonneighbors", "neighbors"):
        raise ValueError(f"unknown mode {mode!r}")
    ids = tuple(sorted(base))
    pos = {v: i for i, v in enumerate(ids)}
    edges = []
    for x in sorted(opposite):
        if mode == "nonneighbors":
            members = [pos[v] for v in ids if not g.has_edge(x, v)]
        else:
            members = [pos[v] for v in ids if g.has_edge(x, v)]
        edges.append(frozenset(members))
    return Hypergraph(len(ids), edges), ids


def fractional_transversality(h: Hypergraph) -> tuple[Fraction, tuple[Fraction, ...]]:
    """Exact optimum of the fractional covering program together with an
    optimal weight vector."""
    for e in h.edges:
        if not e:
            raise ValueError("empty hyperedge: covering program infeasible")
    if not h.edges:
        return ZERO, (ZERO,) * h.n
    a_ub = []
    for e in h.edges:
        row = [ZERO] * h.n
        for v in e:
            row[v] = Fraction(-1)
        a_ub.append(row)
    res: LpResult = solve_lp([Fraction(1)] * h.n, a_ub=a_ub,
                             b_ub=[Fraction(-1)] * len(h.edges))
    assert res.status == "optimal"
    return res.value, res.x


def greedy_transversal(h: Hypergraph) -> frozenset:
    """Hitting set by repeated max-coverage choice (lowest index on ties)."""
    for e in h.edges:
        if not e:
            raise ValueError("empty hyperedge cannot be hit")
    uncovered = list(range(len(h.edges)))
    chosen = set()
    while uncovered:
        best_v, best_hits = -1, -1
        for v in range(h.n):
            hits = sum(1 for i in uncovered if v in h.edges[i])
            if hits > best_hits:
                best_v, best_hits = v, hits
        chosen.add(best_v)
        uncovered = [i for i in uncovered if best_v not in h.edges[i]]
    return frozenset(chosen)


def exact_min_transversal(h: Hypergraph) -> frozenset:
    """Minimum hitting set by branch and bound; intended for n <= 20."""
    if h.n > 20:
        raise ValueError("exact transversal capped at 20 vertices")
    for e in h.edges:
        if not e:
            raise ValueError("empty hyperedge cannot be hit")
    best = [frozenset(greedy_transversal(h))]

    def search(chosen: set, remaining: list[frozenset]):
        if len(chosen) >= len(best[0]):
            return
        if not remaining:
            best[0] = frozenset(chosen)
            return
        pivot = min(remaining, key=len)
        for v in sorted(pivot):
            chosen.add(v)
            search(chosen, [e for e in remaining if v not in e])
            chosen.discard(v)

    search(set(), list(h.edges))
    return best[0]


@dataclass(frozen=True)
class VcResult:
    value: int
    exact: bool        # False means "at least value" (cap reached)
    degenerate: bool   # True for the edgeless hypergraph, where value 0 is a convention


def vc_dimension(h: Hypergraph, cap: int) -> VcResult:
    """Largest shattered vertex set, exhaustively up to size ``cap``."""
    if not h.edges:
        return VcResult(0, True, True)
    edge_masks = [mask_of(e) for e in h.edges]
    best = 0
    size = 1
    while size <= min(cap, h.n):
        if len(edge_masks) < (1 << size):
            break  # not enough traces to shatter anything this large
        found = False
        for combo in itertools.combinations(range(h.n), size):
            a = mask_of(combo)
            traces = {e & a for e in edge_masks}
            if len(traces) == (1 << size):
                found = True
                break
        if not found:
            break
        best = size
        size += 1
    if best >= cap:
        return VcResult(cap, False, False)
    return VcResult(best, True, False)


# -- separator for graphs excluding a fixed split pattern --------------------


@dataclass(frozen=True)
class PairPipelineReport:
    clique: frozenset
    stable: frozenset
    side: str
    tau: int
    tau_exact_fallback: bool
    tau_star: Fraction
    vc: VcResult
    cut_mask: int


def transversal_budget(phi: int) -> float:
    return 64.0 * phi * (math.log2(phi) + 2.0)


def separate_pair_split_free(g: Graph, k: frozenset, s: frozenset,
                             budget: float) -> PairPipelineReport:
    """Run the weight/hypergraph/transversal pipeline on one disjoint pair and
    return the separating cut with its certificates."""
    cd = conflict_digraph(g, k, s)
    sw = side_weights(cd, g)
    if sw.side == "K":
        h, ids = build_hypergraph(g, k, s, "nonneighbors")
    else:
        h, ids = build_hypergraph(g, s, k, "neighbors")
    tau_star, _ = fractional_transversality(h)
    transversal = greedy_transversal(h)
    fallback = False
    if len(transversal) > budget and h.n <= 20:
        transversal = exact_min_transversal(h)
        fallback = True
    if len(transversal) > budget:
        raise RuntimeError(
            f"transversal size {len(transversal)} exceeds the budget {budget:.1f}; "
            "input graph is probably not in the stated class")
    picked = [ids[i] for i in sorted(transversal)]
    if sw.side == "K":
        u = g.full_mask
        for x in picked:
            u &= g.adj[x] | (1 << x)
    else:
        u = 0
        for x in picked:
            u |= g.adj[x]
    kmask, smask = mask_of(k), mask_of(s)
    if kmask & ~u or smask & u:
        raise RuntimeError("pipeline produced a non-separating cut: implementation bug")
    vc = vc_dimension(h, cap=h.n + 1)
    return PairPipelineReport(k, s, sw.side, len(transversal), fallback,
                              tau_star, vc, u)


def split_free_report(g: Graph, gamma: Graph,
                      split: SplitPartition | None = None
                      ) -> tuple[CutFamily, list[PairPipelineReport]]:
    """Cut family plus the per-pair pipeline reports for a graph with no
    induced copy of the split pattern ``gamma``."""
    if split is None:
        options = split_partitions(gamma)
        if not options:
            raise ValueError("pattern graph is not split")
        split = min(options, key=lambda sp: (max(len(sp.clique_part), len(sp.stable_part)),
                                             tuple(sorted(sp.clique_part))))
    phi = max(len(split.clique_part), len(split.stable_part))
    if phi == 0:
        raise ValueError("pattern graph must be nonempty")
    hit = contains_induced(g, gamma)
    if hit is not None:
        raise ValueError(f"graph contains the forbidden pattern at {hit}")
    budget = transversal_budget(phi)
    reports = []
    masks = []
    for kmask, smask in disjoint_maximal_pairs(g):
        rep = separate_pair_split_free(g, set_of(kmask), set_of(smask), budget)
        reports.append(rep)
        masks.append(rep.cut_mask)
    return family_from_masks(g.n, masks), reports


def build_split_free_separator(g: Graph, gamma: Graph,
                               split: SplitPartition | None = None) -> CutFamily:
    family, _ = split_free_report(g, gamma, split)
    return family


# -- separator for graphs excluding a long path and its complement ------------


def path_free_constant(t_k: float) -> float:
    return -1.0 / math.log2(1.0 - t_k)


def build_pk_free_separator(g: Graph, k: int, t_k: float,
                            base_size: int = 12) -> CutFamily:
    """Recursive construction: peel off a completely non-adjacent pair of
    linear size (working in the complement when only an adjacent pair
    exists), separate the two overlapping remainders, and lift their cuts.
    Levels of at most ``base_size`` vertices take every bipartition."""
    if not 0.0 < t_k < 1.0:
        raise ValueError("t_k must lie strictly inside (0, 1)")
    pk = path_graph(k)
    hit = contains_induced(g, pk)
    if hit is not None:
        raise ValueError(f"graph contains an induced {k}-vertex path at {hit}")
    hit = contains_induced(g, complement(pk))
    if hit is not None:
        raise ValueError(f"graph contains an induced complement path at {hit}")

    base_budget = [0]

    def rec(h: Graph, ids: tuple[int, ...]) -> list[int]:
        m = h.n
        if m <= base_size:
            base_budget[0] += 1 << m
            return [mask_of(ids[i] for i in bits(sub)) for sub in range(1 << m)]
        needed = math.ceil(t_k * m)
        pair = find_biclique_pair(h, needed)
        if pair is None:
            raise BicliquePairNotFound(ids, needed)
        if pair.mode == "adjacent":
            flipped = rec(complement(h), ids)
            level = mask_of(ids)
            return [level & ~a for a in flipped]
        v1 = mask_of(pair.a)
        v2 = mask_of(pair.b)
        v3 = h.full_mask & ~v1 & ~v2
        out = []
        for part_mask in (v1 | v3, v2 | v3):
            sub, sub_ids = induced(h, set_of(part_mask))
            out.extend(rec(sub, tuple(ids[i] for i in sub_ids)))
        return out

    masks = rec(g, tuple(range(g.n)))
    family = family_from_masks(g.n, masks)
    c = path_free_constant(t_k)
    assert len(family) <= g.n ** c + base_budget[0]
    return family
