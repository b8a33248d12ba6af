"""Oriented biclique packings, biclique coverings, fooling sets, and the
transformations tying them to colorings and separators.

Verification is exhaustive and reports the lexicographically first violation,
so re-running in any order yields the same result.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graphs import (Graph, bits, complete_graph, from_edges, greedy_coloring,
                     induced, is_clique, is_proper_coloring, is_stable, mask_of,
                     set_of)
from .separator import Cut, CutFamily, family_from_masks, separates


@dataclass(frozen=True)
class OrientedBiclique:
    a_side: frozenset
    b_side: frozenset


@dataclass(frozen=True)
class PackingCertificate:
    host: Graph
    bicliques: tuple[OrientedBiclique, ...]


@dataclass(frozen=True)
class BicliqueCovering:
    host: Graph
    bicliques: tuple[tuple[frozenset, frozenset], ...]
    t: int


@dataclass(frozen=True)
class FoolingSet:
    host: Graph
    pairs: tuple[tuple[frozenset, frozenset], ...]


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    violation: str | None = None
    detail: tuple | None = None


# -- verifiers ----------------------------------------------------------------


def verify_packing(cert: PackingCertificate) -> VerifyResult:
    """Check completeness of every oriented biclique, coverage of every edge
    in at least one direction, and that no ordered pair is covered twice."""
    g = cert.host
    for i, bc in enumerate(cert.bicliques):
        am, bm = mask_of(bc.a_side), mask_of(bc.b_side)
        if am & bm:
            return VerifyResult(False, "sides-intersect", (i,))
        for a in sorted(bc.a_side):
            missing = bm & ~g.adj[a]
            if missing:
                b = next(bits(missing))
                return VerifyResult(False, "incomplete-biclique", (i, a, b))
    cover_out = [0] * g.n
    seen_dup = None
    for bc in cert.bicliques:
        bm = mask_of(bc.b_side)
        for a in bc.a_side:
            dup = cover_out[a] & bm
            if dup:
                b = next(bits(dup))
                if seen_dup is None or (a, b) < seen_dup:
                    seen_dup = (a, b)
            cover_out[a] |= bm
    for u, v in g.edges():
        if not (cover_out[u] >> v & 1 or cover_out[v] >> u & 1):
            return VerifyResult(False, "uncovered-edge", (u, v))
    if seen_dup is not None:
        return VerifyResult(False, "doubly-covered-arc", seen_dup)
    return VerifyResult(True)


def verify_covering(cov: BicliqueCovering) -> VerifyResult:
    """Every biclique complete, every edge covered between once and t times."""
    g = cov.host
    if cov.t < 1:
        return VerifyResult(False, "bad-multiplicity-cap", (cov.t,))
    for i, (left, right) in enumerate(cov.bicliques):
        lm, rm = mask_of(left), mask_of(right)
        if lm & rm:
            return VerifyResult(False, "sides-intersect", (i,))
        for a in sorted(left):
            missing = rm & ~g.adj[a]
            if missing:
                return VerifyResult(False, "incomplete-biclique",
                                    (i, a, next(bits(missing))))
    counts: dict[tuple[int, int], int] = {}
    for left, right in cov.bicliques:
        for a in left:
            for b in right:
                key = (a, b) if a < b else (b, a)
                counts[key] = counts.get(key, 0) + 1
    for u, v in g.edges():
        c = counts.get((u, v), 0)
        if c == 0:
            return VerifyResult(False, "uncovered-edge", (u, v))
        if c > cov.t:
            return VerifyResult(False, "over-covered-edge", (u, v, c))
    return VerifyResult(True)


def verify_fooling_set(fs: FoolingSet) -> VerifyResult:
    g = fs.host
    for i, (k, s) in enumerate(fs.pairs):
        if k & s:
            return VerifyResult(False, "pair-intersects", (i,))
        if not is_clique(g, k):
            return VerifyResult(False, "not-a-clique", (i,))
        if not is_stable(g, s):
            return VerifyResult(False, "not-stable", (i,))
    for i in range(len(fs.pairs)):
        ki, si = fs.pairs[i]
        for j in range(i + 1, len(fs.pairs)):
            kj, sj = fs.pairs[j]
            if not (ki & sj) and not (kj & si):
                return VerifyResult(False, "uncrossed-pairs", (i, j))
    return VerifyResult(True)


# -- fooling sets -------------------------------------------------------------


def build_fooling_set(g: Graph) -> FoolingSet:
    """Fooling set of size n + 1 by recursion: split on the lowest vertex v,
    extend the neighborhood side's cliques and the non-neighborhood side's
    stable sets with v."""

    def rec(vmask: int) -> list[tuple[int, int]]:
        if vmask == 0:
            return [(0, 0)]
        v = (vmask & -vmask).bit_length() - 1
        bv = 1 << v
        nb = g.adj[v] & vmask
        nonnb = vmask & ~g.adj[v] & ~bv
        part1 = [(k | bv, s) for k, s in rec(nb)]
        part2 = [(k, s | bv) for k, s in rec(nonnb)]
        return part1 + part2

    pairs = [(set_of(k), set_of(s)) for k, s in rec(g.full_mask)]
    return FoolingSet(g, tuple(pairs))


def fooling_to_packing(fs: FoolingSet) -> PackingCertificate:
    """Oriented packing of the complete graph on the fooling pairs: vertex x
    contributes the biclique (pairs whose clique holds x, pairs whose stable
    set holds x)."""
    check = verify_fooling_set(fs)
    if not check.ok:
        raise ValueError(f"input fooling set invalid: {check.violation} {check.detail}")
    m = len(fs.pairs)
    host = complete_graph(m)
    bicliques = []
    for x in range(fs.host.n):
        a = frozenset(i for i, (k, _) in enumerate(fs.pairs) if x in k)
        b = frozenset(i for i, (_, s) in enumerate(fs.pairs) if x in s)
        if a and b:
            bicliques.append(OrientedBiclique(a, b))
    cert = PackingCertificate(host, tuple(bicliques))
    out = verify_packing(cert)
    if not out.ok:
        raise RuntimeError(f"constructed packing invalid: {out.violation} {out.detail}")
    return cert


def certificate_aux_pairs(cert: PackingCertificate
                          ) -> tuple[Graph, list[tuple[frozenset, frozenset]]]:
    """Auxiliary graph on the bicliques (edge when two A-sides meet) plus, for
    each host vertex x, the clique of bicliques whose A-side holds x and the
    stable set of those whose B-side holds x."""
    nb = len(cert.bicliques)
    a_masks = [mask_of(bc.a_side) for bc in cert.bicliques]
    edges = [(i, j) for i in range(nb) for j in range(i + 1, nb)
             if a_masks[i] & a_masks[j]]
    aux = from_edges(nb, edges)
    pairs = []
    for x in range(cert.host.n):
        kx = frozenset(i for i, bc in enumerate(cert.bicliques) if x in bc.a_side)
        sx = frozenset(i for i, bc in enumerate(cert.bicliques) if x in bc.b_side)
        pairs.append((kx, sx))
    return aux, pairs


def packing_to_fooling(cert: PackingCertificate) -> tuple[Graph, FoolingSet]:
    """From a packing of a complete graph, recover a fooling set of the same
    size on the auxiliary graph of the certificate."""
    check = verify_packing(cert)
    if not check.ok:
        raise ValueError(f"certificate invalid: {check.violation} {check.detail}")
    g = cert.host
    if g != complete_graph(g.n):
        raise ValueError("certificate host must be a complete graph")
    aux, pairs = certificate_aux_pairs(cert)
    fs = FoolingSet(aux, tuple(pairs))
    out = verify_fooling_set(fs)
    if not out.ok:
        raise RuntimeError(f"constructed fooling set invalid: {out.violation} {out.detail}")
    return aux, fs


# -- star partitions and brute-force packing numbers ---------------------------


def star_partition(n: int) -> PackingCertificate:
    """Edge partition of the complete graph into n - 1 oriented stars."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    host = complete_graph(n)
    bicliques = [OrientedBiclique(frozenset({i}), frozenset(range(i + 1, n)))
                 for i in range(n - 1)]
    return PackingCertificate(host, tuple(bicliques))


def star_partition_covering(n: int) -> BicliqueCovering:
    cert = star_partition(n)
    return BicliqueCovering(cert.host,
                            tuple((bc.a_side, bc.b_side) for bc in cert.bicliques), 1)


def star_cover(g: Graph) -> PackingCertificate:
    """Edge partition of an arbitrary graph into oriented stars: vertex i
    against its higher-numbered neighbors."""
    bicliques = []
    for i in range(g.n):
        hi = g.adj[i] >> (i + 1) << (i + 1)
        if hi:
            bicliques.append(OrientedBiclique(frozenset({i}), set_of(hi)))
    return PackingCertificate(g, tuple(bicliques))


class CapExceeded(RuntimeError):
    def __init__(self, cap: int):
        super().__init__(f"minimum exceeds the cap: value >= {cap + 1}")
        self.cap = cap


def _unoriented_bicliques(g: Graph):
    """All complete-bipartite edge sets as (left_mask, right_mask, edge_mask),
    with edges indexed lexicographically.  Left side holds the lowest vertex."""
    edges = g.edges()
    eidx = {e: i for i, e in enumerate(edges)}
    out = []
    n = g.n
    seen = set()

    def complete_between(lm, rm):
        for a in bits(lm):
            if rm & ~g.adj[a]:
                return False
        return True

    verts = list(range(n))
    # enumerate disjoint nonempty (L, R) with min(L|R) in L
    for assignment in range(3 ** n):
        lm = rm = 0
        a = assignment
        for v in verts:
            r = a % 3
            a //= 3
            if r == 1:
                lm |= 1 << v
            elif r == 2:
                rm |= 1 << v
        if not lm or not rm:
            continue
        low = ((lm | rm) & -(lm | rm))
        if not lm & low:
            continue
        if (lm, rm) in seen:
            continue
        seen.add((lm, rm))
        if not complete_between(lm, rm):
            continue
        em = 0
        for x in bits(lm):
            for y in bits(rm):
                em |= 1 << eidx[(min(x, y), max(x, y))]
        out.append((lm, rm, em))
    return edges, out


def min_bp_bruteforce(g: Graph, cap: int) -> int:
    """Exact minimum number of edge-disjoint complete bipartite subgraphs
    partitioning the edge set; intended for n <= 6.  Raises CapExceeded when
    the minimum is larger than ``cap``."""
    if g.n > 6:
        raise ValueError("brute-force packing number capped at 6 vertices")
    edges, bicliques = _unoriented_bicliques(g)
    all_mask = (1 << len(edges)) - 1

    def covers_exactly(budget: int, remaining: int) -> bool:
        if remaining == 0:
            return True
        if budget == 0:
            return False
        low = remaining & -remaining
        for _, _, em in bicliques:
            if em & low and em & ~remaining == 0:
                if covers_exactly(budget - 1, remaining & ~em):
                    return True
        return False

    for k in range(cap + 1):
        if covers_exactly(k, all_mask):
            return k
    raise CapExceeded(cap)


def min_bpt_bruteforce(g: Graph, t: int, cap: int) -> int:
    """Exact minimum size of a covering by complete bipartite subgraphs with
    every edge covered between once and t times; n <= 6 only."""
    if g.n > 6:
        raise ValueError("brute-force covering number capped at 6 vertices")
    if t < 1:
        raise ValueError("multiplicity cap must be positive")
    edges, bicliques = _unoriented_bicliques(g)
    ne = len(edges)
    if ne == 0:
        return 0

    def search(budget: int, counts: tuple) -> bool:
        low = next((i for i in range(ne) if counts[i] == 0), None)
        if low is None:
            return True
        if budget == 0:
            return False
        for _, _, em in bicliques:
            if not em >> low & 1:
                continue
            nc = list(counts)
            ok = True
            for e in bits(em):
                nc[e] += 1
                if nc[e] > t:
                    ok = False
                    break
            if ok and search(budget - 1, tuple(nc)):
                return True
        return False

    for k in range(cap + 1):
        if search(k, (0,) * ne):
            return k
    raise CapExceeded(cap)


def min_bpor_bruteforce(g: Graph, cap: int) -> int:
    """Exact minimum size of an oriented packing certificate; n <= 6 only."""
    if g.n > 6:
        raise ValueError("brute-force oriented packing capped at 6 vertices")
    edges, bicliques = _unoriented_bicliques(g)
    eidx = {e: i for i, e in enumerate(edges)}
    all_mask = (1 << len(edges)) - 1
    n = g.n
    oriented = []
    for lm, rm, em in bicliques:
        for am, bm in ((lm, rm), (rm, lm)):
            arcs = 0
            for x in bits(am):
                for y in bits(bm):
                    arcs |= 1 << (x * n + y)
            oriented.append((am, bm, em, arcs))

    def search(budget: int, uncovered: int, used_arcs: int) -> bool:
        if uncovered == 0:
            return True
        if budget == 0:
            return False
        low = uncovered & -uncovered
        for _, _, em, arcs in oriented:
            if em & low and not arcs & used_arcs:
                if search(budget - 1, uncovered & ~em, used_arcs | arcs):
                    return True
        return False

    for k in range(cap + 1):
        if search(k, all_mask, 0):
            return k
    raise CapExceeded(cap)


# -- separators <-> colorings --------------------------------------------------


def separator_to_coloring(g: Graph, cert: PackingCertificate,
                          family: CutFamily) -> tuple[int, ...]:
    """Color every vertex by the first cut separating its associated
    (clique, stable set) pair in the certificate's auxiliary graph.  The
    coloring is proper; uses at most one color per cut."""
    check = verify_packing(cert)
    if not check.ok:
        raise ValueError(f"certificate invalid: {check.violation} {check.detail}")
    aux, pairs = certificate_aux_pairs(cert)
    if family.host_n != aux.n:
        raise ValueError("cut family lives on the wrong host")
    colors = []
    for x, (kx, sx) in enumerate(pairs):
        for idx, cut in enumerate(family.cuts):
            if separates(cut, kx, sx):
                colors.append(idx)
                break
        else:
            raise ValueError(f"pair of vertex {x} is separated by no cut")
    colors = tuple(colors)
    if not is_proper_coloring(g, colors):
        raise RuntimeError("derived coloring is improper: implementation bug")
    return colors


def all_cliques_including_empty(g: Graph) -> list[frozenset]:
    from .graphs import _all_clique_masks, _sort_key
    return sorted((set_of(m) for m in _all_clique_masks(g)), key=_sort_key)


def pairs_packing(g: Graph) -> tuple[Graph, list[tuple[frozenset, frozenset]],
                                     PackingCertificate]:
    """Auxiliary graph on every disjoint (clique, stable set) pair, both sides
    possibly empty, together with the vertex-indexed oriented packing of it."""
    if g.n > 8:
        raise ValueError("pair enumeration capped at 8 vertices")
    from .graphs import complement as _c
    cliques = all_cliques_including_empty(g)
    stables = all_cliques_including_empty(_c(g))
    pairs = [(k, s) for k in cliques for s in stables if not k & s]
    km = np.array([mask_of(k) for k, _ in pairs], dtype=np.uint64)
    sm = np.array([mask_of(s) for _, s in pairs], dtype=np.uint64)
    cross = ((km[:, None] & sm[None, :]) != 0)
    adjm = cross | cross.T
    np.fill_diagonal(adjm, False)
    edges = [(i, j) for i, j in zip(*np.nonzero(np.triu(adjm)))]
    aux = from_edges(len(pairs), [(int(i), int(j)) for i, j in edges],
                     validate_input=False)
    bicliques = []
    for x in range(g.n):
        a = frozenset(i for i, (k, _) in enumerate(pairs) if x in k)
        b = frozenset(i for i, (_, s) in enumerate(pairs) if x in s)
        if a and b:
            bicliques.append(OrientedBiclique(a, b))
    cert = PackingCertificate(aux, tuple(bicliques))
    out = verify_packing(cert)
    if not out.ok:
        raise RuntimeError(f"pair packing invalid: {out.violation} {out.detail}")
    return aux, pairs, cert


def pair_coloring_to_separator(g: Graph, pairs, coloring) -> CutFamily:
    """Each color class of the pair graph yields one cut: the union of its
    cliques against the rest."""
    by_color: dict[int, int] = {}
    for idx, (k, _) in enumerate(pairs):
        c = coloring[idx]
        by_color[c] = by_color.get(c, 0) | mask_of(k)
    # sanity: within a class, clique union must avoid stable union
    for c in by_color:
        smask = 0
        for idx, (_, s) in enumerate(pairs):
            if coloring[idx] == c:
                smask |= mask_of(s)
        if by_color[c] & smask:
            raise ValueError(f"color class {c} mixes intersecting pairs; "
                             "coloring is not proper for the pair graph")
    return family_from_masks(g.n, (by_color[c] for c in sorted(by_color)))


# -- multiplicity refinement (labels) and coloring composition -----------------


def packing_to_2covering(cert: PackingCertificate) -> BicliqueCovering:
    """Forget orientations: a packing certificate covers each edge at most
    twice (once per direction)."""
    cov = BicliqueCovering(cert.host,
                           tuple((bc.a_side, bc.b_side) for bc in cert.bicliques), 2)
    out = verify_covering(cov)
    if not out.ok:
        raise RuntimeError(f"relaxed covering invalid: {out.violation} {out.detail}")
    return cov


def relax_covering(cov: BicliqueCovering, t: int) -> BicliqueCovering:
    if t < cov.t:
        raise ValueError("multiplicity cap can only grow")
    return BicliqueCovering(cov.host, cov.bicliques, t)


@dataclass(frozen=True)
class RefinedPartition:
    subgraph: Graph                       # edges covered exactly t times
    partition: BicliqueCovering           # 1-covering of the subgraph
    labels: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]


def refine_t_covering(g: Graph, cov: BicliqueCovering) -> RefinedPartition:
    """Group the exactly-t-covered edges by their label: the sorted tuple of
    covering biclique indices plus, per index, which side holds the endpoint
    that the lowest-indexed covering biclique keeps on its left.  Each label
    class is a complete bipartite graph and the classes partition the
    exactly-t subgraph.

    Anchoring the signs to the first biclique (rather than to the vertex
    order) is what makes every class complete: with vertex-order signs, an
    edge whose left-side endpoint happens to carry the higher index flips its
    sign vector and leaves its class with a hole."""
    check = verify_covering(cov)
    if not check.ok:
        raise ValueError(f"covering invalid: {check.violation} {check.detail}")
    t = cov.t
    cover_lists: dict[tuple[int, int], list[int]] = {}
    for idx, (left, right) in enumerate(cov.bicliques):
        for a in left:
            for b in right:
                key = (a, b) if a < b else (b, a)
                cover_lists.setdefault(key, []).append(idx)
    exact_edges = [e for e in g.edges() if len(cover_lists.get(e, ())) == t]
    sub = from_edges(g.n, exact_edges)
    classes: dict[tuple, list[tuple[int, int]]] = {}
    for (u, v) in exact_edges:
        idxs = tuple(sorted(cover_lists[(u, v)]))
        anchor = u if u in cov.bicliques[idxs[0]][0] else v
        signs = []
        for i in idxs:
            left, _ = cov.bicliques[i]
            signs.append(-1 if anchor in left else 1)
        classes.setdefault((idxs, tuple(signs)), []).append((u, v))
    bicliques = []
    labels = []
    for label in sorted(classes):
        idxs, _ = label
        first_left, _ = cov.bicliques[idxs[0]]
        lows = frozenset()
        highs = frozenset()
        for (u, v) in classes[label]:
            if u in first_left:
                lows |= {u}
                highs |= {v}
            else:
                lows |= {v}
                highs |= {u}
        got = {(min(u, v), max(u, v)) for u, v in classes[label]}
        want = {(min(a, b), max(a, b)) for a in lows for b in highs}
        if got != want:
            raise RuntimeError("label class is not complete bipartite: implementation bug")
        bicliques.append((lows, highs))
        labels.append(label)
    part = BicliqueCovering(sub, tuple(bicliques), 1)
    out = verify_covering(part)
    if not out.ok:
        raise RuntimeError(f"refined partition invalid: {out.violation} {out.detail}")
    return RefinedPartition(sub, part, tuple(labels))


def greedy_base_colorer(h: Graph, partition: BicliqueCovering) -> tuple[int, ...]:
    """Baseline proper-coloring producer for composition: first-fit greedy."""
    return greedy_coloring(h)


def compose_coloring(g: Graph, cov: BicliqueCovering, base_colorer) -> tuple[int, ...]:
    """Proper coloring of g built by recursion on the multiplicity cap: color
    the exactly-t subgraph through its label partition, then recurse on every
    color class, whose restricted covering has multiplicity below t."""
    check = verify_covering(cov)
    if not check.ok:
        raise ValueError(f"covering invalid: {check.violation} {check.detail}")
    if cov.t == 1:
        colors = tuple(base_colorer(g, cov))
        if not is_proper_coloring(g, colors):
            raise ValueError("base colorer returned an improper coloring")
        return colors
    refined = refine_t_covering(g, cov)
    alpha = tuple(base_colorer(refined.subgraph, refined.partition))
    if not is_proper_coloring(refined.subgraph, alpha):
        raise ValueError("base colorer returned an improper coloring")
    final: list[tuple[int, int] | None] = [None] * g.n
    for a_color in sorted(set(alpha)):
        members = [v for v in range(g.n) if alpha[v] == a_color]
        sub, ids = induced(g, members)
        memset = frozenset(members)
        restricted = []
        for left, right in cov.bicliques:
            l2 = frozenset(ids.index(v) for v in left & memset)
            r2 = frozenset(ids.index(v) for v in right & memset)
            restricted.append((l2, r2))
        subcov = BicliqueCovering(sub, tuple(restricted), cov.t - 1)
        beta = compose_coloring(sub, subcov, base_colorer)
        for local, v in enumerate(ids):
            final[v] = (a_color, beta[local])
    palette = sorted(set(final))
    lookup = {c: i for i, c in enumerate(palette)}
    colors = tuple(lookup[c] for c in final)
    if not is_proper_coloring(g, colors):
        raise RuntimeError("composed coloring improper: implementation bug")
    return colors


# -- advisory rank diagnostic ---------------------------------------------------


def certificate_matrix_rank(cert: PackingCertificate) -> int:
    """Rank over the rationals of the 0/1 matrix summing the outer products of
    the certificate's oriented bicliques.  Reported as a diagnostic only."""
    m = cert.host.n
    mat = [[Fraction(0)] * m for _ in range(m)]
    for bc in cert.bicliques:
        for a in bc.a_side:
            for b in bc.b_side:
                mat[a][b] += 1
    rank = 0
    row = 0
    for col in range(m):
        piv = next((r for r in range(row, m) if mat[r][col] != 0), None)
        if piv is None:
            continue
        mat[row], mat[piv] = mat[piv], mat[row]
        inv = 1 / mat[row][col]
        mat[row] = [x * inv for x in mat[row]]
        for r in range(m):
            if r != row and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[row])]
        rank += 1
        row += 1
        if row == m:
            break
    return rank
