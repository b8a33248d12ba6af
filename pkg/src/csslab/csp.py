"""Compatible 3-coloring of edge-colored complete graphs, the four-part
list-partition problem, 2-SAT reductions, quasi-polynomial 2-list coverings,
and the certificate transformers between coverings and separators.

Colors of the edge-coloring problem are 0, 1, 2 (printed A, B, C); parts of
the list-partition problem are 1..4 (printed A1..A4), where part 4 must be a
clique, parts 1 and 2 stable sets, and parts 1 and 3 completely non-adjacent.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .graphs import (Graph, bits, from_edges, induced, is_split_graph, mask_of,
                     maximal_cliques, set_of, split_partitions)
from .rng import SplitMix64
from .separator import Cut, CutFamily, family_from_masks

COLOR_NAMES = "ABC"
PART_NAMES = ("A1", "A2", "A3", "A4")

ListAssignment = tuple  # tuple[frozenset[int], ...], one list per vertex


class MalformedCovering(ValueError):
    pass


class NotReallyThreeColorable(RuntimeError):
    def __init__(self, vertex: int, color: int, witness: frozenset):
        super().__init__(
            f"vertex {vertex} is not really 3-colorable for color "
            f"{COLOR_NAMES[color]}: non-split clique {sorted(witness)}")
        self.vertex = vertex
        self.color = color
        self.witness = witness


# -- instances ---------------------------------------------------------------


class CcpInstance:
    """Edge 3-coloring of the complete graph on n vertices."""

    __slots__ = ("n", "colors")

    def __init__(self, n: int, colors):
        colors = tuple(colors)
        if len(colors) != n * (n - 1) // 2:
            raise ValueError("color vector length must be n(n-1)/2")
        if any(c not in (0, 1, 2) for c in colors):
            raise ValueError("edge colors must be 0, 1 or 2")
        self.n = n
        self.colors = colors

    def _index(self, u: int, v: int) -> int:
        if u > v:
            u, v = v, u
        if u == v or not 0 <= u < self.n or v >= self.n:
            raise ValueError(f"bad vertex pair ({u}, {v})")
        return u * (2 * self.n - u - 1) // 2 + (v - u - 1)

    def color(self, u: int, v: int) -> int:
        return self.colors[self._index(u, v)]

    def edge_neighborhood(self, x: int, color: int) -> frozenset:
        return frozenset(y for y in range(self.n)
                         if y != x and self.color(x, y) == color)

    def __eq__(self, other):
        return (isinstance(other, CcpInstance) and self.n == other.n
                and self.colors == other.colors)

    def __repr__(self):
        return f"CcpInstance(n={self.n})"


def random_ccp_instance(n: int, seed: int) -> CcpInstance:
    rng = SplitMix64(seed)
    m = n * (n - 1) // 2
    return CcpInstance(n, tuple(rng.next_u64() % 3 for _ in range(m)))


def ccp_of_graph(g: Graph) -> CcpInstance:
    """Two-color encoding of a graph: edges get color A, non-edges color B."""
    colors = []
    for u in range(g.n):
        for v in range(u + 1, g.n):
            colors.append(0 if g.has_edge(u, v) else 1)
    return CcpInstance(g.n, colors)


def verify_3ccp_solution(inst: CcpInstance, coloring) -> bool:
    """True iff no pair shares its edge color with both endpoints."""
    if len(coloring) != inst.n:
        raise ValueError("coloring length must match the instance")
    for u in range(inst.n):
        for v in range(u + 1, inst.n):
            if coloring[u] == coloring[v] == inst.color(u, v):
                return False
    return True


def all_3ccp_solutions(inst: CcpInstance):
    """Exhaustive solution list; use only at desk scale."""
    return [c for c in itertools.product((0, 1, 2), repeat=inst.n)
            if verify_3ccp_solution(inst, c)]


def assignment_compatible(la: ListAssignment, solution) -> bool:
    return all(solution[v] in la[v] for v in range(len(solution)))


def covering_covers(covering, solutions) -> list:
    """Solutions from the list not compatible with any assignment."""
    missed = []
    for sol in solutions:
        if not any(assignment_compatible(la, sol) for la in covering):
            missed.append(sol)
    return missed


# -- 2-SAT --------------------------------------------------------------------


@dataclass(frozen=True)
class TwoSatInstance:
    nvars: int
    clauses: tuple[tuple[int, int], ...]  # literals are +-(var+1)

    def __post_init__(self):
        for a, b in self.clauses:
            for lit in (a, b):
                if lit == 0 or abs(lit) > self.nvars:
                    raise ValueError(f"literal {lit} out of range")


def solve_2sat(ts: TwoSatInstance):
    """Satisfying assignment (tuple of bools) or None, by strongly connected
    components of the implication graph (iterative Tarjan).

    Literal node ids: 2v for the negation of variable v, 2v + 1 for the
    variable itself; with that numbering an unconstrained variable comes out
    False.
    """
    n = ts.nvars
    nn = 2 * n

    def node(lit: int) -> int:
        v = abs(lit) - 1
        return 2 * v + 1 if lit > 0 else 2 * v

    def negate(x: int) -> int:
        return x ^ 1

    adj: list[list[int]] = [[] for _ in range(nn)]
    for a, b in ts.clauses:
        adj[negate(node(a))].append(node(b))
        adj[negate(node(b))].append(node(a))

    index = [-1] * nn
    low = [0] * nn
    comp = [-1] * nn
    on_stack = [False] * nn
    stack: list[int] = []
    counter = [0]
    comp_count = [0]

    for root in range(nn):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter[0]
                counter[0] += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            for i in range(pi, len(adj[v])):
                w = adj[v][i]
                if index[w] == -1:
                    work[-1] = (v, i + 1)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = comp_count[0]
                    if w == v:
                        break
                comp_count[0] += 1
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])

    out = []
    for v in range(n):
        if comp[2 * v] == comp[2 * v + 1]:
            return None
        out.append(comp[2 * v + 1] < comp[2 * v])
    return tuple(out)


def two_list_to_2sat(inst: CcpInstance, la: ListAssignment):
    """Encode the solutions compatible with a 2-list assignment.

    Per vertex with a two-color list: one variable per color, an "at least
    one" and an "at most one" clause.  Singleton lists contribute one
    variable forced true.  Every same-colored conflict along an edge whose
    color appears on both endpoints' lists adds an exclusion clause.
    Returns the instance plus a decoder from assignments to vertex colorings.
    """
    if len(la) != inst.n:
        raise ValueError("assignment length must match the instance")
    var_of: dict[tuple[int, int], int] = {}
    for v in range(inst.n):
        lst = sorted(set(la[v]))
        if not 1 <= len(lst) <= 2:
            raise ValueError(f"vertex {v} list must hold one or two colors")
        for c in lst:
            var_of[(v, c)] = len(var_of)
    clauses = []
    for v in range(inst.n):
        lst = sorted(set(la[v]))
        if len(lst) == 2:
            x = var_of[(v, lst[0])] + 1
            y = var_of[(v, lst[1])] + 1
            clauses.append((x, y))
            clauses.append((-x, -y))
        else:
            x = var_of[(v, lst[0])] + 1
            clauses.append((x, x))
    for u in range(inst.n):
        for v in range(u + 1, inst.n):
            c = inst.color(u, v)
            xu = var_of.get((u, c))
            xv = var_of.get((v, c))
            if xu is not None and xv is not None:
                clauses.append((-(xu + 1), -(xv + 1)))
    ts = TwoSatInstance(len(var_of), tuple(clauses))

    def decode(assignment) -> tuple[int, ...]:
        colors = []
        for v in range(inst.n):
            lst = sorted(set(la[v]))
            chosen = [c for c in lst if assignment[var_of[(v, c)]]]
            if len(chosen) != 1:
                raise ValueError("assignment does not select exactly one color")
            colors.append(chosen[0])
        return tuple(colors)

    return ts, decode


# -- quasi-polynomial covering tree -------------------------------------------


@dataclass(frozen=True)
class CoveringTree:
    assignments: tuple[ListAssignment, ...]
    raw_leaf_count: int
    height: int
    level_removals: tuple[tuple[int, int], ...]  # (pool size, vertices constrained)


def majority_color(inst: CcpInstance, x: int, pool) -> int:
    counts = [0, 0, 0]
    for y in pool:
        if y != x:
            counts[inst.color(x, y)] += 1
    best = max(counts)
    return counts.index(best)  # ties fall to the lowest color


def build_quasipoly_covering(inst: CcpInstance) -> CoveringTree:
    """Recursion tree over majority colors.

    Each level branches on which still-unconstrained vertex receives its
    majority color (that vertex becomes a singleton, its majority-colored
    neighborhood loses that color), plus one extra leaf where every remaining
    vertex is denied its majority color.  Every valid solution is compatible
    with some leaf.
    """
    if inst.n < 1:
        raise ValueError("instance must have at least one vertex")
    leaves: list[tuple[ListAssignment, int]] = []
    removals: list[tuple[int, int]] = []
    full = frozenset((0, 1, 2))

    def rec(pool: tuple[int, ...], constraints: dict, depth: int):
        if not pool:
            leaves.append((tuple(constraints[v] for v in range(inst.n)), depth))
            return
        majors = {x: majority_color(inst, x, pool) for x in pool}
        for x in pool:
            alpha = majors[x]
            nbhd = [y for y in pool if y != x and inst.color(x, y) == alpha]
            child = dict(constraints)
            child[x] = frozenset({alpha})
            rest = full - {alpha}
            for y in nbhd:
                child[y] = rest
            next_pool = tuple(y for y in pool if y != x and y not in set(nbhd))
            removals.append((len(pool), len(pool) - len(next_pool)))
            rec(next_pool, child, depth + 1)
        extra = dict(constraints)
        for x in pool:
            extra[x] = full - {majors[x]}
        leaves.append((tuple(extra[v] for v in range(inst.n)), depth + 1))

    rec(tuple(range(inst.n)), {}, 0)
    height = max(d for _, d in leaves)
    seen = set()
    assignments = []
    for la, _ in leaves:
        if la not in seen:
            seen.add(la)
            assignments.append(la)
    return CoveringTree(tuple(assignments), len(leaves), height, tuple(removals))


# -- really-3-colorable test ----------------------------------------------------


def really_3colorable(inst: CcpInstance, x: int, alpha: int
                      ) -> tuple[bool, frozenset | None]:
    """True iff every maximal clique using the other two colors inside the
    alpha-edge-neighborhood of x splits into a clique of one color and a
    clique of the other; otherwise the first non-split witness is returned."""
    others = [c for c in (0, 1, 2) if c != alpha]
    beta = others[0]
    u = sorted(inst.edge_neighborhood(x, alpha))
    if not u:
        return True, None
    pos = {v: i for i, v in enumerate(u)}
    bg_edges = [(pos[a], pos[b]) for a, b in itertools.combinations(u, 2)
                if inst.color(a, b) != alpha]
    bg = from_edges(len(u), bg_edges)
    for z in maximal_cliques(bg):
        beta_edges = [(i, j) for i, j in itertools.combinations(sorted(z), 2)
                      if inst.color(u[i], u[j]) == beta]
        zl = sorted(z)
        zpos = {v: i for i, v in enumerate(zl)}
        zg = from_edges(len(zl), [(zpos[i], zpos[j]) for i, j in beta_edges])
        if not is_split_graph(zg):
            return False, frozenset(u[i] for i in z)
    return True, None


# -- the four-part list-partition problem ---------------------------------------


@dataclass(frozen=True)
class StubbornInstance:
    graph: Graph
    lists: tuple  # frozenset[int] over {1, 2, 3, 4}, one per vertex

    def __post_init__(self):
        if len(self.lists) != self.graph.n:
            raise ValueError("list count must match the vertex count")
        for lst in self.lists:
            if not lst or not set(lst) <= {1, 2, 3, 4}:
                raise ValueError("lists must be nonempty subsets of {1,2,3,4}")


def trivial_stubborn(g: Graph) -> StubbornInstance:
    return StubbornInstance(g, tuple(frozenset({1, 2, 3, 4}) for _ in range(g.n)))


@dataclass(frozen=True)
class StubbornCheck:
    valid: bool
    maximal: bool
    reason: str | None = None


def verify_stubborn_solution(inst: StubbornInstance, part) -> StubbornCheck:
    """Exact validity and maximality flags for a 1..4 assignment."""
    g = inst.graph
    if len(part) != g.n or any(p not in (1, 2, 3, 4) for p in part):
        raise ValueError("assignment must give every vertex a part in 1..4")
    masks = {i: mask_of(v for v in range(g.n) if part[v] == i) for i in (1, 2, 3, 4)}
    for v in range(g.n):
        if part[v] not in inst.lists[v]:
            return StubbornCheck(False, False, f"vertex {v} violates its list")
    for v in bits(masks[4]):
        if masks[4] & ~g.adj[v] & ~(1 << v):
            return StubbornCheck(False, False, "part 4 is not a clique")
    for i in (1, 2):
        for v in bits(masks[i]):
            if g.adj[v] & masks[i]:
                return StubbornCheck(False, False, f"part {i} is not stable")
    for v in bits(masks[1]):
        if g.adj[v] & masks[3]:
            return StubbornCheck(False, False, "parts 1 and 3 are adjacent")
    maximal = all(3 not in inst.lists[v] for v in bits(masks[1]))
    return StubbornCheck(True, maximal)


def all_maximal_stubborn_solutions(inst: StubbornInstance):
    out = []
    for part in itertools.product((1, 2, 3, 4), repeat=inst.graph.n):
        chk = verify_stubborn_solution(inst, part)
        if chk.valid and chk.maximal:
            out.append(part)
    return out


def stubborn_assignment_compatible(la, part) -> bool:
    return all(part[v] in la[v] for v in range(len(part)))


# -- separator -> list-partition covering ---------------------------------------


def square_cut_family(family: CutFamily) -> CutFamily:
    """All pairwise intersections of A-sides (B-sides union), deduplicated.
    Separates every clique from any union of two stable sets the input
    separates individually."""
    masks = [c.side_a_mask for c in family.cuts]
    return family_from_masks(family.host_n,
                             (a & b for a in masks for b in masks))


def separator_to_stubborn_covering(inst: StubbornInstance,
                                   f2: CutFamily) -> list[ListAssignment]:
    """One 2-list assignment per cut: A-side vertices may use parts 3 or 4;
    B-side vertices take parts 2/3 when their own list allows part 3 and
    parts 1/2 otherwise.  Covers every maximal solution provided f2 separates
    cliques from unions of two stable sets."""
    g = inst.graph
    if f2.host_n != g.n:
        raise ValueError("cut family lives on the wrong host")
    out = []
    seen = set()
    for cut in f2.cuts:
        la = []
        for v in range(g.n):
            if cut.side_a_mask >> v & 1:
                la.append(frozenset({3, 4}))
            elif 3 in inst.lists[v]:
                la.append(frozenset({2, 3}))
            else:
                la.append(frozenset({1, 2}))
        la = tuple(la)
        if la not in seen:
            seen.add(la)
            out.append(la)
    return out


# -- list-partition coverings -> edge-coloring coverings -------------------------


_MAIN_TABLE = {
    frozenset({2}): frozenset({2}),
    frozenset({3}): frozenset({1, 2}),
    frozenset({4}): frozenset({0}),
    frozenset({2, 4}): frozenset({0, 2}),
    frozenset({2, 3}): frozenset({1, 2}),
}
_REFINE_TABLE = {
    frozenset({2}): frozenset({1}),
    frozenset({3}): frozenset({0, 2}),
    frozenset({4}): frozenset({2}),
    frozenset({2, 4}): frozenset({1, 2}),
    frozenset({2, 3}): frozenset({0, 1}),
    frozenset({3, 4}): frozenset({0, 2}),
}


def _table_key(lst: frozenset) -> frozenset:
    key = frozenset(lst) - {1}
    if not key:
        raise MalformedCovering(f"list {sorted(lst)} has no row in the translation table")
    return key


def _derived_graph(inst: CcpInstance, pool: tuple[int, ...], colors) -> Graph:
    pos = {v: i for i, v in enumerate(pool)}
    edges = [(pos[a], pos[b]) for a, b in itertools.combinations(pool, 2)
             if inst.color(a, b) in colors]
    return from_edges(len(pool), edges)


def derived_stubborn_instances(inst: CcpInstance, x: int
                               ) -> dict[str, tuple[StubbornInstance, tuple[int, ...]]]:
    """The four list-partition instances consumed by the covering transformer
    for solutions coloring x with color A: two on the C-edge-neighborhood
    (union of B and C edges, then B edges only) and the color-swapped twins
    on the B-edge-neighborhood."""
    uc = tuple(sorted(inst.edge_neighborhood(x, 2)))
    ub = tuple(sorted(inst.edge_neighborhood(x, 1)))
    return {
        "c_main": (trivial_stubborn(_derived_graph(inst, uc, (1, 2))), uc),
        "c_refine": (trivial_stubborn(_derived_graph(inst, uc, (1,))), uc),
        "b_main": (trivial_stubborn(_derived_graph(inst, ub, (2, 1))), ub),
        "b_refine": (trivial_stubborn(_derived_graph(inst, ub, (2,))), ub),
    }


def _swap_colors(lst: frozenset, a: int, b: int) -> frozenset:
    swap = {a: b, b: a}
    return frozenset(swap.get(c, c) for c in lst)


def _neighborhood_assignments(main_cov, refine_cov, pool_size: int,
                              swap_bc: bool) -> list[tuple]:
    """Translate pairs from the two sub-coverings into per-vertex color lists
    on the neighborhood, applying the B/C transposition when requested."""
    out = []
    seen = set()
    if pool_size == 0:
        return [()]
    for f in main_cov:
        for fp in refine_cov:
            lists = []
            for v in range(pool_size):
                key = _table_key(f[v])
                if key == frozenset({3, 4}):
                    val = _REFINE_TABLE.get(_table_key(fp[v]))
                else:
                    val = _MAIN_TABLE.get(key)
                if val is None:
                    raise MalformedCovering(
                        f"lists {sorted(f[v])}/{sorted(fp[v])} have no table row")
                if swap_bc:
                    val = _swap_colors(val, 1, 2)
                lists.append(val)
            t = tuple(lists)
            if t not in seen:
                seen.add(t)
                out.append(t)
    return out


def stubborn_to_3ccp_covering(inst: CcpInstance, x: int, cover_stubborn,
                              target: int = 0) -> list[ListAssignment]:
    """2-list assignments covering every solution that gives x the target
    color.  ``cover_stubborn`` maps a list-partition instance to a covering of
    its maximal solutions and is invoked on the derived instances.

    If x cannot take the target color at all the empty covering is returned;
    if the structural test fails for one of the other two colors the
    construction is unsound and raises."""
    if target not in (0, 1, 2):
        raise ValueError("target color must be 0, 1 or 2")
    if target != 0:
        perm = {c: c for c in (0, 1, 2)}
        perm[0], perm[target] = target, 0
        inv = {v: k for k, v in perm.items()}
        permuted = CcpInstance(inst.n, tuple(perm[c] for c in inst.colors))
        covering = stubborn_to_3ccp_covering(permuted, x, cover_stubborn, target=0)
        return [tuple(frozenset(inv[c] for c in lst) for lst in la) for la in covering]

    ok, _ = really_3colorable(inst, x, 0)
    if not ok:
        return []
    for other in (1, 2):
        ok, wit = really_3colorable(inst, x, other)
        if not ok:
            raise NotReallyThreeColorable(x, other, wit)

    derived = derived_stubborn_instances(inst, x)
    c_pool = derived["c_main"][1]
    b_pool = derived["b_main"][1]
    c_side = _neighborhood_assignments(cover_stubborn(derived["c_main"][0]),
                                       cover_stubborn(derived["c_refine"][0]),
                                       len(c_pool), swap_bc=False)
    b_side = _neighborhood_assignments(cover_stubborn(derived["b_main"][0]),
                                       cover_stubborn(derived["b_refine"][0]),
                                       len(b_pool), swap_bc=True)
    ua = inst.edge_neighborhood(x, 0)
    out = []
    seen = set()
    for cl in c_side:
        for bl in b_side:
            la: list[frozenset] = [None] * inst.n
            la[x] = frozenset({0})
            for v in ua:
                la[v] = frozenset({1, 2})
            for i, v in enumerate(c_pool):
                la[v] = cl[i]
            for i, v in enumerate(b_pool):
                la[v] = bl[i]
            t = tuple(la)
            if t not in seen:
                seen.add(t)
                out.append(t)
    return out


def full_3ccp_covering_via_stubborn(inst: CcpInstance, x: int,
                                    cover_stubborn) -> list[ListAssignment]:
    """Union of the three per-color coverings for a fixed branch vertex."""
    out = []
    seen = set()
    for target in (0, 1, 2):
        for la in stubborn_to_3ccp_covering(inst, x, cover_stubborn, target):
            if la not in seen:
                seen.add(la)
                out.append(la)
    return out


# -- edge-coloring coverings -> separators ---------------------------------------


def ccp_covering_to_separator(g: Graph, covering) -> CutFamily:
    """From a 2-list covering of the two-color encoding of g, emit for every
    assignment and every split partition of its {A,B} set the cut (clique
    part plus the {B,C} vertices) versus the rest.  Singleton lists fold into
    a side that keeps the construction sound: B joins the {B,C} side, A the
    {A,C} side, C the {B,C} side."""
    ab = frozenset({0, 1})
    bc = frozenset({1, 2})
    ac = frozenset({0, 2})
    masks = []
    for la in covering:
        if len(la) != g.n:
            raise ValueError("assignment length must match the graph")
        x_set, y_mask = [], 0
        for v, lst in enumerate(la):
            lst = frozenset(lst)
            if lst == ab:
                x_set.append(v)
            elif lst == bc or lst == frozenset({1}) or lst == frozenset({2}):
                y_mask |= 1 << v
            elif lst == ac or lst == frozenset({0}):
                pass  # lands on the B side implicitly
            else:
                raise MalformedCovering(f"vertex {v} carries unusable list {sorted(lst)}")
        sub, ids = induced(g, x_set)
        for sp in split_partitions(sub):
            u = y_mask
            for i in sp.clique_part:
                u |= 1 << ids[i]
            masks.append(u)
    return family_from_masks(g.n, masks)
