"""Cuts and clique/stable-set separators.

A cut stores only its A-side; the B-side is the complement in the host
vertex set.  A family is verified against every disjoint pair of one maximal
clique and one maximal stable set; separating those suffices because the
family extended with the closed/open neighborhood cuts of every vertex
separates every disjoint pair outright (see ``extend_to_full_separator``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graphs import Graph, bits, mask_of, maximal_cliques, maximal_stables, set_of
from .rng import SplitMix64, bernoulli_threshold


class SeparatorBuildError(RuntimeError):
    def __init__(self, remaining: int, rounds: int):
        super().__init__(
            f"round cap reached after {rounds} rounds with {remaining} pairs uncovered")
        self.remaining = remaining
        self.rounds = rounds


@dataclass(frozen=True)
class Cut:
    host_n: int
    side_a_mask: int

    def __post_init__(self):
        if self.side_a_mask >> self.host_n:
            raise ValueError("cut side references vertices outside the host")

    @property
    def side_a(self) -> frozenset:
        return set_of(self.side_a_mask)

    @property
    def side_b(self) -> frozenset:
        return set_of(((1 << self.host_n) - 1) & ~self.side_a_mask)


class CutFamily:
    __slots__ = ("host_n", "cuts")

    def __init__(self, host_n: int, cuts):
        cuts = tuple(cuts)
        seen = set()
        for c in cuts:
            if c.host_n != host_n:
                raise ValueError("cut host size mismatch")
            if c.side_a_mask in seen:
                raise ValueError("duplicate cut in family")
            seen.add(c.side_a_mask)
        self.host_n = host_n
        self.cuts = cuts

    def __len__(self):
        return len(self.cuts)

    def __iter__(self):
        return iter(self.cuts)

    def __eq__(self, other):
        return (isinstance(other, CutFamily) and self.host_n == other.host_n
                and self.cuts == other.cuts)

    def __repr__(self):
        return f"CutFamily(n={self.host_n}, m={len(self.cuts)})"


def family_from_masks(host_n: int, masks) -> CutFamily:
    """Build a family from side-A masks, dropping duplicates, keeping first
    occurrences in order."""
    seen = set()
    cuts = []
    for m in masks:
        if m not in seen:
            seen.add(m)
            cuts.append(Cut(host_n, m))
    return CutFamily(host_n, cuts)


def all_cuts_family(n: int) -> CutFamily:
    return family_from_masks(n, range(1 << n))


@dataclass(frozen=True)
class SeparationReport:
    ok: bool
    witness: tuple[frozenset, frozenset] | None
    pairs_checked: int


def separates(cut: Cut, clique: frozenset, stable: frozenset) -> bool:
    k = mask_of(clique)
    s = mask_of(stable)
    a = cut.side_a_mask
    return k & ~a == 0 and s & a == 0


def disjoint_maximal_pairs(g: Graph) -> list[tuple[int, int]]:
    """Masks of every (maximal clique, maximal stable set) pair that is
    disjoint, in lexicographic order."""
    cliques = [mask_of(c) for c in maximal_cliques(g)]
    stables = [mask_of(s) for s in maximal_stables(g)]
    return [(k, s) for k in cliques for s in stables if k & s == 0]


def verify_cs_separator(g: Graph, family: CutFamily) -> SeparationReport:
    if family.host_n != g.n:
        raise ValueError("family host size does not match the graph")
    if g.n == 0:
        return SeparationReport(True, None, 0)
    masks = [c.side_a_mask for c in family.cuts]
    checked = 0
    for k, s in disjoint_maximal_pairs(g):
        checked += 1
        for a in masks:
            if k & ~a == 0 and s & a == 0:
                break
        else:
            return SeparationReport(False, (set_of(k), set_of(s)), checked)
    return SeparationReport(True, None, checked)


def extend_to_full_separator(g: Graph, family: CutFamily) -> CutFamily:
    """Append, for every vertex, the closed-neighborhood cut (N[x] vs rest)
    and the open-neighborhood cut (N(x) vs rest).  If the input separates all
    disjoint maximal pairs, the result separates every disjoint clique/stable
    pair: extend the pair to maximal ones; if those meet in x, one of the two
    new cuts around x does the job."""
    masks = [c.side_a_mask for c in family.cuts]
    for x in range(g.n):
        masks.append(g.adj[x] | (1 << x))
        masks.append(g.adj[x])
    return family_from_masks(g.n, masks)


def build_random_separator(g: Graph, p: float, seed: int,
                           max_rounds: int | None = None, *,
                           stats_out: dict | None = None,
                           _force_python: bool = False) -> CutFamily:
    """Greedy random-cut construction.

    Each round draws 32 candidate bipartitions (vertex joins side A with
    probability p), keeps the one covering the most still-uncovered disjoint
    maximal pairs, and drops the pairs it covers.  Rounds that cover nothing
    add no cut.  The default round cap is 2 n^7.  When ``stats_out`` is given
    it receives the round count, the cap and the initial pair count.
    """
    if g.n == 0:
        raise ValueError("graph must be nonempty")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    pairs = disjoint_maximal_pairs(g)
    cap = 2 * g.n ** 7 if max_rounds is None else max_rounds
    if stats_out is not None:
        stats_out.update(rounds=0, cap=cap, pairs=len(pairs))
    if not pairs:
        return CutFamily(g.n, ())
    rng = SplitMix64(seed)
    threshold = bernoulli_threshold(p)
    chosen: list[int] = []
    use_numpy = g.n <= 63 and not _force_python
    if use_numpy:
        k_arr = np.array([k for k, _ in pairs], dtype=np.uint64)
        s_arr = np.array([s for _, s in pairs], dtype=np.uint64)
    rounds = 0
    while rounds < cap:
        if use_numpy:
            if k_arr.size == 0:
                break
        elif not pairs:
            break
        rounds += 1
        cands = [rng.bernoulli_mask(g.n, threshold) for _ in range(32)]
        if use_numpy:
            c_arr = np.array(cands, dtype=np.uint64)
            covered = ((k_arr[None, :] & ~c_arr[:, None]) == 0) \
                & ((s_arr[None, :] & c_arr[:, None]) == 0)
            counts = covered.sum(axis=1)
            best = int(counts.argmax())
            if counts[best] == 0:
                continue
            chosen.append(cands[best])
            keep = ~covered[best]
            k_arr = k_arr[keep]
            s_arr = s_arr[keep]
        else:
            best, best_covered = -1, None
            for i, a in enumerate(cands):
                cov = [j for j, (k, s) in enumerate(pairs)
                       if k & ~a == 0 and s & a == 0]
                if best_covered is None or len(cov) > len(best_covered):
                    best, best_covered = i, cov
            if not best_covered:
                continue
            chosen.append(cands[best])
            drop = set(best_covered)
            pairs = [pr for j, pr in enumerate(pairs) if j not in drop]
    if stats_out is not None:
        stats_out["rounds"] = rounds
    remaining = int(k_arr.size) if use_numpy else len(pairs)
    if remaining:
        raise SeparatorBuildError(remaining, rounds)
    return family_from_masks(g.n, chosen)


# -- closed-form bound on the random construction ---------------------------


@dataclass(frozen=True)
class AppendixBoundReport:
    n: int
    p: float
    omega: float
    alpha: float
    log2_value: float
    value: float
    ok: bool
    small_alpha_fallback: bool


def _threshold_size(n: float, base_log2: float) -> float:
    """2 log_b n - 2 log_b log_b n + 2 log_b(e/2) + 1 with log2(b) given."""
    lb_n = math.log2(n) / base_log2
    return 2 * lb_n - 2 * (math.log2(lb_n) / base_log2) \
        + 2 * (math.log2(math.e / 2) / base_log2) + 1


def check_appendix_bound(n: int, p: float) -> AppendixBoundReport:
    """Evaluate the expectation-one clique/independence thresholds for G(n, p)
    and check p^omega (1-p)^alpha >= n^-6 in log space.

    When the density is so high that the independence threshold degenerates
    (alpha <= 3), the report flags the fallback family of all cuts with
    |A| <= 3 and the check passes through that route.
    """
    if not 0.0 < p < 1.0:
        raise ValueError("p must lie strictly inside (0, 1)")
    if n < 3:
        raise ValueError("n must be at least 3")
    log2_b = -math.log2(p)        # b = 1/p
    log2_bp = -math.log2(1.0 - p)  # b' = 1/(1-p)
    if math.log2(n) / log2_b <= 1.0:
        raise ValueError("clique threshold formula undefined: log_b n <= 1")
    omega = _threshold_size(n, log2_b)
    if math.log2(n) / log2_bp <= 1.0:
        alpha = 3.0
        fallback = True
    else:
        alpha = _threshold_size(n, log2_bp)
        fallback = alpha <= 3.0
    log2_value = omega * math.log2(p) + alpha * math.log2(1.0 - p)
    bound = -6.0 * math.log2(n)
    ok = log2_value >= bound * (1.0 + 1e-9) or fallback
    return AppendixBoundReport(n, p, omega, alpha, log2_value, 2.0 ** log2_value,
                               ok, fallback)
