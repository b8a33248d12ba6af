import itertools
import math
import random

import numpy as np
import pytest

from csslab.graphs import (complement, complete_graph, cycle_graph, empty_graph,
                           from_edges, gen_gnp, is_clique, is_stable, mask_of,
                           set_of)
from csslab.separator import (Cut, CutFamily, build_random_separator,
                              extend_to_full_separator, separates,
                              verify_cs_separator)
from csslab.csp import (CcpInstance, MalformedCovering, NotReallyThreeColorable,
                        StubbornInstance, TwoSatInstance,
                        all_3ccp_solutions, all_maximal_stubborn_solutions,
                        assignment_compatible, build_quasipoly_covering,
                        ccp_covering_to_separator, ccp_of_graph,
                        covering_covers, full_3ccp_covering_via_stubborn,
                        majority_color, random_ccp_instance, really_3colorable,
                        separator_to_stubborn_covering, solve_2sat,
                        square_cut_family, stubborn_assignment_compatible,
                        stubborn_to_3ccp_covering, trivial_stubborn,
                        two_list_to_2sat, verify_3ccp_solution,
                        verify_stubborn_solution)


def separator_provider(seed):
    def provider(sub_inst):
        g = sub_inst.graph
        if g.n == 0:
            return [()]
        fam = extend_to_full_separator(
            g, build_random_separator(g, 0.5, seed))
        return separator_to_stubborn_covering(sub_inst, square_cut_family(fam))
    return provider


def clause_sat(clauses, assignment):
    return all(((a > 0) == assignment[abs(a) - 1]) or
               ((b > 0) == assignment[abs(b) - 1]) for a, b in clauses)


def numpy_2sat_oracle(ts):
    """All-assignment satisfiability over at most 14 variables."""
    n = ts.nvars
    idx = np.arange(1 << n, dtype=np.uint32)
    ok = np.ones(1 << n, dtype=bool)
    for a, b in ts.clauses:
        va = (idx >> (abs(a) - 1) & 1).astype(bool)
        vb = (idx >> (abs(b) - 1) & 1).astype(bool)
        ok &= (va if a > 0 else ~va) | (vb if b > 0 else ~vb)
    return ok


# ---------------------------------------------------------------- solutions


def test_verify_3ccp_examples():
    inst = CcpInstance(2, (0,))
    assert verify_3ccp_solution(inst, (1, 1))
    assert not verify_3ccp_solution(inst, (0, 0))
    assert verify_3ccp_solution(inst, (0, 1))


def test_fixture_demo_solution():
    from csslab import fixture_text
    from csslab.formats import parse_ccp
    inst = parse_ccp(fixture_text("ccp_demo.txt"))
    text = fixture_text("ccp_demo_solution.txt").split()
    sol = tuple("ABC".index(t) for t in text)
    assert verify_3ccp_solution(inst, sol)


# ---------------------------------------------------------------- 2-SAT


def test_two_list_encoding_examples():
    inst = CcpInstance(1, ())
    ts, _ = two_list_to_2sat(inst, (frozenset({0, 1}),))
    assert ts.nvars == 2
    assert set(ts.clauses) == {(1, 2), (-1, -2)}
    sats = [a for a in itertools.product([False, True], repeat=2)
            if clause_sat(ts.clauses, a)]
    assert len(sats) == 2

    inst2 = CcpInstance(2, (0,))
    ts2, dec2 = two_list_to_2sat(inst2, (frozenset({0, 1}), frozenset({0, 1})))
    sats = [a for a in itertools.product([False, True], repeat=ts2.nvars)
            if clause_sat(ts2.clauses, a)]
    assert len(sats) == 3
    for a in sats:
        assert verify_3ccp_solution(inst2, dec2(a))

    # singleton lists forcing an invalid coloring: unsatisfiable
    ts3, _ = two_list_to_2sat(inst2, (frozenset({0}), frozenset({0})))
    assert solve_2sat(ts3) is None


def test_two_list_bijection_exhaustive():
    rnd = random.Random(41)
    for trial in range(12):
        n = rnd.randint(1, 7)
        inst = random_ccp_instance(n, 4000 + trial)
        la = tuple(frozenset(rnd.sample([0, 1, 2], rnd.randint(1, 2)))
                   for _ in range(n))
        ts, dec = two_list_to_2sat(inst, la)
        sats = [a for a in itertools.product([False, True], repeat=ts.nvars)
                if clause_sat(ts.clauses, a)]
        compatible = [s for s in all_3ccp_solutions(inst)
                      if assignment_compatible(la, s)]
        assert len(sats) == len(compatible)
        assert sorted(dec(a) for a in sats) == sorted(compatible)


def test_solve_2sat_examples():
    assert solve_2sat(TwoSatInstance(1, ())) == (False,)
    assert solve_2sat(TwoSatInstance(1, ((1, 1), (-1, -1)))) is None


def test_solve_2sat_against_numpy_oracle():
    rnd = random.Random(43)
    for trial in range(150):
        nv = rnd.randint(1, 14)
        nc = rnd.randint(0, 3 * nv)
        clauses = tuple((rnd.choice([1, -1]) * rnd.randint(1, nv),
                         rnd.choice([1, -1]) * rnd.randint(1, nv))
                        for _ in range(nc))
        ts = TwoSatInstance(nv, clauses)
        got = solve_2sat(ts)
        oracle = numpy_2sat_oracle(ts)
        assert (got is not None) == bool(oracle.any())
        if got is not None:
            assert clause_sat(clauses, got)


# ---------------------------------------------------------------- covering tree


def test_quasipoly_single_vertex():
    inst = CcpInstance(1, ())
    tree = build_quasipoly_covering(inst)
    assert len(tree.assignments) <= 2
    assert not covering_covers(tree.assignments, all_3ccp_solutions(inst))


def test_quasipoly_exhaustive_and_bounds():
    rnd = random.Random(47)
    for trial in range(20):
        n = rnd.randint(1, 8)
        inst = random_ccp_instance(n, 5000 + trial)
        tree = build_quasipoly_covering(inst)
        sols = all_3ccp_solutions(inst)
        assert not covering_covers(tree.assignments, sols)
        height_bound = math.ceil(math.log(n, 1.5)) + 1 if n > 1 else 1
        assert tree.height <= height_bound
        assert tree.raw_leaf_count <= (n + 1) ** tree.height
        for pool, removed in tree.level_removals:
            assert removed >= math.ceil(pool / 3)
        for la in tree.assignments:
            assert all(1 <= len(lst) <= 2 for lst in la)


# ---------------------------------------------------------------- really-3-colorable


def build_c5_blocked_instance():
    """x = 0 sees everyone through A-edges; inside the neighborhood the
    B-edges form a five-cycle, everything else is C."""
    ring = {(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)}
    cols = []
    for u in range(6):
        for v in range(u + 1, 6):
            if u == 0:
                cols.append(0)
            elif (u, v) in ring:
                cols.append(1)
            else:
                cols.append(2)
    return CcpInstance(6, cols)


def test_really_3colorable_examples():
    inst = CcpInstance(2, (1,))
    ok, wit = really_3colorable(inst, 0, 0)  # empty A-edge-neighborhood
    assert ok and wit is None

    blocked = build_c5_blocked_instance()
    ok, wit = really_3colorable(blocked, 0, 0)
    assert not ok and wit == frozenset({1, 2, 3, 4, 5})
    # soundness of the structural test: no solution gives x the color
    assert not any(s[0] == 0 for s in all_3ccp_solutions(blocked))


def test_really_3colorable_random_soundness():
    rnd = random.Random(53)
    for trial in range(15):
        n = rnd.randint(2, 7)
        inst = random_ccp_instance(n, 6000 + trial)
        sols = all_3ccp_solutions(inst)
        for alpha in (0, 1, 2):
            ok, wit = really_3colorable(inst, 0, alpha)
            if not ok:
                assert not any(s[0] == alpha for s in sols)
                assert wit is not None and len(wit) >= 5


# ---------------------------------------------------------------- stubborn


def test_verify_stubborn_examples():
    g = gen_gnp(4, 0.5, 61)
    inst = trivial_stubborn(g)
    chk = verify_stubborn_solution(inst, (3, 3, 3, 3))
    assert chk.valid and chk.maximal

    edge_graph = from_edges(2, [(0, 1)])
    inst2 = trivial_stubborn(edge_graph)
    chk2 = verify_stubborn_solution(inst2, (2, 2))
    assert not chk2.valid

    lone = StubbornInstance(empty_graph(1), (frozenset({1, 3}),))
    chk3 = verify_stubborn_solution(lone, (1,))
    assert chk3.valid and not chk3.maximal

    with pytest.raises(ValueError):
        verify_stubborn_solution(inst, (5, 1, 1, 1))


def test_square_family_examples():
    fam = CutFamily(3, [Cut(3, 0b011)])
    sq = square_cut_family(fam)
    assert len(sq) == 1 and sq.cuts[0].side_a_mask == 0b011

    g = gen_gnp(6, 0.5, 67)
    full = extend_to_full_separator(g, build_random_separator(g, 0.5, seed=3))
    sq = square_cut_family(full)
    assert len(sq) <= len(full) ** 2
    # separates every clique from unions of two stable sets f separates
    from csslab.graphs import _all_clique_masks
    cliques = [set_of(m) for m in _all_clique_masks(g)]
    stables = [set_of(m) for m in _all_clique_masks(complement(g))]
    rnd = random.Random(0)
    for _ in range(200):
        k = rnd.choice(cliques)
        s1, s2 = rnd.choice(stables), rnd.choice(stables)
        if k & (s1 | s2):
            continue
        assert any(separates(c, k, s1 | s2) for c in sq.cuts)


def test_stubborn_covering_single_vertex():
    inst = StubbornInstance(empty_graph(1), (frozenset({3, 4}),))
    fam = CutFamily(1, [Cut(1, 0b1)])
    cov = separator_to_stubborn_covering(inst, fam)
    assert cov == [(frozenset({3, 4}),)]


def test_stubborn_covering_exhaustive():
    rnd = random.Random(71)
    for trial in range(10):
        n = rnd.randint(1, 6)
        g = gen_gnp(n, 0.5, 7000 + trial)
        lists = tuple(frozenset(rnd.sample([1, 2, 3, 4], rnd.randint(1, 4)))
                      for _ in range(n))
        inst = StubbornInstance(g, lists)
        full = extend_to_full_separator(g, build_random_separator(g, 0.5, seed=trial))
        cov = separator_to_stubborn_covering(inst, square_cut_family(full))
        for sol in all_maximal_stubborn_solutions(inst):
            assert any(stubborn_assignment_compatible(la, sol) for la in cov)


# ---------------------------------------------------------------- the transformer


def test_translation_table_rows():
    inst = ccp_of_graph(complete_graph(3))
    provider = separator_provider(5)
    cov = stubborn_to_3ccp_covering(inst, 0, provider)
    assert cov  # the slice construction produced assignments
    for la in cov:
        assert la[0] == frozenset({0})
        for lst in la:
            assert 1 <= len(lst) <= 2


def test_transformer_covers_slice_exhaustively():
    rnd = random.Random(73)
    done = 0
    for trial in range(20):
        n = rnd.randint(3, 6)
        inst = random_ccp_instance(n, 8000 + trial)
        x = 0
        try:
            for target in (0, 1, 2):
                cov = stubborn_to_3ccp_covering(inst, x, separator_provider(trial),
                                                target=target)
                sols = [s for s in all_3ccp_solutions(inst) if s[x] == target]
                missed = covering_covers(cov, sols)
                assert not missed, (trial, target, missed[:2])
            done += 1
        except NotReallyThreeColorable:
            continue
        if done >= 8:
            break
    assert done >= 8


def test_transformer_blocked_slice_is_empty():
    blocked = build_c5_blocked_instance()
    cov = stubborn_to_3ccp_covering(blocked, 0, separator_provider(1), target=0)
    assert cov == []


def test_transformer_rejects_malformed_sub_covering():
    inst = ccp_of_graph(cycle_graph(4))

    def junk_provider(sub_inst):
        return [tuple(frozenset({1}) for _ in range(sub_inst.graph.n))]

    if (4 - 1) > 0:
        with pytest.raises(MalformedCovering):
            stubborn_to_3ccp_covering(inst, 0, junk_provider)


# ---------------------------------------------------------------- covering -> separator


def test_ccp_covering_to_separator_small():
    for g in (empty_graph(3), complete_graph(3), cycle_graph(5)):
        tree = build_quasipoly_covering(ccp_of_graph(g))
        fam = ccp_covering_to_separator(g, tree.assignments)
        assert verify_cs_separator(g, fam).ok


def test_ccp_covering_to_separator_random_end_to_end():
    rnd = random.Random(79)
    for trial in range(8):
        n = rnd.randint(1, 7)
        g = gen_gnp(n, rnd.choice([0.3, 0.5, 0.7]), 9000 + trial)
        tree = build_quasipoly_covering(ccp_of_graph(g))
        fam = ccp_covering_to_separator(g, tree.assignments)
        assert verify_cs_separator(g, fam).ok
        assert len(fam) <= len(tree.assignments) * (2 * n + 2)


def test_ccp_covering_rejects_full_list():
    g = complete_graph(2)
    with pytest.raises(MalformedCovering):
        ccp_covering_to_separator(g, [(frozenset({0, 1, 2}), frozenset({0, 1}))])


def test_full_loop_small():
    rnd = random.Random(83)
    for trial in range(4):
        n = rnd.randint(3, 6)
        g = gen_gnp(n, 0.5, 9500 + trial)
        lists = tuple(frozenset(rnd.sample([1, 2, 3, 4], rnd.randint(2, 4)))
                      for _ in range(n))
        inst = StubbornInstance(g, lists)
        full = extend_to_full_separator(g, build_random_separator(g, 0.5, seed=trial))
        f2 = square_cut_family(full)
        cov3 = separator_to_stubborn_covering(inst, f2)
        for sol in all_maximal_stubborn_solutions(inst):
            assert any(stubborn_assignment_compatible(la, sol) for la in cov3)
        enc = ccp_of_graph(g)
        cov4 = full_3ccp_covering_via_stubborn(enc, 0, separator_provider(trial))
        assert not covering_covers(cov4, all_3ccp_solutions(enc))
        fam5 = ccp_covering_to_separator(g, cov4)
        assert verify_cs_separator(g, fam5).ok
