import itertools
import random

import pytest

from csslab.graphs import (BicliquePair, Graph, bits, complement,
                           complete_graph, comparability_from_random_poset,
                           contains_induced, cycle_graph, empty_graph,
                           find_biclique_pair, from_edges, gen_gnp,
                           greedy_coloring, induced, is_clique,
                           is_proper_coloring, is_split_graph, is_stable,
                           mask_of, maximal_cliques, maximal_stables,
                           net_graph, path_graph, set_of, split_partitions)

# ---------------------------------------------------------------- oracles


def brute_maximal_cliques(g):
    subsets = [frozenset(c) for r in range(g.n + 1)
               for c in itertools.combinations(range(g.n), r)]
    cliques = [s for s in subsets if s and is_clique(g, s)]
    out = [c for c in cliques if not any(c < d for d in cliques)]
    return sorted(out, key=lambda s: tuple(sorted(s)))


def brute_split_partitions(g):
    out = []
    for r in range(g.n + 1):
        for combo in itertools.combinations(range(g.n), r):
            u = frozenset(combo)
            w = frozenset(range(g.n)) - u
            if is_clique(g, u) and is_stable(g, w):
                out.append((u, w))
    return sorted(out, key=lambda p: tuple(sorted(p[0])))


def brute_contains_induced(g, pattern):
    k = pattern.n
    for combo in itertools.permutations(range(g.n), k):
        if all(pattern.has_edge(i, j) == g.has_edge(combo[i], combo[j])
               for i in range(k) for j in range(i + 1, k)):
            return True
    return False


def brute_biclique_pair_exists(g, size, mode):
    verts = range(g.n)
    for a in itertools.combinations(verts, size):
        rest = [v for v in verts if v not in a]
        for b in itertools.combinations(rest, size):
            pairs = [(x, y) for x in a for y in b]
            if mode == "adjacent" and all(g.has_edge(x, y) for x, y in pairs):
                return True
            if mode == "nonadjacent" and not any(g.has_edge(x, y) for x, y in pairs):
                return True
    return False


# ---------------------------------------------------------------- generators


def test_gnp_extremes():
    assert gen_gnp(5, 0.0, 123).edge_count() == 0
    assert gen_gnp(5, 1.0, 123) == complete_graph(5)


def test_gnp_pinned_seed_concentration():
    g = gen_gnp(30, 0.5, 42)
    trials = 30 * 29 // 2
    mean, sigma = trials * 0.5, (trials * 0.25) ** 0.5
    assert mean - 4 * sigma <= g.edge_count() <= mean + 4 * sigma
    assert g.edge_count() == 209  # regression lock for the pinned seed


def test_gnp_deterministic():
    assert gen_gnp(12, 0.3, 7) == gen_gnp(12, 0.3, 7)
    assert gen_gnp(12, 0.3, 7) != gen_gnp(12, 0.3, 8)


def test_gnp_rejects_bad_p():
    with pytest.raises(ValueError):
        gen_gnp(5, 1.5, 0)


def test_comparability_generator_is_net_free():
    for seed in range(5):
        g = comparability_from_random_poset(14, seed)
        assert contains_induced(g, net_graph()) is None


# ---------------------------------------------------------------- basics


def test_complement_examples():
    assert complement(complete_graph(4)) == empty_graph(4)
    assert complement(empty_graph(4)) == complete_graph(4)
    g = gen_gnp(9, 0.4, 5)
    assert complement(complement(g)) == g


def test_p4_self_complementary():
    p4 = path_graph(4)
    c = complement(p4)
    # complement of 0-1-2-3 is the path 1-3, 3-0, 0-2 i.e. order (1, 3, 0, 2)
    assert sorted(c.edges()) == [(0, 2), (0, 3), (1, 3)]
    assert contains_induced(c, p4) is not None


def test_induced_examples():
    k3, ids = induced(complete_graph(5), {0, 1, 2})
    assert k3 == complete_graph(3) and ids == (0, 1, 2)
    g0, _ = induced(cycle_graph(5), frozenset())
    assert g0.n == 0
    g, ids = induced(cycle_graph(5), {0, 1, 3})
    assert ids == (0, 1, 3)
    assert sorted(g.edges()) == [(0, 1)]  # edge 0-1 survives, vertex 3 isolated
    with pytest.raises(ValueError):
        induced(complete_graph(3), {5})


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph(2, (0b10, 0b00))  # asymmetric
    with pytest.raises(ValueError):
        from_edges(3, [(0, 0)])
    with pytest.raises(ValueError):
        from_edges(3, [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        from_edges(2, [(0, 5)])


# ---------------------------------------------------------------- cliques


def test_maximal_cliques_examples():
    assert maximal_cliques(complete_graph(4)) == [frozenset({0, 1, 2, 3})]
    assert maximal_cliques(empty_graph(3)) == [frozenset({0}), frozenset({1}),
                                               frozenset({2})]
    c5 = maximal_cliques(cycle_graph(5))
    assert c5 == sorted((frozenset(e) for e in cycle_graph(5).edges()),
                        key=lambda s: tuple(sorted(s)))


def test_maximal_stables_examples():
    assert maximal_stables(complete_graph(4)) == [frozenset({v}) for v in range(4)]
    assert maximal_stables(empty_graph(3)) == [frozenset({0, 1, 2})]
    assert len(maximal_stables(cycle_graph(5))) == 5


def test_maximal_cliques_against_bruteforce():
    rnd = random.Random(1)
    for trial in range(40):
        n = rnd.randint(1, 10)
        g = gen_gnp(n, rnd.choice([0.2, 0.5, 0.8]), trial)
        assert maximal_cliques(g) == brute_maximal_cliques(g)
        assert maximal_stables(g) == brute_maximal_cliques(complement(g))


# ---------------------------------------------------------------- split


def test_split_partitions_examples():
    single = split_partitions(complete_graph(1))
    assert [(sorted(sp.clique_part), sorted(sp.stable_part)) for sp in single] == \
        [([], [0]), ([0], [])]
    assert split_partitions(cycle_graph(5)) == []
    p3 = split_partitions(path_graph(3))
    assert [(sorted(sp.clique_part), sorted(sp.stable_part)) for sp in p3] == \
        [([0, 1], [2]), ([1], [0, 2]), ([1, 2], [0])]


def test_split_partitions_against_bruteforce():
    rnd = random.Random(3)
    for trial in range(40):
        n = rnd.randint(0, 8)
        g = gen_gnp(n, rnd.random(), 100 + trial)
        got = [(sp.clique_part, sp.stable_part) for sp in split_partitions(g)]
        assert got == brute_split_partitions(g)
        assert bool(got) == is_split_graph(g)


def test_split_partition_count_linear_bound():
    # working constant for the cited linear count: 2n + 2
    rnd = random.Random(9)
    seen_split = 0
    for trial in range(120):
        n = rnd.randint(1, 9)
        g = gen_gnp(n, rnd.random(), 500 + trial)
        parts = split_partitions(g)
        if parts:
            seen_split += 1
            assert len(parts) <= 2 * n + 2
        for sp in parts:
            assert is_clique(g, sp.clique_part)
            assert is_stable(g, sp.stable_part)
            assert sp.clique_part | sp.stable_part == frozenset(range(n))
            assert not sp.clique_part & sp.stable_part
    assert seen_split > 10


# ---------------------------------------------------------------- patterns


def test_contains_induced_examples():
    hit = contains_induced(cycle_graph(5), path_graph(4))
    assert hit is not None
    p4 = path_graph(4)
    g = cycle_graph(5)
    for i in range(4):
        for j in range(i + 1, 4):
            assert p4.has_edge(i, j) == g.has_edge(hit[i], hit[j])
    assert contains_induced(complete_graph(4), empty_graph(2)) is None
    net_hit = contains_induced(net_graph(), complete_graph(3))
    assert net_hit is not None and set(net_hit) == {0, 1, 2}


def test_contains_induced_against_bruteforce():
    rnd = random.Random(5)
    patterns = [path_graph(3), path_graph(4), cycle_graph(4), cycle_graph(5),
                complete_graph(3), empty_graph(3)]
    for trial in range(30):
        n = rnd.randint(3, 9)
        g = gen_gnp(n, rnd.choice([0.3, 0.5, 0.7]), 900 + trial)
        pat = patterns[trial % len(patterns)]
        got = contains_induced(g, pat)
        assert (got is not None) == brute_contains_induced(g, pat)
        if got is not None:
            assert len(set(got)) == pat.n
            for i in range(pat.n):
                for j in range(i + 1, pat.n):
                    assert pat.has_edge(i, j) == g.has_edge(got[i], got[j])


# ---------------------------------------------------------------- pairs


def test_find_biclique_pair_examples():
    hit = find_biclique_pair(complete_graph(6), 3)
    assert hit is not None and hit.mode == "adjacent"
    assert len(hit.a) >= 3 and len(hit.b) >= 3 and not hit.a & hit.b
    hit = find_biclique_pair(empty_graph(6), 3)
    assert hit is not None and hit.mode == "nonadjacent"
    assert find_biclique_pair(cycle_graph(5), 2) is None
    assert not brute_biclique_pair_exists(cycle_graph(5), 2, "adjacent")
    assert not brute_biclique_pair_exists(cycle_graph(5), 2, "nonadjacent")
    with pytest.raises(ValueError):
        find_biclique_pair(cycle_graph(5), 0)


def test_find_biclique_pair_against_bruteforce():
    rnd = random.Random(11)
    for trial in range(30):
        n = rnd.randint(2, 8)
        size = rnd.randint(1, max(1, n // 2))
        g = gen_gnp(n, rnd.random(), 1300 + trial)
        got = find_biclique_pair(g, size)
        exists = brute_biclique_pair_exists(g, size, "adjacent") or \
            brute_biclique_pair_exists(g, size, "nonadjacent")
        assert (got is not None) == exists
        if got is not None:
            assert got.exact
            assert len(got.a) >= size and len(got.b) >= size
            assert not got.a & got.b
            for x in got.a:
                for y in got.b:
                    assert g.has_edge(x, y) == (got.mode == "adjacent")


def test_find_biclique_pair_heuristic_flagged():
    g = empty_graph(30)
    hit = find_biclique_pair(g, 5)
    assert hit is not None and not hit.exact and hit.mode == "nonadjacent"


def test_greedy_coloring_proper():
    for seed in range(5):
        g = gen_gnp(12, 0.5, seed)
        assert is_proper_coloring(g, greedy_coloring(g))
