"""Core graph/hypergraph types, degeneracy, and the small exhaustive oracles."""

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from exlab.errors import CapacityError, InputError
from exlab.graphs import (
    Graph,
    UniformHypergraph,
    bipartition,
    complete_graph,
    contains_clique,
    cycle_graph,
    degeneracy_ordering,
    empty_graph,
    format_graph,
    format_hypergraph,
    is_induced_star_forest,
    max_induced_star_forest_bruteforce,
    parse_graph,
    parse_hypergraph,
    path_graph,
    replay_peel_is_valid,
    star_graph,
)


def random_graph(n, p, rng):
    edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < p]
    return Graph.from_edges(n, edges)


class TestGraphType:
    def test_no_self_loops(self):
        with pytest.raises(InputError):
            Graph.from_edges(3, [(1, 1)])

    def test_out_of_range(self):
        with pytest.raises(InputError):
            Graph.from_edges(3, [(0, 3)])

    def test_counts(self):
        g = cycle_graph(5)
        assert g.n == 5 and g.m == 5
        assert sorted(g.edges()) == [(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]

    def test_complement(self):
        g = path_graph(4)
        c = g.complement()
        assert g.m + c.m == 6
        assert not any(c.has_edge(u, v) for u, v in g.edges())

    def test_subgraph_relabels(self):
        g = cycle_graph(5)
        sub = g.subgraph([1, 2, 3])
        assert sorted(sub.edges()) == [(0, 1), (1, 2)]


class TestDegeneracy:
    def test_complete(self):
        assert degeneracy_ordering(complete_graph(4))[0] == 3

    def test_trees_are_one_degenerate(self):
        for g in (path_graph(5), star_graph(7), path_graph(2)):
            assert degeneracy_ordering(g)[0] == 1

    def test_c5_bruteforce(self):
        # brute force over all orderings: max back-degree minimized
        g = cycle_graph(5)
        best = min(
            max(
                sum(1 for u in perm[:i] if g.has_edge(u, v))
                for i, v in enumerate(perm)
            )
            for perm in itertools.permutations(range(5))
        )
        assert best == 2 == degeneracy_ordering(g)[0]

    def test_empty(self):
        assert degeneracy_ordering(empty_graph(0))[0] == 0
        assert degeneracy_ordering(empty_graph(4))[0] == 0

    def test_back_degree_field(self):
        g = cycle_graph(6)
        d, o = degeneracy_ordering(g)
        placed = set()
        for v, b in zip(o.order, o.back_degree):
            assert b == sum(1 for u in placed if g.has_edge(u, v))
            placed.add(v)
        assert max(o.back_degree) <= d

    def test_peel_replay(self):
        rng = random.Random(5)
        for _ in range(40):
            g = random_graph(rng.randrange(1, 12), rng.random(), rng)
            d, o = degeneracy_ordering(g)
            assert replay_peel_is_valid(g, o.order, d)
            assert not replay_peel_is_valid(g, o.order, d - 1) or d == 0

    @settings(max_examples=60, deadline=None)
    @given(st.data())
    def test_edge_addition_monotone(self, data):
        n = data.draw(st.integers(2, 9))
        edges = data.draw(
            st.sets(
                st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(
                    lambda e: e[0] < e[1]
                ),
                max_size=n * 2,
            )
        )
        g = Graph.from_edges(n, sorted(edges))
        non = [
            (u, v)
            for u in range(n)
            for v in range(u + 1, n)
            if not g.has_edge(u, v)
        ]
        if not non:
            return
        e = data.draw(st.sampled_from(non))
        g2 = Graph.from_edges(n, sorted(edges) + [e])
        assert degeneracy_ordering(g2)[0] >= degeneracy_ordering(g)[0]


class TestStarForest:
    def test_independent_set(self):
        g = cycle_graph(6)
        assert is_induced_star_forest(g, [0, 2, 4])

    def test_single_edge(self):
        assert is_induced_star_forest(path_graph(2), [0, 1])

    def test_p4_false(self):
        assert not is_induced_star_forest(path_graph(4), range(4))

    def test_star_true(self):
        assert is_induced_star_forest(star_graph(5), range(6))

    def test_triangle_false(self):
        assert not is_induced_star_forest(complete_graph(3), range(3))

    def test_out_of_range(self):
        with pytest.raises(InputError):
            is_induced_star_forest(path_graph(3), [0, 9])

    def test_bruteforce_examples(self):
        assert max_induced_star_forest_bruteforce(empty_graph(5)) == 5
        assert max_induced_star_forest_bruteforce(complete_graph(3)) == 2
        assert max_induced_star_forest_bruteforce(cycle_graph(4)) == 3

    def test_bruteforce_cap(self):
        with pytest.raises(CapacityError):
            max_induced_star_forest_bruteforce(empty_graph(17))

    def test_bruteforce_vs_subset_scan(self):
        rng = random.Random(11)
        for _ in range(25):
            g = random_graph(rng.randrange(1, 9), rng.random(), rng)
            want = max(
                (
                    len(sub)
                    for r in range(g.n + 1)
                    for sub in itertools.combinations(range(g.n), r)
                    if is_induced_star_forest(g, sub)
                ),
                default=0,
            )
            assert max_induced_star_forest_bruteforce(g) == want


class TestContainsClique:
    def test_complete_3uniform(self):
        h = UniformHypergraph.from_edges(
            5, 3, list(itertools.combinations(range(5), 3))
        )
        w = contains_clique(h, 4)
        assert w is not None and len(w) == 4

    def test_empty(self):
        h = UniformHypergraph.from_edges(6, 3, [])
        assert contains_clique(h, 3) is None

    def test_rainbow_9_no_k4(self):
        # all "rainbow" triples of a balanced 3-coloring: any 4 vertices
        # repeat a class, so that triple is missing
        parts = [(0, 1, 2), (3, 4, 5), (6, 7, 8)]
        edges = [(a, b, c) for a in parts[0] for b in parts[1] for c in parts[2]]
        h = UniformHypergraph.from_edges(9, 3, edges)
        assert contains_clique(h, 4) is None
        assert contains_clique(h, 3) is not None

    def test_s_above_n_absent(self):
        h = UniformHypergraph.from_edges(3, 2, [(0, 1)])
        assert contains_clique(h, 4) is None

    def test_s_below_k_rejected(self):
        h = UniformHypergraph.from_edges(4, 3, [(0, 1, 2)])
        with pytest.raises(InputError):
            contains_clique(h, 2)

    def test_agrees_with_naive(self):
        rng = random.Random(3)
        for _ in range(30):
            n = rng.randrange(4, 12)
            k = rng.randrange(2, 4)
            edges = [
                e for e in itertools.combinations(range(n), k) if rng.random() < 0.5
            ]
            h = UniformHypergraph.from_edges(n, k, edges)
            s = rng.randrange(k, min(n, k + 3) + 1)
            naive = any(
                all(h.has_edge(sub) for sub in itertools.combinations(cand, k))
                for cand in itertools.combinations(range(n), s)
            )
            assert (contains_clique(h, s) is not None) == naive


class TestBipartition:
    def test_even_cycle(self):
        sides = bipartition(cycle_graph(6))
        assert sides is not None
        s0, s1 = sides
        assert s0 | s1 == 63 and s0 & s1 == 0

    def test_odd_cycle(self):
        assert bipartition(cycle_graph(5)) is None

    def test_vertex_zero_side(self):
        sides = bipartition(path_graph(4))
        assert sides[0] & 1


class TestFormats:
    def test_graph_roundtrip(self):
        g = cycle_graph(5)
        assert sorted(parse_graph(format_graph(g)).edges()) == sorted(g.edges())

    def test_one_based_and_comments(self):
        g = parse_graph("# a comment\np 3 1\n1 3\n")
        assert g.has_edge(0, 2)

    def test_bad_header(self):
        with pytest.raises(InputError):
            parse_graph("q 3 1\n1 2\n")

    def test_wrong_edge_count(self):
        with pytest.raises(InputError):
            parse_graph("p 3 2\n1 2\n")

    def test_hypergraph_roundtrip(self):
        h = UniformHypergraph.from_edges(5, 3, [(0, 1, 2), (2, 3, 4)])
        assert parse_hypergraph(format_hypergraph(h)).edges == h.edges

    def test_hypergraph_dup_vertex(self):
        with pytest.raises(InputError):
            UniformHypergraph.from_edges(4, 3, [(0, 1, 1)])
