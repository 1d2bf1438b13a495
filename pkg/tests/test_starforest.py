"""The star-forest extraction and its trace audit."""

import random
from fractions import Fraction

import pytest

from exlab.catalog import connected_bipartite_graphs
from exlab.errors import InputError
from exlab.graphs import (
    Graph,
    cycle_graph,
    empty_graph,
    is_induced_star_forest,
    max_induced_star_forest_bruteforce,
    star_graph,
)
from exlab.starforest import ceil_frac, check_trace, large_star_forest, star_forest_delta


class TestExamples:
    def test_star_returns_leaves(self):
        out, trace = large_star_forest(star_graph(5), 2)
        assert sorted(out) == [1, 2, 3, 4, 5]
        assert trace.chosen_round is None  # Y-side already big enough

    def test_c4_three_vertices(self):
        g = cycle_graph(4)
        out, trace = large_star_forest(g, 2)
        assert len(out) == 3 == max_induced_star_forest_bruteforce(g)
        assert is_induced_star_forest(g, out)
        ok, msg = check_trace(g, trace)
        assert ok, msg

    def test_empty_graph(self):
        out, _ = large_star_forest(empty_graph(6), 1)
        assert len(out) == 6

    def test_delta_values(self):
        assert star_forest_delta(1) == Fraction(1, 2**28)
        assert star_forest_delta(2) == Fraction(1, (2**7 * 4) ** 8)

    def test_non_bipartite_rejected(self):
        with pytest.raises(InputError):
            large_star_forest(cycle_graph(5), 3)

    def test_degree_overflow_rejected(self):
        with pytest.raises(InputError):
            large_star_forest(cycle_graph(4), 1)  # avg degree 2 > 1

    def test_d_zero_rejected(self):
        with pytest.raises(InputError):
            large_star_forest(empty_graph(3), 0)


class TestGuarantee:
    def test_catalogue_to_8(self):
        for g in connected_bipartite_graphs(8):
            d = max(1, -(-2 * g.m // g.n))
            out, trace = large_star_forest(g, d)
            delta = star_forest_delta(d)
            target = ceil_frac((Fraction(1, 2) + delta) * g.n)
            assert is_induced_star_forest(g, out)
            assert len(out) >= target
            assert len(out) <= max_induced_star_forest_bruteforce(g)
            ok, msg = check_trace(g, trace)
            assert ok, (g.n, g.m, msg)

    def test_forests_allowed(self):
        g = Graph.from_edges(6, [(0, 1), (2, 3)])
        out, _ = large_star_forest(g, 1)
        assert len(out) >= ceil_frac((Fraction(1, 2) + star_forest_delta(1)) * 6)

    def test_trace_growth_chain(self):
        # a graph dense enough to force at least one recorded round
        rng = random.Random(1)
        edges = [(u, v + 7) for u in range(7) for v in range(7) if rng.random() < 0.5]
        g = Graph.from_edges(14, edges)
        d = max(1, -(-2 * g.m // g.n))
        out, trace = large_star_forest(g, d)
        ok, msg = check_trace(g, trace)
        assert ok, msg
        if trace.rounds:
            assert trace.rounds[-1].e_i * 8 <= g.n

    def test_centers_disjoint_neighborhoods(self):
        g = cycle_graph(8)
        out, trace = large_star_forest(g, 2)
        frozen = trace.rounds[-2].y_mask if len(trace.rounds) >= 2 else 0
        for i, c in enumerate(trace.centers):
            assert g.degree(c) <= 16
            for c2 in trace.centers[i + 1 :]:
                assert not (g.adj[c] & g.adj[c2] & ~frozen)
