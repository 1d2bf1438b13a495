"""Catalogues against known counts; seeded generators."""

import itertools
import random

from exlab.catalog import (
    CONNECTED_BIPARTITE_COUNTS,
    TREE_COUNTS,
    all_trees,
    connected_bipartite_graphs,
    random_graph_gnm,
    random_k4free_triple_system,
    random_tree,
)
from exlab.graphs import bipartition, contains_clique, degeneracy_ordering


class TestTrees:
    def test_counts_to_7(self):
        trees = all_trees(7)
        by_n = {}
        for t in trees:
            by_n[t.n] = by_n.get(t.n, 0) + 1
        for n in range(1, 8):
            assert by_n[n] == TREE_COUNTS[n], n

    def test_all_connected_acyclic(self):
        for t in all_trees(6):
            assert t.m == t.n - 1 and t.is_connected()


class TestBipartiteCatalogue:
    def test_counts_to_9(self):
        graphs = connected_bipartite_graphs(9)
        by_n = {}
        for g in graphs:
            by_n[g.n] = by_n.get(g.n, 0) + 1
        for n in range(1, 10):
            assert by_n[n] == CONNECTED_BIPARTITE_COUNTS[n], n

    def test_all_connected_bipartite(self):
        for g in connected_bipartite_graphs(7):
            assert g.is_connected()
            assert bipartition(g) is not None

    def test_pairwise_nonisomorphic_n6(self):
        import itertools as it

        graphs = [g for g in connected_bipartite_graphs(6) if g.n == 6]
        keys = set()
        for g in graphs:
            canon = min(
                tuple(sorted((min(p[u], p[v]), max(p[u], p[v])) for u, v in g.edges()))
                for p in it.permutations(range(6))
            )
            assert canon not in keys
            keys.add(canon)


class TestGenerators:
    def test_random_tree_is_tree(self):
        rng = random.Random(5)
        for _ in range(30):
            n = rng.randrange(1, 40)
            t = random_tree(n, rng)
            assert t.m == max(n - 1, 0) and t.is_connected()

    def test_gnm_exact_edges(self):
        rng = random.Random(6)
        g = random_graph_gnm(12, 17, rng)
        assert g.m == 17

    def test_k4free_system(self):
        rng = random.Random(7)
        h = random_k4free_triple_system(18, 0.3, rng)
        assert contains_clique(h, 4) is None

    def test_determinism(self):
        a = random_tree(20, random.Random("x"))
        b = random_tree(20, random.Random("x"))
        assert sorted(a.edges()) == sorted(b.edges())
