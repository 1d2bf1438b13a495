"""Exhaustive small-graph catalogues and seeded random generators.

The catalogues are up to isomorphism: a connected bipartite graph determines
its bipartition up to swapping sides, so isomorphism classes are orbits of
sorted biadjacency-column multisets under row permutations (plus transpose
when the sides have equal size).  Enumeration is by column multiset with a
canonicity filter; class counts are cross-checked against the known OEIS
values in the tests.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache
from typing import Iterator, Sequence

from .graphs import Graph, UniformHypergraph, contains_clique

# number of connected bipartite graphs on n vertices (OEIS A005142)
CONNECTED_BIPARTITE_COUNTS = [1, 1, 1, 1, 3, 5, 17, 44, 182, 730, 4032]
# number of trees on n vertices (OEIS A000055)
TREE_COUNTS = [1, 1, 1, 1, 2, 3, 6, 11, 23, 47, 106]


@lru_cache(maxsize=8)
def _perm_tables(a: int) -> tuple[tuple[int, ...], ...]:
    """For every row permutation of [a], a lookup table mask -> permuted mask."""
    tables = []
    for perm in itertools.permutations(range(a)):
        table = [0] * (1 << a)
        for mask in range(1 << a):
            out = 0
            for bit in range(a):
                if (mask >> bit) & 1:
                    out |= 1 << perm[bit]
            table[mask] = out
        tables.append(tuple(table))
    return tuple(tables)


def _is_min_under_perms(a: int, cols: tuple[int, ...], reference: tuple[int, ...]) -> bool:
    """True iff no row permutation of `cols` sorts below `reference`."""
    for table in _perm_tables(a):
        if tuple(sorted(table[c] for c in cols)) < reference:
            return False
    return True


def _transpose(a: int, b: int, cols: Sequence[int]) -> tuple[int, ...]:
    rows = [0] * a
    for j, c in enumerate(cols):
        for bit in range(a):
            if (c >> bit) & 1:
                rows[bit] |= 1 << j
    return tuple(sorted(rows))


def _bip_connected(a: int, cols: Sequence[int]) -> bool:
    full = (1 << a) - 1
    if len(cols) == 0:
        return a <= 1
    reached_rows = cols[0]
    reached_cols = 1
    changed = True
    while changed:
        changed = False
        for j, c in enumerate(cols):
            if not (reached_cols >> j) & 1 and c & reached_rows:
                reached_cols |= 1 << j
                reached_rows |= c
                changed = True
    return reached_rows == full and reached_cols == (1 << len(cols)) - 1


def _cols_to_graph(a: int, b: int, cols: Sequence[int]) -> Graph:
    edges = []
    for j, c in enumerate(cols):
        for bit in range(a):
            if (c >> bit) & 1:
                edges.append((bit, a + j))
    return Graph.from_edges(a + b, edges)


@lru_cache(maxsize=4)
def connected_bipartite_graphs(max_n: int) -> tuple[Graph, ...]:
    """All connected bipartite graphs on 1..max_n vertices, one per
    isomorphism class (max_n <= 10 is the practical range)."""
    out: list[Graph] = [Graph.from_edges(1, [])]
    for n in range(2, max_n + 1):
        for a in range(1, n // 2 + 1):
            b = n - a
            nonzero = range(1, 1 << a)
            for cols in itertools.combinations_with_replacement(nonzero, b):
                if not _bip_connected(a, cols):
                    continue
                if not _is_min_under_perms(a, cols, cols):
                    continue
                if a == b and not _is_min_under_perms(a, _transpose(a, b, cols), cols):
                    continue
                out.append(_cols_to_graph(a, b, cols))
    return tuple(out)


@lru_cache(maxsize=4)
def all_trees(max_n: int) -> tuple[Graph, ...]:
    """All trees on 1..max_n vertices up to isomorphism, via Pruefer
    enumeration and canonical edge-set dedup (fine for max_n <= 8)."""
    out: list[Graph] = [Graph.from_edges(1, [])]
    if max_n >= 2:
        out.append(Graph.from_edges(2, [(0, 1)]))
    for n in range(3, max_n + 1):
        seen: set[tuple[tuple[int, int], ...]] = set()
        for seq in itertools.product(range(n), repeat=n - 2):
            edges = _pruefer_to_edges(n, list(seq))
            key = min(
                tuple(sorted((min(p[u], p[v]), max(p[u], p[v])) for u, v in edges))
                for p in itertools.permutations(range(n))
            )
            if key in seen:
                continue
            seen.add(key)
            out.append(Graph.from_edges(n, list(key)))
    return tuple(out)


def _pruefer_to_edges(n: int, seq: list[int]) -> list[tuple[int, int]]:
    import heapq

    deg = [1] * n
    for s in seq:
        deg[s] += 1
    leaves = [v for v in range(n) if deg[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for s in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, s))
        deg[s] -= 1
        if deg[s] == 1:
            heapq.heappush(leaves, s)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return edges


# --- seeded generators --------------------------------------------------------


def random_tree(n: int, rng: random.Random) -> Graph:
    """Uniform random labeled tree by Pruefer sequence."""
    if n <= 1:
        return Graph.from_edges(n, [])
    if n == 2:
        return Graph.from_edges(2, [(0, 1)])
    seq = [rng.randrange(n) for _ in range(n - 2)]
    return Graph.from_edges(n, _pruefer_to_edges(n, seq))


def random_graph_gnm(n: int, m: int, rng: random.Random) -> Graph:
    """Uniform random graph with exactly m edges (rejection sampling)."""
    if m > n * (n - 1) // 2:
        raise ValueError("too many edges")
    chosen: set[tuple[int, int]] = set()
    while len(chosen) < m:
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u != v:
            chosen.add((min(u, v), max(u, v)))
    return Graph.from_edges(n, sorted(chosen))


def random_k4free_triple_system(n: int, density: float, rng: random.Random) -> UniformHypergraph:
    """Random 3-uniform hypergraph with triples deleted until no K_4^(3) is
    left: repeatedly find a 4-set whose four triples are all present and drop
    one of them at random."""
    triples = [t for t in itertools.combinations(range(n), 3) if rng.random() < density]
    edge_set = set(triples)
    while True:
        h = UniformHypergraph.from_edges(n, 3, edge_set)
        witness = contains_clique(h, 4)
        if witness is None:
            return h
        sub = list(itertools.combinations(witness, 3))
        edge_set.discard(sub[rng.randrange(len(sub))])
