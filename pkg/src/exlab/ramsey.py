"""Exhaustive small-case Ramsey numbers, saturation decisions, and the two
edge-count bounds as checkable formulas.

Desk-scale honesty: `ramsey_number` returns Unknown(cap) when the answer
lies beyond the configured board cap -- that is a first-class result, not an
error.  A genuine resource blowup inside the search raises CapacityError
instead.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Union

from .errors import CapacityError, InputError
from .graphs import Graph, UniformHypergraph, bipartition, graph_as_hypergraph

DEFAULT_NODE_LIMIT = 50_000_000


@dataclass(frozen=True)
class Unknown:
    """The number exceeds the search cap; carries the cap it beat."""

    cap: int

    def __repr__(self) -> str:
        return f"unknown({self.cap})"


@dataclass(frozen=True)
class RamseyQuery:
    target: Union[Graph, UniformHypergraph]
    colors: int
    cap: int

    def __post_init__(self):
        if self.colors < 1:
            raise InputError("need at least one color")
        n = self.target.n
        if self.cap < n:
            raise InputError(f"cap {self.cap} below target order {n}")


def hypergraph_ramsey_pigeonhole(ell: int, q: int) -> int:
    """r_1(ell; q) = q(ell-1) + 1: the 1-uniform Ramsey number is exactly the
    pigeonhole number (color N singletons, force ell of one color)."""
    if ell < 1 or q < 1:
        raise InputError("need ell >= 1 and q >= 1")
    return q * (ell - 1) + 1


def _as_hypergraph(target: Union[Graph, UniformHypergraph]) -> UniformHypergraph:
    if isinstance(target, Graph):
        return graph_as_hypergraph(target)
    return target


class _Budget:
    __slots__ = ("left",)

    def __init__(self, limit: int):
        self.left = limit

    def spend(self, amount: int = 1) -> None:
        self.left -= amount
        if self.left < 0:
            raise CapacityError("ramsey search exceeded its node budget")


def _target_core(t: UniformHypergraph) -> tuple[list[tuple[int, ...]], list[int], int]:
    """Edges, the non-isolated vertices relabeled 0.., and the total order."""
    used = sorted({v for e in t.edges for v in e})
    index = {v: i for i, v in enumerate(used)}
    edges = sorted(tuple(index[v] for v in e) for e in t.edges)
    return edges, used, t.n


def _embeds_using(
    tedges: list[tuple[int, ...]],
    tn: int,
    host_edges: set[tuple[int, ...]],
    anchor: tuple[int, ...],
    budget: _Budget,
) -> bool:
    """Does the target (edge list on vertices 0..tn-1) embed into the host
    color class using the anchor edge?  Backtracking over partial injections."""
    k = len(anchor)
    host_vertices = sorted({v for e in host_edges for v in e})

    for te in tedges:
        for perm in itertools.permutations(anchor):
            mapping: dict[int, int] = {}
            ok = True
            for tv, hv in zip(te, perm):
                if mapping.get(tv, hv) != hv or hv in mapping.values():
                    ok = False
                    break
                mapping[tv] = hv
            if not ok:
                continue
            if _extend_embedding(tedges, tn, host_edges, host_vertices, mapping, budget):
                return True
    return False


def _extend_embedding(
    tedges: list[tuple[int, ...]],
    tn: int,
    host_edges: set[tuple[int, ...]],
    host_vertices: list[int],
    mapping: dict[int, int],
    budget: _Budget,
) -> bool:
    budget.spend()
    # check all fully-mapped target edges
    for te in tedges:
        if all(tv in mapping for tv in te):
            if tuple(sorted(mapping[tv] for tv in te)) not in host_edges:
                return False
    if len(mapping) == tn:
        return True
    # next unmapped vertex: prefer one with mapped co-edge vertices
    pending = [tv for tv in range(tn) if tv not in mapping]
    pending.sort(key=lambda tv: -sum(1 for te in tedges if tv in te and any(u in mapping for u in te)))
    tv = pending[0]
    used = set(mapping.values())
    for hv in host_vertices:
        if hv in used:
            continue
        mapping[tv] = hv
        if _extend_embedding(tedges, tn, host_edges, host_vertices, mapping, budget):
            return True
        del mapping[tv]
    return False


def _exists_avoiding_coloring(
    target: UniformHypergraph, q: int, n_board: int, budget: _Budget
) -> bool:
    """Is there a q-coloring of the complete k-uniform board with no
    monochromatic copy of the target?  DFS over board edges in lex order; the
    first edge is pinned to color 0 (color symmetry)."""
    tedges, used, tn_total = _target_core(target)
    if not tedges:
        # edgeless target: contained in every coloring once the board is big
        # enough, never otherwise
        return n_board < tn_total
    if n_board < tn_total:
        return True
    board = list(itertools.combinations(range(n_board), target.k))
    color_classes: list[set[tuple[int, ...]]] = [set() for _ in range(q)]
    # the embedding only needs the non-isolated core; the isolated target
    # vertices just need spare board room, which n_board >= tn_total gives
    core_n = len(used)

    def dfs(idx: int) -> bool:
        budget.spend()
        if idx == len(board):
            return True
        edge = board[idx]
        colors = (0,) if idx == 0 else range(q)
        for c in colors:
            color_classes[c].add(edge)
            hit = _embeds_using(tedges, core_n, color_classes[c], edge, budget)
            if not hit and dfs(idx + 1):
                color_classes[c].discard(edge)
                return True
            color_classes[c].discard(edge)
        return False

    return dfs(0)


def ramsey_number(
    query: RamseyQuery, node_limit: int = DEFAULT_NODE_LIMIT
) -> Union[int, Unknown]:
    """Least N <= cap such that every q-coloring of the complete board on N
    vertices contains a monochromatic target, by exhaustive search."""
    target = _as_hypergraph(query.target)
    budget = _Budget(node_limit)
    if target.n == 0:
        return 0
    if not target.edges:
        return target.n
    for n_board in range(target.n, query.cap + 1):
        if not _exists_avoiding_coloring(target, query.colors, n_board, budget):
            return n_board
    return Unknown(query.cap)


def is_ramsey_saturated(
    g: Graph, cap: int = 8, node_limit: int = DEFAULT_NODE_LIMIT
) -> Union[bool, Unknown]:
    """True iff r(G+e) > r(G) for every non-edge e; vacuously true for
    complete graphs; Unknown propagates from any sub-query."""
    n = g.n
    non_edges = [
        (u, v) for u in range(n) for v in range(u + 1, n) if not g.has_edge(u, v)
    ]
    if not non_edges:
        return True
    r0 = ramsey_number(RamseyQuery(g, 2, cap), node_limit)
    if isinstance(r0, Unknown):
        return r0
    for u, v in non_edges:
        extended = Graph.from_edges(n, list(g.edges()) + [(u, v)])
        re = ramsey_number(RamseyQuery(extended, 2, cap), node_limit)
        if isinstance(re, Unknown):
            return re
        assert re >= r0, "Ramsey monotonicity violated"
        if re == r0:
            return False
    return True


@dataclass(frozen=True)
class RamseyBounds:
    lower: float  # 2^(m/n - 1), probabilistic deletion-free bound
    upper: Optional[float]  # Delta 2^(Delta+5) n for bipartite targets
    expected_mono: float  # E[X] <= 2^(1-m) N^n at N = ceil(lower)
    at_n: int


def ramsey_bounds(g: Graph) -> RamseyBounds:
    """The two edge-count bounds as numbers: a 2^(m/n - 1) lower bound for
    any graph, and a Delta 2^(Delta+5) n upper bound when g is bipartite."""
    n, m = g.n, g.m
    if n == 0:
        return RamseyBounds(0.0, 0.0, 0.0, 0)
    lower = 2.0 ** (m / n - 1.0)
    upper: Optional[float] = None
    if bipartition(g) is not None:
        delta = max((g.degree(v) for v in range(n)), default=0)
        upper = delta * 2.0 ** (delta + 5) * n
    at_n = -(-int(lower * 2**20) // 2**20)  # ceil without float drift surprises
    expected = 2.0 ** (1 - m) * float(at_n) ** n
    return RamseyBounds(lower, upper, expected, at_n)
