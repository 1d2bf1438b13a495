"""Graph and hypergraph substrate: types, degeneracy, small exhaustive oracles.

Vertices are dense 0-based integers internally; the text formats (which are
1-based, human convention) convert at the boundary.  Adjacency is kept as one
Python int bitmask per vertex -- set algebra on masks is what every hot check
here reduces to.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

from .errors import CapacityError, InputError
from ._kernels import max_star_forest_kernel

MAX_BRUTEFORCE_VERTICES = 16  # 2^n subset scan; fail loudly beyond this


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1.

    ``adj[v]`` is a bitmask of the neighbors of ``v``.  Instances are
    immutable values; construct through :meth:`from_edges` or the factory
    helpers below.
    """

    n: int
    adj: tuple[int, ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 0:
            raise InputError("vertex count must be nonnegative")
        masks = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return cls(n, tuple(masks))

    @property
    def m(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            rest = self.adj[u] >> (u + 1)
            while rest:
                low = rest & -rest
                yield (u, u + 1 + low.bit_length() - 1)
                rest ^= low

    def neighbors(self, v: int) -> Iterator[int]:
        return iter_bits(self.adj[v])

    def complement(self) -> "Graph":
        full = (1 << self.n) - 1
        return Graph(self.n, tuple(full & ~a & ~(1 << v) for v, a in enumerate(self.adj)))

    def subgraph(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph, relabeled to 0..len(vertices)-1 in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        edges = [
            (index[u], index[v])
            for u in vertices
            for v in iter_bits(self.adj[u])
            if v in index and u < v
        ]
        return Graph.from_edges(len(vertices), edges)

    def relabel(self, mapping: Sequence[int], n: int) -> "Graph":
        """Image of this graph under vertex map i -> mapping[i] inside [0..n)."""
        return Graph.from_edges(n, [(mapping[u], mapping[v]) for u, v in self.edges()])

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= self.adj[v]
            frontier = nxt & ~seen
            seen |= frontier
        return seen == (1 << self.n) - 1


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InputError("cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with the center at vertex 0."""
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


@dataclass(frozen=True)
class UniformHypergraph:
    """k-uniform hypergraph: edges are sorted k-tuples of distinct vertices."""

    n: int
    k: int
    edges: frozenset[tuple[int, ...]]

    @classmethod
    def from_edges(cls, n: int, k: int, edges: Iterable[Sequence[int]]) -> "UniformHypergraph":
        if k < 1:
            raise InputError("uniformity must be >= 1")
        norm = set()
        for e in edges:
            t = tuple(sorted(e))
            if len(t) != k or len(set(t)) != k:
                raise InputError(f"edge {tuple(e)} is not a {k}-set")
            if not all(0 <= v < n for v in t):
                raise InputError(f"edge {t} out of range for n={n}")
            norm.add(t)
        return cls(n, k, frozenset(norm))

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, vertices: Sequence[int]) -> bool:
        return tuple(sorted(vertices)) in self.edges


def graph_as_hypergraph(g: Graph) -> UniformHypergraph:
    return UniformHypergraph.from_edges(g.n, 2, list(g.edges()))


@dataclass(frozen=True)
class VertexOrdering:
    """A vertex order with, per position, the count of earlier neighbors."""

    order: tuple[int, ...]
    back_degree: tuple[int, ...]


def degeneracy_ordering(g: Graph) -> tuple[int, VertexOrdering]:
    """Degeneracy of ``g`` with a certifying order, by min-degree peeling.

    Peels a minimum-degree vertex (lowest id on ties) repeatedly; the reverse
    peel order, read forward, has back-degree at most the degeneracy at every
    position, and the maximum back-degree over the peel itself is exactly the
    degeneracy.  Empty graph gives 0.
    """
    n = g.n
    if n == 0:
        return 0, VertexOrdering((), ())
    import heapq

    deg = [g.degree(v) for v in range(n)]
    heap = [(deg[v], v) for v in range(n)]
    heapq.heapify(heap)
    alive = (1 << n) - 1
    peel: list[int] = []
    d = 0
    while heap:
        dv, best = heapq.heappop(heap)
        if not (alive >> best) & 1 or dv != deg[best]:
            continue  # stale entry
        d = max(d, dv)
        peel.append(best)
        alive &= ~(1 << best)
        for u in iter_bits(g.adj[best] & alive):
            deg[u] -= 1
            heapq.heappush(heap, (deg[u], u))
    order = tuple(reversed(peel))
    placed = 0
    back = []
    for v in order:
        back.append((g.adj[v] & placed).bit_count())
        placed |= 1 << v
    return d, VertexOrdering(order, tuple(back))


def replay_peel_is_valid(g: Graph, order: Sequence[int], d: int) -> bool:
    """Check the peeling certificate: removing order back-to-front, every
    removed vertex sees at most d still-alive neighbors."""
    alive = (1 << g.n) - 1
    for v in reversed(order):
        alive &= ~(1 << v)
        if (g.adj[v] & alive).bit_count() > d:
            return False
    return True


def is_induced_star_forest(g: Graph, s: Iterable[int]) -> bool:
    """True iff every component induced on ``s`` is a star (isolated vertices
    and single edges included).

    Equivalent local criterion: no induced edge has both endpoints of induced
    degree >= 2.  (A component whose max-degree vertex c has deg >= 2 is a star
    iff all neighbors of c are leaves.)
    """
    mask = 0
    for v in s:
        if not 0 <= v < g.n:
            raise InputError(f"vertex {v} out of range")
        mask |= 1 << v
    return _star_forest_mask(g.adj, mask)


def _star_forest_mask(adj: Sequence[int], mask: int) -> bool:
    deg = {}
    for v in iter_bits(mask):
        deg[v] = (adj[v] & mask).bit_count()
    for v, dv in deg.items():
        if dv >= 2:
            for u in iter_bits(adj[v] & mask):
                if deg[u] >= 2:
                    return False
    return True


def max_induced_star_forest_bruteforce(g: Graph) -> int:
    """Exact maximum size of an induced star forest, by scanning all subsets.

    Hard-capped at 16 vertices; this is the oracle the constructive routine is
    measured against, never a production path.
    """
    if g.n > MAX_BRUTEFORCE_VERTICES:
        raise CapacityError(f"brute force capped at n={MAX_BRUTEFORCE_VERTICES}, got {g.n}")
    return max_star_forest_kernel(g.n, g.adj)


def contains_clique(h: UniformHypergraph, s: int) -> Optional[tuple[int, ...]]:
    """An s-set whose every k-subset is an edge of ``h``, or None.

    Exhaustive backtracking over vertices in ascending order; a candidate v is
    appended only if all new k-subsets through v are edges, which prunes most
    of the C(n,s) space on sparse inputs.
    """
    if s < h.k:
        raise InputError(f"clique size {s} below uniformity {h.k}")
    if s > h.n:
        return None

    edges = h.edges
    k = h.k

    def extend(chosen: list[int], start: int) -> Optional[tuple[int, ...]]:
        if len(chosen) == s:
            return tuple(chosen)
        # still need s - len(chosen) vertices from [start, n)
        for v in range(start, h.n - (s - len(chosen)) + 1):
            if len(chosen) >= k - 1:
                ok = all(
                    tuple(sorted(sub + (v,))) in edges
                    for sub in itertools.combinations(chosen, k - 1)
                )
                if not ok:
                    continue
            got = extend(chosen + [v], v + 1)
            if got is not None:
                return got
        return None

    return extend([], 0)


def bipartition(g: Graph) -> Optional[tuple[int, int]]:
    """2-coloring masks (side0, side1) by BFS per component, or None if odd cycle.

    Vertex 0's side (in its component) is side0; unvisited components start
    their lowest vertex on side0 as well.
    """
    color = [-1] * g.n
    for root in range(g.n):
        if color[root] != -1:
            continue
        color[root] = 0
        queue = [root]
        while queue:
            v = queue.pop()
            for u in iter_bits(g.adj[v]):
                if color[u] == -1:
                    color[u] = color[v] ^ 1
                    queue.append(u)
                elif color[u] == color[v]:
                    return None
    side0 = side1 = 0
    for v, c in enumerate(color):
        if c == 0:
            side0 |= 1 << v
        else:
            side1 |= 1 << v
    return side0, side1


# --- text formats ----------------------------------------------------------
#
# Graph:       line 1 `p <n> <m>`, then m lines `<u> <v>`, 1-based.
# Hypergraph:  line 1 `h <k> <n> <m>`, then m lines of k vertex ids, 1-based.
# `#` starts a comment line; blank lines are ignored.


def _data_lines(text: str) -> list[list[str]]:
    out = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        out.append(line.split())
    return out


def parse_graph(text: str) -> Graph:
    lines = _data_lines(text)
    if not lines or lines[0][0] != "p" or len(lines[0]) != 3:
        raise InputError("graph file must start with `p <n> <m>`")
    n, m = int(lines[0][1]), int(lines[0][2])
    if len(lines) - 1 != m:
        raise InputError(f"expected {m} edge lines, found {len(lines) - 1}")
    edges = []
    for tok in lines[1:]:
        if len(tok) != 2:
            raise InputError(f"bad edge line: {' '.join(tok)}")
        u, v = int(tok[0]) - 1, int(tok[1]) - 1
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def format_graph(g: Graph) -> str:
    lines = [f"p {g.n} {g.m}"]
    lines += [f"{u + 1} {v + 1}" for u, v in sorted(g.edges())]
    return "\n".join(lines) + "\n"


def parse_hypergraph(text: str) -> UniformHypergraph:
    lines = _data_lines(text)
    if not lines or lines[0][0] != "h" or len(lines[0]) != 4:
        raise InputError("hypergraph file must start with `h <k> <n> <m>`")
    k, n, m = int(lines[0][1]), int(lines[0][2]), int(lines[0][3])
    if len(lines) - 1 != m:
        raise InputError(f"expected {m} edge lines, found {len(lines) - 1}")
    edges = []
    for tok in lines[1:]:
        if len(tok) != k:
            raise InputError(f"bad {k}-edge line: {' '.join(tok)}")
        edges.append(tuple(int(t) - 1 for t in tok))
    return UniformHypergraph.from_edges(n, k, edges)


def format_hypergraph(h: UniformHypergraph) -> str:
    lines = [f"h {h.k} {h.n} {h.m}"]
    lines += [" ".join(str(v + 1) for v in e) for e in sorted(h.edges)]
    return "\n".join(lines) + "\n"
