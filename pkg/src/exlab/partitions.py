"""Clique partitions of complete graphs and of complements of sparse graphs.

The constructions follow the projective-plane route: a Steiner system is a
clique partition of K_n, restricting a plane's lines to a point subset
partitions K_n into few small cliques, and sparse complements reduce to that
via a Turan split (general graphs) or a tree partition (forests).

Everything returned here is re-checked by `verify_partition` in the test and
acceptance suites; the constructions also carry their own bound assertions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .errors import CapacityError, InputError
from .graphs import Graph, iter_bits
from .planes import ProjectivePlane, build_plane, next_prime_at_least
from ._kernels import cover_check, restrict_lines

BRUTEFORCE_CP_CAP = 8
ALL_EDGES_MAX_K = 20  # below this, C(n,2) single edges already meet 200(n/k)^2


class CliquePartition:
    """Edge partition of a target graph into cliques.

    Parts are stored flattened (int32 data + offsets) because the acceptance
    sweeps materialize ~10^8 part entries; `parts` gives the tuple view.
    Parts of size < 2 are never stored (they cover nothing).
    """

    __slots__ = ("n", "_data", "_off", "meta")

    def __init__(self, n: int, parts: Iterable[Sequence[int]] = (), meta: Optional[dict] = None):
        data: list[int] = []
        off: list[int] = [0]
        for part in parts:
            if len(part) < 2:
                continue
            data.extend(part)
            off.append(len(data))
        self.n = n
        self._data = np.asarray(data, dtype=np.int32)
        self._off = np.asarray(off, dtype=np.int32)
        self.meta = meta or {}

    @classmethod
    def from_arrays(
        cls, n: int, data: np.ndarray, off: np.ndarray, meta: Optional[dict] = None
    ) -> "CliquePartition":
        obj = cls.__new__(cls)
        obj.n = n
        obj._data = np.ascontiguousarray(data, dtype=np.int32)
        obj._off = np.ascontiguousarray(off, dtype=np.int32)
        obj.meta = meta or {}
        return obj

    @property
    def num_parts(self) -> int:
        return len(self._off) - 1

    def iter_parts(self) -> Iterator[tuple[int, ...]]:
        data, off = self._data, self._off
        for p in range(len(off) - 1):
            yield tuple(int(v) for v in data[off[p] : off[p + 1]])

    @property
    def parts(self) -> list[tuple[int, ...]]:
        return list(self.iter_parts())

    def max_part_size(self) -> int:
        if self.num_parts == 0:
            return 0
        return int(np.diff(self._off).max())

    def to_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        return self._data, self._off

    def __repr__(self) -> str:  # pragma: no cover
        return f"CliquePartition(n={self.n}, parts={self.num_parts})"


def concat_partitions(n: int, pieces: Sequence[CliquePartition], meta=None) -> CliquePartition:
    datas = [p._data for p in pieces if p.num_parts]
    offs = [p._off for p in pieces if p.num_parts]
    if not datas:
        return CliquePartition(n, (), meta)
    data = np.concatenate(datas)
    shift = np.cumsum([0] + [len(d) for d in datas[:-1]])
    off = np.concatenate([[0]] + [o[1:] + s for o, s in zip(offs, shift)])
    return CliquePartition.from_arrays(n, data, off.astype(np.int32), meta)


def verify_partition(g: Graph, p: CliquePartition) -> bool:
    """True iff every part is a clique of g and every g-edge is covered once."""
    return verify_partition_detail(g, p)[0]


def verify_partition_detail(g: Graph, p: CliquePartition) -> tuple[bool, str]:
    if p.n != g.n:
        return False, f"partition is over n={p.n}, graph has n={g.n}"
    data, off = p.to_arrays()
    code, a, b, extra = cover_check(g.n, g.adj, data, off)
    if code == 0:
        return True, "ok"
    if code == 1:
        return False, f"pair ({a + 1},{b + 1}) in part {extra} is not an edge"
    if code == 2:
        return False, f"edge ({a + 1},{b + 1}) covered {extra} times"
    return False, f"vertex id {a + 1} out of range in part {extra}"


# --- partitioning K_n into cliques of order <= k ----------------------------


def partition_complete_bound(n: int, k: int) -> float:
    """The bound the construction promises: max(200(n/k)^2, 4n) for n > k."""
    if n <= k:
        return 1.0
    return max(200.0 * (n / k) ** 2, 4.0 * n)


@lru_cache(maxsize=64)
def _plane_lines_array(q: int) -> np.ndarray:
    plane = build_plane(q)
    return np.asarray(plane.lines, dtype=np.int32)


def _smallest_plane_order_for(n: int) -> int:
    q = 2
    while q * q + q + 1 < n:
        q = next_prime_at_least(q + 1)
    return q


def partition_complete(n: int, k: int) -> CliquePartition:
    """Partition K_n into at most max(200(n/k)^2, 4n) cliques of order <= k.

    Branches, in order:
      (a) n <= k: the single clique.
      (b) the smallest plane with q^2+q+1 >= n has line size q+1 <= k:
          restrict its lines to the first n points (count < 4n).
      (c) k <= 20: all C(n,2) edges (C(n,2) <= 200(n/k)^2 holds exactly here).
      (d) otherwise embed the Turan split T_{n,k} into k lines of a plane of
          order q = least prime >= n/k + k and recurse into the k parts.
    """
    if k < 2:
        raise InputError("clique order bound must be >= 2")
    if n <= k:
        if n >= 2:
            return CliquePartition(n, [tuple(range(n))])
        return CliquePartition(n, [])

    q_b = _smallest_plane_order_for(n)
    if q_b + 1 <= k:
        assert q_b * q_b + q_b + 1 < 4 * n, "Bertrand chain failed for plane restriction"
        lines = _plane_lines_array(q_b)
        npts = q_b * q_b + q_b + 1
        point_map = np.full(npts, -1, dtype=np.int32)
        point_map[:n] = np.arange(n, dtype=np.int32)
        data, off = restrict_lines(lines, point_map)
        return CliquePartition.from_arrays(n, data, off)

    if k <= ALL_EDGES_MAX_K:
        iu, jv = np.triu_indices(n, 1)
        data = np.empty(2 * len(iu), dtype=np.int32)
        data[0::2] = iu
        data[1::2] = jv
        off = np.arange(0, 2 * len(iu) + 1, 2, dtype=np.int32)
        return CliquePartition.from_arrays(n, data, off)

    return _partition_complete_turan(n, k)


def _partition_complete_turan(n: int, k: int) -> CliquePartition:
    # parts S_1..S_k of the Turan graph as consecutive vertex ranges
    base, rem = divmod(n, k)
    sizes = [base + 1] * rem + [base] * (k - rem)
    starts = [0]
    for s in sizes[:-1]:
        starts.append(starts[-1] + s)

    q = next_prime_at_least(k + -(-n // k))
    assert q * k <= 10 * n, f"prime overshoot: q={q} for n={n}, k={k}"
    plane = build_plane(q)
    npts = plane.num_points
    lines = plane.lines
    chosen = list(range(k))  # first k lines, canonical

    # intersection points of the chosen lines are forbidden embedding targets
    masks = []
    for li in chosen:
        m = 0
        for pt in lines[li]:
            m |= 1 << pt
        masks.append(m)
    forbidden = 0
    for i in range(k):
        for j in range(i + 1, k):
            forbidden |= masks[i] & masks[j]

    point_map = np.full(npts, -1, dtype=np.int32)
    for i, li in enumerate(chosen):
        free = [pt for pt in lines[li] if not (forbidden >> pt) & 1]
        if len(free) < sizes[i]:
            raise CapacityError(f"line capacity {len(free)} < part size {sizes[i]}")
        for offset, pt in enumerate(free[: sizes[i]]):
            point_map[pt] = starts[i] + offset

    lines_arr = _plane_lines_array(q)
    keep = np.ones(npts, dtype=bool)
    keep[chosen] = False
    data, off = restrict_lines(lines_arr[keep], point_map)
    pieces = [CliquePartition.from_arrays(n, data, off)]

    for i in range(k):
        sub = partition_complete(sizes[i], k)
        sdata, soff = sub.to_arrays()
        pieces.append(CliquePartition.from_arrays(n, sdata + starts[i], soff))
    return concat_partitions(n, pieces)


# --- complements of sparse graphs -------------------------------------------


def partition_near_complete(g: Graph, full: Iterable[int]) -> CliquePartition:
    """Partition a graph where the `full` vertices have degree n-1: one clique
    on `full` plus a K_2 for every remaining edge; at most 1 + t(n-2) parts
    for t = n - |full| >= 1 (t = 0 degenerates to the single clique)."""
    full_set = sorted(set(full))
    n = g.n
    for v in full_set:
        if not 0 <= v < n:
            raise InputError(f"vertex {v} out of range")
        if g.degree(v) != n - 1:
            raise InputError(f"vertex {v} has degree {g.degree(v)}, needs {n - 1}")
    in_full = 0
    for v in full_set:
        in_full |= 1 << v
    parts: list[tuple[int, ...]] = []
    if len(full_set) >= 2:
        parts.append(tuple(full_set))
    for u, v in g.edges():
        if not ((in_full >> u) & 1 and (in_full >> v) & 1):
            parts.append((u, v))
    t = n - len(full_set)
    if t >= 1:
        assert len(parts) <= 1 + t * (n - 2)
    return CliquePartition(n, parts)


def complement_split_order(n: int, m: int) -> int:
    """The clique-order parameter for complement partitions: max(2,
    floor((n^2/m)^(1/3))) clamped to ceil(sqrt(n)); m = 0 means the clamp."""
    ceil_sqrt = math.isqrt(n - 1) + 1 if n > 1 else 1
    if m == 0:
        return max(2, ceil_sqrt)
    k = max(2, int((n * n / m) ** (1 / 3) + 1e-9))
    return max(2, min(k, ceil_sqrt))


def partition_complement(f: Graph) -> CliquePartition:
    """Clique partition of complement(f) with at most N + 2mk parts, where N
    and k come from the underlying partition of K_n.

    Runs partition_complete(n, k), keeps the cliques free of f-edges, and
    reprocesses each touched clique Q through partition_near_complete on
    complement(f)[Q] with `full` = the Q-vertices that meet no f-edge in Q.
    """
    n, m = f.n, f.m
    k = complement_split_order(n, m)
    base = partition_complete(n, k)
    comp = f.complement()

    pieces: list[CliquePartition] = []
    clean_data: list[np.ndarray] = []
    clean_off: list[int] = [0]
    pos = 0
    for part in base.iter_parts():
        touched = [v for v in part if any(f.has_edge(v, u) for u in part if u != v)]
        if not touched:
            clean_data.append(np.asarray(part, dtype=np.int32))
            pos += len(part)
            clean_off.append(pos)
            continue
        local_full = [i for i, v in enumerate(part) if v not in set(touched)]
        local = comp.subgraph(part)
        sub = partition_near_complete(local, local_full)
        sdata, soff = sub.to_arrays()
        remap = np.asarray(part, dtype=np.int32)
        pieces.append(CliquePartition.from_arrays(n, remap[sdata], soff))
    if clean_data:
        pieces.insert(
            0,
            CliquePartition.from_arrays(
                n, np.concatenate(clean_data), np.asarray(clean_off, dtype=np.int32)
            ),
        )
    bound = base.num_parts + 2 * m * k
    out = concat_partitions(
        n, pieces, meta={"k": k, "base_count": base.num_parts, "bound": bound}
    )
    assert out.num_parts <= bound
    return out


# --- tree partitions ---------------------------------------------------------


@dataclass(frozen=True)
class TreePartition:
    """Edge-disjoint subtrees covering a tree, pairwise sharing <= 1 vertex.

    `pieces` are vertex tuples in an order whose prefix unions are connected;
    `attachments[i]` is the unique vertex piece i shares with the union of the
    earlier pieces (None for the first).
    """

    tree: Graph
    pieces: tuple[tuple[int, ...], ...]
    attachments: tuple[Optional[int], ...]


def _forest_components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for root in range(g.n):
        if seen[root]:
            continue
        comp = [root]
        seen[root] = True
        stack = [root]
        while stack:
            v = stack.pop()
            for u in iter_bits(g.adj[v]):
                if not seen[u]:
                    seen[u] = True
                    comp.append(u)
                    stack.append(u)
        comps.append(comp)
    return comps


def check_forest(g: Graph) -> bool:
    return g.m == g.n - len(_forest_components(g))


def tree_partition(t: Graph, k: int) -> TreePartition:
    """Partition a tree into <= 2n/k subtrees of sizes in [k/3, k].

    Postorder accumulation with a cut threshold of ceil((k+2)/2) and a hard
    k-capacity guard: merging a child's residual that would push the
    accumulator past k emits the accumulator first.  Guarded emissions stay
    >= floor(k/2)+1 because residuals never reach the threshold, which keeps
    every piece inside [k/3, k] and the per-piece advance >= floor(k/2), so
    the count lands under 2n/k.  A small root leftover is merged into an
    adjacent piece, rebalancing the pair when the union would exceed k.
    """
    n = t.n
    if not (2 <= k <= n):
        raise InputError(f"need 2 <= k <= n, got k={k}, n={n}")
    comps = _forest_components(t)
    if len(comps) != 1 or t.m != n - 1:
        raise InputError("tree_partition needs a connected acyclic input")

    theta = (k + 3) // 2
    parent = [-1] * n
    order = []
    stack = [0]
    seen = 1
    while stack:
        v = stack.pop()
        order.append(v)
        for u in iter_bits(t.adj[v]):
            if not (seen >> u) & 1:
                seen |= 1 << u
                parent[u] = v
                stack.append(u)

    pieces: list[list[int]] = []
    residual: dict[int, list[int]] = {}
    for v in reversed(order):
        acc = [v]
        children = sorted(u for u in iter_bits(t.adj[v]) if parent[u] == v)
        for c in children:
            res = residual.pop(c)
            if len(acc) + len(res) > k:
                pieces.append(acc)
                acc = [v]
            acc.extend(res)
            if len(acc) >= theta:
                pieces.append(acc)
                acc = [v]
        residual[v] = acc

    leftover = residual.pop(0)
    assert not residual
    if len(leftover) >= 2:
        _absorb_leftover(t, pieces, leftover, k)

    return _order_pieces(t, pieces)


def _absorb_leftover(t: Graph, pieces: list[list[int]], leftover: list[int], k: int) -> None:
    # Merging into an adjacent piece keeps the piece count intact, which the
    # 2n/k bound needs; a standalone leftover piece would advance too little.
    # Splitting an oversized union yields two pieces of combined advance >= k,
    # the same rate as regular emissions.
    floor = -(-k // 3)
    lset = set(leftover)
    candidates = sorted(
        (i for i, p in enumerate(pieces) if lset & set(p)),
        key=lambda i: (len(pieces[i]), i),
    )
    assert candidates, "leftover with no adjacent piece (impossible for k <= n)"
    i = candidates[0]
    if len(pieces[i]) + len(leftover) - 1 <= k:
        shared = lset & set(pieces[i])
        pieces[i] = pieces[i] + [v for v in leftover if v not in shared]
        return
    union = sorted(set(pieces[i]) | lset)
    split = _split_subtree(t, union, floor, k)
    if split is None:
        raise CapacityError("tree piece rebalancing failed; sizes out of contract")
    pieces[i] = split[0]
    pieces.append(split[1])


def _split_subtree(
    t: Graph, union: list[int], floor: int, cap: int
) -> Optional[tuple[list[int], list[int]]]:
    """Split a subtree's vertex set into two subtrees sharing one vertex, each
    with size in [floor, cap]; tries every cut vertex, with a subset-sum DP
    over the branch sizes (high-degree cuts make enumeration infeasible)."""
    uset = set(union)
    total = len(union)
    for cut in union:
        branches = []
        for nb in iter_bits(t.adj[cut]):
            if nb not in uset:
                continue
            comp = [nb]
            stack = [nb]
            seen = {nb, cut}
            while stack:
                v = stack.pop()
                for u in iter_bits(t.adj[v]):
                    if u in uset and u not in seen:
                        seen.add(u)
                        comp.append(u)
                        stack.append(u)
            branches.append(comp)
        sizes = [len(b) for b in branches]
        # side A = cut + a subset of branches; reachable subset sums up to cap
        reach: dict[int, list[int]] = {0: []}
        for idx, s in enumerate(sizes):
            for prev in sorted(reach):
                ns = prev + s
                if ns <= cap - 1 and ns not in reach:
                    reach[ns] = reach[prev] + [idx]
        for ssum in sorted(reach):
            a = 1 + ssum
            b = total - a + 1
            if floor <= a <= cap and floor <= b <= cap:
                picked = set(reach[ssum])
                side_a = [cut] + [v for i in picked for v in branches[i]]
                side_b = [cut] + [
                    v for i in range(len(branches)) if i not in picked for v in branches[i]
                ]
                return sorted(side_a), sorted(side_b)
    return None


def _order_pieces(t: Graph, pieces: list[list[int]]) -> TreePartition:
    """Reorder pieces so each shares exactly one vertex with the earlier union."""
    remaining = {i: frozenset(p) for i, p in enumerate(pieces)}
    first = min(remaining, key=lambda i: min(remaining[i]))
    order = [first]
    covered = set(remaining.pop(first))
    attachments: list[Optional[int]] = [None]
    while remaining:
        best = None
        for i, pset in sorted(remaining.items()):
            shared = pset & covered
            if shared:
                best = (i, shared)
                break
        assert best is not None, "pieces do not cover a connected tree"
        i, shared = best
        assert len(shared) == 1, f"piece shares {len(shared)} vertices with prefix"
        order.append(i)
        attachments.append(min(shared))
        covered |= remaining.pop(i)
    return TreePartition(
        t,
        tuple(tuple(sorted(pieces[i])) for i in order),
        tuple(attachments),
    )


def verify_tree_partition(tp: TreePartition, k: int) -> tuple[bool, str]:
    """Replay checker: coverage, subtree-ness, size window, pair intersections,
    prefix connectivity, and the 2n/k count."""
    t = tp.tree
    n = t.n
    masks = []
    covered_edges = 0
    for piece in tp.pieces:
        mask = 0
        for v in piece:
            mask |= 1 << v
        inside = sum((t.adj[v] & mask).bit_count() for v in piece) // 2
        if inside != len(piece) - 1:
            return False, f"piece {piece} does not induce a subtree"
        covered_edges += inside
        if not (k / 3 <= len(piece) <= k):
            return False, f"piece size {len(piece)} outside [k/3, k] for k={k}"
        masks.append(mask)
    for i in range(len(masks)):
        for j in range(i + 1, len(masks)):
            common = (masks[i] & masks[j]).bit_count()
            if common > 1:
                return False, f"pieces {i},{j} share {common} vertices"
    # pairwise-disjoint edge sets + per-piece subtree counts + total match
    if covered_edges != t.m:
        return False, f"covered {covered_edges} edges of {t.m}"
    prefix = 0
    for i, mask in enumerate(masks):
        if i and not (mask & prefix):
            return False, f"piece {i} disconnected from prefix"
        prefix |= mask
    if len(tp.pieces) > 2 * n / k:
        return False, f"{len(tp.pieces)} pieces exceeds 2n/k = {2 * n / k:.2f}"
    return True, "ok"


# --- complements of forests --------------------------------------------------


def forest_complement_bound(n: int) -> float:
    """100 n (1 + log2 log2 n) + (n - 1), the forest-complement contract."""
    if n <= 200:
        return n * (n - 1) / 2 + n
    return 100.0 * n * (1.0 + math.log2(math.log2(n))) + (n - 1)


def _spanning_tree_completion(f: Graph) -> tuple[Graph, list[tuple[int, int]]]:
    comps = _forest_components(f)
    comps.sort(key=min)
    added = []
    edges = list(f.edges())
    anchor = min(comps[0])
    for comp in comps[1:]:
        added.append((anchor, min(comp)))
    return Graph.from_edges(f.n, edges + added), added


def partition_complement_forest(f: Graph) -> CliquePartition:
    """Clique partition of complement(f) for a forest f.

    n <= 200 is the all-K_2 base case.  Otherwise complete f to a spanning
    tree T, split T into subtrees of order ~sqrt(n), embed the pieces into
    distinct lines of a plane of order q in [3 sqrt n, 6 sqrt n] (each piece
    on a line through the image of its attachment vertex), emit the
    T-edge-free lines restricted to the image as cliques, and recurse into
    each piece's complement.  Cross pairs that land on a used line (a later
    line can pass through an earlier image point; lines are chosen to
    minimize that) are patched as K_2 parts, so the cover is exact
    unconditionally.  Edges added by the spanning-tree completion come back
    as K_2 parts, the cp(T-bar) + n - 1 step.
    """
    n = f.n
    if not check_forest(f):
        raise InputError("input has a cycle; forest required")
    if n <= 200:
        comp = f.complement()
        parts = list(comp.edges())
        out = CliquePartition(n, parts, meta={"base": "edges", "bound": forest_complement_bound(n)})
        return out

    tree, added = _spanning_tree_completion(f)
    k = max(2, math.isqrt(n))
    tp = tree_partition(tree, k)

    q = next_prime_at_least(math.isqrt(9 * n - 1) + 1)
    assert q * q <= 36 * n, f"prime overshoot: q={q}, n={n}"
    plane = build_plane(q)
    npts = plane.num_points
    if q + 1 <= len(tp.pieces):
        raise CapacityError("plane too small for the piece count")

    image = np.full(n, -1, dtype=np.int64)
    point_map = np.full(npts, -1, dtype=np.int32)
    used_lines: list[int] = []
    line_used = bytearray(npts)

    for idx, piece in enumerate(tp.pieces):
        att = tp.attachments[idx]
        if att is None:
            li = 0
        else:
            w = int(image[att])
            li = _pick_line(plane, w, line_used, point_map)
        used_lines.append(li)
        line_used[li] = 1
        todo = [v for v in piece if v != att]
        spots = [
            pt
            for pt in plane.lines[li]
            if point_map[pt] < 0 and _off_used_lines(plane, pt, line_used, li)
        ]
        if len(spots) < len(todo):
            raise CapacityError("line ran out of free points during embedding")
        for v, pt in zip(todo, spots):
            image[v] = pt
            point_map[pt] = v

    lines_arr = _plane_lines_array(q)
    keep = np.ones(npts, dtype=bool)
    keep[used_lines] = False
    data, off = restrict_lines(lines_arr[keep], point_map)
    pieces_out = [CliquePartition.from_arrays(n, data, off)]

    # K_2 patches: cross pairs whose unique line is a used line
    patches: list[tuple[int, int]] = []
    for idx, li in enumerate(used_lines):
        members = [int(point_map[pt]) for pt in plane.lines[li] if point_map[pt] >= 0]
        own = set(tp.pieces[idx])
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                u, v = members[i], members[j]
                if u in own and v in own:
                    continue
                patches.append((u, v) if u < v else (v, u))
    pieces_out.append(CliquePartition(n, patches))

    # completion edges return as K_2 (cp(F-bar) <= cp(T-bar) + n - 1)
    pieces_out.append(CliquePartition(n, added))

    for piece in tp.pieces:
        sub_tree = tree.subgraph(piece)
        sub = partition_complement_forest(sub_tree)
        sdata, soff = sub.to_arrays()
        remap = np.asarray(piece, dtype=np.int32)
        pieces_out.append(CliquePartition.from_arrays(n, remap[sdata], soff))

    bound = forest_complement_bound(n)
    out = concat_partitions(
        n,
        pieces_out,
        meta={"k": k, "pieces": len(tp.pieces), "q": q, "patched": len(patches), "bound": bound},
    )
    assert out.num_parts <= bound, f"{out.num_parts} parts exceeds {bound:.1f}"
    return out


def _off_used_lines(plane: ProjectivePlane, pt: int, line_used: bytearray, current: int) -> bool:
    for li in plane.incidence[pt]:
        if li != current and line_used[li]:
            return False
    return True


def _pick_line(plane: ProjectivePlane, w: int, line_used: bytearray, point_map: np.ndarray) -> int:
    """Lowest-index unused line through w with the fewest embedded points
    (strays on the chosen line would need K_2 patches, so minimize them)."""
    best = None
    pm = point_map
    for li in plane.incidence[w]:
        if line_used[li]:
            continue
        hits = sum(1 for pt in plane.lines[li] if pm[pt] >= 0 and pt != w)
        cand = (hits, li)
        if best is None or cand < best:
            best = cand
        if hits == 0:
            break
    if best is None:
        raise CapacityError("no free line through attachment image")
    return best[1]


# --- exact minimum (desk-scale oracle) ---------------------------------------


def cp_bruteforce(g: Graph) -> int:
    """Exact minimum clique-partition size, by exact-cover branch and bound.

    Branches on the lowest uncovered edge over all cliques containing it whose
    edges are still uncovered (largest first), with a pigeonhole lower bound
    for pruning.  Capped at 8 vertices.
    """
    if g.n > BRUTEFORCE_CP_CAP:
        raise CapacityError(f"cp_bruteforce capped at n={BRUTEFORCE_CP_CAP}")
    edges = sorted(g.edges())
    if not edges:
        return 0
    eidx = {e: i for i, e in enumerate(edges)}
    m = len(edges)
    full = (1 << m) - 1

    # clique number for the pigeonhole bound
    omega = _clique_number(g)
    denom = omega * (omega - 1) // 2

    adj = g.adj

    def cliques_containing(u: int, v: int, covered: int) -> list[tuple[int, ...]]:
        out: list[tuple[int, ...]] = []

        def grow(members: tuple[int, ...], mask: int, start: int) -> None:
            out.append(members)
            for w in range(start, g.n):
                if not (mask >> w) & 1:
                    continue
                ok = True
                for x in members:
                    a, b = (x, w) if x < w else (w, x)
                    if (covered >> eidx[(a, b)]) & 1:
                        ok = False
                        break
                if ok:
                    grow(tuple(sorted(members + (w,))), mask & adj[w], w + 1)

        grow((u, v), adj[u] & adj[v], 0)
        out.sort(key=len, reverse=True)
        return out

    best = m + 1

    def search(covered: int, used: int) -> None:
        nonlocal best
        if covered == full:
            best = min(best, used)
            return
        remaining = m - covered.bit_count()
        if used + -(-remaining // denom) >= best:
            return
        low = (~covered & full & -(~covered & full)).bit_length() - 1
        u, v = edges[low]
        for clique in cliques_containing(u, v, covered):
            add = 0
            for i in range(len(clique)):
                for j in range(i + 1, len(clique)):
                    a, b = clique[i], clique[j]
                    add |= 1 << eidx[(a, b) if a < b else (b, a)]
            search(covered | add, used + 1)

    search(0, 0)
    return best


def _clique_number(g: Graph) -> int:
    best = 1 if g.n else 0

    def grow(mask: int, size: int, start: int) -> None:
        nonlocal best
        best = max(best, size)
        for w in range(start, g.n):
            if (mask >> w) & 1:
                grow(mask & g.adj[w], size + 1, w + 1)

    grow((1 << g.n) - 1, 0, 0)
    return max(best, 2 if g.m else best)


# --- text format --------------------------------------------------------------


def format_partition(p: CliquePartition, bound: Optional[float] = None) -> str:
    """One part per line (sorted 1-based ids, lines sorted lexicographically),
    then a trailer `c <parts> <bound>`."""
    rows = sorted(tuple(sorted(part)) for part in p.iter_parts())
    lines = [" ".join(str(v + 1) for v in row) for row in rows]
    if bound is None:
        bound = p.meta.get("bound", 0)
    lines.append(f"c {len(rows)} {bound:g}")
    return "\n".join(lines) + "\n"


def parse_partition(text: str, n: int) -> CliquePartition:
    parts = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#") or line.startswith("c "):
            continue
        ids = [int(t) - 1 for t in line.split()]
        parts.append(tuple(ids))
    return CliquePartition(n, parts)
