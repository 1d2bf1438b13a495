"""Pure-Python kernel fallbacks.

Same contracts as the compiled module `_fast`; selected at import time by the
package when the extension is unavailable (or EXLAB_PURE=1 is set).  These are
written for correctness and reasonable constant factors, not for the
acceptance-suite clock -- the compiled core exists because sweeps like the
partition verifier touch ~10^9 vertex pairs.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

BACKEND = "pure"


def cover_check(
    n: int,
    adj_masks: Sequence[int],
    parts_data: np.ndarray,
    parts_off: np.ndarray,
) -> tuple[int, int, int, int]:
    """Exact-cover check of clique parts against an adjacency relation.

    Returns (0,0,0,0) on success, else a first failure:
      (1, u, v, p)  pair (u,v) inside part p is not an edge
      (2, u, v, c)  edge (u,v) covered c times (c != 1, saturated at 255)
      (3, v, 0, p)  vertex id v out of range in part p
    """
    cover = bytearray(n * n)
    data = parts_data
    off = parts_off
    for p in range(len(off) - 1):
        lo, hi = int(off[p]), int(off[p + 1])
        for i in range(lo, hi):
            v = int(data[i])
            if v < 0 or v >= n:
                return (3, v, 0, p)
        for i in range(lo, hi):
            u = int(data[i])
            row = adj_masks[u]
            for j in range(i + 1, hi):
                v = int(data[j])
                if not (row >> v) & 1:
                    return (1, u, v, p)
                a, b = (u, v) if u < v else (v, u)
                idx = a * n + b
                if cover[idx] < 255:
                    cover[idx] += 1
    for u in range(n):
        rest = adj_masks[u] >> (u + 1)
        v = u + 1
        while rest:
            if rest & 1 and cover[u * n + v] != 1:
                return (2, u, v, cover[u * n + v])
            rest >>= 1
            v += 1
    return (0, 0, 0, 0)


def restrict_lines(lines: np.ndarray, point_map: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Map plane lines through ``point_map`` (-1 = unused point), keeping the
    images with at least 2 mapped points.  Returns flattened (data, offsets)."""
    out: list[int] = []
    offs: list[int] = [0]
    pm = point_map
    for row in lines:
        img = [int(pm[p]) for p in row if pm[p] >= 0]
        if len(img) >= 2:
            out.extend(img)
            offs.append(len(out))
    return np.asarray(out, dtype=np.int32), np.asarray(offs, dtype=np.int32)


def max_star_forest_kernel(n: int, adj_masks: Sequence[int]) -> int:
    """Max size of an induced star forest over all 2^n subsets (n <= 16)."""
    if n == 0:
        return 0
    best = 0
    adj = list(adj_masks)
    for sub in range(1 << n):
        size = sub.bit_count()
        if size <= best:
            continue
        degs = [0] * n
        ok = True
        rest = sub
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            degs[v] = (adj[v] & sub).bit_count()
            rest ^= low
        rest = sub
        while rest and ok:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            if degs[v] >= 2:
                nb = adj[v] & sub
                while nb:
                    nlow = nb & -nb
                    u = nlow.bit_length() - 1
                    nb ^= nlow
                    if degs[u] >= 2:
                        ok = False
                        break
        if ok:
            best = size
    return best


def cube_search(
    mask: int, nbits: int, d: int, max_nodes: Optional[int]
) -> tuple[int, Optional[tuple[int, tuple[int, ...]]], int]:
    """Lex-first Hilbert cube of dimension d inside the bitmask set.

    mask bit i <=> i is in the set.  Returns (status, cube, nodes) with status
    0 found / 1 absent / 2 node budget exhausted.  A node is one candidate
    generator test; the compiled kernel counts identically, so budget-capped
    runs agree across backends.
    """
    nodes = 0
    if not mask:
        return (1, None, 0)
    if d == 0:
        x0 = (mask & -mask).bit_length() - 1
        return (0, (x0, ()), 0)
    limit = max_nodes if max_nodes is not None else -1

    x0 = mask
    while x0:
        low = x0 & -x0
        base = low.bit_length() - 1
        x0 ^= low
        m = mask >> base
        cands = []
        rest = m >> 1
        pos = 1
        while rest:
            if rest & 1:
                cands.append(pos)
            rest >>= 1
            pos += 1
        if len(cands) < d:
            continue
        found = _cube_dfs(m, d, cands, 1, [], nodes, limit)
        nodes = found[2]
        if found[0] == 0:
            return (0, (base, tuple(found[1])), nodes)
        if found[0] == 2:
            return (2, None, nodes)
    return (1, None, nodes)


def _cube_dfs(m, d, cands, sums, gens, nodes, limit):
    # filter-then-branch: children only rescan this node's survivors, and at
    # the final level the first survivor wins outright
    final = len(gens) + 1 == d
    survivors = []
    for x in cands:
        nodes += 1
        if limit >= 0 and nodes > limit:
            return (2, None, nodes)
        shifted = sums << x
        if shifted & ~m == 0:
            if final:
                return (0, gens + [x], nodes)
            survivors.append(x)
    for idx, x in enumerate(survivors):
        res = _cube_dfs(
            m, d, survivors[idx + 1 :], sums | (sums << x), gens + [x], nodes, limit
        )
        nodes = res[2]
        if res[0] != 1:
            return res
    return (1, None, nodes)
