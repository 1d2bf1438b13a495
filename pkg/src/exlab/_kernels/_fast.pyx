# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel core.

Mirrors `_pure` exactly (same signatures, same results, same node accounting
in budgeted searches); only the constant factor differs.
"""

from libc.stdlib cimport malloc, free
from libc.string cimport memset

import numpy as np

cdef extern from *:
    """
    #define EXLAB_CTZLL(x) __builtin_ctzll(x)
    #define EXLAB_POPCOUNTLL(x) __builtin_popcountll(x)
    """
    int EXLAB_CTZLL(unsigned long long) nogil
    int EXLAB_POPCOUNTLL(unsigned long long) nogil

BACKEND = "compiled"

ctypedef unsigned long long u64


cdef inline int _popcount(u64 x) noexcept nogil:
    return EXLAB_POPCOUNTLL(x)


def _pack_masks(int n, masks):
    """Python int bitmasks -> uint64 word matrix, little-endian words."""
    cdef int W = (n + 63) // 64 if n else 1
    blob = b"".join(int(m).to_bytes(W * 8, "little") for m in masks)
    return np.frombuffer(blob, dtype=np.uint64).reshape(len(masks), W).copy()


def cover_check(int n, adj_masks, parts_data, parts_off):
    """See `_pure.cover_check`."""
    cdef u64[:, ::1] adj = _pack_masks(n, adj_masks)
    data_arr = np.ascontiguousarray(parts_data, dtype=np.int32)
    off_arr = np.ascontiguousarray(parts_off, dtype=np.int32)
    cdef int[::1] data = data_arr
    cdef int[::1] off = off_arr
    cover_arr = np.zeros(n * n if n else 1, dtype=np.uint8)
    cdef unsigned char[::1] cover = cover_arr
    cdef Py_ssize_t p, i, j
    cdef int u, v, a, b
    cdef Py_ssize_t lo, hi, idx
    cdef Py_ssize_t nparts = off.shape[0] - 1
    for p in range(nparts):
        lo = off[p]
        hi = off[p + 1]
        for i in range(lo, hi):
            v = data[i]
            if v < 0 or v >= n:
                return (3, v, 0, int(p))
        for i in range(lo, hi):
            u = data[i]
            for j in range(i + 1, hi):
                v = data[j]
                if not (adj[u, v >> 6] >> (v & 63)) & 1:
                    return (1, u, v, int(p))
                if u < v:
                    a = u; b = v
                else:
                    a = v; b = u
                idx = <Py_ssize_t> a * n + b
                if cover[idx] < 255:
                    cover[idx] += 1
    cdef u64 w
    cdef int base, t
    for u in range(n):
        for j in range((n + 63) // 64):
            w = adj[u, j]
            base = <int> (j << 6)
            while w:
                t = base + _ctz(w)
                w &= w - 1
                if t <= u:
                    continue
                idx = <Py_ssize_t> u * n + t
                if cover[idx] != 1:
                    return (2, u, t, cover[idx])
    return (0, 0, 0, 0)


cdef inline int _ctz(u64 x) noexcept nogil:
    return EXLAB_CTZLL(x)


def restrict_lines(lines, point_map):
    """See `_pure.restrict_lines`."""
    lines_arr = np.ascontiguousarray(lines, dtype=np.int32)
    pm_arr = np.ascontiguousarray(point_map, dtype=np.int32)
    cdef int[:, ::1] L = lines_arr
    cdef int[::1] pm = pm_arr
    cdef Py_ssize_t nl = L.shape[0], s = L.shape[1]
    out_arr = np.empty(nl * s, dtype=np.int32)
    off_arr = np.empty(nl + 1, dtype=np.int32)
    cdef int[::1] out = out_arr
    cdef int[::1] off = off_arr
    cdef Py_ssize_t li, j, w = 0, no = 0, cnt, mark
    cdef int p, v
    off[0] = 0
    for li in range(nl):
        cnt = 0
        mark = w
        for j in range(s):
            p = L[li, j]
            v = pm[p]
            if v >= 0:
                out[w] = v
                w += 1
                cnt += 1
        if cnt >= 2:
            no += 1
            off[no] = <int> w
        else:
            w = mark
    return out_arr[:w].copy(), off_arr[: no + 1].copy()


def max_star_forest_kernel(int n, adj_masks):
    """See `_pure.max_star_forest_kernel` (n <= 16: masks fit one word)."""
    if n == 0:
        return 0
    cdef u64 adj[16]
    cdef int deg[16]
    cdef int i
    for i in range(n):
        adj[i] = <u64> int(adj_masks[i])
    cdef u64 sub, nb
    cdef int best = 0, size, v, u, ok
    for sub in range(<u64> 1 << n):
        size = _popcount(sub)
        if size <= best:
            continue
        for v in range(n):
            if (sub >> v) & 1:
                deg[v] = _popcount(adj[v] & sub)
        ok = 1
        for v in range(n):
            if ok and ((sub >> v) & 1) and deg[v] >= 2:
                nb = adj[v] & sub
                while nb:
                    u = _ctz(nb)
                    nb &= nb - 1
                    if deg[u] >= 2:
                        ok = 0
                        break
        if ok:
            best = size
    return best


def cube_search(mask, int nbits, int d, max_nodes):
    """See `_pure.cube_search`; identical traversal order and node counts."""
    cdef long long nodes = 0
    cdef long long limit = -1 if max_nodes is None else <long long> max_nodes
    if mask == 0:
        return (1, None, 0)
    cdef int x0
    if d == 0:
        x0 = (mask & -mask).bit_length() - 1
        return (0, (x0, ()), 0)

    cdef int W = (nbits + 64) // 64
    cdef int slots = nbits + 1
    m_arr = np.zeros(W, dtype=np.uint64)
    cdef u64[::1] M = m_arr
    cdef u64 *S = <u64 *> malloc(<size_t> (d + 1) * W * sizeof(u64))
    cdef int *surv = <int *> malloc(<size_t> (d + 1) * slots * sizeof(int))
    cdef int *gens = <int *> malloc(<size_t> (d + 1) * sizeof(int))
    if S == NULL or surv == NULL or gens == NULL:
        free(S); free(surv); free(gens)
        raise MemoryError()

    cdef int ncand, base, status, i
    cdef object x0mask = mask
    cdef long long nodes_io[1]
    status = 1
    try:
        while x0mask:
            base = ((x0mask & -x0mask)).bit_length() - 1
            x0mask &= x0mask - 1
            mb = int(mask >> base).to_bytes(W * 8, "little")
            m_arr[:] = np.frombuffer(mb, dtype=np.uint64)
            ncand = _collect_bits(M, W, surv, nbits)
            if ncand < d:
                continue
            memset(S, 0, <size_t> (d + 1) * W * sizeof(u64))
            S[0] = 1
            nodes_io[0] = nodes
            status = _cube_rec(S, surv, surv, ncand, 0, d, M, W, slots, gens,
                               nodes_io, limit)
            nodes = nodes_io[0]
            if status == 0 or status == 2:
                break
            status = 1
        if status == 0:
            return (0, (base, tuple(gens[i] for i in range(d))), int(nodes))
        if status == 2:
            return (2, None, int(nodes))
        return (1, None, int(nodes))
    finally:
        free(S); free(surv); free(gens)


cdef int _cube_rec(
    u64 *S, int *surv, int *cands, int ncand, int depth, int d, u64[::1] M,
    int W, int slots, int *gens, long long *nodes, long long limit,
) noexcept:
    """Filter-then-branch DFS.  Survivors of this node go into row depth+1 of
    `surv`; each child reads a tail of that row and writes one row deeper, so
    rows never clash along a root-to-leaf path."""
    cdef int *child = surv + (depth + 1) * slots
    cdef int nsurv = 0, i, x, res
    cdef int final = 1 if depth + 1 == d else 0
    for i in range(ncand):
        x = cands[i]
        nodes[0] += 1
        if limit >= 0 and nodes[0] > limit:
            return 2
        if _shift_subset_or(S + depth * W, x, M, W, S + (depth + 1) * W):
            if final:
                gens[depth] = x
                return 0
            child[nsurv] = x
            nsurv += 1
    for i in range(nsurv):
        x = child[i]
        _shift_subset_or(S + depth * W, x, M, W, S + (depth + 1) * W)
        gens[depth] = x
        res = _cube_rec(S, surv, child + i + 1, nsurv - i - 1, depth + 1, d,
                        M, W, slots, gens, nodes, limit)
        if res != 1:
            return res
    return 1


cdef int _collect_bits(u64[::1] M, int W, int *cands, int nbits) noexcept:
    cdef int n = 0, j, base, t
    cdef u64 w
    for j in range(W):
        w = M[j]
        base = j << 6
        while w:
            t = base + _ctz(w)
            w &= w - 1
            if 1 <= t <= nbits:
                cands[n] = t
                n += 1
    return n


cdef int _shift_subset_or(u64 *S, int x, u64[::1] M, int W, u64 *out) noexcept:
    """If (S << x) subset-of M: out = S | (S << x), return 1. Else return 0."""
    cdef int wsh = x >> 6, bsh = x & 63
    cdef int i, j
    cdef u64 lo, hi
    for i in range(W):
        if S[i] == 0:
            continue
        j = i + wsh
        lo = S[i] << bsh
        hi = (S[i] >> (64 - bsh)) if bsh else 0
        if j < W:
            if lo & ~M[j]:
                return 0
        elif lo:
            return 0
        if hi:
            if j + 1 < W:
                if hi & ~M[j + 1]:
                    return 0
            else:
                return 0
    for i in range(W):
        out[i] = S[i]
    for i in range(W):
        if S[i] == 0:
            continue
        j = i + wsh
        lo = S[i] << bsh
        hi = (S[i] >> (64 - bsh)) if bsh else 0
        if j < W:
            out[j] |= lo
        if hi and j + 1 < W:
            out[j + 1] |= hi
    return 1
