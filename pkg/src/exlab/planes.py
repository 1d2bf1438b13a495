"""Finite projective planes PG(2,q) over prime fields, with full verification.

Prime fields only: every use downstream routes through a Bertrand-postulate
prime search, so GF(p^k) arithmetic never pays its way; rejecting prime
powers keeps the field arithmetic to integers mod p.

Canonical point order (byte-reproducible outputs): affine points (x, y, 1)
sorted by (x, y), then the points at infinity (x, 1, 0) for x = 0..q-1, then
(1, 0, 0).  Lines use the same normalization of their coefficient triples.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import CapacityError, InputError


def is_prime(n: int) -> bool:
    """Deterministic trial division; the orders used here stay tiny."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def next_prime_at_least(x: int) -> int:
    """Least prime p >= x; asserts Bertrand's guarantee p < 2x."""
    if x < 2:
        raise InputError("next_prime_at_least requires x >= 2")
    if x > 10**9:
        raise CapacityError("prime search capped at 10^9")
    p = x
    while not is_prime(p):
        p += 1
    assert p < 2 * x, f"Bertrand violation: {p} >= 2*{x}"
    return p


@dataclass(frozen=True)
class ProjectivePlane:
    """Point-line incidence structure of order q.

    points are ids 0..q^2+q; lines are tuples of sorted point ids, each of
    size q+1; incidence[p] lists the line indices through p.
    """

    q: int
    lines: tuple[tuple[int, ...], ...]
    incidence: tuple[tuple[int, ...], ...]

    @property
    def num_points(self) -> int:
        return self.q * self.q + self.q + 1


def _point_id(q: int, x: int, y: int, z: int) -> int:
    # normalized triples only
    if z == 1:
        return x * q + y
    if y == 1:
        return q * q + x
    return q * q + q


@lru_cache(maxsize=8)
def build_plane(q: int) -> ProjectivePlane:
    """PG(2,q) by homogeneous coordinates over the field of order q (prime).

    A line [a:b:c] is the set of points (x:y:z) with ax+by+cz = 0 (mod q),
    coefficients normalized like the points and emitted in that canonical
    order.  Each line's point set is written out in closed form (solving for
    y, or a fixed x) rather than scanning all npts^2 incidences.  Within a
    line the affine ids x*q+y ascend with x and the infinity ids exceed
    them, so rows come out sorted.
    """
    if not is_prime(q):
        raise InputError(f"plane order must be prime, got {q}")

    npts = q * q + q + 1
    xs = np.arange(q, dtype=np.int64)
    inv = np.zeros(q, dtype=np.int64)
    for b in range(1, q):
        inv[b] = pow(b, q - 2, q)
    arr = np.empty((npts, q + 1), dtype=np.int32)

    # rows a*q + b hold the lines (a, b, 1)
    if q > 1:
        # b = 0, a != 0: vertical line x = -1/a, plus infinity point (0,1,0)
        a_nz = np.arange(1, q, dtype=np.int64)
        x0 = (-inv[a_nz]) % q
        arr[a_nz * q, :q] = (x0[:, None] * q + xs[None, :]).astype(np.int32)
        arr[a_nz * q, q] = q * q
    # a = b = 0: the line at infinity z = 0
    arr[0, :q] = (q * q + xs).astype(np.int32)
    arr[0, q] = q * q + q
    # b != 0: y = -(1 + a x)/b; infinity point solves a x + b = 0
    b_nz = np.arange(1, q, dtype=np.int64)
    for a in range(q):
        ys = ((-(1 + a * xs))[None, :] * inv[b_nz][:, None]) % q
        rows = a * q + b_nz
        arr[rows, :q] = (xs[None, :] * q + ys).astype(np.int32)
        if a == 0:
            arr[rows, q] = q * q + q  # (1,0,0) lies on each horizontal line
        else:
            arr[rows, q] = (q * q + (-b_nz * inv[a]) % q).astype(np.int32)
    # rows q*q + a hold the lines (a, 1, 0): y = -a x
    a_all = np.arange(q, dtype=np.int64)
    rows = q * q + a_all
    ys = (-(a_all[:, None] * xs[None, :])) % q
    arr[rows, :q] = (xs[None, :] * q + ys).astype(np.int32)
    arr[q * q, q] = q * q + q  # a = 0: (1,0,0)
    if q > 1:
        arr[rows[1:], q] = (q * q + (-inv[a_all[1:]]) % q).astype(np.int32)
    # last row: the line (1, 0, 0): x = 0, plus (0,1,0)
    arr[q * q + q, :q] = xs.astype(np.int32)
    arr[q * q + q, q] = q * q

    lines = tuple(tuple(r) for r in arr.tolist())

    li = np.repeat(np.arange(npts, dtype=np.int64), q + 1)
    pts_flat = arr.ravel()
    order = np.argsort(pts_flat, kind="stable")
    counts = np.bincount(pts_flat, minlength=npts)
    assert (counts == q + 1).all(), "incidence counts broken"
    inc_arr = li[order].reshape(npts, q + 1)
    incidence = tuple(tuple(r) for r in inc_arr.tolist())
    return ProjectivePlane(q, lines, incidence)


def verify_plane(plane: ProjectivePlane) -> bool:
    """Check the projective-plane axioms exhaustively.

    (1) any two points on exactly one common line, (2) any two lines meet in
    exactly one point, (3) a quadrilateral: four points, no line through
    three of them -- plus the count invariants of an order-q plane.
    """
    q = plane.q
    npts = plane.num_points
    if len(plane.lines) != npts:
        return False
    if any(len(ln) != q + 1 for ln in plane.lines):
        return False
    if len(plane.incidence) != npts or any(len(t) != q + 1 for t in plane.incidence):
        return False
    for ln in plane.lines:
        if any(not 0 <= p < npts for p in ln) or len(set(ln)) != q + 1:
            return False

    pair_count = bytearray(npts * npts)
    for ln in plane.lines:
        for u, v in itertools.combinations(ln, 2):
            idx = u * npts + v
            if pair_count[idx]:
                return False
            pair_count[idx] = 1
    for u in range(npts):
        for v in range(u + 1, npts):
            if not pair_count[u * npts + v]:
                return False

    masks = [0] * len(plane.lines)
    for li, ln in enumerate(plane.lines):
        for p in ln:
            masks[li] |= 1 << p
    for i in range(len(masks)):
        for j in range(i + 1, len(masks)):
            if (masks[i] & masks[j]).bit_count() != 1:
                return False

    return _has_quadrilateral(plane)


def _has_quadrilateral(plane: ProjectivePlane) -> bool:
    # Try the canonical affine unit square first; fall back to search.
    q = plane.q
    if q >= 2:
        cand = (
            _point_id(q, 0, 0, 1),
            _point_id(q, 1, 0, 1),
            _point_id(q, 0, 1, 1),
            _point_id(q, 1, 1, 1),
        )
        if _no_three_collinear(plane, cand):
            return True
    npts = plane.num_points
    for quad in itertools.combinations(range(min(npts, 12)), 4):
        if _no_three_collinear(plane, quad):
            return True
    return False


def _no_three_collinear(plane: ProjectivePlane, pts: tuple[int, ...]) -> bool:
    for ln in plane.lines:
        if sum(1 for p in pts if p in ln) > 2:
            return False
    return True


def dump_plane(plane: ProjectivePlane) -> str:
    """Golden-test format: one line of the plane per text line, 1-based sorted
    point ids, lines sorted lexicographically."""
    rows = sorted(plane.lines)
    return "\n".join(" ".join(str(p + 1) for p in row) for row in rows) + "\n"
