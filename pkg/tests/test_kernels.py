"""Compiled and pure kernels must agree exactly, node accounting included."""

import itertools
import random

import numpy as np
import pytest

from exlab._kernels import _pure
from exlab._kernels import BACKEND, cover_check, cube_search, max_star_forest_kernel, restrict_lines

try:
    from exlab._kernels import _fast
except ImportError:  # pragma: no cover
    _fast = None

needs_fast = pytest.mark.skipif(_fast is None, reason="compiled kernels unavailable")


def _random_masks(n, p, rng):
    masks = [0] * n
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                masks[u] |= 1 << v
                masks[v] |= 1 << u
    return masks


@needs_fast
class TestAgreement:
    def test_cover_check(self):
        rng = random.Random(1)
        for _ in range(60):
            n = rng.randrange(2, 20)
            masks = _random_masks(n, rng.random(), rng)
            parts = []
            for _ in range(rng.randrange(0, 6)):
                size = rng.randrange(2, min(n, 4) + 1)
                parts.append(rng.sample(range(n), size))
            data = np.asarray([v for p in parts for v in p], dtype=np.int32)
            off = np.asarray(
                [0] + list(np.cumsum([len(p) for p in parts])), dtype=np.int32
            )
            assert _fast.cover_check(n, masks, data, off) == _pure.cover_check(
                n, masks, data, off
            )

    def test_restrict_lines(self):
        rng = random.Random(2)
        for _ in range(40):
            nl = rng.randrange(1, 20)
            s = rng.randrange(2, 7)
            npts = rng.randrange(s, 40)
            lines = np.asarray(
                [rng.sample(range(npts), s) for _ in range(nl)], dtype=np.int32
            )
            pm = np.asarray(
                [rng.randrange(-1, 5) for _ in range(npts)], dtype=np.int32
            )
            fd, fo = _fast.restrict_lines(lines, pm)
            pd, po = _pure.restrict_lines(lines, pm)
            assert np.array_equal(fd, pd) and np.array_equal(fo, po)

    def test_star_forest(self):
        rng = random.Random(3)
        for _ in range(40):
            n = rng.randrange(0, 13)
            masks = _random_masks(n, rng.random(), rng)
            assert _fast.max_star_forest_kernel(n, masks) == _pure.max_star_forest_kernel(
                n, masks
            )

    def test_cube_search_with_budgets(self):
        rng = random.Random(4)
        for _ in range(120):
            nbits = rng.randrange(2, 150)
            mask = 0
            for v in range(nbits + 1):
                if rng.random() < rng.random():
                    mask |= 1 << v
            d = rng.randrange(0, 5)
            limit = rng.choice([None, 5, 50, 10**6])
            assert _fast.cube_search(mask, nbits, d, limit) == _pure.cube_search(
                mask, nbits, d, limit
            )


class TestPureSemantics:
    def test_cover_codes(self):
        # clique violation
        masks = [0b010, 0b101, 0b010]  # path 0-1-2
        data = np.asarray([0, 2], dtype=np.int32)
        off = np.asarray([0, 2], dtype=np.int32)
        assert _pure.cover_check(3, masks, data, off)[0] == 1
        # double cover
        data = np.asarray([0, 1, 0, 1], dtype=np.int32)
        off = np.asarray([0, 2, 4], dtype=np.int32)
        code, u, v, c = _pure.cover_check(3, masks, data, off)
        assert (code, u, v, c) == (2, 0, 1, 2)
        # uncovered edge
        data = np.asarray([0, 1], dtype=np.int32)
        off = np.asarray([0, 2], dtype=np.int32)
        assert _pure.cover_check(3, masks, data, off)[0] == 2
        # bad vertex
        data = np.asarray([0, 9], dtype=np.int32)
        off = np.asarray([0, 2], dtype=np.int32)
        assert _pure.cover_check(3, masks, data, off)[0] == 3

    def test_cube_budget_status(self):
        mask = (1 << 40) - 1
        status, cube, nodes = _pure.cube_search(mask, 39, 3, 2)
        assert status == 2 and cube is None and nodes == 3

    def test_backend_name(self):
        assert BACKEND in ("compiled", "pure")
