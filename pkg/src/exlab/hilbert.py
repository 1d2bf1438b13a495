"""Subset sums, Hilbert cubes, and the density experiments around them.

Sets over [0..n] live as bitmask integers; membership is the hot operation
of the cube search, and the subset-sum set of a generator list is computed
by the doubling identity sums |= sums << x.  The pruned cube search and its
all-tuples naive oracle are kept strictly apart: the former goes through the
kernel backend, the latter is a direct enumeration used to cross-check it.
"""

from __future__ import annotations

import math
import random
import statistics
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import CapacityError, InputError
from ._kernels import cube_search

COUNT_N_CAP = 30
COUNT_D_CAP = 6
NODES_PER_MS = 2000  # nominal budget translation, keeps runs deterministic


@dataclass(frozen=True)
class SumProfile:
    generators: tuple[int, ...]
    sums: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.sums)

    @property
    def dimension(self) -> int:
        return len(self.generators)


@dataclass(frozen=True)
class HilbertCube:
    x0: int
    generators: tuple[int, ...]

    @property
    def dimension(self) -> int:
        return len(self.generators)

    def elements(self) -> tuple[int, ...]:
        mask = _sums_mask(self.generators)
        return tuple(self.x0 + s for s in _bits(mask))


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _sums_mask(gens: Sequence[int]) -> int:
    mask = 1
    for x in gens:
        mask |= mask << x
    return mask


def subset_sums(generators: Iterable[int]) -> SumProfile:
    """Sigma(X) by incremental doubling; the size bounds C(d+1,2)+1 <= |Sigma|
    <= 2^d for distinct positive generators are asserted on the result."""
    gens = tuple(sorted(generators))
    if any(x <= 0 for x in gens):
        raise InputError("generators must be positive")
    if len(set(gens)) != len(gens):
        raise InputError("generators must be distinct")
    mask = _sums_mask(gens)
    d = len(gens)
    size = mask.bit_count()
    assert math.comb(d + 1, 2) + 1 <= size <= 2**d or d == 0
    return SumProfile(gens, tuple(_bits(mask)))


def set_to_mask(a: Iterable[int]) -> int:
    mask = 0
    for v in a:
        if v < 0:
            raise InputError("set elements must be nonnegative")
        mask |= 1 << v
    return mask


def cube_elements_in(mask: int, cube: HilbertCube) -> bool:
    need = _sums_mask(cube.generators) << cube.x0
    return need & ~mask == 0


def find_hilbert_cube(
    a: Iterable[int], d: int, max_nodes: Optional[int] = None
) -> Optional[HilbertCube]:
    """Lexicographically first cube H(x0; x1 < ... < x_d) with all 2^d
    elements in the set, or None.  The search branches over x0 and ascending
    generators, keeping the invariant that every partial subset sum stays in
    the set, which prunes hard on sparse sets."""
    mask = set_to_mask(a)
    nbits = mask.bit_length()
    status, cube, _nodes = cube_search(mask, max(nbits - 1, 0), d, max_nodes)
    if status == 2:
        raise CapacityError(f"cube search exceeded its node budget ({max_nodes})")
    if status != 0:
        return None
    found = HilbertCube(cube[0], tuple(cube[1]))
    assert cube_elements_in(mask, found)
    return found


def find_hilbert_cube_naive(a: Iterable[int], d: int) -> Optional[HilbertCube]:
    """All-tuples oracle: every (x0, x1 < ... < x_d) combination is tested
    outright.  Vectorized for d <= 3, plain loops beyond; first hit in lex
    order, matching the pruned search exactly."""
    elems = sorted(set(a))
    if not elems:
        return None
    if d == 0:
        return HilbertCube(elems[0], ())
    mask = set_to_mask(elems)
    top = elems[-1]
    if d <= 3 and top >= 1:
        import itertools

        combos = np.asarray(
            list(itertools.combinations(range(1, top + 1), d)), dtype=np.int64
        )
        if len(combos) == 0:
            return None
        subsets = np.asarray(
            [[1 if (s >> i) & 1 else 0 for i in range(d)] for s in range(1, 1 << d)],
            dtype=np.int64,
        )
        sums = combos @ subsets.T  # (ncombo, 2^d - 1)
        table = np.zeros(top * (d + 1) + 2, dtype=bool)
        table[np.asarray(elems)] = True
        for x0 in elems:
            ok = table[sums + x0].all(axis=1)
            hits = np.nonzero(ok)[0]
            if len(hits):
                return HilbertCube(x0, tuple(int(v) for v in combos[hits[0]]))
        return None
    return _naive_loops(elems, mask, d)


def _naive_loops(elems: list[int], mask: int, d: int) -> Optional[HilbertCube]:
    import itertools

    top = elems[-1]
    for x0 in elems:
        for gens in itertools.combinations(range(1, top + 1), d):
            cube = HilbertCube(x0, gens)
            if cube_elements_in(mask, cube):
                return cube
    return None


@dataclass(frozen=True)
class CubeDimension:
    value: int
    certified: bool  # False when the node budget cut the last search short


def max_cube_dimension(
    a: Iterable[int], d_max: int, max_nodes: Optional[int] = None
) -> CubeDimension:
    """Largest d <= d_max with a cube of dimension d present, by ascending
    search (any d-cube contains cubes of every smaller dimension, so presence
    is monotone).  Empty sets give 0; budget exhaustion reports the last
    certified value uncertified."""
    mask = set_to_mask(a)
    if mask == 0:
        return CubeDimension(0, True)
    best = 0
    for d in range(1, d_max + 1):
        try:
            cube = find_hilbert_cube(_bits(mask), d, max_nodes)
        except CapacityError:
            return CubeDimension(best, False)
        if cube is None:
            return CubeDimension(best, True)
        best = d
    return CubeDimension(best, True)


def count_small_sigma_sets(n: int, d: int, bound: int) -> int:
    """Exact count of d-subsets X of [1..n] with |Sigma(X)| <= bound, by full
    enumeration -- the desk-scale counterpart of the counting lemma."""
    if n > COUNT_N_CAP or d > COUNT_D_CAP:
        raise CapacityError(f"enumeration capped at n<={COUNT_N_CAP}, d<={COUNT_D_CAP}")
    if d < 0 or n < 0:
        raise InputError("need nonnegative n and d")
    import itertools

    count = 0
    for combo in itertools.combinations(range(1, n + 1), d):
        if _sums_mask(combo).bit_count() <= bound:
            count += 1
    return count


@dataclass(frozen=True)
class ExperimentReport:
    n: int
    delta: float
    seed: int
    dims: tuple[int, ...]
    certified: bool
    comparison_c: float

    @property
    def min(self) -> int:
        return min(self.dims)

    @property
    def median(self) -> float:
        return statistics.median(self.dims)

    @property
    def max(self) -> int:
        return max(self.dims)

    @property
    def comparison_line(self) -> float:
        """c sqrt(log2 n), the threshold shape the theorem talks about."""
        return self.comparison_c * math.sqrt(math.log2(self.n))

    def tsv(self) -> str:
        rows = ["trial\tdim"]
        rows += [f"{i}\t{dim}" for i, dim in enumerate(self.dims)]
        return "\n".join(rows) + "\n"


def trial_subset(n: int, delta: float, seed: int, trial: int) -> list[int]:
    """Element i of [1..n] kept with probability delta; the stream is derived
    from (seed, trial) so parallel and serial runs agree exactly."""
    rng = random.Random(f"{seed}:{trial}")
    return [v for v in range(1, n + 1) if rng.random() < delta]


def random_subset_experiment(
    n: int,
    delta: float,
    trials: int,
    seed: int,
    d_max: int = 12,
    max_nodes: Optional[int] = None,
    comparison_c: float = 1.0,
    jobs: int = 1,
) -> ExperimentReport:
    """Sample `trials` random subsets of [1..n] at density delta and measure
    the maximum Hilbert-cube dimension of each."""
    if not 0 <= delta <= 1:
        raise InputError("delta must be in [0, 1]")

    def one(t: int) -> CubeDimension:
        return max_cube_dimension(trial_subset(n, delta, seed, t), d_max, max_nodes)

    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(one, range(trials)))
    else:
        results = [one(t) for t in range(trials)]
    return ExperimentReport(
        n,
        delta,
        seed,
        tuple(r.value for r in results),
        all(r.certified for r in results),
        comparison_c,
    )
