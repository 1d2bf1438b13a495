"""K_s-free subsets of K_{s+1}-free 3-uniform hypergraphs, by the
vertex-sequence process with an alpha-split refinement schedule.

The process grows a sequence v_1, v_2, ... and a surviving set V such that
for every pair of sequence vertices, the triples through any later sequence
vertex or any survivor are homogeneous (all edges or all non-edges); the
all-edges pairs form the auxiliary graph, which stays K_s-free as long as a
survivor exists.  Exit paths: a high-degree auxiliary vertex donates its
neighborhood, or the sequence runs to its cap and a greedy independent set
of the auxiliary graph is taken; either way the output is re-verified
against the hypergraph before it is returned.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import InputError
from .graphs import Graph, UniformHypergraph, contains_clique, iter_bits

PRECONDITION_WORK_CAP = 5_000_000


@dataclass(frozen=True)
class Refinement:
    step: int  # the sweep that produced this (the ell of v_{ell+1})
    j: int  # pair index within the sweep
    before: int
    after: int
    kept_neighborhood: bool


@dataclass(frozen=True)
class ProcessResult:
    subset: tuple[int, ...]  # W, verified K_s^(3)-free in h
    exit_path: str  # "all" | "neighborhood" | "independent_set" | "depleted"
    achieved: int
    target: int
    sequence: tuple[int, ...]
    survivors: tuple[int, ...]
    aux: Graph  # auxiliary graph on sequence positions
    alpha: Fraction
    refinements: tuple[Refinement, ...]


def default_alpha(p: int, m: int) -> Fraction:
    """(p/m) log2(m/p), clamped into (0, 1/2]."""
    if m <= p:
        return Fraction(1, 2)
    a = Fraction(p, m) * Fraction(math.log2(m / p)).limit_denominator(10**6)
    if a <= 0:
        a = Fraction(1, len(str(m)) * m)
    return min(a, Fraction(1, 2))


def default_target(n: int) -> int:
    """The asymptotic shape (log n / log log log n)^(1/3) with unit constant;
    a tunable at desk scale."""
    if n < 4:
        return 2
    lg = math.log2(n)
    lll = max(math.log2(max(math.log2(max(math.log2(n), 2.0)), 2.0)), 1.0)
    return max(2, round((lg / lll) ** (1 / 3)))


def default_maxlen(p: int) -> int:
    """(log log p / log p) p^2 with the Shearer constant treated as 1."""
    if p < 3:
        return p * p
    return max(p + 1, round(math.log2(math.log2(p) + 1) / math.log2(p) * p * p))


def find_ks3_free_subset(
    h: UniformHypergraph,
    s: int,
    p: Optional[int] = None,
    alpha: Optional[Fraction] = None,
    m: Optional[int] = None,
    check_precondition: bool = True,
    check_aux_every_step: bool = False,
) -> ProcessResult:
    """A vertex set W with h[W] free of K_s^(3), of size >= p when the run
    reaches an exit before depleting (the result reports what was achieved).
    """
    if h.k != 3:
        raise InputError(f"process needs a 3-uniform hypergraph, got k={h.k}")
    if s < 3:
        raise InputError("s must be at least 3")
    n = h.n
    p = default_target(n) if p is None else p
    m = default_maxlen(p) if m is None else m
    alpha = default_alpha(p, m) if alpha is None else Fraction(alpha)
    if not (0 < alpha <= Fraction(1, 2)):
        raise InputError(f"alpha must be in (0, 1/2], got {alpha}")

    if check_precondition:
        if math.comb(n, s + 1) <= PRECONDITION_WORK_CAP:
            if contains_clique(h, s + 1) is not None:
                raise InputError(f"hypergraph contains a K_{s + 1}^(3)")
        else:
            warnings.warn(
                f"K_{s + 1}^(3)-freeness not verified (C({n},{s + 1}) too large); "
                "trusting the caller",
                stacklevel=2,
            )

    if not h.edges:
        return ProcessResult(
            tuple(range(n)), "all", n, p, (), tuple(range(n)), Graph.from_edges(0, []),
            alpha, (),
        )

    pair_nbrs: dict[tuple[int, int], set[int]] = {}
    for a, b, c in h.edges:
        pair_nbrs.setdefault((a, b), set()).add(c)
        pair_nbrs.setdefault((a, c), set()).add(b)
        pair_nbrs.setdefault((b, c), set()).add(a)

    sequence: list[int] = []
    survivors = set(range(n))
    aux_edges: list[tuple[int, int]] = []  # on sequence positions
    aux_deg: list[int] = []
    refinements: list[Refinement] = []

    def result(path: str, positions: list[int]) -> ProcessResult:
        subset = tuple(sorted(sequence[i] for i in positions))
        _verify_output(h, subset, s)
        return ProcessResult(
            subset, path, len(subset), p, tuple(sequence), tuple(sorted(survivors)),
            Graph.from_edges(len(sequence), aux_edges), alpha, tuple(refinements),
        )

    while len(sequence) < m and survivors:
        v = min(survivors)
        survivors.discard(v)
        ell = len(sequence)
        current = survivors
        new_edges = []
        for j in range(ell):
            nbrs = {
                w
                for w in current
                if w in pair_nbrs.get(_key(sequence[j], v), _EMPTY)
            }
            before = len(current)
            if len(nbrs) >= alpha * before:
                kept, is_nb = nbrs, True
            else:
                kept, is_nb = current - nbrs, False
            refinements.append(Refinement(ell, j, before, len(kept), is_nb))
            assert len(kept) >= min(alpha, 1 - alpha) * before - 1
            if is_nb:
                new_edges.append((j, ell))
            current = kept
        sequence.append(v)
        survivors = current
        for j, l2 in new_edges:
            aux_edges.append((j, l2))
        while len(aux_deg) < len(sequence):
            aux_deg.append(0)
        for j, l2 in new_edges:
            aux_deg[j] += 1
            aux_deg[l2] += 1
        if check_aux_every_step and survivors:
            snapshot = ProcessResult(
                (), "", 0, p, tuple(sequence), tuple(sorted(survivors)),
                Graph.from_edges(len(sequence), aux_edges), alpha, (),
            )
            assert aux_is_ks_free(snapshot, s), "auxiliary graph grew a K_s"
        hi = max(range(len(sequence)), key=lambda i: (aux_deg[i], -i), default=None)
        if hi is not None and aux_deg[hi] >= p:
            nbhd = sorted(
                {a for a, b in aux_edges if b == hi} | {b for a, b in aux_edges if a == hi}
            )
            return result("neighborhood", nbhd)
        if not survivors:
            aux = Graph.from_edges(len(sequence), aux_edges)
            picked = greedy_independent_set(aux)
            return result("depleted", list(picked))

    aux = Graph.from_edges(len(sequence), aux_edges)
    picked = greedy_independent_set(aux)
    return result("independent_set", list(picked))


_EMPTY: frozenset[int] = frozenset()


def _key(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


def _verify_output(h: UniformHypergraph, subset: tuple[int, ...], s: int) -> None:
    sub_edges = [e for e in h.edges if all(v in set(subset) for v in e)]
    index = {v: i for i, v in enumerate(subset)}
    local = UniformHypergraph.from_edges(
        len(subset), 3, [tuple(index[v] for v in e) for e in sub_edges]
    )
    witness = contains_clique(local, s) if len(subset) >= s else None
    assert witness is None, f"output contains a K_{s}^(3): {witness}"


def aux_is_ks_free(result: ProcessResult, s: int) -> bool:
    """The structural invariant: the auxiliary graph never holds a K_s while
    a survivor remains (a K_s plus any survivor is a K_{s+1}^(3))."""
    g = result.aux
    if g.n < s:
        return True

    def grow(mask: int, size: int, start: int) -> bool:
        if size == s:
            return True
        for w in range(start, g.n):
            if (mask >> w) & 1 and grow(mask & g.adj[w], size + 1, w + 1):
                return True
        return False

    return not grow((1 << g.n) - 1, 0, 0)


def greedy_independent_set(g: Graph) -> tuple[int, ...]:
    """Independent set by repeated minimum-degree selection (lowest id on
    ties) and closed-neighborhood deletion; size >= n/(Delta+1), asserted."""
    n = g.n
    alive = (1 << n) - 1
    deg = [g.degree(v) for v in range(n)]
    picked = []
    while alive:
        best = min((deg[v], v) for v in iter_bits(alive))[1]
        picked.append(best)
        removed = (g.adj[best] | (1 << best)) & alive
        alive &= ~removed
        for u in iter_bits(alive):
            deg[u] = (g.adj[u] & alive).bit_count()
    delta = max((g.degree(v) for v in range(n)), default=0)
    if n:
        assert len(picked) * (delta + 1) >= n, "greedy bound violated"
    for i, u in enumerate(picked):
        for w in picked[i + 1 :]:
            assert not g.has_edge(u, w)
    return tuple(sorted(picked))
