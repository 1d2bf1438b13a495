"""Large induced star forests in sparse bipartite graphs.

The guarantee is (1/2 + delta) n vertices with delta = (2^7 d^2)^(-4d) for a
bipartite graph of average degree at most d.  Delta underflows any practical
float already at d = 3, so every threshold here is exact rational arithmetic.

The round structure mirrors the proof it comes from: nested degree-threshold
sets Y_i inside the larger side, a round whose fresh high-degree vertices
touch at most n/8 edges (one must exist by edge counting), and a greedy pick
of low-degree centers on the other side that share no neighbors outside the
frozen set Y_{i-1}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Optional

from .errors import InputError
from .graphs import Graph, bipartition, is_induced_star_forest, iter_bits


@dataclass(frozen=True)
class RoundRecord:
    index: int
    delta_i: Fraction
    d_i: Fraction
    y_mask: int  # Y_i as a bitmask
    e_i: int  # edges meeting Y_i minus Y_{i-1}


@dataclass(frozen=True)
class StarForestTrace:
    """Full audit trail of one extraction run."""

    d: int
    delta: Fraction
    x_mask: int
    y_mask: int
    rounds: tuple[RoundRecord, ...]
    chosen_round: Optional[int]
    centers: tuple[int, ...]
    output: tuple[int, ...]

    def tsv_rounds(self) -> str:
        rows = ["round\tdelta_i\td_i\t|Y_i|\te_i"]
        for r in self.rounds:
            rows.append(
                f"{r.index}\t{r.delta_i}\t{r.d_i}\t{r.y_mask.bit_count()}\t{r.e_i}"
            )
        return "\n".join(rows) + "\n"


def star_forest_delta(d: int) -> Fraction:
    return Fraction(1, (2**7 * d * d) ** (4 * d))


def large_star_forest(g: Graph, d: int) -> tuple[tuple[int, ...], StarForestTrace]:
    """An induced star forest on >= (1/2 + delta) n vertices.

    Requires g bipartite with average degree <= d (both checked).  The output
    is re-checked through is_induced_star_forest before returning.
    """
    if d < 1:
        raise InputError("degree parameter must be a positive integer")
    n = g.n
    sides = bipartition(g)
    if sides is None:
        raise InputError("graph is not bipartite")
    if 2 * g.m > d * n:
        raise InputError(f"average degree {2 * g.m / n:.3f} exceeds d={d}")

    delta = star_forest_delta(d)
    target = ceil_frac((Fraction(1, 2) + delta) * n)

    side0, side1 = sides
    if side1.bit_count() > side0.bit_count():
        x_mask, y_mask = side0, side1
    elif side0.bit_count() > side1.bit_count():
        x_mask, y_mask = side1, side0
    else:
        # tie: Y is the side containing vertex 0 (side0 by construction)
        x_mask, y_mask = side1, side0

    if y_mask.bit_count() >= target:
        out = tuple(iter_bits(y_mask))
        trace = StarForestTrace(d, delta, x_mask, y_mask, (), None, (), out)
        assert is_induced_star_forest(g, out)
        return out, trace

    deg = [g.degree(v) for v in range(n)]
    rounds: list[RoundRecord] = []
    prev_y = 0
    chosen: Optional[int] = None
    for i in range(1, 4 * d + 1):
        delta_i = delta + Fraction(prev_y.bit_count(), n)
        d_i = 1 / (2**7 * d * delta_i)
        y_i = prev_y
        for v in iter_bits(y_mask & ~prev_y):
            if deg[v] >= d_i:
                y_i |= 1 << v
        fresh = y_i & ~prev_y
        e_i = sum(deg[v] for v in iter_bits(fresh))
        rounds.append(RoundRecord(i, delta_i, d_i, y_i, e_i))
        if 8 * e_i <= n:
            chosen = i
            break
        prev_y = y_i
    assert chosen is not None, "edge counting guarantees a light round within 4d"

    rec = rounds[-1]
    frozen = rounds[-2].y_mask if len(rounds) >= 2 else 0  # Y_{i-1}
    fresh = rec.y_mask & ~frozen
    # X_i: no neighbor among the fresh high-degree vertices
    x_i = [v for v in iter_bits(x_mask) if not g.adj[v] & fresh]
    assert 16 * len(x_i) >= n, "X_i must keep at least n/8 vertices... times 2"
    # X_i': degree at most 8d
    x_prime = [v for v in x_i if deg[v] <= 8 * d]
    assert 16 * len(x_prime) >= n, "at least half of X_i has degree <= 8d"

    centers: list[int] = []
    alive = set(x_prime)
    for v in x_prime:  # ascending id
        if v not in alive:
            continue
        centers.append(v)
        outside = g.adj[v] & ~frozen
        blocked = 0
        for y in iter_bits(outside):
            blocked |= g.adj[y]
        alive -= {u for u in alive if (blocked >> u) & 1}

    out_mask = y_mask & ~frozen
    for c in centers:
        out_mask |= 1 << c
    out = tuple(iter_bits(out_mask))
    trace = StarForestTrace(
        d, delta, x_mask, y_mask, tuple(rounds), chosen, tuple(centers), out
    )
    assert len(out) >= target, f"output {len(out)} below target {target}"
    assert is_induced_star_forest(g, out)
    return out, trace


def ceil_frac(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def check_trace(g: Graph, trace: StarForestTrace) -> tuple[bool, str]:
    """Audit the recorded rounds: nesting, the delta/d recurrences, the
    delta_{i+1} <= 2^7 d^2 delta_i growth chain, and center degrees."""
    d = trace.d
    n = g.n
    if trace.delta != star_forest_delta(d):
        return False, "delta mismatch"
    prev = 0
    prev_delta: Optional[Fraction] = None
    for r in trace.rounds:
        if r.y_mask & prev != prev:
            return False, f"round {r.index}: Y not nested"
        want_delta = trace.delta + Fraction(prev.bit_count(), n)
        if r.delta_i != want_delta:
            return False, f"round {r.index}: delta_i mismatch"
        if r.d_i != 1 / (2**7 * d * r.delta_i):
            return False, f"round {r.index}: d_i mismatch"
        if prev_delta is not None and r.delta_i > 2**7 * d * d * prev_delta:
            return False, f"round {r.index}: delta growth chain violated"
        prev_delta = r.delta_i
        prev = r.y_mask
    frozen = trace.rounds[-2].y_mask if len(trace.rounds) >= 2 else 0
    for j, c in enumerate(trace.centers):
        if g.degree(c) > 8 * d:
            return False, f"center {c} has degree {g.degree(c)} > 8d"
        for c2 in trace.centers[j + 1 :]:
            if g.adj[c] & g.adj[c2] & ~frozen:
                return False, f"centers {c},{c2} share a neighbor outside Y_(i-1)"
    return True, "ok"
