"""Builder-Painter online Ramsey games: the degeneracy-bounded Builder
strategy, pluggable Painters, transcripts, and post-hoc verification.

The Builder forces a monochromatic copy of a d-degenerate target while
drawing only a (qd - (q-1))-degenerate board.  For d = 1 (forests) the
schedule's 1-uniform Ramsey numbers are exact pigeonhole values and games
are playable; for d >= 2 the schedule needs genuine hypergraph Ramsey
numbers (s = qd-(q-1) >= 3) that no oracle reaches, and the engine aborts
with a capacity report naming the exact query.

Two execution modes share the same move mechanics (join a vertex to a fresh
private pad, bucket by Painter's response, promote on the pigeonhole
pattern, embed the target along its degenerate ordering):

* literal: materializes the worst-case schedule sizes n_i, m_i and runs the
  rounds eagerly.  Feasible only when the total move count is small (the
  worst-case sizes grow like (2q^2 d)^t, e.g. ~2.5e8 board vertices for a
  6-vertex tree at q = 2), so it is picked automatically for tiny targets.
* adaptive: demand-driven.  Vertices live in pools keyed by their per-color
  promotion vector; each draw joins two same-vector vertices, the painted
  color promotes one of them and consumes the other as its private pad.  A
  vertex whose vector reaches n-1 in some color carries a monochromatic
  copy of every n-vertex forest in its pad tree (the paper's pigeonhole
  over round colors, executed per trajectory), which bounds every game by
  q(n-2)+1 promotions per vertex and ~2^t moves against any painter.
"""

from __future__ import annotations

import hashlib
import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

from .errors import CapacityError, InputError, ProtocolError
from .graphs import Graph, UniformHypergraph, degeneracy_ordering, format_graph, iter_bits
from .ramsey import RamseyQuery, Unknown, hypergraph_ramsey_pigeonhole, ramsey_number

LITERAL_MOVE_CEILING = 5000


# --- schedule -----------------------------------------------------------------


class ScheduleCapacityError(CapacityError):
    """The plan needs an r_s value beyond any oracle; names the exact query."""

    def __init__(self, s: int, ell: int, colors: int, cap: int):
        self.s = s
        self.ell = ell
        self.colors = colors
        self.cap = cap
        super().__init__(
            f"schedule requires r_{s}({ell}; {colors}), beyond the oracle cap {cap}"
        )

    @property
    def query(self) -> str:
        return f"r_{self.s}({self.ell}; {self.colors})"


@dataclass(frozen=True)
class BuilderPlan:
    """The symbolic worst-case schedule: n_t = d and, reading backward,
    m_{t-i} = r_s(qd(n_{t-i+1}+1); q^s), n_{t-i} = m_{t-i} + C(m_{t-i}, s)."""

    d: int
    q: int
    s: int
    t: int
    n_sched: tuple[int, ...]  # n_0 .. n_t
    m_sched: tuple[int, ...]  # m_0 .. m_{t-1}

    @property
    def total_literal_moves(self) -> int:
        return sum(self.m_sched)


def builder_plan(target: Graph, q: int, oracle_cap: int = 13) -> BuilderPlan:
    """Compute the schedule for the target's degeneracy.  For s = 1 the r_1
    values are pigeonhole-exact; for s >= 2 the r_s query is attempted
    through the exhaustive oracle under `oracle_cap` and the failure is
    reported as ScheduleCapacityError."""
    if q < 1:
        raise InputError("need at least one color")
    n = target.n
    if n == 0:
        raise InputError("empty target")
    d, _ = degeneracy_ordering(target)
    d = max(d, 1)
    s = q * d - (q - 1)
    t = max(q * (n - 1) - (q - 1), 1)

    n_sched = [0] * (t + 1)
    m_sched = [0] * t
    n_sched[t] = d
    for i in range(1, t + 1):
        ell = q * d * (n_sched[t - i + 1] + 1)
        colors = q**s
        if s == 1:
            m = hypergraph_ramsey_pigeonhole(ell, colors)
        else:
            cap = max(ell, oracle_cap)
            verdict = _attempt_hypergraph_ramsey(s, ell, colors, cap)
            if isinstance(verdict, Unknown):
                raise ScheduleCapacityError(s, ell, colors, verdict.cap)
            m = verdict
        m_sched[t - i] = m
        n_sched[t - i] = m + _binom(m, s)
    for i in range(t):
        assert n_sched[i] > n_sched[i + 1], "schedule must strictly decrease"
    return BuilderPlan(d, q, s, t, tuple(n_sched), tuple(m_sched))


def _attempt_hypergraph_ramsey(s: int, ell: int, colors: int, cap: int) -> Union[int, Unknown]:
    complete = UniformHypergraph.from_edges(
        ell, s, list(itertools.combinations(range(ell), s))
    )
    try:
        return ramsey_number(RamseyQuery(complete, colors, cap), node_limit=2_000_000)
    except CapacityError:
        return Unknown(cap)


def _binom(n: int, k: int) -> int:
    import math

    return math.comb(n, k)


# --- painters -----------------------------------------------------------------


class Painter:
    """Colors each presented edge; must return a value in [0, q)."""

    name = "painter"

    def color(self, u: int, v: int, game: "GameView") -> int:  # pragma: no cover
        raise NotImplementedError


class RandomPainter(Painter):
    def __init__(self, seed: int):
        self.seed = seed
        self.rng = random.Random(f"painter:{seed}")
        self.name = f"random:{seed}"

    def color(self, u, v, game):
        return self.rng.randrange(game.q)


class FixedPainter(Painter):
    def __init__(self, c: int):
        self.c = c
        self.name = f"fixed:{c}"

    def color(self, u, v, game):
        return self.c


class CyclingPainter(Painter):
    """Scripted adversary: rotates through the colors, which balances every
    bucket and forces the full pigeonhole depth."""

    def __init__(self, offset: int = 0):
        self.count = offset
        self.name = f"cycling:{offset}"

    def color(self, u, v, game):
        c = self.count % game.q
        self.count += 1
        return c


class GreedyAvoidPainter(Painter):
    """1-ply lookahead: picks the first color that does not complete a
    monochromatic target right now, else color 0."""

    name = "greedy-avoid"

    def color(self, u, v, game):
        for c in range(game.q):
            if not game.would_complete(u, v, c):
                return c
        return 0


class InteractivePainter(Painter):
    """Reads a color from the operator's console for every move."""

    name = "interactive"

    def color(self, u, v, game):
        while True:
            raw = input(f"edge {u}-{v} color? ")
            try:
                c = int(raw.strip())
            except ValueError:
                print(f"enter an integer in [0, {game.q})")
                continue
            if 0 <= c < game.q:
                return c
            print(f"enter an integer in [0, {game.q})")


def make_painter(spec: str) -> Painter:
    """Parse `random:SEED`, `fixed:C`, `cycling[:OFFSET]`, `greedy`,
    `interactive`."""
    kind, _, arg = spec.partition(":")
    if kind == "random":
        return RandomPainter(int(arg or 0))
    if kind == "fixed":
        return FixedPainter(int(arg or 0))
    if kind == "cycling":
        return CyclingPainter(int(arg or 0))
    if kind in ("greedy", "greedy-avoid"):
        return GreedyAvoidPainter()
    if kind == "interactive":
        return InteractivePainter()
    raise InputError(f"unknown painter spec: {spec!r}")


# --- transcripts ----------------------------------------------------------------


@dataclass(frozen=True)
class GameTranscript:
    target: Graph
    q: int
    moves: tuple[tuple[int, int, int], ...]
    outcome: str  # "win" | "exhausted"
    witness: Optional[tuple[int, ...]]  # board vertex per target vertex
    witness_color: Optional[int]
    budget: int
    n_board: int
    round_colors: tuple[int, ...]  # promotion/round colors, pigeonhole audit
    win_path: Optional[str] = None  # "early" | "schedule"

    @property
    def builder_degeneracy_bound(self) -> int:
        d = max(degeneracy_ordering(self.target)[0], 1)
        return self.q * d - (self.q - 1)


def target_hash(target: Graph) -> str:
    return hashlib.sha256(format_graph(target).encode()).hexdigest()[:12]


def format_transcript(t: GameTranscript) -> str:
    lines = [f"g {t.q} {target_hash(t.target)}"]
    lines += [f"e {u + 1} {v + 1} {c}" for u, v, c in t.moves]
    if t.outcome == "win":
        assert t.witness is not None
        lines.append("w " + " ".join(str(v + 1) for v in t.witness) + f" {t.witness_color}")
    else:
        lines.append(f"x {t.budget}")
    return "\n".join(lines) + "\n"


def parse_transcript(text: str, target: Graph) -> GameTranscript:
    moves = []
    outcome = "exhausted"
    witness = None
    witness_color = None
    budget = 0
    q = 0
    for raw in text.splitlines():
        tok = raw.split()
        if not tok:
            continue
        if tok[0] == "g":
            q = int(tok[1])
            if tok[2] != target_hash(target):
                raise InputError("transcript hash does not match the target file")
        elif tok[0] == "e":
            moves.append((int(tok[1]) - 1, int(tok[2]) - 1, int(tok[3])))
        elif tok[0] == "w":
            witness = tuple(int(x) - 1 for x in tok[1:-1])
            witness_color = int(tok[-1])
            outcome = "win"
        elif tok[0] == "x":
            budget = int(tok[1])
    n_board = 1 + max((max(u, v) for u, v, _ in moves), default=-1)
    return GameTranscript(
        target, q, tuple(moves), outcome, witness, witness_color, budget, n_board, ()
    )


def verify_transcript(t: GameTranscript) -> bool:
    """Replay the moves, recheck protocol, witness monochromaticity, and the
    qd-(q-1) board degeneracy bound."""
    seen: set[tuple[int, int]] = set()
    edges = []
    for u, v, c in t.moves:
        if u == v or not (0 <= c < t.q):
            return False
        key = (min(u, v), max(u, v))
        if key in seen:
            return False
        seen.add(key)
        edges.append(key)
    n = t.n_board
    if any(u >= n or v >= n for u, v in edges):
        return False
    board = Graph.from_edges(n, edges)
    d_board, _ = degeneracy_ordering(board)
    if d_board > t.builder_degeneracy_bound:
        return False
    if t.outcome != "win":
        return len(t.moves) <= t.budget
    if t.witness is None or t.witness_color is None:
        return False
    if len(t.witness) != t.target.n or len(set(t.witness)) != t.target.n:
        return False
    colors = {(min(u, v), max(u, v)): c for u, v, c in t.moves}
    for a, b in t.target.edges():
        u, v = t.witness[a], t.witness[b]
        if colors.get((min(u, v), max(u, v))) != t.witness_color:
            return False
    return True


# --- the game engines -----------------------------------------------------------


class GameView:
    """What a painter is allowed to see/ask."""

    def __init__(self, engine: "_EngineBase"):
        self._engine = engine

    @property
    def q(self) -> int:
        return self._engine.q

    @property
    def moves(self) -> list[tuple[int, int, int]]:
        return self._engine.moves

    def would_complete(self, u: int, v: int, c: int) -> bool:
        return self._engine.completes_target(u, v, c)


def _forest_to_tree(target: Graph) -> Graph:
    """Join the components of a degeneracy-1 target into one tree; a mono
    copy of the completion contains a mono copy of the target."""
    comps: list[int] = []
    seen = 0
    for v in range(target.n):
        if (seen >> v) & 1:
            continue
        comps.append(v)
        stack = [v]
        seen |= 1 << v
        while stack:
            x = stack.pop()
            for y in iter_bits(target.adj[x]):
                if not (seen >> y) & 1:
                    seen |= 1 << y
                    stack.append(y)
    extra = [(comps[0], c) for c in comps[1:]]
    return Graph.from_edges(target.n, list(target.edges()) + extra)


class _EngineBase:
    def __init__(self, target: Graph, q: int, painter: Painter, budget: int):
        self.target = target
        self.tree = _forest_to_tree(target)
        self.q = q
        self.painter = painter
        self.budget = budget
        self.moves: list[tuple[int, int, int]] = []
        self.adj_color: list[dict[int, set[int]]] = [dict() for _ in range(q)]
        self.n_board = 0
        self.view = GameView(self)
        self.early_witness: Optional[tuple[tuple[int, ...], int]] = None

    def fresh_vertex(self) -> int:
        v = self.n_board
        self.n_board += 1
        return v

    def draw(self, u: int, v: int) -> int:
        if len(self.moves) >= self.budget:
            raise _BudgetExhausted()
        c = self.painter.color(u, v, self.view)
        if not isinstance(c, int) or not (0 <= c < self.q):
            raise ProtocolError(f"painter returned {c!r}, not a color in [0,{self.q})")
        self.moves.append((u, v, c))
        self.adj_color[c].setdefault(u, set()).add(v)
        self.adj_color[c].setdefault(v, set()).add(u)
        if self.early_witness is None:
            hit = self._tree_copy_using(u, v, c)
            if hit is not None:
                self.early_witness = (hit, c)
        return c

    def completes_target(self, u: int, v: int, c: int) -> bool:
        adj = self.adj_color[c]
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
        try:
            return self._tree_copy_using(u, v, c) is not None
        finally:
            adj[u].discard(v)
            adj[v].discard(u)

    def _tree_copy_using(self, u: int, v: int, c: int) -> Optional[tuple[int, ...]]:
        """A mono-c copy of the (component-joined) tree whose image uses the
        edge (u, v), or None.  Candidates come from color-c adjacency only,
        with degree pruning, so the check stays local."""
        tree = self.tree
        if tree.n == 1:
            return (u,)
        adj = self.adj_color[c]
        tdeg = [tree.degree(x) for x in range(tree.n)]

        for a, b in tree.edges():
            for fa, fb in ((u, v), (v, u)):
                if len(adj.get(fa, ())) < tdeg[a] or len(adj.get(fb, ())) < tdeg[b]:
                    continue
                mapping = {a: fa, b: fb}
                order = self._embed_order(a, b)
                if self._embed_rest(order, 0, mapping, adj, tdeg):
                    return tuple(mapping[x] for x in range(tree.n))
        return None

    def _embed_order(self, a: int, b: int) -> list[tuple[int, int]]:
        # BFS order of remaining tree vertices as (vertex, parent) pairs
        tree = self.tree
        seen = {a, b}
        order = []
        queue = [a, b]
        while queue:
            x = queue.pop(0)
            for y in iter_bits(tree.adj[x]):
                if y not in seen:
                    seen.add(y)
                    order.append((y, x))
                    queue.append(y)
        return order

    def _embed_rest(self, order, idx, mapping, adj, tdeg) -> bool:
        if idx == len(order):
            return True
        x, px = order[idx]
        base = mapping[px]
        used = set(mapping.values())
        for y in adj.get(base, ()):
            if y in used or len(adj.get(y, ())) < tdeg[x]:
                continue
            mapping[x] = y
            if self._embed_rest(order, idx + 1, mapping, adj, tdeg):
                return True
            del mapping[x]
        return False

    def early_win_transcript(self, round_colors: Sequence[int]) -> "GameTranscript":
        tree_map, c = self.early_witness
        # the tree copy covers the target too (target edges are tree edges)
        return GameTranscript(
            self.target,
            self.q,
            tuple(self.moves),
            "win",
            tuple(tree_map),
            c,
            self.budget,
            self.n_board,
            tuple(round_colors),
            win_path="early",
        )


class _BudgetExhausted(Exception):
    pass


class _AdaptiveEngine(_EngineBase):
    """Demand-driven execution of the round mechanics, one promotion vector
    per vertex.  pads[c][i] of a vertex is the private pad that lifted its
    color-c level from i to i+1; that pad's own color-c level is exactly i,
    so a level-(n-1) vertex carries the full recursively-padded tree."""

    def __init__(self, target, q, painter, budget):
        super().__init__(target, q, painter, budget)
        self.vec: dict[int, tuple[int, ...]] = {}
        self.pads: dict[int, list[list[int]]] = {}
        self.pools: dict[tuple[int, ...], list[int]] = {}
        self.trajectory: dict[int, list[int]] = {}

    def spawn(self) -> int:
        v = self.fresh_vertex()
        zero = (0,) * self.q
        self.vec[v] = zero
        self.pads[v] = [[] for _ in range(self.q)]
        self.trajectory[v] = []
        self.pools.setdefault(zero, []).append(v)
        return v

    def run(self) -> GameTranscript:
        need = self.tree.n - 1
        if need == 0:
            v = self.fresh_vertex()
            return GameTranscript(
                self.target, self.q, (), "win", (v,), 0, self.budget, self.n_board, (),
                win_path="schedule",
            )
        try:
            while True:
                pool_key = self._pick_pool()
                if pool_key is None:
                    self.spawn()
                    self.spawn()
                    continue
                members = self.pools[pool_key]
                w, p = members[0], members[1]
                del members[0:2]
                if not members:
                    del self.pools[pool_key]
                c = self.draw(w, p)
                if self.early_witness is not None:
                    return self.early_win_transcript(self.trajectory[w])
                level = self.vec[w][c]
                self.pads[w][c].append(p)
                self.trajectory[w].append(c)
                # p is consumed as the private pad; w promotes
                self.vec.pop(p)
                new_vec = list(self.vec[w])
                new_vec[c] += 1
                self.vec[w] = tuple(new_vec)
                if new_vec[c] >= need:
                    return self._schedule_win(w, c)
                self.pools.setdefault(self.vec[w], []).append(w)
        except _BudgetExhausted:
            return GameTranscript(
                self.target, self.q, tuple(self.moves), "exhausted", None, None,
                self.budget, self.n_board, (),
            )

    def _pick_pool(self) -> Optional[tuple[int, ...]]:
        best = None
        for key, members in self.pools.items():
            if len(members) < 2:
                continue
            rank = (max(key), sum(key), key)
            if best is None or rank > best[0]:
                best = (rank, key)
        return best[1] if best is not None else None

    def _schedule_win(self, w: int, c: int) -> GameTranscript:
        tree = self.tree
        n = tree.n
        # level allocation: root gets n-1; each child takes the top of a
        # block sized by its subtree, recursively (fits because blocks nest)
        root = 0
        parent = [-1] * n
        children: list[list[int]] = [[] for _ in range(n)]
        sizes = [1] * n
        order = [root]
        seen = 1
        for x in order:
            for y in iter_bits(tree.adj[x]):
                if not (seen >> y) & 1:
                    seen |= 1 << y
                    parent[y] = x
                    children[x].append(y)
                    order.append(y)
        for x in reversed(order):
            for y in children[x]:
                sizes[x] += sizes[y]
        level = [0] * n
        level[root] = n - 1
        for x in order:
            top = level[x] - 1
            for y in sorted(children[x], key=lambda z: -sizes[z]):
                level[y] = top
                top -= sizes[y]
        mapping = {root: w}
        for x in order[1:]:
            px = mapping[parent[x]]
            mapping[x] = self.pads[px][c][level[x]]
        witness = tuple(mapping[x] for x in range(n))
        return GameTranscript(
            self.target, self.q, tuple(self.moves), "win", witness, c, self.budget,
            self.n_board, tuple(self.trajectory[w]), win_path="schedule",
        )


class _LiteralEngine(_EngineBase):
    """Eager execution of the worst-case schedule (s = 1 only): V_0 of size
    n_0, full W/pad rounds, first-bucket-to-threshold colors, every (qd)-th
    selection, and the subsequence embedding."""

    def __init__(self, target, q, painter, budget, plan: BuilderPlan):
        super().__init__(target, q, painter, budget)
        self.plan = plan

    def run(self) -> GameTranscript:
        plan = self.plan
        q, d = self.q, plan.d
        n = self.tree.n
        if n == 1:
            v = self.fresh_vertex()
            return GameTranscript(
                self.target, q, (), "win", (v,), 0, self.budget, self.n_board, (),
                win_path="schedule",
            )
        v_sets: list[list[int]] = [[self.fresh_vertex() for _ in range(plan.n_sched[0])]]
        pad_of: list[dict[int, int]] = [dict()]  # per round: w -> its pad
        round_colors: list[int] = []
        try:
            for i in range(1, plan.t + 1):
                prev = v_sets[-1]
                m = plan.m_sched[i - 1]
                w_set = prev[:m]
                pads = prev[m:]
                assert len(pads) >= _binom(m, 1)
                buckets: dict[int, list[int]] = {c: [] for c in range(q)}
                chosen_color: Optional[int] = None
                pad_map: dict[int, int] = {}
                threshold = q * d * (plan.n_sched[i] + 1)
                for j, w in enumerate(w_set):
                    c = self.draw(w, pads[j])
                    if self.early_witness is not None:
                        return self.early_win_transcript(round_colors)
                    pad_map[w] = pads[j]
                    buckets[c].append(w)
                    if chosen_color is None and len(buckets[c]) >= threshold:
                        chosen_color = c
                assert chosen_color is not None, "pigeonhole sizing guarantees a bucket"
                round_colors.append(chosen_color)
                m_i = sorted(buckets[chosen_color][:threshold])
                v_next = [m_i[q * d * (j + 1) - 1] for j in range(plan.n_sched[i])]
                v_sets.append(v_next)
                pad_of.append(pad_map)
        except _BudgetExhausted:
            return GameTranscript(
                self.target, q, tuple(self.moves), "exhausted", None, None,
                self.budget, self.n_board, tuple(round_colors),
            )
        return self._embed(v_sets, pad_of, round_colors)

    def _embed(self, v_sets, pad_of, round_colors) -> GameTranscript:
        n = self.tree.n
        counts: dict[int, list[int]] = {}
        for idx, c in enumerate(round_colors, start=1):
            counts.setdefault(c, []).append(idx)
        color = next(c for c, rounds in counts.items() if len(rounds) >= n - 1)
        subseq = counts[color][: n - 1]  # i_1 < ... < i_{n-1}
        # embed u_p into V_{i_{n-p}}: u_1 deepest, later vertices into pads
        order, parent = self._degenerate_order()
        mapping: dict[int, int] = {}
        mapping[order[0]] = v_sets[subseq[n - 2]][0]
        for p in range(1, n):
            up = order[p]
            ua = parent[up]
            round_idx = subseq[n - 1 - p]
            mapping[up] = pad_of[round_idx][mapping[ua]]
        witness = tuple(mapping[x] for x in range(n))
        return GameTranscript(
            self.target, self.q, tuple(self.moves), "win", witness, color,
            self.budget, self.n_board, tuple(round_colors), win_path="schedule",
        )

    def _degenerate_order(self) -> tuple[list[int], list[int]]:
        """1-degenerate (rooted-tree) order of the completed tree with the
        unique earlier neighbor of each vertex."""
        tree = self.tree
        root = 0
        order = [root]
        parent = [-1] * tree.n
        seen = 1
        for x in order:
            for y in iter_bits(tree.adj[x]):
                if not (seen >> y) & 1:
                    seen |= 1 << y
                    parent[y] = x
                    order.append(y)
        return order, parent

    def run_embedding_check(self, v_sets, pad_of, w, round_idx):  # pragma: no cover
        raise NotImplementedError


def run_game(
    target: Graph,
    q: int,
    painter: Painter,
    budget: Optional[int] = None,
    mode: str = "auto",
) -> GameTranscript:
    """Play one Builder-Painter game to completion (win or budget).

    mode `auto` picks the literal engine when the full worst-case schedule
    fits in LITERAL_MOVE_CEILING moves and the adaptive engine otherwise;
    `literal`/`adaptive` force the choice.  d >= 2 targets raise
    ScheduleCapacityError out of the plan before any move is made.
    """
    if target.n == 0:
        raise InputError("empty target")
    plan = builder_plan(target, q)
    if budget is None:
        budget = min(max(4 * 2**plan.t, 4096), 2_000_000)
    if mode == "auto":
        mode = "literal" if plan.total_literal_moves <= LITERAL_MOVE_CEILING else "adaptive"
    if mode == "literal":
        if plan.total_literal_moves > max(budget, LITERAL_MOVE_CEILING) * 20:
            raise CapacityError(
                f"literal schedule needs {plan.total_literal_moves} moves; "
                "use adaptive mode"
            )
        return _LiteralEngine(target, q, painter, budget, plan).run()
    if mode == "adaptive":
        return _AdaptiveEngine(target, q, painter, budget).run()
    raise InputError(f"unknown mode {mode!r}")
