"""Builder-Painter games: plans, wins, transcripts, the capacity wall."""

import io

import pytest

from exlab.catalog import all_trees
from exlab.errors import ProtocolError
from exlab.graphs import Graph, complete_graph, degeneracy_ordering, path_graph, star_graph
from exlab.online import (
    BuilderPlan,
    GameTranscript,
    InteractivePainter,
    Painter,
    ScheduleCapacityError,
    builder_plan,
    format_transcript,
    make_painter,
    parse_transcript,
    run_game,
    verify_transcript,
)


class TestPlan:
    def test_p3_q2_schedule(self):
        plan = builder_plan(path_graph(3), 2)
        assert (plan.s, plan.t) == (1, 3)
        assert plan.n_sched == (950, 118, 14, 1)
        assert plan.m_sched == (475, 59, 7)

    def test_schedule_strictly_decreasing(self):
        for q in (2, 3, 4):
            plan = builder_plan(path_graph(4), q)
            assert all(a > b for a, b in zip(plan.n_sched, plan.n_sched[1:]))

    def test_d2_capacity_report(self):
        with pytest.raises(ScheduleCapacityError) as exc:
            builder_plan(complete_graph(3), 2)
        assert exc.value.query == "r_3(12; 8)"

    def test_d2_q3(self):
        with pytest.raises(ScheduleCapacityError) as exc:
            builder_plan(complete_graph(3), 3)
        assert exc.value.s == 3 * 2 - 2


class TestGames:
    def test_k2_one_move(self):
        for spec in ("fixed:1", "cycling", "random:3"):
            t = run_game(complete_graph(2), 2, make_painter(spec))
            assert t.outcome == "win" and len(t.moves) == 1
            assert verify_transcript(t)

    def test_p3_literal_vs_cycler(self):
        t = run_game(path_graph(3), 2, make_painter("cycling"), mode="literal")
        assert t.outcome == "win"
        assert verify_transcript(t)
        board = Graph.from_edges(
            t.n_board, [(u, v) for u, v, _ in t.moves]
        )
        assert degeneracy_ordering(board)[0] <= 1  # forest

    def test_star_q3(self):
        t = run_game(star_graph(3), 3, make_painter("random:0"))
        assert t.outcome == "win" and verify_transcript(t)
        assert t.builder_degeneracy_bound == 1

    def test_forest_target(self):
        target = Graph.from_edges(4, [(0, 1), (2, 3)])
        t = run_game(target, 2, make_painter("cycling"))
        assert t.outcome == "win" and verify_transcript(t)

    def test_single_vertex_target(self):
        t = run_game(Graph.from_edges(1, []), 2, make_painter("fixed:0"))
        assert t.outcome == "win" and len(t.moves) == 0

    def test_trees_to_5_all_painters_both_q(self):
        trees = [t for t in all_trees(5) if t.n >= 2]
        for q in (2, 3):
            for tree in trees:
                for spec in ("fixed:0", "greedy", "cycling", "random:1", "random:2"):
                    t = run_game(tree, q, make_painter(spec))
                    assert t.outcome == "win", (tree.n, q, spec)
                    assert verify_transcript(t), (tree.n, q, spec)

    def test_q4_small_tree(self):
        t = run_game(path_graph(4), 4, make_painter("cycling"))
        assert t.outcome == "win" and verify_transcript(t)
        assert t.builder_degeneracy_bound == 1

    def test_pigeonhole_subsequence(self):
        t = run_game(path_graph(5), 3, make_painter("cycling"))
        assert t.outcome == "win"
        if t.win_path == "schedule":
            wins = [c for c in t.round_colors if c == t.witness_color]
            assert len(wins) >= t.target.n - 1

    def test_replay_determinism(self):
        a = run_game(path_graph(5), 2, make_painter("random:9"))
        b = run_game(path_graph(5), 2, make_painter("random:9"))
        assert format_transcript(a) == format_transcript(b)

    def test_budget_exhaustion(self):
        t = run_game(path_graph(6), 3, make_painter("cycling"), budget=5)
        assert t.outcome == "exhausted" and len(t.moves) <= 5
        assert verify_transcript(t)

    def test_bad_painter_color(self):
        class Bad(Painter):
            def color(self, u, v, game):
                return 99

        with pytest.raises(ProtocolError):
            run_game(path_graph(3), 2, Bad())

    def test_d2_game_aborts(self):
        with pytest.raises(ScheduleCapacityError):
            run_game(complete_graph(3), 2, make_painter("fixed:0"))


class TestInteractive:
    def test_prompt_loop(self, monkeypatch, capsys):
        answers = iter(["zzz", "7", "1", "0", "1", "0", "1", "0", "1", "0"] + ["0"] * 500)
        monkeypatch.setattr("builtins.input", lambda prompt: next(answers))
        t = run_game(path_graph(3), 2, InteractivePainter(), mode="adaptive")
        assert t.outcome == "win"
        out = capsys.readouterr().out
        assert "enter an integer in [0, 2)" in out


class TestTranscripts:
    def test_roundtrip(self):
        t = run_game(path_graph(4), 2, make_painter("random:4"))
        text = format_transcript(t)
        back = parse_transcript(text, path_graph(4))
        assert back.moves == t.moves
        assert back.witness == t.witness
        assert verify_transcript(back)

    def test_recolored_witness_edge_fails(self):
        t = run_game(path_graph(3), 2, make_painter("fixed:0"))
        u, v, c = t.moves[-1]
        tampered = GameTranscript(
            t.target, t.q, t.moves[:-1] + ((u, v, c ^ 1),), t.outcome, t.witness,
            t.witness_color, t.budget, t.n_board, t.round_colors,
        )
        # either the witness breaks or the tampering touched a non-witness move
        if not verify_transcript(tampered):
            return
        tampered2 = GameTranscript(
            t.target, t.q, t.moves, t.outcome, t.witness,
            (t.witness_color or 0) ^ 1, t.budget, t.n_board, t.round_colors,
        )
        assert not verify_transcript(tampered2)

    def test_excess_degeneracy_fails(self):
        # inject a clique on fresh vertices to push board degeneracy past 1
        t = run_game(path_graph(3), 2, make_painter("fixed:0"))
        base = t.n_board
        extra = [
            (base + a, base + b, 0) for a in range(4) for b in range(a + 1, 4)
        ]
        fat = GameTranscript(
            t.target, t.q, t.moves + tuple(extra), t.outcome, t.witness,
            t.witness_color, t.budget, base + 4, t.round_colors,
        )
        assert not verify_transcript(fat)

    def test_duplicate_edge_fails(self):
        t = run_game(path_graph(3), 2, make_painter("fixed:0"))
        dup = GameTranscript(
            t.target, t.q, t.moves + (t.moves[0],), t.outcome, t.witness,
            t.witness_color, t.budget, t.n_board, t.round_colors,
        )
        assert not verify_transcript(dup)

    def test_hash_mismatch_rejected(self):
        t = run_game(path_graph(3), 2, make_painter("fixed:0"))
        text = format_transcript(t)
        from exlab.errors import InputError

        with pytest.raises(InputError):
            parse_transcript(text, star_graph(3))
