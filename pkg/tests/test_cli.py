"""CLI: formats, exit codes, reproducibility."""

import json
from pathlib import Path

import pytest

from exlab.cli import main

GOLDEN = Path(__file__).parent / "data" / "fano_golden.txt"


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def c4_file(tmp_path):
    p = tmp_path / "c4.txt"
    p.write_text("p 4 4\n1 2\n2 3\n3 4\n4 1\n")
    return str(p)


@pytest.fixture
def p3_file(tmp_path):
    p = tmp_path / "p3.txt"
    p.write_text("p 3 2\n1 2\n2 3\n")
    return str(p)


class TestPlane:
    def test_fano_dump_matches_golden(self, capsys):
        code, out, _ = run(["plane", "--q", "2"], capsys)
        assert code == 0
        dump = "".join(ln + "\n" for ln in out.splitlines() if not ln.startswith("#"))
        assert dump == GOLDEN.read_text()

    def test_nonprime_exit_1(self, capsys):
        code, _, err = run(["plane", "--q", "4"], capsys)
        assert code == 1 and "prime" in err


class TestPartition:
    def test_complete_trailer(self, capsys):
        code, out, _ = run(["partition", "complete", "--n", "7", "--k", "3"], capsys)
        assert code == 0
        body = [ln for ln in out.splitlines() if not ln.startswith("#")]
        assert len(body) == 8  # 7 parts + trailer
        assert body[-1].startswith("c 7 ")

    def test_forest_roundtrip_verify(self, tmp_path, capsys):
        g = tmp_path / "t.txt"
        g.write_text("p 5 4\n1 2\n2 3\n3 4\n4 5\n")
        code, out, _ = run(["partition", "forest", "--graph", str(g)], capsys)
        assert code == 0
        part = tmp_path / "parts.txt"
        part.write_text("".join(ln + "\n" for ln in out.splitlines() if not ln.startswith("#")))
        comp = tmp_path / "comp.txt"
        comp.write_text("p 5 6\n1 3\n1 4\n1 5\n2 4\n2 5\n3 5\n")
        code, out, _ = run(
            ["verify", "--graph", str(comp), "--partition", str(part)], capsys
        )
        assert code == 0

    def test_verify_corruption_exit_2(self, tmp_path, capsys):
        g = tmp_path / "k3.txt"
        g.write_text("p 3 3\n1 2\n1 3\n2 3\n")
        bad = tmp_path / "bad.txt"
        bad.write_text("1 2\n1 3\n")  # edge (2,3) uncovered
        code, _, err = run(["verify", "--graph", str(g), "--partition", str(bad)], capsys)
        assert code == 2
        assert "(2,3)" in err and "covered 0" in err


class TestReports:
    def test_byte_identical_reruns(self, c4_file, capsys):
        _, out1, _ = run(["starforest", "--graph", c4_file, "--d", "2", "-v"], capsys)
        _, out2, _ = run(["starforest", "--graph", c4_file, "--d", "2", "-v"], capsys)
        assert out1 == out2

    def test_json_mode(self, p3_file, capsys):
        code, out, _ = run(
            ["--json", "ramsey", "--target", p3_file, "--colors", "2", "--cap", "8"],
            capsys,
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["r"] == 3 and doc["subcommand"] == "ramsey"

    def test_ramsey_unknown_format(self, tmp_path, capsys):
        k3 = tmp_path / "k3.txt"
        k3.write_text("p 3 3\n1 2\n1 3\n2 3\n")
        code, out, _ = run(["ramsey", "--target", str(k3), "--cap", "5"], capsys)
        assert code == 0 and out.splitlines()[0] == "unknown(5)"


class TestOnline:
    def test_transcript_emitted_and_verifiable(self, p3_file, tmp_path, capsys):
        code, out, _ = run(
            ["online", "--target", p3_file, "--colors", "2", "--painter", "cycling"],
            capsys,
        )
        assert code == 0
        tr = tmp_path / "game.txt"
        tr.write_text(
            "".join(ln + "\n" for ln in out.splitlines() if not ln.startswith("#"))
        )
        code, _, _ = run(
            ["verify", "--target", p3_file, "--transcript", str(tr)], capsys
        )
        assert code == 0

    def test_d2_capacity_exit_1(self, tmp_path, capsys):
        k3 = tmp_path / "k3.txt"
        k3.write_text("p 3 3\n1 2\n1 3\n2 3\n")
        code, _, err = run(["online", "--target", str(k3)], capsys)
        assert code == 1 and "r_3(12; 8)" in err


class TestHilbert:
    def test_experiment_needs_seed(self, capsys):
        code, _, err = run(["hilbert", "experiment", "--n", "32"], capsys)
        assert code == 1 and "seed" in err

    def test_experiment_tsv(self, capsys):
        code, out, _ = run(
            ["hilbert", "experiment", "--n", "32", "--delta", "0.5",
             "--trials", "3", "--seed", "4"],
            capsys,
        )
        assert code == 0
        assert out.splitlines()[0] == "trial\tdim"

    def test_count(self, capsys):
        code, out, _ = run(
            ["hilbert", "count", "--n", "10", "--d", "3", "--bound", "7"], capsys
        )
        assert code == 0 and out.splitlines()[0] == "count=20"

    def test_sigma(self, capsys):
        code, out, _ = run(["hilbert", "sigma", "--generators", "1,2,4"], capsys)
        assert code == 0
        assert out.splitlines()[0] == "0 1 2 3 4 5 6 7"


class TestErdosRogers:
    def test_run(self, tmp_path, capsys):
        h = tmp_path / "h.txt"
        h.write_text("h 3 6 2\n1 2 3\n4 5 6\n")
        code, out, _ = run(
            ["erdosrogers", "--hypergraph", str(h), "--s", "3"], capsys
        )
        assert code == 0
        assert any(ln.startswith("# exit_path=") for ln in out.splitlines())
