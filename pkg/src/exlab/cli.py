"""Single command-line entry point for every workbench module.

Conventions: stdout carries the canonical object dump (plane lines,
partition parts, vertex sets, transcripts, TSV tables) followed by
`# key=value` report lines, so the output both parses as the documented
format and explains itself; `--json` switches to one JSON object.  Output is
byte-identical for identical (argv, seed); wall times go to stderr and only
with --timings.

Exit codes: 0 success with verification pass, 2 a verified failure (a bound
or checker said no -- that is a finding, printed precisely), 1 input or
capacity errors, 64 usage.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import random
import sys
import time
from fractions import Fraction
from typing import Optional

from . import catalog, erdosrogers, hilbert, online, partitions, planes, ramsey, starforest
from ._kernels import backend_name
from .errors import CapacityError, ExlabError, InputError
from .graphs import Graph, format_graph, parse_graph, parse_hypergraph

USAGE_EXIT = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit 2; we reserve that
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(USAGE_EXIT)


class VerifiedFailure(Exception):
    """A checker or bound failed on real output; exit code 2."""


class Report:
    def __init__(self, subcommand: str, seed: Optional[int] = None):
        self.fields: dict[str, object] = {"subcommand": subcommand}
        if seed is not None:
            self.fields["seed"] = seed

    def add(self, **kv) -> "Report":
        self.fields.update(kv)
        return self

    def emit(self, args, dump: str = "") -> None:
        if getattr(args, "json", False):
            sys.stdout.write(json.dumps(self.fields) + "\n")
        else:
            if dump:
                sys.stdout.write(dump)
            for k, v in self.fields.items():
                sys.stdout.write(f"# {k}={v}\n")


def _read(path: str) -> str:
    with open(path) as fh:
        return fh.read()


def _load_target(path: str):
    text = _read(path)
    first = next((ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")), "")
    if first.startswith("h"):
        return parse_hypergraph(text)
    return parse_graph(text)


def _budget_nodes(args) -> Optional[int]:
    ms = getattr(args, "budget_ms", None)
    if ms is None:
        env = os.environ.get("EXLAB_BUDGET_MS")
        ms = int(env) if env else None
    if ms is None:
        return None
    return ms * hilbert.NODES_PER_MS


# --- subcommands ---------------------------------------------------------------


def cmd_plane(args) -> int:
    plane = planes.build_plane(args.q)
    ok = planes.verify_plane(plane)
    rep = Report("plane").add(q=args.q, points=plane.num_points, verified=ok)
    rep.emit(args, planes.dump_plane(plane))
    if not ok:
        raise VerifiedFailure("plane failed its own axiom check")
    return 0


def cmd_partition(args) -> int:
    from .graphs import complete_graph

    if args.kind == "complete":
        if args.n is None or args.k is None:
            raise InputError("partition complete needs --n and --k")
        part = partitions.partition_complete(args.n, args.k)
        target = complete_graph(args.n)
        bound = partitions.partition_complete_bound(args.n, args.k)
    elif args.kind == "complement":
        f = parse_graph(_read(args.graph))
        part = partitions.partition_complement(f)
        target = f.complement()
        bound = part.meta["bound"]
    elif args.kind == "forest":
        f = parse_graph(_read(args.graph))
        part = partitions.partition_complement_forest(f)
        target = f.complement()
        bound = part.meta["bound"]
    elif args.kind == "tree":
        t = parse_graph(_read(args.graph))
        if args.k is None:
            raise InputError("partition tree needs --k")
        tp = partitions.tree_partition(t, args.k)
        ok, msg = partitions.verify_tree_partition(tp, args.k)
        dump = "".join(
            " ".join(str(v + 1) for v in piece) + "\n" for piece in tp.pieces
        ) + f"c {len(tp.pieces)} {2 * t.n / args.k:g}\n"
        Report("partition").add(
            kind="tree", n=t.n, k=args.k, pieces=len(tp.pieces), verified=ok
        ).emit(args, dump)
        if not ok:
            raise VerifiedFailure(f"tree partition check failed: {msg}")
        return 0
    else:  # pragma: no cover
        raise InputError(f"unknown partition kind {args.kind}")

    ok, msg = partitions.verify_partition_detail(target, part)
    dump = partitions.format_partition(part, bound)
    Report("partition").add(
        kind=args.kind,
        n=target.n,
        parts=part.num_parts,
        bound=f"{bound:g}",
        verified=ok,
        **({"k": part.meta["k"]} if "k" in part.meta else {}),
    ).emit(args, dump)
    if not ok:
        raise VerifiedFailure(f"partition verification failed: {msg}")
    if part.num_parts > bound:
        raise VerifiedFailure(f"count {part.num_parts} exceeds bound {bound:g}")
    return 0


def cmd_starforest(args) -> int:
    g = parse_graph(_read(args.graph))
    d = args.d if args.d is not None else max(1, -(-2 * g.m // max(g.n, 1)))
    out, trace = starforest.large_star_forest(g, d)
    dump = " ".join(str(v + 1) for v in out) + "\n"
    if args.verbose:
        dump += trace.tsv_rounds()
    from .graphs import is_induced_star_forest

    ok = is_induced_star_forest(g, out)
    Report("starforest").add(
        n=g.n, d=d, size=len(out), delta=str(trace.delta), verified=ok
    ).emit(args, dump)
    if not ok:
        raise VerifiedFailure("output failed the star-forest check")
    return 0


def cmd_ramsey(args) -> int:
    target = _load_target(args.target)
    query = ramsey.RamseyQuery(target, args.colors, args.cap)
    verdict = ramsey.ramsey_number(query)
    if isinstance(verdict, ramsey.Unknown):
        dump = f"unknown({verdict.cap})\n"
        value: object = f"unknown({verdict.cap})"
    else:
        dump = f"r={verdict}\n"
        value = verdict
    Report("ramsey").add(colors=args.colors, cap=args.cap, r=value).emit(args, dump)
    return 0


def cmd_saturation(args) -> int:
    target = _load_target(args.target)
    if not isinstance(target, Graph):
        raise InputError("saturation needs a graph target")
    verdict = ramsey.is_ramsey_saturated(target, cap=args.cap)
    if isinstance(verdict, ramsey.Unknown):
        text = f"unknown({verdict.cap})"
    else:
        text = "true" if verdict else "false"
    Report("saturation").add(cap=args.cap, saturated=text).emit(args, f"saturated={text}\n")
    return 0


def cmd_online(args) -> int:
    target = _load_target(args.target)
    if not isinstance(target, Graph):
        raise InputError("online games need a graph target")
    painter = online.make_painter(args.painter)
    transcript = online.run_game(target, args.colors, painter, args.budget, args.mode)
    ok = online.verify_transcript(transcript)
    Report("online", seed=None).add(
        colors=args.colors,
        painter=painter.name,
        outcome=transcript.outcome,
        moves=len(transcript.moves),
        board_vertices=transcript.n_board,
        degeneracy_bound=transcript.builder_degeneracy_bound,
        verified=ok,
    ).emit(args, online.format_transcript(transcript))
    if not ok:
        raise VerifiedFailure("transcript failed verification")
    if transcript.outcome != "win":
        raise VerifiedFailure(f"builder exhausted the budget ({transcript.budget})")
    return 0


def cmd_erdosrogers(args) -> int:
    h = parse_hypergraph(_read(args.hypergraph))
    alpha = Fraction(args.alpha) if args.alpha else None
    result = erdosrogers.find_ks3_free_subset(
        h, args.s, p=args.target_size, alpha=alpha, m=args.maxlen
    )
    dump = " ".join(str(v + 1) for v in result.subset) + "\n"
    Report("erdosrogers").add(
        s=args.s,
        achieved=result.achieved,
        target=result.target,
        exit_path=result.exit_path,
        alpha=str(result.alpha),
        sequence_length=len(result.sequence),
        verified=True,  # the process refuses to return an unverified set
    ).emit(args, dump)
    return 0


def cmd_hilbert(args) -> int:
    nodes = _budget_nodes(args)
    if args.op == "sigma":
        gens = [int(x) for x in args.generators.split(",") if x.strip()]
        prof = hilbert.subset_sums(gens)
        dump = " ".join(str(s) for s in prof.sums) + "\n"
        Report("hilbert").add(op="sigma", d=prof.dimension, size=prof.size).emit(args, dump)
        return 0
    if args.op == "cube":
        a = _hilbert_set(args)
        cube = hilbert.find_hilbert_cube(a, args.d, nodes)
        if cube is None:
            dump = "absent\n"
        else:
            dump = f"x0={cube.x0} gens=" + ",".join(map(str, cube.generators)) + "\n"
        Report("hilbert", seed=args.seed).add(
            op="cube", n=args.n, d=args.d, found=cube is not None
        ).emit(args, dump)
        return 0
    if args.op == "count":
        c = hilbert.count_small_sigma_sets(args.n, args.d, args.bound)
        Report("hilbert").add(
            op="count", n=args.n, d=args.d, bound=args.bound, count=c
        ).emit(args, f"count={c}\n")
        return 0
    if args.op == "experiment":
        if args.seed is None:
            raise InputError("--seed is mandatory for experiment runs")
        rep = hilbert.random_subset_experiment(
            args.n, args.delta, args.trials, args.seed,
            d_max=args.dmax, max_nodes=nodes, jobs=args.jobs,
        )
        Report("hilbert", seed=args.seed).add(
            op="experiment",
            n=args.n,
            delta=args.delta,
            trials=args.trials,
            min=rep.min,
            median=rep.median,
            max=rep.max,
            certified=rep.certified,
            comparison_sqrt_log=f"{rep.comparison_line:.4f}",
        ).emit(args, rep.tsv())
        return 0
    raise InputError(f"unknown hilbert op {args.op}")  # pragma: no cover


def _hilbert_set(args) -> list[int]:
    if args.set:
        return [int(x) for x in _read(args.set).split()]
    if args.seed is None:
        raise InputError("hilbert cube needs --set FILE or --n/--delta/--seed")
    return hilbert.trial_subset(args.n, args.delta, args.seed, 0)


def cmd_verify(args) -> int:
    if args.partition:
        g = parse_graph(_read(args.graph))
        part = partitions.parse_partition(_read(args.partition), g.n)
        ok, msg = partitions.verify_partition_detail(g, part)
        Report("verify").add(kind="partition", verified=ok, detail=msg).emit(args)
        if not ok:
            raise VerifiedFailure(msg)
        return 0
    if args.transcript:
        target = _load_target(args.target)
        transcript = online.parse_transcript(_read(args.transcript), target)
        ok = online.verify_transcript(transcript)
        Report("verify").add(kind="transcript", verified=ok).emit(args)
        if not ok:
            raise VerifiedFailure("transcript failed verification")
        return 0
    raise InputError("verify needs --partition or --transcript")


# --- wiring ---------------------------------------------------------------------


def build_parser() -> _Parser:
    p = _Parser(prog="exlab", description=__doc__)
    p.add_argument("--json", action="store_true", help="one JSON report object")
    p.add_argument("--timings", action="store_true", help="wall time on stderr")
    p.add_argument("--jobs", type=int, default=1, help="worker count where supported")
    sub = p.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("plane", help="build and verify PG(2,q)")
    sp.add_argument("--q", type=int, required=True)
    sp.set_defaults(fn=cmd_plane)

    sp = sub.add_parser("partition", help="clique partitions")
    sp.add_argument("kind", choices=["complete", "complement", "forest", "tree"])
    sp.add_argument("--n", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--graph")
    sp.set_defaults(fn=cmd_partition)

    sp = sub.add_parser("starforest", help="large induced star forest")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--d", type=int)
    sp.add_argument("-v", "--verbose", action="store_true")
    sp.set_defaults(fn=cmd_starforest)

    sp = sub.add_parser("ramsey", help="exhaustive Ramsey number")
    sp.add_argument("--target", required=True)
    sp.add_argument("--colors", type=int, default=2)
    sp.add_argument("--cap", type=int, default=8)
    sp.set_defaults(fn=cmd_ramsey)

    sp = sub.add_parser("saturation", help="Ramsey saturation decision")
    sp.add_argument("--target", required=True)
    sp.add_argument("--cap", type=int, default=8)
    sp.set_defaults(fn=cmd_saturation)

    sp = sub.add_parser("online", help="Builder-Painter game")
    sp.add_argument("--target", required=True)
    sp.add_argument("--colors", type=int, default=2)
    sp.add_argument("--painter", default="random:0")
    sp.add_argument("--budget", type=int)
    sp.add_argument("--mode", choices=["auto", "literal", "adaptive"], default="auto")
    sp.set_defaults(fn=cmd_online)

    sp = sub.add_parser("erdosrogers", help="K_s-free subset process")
    sp.add_argument("--hypergraph", required=True)
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--alpha")
    sp.add_argument("--target", dest="target_size", type=int)
    sp.add_argument("--maxlen", type=int)
    sp.set_defaults(fn=cmd_erdosrogers)

    sp = sub.add_parser("hilbert", help="subset sums and Hilbert cubes")
    sp.add_argument("op", choices=["sigma", "cube", "count", "experiment"])
    sp.add_argument("--generators", default="")
    sp.add_argument("--set")
    sp.add_argument("--n", type=int, default=64)
    sp.add_argument("--d", type=int, default=2)
    sp.add_argument("--bound", type=int, default=4)
    sp.add_argument("--delta", type=float, default=0.5)
    sp.add_argument("--trials", type=int, default=10)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--dmax", type=int, default=12)
    sp.add_argument("--budget-ms", type=int, dest="budget_ms")
    sp.set_defaults(fn=cmd_hilbert)

    sp = sub.add_parser("verify", help="re-verify saved artifacts")
    sp.add_argument("--graph")
    sp.add_argument("--partition")
    sp.add_argument("--target")
    sp.add_argument("--transcript")
    sp.set_defaults(fn=cmd_verify)

    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    try:
        code = args.fn(args)
    except VerifiedFailure as e:
        sys.stderr.write(f"verified failure: {e}\n")
        code = 2
    except AssertionError as e:
        sys.stderr.write(f"verified failure: {e}\n")
        code = 2
    except (InputError, CapacityError, OSError, ValueError) as e:
        sys.stderr.write(f"error: {e}\n")
        code = 1
    if args.timings:
        sys.stderr.write(f"# wall_ms={int((time.perf_counter() - t0) * 1000)}\n")
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
