"""The ``chord`` command line: solvers in, JSON with exact rationals out.

Exit codes: 0 success, 2 precondition violation, 1 internal solver error,
64 usage problems.  ``CHORD_LOG`` sets the log level.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction
from pathlib import Path

from .errors import PreconditionError, SolverInternalError
from .double_cover import compute_double_cover
from .graph_chords import chord_membership_evidence, euler_chord_solve, graph_chord_solve
from .interval_chords import LineStepFunction, find_common_chord, find_common_chord_k, necklace_split
from .metric_graph import rat
from .partitions import verify_partition
from .serialization import (
    certificate_from_json,
    function_from_json,
    graph_from_json,
    line_pieces_from_json,
    path_to_json,
    rat_to_json,
    subset_to_json,
)
from .step_functions import integral_subset

log = logging.getLogger("chord")

USAGE_EXIT = 64
PRECONDITION_EXIT = 2
INTERNAL_EXIT = 1


def _load_json(path: str):
    with open(path) as fh:
        return json.load(fh)


def _emit(payload) -> None:
    json.dump(payload, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _cmd_solve(args) -> int:
    graph = graph_from_json(_load_json(args.graph))
    f = function_from_json(graph, _load_json(args.f))
    r = rat(args.r)
    if args.euler:
        result = euler_chord_solve(graph, f, r)
        cover = [path_to_json(result.circuit)]
        schedule_time = None
    else:
        result = graph_chord_solve(graph, f, r)
        cover = [path_to_json(p) for p in result.cover]
        schedule_time = result.schedule_time
    subset = result.subset
    _emit({
        "subset": subset_to_json(subset),
        "measure": rat_to_json(subset.measure()),
        "integral": rat_to_json(integral_subset(f, subset)),
        "cover": cover,
        "schedule_time": rat_to_json(schedule_time) if schedule_time is not None else None,
    })
    return 0


def _cmd_euler_solve(args) -> int:
    args.euler = True
    return _cmd_solve(args)


def _cmd_double_cover(args) -> int:
    graph = graph_from_json(_load_json(args.graph))
    cover = compute_double_cover(graph)
    _emit([path_to_json(p) for p in cover])
    return 0


def _cmd_partition_verify(args) -> int:
    graph = graph_from_json(_load_json(args.graph))
    cert = certificate_from_json(graph, _load_json(args.cert))
    _emit({"valid": verify_partition(graph, cert)})
    return 0


def _cmd_interval(args) -> int:
    f = LineStepFunction(line_pieces_from_json(_load_json(args.f)))
    g = LineStepFunction(line_pieces_from_json(_load_json(args.g))) if args.g else LineStepFunction.constant(1)
    if args.k is not None:
        interval = find_common_chord_k(f, g, args.k)
        achieved = Fraction(1, args.k)
    else:
        if args.r is None:
            raise PreconditionError("interval needs --r or --k")
        interval, achieved = find_common_chord(f, g, rat(args.r))
    _emit({
        "interval": [rat_to_json(interval.lo), rat_to_json(interval.hi)],
        "achieved": rat_to_json(achieved),
    })
    return 0


def _cmd_necklace(args) -> int:
    split = necklace_split(args.pearls)
    _emit({"window": list(split.window), "cuts": list(split.cuts)})
    return 0


def _cmd_evidence(args) -> int:
    graph = graph_from_json(_load_json(args.graph))
    report = chord_membership_evidence(graph, rat(args.r), trials=args.trials, seed=args.seed)
    _emit({
        "edges": report.graph_edges,
        "r": rat_to_json(report.r),
        "trials": report.trials,
        "successes": report.successes,
        "methods": list(report.methods),
        "failures": list(report.failures),
    })
    return 0


def _cmd_game_serve(args) -> int:
    import uvicorn

    from .service import create_app

    ui_dir = Path(args.ui_dir) if args.ui_dir else Path(__file__).resolve().parents[2] / "frontend" / "dist"
    app = create_app(log_dir=Path(args.log_dir) if args.log_dir else None,
                     ui_dir=ui_dir if ui_dir.is_dir() else None)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chord", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="zero-integral subset of measure r on a graph")
    solve.add_argument("--graph", required=True)
    solve.add_argument("--f", required=True)
    solve.add_argument("--r", required=True)
    solve.add_argument("--euler", action="store_true", help="use the Euler-circuit solver")
    solve.set_defaults(func=_cmd_solve)

    esolve = sub.add_parser("euler-solve", help="Euler-circuit solver, r up to |E|")
    esolve.add_argument("--graph", required=True)
    esolve.add_argument("--f", required=True)
    esolve.add_argument("--r", required=True)
    esolve.set_defaults(func=_cmd_euler_solve)

    dcover = sub.add_parser("double-cover", help="double cover by semi-simple closed paths")
    dcover.add_argument("--graph", required=True)
    dcover.set_defaults(func=_cmd_double_cover)

    pverify = sub.add_parser("partition-verify", help="check a partition certificate")
    pverify.add_argument("--graph", required=True)
    pverify.add_argument("--cert", required=True)
    pverify.set_defaults(func=_cmd_partition_verify)

    interval = sub.add_parser("interval", help="common chord of two interval functions")
    interval.add_argument("--f", required=True)
    interval.add_argument("--g")
    interval.add_argument("--r")
    interval.add_argument("--k", type=int)
    interval.set_defaults(func=_cmd_interval)

    necklace = sub.add_parser("necklace", help="two-cut fair split of a pearl strand")
    necklace.add_argument("pearls", help="e.g. BWBW")
    necklace.set_defaults(func=_cmd_necklace)

    evidence = sub.add_parser("evidence", help="sampled chord-set membership evidence")
    evidence.add_argument("--graph", required=True)
    evidence.add_argument("--r", required=True)
    evidence.add_argument("--trials", type=int, default=20)
    evidence.add_argument("--seed", type=int, default=0)
    evidence.set_defaults(func=_cmd_evidence)

    serve = sub.add_parser("game-serve", help="run the game HTTP service")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--log-dir", help="append-only JSONL game logs")
    serve.add_argument("--ui-dir", help="static directory served at /ui")
    serve.set_defaults(func=_cmd_game_serve)

    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=os.environ.get("CHORD_LOG", "WARNING").upper())
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE_EXIT if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except PreconditionError as exc:
        log.error("precondition violated: %s", exc)
        print(f"error: {exc}", file=sys.stderr)
        return PRECONDITION_EXIT
    except (SolverInternalError, OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        log.error("internal error: %s", exc)
        print(f"internal error: {exc}", file=sys.stderr)
        return INTERNAL_EXIT


if __name__ == "__main__":
    sys.exit(main())
