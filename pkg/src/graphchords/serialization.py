"""JSON wire formats; every rational travels as a canonical "p/q" string."""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Mapping, Sequence

from .double_cover import ClosedPath
from .errors import PreconditionError
from .game import CircleBoard, GameConfig, GameState, GraphBoard, LossWitness
from .metric_graph import ConnSubset, GraphPoint, MetricGraph, rat
from .partitions import PartitionCertificate
from .step_functions import StepFunction
from .subset_space import MoveSchedule, PairedMove, TipMove


def rat_to_json(x: Fraction) -> str:
    return str(rat(x))


def rat_from_json(s: Any) -> Fraction:
    if not isinstance(s, (str, int)):
        raise PreconditionError(f"expected a rational string, got {s!r}")
    try:
        return Fraction(str(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise PreconditionError(f"bad rational {s!r}") from exc


def graph_to_json(graph: MetricGraph) -> dict:
    return {
        "vertices": sorted(graph.vertices),
        "edges": [{"id": e, "ends": list(graph.ends(e))} for e in graph.edge_ids],
    }


def graph_from_json(data: Mapping) -> MetricGraph:
    try:
        vertices = list(data["vertices"])
        edges = [(e["id"], (e["ends"][0], e["ends"][1])) for e in data["edges"]]
    except (KeyError, TypeError, IndexError) as exc:
        raise PreconditionError(f"malformed graph JSON: {exc}") from exc
    return MetricGraph(vertices, edges)


def subset_to_json(subset: ConnSubset) -> dict:
    return {e: [[rat_to_json(lo), rat_to_json(hi)] for lo, hi in ivs] for e, ivs in subset.segments.items()}


def subset_from_json(graph: MetricGraph, data: Mapping) -> ConnSubset:
    segments = {e: [(rat_from_json(lo), rat_from_json(hi)) for lo, hi in ivs] for e, ivs in data.items()}
    return ConnSubset(graph, segments)


def function_to_json(f: StepFunction) -> dict:
    return {
        e: [{"from": rat_to_json(lo), "to": rat_to_json(hi), "value": rat_to_json(v)} for lo, hi, v in ps]
        for e, ps in f.pieces.items()
    }


def function_from_json(graph: MetricGraph, data: Mapping) -> StepFunction:
    pieces = {
        e: [(rat_from_json(p["from"]), rat_from_json(p["to"]), rat_from_json(p["value"])) for p in ps]
        for e, ps in data.items()
    }
    return StepFunction(graph, pieces)


def line_pieces_from_json(data: Sequence) -> list[tuple[Fraction, Fraction, Fraction]]:
    return [(rat_from_json(p["from"]), rat_from_json(p["to"]), rat_from_json(p["value"])) for p in data]


def path_to_json(path: ClosedPath) -> list:
    return [[e, "+" if fwd else "-"] for e, fwd in path.steps]


def path_from_json(graph: MetricGraph, data: Sequence) -> ClosedPath:
    return ClosedPath(graph, [(e, sign == "+") for e, sign in data])


def _tip_to_json(tip: TipMove) -> dict:
    return {"edge": tip.edge, "t": rat_to_json(tip.t), "dir": "+" if tip.direction == 1 else "-"}


def _tip_from_json(kind: str, data: Mapping, dt: Fraction) -> TipMove:
    return TipMove(kind, data["edge"], rat_from_json(data["t"]), 1 if data["dir"] == "+" else -1, dt)


def schedule_to_json(schedule: MoveSchedule) -> dict:
    moves = []
    for m in schedule.moves:
        if isinstance(m, PairedMove):
            moves.append({
                "kind": "pair",
                "grow": _tip_to_json(m.grow),
                "shrink": _tip_to_json(m.shrink),
                "dt": rat_to_json(m.duration),
            })
        else:
            entry = {"kind": m.kind, "dt": rat_to_json(m.duration)}
            entry.update(_tip_to_json(m))
            moves.append(entry)
    return {"start": subset_to_json(schedule.start), "moves": moves}


def schedule_from_json(graph: MetricGraph, data: Mapping) -> MoveSchedule:
    start = subset_from_json(graph, data["start"])
    moves = []
    for m in data["moves"]:
        dt = rat_from_json(m["dt"])
        if m["kind"] == "pair":
            moves.append(PairedMove(
                grow=_tip_from_json("grow", m["grow"], dt),
                shrink=_tip_from_json("shrink", m["shrink"], dt),
            ))
        else:
            moves.append(_tip_from_json(m["kind"], m, dt))
    return MoveSchedule(start, moves)


def certificate_to_json(cert: PartitionCertificate) -> dict:
    return {
        "r": rat_to_json(cert.r),
        "n": cert.n,
        "subsets": [subset_to_json(s) for s in cert.subsets],
    }


def certificate_from_json(graph: MetricGraph, data: Mapping) -> PartitionCertificate:
    return PartitionCertificate(
        graph,
        tuple(subset_from_json(graph, s) for s in data["subsets"]),
        rat_from_json(data["r"]),
        int(data["n"]),
    )


def config_to_json(config: GameConfig) -> dict:
    board = config.board
    out: dict = {"m": config.max_per_turn, "n": config.window_half}
    if isinstance(board, CircleBoard):
        out["board"] = "circle"
        out["dots"] = board.num_dots
    else:
        out["board"] = "graph"
        out["graph"] = graph_to_json(board.graph)
        out["positions"] = [[p.edge, rat_to_json(p.t)] for p in board.dots]
    return out


def config_from_json(data: Mapping) -> GameConfig:
    try:
        kind = data["board"]
        m = int(data["m"])
        n = int(data["n"])
        if kind == "circle":
            board: CircleBoard | GraphBoard = CircleBoard(int(data["dots"]))
        elif kind == "graph":
            graph = graph_from_json(data["graph"])
            board = GraphBoard(graph, tuple(GraphPoint(e, rat_from_json(t)) for e, t in data["positions"]))
        else:
            raise PreconditionError(f"unknown board kind {kind!r}")
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, PreconditionError):
            raise
        raise PreconditionError(f"malformed game config: {exc}") from exc
    return GameConfig(board, m, n)


def witness_to_json(witness: LossWitness) -> dict:
    out: dict = {"dots": list(witness.dots), "loser": witness.loser}
    if witness.subset is not None:
        out["subset"] = subset_to_json(witness.subset)
    return out


def state_to_json(state: GameState, game_id: str | None = None) -> dict:
    names = {0: "none", 1: "p1", 2: "p2"}
    out = {
        "version": state.version,
        "statuses": [names[s] for s in state.statuses],
        "turn": state.turn,
        "counts": {"p1": state.counts[0], "p2": state.counts[1]},
        "finished": state.finished,
        "loser": state.loser,
        "winner": state.winner,
        "witness": witness_to_json(state.witness) if state.witness else None,
        "config": config_to_json(state.config),
    }
    if game_id is not None:
        out["id"] = game_id
    return out
