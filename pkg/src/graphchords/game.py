"""The dot-crossing parity game on circle boards and Euler-graph boards.

Two players alternately cross out between 1 and m uncrossed dots; once a
player has crossed N dots the other must cross the rest.  A player loses
by being the first whose completed turn creates a connected piece of the
board containing exactly 2n dots, n crossed by each player.  On circle
boards (and, via the Euler circuit, on Euler-graph boards) the game can
never end without a winner.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence, Union

from .errors import PreconditionError
from .metric_graph import ONE, ZERO, ConnSubset, GraphPoint, MetricGraph

UNCROSSED = 0


@dataclass(frozen=True)
class CircleBoard:
    num_dots: int

    def __post_init__(self):
        if self.num_dots < 2 or self.num_dots % 2:
            raise PreconditionError("a circle board needs an even number of dots, at least 2")


@dataclass(frozen=True)
class GraphBoard:
    graph: MetricGraph
    dots: tuple[GraphPoint, ...]

    def __post_init__(self):
        object.__setattr__(self, "dots", tuple(self.dots))
        if len(self.dots) < 2 or len(self.dots) % 2:
            raise PreconditionError("a graph board needs an even number of dots, at least 2")
        seen = set()
        for p in self.dots:
            if not ZERO < p.t < ONE:
                raise PreconditionError("dots must be interior edge points")
            key = (p.edge, p.t)
            if key in seen:
                raise PreconditionError("dots must be pairwise distinct")
            seen.add(key)

    @property
    def num_dots(self) -> int:
        return len(self.dots)


Board = Union[CircleBoard, GraphBoard]


@dataclass(frozen=True)
class GameConfig:
    board: Board
    max_per_turn: int  # m: dots a player may cross per turn
    window_half: int   # n: half the size of a losing window

    def __post_init__(self):
        n_dots = self.board.num_dots
        per_player = n_dots // 2
        if not 1 <= self.max_per_turn <= per_player:
            raise PreconditionError("max dots per turn must lie in 1..N")
        if not 1 <= self.window_half <= per_player:
            raise PreconditionError("window half-size must lie in 1..N")

    @property
    def dots_per_player(self) -> int:
        return self.board.num_dots // 2


@dataclass(frozen=True)
class LossWitness:
    """A connected board piece holding exactly n dots of each player."""

    dots: tuple[int, ...]
    loser: int
    subset: Optional[ConnSubset] = None


@dataclass(frozen=True)
class GameState:
    config: GameConfig
    statuses: tuple[int, ...]
    turn: int
    counts: tuple[int, int]
    version: int = 0
    loser: Optional[int] = None
    witness: Optional[LossWitness] = None

    @property
    def finished(self) -> bool:
        return self.loser is not None or UNCROSSED not in self.statuses

    @property
    def winner(self) -> Optional[int]:
        if self.loser is None:
            return None
        return 3 - self.loser

    def uncrossed(self) -> list[int]:
        return [i for i, s in enumerate(self.statuses) if s == UNCROSSED]


def new_game(config: GameConfig) -> GameState:
    return GameState(config, (UNCROSSED,) * config.board.num_dots, turn=1, counts=(0, 0))


def legal_moves(state: GameState) -> list[tuple[int, ...]]:
    """All crossing choices for the player to move, smallest sets first."""
    if state.finished:
        raise PreconditionError("the game is over")
    free = state.uncrossed()
    budget = state.config.dots_per_player - state.counts[state.turn - 1]
    top = min(state.config.max_per_turn, budget, len(free))
    moves: list[tuple[int, ...]] = []
    for size in range(1, top + 1):
        moves.extend(combinations(free, size))
    return moves


def apply_move(state: GameState, dots: Sequence[int]) -> GameState:
    """Cross the given dots as one turn; loss is evaluated once per turn."""
    if state.finished:
        raise PreconditionError("the game is over")
    chosen = tuple(sorted(dots))
    if len(chosen) != len(set(chosen)):
        raise PreconditionError("duplicate dots in a move")
    free = set(state.uncrossed())
    if not chosen or not set(chosen) <= free:
        raise PreconditionError("moves must cross 1..m uncrossed dots")
    budget = state.config.dots_per_player - state.counts[state.turn - 1]
    if len(chosen) > min(state.config.max_per_turn, budget):
        raise PreconditionError("moves must cross 1..m uncrossed dots within the player's budget")
    statuses = list(state.statuses)
    for d in chosen:
        statuses[d] = state.turn
    counts = list(state.counts)
    counts[state.turn - 1] += len(chosen)
    nxt = GameState(
        config=state.config,
        statuses=tuple(statuses),
        turn=state.turn,
        counts=(counts[0], counts[1]),
        version=state.version + 1,
    )
    found = detect_loss(nxt)
    if found is not None:
        return replace(nxt, loser=state.turn, witness=replace(found, loser=state.turn))
    other = 3 - state.turn
    per_player = state.config.dots_per_player
    turn = other if counts[other - 1] < per_player else state.turn
    return replace(nxt, turn=turn)


def detect_loss(state: GameState) -> Optional[LossWitness]:
    """First balanced fully-crossed window, in deterministic scan order."""
    n = state.config.window_half
    board = state.config.board
    if isinstance(board, CircleBoard):
        total = board.num_dots
        for start in range(total):
            window = [(start + j) % total for j in range(2 * n)]
            marks = [state.statuses[i] for i in window]
            if UNCROSSED in marks:
                continue
            if sum(1 for m in marks if m == 1) == n:
                return LossWitness(dots=tuple(window), loser=0)
        return None
    return _detect_loss_graph(state, board, n)


_PIECE_CACHE: "weakref.WeakKeyDictionary[GraphBoard, list]" = None  # type: ignore[assignment]


def _board_pieces(board: GraphBoard):
    """Edge pieces between consecutive dots; terminals are vertices or dots."""
    global _PIECE_CACHE
    if _PIECE_CACHE is None:
        import weakref

        _PIECE_CACHE = weakref.WeakKeyDictionary()
    cached = _PIECE_CACHE.get(board)
    if cached is not None:
        return cached
    graph = board.graph
    pieces = []
    for e in graph.edge_ids:
        u, v = graph.ends(e)
        cuts: list[tuple[Fraction, tuple]] = [(ZERO, ("v", u)), (ONE, ("v", v))]
        for i, p in enumerate(board.dots):
            if p.edge == e:
                cuts.append((p.t, ("d", i)))
        cuts.sort(key=lambda c: c[0])
        for (t0, a), (t1, b) in zip(cuts, cuts[1:]):
            pieces.append((e, t0, t1, a, b))
    _PIECE_CACHE[board] = pieces
    return pieces


def _detect_loss_graph(state: GameState, board: GraphBoard, n: int) -> Optional[LossWitness]:
    """Search 2n-dot balanced sets that connect while excluding other dots.

    Other dots act as blockers: a piece of an edge is usable only when
    neither endpoint is an excluded dot, so the candidate dots are
    connected exactly when they lie in one component of the usable pieces.
    """
    ones = [i for i, s in enumerate(state.statuses) if s == 1]
    twos = [i for i, s in enumerate(state.statuses) if s == 2]
    pieces = _board_pieces(board)
    for picked1 in combinations(ones, n):
        for picked2 in combinations(twos, n):
            dots = set(picked1) | set(picked2)

            def good(term: tuple) -> bool:
                return term[0] == "v" or term[1] in dots

            parent: dict = {}

            def find(x):
                parent.setdefault(x, x)
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            def union(x, y):
                rx, ry = find(x), find(y)
                if rx != ry:
                    parent[rx] = ry

            usable = [pc for pc in pieces if good(pc[3]) and good(pc[4])]
            for _, _, _, a, b in usable:
                union(a, b)
            roots = {find(("d", i)) for i in dots}
            if len(roots) != 1:
                continue
            segments: dict[str, list[tuple[Fraction, Fraction]]] = {}
            root = roots.pop()
            for e, t0, t1, a, b in usable:
                if find(a) == root:
                    segments.setdefault(e, []).append((t0, t1))
            subset = ConnSubset(board.graph, segments)
            return LossWitness(dots=tuple(sorted(dots)), loser=0, subset=subset)
    return None


def circle_as_graph_board(num_dots: int) -> GraphBoard:
    """The circle realized as one loop edge with evenly spaced interior dots."""
    graph = MetricGraph({"o"}, [("c", ("o", "o"))])
    dots = tuple(GraphPoint("c", Fraction(2 * i + 1, 2 * num_dots)) for i in range(num_dots))
    return GraphBoard(graph, dots)


@dataclass(frozen=True)
class GuaranteeReport:
    mode: str
    cases: int
    violations: int
    draws: int = 0

    @property
    def ok(self) -> bool:
        return self.violations == 0


def winner_guarantee_check(config: GameConfig, playouts: int = 1000, seed: int = 0) -> GuaranteeReport:
    """Verify the game cannot end without a winner.

    Circle boards with at most 8 dots are checked exhaustively over all
    terminal colorings; larger or graph boards run random playouts and
    count games that completed with no loss witness.
    """
    board = config.board
    if isinstance(board, CircleBoard) and board.num_dots <= 8:
        total = board.num_dots
        per = total // 2
        violations = 0
        cases = 0
        for ones in combinations(range(total), per):
            statuses = [2] * total
            for i in ones:
                statuses[i] = 1
            terminal = GameState(config, tuple(statuses), turn=1, counts=(per, per))
            cases += 1
            if detect_loss(terminal) is None:
                violations += 1
        return GuaranteeReport("exhaustive", cases, violations)
    rng = random.Random(seed)
    draws = 0
    for _ in range(playouts):
        state = new_game(config)
        while not state.finished:
            state = apply_move(state, rng.choice(legal_moves(state)))
        if state.loser is None:
            draws += 1
    return GuaranteeReport("playouts", playouts, draws, draws=draws)
