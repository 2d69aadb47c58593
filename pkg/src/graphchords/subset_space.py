"""Continuous curves in the space of connected subsets, as move schedules.

A curve is discretized into constant-velocity tip moves: a grow move
extends the set from a boundary tip at unit rate, a shrink move eats it
from a tip, and a paired move does both simultaneously so the measure is
conserved.  Schedules realize the retraction of a set to a point and a
homotopy between any two equal-measure connected subsets.

The homotopy works on a refinement grid on which both endpoint subsets
are exact unions of arcs.  While the sets are disjoint, the evolving set
slides along a connecting geodesic (growing the near tip while eating a
removable arc elsewhere); once they touch, target arcs are settled one at
a time in breadth-first onion order, each swap growing the next target
arc while eating a removable non-settled arc.  Every swap preserves
connectivity and measure by construction and settles one arc, so the
schedule has at most one move per grid arc of the target plus geodesic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Optional, Sequence, Union

from .errors import PreconditionError, SolverInternalError
from .metric_graph import (
    ONE,
    ZERO,
    ConnSubset,
    GraphPoint,
    MetricGraph,
    Rational,
    canonical_segments,
    closest_boundary_pair,
    rat,
    segments_intersection,
)
from .step_functions import StepFunction, integral_subset

# -- moves -------------------------------------------------------------------


@dataclass(frozen=True)
class TipMove:
    """One tip moving at unit rate for ``duration`` time units."""

    kind: str  # "grow" | "shrink"
    edge: str
    t: Fraction  # tip position when the move starts
    direction: int  # +1 towards offset 1, -1 towards offset 0
    duration: Fraction

    def __post_init__(self):
        object.__setattr__(self, "t", rat(self.t))
        object.__setattr__(self, "duration", rat(self.duration))
        if self.kind not in ("grow", "shrink"):
            raise PreconditionError(f"bad move kind {self.kind!r}")
        if self.direction not in (1, -1):
            raise PreconditionError("direction must be +1 or -1")
        if self.duration <= 0:
            raise PreconditionError("duration must be positive")

    def span(self, dt: Optional[Fraction] = None) -> tuple[Fraction, Fraction]:
        """Covered arc [lo, hi] after ``dt`` (default: full) time units."""
        dt = self.duration if dt is None else dt
        a, b = self.t, self.t + self.direction * dt
        return (min(a, b), max(a, b))

    def clipped(self, dt: Fraction) -> "TipMove":
        return TipMove(self.kind, self.edge, self.t, self.direction, dt)


@dataclass(frozen=True)
class PairedMove:
    """Simultaneous grow and shrink at equal rate; measure is conserved."""

    grow: TipMove
    shrink: TipMove

    def __post_init__(self):
        if self.grow.kind != "grow" or self.shrink.kind != "shrink":
            raise PreconditionError("paired move needs one grow and one shrink tip")
        if self.grow.duration != self.shrink.duration:
            raise PreconditionError("paired tips must share their duration")

    @property
    def duration(self) -> Fraction:
        return self.grow.duration


Move = Union[TipMove, PairedMove]


def _grow_span(segs: dict[str, list[tuple[Fraction, Fraction]]], edge: str, span: tuple[Fraction, Fraction]) -> None:
    lo, hi = span
    if not ZERO <= lo <= hi <= ONE:
        raise PreconditionError(f"grow span [{lo}, {hi}] leaves the edge")
    ivs = segs.setdefault(edge, [])
    for l, h in ivs:
        if max(lo, l) < min(hi, h):
            raise PreconditionError("grow move enters occupied territory")
    ivs.append((lo, hi))
    ivs.sort()
    merged: list[tuple[Fraction, Fraction]] = []
    for l, h in ivs:
        if merged and l <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(merged[-1][1], h))
        else:
            merged.append((l, h))
    segs[edge] = merged


def _shrink_span(segs: dict[str, list[tuple[Fraction, Fraction]]], edge: str,
                 span: tuple[Fraction, Fraction], keep_hi: bool) -> None:
    """Remove a span from one segment, eating from the ``keep_hi`` side's tip.

    Eating from a segment boundary removes the half-open span (the moving
    tip survives); eating that starts strictly inside removes the open
    span, keeping both closure points so the set stays closed.
    """
    a, b = span
    ivs = segs.get(edge, [])
    for i, (l, h) in enumerate(ivs):
        if a < l or b > h or l == h:
            continue
        pieces = []
        if a > l or not keep_hi:
            pieces.append((l, a))
        if b < h or keep_hi:
            pieces.append((b, h))
        segs[edge] = ivs[:i] + pieces + ivs[i + 1:]
        return
    raise PreconditionError(f"shrink span [{a}, {b}] is not inside the set")


def _apply(segs: dict[str, list[tuple[Fraction, Fraction]]], move: Move, dt: Fraction) -> None:
    if isinstance(move, PairedMove):
        _apply(segs, move.shrink, dt)
        _apply(segs, move.grow, dt)
        return
    if isinstance(move, TipMove):
        if move.kind == "shrink":
            _shrink_span(segs, move.edge, move.span(dt), keep_hi=move.direction == 1)
        else:
            _grow_span(segs, move.edge, move.span(dt))
        return
    raise PreconditionError(f"unknown move {move!r}")


class MoveSchedule:
    """A start set plus a sequence of moves; every prefix is a valid subset."""

    __slots__ = ("start", "moves")

    def __init__(self, start: ConnSubset, moves: Iterable[Move]):
        object.__setattr__(self, "start", start)
        object.__setattr__(self, "moves", tuple(moves))

    def __setattr__(self, *a):
        raise AttributeError("MoveSchedule is immutable")

    def __len__(self):
        return len(self.moves)

    @property
    def total_duration(self) -> Fraction:
        return sum((m.duration for m in self.moves), ZERO)

    def apply_prefixes(self, times: Sequence[Rational]) -> list[ConnSubset]:
        """Subsets at the given times, evaluated in one forward sweep."""
        want = [rat(s) for s in times]
        total = self.total_duration
        for s in want:
            if not ZERO <= s <= total:
                raise PreconditionError(f"time {s} outside [0, {total}]")
        graph = self.start.graph
        segs = {e: [tuple(iv) for iv in ivs] for e, ivs in self.start.segments.items()}
        boundary = ZERO  # segs always reflects a whole number of moves
        idx = 0
        out: list[Optional[ConnSubset]] = [None] * len(want)
        for i in sorted(range(len(want)), key=lambda i: want[i]):
            s = want[i]
            while idx < len(self.moves) and boundary + self.moves[idx].duration <= s:
                _apply(segs, self.moves[idx], self.moves[idx].duration)
                # drop point residue absorbed elsewhere; builders emit moves
                # against this canonical view of the set
                segs = {e: list(ivs) for e, ivs in canonical_segments(graph, segs).items()}
                boundary += self.moves[idx].duration
                idx += 1
            if s == boundary:
                out[i] = ConnSubset(graph, segs)
            else:
                snapshot = {e: list(ivs) for e, ivs in segs.items()}
                _apply(snapshot, self.moves[idx], s - boundary)
                out[i] = ConnSubset(graph, snapshot)
        return out  # type: ignore[return-value]

    def apply_prefix(self, s: Rational) -> ConnSubset:
        return self.apply_prefixes([s])[0]

    def final(self) -> ConnSubset:
        return self.apply_prefix(self.total_duration)


# -- retraction ---------------------------------------------------------------


def _covers_key(graph: MetricGraph, segs: dict[str, list[tuple[Fraction, Fraction]]], key: tuple) -> bool:
    if key[0] == "v":
        name = key[1]
        for e, ivs in segs.items():
            u, v = graph.ends(e)
            for lo, hi in ivs:
                if (lo == ZERO and u == name) or (hi == ONE and v == name):
                    return True
        return False
    _, edge, t = key
    return any(lo <= t <= hi for lo, hi in segs.get(edge, ()))


def _connected(graph: MetricGraph, segs: dict[str, list[tuple[Fraction, Fraction]]]) -> bool:
    from .metric_graph import segments_connected

    return segments_connected(graph, segs)


def retraction_schedule(subset: ConnSubset, x: GraphPoint) -> MoveSchedule:
    """Shrink ``subset`` to the point ``x`` at unit measure rate.

    Greedy arc peeling: at each step eat a maximal free arc (up to the far
    end of its segment, or up to ``x``) whose removal keeps the rest
    connected and keeps ``x``.  Prefix sets are nested by construction.
    """
    graph = subset.graph
    if not subset.contains_point(x):
        raise PreconditionError("retraction point must lie in the subset")
    key = graph.canonical_point(x)
    segs = {e: list(ivs) for e, ivs in subset.segments.items()}
    moves: list[TipMove] = []
    while sum(hi - lo for ivs in segs.values() for lo, hi in ivs) > 0:
        chosen = None
        for e in sorted(segs):
            for lo, hi in segs[e]:
                if lo == hi:
                    continue
                for frm, direction in ((lo, 1), (hi, -1)):
                    stop = hi if direction == 1 else lo
                    if key[0] == "i" and key[1] == e and lo < key[2] < hi:
                        stop = key[2]
                    dur = abs(stop - frm)
                    if dur == 0:
                        continue
                    trial = {ee: list(vv) for ee, vv in segs.items()}
                    try:
                        _shrink_span(trial, e, (min(frm, stop), max(frm, stop)), keep_hi=direction == 1)
                    except PreconditionError:  # pragma: no cover - spans are segment-aligned
                        continue
                    if _covers_key(graph, trial, key) and _connected(graph, trial):
                        chosen = (TipMove("shrink", e, frm, direction, dur), trial)
                        break
                if chosen:
                    break
            if chosen:
                break
        if chosen is None:  # pragma: no cover - a peelable arc always exists
            raise SolverInternalError("retraction found no peelable arc")
        move, after = chosen
        segs = {e: list(ivs) for e, ivs in canonical_segments(graph, after).items()}
        moves.append(move)
    return MoveSchedule(subset, moves)


# -- the homotopy in X_r ------------------------------------------------------

Arc = tuple[str, int]  # (edge id, grid cell index)


class _Grid:
    """Uniform refinement grid; subsets become exact unions of arcs."""

    def __init__(self, graph: MetricGraph, denominators: Iterable[int]):
        self.graph = graph
        self.den = lcm(*denominators, 1)
        self.step = Fraction(1, self.den)

    def coord(self, arc: Arc, side: int) -> Fraction:
        return Fraction(arc[1] + side, self.den)

    def key(self, edge: str, t: Fraction) -> tuple:
        return self.graph.canonical_point(GraphPoint(edge, t))

    def arc_keys(self, arc: Arc) -> tuple[tuple, tuple]:
        return self.key(arc[0], self.coord(arc, 0)), self.key(arc[0], self.coord(arc, 1))

    def arcs_of(self, subset: ConnSubset) -> set[Arc]:
        arcs: set[Arc] = set()
        for e, ivs in subset.segments.items():
            for lo, hi in ivs:
                if lo == hi:
                    raise PreconditionError("positive-measure subsets cannot have isolated points")
                a, b = lo * self.den, hi * self.den
                assert a.denominator == 1 and b.denominator == 1, "subset is not grid-aligned"
                arcs.update((e, i) for i in range(int(a), int(b)))
        return arcs

    def nodes(self, arcs: Iterable[Arc]) -> set[tuple]:
        out: set[tuple] = set()
        for arc in arcs:
            out.update(self.arc_keys(arc))
        return out

    def connected(self, arcs: set[Arc]) -> bool:
        arcs = set(arcs)
        if not arcs:
            return True
        start = next(iter(sorted(arcs)))
        seen = {start}
        frontier = [start]
        by_node: dict[tuple, list[Arc]] = {}
        for a in arcs:
            for k in self.arc_keys(a):
                by_node.setdefault(k, []).append(a)
        while frontier:
            a = frontier.pop()
            for k in self.arc_keys(a):
                for b in by_node[k]:
                    if b not in seen:
                        seen.add(b)
                        frontier.append(b)
        return len(seen) == len(arcs)


def _swap_move(grid: _Grid, arcs: set[Arc], grow_arc: Arc, attach_key: tuple,
               settled: set[Arc]) -> tuple[PairedMove, set[Arc]]:
    """Grow ``grow_arc`` from ``attach_key`` while eating one removable arc.

    The eaten arc is the least non-settled arc admitting an eat direction
    that keeps every intermediate set connected: the rest of the arcs must
    stay connected and keep the attachment point, and the surviving tip of
    the eaten arc must end up glued to the rest or to the grown arc.  Arcs
    buried inside a longer segment are eaten in interior mode (both
    closure points survive as glue).
    """
    choice = None
    for c in sorted(arcs - settled):
        rest = arcs - {c}
        keys = grid.arc_keys(c)
        if not rest:
            # pure slide: eat from the far end, stay glued at the attachment
            for side in (0, 1):
                if keys[1 - side] == attach_key:
                    choice = (c, side)
                    break
            if choice is None:  # pragma: no cover - attach is an endpoint here
                raise SolverInternalError("sliding arc lost its attachment point")
            break
        rest_nodes = grid.nodes(rest)
        if attach_key not in rest_nodes or not grid.connected(rest):
            continue
        for side in (0, 1):  # eat starting from this side of the arc
            far = keys[1 - side]
            if far in rest_nodes or far == attach_key:
                choice = (c, side)
                break
        if choice:
            break
    if choice is None:
        raise SolverInternalError("no removable arc available for a swap move")
    eaten, side = choice
    if side == 0:
        shrink = TipMove("shrink", eaten[0], grid.coord(eaten, 0), 1, grid.step)
    else:
        shrink = TipMove("shrink", eaten[0], grid.coord(eaten, 1), -1, grid.step)
    gkeys = grid.arc_keys(grow_arc)
    if gkeys[0] == attach_key:
        grow = TipMove("grow", grow_arc[0], grid.coord(grow_arc, 0), 1, grid.step)
    elif gkeys[1] == attach_key:
        grow = TipMove("grow", grow_arc[0], grid.coord(grow_arc, 1), -1, grid.step)
    else:  # pragma: no cover - callers pass an endpoint of grow_arc
        raise SolverInternalError("grow arc does not touch its attachment point")
    new_arcs = (arcs - {eaten}) | {grow_arc}
    return PairedMove(grow=grow, shrink=shrink), new_arcs


def _onion_order(grid: _Grid, target: set[Arc], seed_key: tuple) -> list[Arc]:
    """Breadth-first arc order so every prefix is connected, from seed_key."""
    first = sorted(a for a in target if seed_key in grid.arc_keys(a))
    if not first:
        raise SolverInternalError("target does not touch the contact point")
    order = [first[0]]
    seen = {first[0]}
    reached = set(grid.arc_keys(first[0])) | {seed_key}
    while len(order) < len(target):
        nxt = sorted(a for a in target - seen if reached & set(grid.arc_keys(a)))
        if not nxt:  # pragma: no cover - targets are connected subsets
            raise SolverInternalError("target arcs are not connected")
        order.append(nxt[0])
        seen.add(nxt[0])
        reached |= set(grid.arc_keys(nxt[0]))
    return order


def _denominators(subset: ConnSubset) -> list[int]:
    return [x.denominator for ivs in subset.segments.values() for lo, hi in ivs for x in (lo, hi)]


def connect_in_xr(a: ConnSubset, b: ConnSubset, r: Rational) -> MoveSchedule:
    """Measure-preserving schedule deforming ``a`` into exactly ``b``.

    Both sets must be connected with measure ``r`` strictly between 0 and
    the number of edges.  Every prefix of the returned schedule is a
    connected subset of measure exactly r, and consecutive prefixes move
    at most one grow tip and one shrink tip at unit rate, which bounds the
    subset-metric speed by 2.
    """
    r = rat(r)
    graph = a.graph
    if b.graph is not graph:
        raise PreconditionError("subsets live on different graphs")
    if not ZERO < r < graph.total_measure():
        raise PreconditionError("r must lie strictly between 0 and the total measure")
    if a.measure() != r or b.measure() != r:
        raise PreconditionError("both subsets must have measure r")
    if a == b:
        return MoveSchedule(a, [])

    moves: list[Move] = []
    dens = _denominators(a) + _denominators(b)
    geodesic: list[tuple[str, Fraction, Fraction]] = []
    inter = segments_intersection(graph, a.segments, b.segments)
    if inter:
        e, ivs = next(iter(inter.items()))
        contact = GraphPoint(e, ivs[0][0])
    else:
        p, q = closest_boundary_pair(a, b)
        geodesic = graph.geodesic_arcs(p, q)
        contact = q
        dens += [x.denominator for _, frm, to in geodesic for x in (frm, to)]
    grid = _Grid(graph, dens)
    arcs = grid.arcs_of(a)

    # phase 1: slide along the geodesic until the target is touched
    for edge, frm, to in geodesic:
        lo, hi = (frm, to) if frm < to else (to, frm)
        cells = range(int(lo * grid.den), int(hi * grid.den))
        ordered = list(cells) if frm < to else list(reversed(cells))
        for i in ordered:
            arc = (edge, i)
            enter = grid.key(edge, Fraction(i if frm < to else i + 1, grid.den))
            move, arcs = _swap_move(grid, arcs, arc, enter, set())
            moves.append(move)

    # phase 2: settle the target arcs in onion order
    contact_key = grid.key(contact.edge, contact.t)
    target = grid.arcs_of(b)
    settled: set[Arc] = set()
    for i, arc in enumerate(_onion_order(grid, target, contact_key)):
        if arc in arcs:
            settled.add(arc)
            continue
        if i == 0:
            attach = contact_key
        else:
            options = set(grid.arc_keys(arc)) & grid.nodes(settled)
            attach = sorted(options)[0]
        move, arcs = _swap_move(grid, arcs, arc, attach, settled)
        moves.append(move)
        settled.add(arc)
    if arcs != target:  # pragma: no cover - settling is exhaustive
        raise SolverInternalError("homotopy did not terminate on the target set")
    return MoveSchedule(a, moves)


# -- roots of the integral along a schedule -----------------------------------


def split_against(schedule: MoveSchedule, f: StepFunction) -> MoveSchedule:
    """Refine moves so no tip crosses a breakpoint of ``f`` mid-move."""

    def cuts_for(tip: TipMove) -> list[Fraction]:
        lo, hi = tip.span()
        cuts = [b for b in f.breakpoints(tip.edge) if lo < b < hi]
        return sorted((abs(b - tip.t) for b in cuts))

    def slice_tip(tip: TipMove, times: Sequence[Fraction]) -> list[TipMove]:
        out = []
        prev = ZERO
        for t in list(times) + [tip.duration]:
            if t > prev:
                out.append(TipMove(tip.kind, tip.edge, tip.t + tip.direction * prev, tip.direction, t - prev))
                prev = t
        return out

    moves: list[Move] = []
    for move in schedule.moves:
        if isinstance(move, TipMove):
            moves.extend(slice_tip(move, cuts_for(move)))
        else:
            times = sorted(set(cuts_for(move.grow)) | set(cuts_for(move.shrink)))
            grows = slice_tip(move.grow, times)
            shrinks = slice_tip(move.shrink, times)
            moves.extend(PairedMove(g, s) for g, s in zip(grows, shrinks))
    return MoveSchedule(schedule.start, moves)


def _rate(f: StepFunction, move: Move) -> Fraction:
    if isinstance(move, PairedMove):
        return _rate(f, move.grow) + _rate(f, move.shrink)
    lo, hi = move.span()
    v = f.value_on(move.edge, lo, hi)
    return v if move.kind == "grow" else -v


def find_zero_along(f: StepFunction, schedule: MoveSchedule) -> tuple[Fraction, ConnSubset]:
    """First time s with zero integral along the schedule, plus the set there.

    The integral is linear in time within each refined move, so one exact
    linear solve per sign change suffices.
    """
    refined = split_against(schedule, f)
    value = integral_subset(f, refined.start)
    if value == 0:
        return ZERO, refined.start
    elapsed = ZERO
    for move in refined.moves:
        rate = _rate(f, move)
        nxt = value + rate * move.duration
        if value * nxt <= 0:
            dt = -value / rate
            s = elapsed + dt
            subset = schedule.apply_prefix(s)
            if integral_subset(f, subset) != 0:  # pragma: no cover - exact arithmetic
                raise SolverInternalError("zero crossing did not verify")
            return s, subset
        value = nxt
        elapsed += move.duration
    raise PreconditionError("no zero along the schedule; endpoint integrals must straddle zero")
