"""Chord solvers on whole graphs: windows on cover paths plus homotopy roots.

The main solver lifts a zero-mean step function to each path of a double
cover, where the circle mean-value argument yields a window whose image
is a connected measure-r subset with integral proportional to the path
integral.  The path integrals sum to twice the (zero) graph integral, so
either some window already has integral zero or two windows of opposite
sign exist and a zero is found exactly along the homotopy between them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .double_cover import ClosedPath, _check_min_degree, compute_double_cover, euler_circuit
from .errors import PreconditionError, SolverInternalError
from .interval_chords import LineStepFunction
from .metric_graph import ONE, ZERO, ConnSubset, GraphPoint, MetricGraph, Rational, rat
from .step_functions import StepFunction, integral_graph, integral_path, integral_subset
from .subset_space import connect_in_xr, find_zero_along


def path_profile(f: StepFunction, path: ClosedPath) -> LineStepFunction:
    """Lift of f along the path: a step function on [0, len(path)].

    The lift is measure-preserving on each traversal slot; reversed
    traversals flip the piece order.
    """
    spans = []
    for slot, (edge, forward) in enumerate(path.steps):
        for lo, hi, v in f.pieces[edge]:
            if forward:
                spans.append((slot + lo, slot + hi, v))
            else:
                spans.append((slot + ONE - hi, slot + ONE - lo, v))
    return LineStepFunction(spans, Fraction(len(path)))


def window_subset(graph: MetricGraph, path: ClosedPath, x: Fraction, w: Fraction) -> ConnSubset:
    """Image of the circle window [x, x + w] under the path's covering map."""
    n = Fraction(len(path))
    if not ZERO <= w <= n:
        raise PreconditionError("window length outside [0, path length]")
    x = rat(x) % n
    pieces = [(x, min(x + w, n))]
    if x + w > n:
        pieces.append((ZERO, x + w - n))
    segments: dict[str, list[tuple[Fraction, Fraction]]] = {}
    for slot, (edge, forward) in enumerate(path.steps):
        s0, s1 = Fraction(slot), Fraction(slot + 1)
        for a, b in pieces:
            lo, hi = max(a, s0), min(b, s1)
            if lo > hi or (lo == hi and w > 0):
                continue  # degenerate slot touches are closure points of neighbours
            u, v = lo - s0, hi - s0
            segments.setdefault(edge, []).append((u, v) if forward else (ONE - v, ONE - u))
    return ConnSubset(graph, segments)


@dataclass(frozen=True)
class GraphChordResult:
    subset: ConnSubset
    cover: tuple[ClosedPath, ...]
    window_start: Optional[Fraction] = None
    path_index: Optional[int] = None
    endpoint_pair: Optional[tuple[int, int]] = None
    schedule_time: Optional[Fraction] = None


def arc_on_semi_simple(path: ClosedPath, f: StepFunction, r: Rational) -> ConnSubset:
    """Connected measure-r image of a window on a semi-simple closed path.

    The window integral equals (r / n) times the path integral; windows
    whose image would self-overlap (possible only across the seam of a
    walk) are skipped in favour of the next exact root.
    """
    r = rat(r)
    n = Fraction(len(path))
    if not ZERO <= r <= ONE:
        raise PreconditionError("window measure must lie in [0, 1]")
    from .double_cover import is_semi_simple

    if not is_semi_simple(path):
        raise PreconditionError("path is not semi-simple")
    if r == 0:
        return window_subset(path.graph, path, ZERO, ZERO)
    profile = path_profile(f, path)
    target = (r / n) * profile.integral()
    for x in _window_roots(profile, r, target):
        subset = window_subset(path.graph, path, x, r)
        if subset.measure() == r:
            if integral_subset(f, subset) != target:  # pragma: no cover - exact lift
                raise SolverInternalError("window image integral mismatch")
            return subset
    raise SolverInternalError("no non-overlapping window; this contradicts semi-simplicity")


def _window_roots(profile: LineStepFunction, w: Fraction, target: Fraction):
    """All x in [0, L) with wrap-window integral equal to target, in order."""
    length = profile.length
    pts = {ZERO, length}
    for b in profile.breakpoints():
        pts.add(b % length)
        pts.add((b - w) % length)
    grid = sorted(pts)
    values = [(x, profile.circle_window(x, w)) for x in grid]
    seen = set()
    for (x0, v0), (x1, v1) in zip(values, values[1:]):
        root = None
        if v0 == target:
            root = x0
        elif (v0 - target) * (v1 - target) < 0:
            root = x0 + (x1 - x0) * (target - v0) / (v1 - v0)
        if root is not None and root not in seen:
            seen.add(root)
            yield root
    if values and values[-1][1] == target and values[-1][0] % length not in seen:
        yield values[-1][0] % length


def _signed_window(path: ClosedPath, f: StepFunction, r: Fraction, sign: int) -> ConnSubset:
    """A measure-r window whose integral has the given sign.

    The window integral is piecewise linear with mean (r/n) times the path
    integral, so a value of the mean's sign is attained at a breakpoint of
    the window function; those breakpoints stay on the coarse grid of f's
    own breakpoints, which keeps the later homotopy grid small.
    """
    profile = path_profile(f, path)
    length = profile.length
    pts = {ZERO}
    for b in profile.breakpoints():
        pts.add(b % length)
        pts.add((b - r) % length)
    best = None
    for x in sorted(pts):
        value = profile.circle_window(x, r)
        if sign * value > 0:
            subset = window_subset(path.graph, path, x, r)
            if subset.measure() == r:
                return subset
    raise SolverInternalError("no window of the path integral's sign")  # pragma: no cover


def graph_chord_solve(graph: MetricGraph, f: StepFunction, r: Rational) -> GraphChordResult:
    """Connected subset of measure exactly r with integral exactly zero.

    Requires a connected graph with minimum degree 2, a zero-mean step
    function and r in [0, 1].
    """
    r = rat(r)
    if f.graph is not graph:
        raise PreconditionError("function lives on a different graph")
    if not ZERO <= r <= ONE:
        raise PreconditionError("r must lie in [0, 1]")
    _check_min_degree(graph)
    if integral_graph(f) != 0:
        raise PreconditionError("function must have zero integral over the graph")
    if r == 0:
        point = GraphPoint(graph.edge_ids[0], ZERO)
        return GraphChordResult(ConnSubset.from_point(graph, point), cover=())
    cover = compute_double_cover(graph)
    totals = [integral_path(f, path.steps) for path in cover]
    for i, total in enumerate(totals):
        if total == 0:
            subset = arc_on_semi_simple(cover[i], f, r)
            return GraphChordResult(subset, cover, path_index=i)
    pos = next(i for i, t in enumerate(totals) if t > 0)
    neg = next(i for i, t in enumerate(totals) if t < 0)
    a = _signed_window(cover[pos], f, r, sign=1)
    b = _signed_window(cover[neg], f, r, sign=-1)
    schedule = connect_in_xr(a, b, r)
    s, subset = find_zero_along(f, schedule)
    return GraphChordResult(subset, cover, endpoint_pair=(pos, neg), schedule_time=s)


@dataclass(frozen=True)
class EulerChordResult:
    subset: ConnSubset
    circuit: ClosedPath
    window_start: Optional[Fraction] = None


def euler_chord_solve(graph: MetricGraph, f: StepFunction, r: Rational) -> EulerChordResult:
    """Every chord on an Euler graph: measure r anywhere in [0, |E|]."""
    r = rat(r)
    if f.graph is not graph:
        raise PreconditionError("function lives on a different graph")
    total_measure = graph.total_measure()
    if not ZERO <= r <= total_measure:
        raise PreconditionError("r must lie in [0, |E|]")
    if integral_graph(f) != 0:
        raise PreconditionError("function must have zero integral over the graph")
    circuit = euler_circuit(graph)
    if r == 0:
        edge, forward = circuit.steps[0]
        t = ZERO if forward else ONE
        return EulerChordResult(ConnSubset.from_point(graph, GraphPoint(edge, t)), circuit)
    if r == total_measure:
        return EulerChordResult(ConnSubset.whole_graph(graph), circuit)
    profile = path_profile(f, circuit)
    from .interval_chords import find_arc_chord_circle

    x = find_arc_chord_circle(profile, r, ZERO)
    subset = window_subset(graph, circuit, x, r)
    if subset.measure() != r or integral_subset(f, subset) != 0:  # pragma: no cover
        raise SolverInternalError("euler window image failed its postconditions")
    return EulerChordResult(subset, circuit, window_start=x)


# -- discretized brute-force oracle -------------------------------------------


def discretized_zero_subset(graph: MetricGraph, f: StepFunction, r: Rational,
                            parts: int = 24) -> Optional[ConnSubset]:
    """Exhaustive search over connected unions of 1/parts arcs of measure r.

    Returns the first (in enumeration order) connected grid subset with
    integral exactly zero, or None when the grid holds no solution or r
    is not representable on the grid.
    """
    r = rat(r)
    size = r * parts
    if size.denominator != 1:
        return None
    k = int(size)
    if k == 0:
        return ConnSubset.from_point(graph, GraphPoint(graph.edge_ids[0], ZERO))
    step = Fraction(1, parts)
    arcs = [(e, i) for e in graph.edge_ids for i in range(parts)]
    index = {a: n for n, a in enumerate(arcs)}

    def key_of(edge: str, i: int) -> tuple:
        return graph.canonical_point(GraphPoint(edge, Fraction(i, parts)))

    by_node: dict[tuple, list[int]] = {}
    for e, i in arcs:
        for kk in (key_of(e, i), key_of(e, i + 1)):
            by_node.setdefault(kk, []).append(index[(e, i)])
    neighbours: list[set[int]] = [set() for _ in arcs]
    for ids in by_node.values():
        for a in ids:
            neighbours[a].update(b for b in ids if b != a)

    weights = [f.integral_on(e, Fraction(i, parts), Fraction(i + 1, parts)) for e, i in arcs]

    def enumerate_from(seed: int):
        # ESU-style: extensions only above the seed, each subset once
        def extend(sub: list[int], ext: set[int], frontier_excluded: set[int]):
            if len(sub) == k:
                yield sub
                return
            ext = set(ext)
            while ext:
                w = min(ext)
                ext.remove(w)
                new_excluded = frontier_excluded | ext | {w}
                new_ext = ext | {u for u in neighbours[w] if u > seed and u not in new_excluded and u not in sub}
                yield from extend(sub + [w], new_ext, new_excluded)

        yield from extend([seed], {u for u in neighbours[seed] if u > seed}, {seed})

    for seed in range(len(arcs)):
        for sub in enumerate_from(seed):
            if sum(weights[a] for a in sub) == 0:
                segments: dict[str, list[tuple[Fraction, Fraction]]] = {}
                for a in sub:
                    e, i = arcs[a]
                    segments.setdefault(e, []).append((Fraction(i, parts), Fraction(i + 1, parts)))
                return ConnSubset(graph, segments)
    return None


# -- evidence harness ----------------------------------------------------------


@dataclass(frozen=True)
class EvidenceReport:
    graph_edges: int
    r: Fraction
    trials: int
    successes: int
    methods: tuple[str, ...]
    failures: tuple[str, ...]

    @property
    def all_succeeded(self) -> bool:
        return self.successes == self.trials


def chord_membership_evidence(graph: MetricGraph, r: Rational, trials: int,
                              seed: int = 0, parts: int = 12) -> EvidenceReport:
    """Sample zero-mean functions and try to witness r in the chord set.

    A failure is evidence (never proof) that r lies outside the chord set;
    on min-degree-2 graphs with r <= 1 and on Euler graphs the theorem
    solvers are total, so all trials succeed.
    """
    from .randgen import random_zero_mean_function

    r = rat(r)
    if trials < 1:
        raise PreconditionError("at least one trial required")
    import random

    rng = random.Random(seed)
    successes = 0
    methods: list[str] = []
    failures: list[str] = []
    euler = all(graph.degree(v) % 2 == 0 for v in graph.vertices)
    min_deg2 = all(graph.degree(v) >= 2 for v in graph.vertices)
    for t in range(trials):
        f = random_zero_mean_function(rng, graph)
        try:
            if min_deg2 and r <= ONE:
                subset = graph_chord_solve(graph, f, r).subset
                method = "double-cover"
            elif euler and r <= graph.total_measure():
                subset = euler_chord_solve(graph, f, r).subset
                method = "euler-circuit"
            else:
                found = discretized_zero_subset(graph, f, r, parts)
                if found is None:
                    failures.append(f"trial {t}: no grid witness at {parts} parts per edge")
                    continue
                subset, method = found, "discretized-search"
            assert subset.measure() == r and integral_subset(f, subset) == 0
            successes += 1
            methods.append(method)
        except (PreconditionError, SolverInternalError) as exc:
            failures.append(f"trial {t}: {exc}")
    return EvidenceReport(graph.num_edges, r, trials, successes, tuple(sorted(set(methods))), tuple(failures))
