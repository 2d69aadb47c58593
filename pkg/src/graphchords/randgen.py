"""Random instances for property tests and the evidence harness.

Denominators are kept small on purpose: the homotopy machinery refines
everything onto the common denominator grid, so mild fractions keep the
exact arithmetic fast without losing generality of the properties.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .metric_graph import ONE, ZERO, ConnSubset, GraphPoint, MetricGraph
from .step_functions import StepFunction


def random_connected_multigraph(rng: random.Random, max_edges: int = 6,
                                min_degree: int = 0, max_vertices: int = 4) -> MetricGraph:
    """Rejection-sample a connected multigraph, optionally with min degree."""
    while True:
        nv = rng.randint(1, max_vertices)
        vertices = [f"v{i}" for i in range(nv)]
        ne = rng.randint(max(1, min_degree), max_edges)
        edges = []
        for i in range(ne):
            u = rng.choice(vertices)
            v = rng.choice(vertices)
            edges.append((f"e{i}", (u, v)))
        try:
            graph = MetricGraph(vertices, edges)
        except Exception:
            continue
        if min_degree and any(graph.degree(v) < min_degree for v in graph.vertices):
            continue
        return graph


def random_euler_graph(rng: random.Random, max_edges: int = 8) -> MetricGraph:
    """Connected graph with all degrees even: pair up odd vertices with extra edges."""
    while True:
        base = random_connected_multigraph(rng, max_edges=max(1, max_edges - 2))
        odd = sorted(v for v in base.vertices if base.degree(v) % 2)
        edges = [(e, base.ends(e)) for e in base.edge_ids]
        for j in range(0, len(odd), 2):
            edges.append((f"x{j}", (odd[j], odd[j + 1])))
        if len(edges) > max_edges:
            continue
        graph = MetricGraph(base.vertices, edges)
        assert all(graph.degree(v) % 2 == 0 for v in graph.vertices)
        return graph


def _random_breaks(rng: random.Random, max_pieces: int, max_den: int) -> list[Fraction]:
    cuts = {ZERO, ONE}
    for _ in range(rng.randint(0, max_pieces - 1)):
        den = rng.randint(2, max_den)
        num = rng.randint(1, den - 1)
        cuts.add(Fraction(num, den))
    return sorted(cuts)


def random_step_function(rng: random.Random, graph: MetricGraph,
                         max_pieces: int = 3, max_den: int = 4,
                         value_range: int = 3) -> StepFunction:
    pieces = {}
    for e in graph.edge_ids:
        breaks = _random_breaks(rng, max_pieces, max_den)
        pieces[e] = [
            (a, b, Fraction(rng.randint(-value_range, value_range)))
            for a, b in zip(breaks, breaks[1:])
        ]
    return StepFunction(graph, pieces)


def random_zero_mean_function(rng: random.Random, graph: MetricGraph,
                              max_pieces: int = 3, max_den: int = 4) -> StepFunction:
    """Random step function shifted by its mean so the graph integral is 0."""
    from .step_functions import integral_graph

    f = random_step_function(rng, graph, max_pieces, max_den)
    mean = integral_graph(f) / graph.total_measure()
    return f.add(StepFunction.constant(graph, -mean))


def random_unit_integral_line(rng: random.Random, max_pieces: int = 4,
                              max_den: int = 5, signed: bool = True):
    """Step function on [0, 1] with integral exactly 1 (for interval chords)."""
    from .interval_chords import LineStepFunction

    while True:
        breaks = _random_breaks(rng, max_pieces, max_den)
        lo_val = -3 if signed else 0
        pieces = [(a, b, Fraction(rng.randint(lo_val, 4))) for a, b in zip(breaks, breaks[1:])]
        f = LineStepFunction(pieces)
        total = f.integral()
        if total != 0:
            return f.scale(1 / total)


def random_connected_subset(rng: random.Random, graph: MetricGraph,
                            measure: Fraction, den: int = 4) -> Optional[ConnSubset]:
    """Grow a connected union of 1/den grid arcs with the exact target measure."""
    size = measure * den
    if size.denominator != 1 or size == 0:
        raise ValueError("measure must be a positive multiple of 1/den")
    k = int(size)
    arcs = [(e, i) for e in graph.edge_ids for i in range(den)]
    if k > len(arcs):
        return None

    def keys(arc):
        e, i = arc
        return (
            graph.canonical_point(GraphPoint(e, Fraction(i, den))),
            graph.canonical_point(GraphPoint(e, Fraction(i + 1, den))),
        )

    start = rng.choice(arcs)
    chosen = {start}
    nodes = set(keys(start))
    for _ in range(k - 1):
        frontier = [a for a in arcs if a not in chosen and (set(keys(a)) & nodes)]
        if not frontier:
            return None
        nxt = rng.choice(frontier)
        chosen.add(nxt)
        nodes.update(keys(nxt))
    segments: dict[str, list[tuple[Fraction, Fraction]]] = {}
    for e, i in chosen:
        segments.setdefault(e, []).append((Fraction(i, den), Fraction(i + 1, den)))
    return ConnSubset(graph, segments)


def random_subset_any(rng: random.Random, graph: MetricGraph, den: int = 4) -> ConnSubset:
    """Connected subset of a random positive grid measure (for metric tests)."""
    total = graph.num_edges * den
    while True:
        k = rng.randint(1, total)
        subset = random_connected_subset(rng, graph, Fraction(k, den), den)
        if subset is not None:
            return subset


def random_point(rng: random.Random, graph: MetricGraph, den: int = 8) -> GraphPoint:
    e = rng.choice(graph.edge_ids)
    return GraphPoint(e, Fraction(rng.randint(0, den), den))
