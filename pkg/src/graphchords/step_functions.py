"""Exact-rational step functions on metric graphs and their integrals."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .errors import PreconditionError
from .metric_graph import ONE, ZERO, ConnSubset, MetricGraph, Rational, rat

Piece = tuple[Fraction, Fraction, Fraction]  # (lo, hi, value)


def _normalize_pieces(spans: Sequence[tuple[Rational, Rational, Rational]], length: Fraction = ONE) -> tuple[Piece, ...]:
    pieces = [(rat(lo), rat(hi), rat(v)) for lo, hi, v in spans]
    pieces.sort()
    if not pieces or pieces[0][0] != ZERO or pieces[-1][1] != length:
        raise PreconditionError(f"pieces must partition [0, {length}]")
    for (lo1, hi1, _), (lo2, _, _) in zip(pieces, pieces[1:]):
        if hi1 != lo2:
            raise PreconditionError("pieces must be contiguous")
    for lo, hi, _ in pieces:
        if lo >= hi:
            raise PreconditionError("empty piece")
    # merge equal-valued neighbours for a canonical form
    out: list[Piece] = []
    for p in pieces:
        if out and out[-1][2] == p[2]:
            out[-1] = (out[-1][0], p[1], p[2])
        else:
            out.append(p)
    return tuple(out)


class StepFunction:
    """Piecewise-constant function on a graph, one partition of [0,1] per edge.

    Values at the breakpoints themselves are irrelevant (measure zero);
    pieces are treated as half-open with the last one closed.
    """

    __slots__ = ("graph", "pieces")

    def __init__(self, graph: MetricGraph, pieces: Mapping[str, Sequence[tuple[Rational, Rational, Rational]]]):
        norm: dict[str, tuple[Piece, ...]] = {}
        for e in graph.edge_ids:
            if e not in pieces:
                raise PreconditionError(f"no pieces for edge {e!r}")
            norm[e] = _normalize_pieces(pieces[e])
        unknown = set(pieces) - set(graph.edge_ids)
        if unknown:
            raise PreconditionError(f"pieces for unknown edges {sorted(unknown)}")
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "pieces", norm)

    def __setattr__(self, *a):
        raise AttributeError("StepFunction is immutable")

    def __eq__(self, other):
        return isinstance(other, StepFunction) and self.graph is other.graph and self.pieces == other.pieces

    def __hash__(self):
        return hash(tuple(sorted(self.pieces.items())))

    @classmethod
    def constant(cls, graph: MetricGraph, value: Rational) -> "StepFunction":
        v = rat(value)
        return cls(graph, {e: [(ZERO, ONE, v)] for e in graph.edge_ids})

    @classmethod
    def from_edge_values(cls, graph: MetricGraph, values: Mapping[str, Rational]) -> "StepFunction":
        return cls(graph, {e: [(ZERO, ONE, rat(values[e]))] for e in graph.edge_ids})

    # -- evaluation helpers ------------------------------------------------

    def breakpoints(self, edge: str) -> list[Fraction]:
        return [lo for lo, _, _ in self.pieces[edge][1:]]

    def value_on(self, edge: str, lo: Fraction, hi: Fraction) -> Fraction:
        """Value on an interval assumed not to straddle a breakpoint."""
        mid = (lo + hi) / 2 if lo != hi else lo
        for plo, phi, v in self.pieces[edge]:
            if plo <= mid < phi or (phi == ONE and mid == ONE):
                return v
        raise PreconditionError(f"offset {mid} outside [0,1]")  # pragma: no cover

    def edge_integral(self, edge: str) -> Fraction:
        return sum(((hi - lo) * v for lo, hi, v in self.pieces[edge]), ZERO)

    def integral_on(self, edge: str, lo: Fraction, hi: Fraction) -> Fraction:
        total = ZERO
        for plo, phi, v in self.pieces[edge]:
            a, b = max(lo, plo), min(hi, phi)
            if a < b:
                total += (b - a) * v
        return total

    def max_abs_value(self) -> Fraction:
        return max(abs(v) for ps in self.pieces.values() for _, _, v in ps)

    def scale(self, c: Rational) -> "StepFunction":
        c = rat(c)
        return StepFunction(self.graph, {e: [(lo, hi, c * v) for lo, hi, v in ps] for e, ps in self.pieces.items()})

    def add(self, other: "StepFunction") -> "StepFunction":
        if other.graph is not self.graph:
            raise PreconditionError("functions live on different graphs")
        out = {}
        for e in self.graph.edge_ids:
            cuts = sorted({lo for lo, _, _ in self.pieces[e]} | {lo for lo, _, _ in other.pieces[e]} | {ONE})
            spans = []
            for lo, hi in zip(cuts, cuts[1:]):
                spans.append((lo, hi, self.value_on(e, lo, hi) + other.value_on(e, lo, hi)))
            out[e] = spans
        return StepFunction(self.graph, out)


def integral_graph(f: StepFunction) -> Fraction:
    """Integral of f over the whole graph."""
    return sum((f.edge_integral(e) for e in f.graph.edge_ids), ZERO)


def integral_subset(f: StepFunction, subset: ConnSubset) -> Fraction:
    """Integral of f over a subset, exact."""
    if subset.graph is not f.graph:
        raise PreconditionError("subset and function live on different graphs")
    total = ZERO
    for e, ivs in subset.segments.items():
        for lo, hi in ivs:
            total += f.integral_on(e, lo, hi)
    return total


def integral_path(f: StepFunction, traversals: Sequence[tuple[str, bool]]) -> Fraction:
    """Integral along an edge walk: whole-edge integrals with multiplicity."""
    total = ZERO
    for edge, _forward in traversals:
        total += f.edge_integral(edge)
    return total
