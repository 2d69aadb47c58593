"""Metric graphs with unit-interval edges and their closed connected subsets.

A graph is treated as a measure/metric space: every edge is a copy of
[0, 1] glued to its endpoints, subsets are finite unions of closed
segments, and all coordinates are exact rationals.  Geodesic distance,
the connected hull of two subsets and the subset metric
``d(A, B) = measure(hull(A, B)) - measure(A & B)`` are all computed
exactly.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .errors import PreconditionError

Rational = Union[Fraction, int, str]

ZERO = Fraction(0)
ONE = Fraction(1)


def rat(x: Rational) -> Fraction:
    """Coerce ints, strings like ``"3/4"`` and Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"not a rational: {x!r}")


@dataclass(frozen=True, order=True)
class GraphPoint:
    """A point of the graph: offset ``t`` along edge ``edge``.

    ``t = 0`` and ``t = 1`` denote the edge's endpoints; two such points
    on different edges may denote the same vertex, so equality of points
    must go through :meth:`MetricGraph.canonical_point`.
    """

    edge: str
    t: Fraction

    def __post_init__(self):
        object.__setattr__(self, "t", rat(self.t))
        if not ZERO <= self.t <= ONE:
            raise PreconditionError(f"offset {self.t} outside [0, 1]")


@dataclass(frozen=True, order=True)
class EdgeSegment:
    """Closed subinterval [lo, hi] of one edge; lo == hi is a point."""

    edge: str
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", rat(self.lo))
        object.__setattr__(self, "hi", rat(self.hi))
        if not ZERO <= self.lo <= self.hi <= ONE:
            raise PreconditionError(f"bad segment [{self.lo}, {self.hi}]")

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo


SegmentMap = Mapping[str, Sequence[tuple[Rational, Rational]]]


class MetricGraph:
    """Connected multigraph (loops and parallel edges allowed).

    ``edges`` maps ids to endpoint pairs; offset 0 of an edge sits at its
    first endpoint and offset 1 at its second.
    """

    def __init__(self, vertices: Iterable[str], edges: Iterable[tuple[str, tuple[str, str]]]):
        self.vertices = frozenset(vertices)
        ends: dict[str, tuple[str, str]] = {}
        for eid, (u, v) in edges:
            if eid in ends:
                raise PreconditionError(f"duplicate edge id {eid!r}")
            if u not in self.vertices or v not in self.vertices:
                raise PreconditionError(f"edge {eid!r} uses undeclared vertex")
            ends[eid] = (u, v)
        if not ends:
            raise PreconditionError("a metric graph needs at least one edge")
        self._ends = ends
        self.edge_ids: tuple[str, ...] = tuple(sorted(ends))
        adj: dict[str, list[tuple[str, str]]] = {v: [] for v in self.vertices}
        for eid, (u, v) in ends.items():
            adj[u].append((eid, v))
            if u != v:
                adj[v].append((eid, u))
        self._adj = {v: tuple(sorted(nbrs)) for v, nbrs in adj.items()}
        self._check_connected()
        self._vdist: dict[str, dict[str, int]] = {}

    # -- basic structure ------------------------------------------------

    def ends(self, edge: str) -> tuple[str, str]:
        try:
            return self._ends[edge]
        except KeyError:
            raise PreconditionError(f"unknown edge {edge!r}") from None

    def is_loop(self, edge: str) -> bool:
        u, v = self.ends(edge)
        return u == v

    def degree(self, v: str) -> int:
        deg = 0
        for eid, (a, b) in self._ends.items():
            deg += (a == v) + (b == v)
        return deg

    def incident_edges(self, v: str) -> tuple[str, ...]:
        return tuple(sorted(e for e, (a, b) in self._ends.items() if v in (a, b)))

    @property
    def num_edges(self) -> int:
        return len(self.edge_ids)

    def total_measure(self) -> Fraction:
        return Fraction(self.num_edges)

    def _check_connected(self) -> None:
        start = next(iter(self.vertices))
        seen = {start}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for _, y in self._adj[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        if seen != self.vertices:
            raise PreconditionError("graph is not connected")

    # -- points ----------------------------------------------------------

    def point(self, edge: str, t: Rational) -> GraphPoint:
        self.ends(edge)
        return GraphPoint(edge, rat(t))

    def vertex_point(self, v: str) -> GraphPoint:
        """Canonical GraphPoint for vertex ``v`` (lowest incident edge)."""
        if v not in self.vertices:
            raise PreconditionError(f"unknown vertex {v!r}")
        edge = self.incident_edges(v)[0]
        u, w = self.ends(edge)
        return GraphPoint(edge, ZERO if u == v else ONE)

    def canonical_point(self, p: GraphPoint) -> tuple:
        """Comparable key: ('v', name) for vertices, ('i', edge, t) inside."""
        u, v = self.ends(p.edge)
        if p.t == ZERO:
            return ("v", u)
        if p.t == ONE:
            return ("v", v)
        return ("i", p.edge, p.t)

    def same_point(self, p: GraphPoint, q: GraphPoint) -> bool:
        return self.canonical_point(p) == self.canonical_point(q)

    # -- vertex-level shortest paths --------------------------------------

    def vertex_distance(self, a: str, b: str) -> int:
        if a not in self._vdist:
            dist = {a: 0}
            queue = deque([a])
            while queue:
                x = queue.popleft()
                for _, y in self._adj[x]:
                    if y not in dist:
                        dist[y] = dist[x] + 1
                        queue.append(y)
            self._vdist[a] = dist
        return self._vdist[a][b]

    def shortest_vertex_path(self, a: str, b: str) -> list[tuple[str, bool]]:
        """Lexicographically-least shortest edge walk a -> b.

        Returns directed traversals ``(edge, forward)`` where forward means
        the edge is walked from endpoint 0 towards endpoint 1.
        """
        path: list[tuple[str, bool]] = []
        x = a
        while x != b:
            d = self.vertex_distance(x, b)
            for eid, y in self._adj[x]:
                if self.vertex_distance(y, b) == d - 1:
                    u, v = self.ends(eid)
                    path.append((eid, x == u))
                    x = y
                    break
            else:  # pragma: no cover - connectivity is a class invariant
                raise RuntimeError("shortest path reconstruction failed")
        return path

    # -- point-level geodesics --------------------------------------------

    def _endpoint_offsets(self, p: GraphPoint) -> list[tuple[str, Fraction]]:
        u, v = self.ends(p.edge)
        if u == v:
            return [(u, min(p.t, ONE - p.t))]
        return [(u, p.t), (v, ONE - p.t)]

    def point_distance(self, p: GraphPoint, q: GraphPoint) -> Fraction:
        """Geodesic distance, exact; partial offsets handled directly."""
        self.ends(p.edge), self.ends(q.edge)
        best = None
        if p.edge == q.edge:
            best = abs(p.t - q.t)
        for a, ca in self._endpoint_offsets(p):
            for b, cb in self._endpoint_offsets(q):
                d = ca + self.vertex_distance(a, b) + cb
                if best is None or d < best:
                    best = d
        return best

    def geodesic_arcs(self, p: GraphPoint, q: GraphPoint) -> list[tuple[str, Fraction, Fraction]]:
        """Directed arcs of one distance-realizing path p -> q.

        Each entry is ``(edge, from, to)`` walked from offset ``from``
        towards ``to`` (either may be the larger).  Ties between
        equal-length geodesics break towards the lowest edge id and
        offset.  A coincident pair yields a single degenerate arc.
        """
        routes: list[tuple[Fraction, tuple, list[tuple[str, Fraction, Fraction]]]] = []

        def add(dist: Fraction, arcs: list[tuple[str, Fraction, Fraction]]) -> None:
            key = tuple(sorted((e, min(a, b), max(a, b)) for e, a, b in arcs))
            routes.append((dist, key, arcs))

        if p.edge == q.edge:
            add(abs(q.t - p.t), [(p.edge, p.t, q.t)] if p.t != q.t else [])
        for a, ca in self._endpoint_offsets(p):
            for b, cb in self._endpoint_offsets(q):
                d = ca + self.vertex_distance(a, b) + cb
                arcs: list[tuple[str, Fraction, Fraction]] = []
                if ca > ZERO:
                    u, v = self.ends(p.edge)
                    if self.is_loop(p.edge):
                        arcs.append((p.edge, p.t, ZERO if p.t <= ONE - p.t else ONE))
                    else:
                        arcs.append((p.edge, p.t, ZERO if a == u else ONE))
                for eid, fwd in self.shortest_vertex_path(a, b):
                    arcs.append((eid, ZERO, ONE) if fwd else (eid, ONE, ZERO))
                if cb > ZERO:
                    uu, vv = self.ends(q.edge)
                    if self.is_loop(q.edge):
                        arcs.append((q.edge, ZERO if q.t <= ONE - q.t else ONE, q.t))
                    else:
                        arcs.append((q.edge, ZERO if b == uu else ONE, q.t))
                add(d, arcs)
        routes.sort(key=lambda r: (r[0], r[1]))
        best = routes[0][2]
        if not best:
            return [(p.edge, p.t, p.t)]
        return best

    def geodesic_segments(self, p: GraphPoint, q: GraphPoint) -> dict[str, list[tuple[Fraction, Fraction]]]:
        """Segments of one distance-realizing path p -> q (deterministic)."""
        segs: dict[str, list[tuple[Fraction, Fraction]]] = {}
        for e, a, b in self.geodesic_arcs(p, q):
            segs.setdefault(e, []).append((min(a, b), max(a, b)))
        return segs


# -- raw segment-map helpers (not necessarily connected) -------------------


def canonical_segments(graph: MetricGraph, raw: SegmentMap) -> dict[str, tuple[tuple[Fraction, Fraction], ...]]:
    """Merge, sort and normalize a segment map.

    Degenerate endpoint segments (vertex points) are re-attributed to the
    lowest incident edge so that equal sets compare equal.
    """
    merged: dict[str, list[tuple[Fraction, Fraction]]] = {}
    for e, spans in raw.items():
        graph.ends(e)
        ivs = sorted((rat(lo), rat(hi)) for lo, hi in spans)
        for lo, hi in ivs:
            if not ZERO <= lo <= hi <= ONE:
                raise PreconditionError(f"segment [{lo}, {hi}] outside edge {e!r}")
        out: list[tuple[Fraction, Fraction]] = []
        for lo, hi in ivs:
            if out and lo <= out[-1][1]:
                out[-1] = (out[-1][0], max(out[-1][1], hi))
            else:
                out.append((lo, hi))
        if out:
            merged[e] = out

    def covered_vertices(segs: dict[str, list[tuple[Fraction, Fraction]]]) -> set[str]:
        cov = set()
        for e, ivs in segs.items():
            u, v = graph.ends(e)
            for lo, hi in ivs:
                if lo == ZERO:
                    cov.add(u)
                if hi == ONE:
                    cov.add(v)
        return cov

    want = covered_vertices(merged)
    for e in list(merged):
        kept = [iv for iv in merged[e] if not (iv[0] == iv[1] and iv[0] in (ZERO, ONE))]
        if kept:
            merged[e] = kept
        else:
            del merged[e]
    have = covered_vertices(merged)
    for v in sorted(want - have):
        p = graph.vertex_point(v)
        merged.setdefault(p.edge, []).append((p.t, p.t))
        merged[p.edge].sort()
    return {e: tuple(ivs) for e, ivs in sorted(merged.items())}


def segments_measure(segs: Mapping[str, Sequence[tuple[Fraction, Fraction]]]) -> Fraction:
    return sum((hi - lo for ivs in segs.values() for lo, hi in ivs), ZERO)


def segments_connected(graph: MetricGraph, raw: SegmentMap) -> bool:
    """True iff the union of segments is a connected subspace of the graph."""
    segs = canonical_segments(graph, raw)
    if not segs:
        return False
    parent: dict = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        parent.setdefault(x, x)
        parent.setdefault(y, y)
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    nodes = []
    for e, ivs in segs.items():
        u, v = graph.ends(e)
        for i, (lo, hi) in enumerate(ivs):
            node = ("s", e, i)
            parent.setdefault(node, node)
            nodes.append(node)
            if lo == ZERO:
                union(node, ("v", u))
            if hi == ONE:
                union(node, ("v", v))
    roots = {find(n) for n in nodes}
    return len(roots) == 1


def _intersect_lists(a: Sequence[tuple[Fraction, Fraction]], b: Sequence[tuple[Fraction, Fraction]]) -> list[tuple[Fraction, Fraction]]:
    out = []
    for lo1, hi1 in a:
        for lo2, hi2 in b:
            lo, hi = max(lo1, lo2), min(hi1, hi2)
            if lo <= hi:
                out.append((lo, hi))
    return out


def segments_intersection(graph: MetricGraph, a: SegmentMap, b: SegmentMap) -> dict[str, tuple[tuple[Fraction, Fraction], ...]]:
    """Exact set intersection, aware of vertex identifications."""
    ca = canonical_segments(graph, a)
    cb = canonical_segments(graph, b)
    raw: dict[str, list[tuple[Fraction, Fraction]]] = {}
    for e in set(ca) & set(cb):
        ivs = _intersect_lists(ca[e], cb[e])
        if ivs:
            raw[e] = ivs
    # vertices covered by both sides, possibly via different edges
    for v in sorted(_vertices_of(graph, ca) & _vertices_of(graph, cb)):
        p = graph.vertex_point(v)
        raw.setdefault(p.edge, []).append((p.t, p.t))
    return canonical_segments(graph, raw)


def segments_union(graph: MetricGraph, a: SegmentMap, b: SegmentMap) -> dict[str, tuple[tuple[Fraction, Fraction], ...]]:
    raw: dict[str, list[tuple[Fraction, Fraction]]] = {}
    for src in (a, b):
        for e, ivs in src.items():
            raw.setdefault(e, []).extend((rat(lo), rat(hi)) for lo, hi in ivs)
    return canonical_segments(graph, raw)


def _vertices_of(graph: MetricGraph, segs: Mapping[str, Sequence[tuple[Fraction, Fraction]]]) -> set[str]:
    cov = set()
    for e, ivs in segs.items():
        u, v = graph.ends(e)
        for lo, hi in ivs:
            if lo == ZERO:
                cov.add(u)
            if hi == ONE:
                cov.add(v)
    return cov


# -- connected subsets -----------------------------------------------------


class ConnSubset:
    """Closed connected subset of a metric graph, in canonical form."""

    __slots__ = ("graph", "segments", "_key")

    def __init__(self, graph: MetricGraph, segments: SegmentMap):
        segs = canonical_segments(graph, segments)
        if not segs:
            raise PreconditionError("subset must be nonempty")
        if not segments_connected(graph, segs):
            raise PreconditionError("subset is not connected")
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "segments", segs)
        object.__setattr__(self, "_key", tuple((e, ivs) for e, ivs in segs.items()))

    def __setattr__(self, *a):  # immutable
        raise AttributeError("ConnSubset is immutable")

    def __eq__(self, other):
        return isinstance(other, ConnSubset) and self.graph is other.graph and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        parts = ", ".join(f"{e}{[f'[{lo},{hi}]' for lo, hi in ivs]}" for e, ivs in self.segments.items())
        return f"ConnSubset({parts})"

    # constructors

    @classmethod
    def from_point(cls, graph: MetricGraph, p: GraphPoint) -> "ConnSubset":
        return cls(graph, {p.edge: [(p.t, p.t)]})

    @classmethod
    def whole_graph(cls, graph: MetricGraph) -> "ConnSubset":
        return cls(graph, {e: [(ZERO, ONE)] for e in graph.edge_ids})

    # queries

    def measure(self) -> Fraction:
        return segments_measure(self.segments)

    def contains_point(self, p: GraphPoint) -> bool:
        kind = self.graph.canonical_point(p)
        if kind[0] == "v":
            return kind[1] in _vertices_of(self.graph, self.segments)
        _, e, t = kind
        return any(lo <= t <= hi for lo, hi in self.segments.get(e, ()))

    def edge_segments(self) -> tuple[EdgeSegment, ...]:
        return tuple(EdgeSegment(e, lo, hi) for e, ivs in self.segments.items() for lo, hi in ivs)

    def boundary_points(self) -> list[GraphPoint]:
        pts = []
        for e, ivs in self.segments.items():
            for lo, hi in ivs:
                pts.append(GraphPoint(e, lo))
                if hi != lo:
                    pts.append(GraphPoint(e, hi))
        return pts

    def min_point(self) -> GraphPoint:
        e, ivs = next(iter(self.segments.items()))
        return GraphPoint(e, ivs[0][0])


# -- subset-level operations -----------------------------------------------


def measure(subset: ConnSubset) -> Fraction:
    return subset.measure()


def set_distance(a: ConnSubset, b: ConnSubset) -> Fraction:
    """Infimum of point distances; 0 when the sets intersect."""
    graph = _common_graph(a, b)
    if segments_intersection(graph, a.segments, b.segments):
        return ZERO
    return min(
        graph.point_distance(p, q)
        for p in a.boundary_points()
        for q in b.boundary_points()
    )


def closest_boundary_pair(a: ConnSubset, b: ConnSubset) -> tuple[GraphPoint, GraphPoint]:
    """Distance-realizing boundary pair, lowest (edge, offset) on ties."""
    best = None
    for p in sorted(a.boundary_points()):
        for q in sorted(b.boundary_points()):
            d = a.graph.point_distance(p, q)
            key = (d, p.edge, p.t, q.edge, q.t)
            if best is None or key < best[0]:
                best = (key, p, q)
    return best[1], best[2]


def hull(a: ConnSubset, b: ConnSubset) -> ConnSubset:
    """Smallest closed connected superset of the union.

    Disjoint sets are joined by one distance-realizing geodesic; ties
    break towards the lowest edge id and offset.
    """
    graph = _common_graph(a, b)
    union = segments_union(graph, a.segments, b.segments)
    if segments_intersection(graph, a.segments, b.segments):
        return ConnSubset(graph, union)
    p, q = closest_boundary_pair(a, b)
    bridge = graph.geodesic_segments(p, q)
    return ConnSubset(graph, segments_union(graph, union, bridge))


def metric_d(a: ConnSubset, b: ConnSubset) -> Fraction:
    """Subset metric: measure of the hull minus measure of the meet."""
    graph = _common_graph(a, b)
    inter = segments_intersection(graph, a.segments, b.segments)
    return hull(a, b).measure() - segments_measure(inter)


def metric_d_xr(a: ConnSubset, b: ConnSubset, r: Rational) -> Fraction:
    """The 2r - 2*measure(meet) variant metric on equal-measure subsets.

    Disagrees with :func:`metric_d` for disjoint sets, where the latter
    also counts the separating distance; both are provided on purpose.
    """
    r = rat(r)
    if a.measure() != r or b.measure() != r:
        raise PreconditionError("both subsets must have measure r")
    graph = _common_graph(a, b)
    inter = segments_intersection(graph, a.segments, b.segments)
    return 2 * r - 2 * segments_measure(inter)


def _common_graph(a: ConnSubset, b: ConnSubset) -> MetricGraph:
    if a.graph is not b.graph:
        raise PreconditionError("subsets live on different graphs")
    return a.graph
