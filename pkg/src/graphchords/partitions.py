"""Certificates that equal-measure connected subsets tile a graph n-fold."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from .double_cover import _check_min_degree, compute_double_cover, euler_circuit
from .errors import PreconditionError
from .graph_chords import window_subset
from .metric_graph import ONE, ZERO, ConnSubset, MetricGraph, rat


@dataclass(frozen=True)
class PartitionCertificate:
    """A collection of measure-r connected subsets covering the graph n times
    except at finitely many points."""

    graph: MetricGraph
    subsets: tuple[ConnSubset, ...]
    r: Fraction
    n: int

    def __post_init__(self):
        object.__setattr__(self, "r", rat(self.r))
        object.__setattr__(self, "subsets", tuple(self.subsets))
        if self.n < 1:
            raise PreconditionError("multiplicity n must be a positive integer")


def verify_partition(graph: MetricGraph, cert: PartitionCertificate) -> bool:
    """Exact check: r-measures, connectivity, and n-fold coverage off a finite set.

    Segment endpoints refine each edge into open intervals on which the
    coverage count is constant; the finite exceptional set is exactly the
    refinement grid and never needs explicit representation.
    """
    if cert.graph is not graph:
        return False
    for subset in cert.subsets:
        if subset.graph is not graph or subset.measure() != cert.r:
            return False
    for e in graph.edge_ids:
        cuts = {ZERO, ONE}
        for subset in cert.subsets:
            for lo, hi in subset.segments.get(e, ()):
                cuts.update((lo, hi))
        grid = sorted(cuts)
        for a, b in zip(grid, grid[1:]):
            multiplicity = sum(
                1
                for subset in cert.subsets
                if any(lo <= a and b <= hi for lo, hi in subset.segments.get(e, ()))
            )
            if multiplicity != cert.n:
                return False
    return True


def construct_partition_1k(graph: MetricGraph, k: int) -> PartitionCertificate:
    """Tile a min-degree-2 graph twice over by connected arcs of measure 1/k.

    Every double-cover path has integer length, so arcs of length 1/k cut
    each path exactly; their images tile the graph with multiplicity 2.
    """
    if k < 1:
        raise PreconditionError("k must be a positive integer")
    _check_min_degree(graph)
    r = Fraction(1, k)
    subsets: list[ConnSubset] = []
    for path in compute_double_cover(graph):
        for j in range(len(path) * k):
            subsets.append(window_subset(graph, path, j * r, r))
    return PartitionCertificate(graph, tuple(subsets), r, 2)


def construct_partition_euler(graph: MetricGraph, k: int) -> PartitionCertificate:
    """Cut an Euler circuit into k equal arcs: a single cover by measure-|E|/k sets."""
    if k < 1:
        raise PreconditionError("k must be a positive integer")
    circuit = euler_circuit(graph)
    r = Fraction(graph.num_edges, k)
    subsets = tuple(window_subset(graph, circuit, j * r, r) for j in range(k))
    return PartitionCertificate(graph, subsets, r, 1)
