"""Semi-simple closed paths, double covers and Euler circuits.

A closed path is a cyclic walk listed as directed edge traversals.  It is
semi-simple when no two consecutive listed traversals use the same edge
and no edge is used more than twice.  A double cover is a collection of
semi-simple closed paths whose total edge multiplicity is exactly two on
every edge of the graph.

The construction below follows the incremental splice proof: seed with
cycles (doubled), extract loops as doubled one-step walks, then repeatedly
splice maximal residual forest paths into host walks through their
endpoint vertices.  Every splice keeps two properties that later steps
rely on: walks never start and end with the same edge (so rotating a host
cannot create an adjacent repeat), and covered edges always have total
multiplicity exactly two.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

from .errors import PreconditionError
from .metric_graph import MetricGraph

Step = tuple[str, bool]  # (edge id, traversed from endpoint 0 to endpoint 1)


class ClosedPath:
    """A closed edge walk; consecutive traversals share their vertex."""

    __slots__ = ("graph", "steps")

    def __init__(self, graph: MetricGraph, steps: Iterable[Step]):
        steps = tuple((e, bool(fwd)) for e, fwd in steps)
        if not steps:
            raise PreconditionError("a closed path has at least one traversal")
        for (e, fwd), (e2, fwd2) in zip(steps, steps[1:] + steps[:1]):
            if _end(graph, e, fwd) != _start(graph, e2, fwd2):
                raise PreconditionError(f"walk breaks between {e!r} and {e2!r}")
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "steps", steps)

    def __setattr__(self, *a):
        raise AttributeError("ClosedPath is immutable")

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def __eq__(self, other):
        return isinstance(other, ClosedPath) and self.graph is other.graph and self.steps == other.steps

    def __hash__(self):
        return hash(self.steps)

    def __repr__(self):
        return "ClosedPath(%s)" % ", ".join(f"{e}{'+' if fwd else '-'}" for e, fwd in self.steps)

    def vertex_at(self, i: int) -> str:
        e, fwd = self.steps[i]
        return _start(self.graph, e, fwd)

    def edge_ids(self) -> list[str]:
        return [e for e, _ in self.steps]


def _start(graph: MetricGraph, e: str, fwd: bool) -> str:
    u, v = graph.ends(e)
    return u if fwd else v


def _end(graph: MetricGraph, e: str, fwd: bool) -> str:
    u, v = graph.ends(e)
    return v if fwd else u


def _reverse(steps: Sequence[Step]) -> list[Step]:
    return [(e, not fwd) for e, fwd in reversed(steps)]


def is_semi_simple(path: ClosedPath) -> bool:
    """Adjacent listed traversals differ and no edge is used more than twice."""
    edges = path.edge_ids()
    if any(a == b for a, b in zip(edges, edges[1:])):
        return False
    return all(edges.count(e) <= 2 for e in set(edges))


def verify_double_cover(graph: MetricGraph, paths: Sequence[ClosedPath]) -> bool:
    """True iff all paths are semi-simple and each edge is covered exactly twice."""
    counts = {e: 0 for e in graph.edge_ids}
    for p in paths:
        if p.graph is not graph or not is_semi_simple(p):
            return False
        for e in p.edge_ids():
            if e not in counts:
                return False
            counts[e] += 1
    return all(c == 2 for c in counts.values())


def _check_min_degree(graph: MetricGraph) -> None:
    for v in sorted(graph.vertices):
        if graph.degree(v) < 2:
            raise PreconditionError(f"vertex {v!r} has degree {graph.degree(v)} < 2")


def _find_cycle(graph: MetricGraph, residual: set[str]) -> list[Step] | None:
    """Lowest-id simple cycle with >= 2 edges inside the residual edge set."""
    for e in sorted(residual):
        if graph.is_loop(e):
            continue
        u, v = graph.ends(e)
        # BFS from v back to u avoiding e itself
        prev: dict[str, Step | None] = {v: None}
        queue = deque([v])
        while queue:
            x = queue.popleft()
            if x == u:
                break
            for eid, y in graph._adj[x]:
                if eid == e or eid not in residual or y in prev:
                    continue
                prev[y] = (eid, graph.ends(eid)[0] == x)
                queue.append(y)
        if u in prev:
            back: list[Step] = []
            x = u
            while prev[x] is not None:
                eid, fwd = prev[x]
                back.append((eid, fwd))
                x = _start(graph, eid, fwd)
            back.reverse()
            return [(e, True)] + back
    return None


def _maximal_forest_path(graph: MetricGraph, residual: set[str]) -> list[Step]:
    """Greedily extended simple path in a loop-free residual forest."""
    seed = min(residual)
    u, v = graph.ends(seed)
    steps: list[Step] = [(seed, True)]
    visited = {u, v}

    def extend_head() -> bool:
        h = _end(graph, *steps[-1])
        for eid, y in graph._adj[h]:
            if eid in residual and eid not in {e for e, _ in steps} and y not in visited:
                steps.append((eid, graph.ends(eid)[0] == h))
                visited.add(y)
                return True
        return False

    def extend_tail() -> bool:
        t = _start(graph, *steps[0])
        for eid, y in graph._adj[t]:
            if eid in residual and eid not in {e for e, _ in steps} and y not in visited:
                steps.insert(0, (eid, graph.ends(eid)[0] == y))
                visited.add(y)
                return True
        return False

    while extend_head():
        pass
    while extend_tail():
        pass
    return steps


def compute_double_cover(graph: MetricGraph, debug: bool = False) -> tuple[ClosedPath, ...]:
    """Double-cover a connected min-degree-2 multigraph by semi-simple closed paths.

    Works residually: doubled simple cycles first, loops as doubled
    one-step walks, then maximal forest paths spliced into hosts through
    their endpoints (which the degree condition forces into the covered
    part).  Deterministic: lowest ids win at every choice point.  With
    ``debug`` every splice step re-checks that the working collection is a
    valid double cover of the covered subgraph.
    """
    _check_min_degree(graph)
    residual = set(graph.edge_ids)
    walks: list[list[Step]] = []

    def first_visit(vertex: str) -> tuple[int, int]:
        for wi, w in enumerate(walks):
            for pos in range(len(w)):
                if _start(graph, *w[pos]) == vertex:
                    return wi, pos
        raise AssertionError(f"no covered walk visits {vertex!r}")  # pragma: no cover

    def check_step() -> None:
        counts: dict[str, int] = {}
        for w in walks:
            path = ClosedPath(graph, w)
            assert is_semi_simple(path), f"intermediate walk not semi-simple: {path}"
            for e in path.edge_ids():
                counts[e] = counts.get(e, 0) + 1
        covered = set(graph.edge_ids) - residual
        assert set(counts) == covered and all(counts[e] == 2 for e in covered), (
            "working collection is not a double cover of the covered subgraph")

    while residual:
        cycle = _find_cycle(graph, residual)
        if cycle is not None:
            walks.append(list(cycle))
            walks.append(list(cycle))
            residual.difference_update(e for e, _ in cycle)
            if debug:
                check_step()
            continue
        loops = sorted(e for e in residual if graph.is_loop(e))
        if loops:
            loop = loops[0]
            walks.append([(loop, True)])
            walks.append([(loop, True)])
            residual.remove(loop)
            if debug:
                check_step()
            continue
        alpha = _maximal_forest_path(graph, residual)
        u = _start(graph, *alpha[0])
        v = _end(graph, *alpha[-1])
        if debug:
            deg_residual_u = sum((u in graph.ends(e)) + (graph.ends(e) == (u, u)) for e in residual)
            deg_residual_v = sum((v in graph.ends(e)) + (graph.ends(e) == (v, v)) for e in residual)
            covered = set(graph.edge_ids) - residual
            assert deg_residual_u == 1 and deg_residual_v == 1, "maximal path endpoints must have residual degree 1"
            assert any(u in graph.ends(e) for e in covered), "endpoint u must already be covered"
            assert any(v in graph.ends(e) for e in covered), "endpoint v must already be covered"
        gi, gpos = first_visit(u)
        hi, hpos = first_visit(v)
        if gi != hi:
            gamma = walks[gi][gpos:] + walks[gi][:gpos]
            eta = walks[hi][hpos:] + walks[hi][:hpos]
            beta = gamma + alpha + eta + _reverse(alpha)
            for idx in sorted((gi, hi), reverse=True):
                del walks[idx]
        else:
            rotated = walks[gi][gpos:] + walks[gi][:gpos]
            split = next(j for j in range(1, len(rotated)) if _start(graph, *rotated[j]) == v)
            delta1, delta2 = rotated[:split], rotated[split:]
            beta = delta1 + _reverse(alpha) + _reverse(delta2) + _reverse(alpha)
            del walks[gi]
        walks.append(beta)
        residual.difference_update(e for e, _ in alpha)
        if debug:
            check_step()

    cover = tuple(ClosedPath(graph, w) for w in walks)
    assert verify_double_cover(graph, cover), "constructed cover failed verification"
    return cover


def euler_circuit(graph: MetricGraph) -> ClosedPath:
    """Closed walk using every edge exactly once (all degrees must be even)."""
    odd = [v for v in sorted(graph.vertices) if graph.degree(v) % 2]
    if odd:
        raise PreconditionError(f"odd-degree vertices {odd}: the graph is not Euler")
    used: set[str] = set()
    ptr = {v: 0 for v in graph.vertices}
    start = min(graph.vertices)
    stack = [start]
    edge_stack: list[Step] = []
    circuit: list[Step] = []
    while stack:
        x = stack[-1]
        adj = graph._adj[x]
        while ptr[x] < len(adj) and adj[ptr[x]][0] in used:
            ptr[x] += 1
        if ptr[x] == len(adj):
            stack.pop()
            if edge_stack:
                circuit.append(edge_stack.pop())
        else:
            eid, y = adj[ptr[x]]
            used.add(eid)
            edge_stack.append((eid, graph.ends(eid)[0] == x))
            stack.append(y)
    circuit.reverse()
    assert len(circuit) == graph.num_edges
    return ClosedPath(graph, circuit)
