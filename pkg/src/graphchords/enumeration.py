"""Exhaustive enumeration of small connected multigraphs up to isomorphism."""

from __future__ import annotations

from itertools import combinations_with_replacement, permutations
from typing import Iterator

from .metric_graph import MetricGraph


def _canonical(nv: int, edges: tuple[tuple[int, int], ...]) -> tuple:
    best = None
    for perm in permutations(range(nv)):
        relabeled = tuple(sorted(tuple(sorted((perm[a], perm[b]))) for a, b in edges))
        if best is None or relabeled < best:
            best = relabeled
    return (nv, best)


def _connected(nv: int, edges: tuple[tuple[int, int], ...]) -> bool:
    seen = {0}
    frontier = [0]
    adj: dict[int, set[int]] = {i: set() for i in range(nv)}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    while frontier:
        x = frontier.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return len(seen) == nv


def connected_multigraphs(max_edges: int, min_degree: int = 0) -> Iterator[MetricGraph]:
    """All connected multigraphs (loops allowed) with at most ``max_edges``
    edges and the given minimum degree, one representative per isomorphism
    class."""
    seen: set[tuple] = set()
    for m in range(1, max_edges + 1):
        for nv in range(1, m + 1 if min_degree >= 2 else 2 * m + 1):
            slots = [(i, j) for i in range(nv) for j in range(i, nv)]
            for multiset in combinations_with_replacement(slots, m):
                degree = [0] * nv
                for a, b in multiset:
                    degree[a] += 1 + (a == b)
                    if a != b:
                        degree[b] += 1
                if any(d < max(min_degree, 1) for d in degree):
                    continue
                if not _connected(nv, multiset):
                    continue
                key = _canonical(nv, multiset)
                if key in seen:
                    continue
                seen.add(key)
                vertices = [f"v{i}" for i in range(nv)]
                edges = [(f"e{k}", (f"v{a}", f"v{b}")) for k, (a, b) in enumerate(multiset)]
                yield MetricGraph(vertices, edges)
