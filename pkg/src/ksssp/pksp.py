"""Single-pair machinery: shortest-path trees and Yen's top-k simple paths.

``yen_pksp`` is used standalone by the per-target baseline solver and as the
subroutine that completes collections for unsaturated vertices inside the
bounded single-source solver.
"""
from __future__ import annotations

import heapq
from collections import Counter, deque
from dataclasses import dataclass
from math import inf
from typing import Optional

from .graph import Graph
from .paths import Path, PathCollection, profile


class ReconcileError(RuntimeError):
    """Collection reconciliation precondition failed: an internal solver bug."""


@dataclass(frozen=True)
class PkspQuery:
    source: int
    target: int
    k: int

    def __post_init__(self):
        if self.source == self.target:
            raise ValueError("source and target must differ")
        if self.k < 1:
            raise ValueError("k must be >= 1")


@dataclass
class ShortestPathTree:
    root: int
    dist: list[float]
    parent: list[Optional[int]]


def shortest_path_tree(graph: Graph, source: int) -> ShortestPathTree:
    """Exact single-source distances and parents.

    Weighted graphs use Dijkstra on a binary heap; unweighted graphs use a
    breadth-first visit, which yields identical distances at unit weights.
    Unreachable vertices keep dist=inf and no parent.
    """
    graph._check_vertex(source)
    n = graph.vertex_count
    dist = [inf] * n
    parent: list[Optional[int]] = [None] * n
    dist[source] = 0.0
    out_adj = graph.out_adj
    if not graph.weighted:
        queue = deque([source])
        while queue:
            u = queue.popleft()
            du = dist[u]
            for v, _ in out_adj[u]:
                if dist[v] == inf:
                    dist[v] = du + 1.0
                    parent[v] = u
                    queue.append(v)
    else:
        heap = [(0.0, source)]
        while heap:
            du, u = heapq.heappop(heap)
            if du > dist[u]:
                continue
            for v, w in out_adj[u]:
                nd = du + w
                if nd < dist[v]:
                    dist[v] = nd
                    parent[v] = u
                    heapq.heappush(heap, (nd, v))
    return ShortestPathTree(source, dist, parent)


def _masked_shortest_path(graph: Graph, source: int, target: int,
                          removed_vertices: set[int],
                          removed_arcs: set[tuple[int, int]],
                          ) -> Optional[tuple[float, tuple[int, ...]]]:
    """Shortest source->target path ignoring masked vertices and arcs.

    Returns (weight, vertex sequence) or None when target is unreachable.
    Masking on the original adjacency avoids materializing subgraph copies.
    """
    n = graph.vertex_count
    dist = [inf] * n
    parent = [-1] * n
    dist[source] = 0.0
    out_adj = graph.out_adj
    if not graph.weighted:
        queue = deque([source])
        found = False
        while queue and not found:
            u = queue.popleft()
            du = dist[u]
            for v, _ in out_adj[u]:
                if dist[v] == inf and v not in removed_vertices \
                        and (u, v) not in removed_arcs:
                    dist[v] = du + 1.0
                    parent[v] = u
                    if v == target:
                        found = True
                        break
                    queue.append(v)
        if dist[target] == inf:
            return None
    else:
        heap = [(0.0, source)]
        while heap:
            du, u = heapq.heappop(heap)
            if u == target:
                break
            if du > dist[u]:
                continue
            for v, w in out_adj[u]:
                if v in removed_vertices or (u, v) in removed_arcs:
                    continue
                nd = du + w
                if nd < dist[v]:
                    dist[v] = nd
                    parent[v] = u
                    heapq.heappush(heap, (nd, v))
        if dist[target] == inf:
            return None
    seq = [target]
    while seq[-1] != source:
        seq.append(parent[seq[-1]])
    seq.reverse()
    return dist[target], tuple(seq)


def yen_pksp(graph: Graph, query: PkspQuery) -> PathCollection:
    """Top-k simple shortest paths for one vertex pair.

    Shortest path first; every accepted path then spawns spur deviations with
    the root-path vertices and the next edges of all root-sharing accepted
    paths masked out. Candidates live in a min-queue ordered by the global
    tie-break (weight, vertex count, vertex sequence); spur generation starts
    at each path's own deviation index, which provably covers the same
    candidate space as restarting from the first vertex.

    Returns all simple paths, sorted, when fewer than k exist; an unreachable
    target yields an empty collection.
    """
    s, t, k = query.source, query.target, query.k
    graph._check_vertex(s)
    graph._check_vertex(t)
    first = _masked_shortest_path(graph, s, t, set(), set())
    if first is None:
        return PathCollection(s, t, [])
    undirected = not graph.directed
    accepted: list[tuple[float, tuple[int, ...]]] = []
    pushed: set[tuple[int, ...]] = {first[1]}
    # heap entries: (weight, length, sequence, deviation index)
    heap: list[tuple[float, int, tuple[int, ...], int]] = [
        (first[0], len(first[1]), first[1], 0)]
    while heap and len(accepted) < k:
        weight, _, seq, dev = heapq.heappop(heap)
        accepted.append((weight, seq))
        if len(accepted) == k:
            break
        prefix_weight = [0.0]
        for a, b in zip(seq, seq[1:]):
            prefix_weight.append(prefix_weight[-1] + graph.edge_weight(a, b))
        for i in range(dev, len(seq) - 1):
            root = seq[:i + 1]
            spur = seq[i]
            removed_vertices = set(root[:-1])
            removed_arcs: set[tuple[int, int]] = set()
            for _, aseq in accepted:
                if aseq[:i + 1] == root and len(aseq) > i + 1:
                    removed_arcs.add((aseq[i], aseq[i + 1]))
                    if undirected:
                        removed_arcs.add((aseq[i + 1], aseq[i]))
            spur_found = _masked_shortest_path(graph, spur, t,
                                               removed_vertices, removed_arcs)
            if spur_found is None:
                continue
            spur_weight, spur_seq = spur_found
            candidate = root[:-1] + spur_seq
            if candidate in pushed:
                continue
            pushed.add(candidate)
            heapq.heappush(heap, (prefix_weight[i] + spur_weight,
                                  len(candidate), candidate, i))
    entries = [Path.from_vertices(graph, seq) for _, seq in accepted]
    return PathCollection(s, t, entries)


def yen_subroutine(graph: Graph, source: int, target: int, k: int) -> PathCollection:
    """Adapter with the bare (graph, source, target, k) subroutine signature."""
    return yen_pksp(graph, PkspQuery(source, target, k))


def reconcile_with_existing(full: PathCollection,
                            existing: PathCollection) -> PathCollection:
    """Swap weight-tied entries of ``full`` so the result contains ``existing``.

    ``full`` is a complete feasible collection for the pair and ``existing``
    holds already-fixed paths whose profile must be a prefix of full's. The
    result keeps full's profile exactly while containing every existing entry;
    ties are resolved by keeping full's entries in tie-break order.
    """
    if (full.source, full.target) != (existing.source, existing.target):
        raise ReconcileError(
            f"endpoint mismatch: ({full.source},{full.target}) vs "
            f"({existing.source},{existing.target})")
    prof_full = profile(full)
    prof_existing = profile(existing)
    if prof_existing != prof_full[:len(prof_existing)]:
        raise ReconcileError(
            f"existing profile {prof_existing} is not a prefix of {prof_full}")
    if not existing.entries:
        return PathCollection(full.source, full.target, list(full.entries))
    have = set(existing.entries)
    need = Counter(p.weight for p in full.entries)
    for p in existing.entries:
        need[p.weight] -= 1
    result = list(existing.entries)
    for p in full.entries:
        if need[p.weight] > 0 and p not in have:
            result.append(p)
            have.add(p)
            need[p.weight] -= 1
    result.sort()
    return PathCollection(full.source, full.target, result)
