"""Undirected simple graphs, BFS distances and metric representations."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

ROLES = ("P", "Q", "R", "S")


class GraphError(ValueError):
    """Raised for malformed graph input."""


class DisconnectedGraphError(GraphError):
    """Raised when a distance is requested between different components."""

    def __init__(self, u: int, v: int):
        super().__init__(f"graph is disconnected: vertex {v} unreachable from vertex {u}")
        self.u = u
        self.v = v


@dataclass(frozen=True, order=True)
class VertexLabel:
    role: str
    t: int

    def __post_init__(self):
        if self.role not in ROLES:
            raise GraphError(f"unknown vertex role {self.role!r}")

    def __str__(self) -> str:
        return f"{self.role.lower()}{self.t}"


@dataclass(frozen=True, order=True)
class Edge:
    u: int
    v: int

    @classmethod
    def of(cls, a: int, b: int) -> "Edge":
        if a == b:
            raise GraphError(f"self-loop at vertex {a}")
        return cls(min(a, b), max(a, b))

    def __iter__(self):
        yield self.u
        yield self.v


@dataclass(frozen=True)
class Graph:
    """Immutable graph on vertices ``0..vertex_count-1``.

    Build instances with :func:`build_graph`; the constructor does not validate.
    """

    vertex_count: int
    adjacency: tuple[tuple[int, ...], ...]
    edges: tuple[Edge, ...]
    labels: tuple[VertexLabel, ...] | None = None

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def vertex_of(self, role: str, t: int) -> int:
        """Return the id of the vertex labelled ``(role, t)``."""
        if self.labels is None:
            raise GraphError("graph carries no vertex labels")
        target = VertexLabel(role, t)
        try:
            return self._label_index[target]
        except KeyError:
            raise GraphError(f"no vertex labelled {target}") from None

    @cached_property
    def _label_index(self) -> dict[VertexLabel, int]:
        return {lab: v for v, lab in enumerate(self.labels or ())}

    def label_of(self, v: int) -> str:
        return str(self.labels[v]) if self.labels is not None else str(v)


def build_graph(
    vertex_count: int,
    edge_list: Iterable[Sequence[int]],
    labels: Sequence[VertexLabel] | None = None,
) -> Graph:
    """Validate an edge list and build a :class:`Graph`.

    Out-of-range endpoints, self-loops and duplicate edges raise
    :class:`GraphError` naming the offending edge.
    """
    if vertex_count < 0:
        raise GraphError(f"vertex_count must be nonnegative, got {vertex_count}")
    adj: list[set[int]] = [set() for _ in range(vertex_count)]
    edges: list[Edge] = []
    for raw in edge_list:
        if len(raw) != 2:
            raise GraphError(f"edge {tuple(raw)!r} does not have two endpoints")
        a, b = int(raw[0]), int(raw[1])
        if not (0 <= a < vertex_count and 0 <= b < vertex_count):
            raise GraphError(f"edge ({a}, {b}) has an endpoint outside 0..{vertex_count - 1}")
        if a == b:
            raise GraphError(f"edge ({a}, {b}) is a self-loop")
        if b in adj[a]:
            raise GraphError(f"edge ({a}, {b}) is a duplicate")
        adj[a].add(b)
        adj[b].add(a)
        edges.append(Edge.of(a, b))
    if labels is not None:
        labels = tuple(labels)
        if len(labels) != vertex_count:
            raise GraphError(f"{len(labels)} labels given for {vertex_count} vertices")
        if len(set(labels)) != len(labels):
            raise GraphError("vertex labels are not unique")
    return Graph(
        vertex_count=vertex_count,
        adjacency=tuple(tuple(sorted(s)) for s in adj),
        edges=tuple(sorted(edges)),
        labels=labels,
    )


def bfs_row(g: Graph, source: int) -> list[int]:
    """Hop distances from ``source``; unreachable vertices get -1."""
    dist = [-1] * g.vertex_count
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w in g.adjacency[u]:
            if dist[w] < 0:
                dist[w] = du
                queue.append(w)
    return dist


def is_connected(g: Graph) -> bool:
    if g.vertex_count < 1:
        raise GraphError("connectivity is undefined for the empty graph")
    return min(bfs_row(g, 0)) >= 0


@dataclass(frozen=True)
class DistanceMatrix:
    """All-pairs hop distances as a read-only ``V x V`` integer array."""

    dist: np.ndarray

    def __getitem__(self, key):
        return self.dist[key]

    @property
    def size(self) -> int:
        return self.dist.shape[0]

    def diameter(self) -> int:
        return int(self.dist.max()) if self.size else 0


def all_pairs_distances(g: Graph) -> DistanceMatrix:
    """One BFS per source vertex.

    Raises :class:`DisconnectedGraphError` naming an unreachable pair.
    """
    n = g.vertex_count
    mat = np.empty((n, n), dtype=np.int32)
    for s in range(n):
        row = bfs_row(g, s)
        if n and min(row) < 0:
            raise DisconnectedGraphError(s, row.index(-1))
        mat[s] = row
    mat.setflags(write=False)
    return DistanceMatrix(mat)


def vertex_edge_distance(d: DistanceMatrix, x: int, e: Edge) -> int:
    return int(min(d.dist[x, e.u], d.dist[x, e.v]))


def vertex_code(d: DistanceMatrix, landmarks: Sequence[int], v: int) -> tuple[int, ...]:
    """Distances from ``v`` to each landmark, in landmark order."""
    return tuple(int(d.dist[y, v]) for y in landmarks)


def edge_code(d: DistanceMatrix, landmarks: Sequence[int], e: Edge) -> tuple[int, ...]:
    return tuple(vertex_edge_distance(d, y, e) for y in landmarks)


def edge_distance_matrix(d: DistanceMatrix, edges: Sequence[Edge]) -> np.ndarray:
    """``V x E`` array of vertex-to-edge distances."""
    if not edges:
        return np.zeros((d.size, 0), dtype=np.int32)
    u = np.fromiter((e.u for e in edges), dtype=np.intp, count=len(edges))
    v = np.fromiter((e.v for e in edges), dtype=np.intp, count=len(edges))
    return np.minimum(d.dist[:, u], d.dist[:, v])
