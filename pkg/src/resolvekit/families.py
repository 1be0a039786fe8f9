"""Generators for the heptagonal circular ladder, its chorded variant and controls.

Ring indices are 1-based and taken mod n with representative in ``[1, n]``.
Vertex ids are fixed: ``p_t -> t-1``, ``q_t -> n+t-1``, ``r_t -> 2n+t-1``,
``s_t -> 3n+t-1``.

The outer 2n-cycle alternates r and s with ``s_t`` adjacent to ``r_t`` and
``r_{t+1}``. This is the only labelling of the outer cycle for which the
heptagonal face ``p_t q_t r_t s_t r_{t+1} q_{t+1} p_{t+1}`` exists.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations

from .graph import Graph, GraphError, VertexLabel, build_graph

FAMILIES = ("gamma", "delta", "cycle", "path", "complete")

_MIN_N = {"gamma": 3, "delta": 3, "cycle": 3, "path": 1, "complete": 1}


class FaceCensusError(GraphError):
    """A face expected in the plane embedding is missing from the edge set."""


@dataclass(frozen=True)
class FamilySpec:
    family: str
    n: int

    def __post_init__(self):
        fam = self.family.lower()
        object.__setattr__(self, "family", fam)
        if fam not in FAMILIES:
            raise GraphError(f"unknown family {self.family!r}; expected one of {', '.join(FAMILIES)}")
        if self.n < _MIN_N[fam]:
            raise GraphError(f"{fam} needs n >= {_MIN_N[fam]}, got {self.n}")

    def __str__(self) -> str:
        return f"{self.family}({self.n})"


def wrap(t: int, n: int) -> int:
    """Reduce a ring index to ``[1, n]``."""
    return (t - 1) % n + 1


def ladder_id(role: str, t: int, n: int) -> int:
    """Vertex id of ``role_t`` in a ladder graph on ``4n`` vertices."""
    return "PQRS".index(role.upper()) * n + wrap(t, n) - 1


def _ladder_labels(n: int) -> list[VertexLabel]:
    return [VertexLabel(role, t) for role in "PQRS" for t in range(1, n + 1)]


def gamma_edges(n: int) -> list[tuple[int, int]]:
    p = lambda t: ladder_id("P", t, n)  # noqa: E731
    q = lambda t: ladder_id("Q", t, n)  # noqa: E731
    r = lambda t: ladder_id("R", t, n)  # noqa: E731
    s = lambda t: ladder_id("S", t, n)  # noqa: E731
    edges = []
    for t in range(1, n + 1):
        edges += [(p(t), p(t + 1)), (p(t), q(t)), (q(t), r(t)), (r(t), s(t)), (s(t), r(t + 1))]
    return edges


def delta_chords(n: int) -> list[tuple[int, int]]:
    return [(ladder_id("R", t, n), ladder_id("Q", t + 1, n)) for t in range(1, n + 1)]


def generate(spec: FamilySpec | str, n: int | None = None) -> Graph:
    """Build the graph for ``spec``; ladder families come labelled."""
    if not isinstance(spec, FamilySpec):
        spec = FamilySpec(spec, n)
    fam, n = spec.family, spec.n
    if fam == "gamma":
        return build_graph(4 * n, gamma_edges(n), _ladder_labels(n))
    if fam == "delta":
        return build_graph(4 * n, gamma_edges(n) + delta_chords(n), _ladder_labels(n))
    if fam == "cycle":
        return build_graph(n, [(i, (i + 1) % n) for i in range(n)])
    if fam == "path":
        return build_graph(n, [(i, i + 1) for i in range(n - 1)])
    return build_graph(n, list(combinations(range(n), 2)))


@dataclass
class FaceCensus:
    faces: list[tuple[str, tuple[int, ...]]] = field(default_factory=list)

    @property
    def lengths(self) -> Counter:
        return Counter(len(cycle) for _, cycle in self.faces)

    def count(self, name: str) -> int:
        return sum(1 for kind, _ in self.faces if kind == name)


def _ladder_faces(family: str, n: int) -> list[tuple[str, list[tuple[str, int]]]]:
    faces = [
        ("inner", [("P", t) for t in range(1, n + 1)]),
        ("outer", [(role, t) for t in range(1, n + 1) for role in "RS"]),
    ]
    for t in range(1, n + 1):
        if family == "gamma":
            faces.append(("heptagon", [("P", t), ("Q", t), ("R", t), ("S", t),
                                       ("R", t + 1), ("Q", t + 1), ("P", t + 1)]))
        else:
            faces.append(("quadrilateral", [("R", t), ("S", t), ("R", t + 1), ("Q", t + 1)]))
            faces.append(("pentagon", [("P", t), ("Q", t), ("R", t), ("Q", t + 1), ("P", t + 1)]))
    return faces


def face_census(g: Graph, family: str, n: int) -> FaceCensus:
    """Check that every face of the standard plane embedding is a cycle of ``g``.

    Ladder families must also satisfy Euler's formula with the listed faces.
    Raises :class:`FaceCensusError` naming the first face that is missing.
    """
    family = family.lower()
    census = FaceCensus()
    if family == "cycle":
        walks = [("cycle", list(range(n)))]
    elif family in ("gamma", "delta"):
        walks = [(name, [ladder_id(role, t, n) for role, t in verts])
                 for name, verts in _ladder_faces(family, n)]
    else:
        raise GraphError(f"no face census for family {family!r}")
    for name, cycle in walks:
        if len(set(cycle)) != len(cycle):
            raise FaceCensusError(f"{name} face {cycle} repeats a vertex")
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            if not g.has_edge(a, b):
                raise FaceCensusError(
                    f"{name} face {[g.label_of(v) for v in cycle]} missing edge "
                    f"{g.label_of(a)}-{g.label_of(b)}"
                )
        census.faces.append((name, tuple(cycle)))
    if family != "cycle":
        expected = g.edge_count - g.vertex_count + 2
        if len(census.faces) != expected:
            raise FaceCensusError(f"{len(census.faces)} faces listed, Euler's formula needs {expected}")
    return census
