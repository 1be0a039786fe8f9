"""Graph serialization: JSON, edge-list text and DOT (export only).

The edge-list format carries the vertex count and labels in ``#`` comment
lines so that isolated vertices and labels survive a round trip::

    # vertices 24
    # label 0 P 1
    0 1
"""

from __future__ import annotations

import json
from pathlib import Path

from .graph import Graph, GraphError, VertexLabel, build_graph


def graph_to_dict(g: Graph) -> dict:
    labels = None
    if g.labels is not None:
        labels = [{"role": lab.role, "t": lab.t} for lab in g.labels]
    return {
        "vertex_count": g.vertex_count,
        "edges": [[e.u, e.v] for e in g.edges],
        "labels": labels,
    }


def graph_from_dict(data: dict) -> Graph:
    try:
        n = int(data["vertex_count"])
        edges = [tuple(e) for e in data["edges"]]
        raw_labels = data.get("labels")
        labels = None
        if raw_labels is not None:
            labels = [VertexLabel(str(item["role"]), int(item["t"])) for item in raw_labels]
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphError(f"malformed graph JSON: {exc}") from exc
    return build_graph(n, edges, labels)


def to_json(g: Graph) -> str:
    return json.dumps(graph_to_dict(g), sort_keys=True)


def from_json(text: str) -> Graph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"malformed graph JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise GraphError("graph JSON must be an object")
    return graph_from_dict(data)


def to_edgelist(g: Graph) -> str:
    lines = [f"# vertices {g.vertex_count}"]
    if g.labels is not None:
        lines += [f"# label {v} {lab.role} {lab.t}" for v, lab in enumerate(g.labels)]
    lines += [f"{e.u} {e.v}" for e in g.edges]
    return "\n".join(lines) + "\n"


def from_edgelist(text: str) -> Graph:
    """Parse edge-list text.

    Without a ``# vertices`` header the vertex count is one more than the
    largest id seen.
    """
    n = None
    labels: dict[int, VertexLabel] = {}
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        body, _, comment = line.partition("#")
        words = comment.split()
        if words[:1] == ["vertices"] and len(words) == 2:
            n = int(words[1])
        elif words[:1] == ["label"] and len(words) == 4:
            labels[int(words[1])] = VertexLabel(words[2], int(words[3]))
        fields = body.split()
        if not fields:
            continue
        if len(fields) != 2:
            raise GraphError(f"line {lineno}: expected 'u v', got {body.strip()!r}")
        try:
            edges.append((int(fields[0]), int(fields[1])))
        except ValueError as exc:
            raise GraphError(f"line {lineno}: {exc}") from exc
    if n is None:
        n = 1 + max((max(e) for e in edges), default=-1)
    label_list = None
    if labels:
        if sorted(labels) != list(range(n)):
            raise GraphError("labels given for only some vertices")
        label_list = [labels[v] for v in range(n)]
    return build_graph(n, edges, label_list)


def to_dot(g: Graph, name: str = "G") -> str:
    out = [f"graph {name} {{"]
    for v in range(g.vertex_count):
        if g.labels is not None:
            out.append(f'  {v} [label="{g.label_of(v)}"];')
        else:
            out.append(f"  {v};")
    out += [f"  {e.u} -- {e.v};" for e in g.edges]
    out.append("}")
    return "\n".join(out) + "\n"


def read_graph(path: str | Path, text: str | None = None) -> Graph:
    """Load a graph, choosing the parser by extension (``.json`` or edge list)."""
    if text is None:
        text = Path(path).read_text()
    if str(path).endswith(".json") or text.lstrip().startswith("{"):
        return from_json(text)
    return from_edgelist(text)
