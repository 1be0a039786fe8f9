import json

import pytest

from resolvekit import GraphError, build_graph, generate
from resolvekit.io import from_edgelist, from_json, read_graph, to_dot, to_edgelist, to_json


@pytest.mark.parametrize("family, n", [("gamma", 6), ("delta", 5), ("cycle", 7), ("path", 1)])
def test_json_round_trip(family, n):
    g = generate(family, n)
    assert from_json(to_json(g)) == g


@pytest.mark.parametrize("family, n", [("gamma", 6), ("delta", 5), ("complete", 4)])
def test_edgelist_round_trip(family, n):
    g = generate(family, n)
    assert from_edgelist(to_edgelist(g)) == g


def test_edgelist_keeps_isolated_vertices():
    g = build_graph(5, [(0, 1)])
    assert from_edgelist(to_edgelist(g)).vertex_count == 5


def test_edgelist_without_header():
    g = from_edgelist("0 1\n1 2  # trailing comment\n\n")
    assert g.vertex_count == 3 and g.edge_count == 2


def test_json_shape():
    data = json.loads(to_json(generate("gamma", 3)))
    assert set(data) == {"vertex_count", "edges", "labels"}
    assert data["labels"][0] == {"role": "P", "t": 1}
    assert json.loads(to_json(generate("cycle", 3)))["labels"] is None


@pytest.mark.parametrize("text", ["[1, 2]", "{\"edges\": []}", "{not json"])
def test_bad_json(text):
    with pytest.raises(GraphError):
        from_json(text)


def test_bad_edgelist():
    with pytest.raises(GraphError, match="line 2"):
        from_edgelist("0 1\n0 1 2\n")
    with pytest.raises(GraphError):
        from_edgelist("# vertices 3\n# label 0 P 1\n0 1\n")


def test_dot_export():
    text = to_dot(generate("gamma", 3), "g3")
    assert text.startswith("graph g3 {")
    assert text.count(" -- ") == 15
    assert 'label="p1"' in text


def test_read_graph_sniffs_format(tmp_path):
    g = generate("delta", 4)
    (tmp_path / "a.json").write_text(to_json(g))
    (tmp_path / "a.txt").write_text(to_edgelist(g))
    assert read_graph(tmp_path / "a.json") == g
    assert read_graph(tmp_path / "a.txt") == g
    assert read_graph("-", to_json(g)) == g
