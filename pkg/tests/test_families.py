from collections import Counter

import pytest

from resolvekit import FamilySpec, GraphError, face_census, generate, is_connected
from resolvekit.families import FaceCensusError, ladder_id, wrap
from resolvekit.graph import build_graph


def degree_multiset(g):
    return Counter(g.degree(v) for v in range(g.vertex_count))


def test_sizes():
    g = generate("gamma", 6)
    assert (g.vertex_count, g.edge_count) == (24, 30)
    g = generate("delta", 8)
    assert (g.vertex_count, g.edge_count) == (32, 48)


def test_degrees():
    assert degree_multiset(generate("delta", 8)) == {2: 8, 3: 16, 4: 8}
    assert degree_multiset(generate("gamma", 6)) == {2: 12, 3: 12}


def test_degree_by_role():
    n = 9
    gamma, delta = generate("gamma", n), generate("delta", n)
    for t in range(1, n + 1):
        assert [gamma.degree(ladder_id(r, t, n)) for r in "PQRS"] == [3, 2, 3, 2]
        assert [delta.degree(ladder_id(r, t, n)) for r in "PQRS"] == [3, 3, 4, 2]


@pytest.mark.parametrize("n", range(3, 65))
def test_ladder_counts_all_n(n):
    g, d = generate("gamma", n), generate("delta", n)
    assert (g.vertex_count, g.edge_count) == (4 * n, 5 * n)
    assert (d.vertex_count, d.edge_count) == (4 * n, 6 * n)
    assert is_connected(g) and is_connected(d)
    assert set(g.edges) < set(d.edges)
    assert len(set(d.edges) - set(g.edges)) == n


@pytest.mark.parametrize("family", ["gamma", "delta"])
@pytest.mark.parametrize("n", [3, 6, 11])
def test_rotation_symmetry(family, n):
    g = generate(family, n)

    def rotate(v):
        role, t = g.labels[v].role, g.labels[v].t
        return ladder_id(role, t + 1, n)

    rotated = {tuple(sorted((rotate(e.u), rotate(e.v)))) for e in g.edges}
    assert rotated == {(e.u, e.v) for e in g.edges}


def test_vertex_id_layout():
    n = 7
    g = generate("gamma", n)
    assert g.vertex_of("P", 1) == 0
    assert g.vertex_of("Q", 3) == n + 2
    assert g.vertex_of("R", 1) == 2 * n
    assert g.vertex_of("S", n) == 4 * n - 1
    assert wrap(n + 1, n) == 1 and wrap(0, n) == n


def test_outer_cycle_convention():
    n = 6
    g = generate("gamma", n)
    s1 = g.vertex_of("S", 1)
    assert set(g.neighbors(s1)) == {g.vertex_of("R", 1), g.vertex_of("R", 2)}


def test_minimum_n():
    with pytest.raises(GraphError):
        generate("gamma", 2)
    with pytest.raises(GraphError):
        FamilySpec("cycle", 2)
    with pytest.raises(GraphError):
        FamilySpec("prism", 5)
    assert generate("path", 1).vertex_count == 1
    assert FamilySpec("Gamma", 4).family == "gamma"


def test_face_census_gamma7():
    census = face_census(generate("gamma", 7), "gamma", 7)
    assert census.count("heptagon") == 7
    assert census.lengths == {7: 8, 14: 1}


def test_face_census_delta7():
    census = face_census(generate("delta", 7), "delta", 7)
    assert census.count("quadrilateral") == 7 and census.count("pentagon") == 7
    assert census.lengths == {4: 7, 5: 7, 7: 1, 14: 1}


def test_face_census_cycle9():
    assert face_census(generate("cycle", 9), "cycle", 9).lengths == {9: 1}


def test_face_census_reports_missing_face():
    g = generate("gamma", 5)
    with pytest.raises(FaceCensusError, match="quadrilateral"):
        face_census(g, "delta", 5)
    broken = build_graph(g.vertex_count, [tuple(e) for e in g.edges[1:]], g.labels)
    with pytest.raises(FaceCensusError):
        face_census(broken, "gamma", 5)
    with pytest.raises(GraphError):
        face_census(generate("path", 4), "path", 4)
