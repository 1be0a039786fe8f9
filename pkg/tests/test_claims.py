import csv
import io
import json

import pytest

from resolvekit import all_pairs_distances, generate
from resolvekit.claims.tables import (
    EDGE_CLASSES,
    VERTEX_CLASSES,
    Affine,
    Row,
    closed_form_edge_codes,
    closed_form_vertex_codes,
    domain_values,
)
from resolvekit.claims.verify import (
    OUT_OF_SCOPE,
    claimed_basis,
    edge_class_item,
    fallback_basis,
    reports_to_csv,
    reports_to_json,
    reports_to_text,
    verify_tables,
    verify_theorem,
)
from resolvekit.claims.witnesses import (
    WITNESS_CLASSES,
    resolve_ladder_edge,
    verify_contradiction_witnesses,
)
from resolvekit.families import ladder_id
from resolvekit.graph import Edge
from resolvekit.solver import EDGE, VERTEX, is_resolving, build_instance

from conftest import vid, vids


# ---------------------------------------------------------------- affine forms


@pytest.mark.parametrize("text, t, n, value", [
    ("t-2", 5, 8, 3),
    ("2h-t+3", 1, 9, 10),
    ("h", 0, 9, 4),
    ("n-t+6", 4, 10, 12),
    ("-t+1", 3, 8, -2),
    ("3", 0, 6, 3),
])
def test_affine_eval(text, t, n, value):
    assert Affine.parse(text)(t, n) == value


@pytest.mark.parametrize("text", ["2h-t+3", "t", "h+1", "n-1", "-t+4", "0"])
def test_affine_str_round_trip(text):
    a = Affine.parse(text)
    assert Affine.parse(str(a)) == a


@pytest.mark.parametrize("bad", ["", "t*2", "2x", "h++1", "t h"])
def test_affine_rejects(bad):
    with pytest.raises(ValueError):
        Affine.parse(bad)


def test_domains():
    assert domain_values("2..h", 8) == [2, 3, 4]
    assert domain_values("1,h+1", 9) == [1, 5]
    assert domain_values("h+1..h", 8) == []
    assert Row.parse("3..h", "(t, h-t+3, t+2)").evaluate(3, 8) == (3, 4, 5)


# ---------------------------------------------------------------- bases


def test_claimed_bases():
    g = generate("delta", 8)
    assert claimed_basis("delta", 8, VERTEX).vertex_ids() == tuple(vids(g, "p2,p5,p8"))
    g = generate("gamma", 13)
    assert claimed_basis("gamma", 13, VERTEX).vertex_ids() == tuple(vids(g, "p2,p7,p13"))
    g = generate("gamma", 8)
    b = claimed_basis("gamma", 8, EDGE)
    assert b.vertex_ids() == tuple(vids(g, "s2,s5,s8")) and b.hypothesis == "primary"
    assert fallback_basis("gamma", 8).vertex_ids() == tuple(vids(g, "r2,r5,r8"))
    assert b.h == 4 and b.label_text() == ["s2", "s5", "s8"]


def test_claimed_basis_needs_n6():
    with pytest.raises(ValueError):
        claimed_basis("gamma", 5, VERTEX)
    with pytest.raises(ValueError):
        fallback_basis("gamma", 5)


def test_edge_class_items_are_edges():
    for n in (6, 7, 12):
        g = generate("gamma", n)
        for cls in EDGE_CLASSES:
            items = {edge_class_item(cls, t, n) for t in range(1, n + 1)}
            assert len(items) == n and items <= set(g.edges)
        whole = {edge_class_item(c, t, n) for c in EDGE_CLASSES for t in range(1, n + 1)}
        assert whole == set(g.edges)


# ---------------------------------------------------------------- closed forms


def test_vertex_closed_form_values():
    cf = closed_form_vertex_codes(8)
    assert cf.codes("P")[1] == (1, 4, 1)
    assert cf.codes("P")[3] == (1, 2, 3)
    assert cf.codes("Q")[1] == (2, 5, 2)
    assert closed_form_vertex_codes(9).codes("S")[9] == (3, 6, 3)


def test_edge_closed_form_values():
    cf = closed_form_edge_codes(8)
    assert cf.codes("pp")[1] == (3, 6, 3)
    assert cf.codes("pq")[1] == (4, 6, 2)
    assert cf.codes("qr")[2] == (1, 7, 3)


def test_closed_forms_need_n6():
    with pytest.raises(ValueError):
        closed_form_vertex_codes(5)
    with pytest.raises(ValueError):
        closed_form_edge_codes(4)


@pytest.mark.parametrize("n", [8, 9, 14, 15, 24, 25])
def test_coverage_is_total(n):
    for cf, classes in ((closed_form_vertex_codes(n), VERTEX_CLASSES), (closed_form_edge_codes(n), EDGE_CLASSES)):
        gaps = set(cf.gaps)
        for cls in classes:
            for t in range(1, n + 1):
                assert t in cf.covered(cls) or (cls, t) in gaps


def test_large_n_has_no_gaps_or_overlaps():
    for n in (24, 25):
        for cf in (closed_form_vertex_codes(n), closed_form_edge_codes(n)):
            assert cf.gaps == [] and cf.overlaps == []


def test_small_n_overlaps_are_reported():
    cf = closed_form_edge_codes(8)
    assert any(cls == "qr" for cls, _, _ in cf.overlaps)


# ---------------------------------------------------------------- table verification


def test_delta8_p_rows_match():
    rep = verify_tables("delta", 8)
    rows = [r for r in rep.rows if r.item_class == "P" and 2 <= r.t <= 4]
    assert len(rows) == 3 and all(r.match for r in rows)


@pytest.mark.parametrize("n", [8, 9, 14, 15])
def test_table_report_shape(n):
    for family in ("delta", "gamma"):
        rep = verify_tables(family, n)
        assert rep.coverage_total()
        data = rep.to_dict()
        json.dumps(data)
        assert set(rep.match_rates()) == set(rep.hypotheses)
        assert rep.best_hypothesis() in rep.hypotheses


def test_edge_tables_dual_hypothesis():
    rep = verify_tables("gamma", 24)
    assert set(rep.hypotheses) == {"primary", "fallback"}
    rates = rep.overall_rates()
    assert rates["primary"] == 1.0 and rates["fallback"] == 0.0
    assert rep.best_hypothesis() == "primary"


def test_odd_edge_table_mismatch_is_data():
    rep = verify_tables("gamma", 25)
    bad = [r for r in rep.rows if r.hypothesis == "primary" and not r.match]
    assert bad and {r.item_class for r in bad} == {"pq"}


def test_delta_tables_match_everywhere():
    for n in range(6, 21):
        assert verify_tables("delta", n).overall_rates()["primary"] == 1.0


def test_verify_tables_rejects_other_families():
    with pytest.raises(ValueError):
        verify_tables("cycle", 8)


# ---------------------------------------------------------------- witnesses


def test_resolve_ladder_edge():
    n = 8
    g = generate("gamma", n)
    assert resolve_ladder_edge(g, n, ("R", 3), ("S", 4)) == Edge.of(vid(g, "r3"), vid(g, "s3"))
    assert resolve_ladder_edge(g, n, ("S", 1), ("P", 1)) is None
    assert resolve_ladder_edge(g, n, ("P", 8), ("P", 1)) == Edge.of(vid(g, "p8"), vid(g, "p1"))


def test_delta14_first_row_confirmed():
    rep = verify_contradiction_witnesses("delta", 14)
    first = [c for c in rep.checks if c.class_id == "T5:p1,pg" and c.row_index == 0]
    assert [c.g for c in first] == list(range(2, 8))
    assert all(c.confirmed for c in first)
    at3 = next(c for c in first if c.g == 3)
    assert at3.landmarks == ("p1", "p3") and (at3.left, at3.right) == ("q1", "p14")


def test_gamma24_first_row_checked():
    rep = verify_contradiction_witnesses("gamma", 24)
    c = next(c for c in rep.checks if c.class_id == "T7:p1,pg" and c.g == 5)
    assert c.landmarks == ("p1", "p5") and c.left == "p1q1" and c.right == "p1p24"
    assert c.verdict in ("confirmed", "refuted") and c.left_code is not None


def test_refutation_records_both_codes():
    rep = verify_contradiction_witnesses("delta", 14)
    refuted = [c for c in rep.checks if not c.confirmed]
    assert refuted
    for c in refuted:
        assert c.reason and c.left_code is not None and c.right_code is not None
        assert c.left_code != c.right_code


def test_witness_codes_match_bfs():
    n = 14
    g = generate("delta", n)
    d = all_pairs_distances(g)
    rep = verify_contradiction_witnesses("delta", n)
    for c in rep.checks[:20]:
        ys = [vid(g, x) for x in c.landmarks]
        assert c.left_code == tuple(int(d[y, vid(g, c.left)]) for y in ys)


def test_small_n_skips_delta_regime():
    rep = verify_contradiction_witnesses("delta", 10)
    assert rep.checks == [] and len(rep.skipped) == 6
    with pytest.raises(ValueError):
        verify_contradiction_witnesses("gamma", 5)


def test_every_class_yields_verdicts():
    for n in (14, 24):
        for family in ("delta", "gamma"):
            rep = verify_contradiction_witnesses(family, n)
            classes = {wc.class_id for wc in WITNESS_CLASSES if wc.family == family}
            assert {c.class_id for c in rep.checks} == classes
            assert all(c.verdict in ("confirmed", "refuted") for c in rep.checks)
            json.dumps(rep.to_dict())


# ---------------------------------------------------------------- theorems


def test_delta9():
    rep = verify_theorem("delta", 9, VERTEX, False)
    assert rep.dimension == 3 and rep.passed and rep.claims == ["T5"]


def test_gamma7_edge_independent():
    rep = verify_theorem("gamma", 7, EDGE, True)
    assert rep.dimension == 3 and rep.independent_dimension == 3
    assert rep.claims == ["T7", "T8"] and rep.passed


def test_gamma10_vertex_report_is_faithful():
    # a resolving pair exists here; the report must surface it, not hide it
    rep = verify_theorem("gamma", 10, VERTEX, True)
    assert rep.dimension == 2 and not rep.no_set_of_size_two
    assert rep.claimed_basis_resolves and rep.claimed_basis_independent
    assert not rep.passed
    assert not rep.assertions()["dimension_is_3"]
    g = generate("gamma", 10)
    assert is_resolving(build_instance(g, all_pairs_distances(g)), vids(g, "r1,r4")).is_resolving


def test_report_consistency():
    for fam, n, kind in [("gamma", 6, VERTEX), ("delta", 12, VERTEX), ("gamma", 16, EDGE), ("gamma", 12, EDGE)]:
        rep = verify_theorem(fam, n, kind, True)
        if rep.claimed_basis_resolves:
            assert rep.dimension <= 3
        for check in rep.basis_checks:
            assert (check.proper_subsets_fail is None) == (not check.resolving)


def test_delta_edge_has_no_claim():
    rep = verify_theorem("delta", 6, EDGE, False)
    assert rep.claims == [] and rep.notes
    assert rep.dimension == 4


def test_optional_sections():
    rep = verify_theorem("gamma", 14, EDGE, False, witnesses=True, tables=True)
    assert rep.witnesses is not None and rep.tables["coverage_total"]


def test_serialization():
    reps = [verify_theorem("gamma", 8, VERTEX, True), verify_theorem("gamma", 11, EDGE, True)]
    data = json.loads(reports_to_json(reps))
    assert data["out_of_scope"] == OUT_OF_SCOPE and len(data["reports"]) == 2
    text = reports_to_text(reps)
    assert text.splitlines()[0].startswith("PASS gamma(8)")
    assert text.splitlines()[1].startswith("FAIL gamma(11)")
    assert "T10" in text
    rows = list(csv.reader(io.StringIO(reports_to_csv(reps))))
    assert rows[0][0] == "family" and len(rows) == 3
