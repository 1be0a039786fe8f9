import json
import random

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from resolvekit import all_pairs_distances, edge_code, generate, vertex_code, vertex_edge_distance
from resolvekit.solver import (
    EDGE,
    VERTEX,
    _search_size,
    build_instance,
    exact_dimension,
    is_resolving,
    recheck_certificate,
)

from conftest import control_corpus, random_connected

FAST = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])


def generated_graphs():
    """Every family instance with at most 200 vertices."""
    out = []
    for n in range(3, 51):
        out += [generate("gamma", n), generate("delta", n)]
    for n in range(3, 201, 7):
        out.append(generate("cycle", n))
    for n in range(1, 201, 9):
        out.append(generate("path", n))
    for n in range(1, 41, 3):
        out.append(generate("complete", n))
    return out


def check_distance_invariants(g):
    d = np.asarray(all_pairs_distances(g).dist, dtype=np.int64)
    n = g.vertex_count
    assert (np.diag(d) == 0).all()
    assert (d == d.T).all()
    off = ~np.eye(n, dtype=bool)
    assert (d[off] >= 1).all()
    adj = np.zeros((n, n), dtype=bool)
    for e in g.edges:
        adj[e.u, e.v] = adj[e.v, e.u] = True
    assert ((d == 1) == adj).all()
    # triangle inequality through every intermediate vertex
    for v in range(n):
        assert (d <= d[:, v:v + 1] + d[v:v + 1, :]).all()


def test_distance_invariants_on_generated_graphs():
    graphs = generated_graphs()
    assert max(g.vertex_count for g in graphs) == 200
    for g in graphs:
        check_distance_invariants(g)


@FAST
@given(st.integers(2, 60), st.floats(0.0, 0.3), st.integers(0, 10_000))
def test_distance_invariants_random(n, p, seed):
    check_distance_invariants(random_connected(n, p, seed))


@FAST
@given(st.integers(2, 40), st.integers(0, 10_000))
def test_vertex_edge_distance_bounds(n, seed):
    g = random_connected(n, 0.2, seed)
    d = all_pairs_distances(g)
    for e in g.edges:
        for x in range(n):
            de = vertex_edge_distance(d, x, e)
            assert de == min(d[x, e.u], d[x, e.v])
            assert 0 <= d[x, e.u] - de <= 1 and 0 <= d[x, e.v] - de <= 1


@FAST
@given(st.sampled_from(["gamma", "delta"]), st.integers(3, 14), st.data())
def test_codes_permutation_equivariant(family, n, data):
    g = generate(family, n)
    d = all_pairs_distances(g)
    ys = data.draw(st.lists(st.integers(0, g.vertex_count - 1), min_size=1, max_size=5, unique=True))
    perm = data.draw(st.permutations(range(len(ys))))
    permuted = [ys[i] for i in perm]
    for v in range(g.vertex_count):
        base = vertex_code(d, ys, v)
        assert vertex_code(d, permuted, v) == tuple(base[i] for i in perm)
    for e in g.edges:
        base = edge_code(d, ys, e)
        assert edge_code(d, permuted, e) == tuple(base[i] for i in perm)


@FAST
@given(st.sampled_from(["gamma", "delta", "cycle"]), st.integers(4, 12),
       st.sampled_from([VERTEX, EDGE]), st.integers(0, 10_000))
def test_superset_monotonicity(family, n, kind, seed):
    g = generate(family, n)
    inst = build_instance(g, all_pairs_distances(g), kind)
    basis = exact_dimension(inst).basis.landmarks
    rng = random.Random(seed)
    extra = rng.sample(range(g.vertex_count), rng.randrange(g.vertex_count + 1))
    assert is_resolving(inst, set(basis) | set(extra)).is_resolving


@FAST
@given(st.integers(3, 18), st.floats(0.0, 0.35), st.integers(0, 10_000), st.sampled_from([VERTEX, EDGE]),
       st.booleans())
def test_methods_agree_random(n, p, seed, kind, independent):
    g = random_connected(n, p, seed)
    inst = build_instance(g, all_pairs_distances(g), kind)
    enum = exact_dimension(inst, method="enum", independent_only=independent)
    bnb = exact_dimension(inst, method="bnb", independent_only=independent)
    assert enum.dimension == bnb.dimension and enum.status == bnb.status
    if bnb.basis is not None:
        d = all_pairs_distances(g)
        assert recheck_certificate(g, d, bnb.basis.landmarks, kind).is_resolving


def test_degree_prune_sound_on_controls():
    for name, g in control_corpus():
        if g.vertex_count > 24:
            continue
        inst = build_instance(g, all_pairs_distances(g))
        plain = exact_dimension(inst)
        pruned = exact_dimension(inst, prune_degree=True)
        assert (plain.dimension, plain.basis.landmarks) == (pruned.dimension, pruned.basis.landmarks), name
        if plain.dimension >= 2:
            # once singletons fail, a size-2 solution exists iff one exists among low-degree vertices
            full, _ = _search_size(inst, 2, False, False, collect_all=False)
            low, _ = _search_size(inst, 2, False, True, collect_all=False)
            assert bool(full) == bool(low), name


@pytest.mark.parametrize("family, n", [("gamma", n) for n in range(6, 16)] + [("delta", n) for n in range(6, 16)])
def test_degree_prune_sound_on_ladders(family, n):
    inst = build_instance(generate(family, n), all_pairs_distances(generate(family, n)))
    assert exact_dimension(inst).dimension == exact_dimension(inst, prune_degree=True).dimension


def _report_json(g, kind, method):
    rep = exact_dimension(build_instance(g, all_pairs_distances(g), kind), method=method).to_dict()
    rep.pop("timing")
    return json.dumps(rep, sort_keys=True)


@pytest.mark.parametrize("method", ["enum", "bnb", "both"])
def test_determinism(method):
    for g in [generate("gamma", 9), generate("delta", 7), random_connected(15, 0.2, 3)]:
        for kind in (VERTEX, EDGE):
            assert _report_json(g, kind, method) == _report_json(g, kind, method)
