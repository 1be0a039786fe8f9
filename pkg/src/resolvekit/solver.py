"""Exact metric dimension and edge metric dimension.

A landmark set resolves a graph exactly when it hits the distinguisher set of
every pair of items (vertices or edges). Each pair's distinguisher set is a
Python int used as a bitset over vertices. Each vertex also has a coverage
mask, a bitset over pair indices, so "does this set resolve" is an OR of k
masks compared with the all-pairs mask.

Two exact methods are provided and cross-checked: lexicographic subset
enumeration and a hitting-set branch and bound. Ties are always broken
toward the lowest vertex id.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np

from .graph import (
    DistanceMatrix,
    Edge,
    Graph,
    all_pairs_distances,
    edge_code,
    edge_distance_matrix,
    vertex_code,
)

VERTEX = "vertex"
EDGE = "edge"
KINDS = (VERTEX, EDGE)

ENUMERATION = "enumeration"
BRANCH_AND_BOUND = "branch_and_bound"
BOTH = "both"
METHODS = {"enum": ENUMERATION, "bnb": BRANCH_AND_BOUND, "both": BOTH,
           ENUMERATION: ENUMERATION, BRANCH_AND_BOUND: BRANCH_AND_BOUND}

OPTIMAL = "optimal"
NO_FINITE_DIMENSION = "no_finite_dimension"
NO_INDEPENDENT_SET = "no_independent_resolving_set"


class SolverError(Exception):
    pass


class MaxKExceededError(SolverError):
    def __init__(self, max_k: int, exhausted_k: int):
        super().__init__(f"no resolving set of size <= {max_k}; sizes up to {exhausted_k} exhausted")
        self.max_k = max_k
        self.exhausted_k = exhausted_k


class UnresolvableInstanceError(SolverError):
    """Some item pair has an empty distinguisher set."""


class CrossCheckError(SolverError):
    """Enumeration and branch and bound disagree."""


def iter_bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def _pack_rows(bools: np.ndarray) -> list[int]:
    if bools.shape[1] == 0:
        return [0] * bools.shape[0]
    packed = np.packbits(bools, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


@dataclass(frozen=True)
class ResolvabilityInstance:
    kind: str
    vertex_count: int
    items: tuple
    pairs: tuple[tuple[int, int], ...]
    distinguishers: tuple[int, ...]
    coverage: tuple[int, ...] = field(repr=False)
    neighbor_masks: tuple[int, ...] = field(repr=False)
    degrees: tuple[int, ...] = field(repr=False)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.pairs)) - 1

    @property
    def empty_pairs(self) -> list[int]:
        return [i for i, m in enumerate(self.distinguishers) if m == 0]

    def pair_items(self, index: int) -> tuple:
        a, b = self.pairs[index]
        return self.items[a], self.items[b]


def build_instance(g: Graph, d: DistanceMatrix, kind: str = VERTEX) -> ResolvabilityInstance:
    """Distinguisher bitsets for every unordered pair of distinct items."""
    if kind == VERTEX:
        items: tuple = tuple(range(g.vertex_count))
        table = np.asarray(d.dist)
    elif kind == EDGE:
        items = g.edges
        table = edge_distance_matrix(d, g.edges)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    m = len(items)
    pairs = [(a, b) for a in range(m) for b in range(a + 1, m)]
    blocks = [(table[:, a:a + 1] != table[:, a + 1:]).T for a in range(m - 1)]
    if blocks:
        by_pair = np.concatenate(blocks, axis=0)
    else:
        by_pair = np.zeros((0, g.vertex_count), dtype=bool)
    return ResolvabilityInstance(
        kind=kind,
        vertex_count=g.vertex_count,
        items=items,
        pairs=tuple(pairs),
        distinguishers=tuple(_pack_rows(by_pair)),
        coverage=tuple(_pack_rows(np.ascontiguousarray(by_pair.T))),
        neighbor_masks=tuple(to_mask(g.neighbors(v)) for v in range(g.vertex_count)),
        degrees=tuple(g.degree(v) for v in range(g.vertex_count)),
    )


def _item_json(item):
    return [item.u, item.v] if isinstance(item, Edge) else item


@dataclass(frozen=True)
class ResolvingCertificate:
    landmarks: tuple[int, ...]
    kind: str
    is_resolving: bool
    is_independent: bool
    witness: tuple | None = None

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "landmarks": list(self.landmarks),
            "resolving": self.is_resolving,
            "independent": self.is_independent,
            "witness": None if self.witness is None else [_item_json(x) for x in self.witness],
        }


def _independent_mask(inst: ResolvabilityInstance, mask: int) -> bool:
    return all(not (inst.neighbor_masks[v] & mask) for v in iter_bits(mask))


def is_independent(g: Graph, landmarks: Iterable[int]) -> bool:
    chosen = sorted(set(landmarks))
    return not any(g.has_edge(a, b) for a, b in combinations(chosen, 2))


def is_resolving(inst: ResolvabilityInstance, landmarks: Iterable[int]) -> ResolvingCertificate:
    chosen = tuple(sorted(set(landmarks)))
    for v in chosen:
        if not 0 <= v < inst.vertex_count:
            raise ValueError(f"landmark {v} is not a vertex")
    covered = 0
    for v in chosen:
        covered |= inst.coverage[v]
    missing = inst.full_mask & ~covered
    witness = None
    if missing:
        witness = inst.pair_items((missing & -missing).bit_length() - 1)
    return ResolvingCertificate(
        landmarks=chosen,
        kind=inst.kind,
        is_resolving=not missing,
        is_independent=_independent_mask(inst, to_mask(chosen)),
        witness=witness,
    )


def recheck_certificate(g: Graph, d: DistanceMatrix, landmarks: Sequence[int], kind: str) -> ResolvingCertificate:
    """Recompute a certificate from metric codes alone, without any instance.

    The witness is the lexicographically first pair of items with equal codes,
    matching the witness reported by :func:`is_resolving`.
    """
    chosen = tuple(sorted(set(landmarks)))
    items = list(range(g.vertex_count)) if kind == VERTEX else list(g.edges)
    groups: dict[tuple, list[int]] = {}
    for idx, item in enumerate(items):
        code = vertex_code(d, chosen, item) if kind == VERTEX else edge_code(d, chosen, item)
        groups.setdefault(code, []).append(idx)
    clashes = [(grp[0], grp[1]) for grp in groups.values() if len(grp) > 1]
    witness = None
    if clashes:
        a, b = min(clashes)
        witness = (items[a], items[b])
    return ResolvingCertificate(chosen, kind, not clashes, is_independent(g, chosen), witness)


def _greedy(inst: ResolvabilityInstance, independent: bool = False) -> list[int] | None:
    uncovered = inst.full_mask
    allowed = (1 << inst.vertex_count) - 1
    chosen: list[int] = []
    while uncovered:
        best_v, best_gain = -1, 0
        for v in iter_bits(allowed):
            gain = (inst.coverage[v] & uncovered).bit_count()
            if gain > best_gain:
                best_v, best_gain = v, gain
        if best_v < 0:
            return None
        chosen.append(best_v)
        uncovered &= ~inst.coverage[best_v]
        allowed &= ~(1 << best_v)
        if independent:
            allowed &= ~inst.neighbor_masks[best_v]
    return sorted(chosen)


def greedy_upper_bound(inst: ResolvabilityInstance) -> tuple[int, tuple[int, ...]]:
    """Set-cover greedy over distinguisher sets; returns a resolving set."""
    if inst.empty_pairs:
        a, b = inst.pair_items(inst.empty_pairs[0])
        raise UnresolvableInstanceError(f"items {a} and {b} are not distinguished by any vertex")
    chosen = _greedy(inst)
    return len(chosen), tuple(chosen)


# -- subset enumeration ------------------------------------------------------


def _degree_prune_allowed(inst: ResolvabilityInstance, prune_degree: bool) -> None:
    if prune_degree and inst.kind != VERTEX:
        raise ValueError("the degree prune is only valid for vertex resolvability")


def _candidates(inst: ResolvabilityInstance, k: int, prune_degree: bool) -> list[int]:
    # A resolving pair found after all singletons failed is a metric basis of
    # size two, whose members have degree at most 3.
    if prune_degree and k == 2:
        return [v for v in range(inst.vertex_count) if inst.degrees[v] <= 3]
    return list(range(inst.vertex_count))


def _search_size(inst, k, independent, prune_degree, collect_all):
    """Scan k-subsets in lexicographic order; return (resolving sets, sets checked)."""
    full = inst.full_mask
    cov = inst.coverage
    nbr = inst.neighbor_masks
    cand = _candidates(inst, k, prune_degree)
    found: list[tuple[int, ...]] = []
    checked = 0
    if k == 0:
        return ([()] if full == 0 else []), 1

    def rec(start: int, depth: int, covered: int, forbidden: int, chosen: list[int]) -> bool:
        nonlocal checked
        last = depth + 1 == k
        for i in range(start, len(cand) - (k - depth) + 1):
            v = cand[i]
            if independent and (forbidden >> v) & 1:
                continue
            c = covered | cov[v]
            if last:
                checked += 1
                if c == full:
                    found.append((*chosen, v))
                    if not collect_all:
                        return True
            else:
                chosen.append(v)
                stop = rec(i + 1, depth + 1, c, forbidden | nbr[v], chosen)
                chosen.pop()
                if stop:
                    return True
        return False

    rec(0, 0, 0, 0, [])
    return found, checked


def enumerate_minimum_bases(
    inst: ResolvabilityInstance, k: int, *, independent_only: bool = False
) -> list[tuple[int, ...]]:
    """All resolving sets of size ``k``, sorted lexicographically."""
    found, _ = _search_size(inst, k, independent_only, False, collect_all=True)
    return found


@dataclass
class SolveReport:
    kind: str
    dimension: int | None
    basis: ResolvingCertificate | None
    method: str
    nodes_explored: dict[str, int]
    greedy_upper_bound: int | None
    independent_only: bool = False
    status: str = OPTIMAL
    exhausted_k: int | None = None
    wall_seconds: float = 0.0

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "dimension": self.dimension,
            "basis": list(self.basis.landmarks) if self.basis else None,
            "certificate": self.basis.to_dict() if self.basis else None,
            "method": self.method,
            "nodes_explored": dict(self.nodes_explored),
            "greedy_upper_bound": self.greedy_upper_bound,
            "independent_only": self.independent_only,
            "status": self.status,
            "exhausted_k": self.exhausted_k,
            "timing": {"wall_seconds": round(self.wall_seconds, 6)},
        }


def _unresolvable_report(inst, method, independent_only, started, status=NO_FINITE_DIMENSION) -> SolveReport:
    exhausted = inst.vertex_count if status == NO_INDEPENDENT_SET else None
    return SolveReport(inst.kind, None, None, method, {}, None, independent_only,
                       status, exhausted, time.perf_counter() - started)


def _greedy_bound(inst, independent_only):
    chosen = _greedy(inst, independent_only)
    return None if chosen is None else len(chosen)


def _solve_by_enumeration(inst, independent_only, max_k, prune_degree):
    checked_total = 0
    for k in range(0, max_k + 1):
        found, checked = _search_size(inst, k, independent_only, prune_degree, collect_all=False)
        checked_total += checked
        if found:
            return k, found[0], checked_total
    raise MaxKExceededError(max_k, max_k)


def _solve_by_branch_and_bound(inst, independent_only, upper):
    full = inst.full_mask
    cov = inst.coverage
    dist = inst.distinguishers
    nbr = inst.neighbor_masks
    sizes = sorted({m.bit_count() for m in dist})
    size_classes = []
    for s in sizes:
        size_classes.append(to_mask(i for i, m in enumerate(dist) if m.bit_count() == s))

    incumbent = _greedy(inst, independent_only)
    if incumbent is not None and len(incumbent) <= upper:
        best = [len(incumbent), tuple(incumbent)]
    else:
        best = [upper + 1, None]
    nodes = 0

    def rec(covered: int, allowed: int, chosen: list[int]) -> None:
        nonlocal nodes
        nodes += 1
        if covered == full:
            if len(chosen) < best[0]:
                best[0], best[1] = len(chosen), tuple(sorted(chosen))
            return
        if len(chosen) + 1 >= best[0]:
            return
        uncovered = full & ~covered
        reach = 0
        for x in iter_bits(allowed):
            reach |= cov[x]
        if uncovered & ~reach:
            return
        # Lower bound: pairs whose allowed distinguishers are pairwise
        # disjoint each need their own landmark.
        remaining = uncovered
        bound = 0
        branch_set = 0
        for cls in size_classes:
            m = remaining & cls
            while m:
                p = (m & -m).bit_length() - 1
                ds = dist[p] & allowed
                if not branch_set:
                    branch_set = ds
                bound += 1
                if len(chosen) + bound >= best[0]:
                    return
                hit = 0
                for x in iter_bits(ds):
                    hit |= cov[x]
                remaining &= ~hit
                m = remaining & cls
        excluded = 0
        for v in iter_bits(branch_set):
            nxt = allowed & ~excluded & ~(1 << v)
            if independent_only:
                nxt &= ~nbr[v]
            chosen.append(v)
            rec(covered | cov[v], nxt, chosen)
            chosen.pop()
            excluded |= 1 << v
            if len(chosen) + 1 >= best[0]:
                return

    rec(0, (1 << inst.vertex_count) - 1, [])
    if best[1] is None:
        raise MaxKExceededError(upper, upper)
    return best[0], best[1], nodes


def branch_and_bound(
    inst: ResolvabilityInstance,
    upper: int | None = None,
    *,
    independent_only: bool = False,
) -> SolveReport:
    """Minimum hitting set of the distinguisher sets.

    Only sets of size at most ``upper`` (default: vertex count) are sought;
    the greedy solution seeds the incumbent when it fits.
    """
    started = time.perf_counter()
    if inst.empty_pairs:
        return _unresolvable_report(inst, BRANCH_AND_BOUND, independent_only, started)
    exhaustive = upper is None
    upper = inst.vertex_count if upper is None else upper
    try:
        k, basis, nodes = _solve_by_branch_and_bound(inst, independent_only, upper)
    except MaxKExceededError:
        # with no size cap, failure means no independent set resolves at all
        if not exhaustive:
            raise
        return _unresolvable_report(inst, BRANCH_AND_BOUND, independent_only, started, NO_INDEPENDENT_SET)
    return SolveReport(
        kind=inst.kind,
        dimension=k,
        basis=is_resolving(inst, basis),
        method=BRANCH_AND_BOUND,
        nodes_explored={BRANCH_AND_BOUND: nodes},
        greedy_upper_bound=_greedy_bound(inst, independent_only),
        independent_only=independent_only,
        exhausted_k=k - 1 if k else None,
        wall_seconds=time.perf_counter() - started,
    )


def exact_dimension(
    inst: ResolvabilityInstance,
    *,
    independent_only: bool = False,
    max_k: int | None = None,
    prune_degree: bool = False,
    method: str = "enum",
) -> SolveReport:
    """Smallest resolving (optionally independent) landmark set.

    ``method`` is ``"enum"``, ``"bnb"`` or ``"both"``; with ``"both"`` the two
    dimensions must agree and the reported basis is the enumeration's
    lexicographically least one. ``prune_degree`` restricts the size-2 vertex
    search to vertices of degree at most 3.
    """
    _degree_prune_allowed(inst, prune_degree)
    try:
        method = METHODS[method]
    except KeyError:
        raise ValueError(f"unknown method {method!r}") from None
    started = time.perf_counter()
    if inst.empty_pairs:
        return _unresolvable_report(inst, method, independent_only, started)
    exhaustive = max_k is None
    max_k = inst.vertex_count if max_k is None else max_k
    try:
        return _exact(inst, independent_only, max_k, prune_degree, method, started)
    except MaxKExceededError:
        if not exhaustive:
            raise
        return _unresolvable_report(inst, method, independent_only, started, NO_INDEPENDENT_SET)


def _exact(inst, independent_only, max_k, prune_degree, method, started) -> SolveReport:
    nodes: dict[str, int] = {}
    if method in (ENUMERATION, BOTH):
        k, basis, nodes[ENUMERATION] = _solve_by_enumeration(inst, independent_only, max_k, prune_degree)
    if method in (BRANCH_AND_BOUND, BOTH):
        k_bb, basis_bb, nodes[BRANCH_AND_BOUND] = _solve_by_branch_and_bound(inst, independent_only, max_k)
        if method == BOTH:
            if k_bb != k:
                raise CrossCheckError(f"enumeration found {k}, branch and bound found {k_bb}")
            if not is_resolving(inst, basis_bb).is_resolving:
                raise CrossCheckError(f"branch and bound basis {basis_bb} does not resolve")
        else:
            k, basis = k_bb, basis_bb
    return SolveReport(
        kind=inst.kind,
        dimension=k,
        basis=is_resolving(inst, basis),
        method=method,
        nodes_explored=nodes,
        greedy_upper_bound=_greedy_bound(inst, independent_only),
        independent_only=independent_only,
        exhausted_k=k - 1 if k else None,
        wall_seconds=time.perf_counter() - started,
    )


def solve(g: Graph, kind: str = VERTEX, **options) -> SolveReport:
    """Build the instance for ``g`` and run :func:`exact_dimension`."""
    return exact_dimension(build_instance(g, all_pairs_distances(g), kind), **options)
