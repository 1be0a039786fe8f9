"""Published code coincidences that rule out two-element resolving sets.

Each class fixes a landmark pair ``{a_1, b_g}``; each row claims that two
items share a code for every g in its range. Indices are affine expressions
in which ``t`` stands for g. Every claim is re-checked by BFS and gets a
definite verdict.

Edge items written ``r_a s_{a+1}`` are not edges of the canonical ladder
(where ``s_a`` sits between ``r_a`` and ``r_{a+1}``); they are read as the
canonical edge ``r_a s_a``, the reading under which the published edge code
tables agree with BFS.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..families import generate, ladder_id, wrap
from ..graph import Edge, Graph, all_pairs_distances, edge_code, vertex_code
from .tables import Affine, domain_values

ItemSpec = tuple  # ("Q", "1") for a vertex, (("P", "n"), ("P", "n-1")) for an edge

T5_MIN_N = 13


@dataclass(frozen=True)
class WitnessRow:
    g_domain: str
    left: ItemSpec
    right: ItemSpec


@dataclass(frozen=True)
class WitnessClass:
    class_id: str
    claim: str
    family: str
    kind: str
    first: tuple[str, str]
    second_role: str
    rows: tuple[WitnessRow, ...]
    min_n: int = 6


def _v(role: str, idx: str) -> ItemSpec:
    return (role, idx)


def _e(a: str, b: str) -> ItemSpec:
    """Edge spec from compact labels such as ``"p_n"`` and ``"p_n-1"``."""
    ra, ia = a.split("_", 1)
    rb, ib = b.split("_", 1)
    return ((ra.upper(), ia), (rb.upper(), ib))


def _cls(class_id, claim, family, kind, first, second_role, rows, min_n=6) -> WitnessClass:
    return WitnessClass(class_id, claim, family, kind, first, second_role,
                        tuple(WitnessRow(*r) for r in rows), min_n)


_PN_PN1 = (_e("p_n", "q_n"), _e("p_n", "p_n-1"))
_P1P2_P1PN = (_e("p_1", "p_2"), _e("p_1", "p_n"))

WITNESS_CLASSES: tuple[WitnessClass, ...] = (
    # chorded ladder, vertex codes, even n >= 13
    _cls("T5:p1,pg", "T5", "delta", "vertex", ("P", "1"), "P", [
        ("2..h", _v("Q", "1"), _v("P", "n")),
        ("h+1", _v("P", "2"), _v("P", "n")),
    ], T5_MIN_N),
    _cls("T5:q1,qg", "T5", "delta", "vertex", ("Q", "1"), "Q", [
        ("2", _v("S", "1"), _v("S", "n")),
        ("3", _v("P", "2"), _v("Q", "2")),
        ("4", _v("S", "2"), _v("R", "3")),
        ("5..h", _v("S", "1"), _v("P", "n")),
        ("h+1", _v("P", "2"), _v("P", "n")),
    ], T5_MIN_N),
    _cls("T5:s1,sg", "T5", "delta", "vertex", ("S", "1"), "S", [
        ("2..3", _v("S", "n"), _v("Q", "1")),
        ("4..5", _v("S", "3"), _v("Q", "4")),
        ("6..h+1", _v("S", "2"), _v("Q", "2")),
    ], T5_MIN_N),
    _cls("T5:p1,qg", "T5", "delta", "vertex", ("P", "1"), "Q", [
        ("1,h+1", _v("P", "n"), _v("P", "2")),
        ("2", _v("S", "2"), _v("S", "1")),
        ("3..h+1", _v("S", "2"), _v("Q", "2")),
    ], T5_MIN_N),
    _cls("T5:p1,sg", "T5", "delta", "vertex", ("P", "1"), "S", [
        ("1", _v("S", "n"), _v("Q", "3")),
        ("2", _v("Q", "3"), _v("S", "1")),
        ("3..h-1", _v("P", "n"), _v("Q", "1")),
        ("h", _v("P", "n"), _v("P", "2")),
        ("h+1", _v("P", "3"), _v("Q", "n")),
    ], T5_MIN_N),
    _cls("T5:q1,sg", "T5", "delta", "vertex", ("Q", "1"), "S", [
        ("1", _v("P", "n"), _v("Q", "2")),
        ("2", _v("Q", "2"), _v("S", "1")),
        ("3..4", _v("S", "2"), _v("Q", "3")),
        ("5..h-1", _v("S", "1"), _v("P", "n")),
        ("h", _v("P", "n"), _v("P", "2")),
        ("h+1", _v("P", "3"), _v("R", "n-1")),
    ], T5_MIN_N),
    # ladder, edge codes
    _cls("T7:p1,pg", "T7", "gamma", "edge", ("P", "1"), "P", [
        ("2..h", _e("p_1", "q_1"), _e("p_1", "p_n")),
        ("h+1", *_P1P2_P1PN),
    ]),
    _cls("T7:q1,qg", "T7", "gamma", "edge", ("Q", "1"), "Q", [
        ("2..h-1", *_PN_PN1),
        ("h", _e("r_h-1", "s_h"), _e("r_h", "s_h")),
        ("h+1", *_P1P2_P1PN),
    ]),
    _cls("T7:r1,rg", "T7", "gamma", "edge", ("R", "1"), "R", [
        ("2..h-1", *_PN_PN1),
        ("h", _e("r_h-1", "s_h"), _e("r_h", "s_h")),
        ("h+1", *_P1P2_P1PN),
    ]),
    _cls("T7:s1,sg", "T7", "gamma", "edge", ("S", "1"), "S", [
        ("2..h-1", *_PN_PN1),
        ("h", _e("q_h-1", "r_h-1"), _e("p_h", "p_h+1")),
        ("h+1", _e("p_3", "p_2"), _e("p_1", "p_n")),
    ]),
    _cls("T7:p1,qg", "T7", "gamma", "edge", ("P", "1"), "Q", [
        ("1..h-1", *_PN_PN1),
        ("h", _e("s_h-1", "r_h"), _e("r_h", "s_h")),
        ("h+1", *_P1P2_P1PN),
    ]),
    _cls("T7:p1,rg", "T7", "gamma", "edge", ("P", "1"), "R", [
        ("1..h-1", *_PN_PN1),
        ("h", _e("s_h-1", "r_h"), _e("r_h", "s_h")),
        ("h+1", *_P1P2_P1PN),
    ]),
    _cls("T7:p1,sg", "T7", "gamma", "edge", ("P", "1"), "S", [
        ("1..h-1", *_PN_PN1),
        ("h", _e("r_h-1", "q_h-1"), _e("p_h", "p_h+1")),
        ("h+1", _e("p_h+1", "p_h+2"), _e("q_h+3", "r_h+3")),
    ]),
    _cls("T7:q1,rg", "T7", "gamma", "edge", ("Q", "1"), "R", [
        ("1..h-1", *_PN_PN1),
        ("h", _e("q_2", "r_2"), _e("p_n-1", "q_n-1")),
        ("h+1", *_P1P2_P1PN),
    ]),
    _cls("T7:q1,sg", "T7", "gamma", "edge", ("Q", "1"), "S", [
        ("1..h-1", *_PN_PN1),
        ("h", _e("r_h-1", "q_h-1"), _e("p_h", "p_h+1")),
        ("h+1", _e("p_h+1", "p_h+2"), _e("q_h+3", "r_h+3")),
    ]),
    _cls("T7:r1,sg", "T7", "gamma", "edge", ("R", "1"), "S", [
        ("1..h-1", *_PN_PN1),
        ("h", _e("r_h-1", "q_h-1"), _e("p_h", "p_h+1")),
        ("h+1", _e("p_h+1", "p_h+2"), _e("q_h+3", "r_h+3")),
    ]),
)


def _index(expr: str, g: int, n: int) -> int:
    return wrap(Affine.parse(expr)(g, n), n)


def _spec_text(spec: ItemSpec, g: int, n: int) -> str:
    if isinstance(spec[0], str):
        return f"{spec[0].lower()}{_index(spec[1], g, n)}"
    return "".join(_spec_text(s, g, n) for s in spec)


def resolve_ladder_edge(g: Graph, n: int, a: tuple[str, int], b: tuple[str, int]) -> Edge | None:
    """Map a published edge label to a canonical edge; None if it is not an edge."""
    (ra, ia), (rb, ib) = sorted([a, b])
    if (ra, rb) == ("R", "S") and wrap(ib - ia, n) == 1:
        ib = ia
    u, v = ladder_id(ra, ia, n), ladder_id(rb, ib, n)
    return Edge.of(u, v) if u != v and g.has_edge(u, v) else None


@dataclass
class WitnessCheck:
    class_id: str
    claim: str
    row_index: int
    g: int
    landmarks: tuple[str, str]
    left: str
    right: str
    left_code: tuple[int, ...] | None
    right_code: tuple[int, ...] | None
    confirmed: bool
    reason: str = ""

    @property
    def verdict(self) -> str:
        return "confirmed" if self.confirmed else "refuted"

    def to_dict(self) -> dict:
        return {
            "class": self.class_id, "claim": self.claim, "row": self.row_index, "g": self.g,
            "landmarks": list(self.landmarks), "left": self.left, "right": self.right,
            "left_code": None if self.left_code is None else list(self.left_code),
            "right_code": None if self.right_code is None else list(self.right_code),
            "verdict": self.verdict, "reason": self.reason,
        }


@dataclass
class WitnessReport:
    family: str
    n: int
    checks: list[WitnessCheck] = field(default_factory=list)
    skipped: list[tuple[str, str]] = field(default_factory=list)

    @property
    def confirmed(self) -> int:
        return sum(c.confirmed for c in self.checks)

    @property
    def refuted(self) -> int:
        return len(self.checks) - self.confirmed

    def to_dict(self) -> dict:
        return {
            "family": self.family, "n": self.n,
            "confirmed": self.confirmed, "refuted": self.refuted,
            "checks": [c.to_dict() for c in self.checks],
            "skipped": [{"class": c, "reason": r} for c, r in self.skipped],
        }


def verify_contradiction_witnesses(family: str, n: int) -> WitnessReport:
    """Re-check every published coincidence for ``family`` at this n."""
    family = family.lower()
    report = WitnessReport(family, n)
    if n < 6:
        raise ValueError(f"witness tables need n >= 6, got {n}")
    g = generate(family, n)
    d = all_pairs_distances(g)
    for wc in WITNESS_CLASSES:
        if wc.family != family:
            continue
        if n < wc.min_n:
            report.skipped.append((wc.class_id, f"outside the stated regime n >= {wc.min_n}"))
            continue
        for i, row in enumerate(wc.rows):
            for gi in domain_values(row.g_domain, n):
                report.checks.append(_check(g, d, n, wc, i, row, gi))
    return report


def _check(g, d, n, wc: WitnessClass, i: int, row: WitnessRow, gi: int) -> WitnessCheck:
    first = ladder_id(wc.first[0], _index(wc.first[1], gi, n), n)
    second = ladder_id(wc.second_role, gi, n)
    names = (g.label_of(first), g.label_of(second))
    left_txt, right_txt = _spec_text(row.left, gi, n), _spec_text(row.right, gi, n)
    base = dict(class_id=wc.class_id, claim=wc.claim, row_index=i, g=gi,
                landmarks=names, left=left_txt, right=right_txt)
    if first == second:
        return WitnessCheck(**base, left_code=None, right_code=None, confirmed=False,
                            reason="landmark pair degenerates to one vertex")
    landmarks = [first, second]
    items = []
    for spec in (row.left, row.right):
        if wc.kind == "vertex":
            items.append(ladder_id(spec[0], _index(spec[1], gi, n), n))
        else:
            (ra, ia), (rb, ib) = spec
            a = (ra, _index(ia, gi, n))
            b = (rb, _index(ib, gi, n))
            items.append(resolve_ladder_edge(g, n, a, b))
    if any(item is None for item in items):
        return WitnessCheck(**base, left_code=None, right_code=None, confirmed=False,
                            reason="item is not an edge of the graph")
    if wc.kind == "vertex":
        codes = [vertex_code(d, landmarks, v) for v in items]
    else:
        codes = [edge_code(d, landmarks, e) for e in items]
    if items[0] == items[1]:
        return WitnessCheck(**base, left_code=codes[0], right_code=codes[1], confirmed=False,
                            reason="both sides name the same item")
    same = codes[0] == codes[1]
    return WitnessCheck(**base, left_code=codes[0], right_code=codes[1], confirmed=same,
                        reason="" if same else "codes differ")
