"""Check the published bases, code tables and dimension claims against BFS.

Every verdict here comes from the solver or from BFS codes; the published
formulas only supply the values being checked.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from itertools import combinations

from ..families import generate, ladder_id
from ..graph import Edge, Graph, all_pairs_distances, edge_code, vertex_code
from ..solver import EDGE, VERTEX, build_instance, exact_dimension, is_independent, recheck_certificate
from .tables import EDGE_CLASSES, VERTEX_CLASSES, closed_form_edge_codes, closed_form_vertex_codes
from .witnesses import WitnessReport, verify_contradiction_witnesses

MIN_N = 6

# (family, kind) -> claim ids for the plain and the independent statement
CLAIMS = {
    ("gamma", VERTEX): ("T2", "T9"),
    ("delta", VERTEX): ("T5", "T6"),
    ("gamma", EDGE): ("T7", "T8"),
}
OUT_OF_SCOPE = {"T10": "not verifiable: the graph family it concerns has no generator here"}

# Which family each closed-form table set describes.
TABLE_FAMILY = {VERTEX: "delta", EDGE: "gamma"}


@dataclass(frozen=True)
class ClaimedBasis:
    family: str
    n: int
    kind: str
    labels: tuple[tuple[str, int], ...]
    hypothesis: str = "primary"

    @property
    def h(self) -> int:
        return self.n // 2

    def vertex_ids(self) -> tuple[int, ...]:
        return tuple(sorted(ladder_id(role, t, self.n) for role, t in self.labels))

    def label_text(self) -> list[str]:
        return [f"{role.lower()}{t}" for role, t in self.labels]


def _check_n(n: int) -> None:
    if n < MIN_N:
        raise ValueError(f"claims concern n >= {MIN_N}, got {n}")


def _pattern(role: str, n: int) -> tuple[tuple[str, int], ...]:
    return ((role, 2), (role, n // 2 + 1), (role, n))


def claimed_basis(family: str, n: int, kind: str = VERTEX) -> ClaimedBasis:
    """Published basis: ``{p_2, p_{h+1}, p_n}`` for vertices, ``{s_2, s_{h+1}, s_n}`` for edges.

    The s indices are used as they stand: relabelling every s_t to s_{t+1}
    is the rotation automorphism restricted to the outer cycle, and a
    rotation of a resolving set resolves.
    """
    _check_n(n)
    role = "P" if kind == VERTEX else "S"
    return ClaimedBasis(family.lower(), n, kind, _pattern(role, n))


def fallback_basis(family: str, n: int) -> ClaimedBasis:
    """The ``{r_2, r_{h+1}, r_n}`` set named in the edge-table headers."""
    _check_n(n)
    return ClaimedBasis(family.lower(), n, EDGE, _pattern("R", n), "fallback")


def edge_class_item(item_class: str, t: int, n: int) -> Edge:
    """Canonical edge for a table row: ``rs`` at t is ``r_t s_t``, ``sr`` is ``s_t r_{t+1}``."""
    ends = {
        "pp": (("P", t), ("P", t + 1)),
        "pq": (("P", t), ("Q", t)),
        "qr": (("Q", t), ("R", t)),
        "rs": (("R", t), ("S", t)),
        "sr": (("S", t), ("R", t + 1)),
    }[item_class]
    (ra, ta), (rb, tb) = ends
    return Edge.of(ladder_id(ra, ta, n), ladder_id(rb, tb, n))


# ---------------------------------------------------------------- tables


@dataclass(frozen=True)
class Discrepancy:
    table_id: str
    row_index: int
    domain: str
    formula: str
    item_class: str
    t: int
    item: str
    hypothesis: str
    claimed: tuple[int, ...]
    oracle: tuple[int, ...]

    @property
    def match(self) -> bool:
        return self.claimed == self.oracle

    def to_dict(self) -> dict:
        return {
            "table": self.table_id, "row": self.row_index, "domain": self.domain,
            "formula": self.formula, "class": self.item_class, "t": self.t, "item": self.item,
            "hypothesis": self.hypothesis, "claimed": list(self.claimed),
            "oracle": list(self.oracle), "match": self.match,
        }


@dataclass
class DiscrepancyReport:
    family: str
    n: int
    kind: str
    hypotheses: dict[str, list[str]]
    rows: list[Discrepancy]
    gaps: list[tuple[str, int]]
    overlaps: list[tuple[str, int, tuple[int, ...]]]
    out_of_range: list[tuple[str, int, int]]
    classes: tuple[str, ...]

    def match_rates(self) -> dict[str, dict[str, float]]:
        """``hypothesis -> table id -> fraction of entries matching BFS``."""
        out: dict[str, dict[str, float]] = {}
        for hyp in self.hypotheses:
            per: dict[str, list[int]] = {}
            for r in self.rows:
                if r.hypothesis == hyp:
                    tally = per.setdefault(r.table_id, [0, 0])
                    tally[0] += r.match
                    tally[1] += 1
            out[hyp] = {tid: hits / total for tid, (hits, total) in sorted(per.items())}
        return out

    def overall_rates(self) -> dict[str, float]:
        out = {}
        for hyp in self.hypotheses:
            mine = [r for r in self.rows if r.hypothesis == hyp]
            out[hyp] = sum(r.match for r in mine) / len(mine) if mine else 0.0
        return out

    def best_hypothesis(self) -> str:
        rates = self.overall_rates()
        return max(self.hypotheses, key=lambda h: (rates[h], h == "primary"))

    def coverage_total(self) -> bool:
        """Every t in 1..n of every class is covered by a row or listed as a gap."""
        gaps = set(self.gaps)
        for cls in self.classes:
            seen = {r.t for r in self.rows if r.item_class == cls}
            if any(t not in seen and (cls, t) not in gaps for t in range(1, self.n + 1)):
                return False
        return True

    def to_dict(self) -> dict:
        return {
            "family": self.family, "n": self.n, "kind": self.kind,
            "hypotheses": self.hypotheses,
            "match_rates": self.match_rates(),
            "overall_match_rates": self.overall_rates(),
            "best_hypothesis": self.best_hypothesis(),
            "coverage_total": self.coverage_total(),
            "gaps": [list(g) for g in self.gaps],
            "overlaps": [[c, t, list(rows)] for c, t, rows in self.overlaps],
            "out_of_range": [list(x) for x in self.out_of_range],
            "entries": [r.to_dict() for r in self.rows],
        }


def verify_tables(family: str, n: int) -> DiscrepancyReport:
    """Compare each closed-form value with the BFS code of its item.

    Vertex tables describe the chorded ladder and edge tables the plain one;
    ``family`` must be that family.
    """
    _check_n(n)
    family = family.lower()
    kind = next((k for k, fam in TABLE_FAMILY.items() if fam == family), None)
    if kind is None:
        raise ValueError(f"no closed-form tables for family {family!r}")
    g = generate(family, n)
    d = all_pairs_distances(g)
    if kind == VERTEX:
        closed, classes = closed_form_vertex_codes(n), VERTEX_CLASSES
        bases = [claimed_basis(family, n, VERTEX)]
    else:
        closed, classes = closed_form_edge_codes(n), EDGE_CLASSES
        bases = [claimed_basis(family, n, EDGE), fallback_basis(family, n)]
    rows = []
    for basis in bases:
        # table coordinates follow the printed order (index 2, h+1, n)
        landmarks = [ladder_id(role, t, n) for role, t in basis.labels]
        for cls in classes:
            for e in closed.entries[cls]:
                if kind == VERTEX:
                    v = ladder_id(cls, e.t, n)
                    oracle, item = vertex_code(d, landmarks, v), g.label_of(v)
                else:
                    edge = edge_class_item(cls, e.t, n)
                    oracle, item = edge_code(d, landmarks, edge), g.label_of(edge.u) + g.label_of(edge.v)
                rows.append(Discrepancy(e.table_id, e.row_index, e.domain_text, e.formula_text,
                                        cls, e.t, item, basis.hypothesis, e.code, oracle))
    return DiscrepancyReport(
        family=family, n=n, kind=kind,
        hypotheses={b.hypothesis: b.label_text() for b in bases},
        rows=rows, gaps=closed.gaps, overlaps=closed.overlaps,
        out_of_range=[(e.table_id, e.row_index, e.t) for e in closed.out_of_range],
        classes=classes,
    )


# ---------------------------------------------------------------- theorems


@dataclass
class BasisCheck:
    hypothesis: str
    labels: list[str]
    landmarks: tuple[int, ...]
    resolving: bool
    independent: bool
    witness: tuple | None
    proper_subsets_fail: bool | None

    def to_dict(self) -> dict:
        witness = None
        if self.witness is not None:
            witness = [[x.u, x.v] if isinstance(x, Edge) else x for x in self.witness]
        return {
            "hypothesis": self.hypothesis, "labels": self.labels, "landmarks": list(self.landmarks),
            "resolving": self.resolving, "independent": self.independent, "witness": witness,
            "proper_subsets_fail": self.proper_subsets_fail,
        }


@dataclass
class VerificationReport:
    family: str
    n: int
    kind: str
    independent: bool
    claims: list[str]
    dimension: int | None
    basis: tuple[int, ...] | None
    independent_dimension: int | None
    independent_basis: tuple[int, ...] | None
    no_set_of_size_two: bool
    basis_checks: list[BasisCheck]
    witnesses: WitnessReport | None = None
    tables: dict | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def claimed_basis_resolves(self) -> bool:
        return any(b.resolving for b in self.basis_checks)

    @property
    def claimed_basis_independent(self) -> bool:
        return any(b.resolving and b.independent for b in self.basis_checks)

    def assertions(self) -> dict[str, bool]:
        """Named pass/fail results of the solver-level checks."""
        out = {
            "dimension_is_3": self.dimension == 3,
            "no_resolving_set_of_size_2": self.no_set_of_size_two,
            "claimed_basis_resolves": self.claimed_basis_resolves,
            "claimed_basis_minimal": any(b.resolving and b.proper_subsets_fail for b in self.basis_checks),
        }
        if self.independent:
            out["independent_dimension_is_3"] = self.independent_dimension == 3
            out["claimed_basis_independent"] = self.claimed_basis_independent
        return out

    @property
    def passed(self) -> bool:
        return all(self.assertions().values())

    def to_dict(self) -> dict:
        return {
            "family": self.family, "n": self.n, "kind": self.kind, "independent": self.independent,
            "claims": self.claims, "dimension": self.dimension,
            "basis": None if self.basis is None else list(self.basis),
            "independent_dimension": self.independent_dimension,
            "independent_basis": None if self.independent_basis is None else list(self.independent_basis),
            "no_resolving_set_of_size_2": self.no_set_of_size_two,
            "basis_checks": [b.to_dict() for b in self.basis_checks],
            "assertions": self.assertions(), "passed": self.passed,
            "witnesses": None if self.witnesses is None else self.witnesses.to_dict(),
            "tables": self.tables, "notes": self.notes,
        }


def _basis_check(g: Graph, d, basis: ClaimedBasis) -> BasisCheck:
    ids = basis.vertex_ids()
    cert = recheck_certificate(g, d, ids, basis.kind)
    subsets_fail = None
    if cert.is_resolving:
        subsets_fail = not any(
            recheck_certificate(g, d, sub, basis.kind).is_resolving
            for r in range(len(ids)) for sub in combinations(ids, r)
        )
    return BasisCheck(basis.hypothesis, basis.label_text(), ids, cert.is_resolving,
                      is_independent(g, ids), cert.witness, subsets_fail)


def verify_theorem(family: str, n: int, kind: str = VERTEX, independent: bool = False, *,
                   method: str = "enum", witnesses: bool = False, tables: bool = False) -> VerificationReport:
    """Solver-backed check of a dimension claim for one family and n."""
    _check_n(n)
    family = family.lower()
    g = generate(family, n)
    d = all_pairs_distances(g)
    inst = build_instance(g, d, kind)
    plain = exact_dimension(inst, method=method)
    indep = exact_dimension(inst, method=method, independent_only=True) if independent else None
    claim_ids = CLAIMS.get((family, kind))
    notes = []
    if claim_ids is None:
        claims = []
        notes.append(f"no published {kind} dimension claim for {family}")
    else:
        claims = [claim_ids[0]] + ([claim_ids[1]] if independent else [])
    bases = [claimed_basis(family, n, kind)]
    if kind == EDGE:
        bases.append(fallback_basis(family, n))
    report = VerificationReport(
        family=family, n=n, kind=kind, independent=independent, claims=claims,
        dimension=plain.dimension,
        basis=plain.basis.landmarks if plain.basis else None,
        independent_dimension=None if indep is None else indep.dimension,
        independent_basis=None if indep is None or indep.basis is None else indep.basis.landmarks,
        # dimension > 2 means every set of size <= 2 was exhausted and failed
        no_set_of_size_two=plain.dimension is not None and plain.dimension > 2,
        basis_checks=[_basis_check(g, d, b) for b in bases],
        notes=notes,
    )
    if plain.dimension is None:
        notes.append(plain.status)
    if witnesses and family in ("gamma", "delta"):
        report.witnesses = verify_contradiction_witnesses(family, n)
    if tables and TABLE_FAMILY.get(kind) == family:
        t = verify_tables(family, n)
        report.tables = {"overall_match_rates": t.overall_rates(), "best_hypothesis": t.best_hypothesis(),
                         "gaps": len(t.gaps), "overlaps": len(t.overlaps), "coverage_total": t.coverage_total()}
    return report


THEOREM_SUITE = (
    ("gamma", VERTEX, True),
    ("delta", VERTEX, True),
    ("gamma", EDGE, True),
)


def verify_range(n_values, *, jobs: int = 1, method: str = "enum") -> list[VerificationReport]:
    """All theorem checks for each n, optionally across worker processes."""
    tasks = [(fam, n, kind, ind, method) for n in n_values for fam, kind, ind in THEOREM_SUITE]
    if jobs <= 1 or len(tasks) <= 1:
        return [_run_task(t) for t in tasks]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_task, tasks))


def _run_task(task) -> VerificationReport:
    fam, n, kind, ind, method = task
    return verify_theorem(fam, n, kind, ind, method=method)


# ---------------------------------------------------------------- output


def reports_to_json(reports: list[VerificationReport], extra: dict | None = None) -> str:
    body = {"reports": [r.to_dict() for r in reports], "out_of_scope": OUT_OF_SCOPE}
    if extra:
        body.update(extra)
    return json.dumps(body, sort_keys=True, indent=2)


def reports_to_text(reports: list[VerificationReport]) -> str:
    lines = []
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        failed = [k for k, ok in r.assertions().items() if not ok]
        claims = "/".join(r.claims) or "-"
        line = f"{status} {r.family}({r.n}) {r.kind:<6} claims={claims} dim={r.dimension}"
        if r.independent:
            line += f" idim={r.independent_dimension}"
        if failed:
            line += " failed=" + ",".join(failed)
        lines.append(line)
    for claim, note in OUT_OF_SCOPE.items():
        lines.append(f"SKIP {claim}: {note}")
    return "\n".join(lines) + "\n"


def reports_to_csv(reports: list[VerificationReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["family", "n", "kind", "claims", "dimension", "independent_dimension",
                     "claimed_basis_resolves", "claimed_basis_independent", "passed"])
    for r in reports:
        writer.writerow([r.family, r.n, r.kind, "/".join(r.claims), r.dimension,
                         "" if r.independent_dimension is None else r.independent_dimension,
                         r.claimed_basis_resolves, r.claimed_basis_independent, r.passed])
    return buf.getvalue()
