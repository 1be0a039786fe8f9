"""Closed-form metric code tables for the ladder families, transcribed as printed.

Every coordinate and domain bound is an affine expression in the ring index
``t``, the half index ``h = n // 2`` and ``n``. Rows are kept exactly as
published, including rows that disagree with BFS and rows whose domains
overlap or leave gaps for small n; see :mod:`resolvekit.claims.verify` for
the comparison against ground truth.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

_TERM = re.compile(r"([+-]?)(\d*)([thn]?)")


@dataclass(frozen=True)
class Affine:
    """``t_coef*t + h_coef*h + n_coef*n + const``."""

    t_coef: int = 0
    h_coef: int = 0
    n_coef: int = 0
    const: int = 0

    @classmethod
    def parse(cls, text: str) -> "Affine":
        body = text.replace(" ", "")
        if not body:
            raise ValueError("empty expression")
        coefs = {"t": 0, "h": 0, "n": 0, "": 0}
        pos = 0
        while pos < len(body):
            m = _TERM.match(body, pos)
            if m is None or m.end() == pos or (pos and not m.group(1)):
                raise ValueError(f"cannot parse {text!r}")
            sign = -1 if m.group(1) == "-" else 1
            digits, var = m.group(2), m.group(3)
            if not digits and not var:
                raise ValueError(f"cannot parse {text!r}")
            coefs[var] += sign * (int(digits) if digits else 1)
            pos = m.end()
        return cls(coefs["t"], coefs["h"], coefs["n"], coefs[""])

    def __call__(self, t: int, n: int) -> int:
        return self.t_coef * t + self.h_coef * (n // 2) + self.n_coef * n + self.const

    def shifted(self, delta: int) -> "Affine":
        return Affine(self.t_coef, self.h_coef, self.n_coef, self.const + delta)

    def __str__(self) -> str:
        parts = []
        for coef, var in ((self.n_coef, "n"), (self.h_coef, "h"), (self.t_coef, "t")):
            if coef:
                sign = "-" if coef < 0 else "+"
                mag = "" if abs(coef) == 1 else str(abs(coef))
                parts.append(f"{sign}{mag}{var}")
        if self.const or not parts:
            parts.append(f"{self.const:+d}")
        return "".join(parts).lstrip("+")


def _parse_domain(text: str) -> tuple[tuple[Affine, Affine], ...]:
    ranges = []
    for chunk in text.split(","):
        lo, sep, hi = chunk.partition("..")
        lo_a = Affine.parse(lo)
        ranges.append((lo_a, Affine.parse(hi) if sep else lo_a))
    return tuple(ranges)


def domain_values(domain: str | tuple, n: int) -> list[int]:
    """Indices named by a domain such as ``"2..h"`` or ``"1,h+1"``.

    A range whose upper end falls below its lower end is empty.
    """
    if isinstance(domain, str):
        domain = _parse_domain(domain)
    out: list[int] = []
    for lo, hi in domain:
        out += [t for t in range(lo(0, n), hi(0, n) + 1) if t not in out]
    return out


@dataclass(frozen=True)
class Row:
    domain_text: str
    formula: tuple[Affine, ...]
    domain: tuple[tuple[Affine, Affine], ...]

    @classmethod
    def parse(cls, domain: str, formula: str) -> "Row":
        coords = tuple(Affine.parse(c) for c in formula.strip("() ").split(","))
        return cls(domain, coords, _parse_domain(domain))

    def ts(self, n: int) -> list[int]:
        return domain_values(self.domain, n)

    def evaluate(self, t: int, n: int) -> tuple[int, ...]:
        return tuple(f(t, n) for f in self.formula)

    def formula_text(self) -> str:
        return "(" + ", ".join(str(f) for f in self.formula) + ")"


@dataclass(frozen=True)
class CodeTable:
    """One published table: the codes of one item class for one parity of n.

    ``item_class`` is a vertex role (``"P"``...) for vertex tables, or one of
    ``"pp"``, ``"pq"``, ``"qr"``, ``"rs"``, ``"sr"`` for edge tables.
    ``basis_role`` is the role named in the table header.
    """

    table_id: str
    claim: str
    kind: str
    parity: str
    item_class: str
    basis_role: str
    rows: tuple[Row, ...]

    def applies_to(self, n: int) -> bool:
        return (n % 2 == 0) == (self.parity == "even")


def _table(table_id, claim, kind, parity, item_class, basis_role, rows) -> CodeTable:
    return CodeTable(table_id, claim, kind, parity, item_class, basis_role,
                     tuple(Row.parse(dom, f) for dom, f in rows))


def _plus_one(table_id: str, source: CodeTable, item_class: str) -> CodeTable:
    """Codes of the q layer: the p codes with every coordinate raised by one."""
    rows = tuple(Row(r.domain_text, tuple(c.shifted(1) for c in r.formula), r.domain) for r in source.rows)
    return CodeTable(table_id, source.claim, source.kind, source.parity, item_class, source.basis_role, rows)


# Vertex codes of the chorded ladder for Y = {p_2, p_{h+1}, p_n}.
_DELTA_P_EVEN = _table("delta-vertex-even-p", "T5", "vertex", "even", "P", "P", [
    ("1", "(1, h, 1)"),
    ("2..h", "(t-2, h-t+1, t)"),
    ("h+1", "(t-2, h-t+1, 2h-t)"),
    ("h+2..2h", "(2h-t+2, t-h-1, 2h-t)"),
])
_DELTA_R_EVEN = _table("delta-vertex-even-r", "T5", "vertex", "even", "R", "P", [
    ("1", "(2, h+1, 3)"),
    ("2..h-1", "(t, h-t+2, t+2)"),
    ("h", "(h, 2, h+1)"),
    ("h+1", "(h+1, 2, h)"),
    ("h+2..2h-1", "(2h-t+3, t-h+1, 2h-t+1)"),
    ("2h", "(2h-t+3, t-h+1, 2)"),
])
_DELTA_S_EVEN = _table("delta-vertex-even-s", "T5", "vertex", "even", "S", "P", [
    ("1", "(3, h+1, 4)"),
    ("2..h-1", "(t+1, h-t+2, t+3)"),
    ("h", "(h+1, 3, h+1)"),
    ("h+1..2h-2", "(2h-t+3, t-h+2, 2h-t+1)"),
    ("2h-1..2h", "(2h-t+3, t-h+2, 3)"),
])
_DELTA_P_ODD = _table("delta-vertex-odd-p", "T5", "vertex", "odd", "P", "P", [
    ("1", "(1, h, 1)"),
    ("2..h", "(t-2, h-t+1, t)"),
    ("h+1", "(t-2, h-t+1, 2h-t+1)"),
    ("h+2", "(h, t-h-1, 2h-t+1)"),
    ("h+3..2h+1", "(2h-t+3, t-h-1, 2h-t+1)"),
])
_DELTA_R_ODD = _table("delta-vertex-odd-r", "T5", "vertex", "odd", "R", "P", [
    ("1", "(2, h+1, 3)"),
    ("2..h", "(t, h-t+2, t+2)"),
    ("h+1", "(h+1, 2, h+1)"),
    ("h+2..2h", "(2h-t+4, t-h+1, 2h-t+2)"),
    ("2h+1", "(2h-t+4, t-h+1, 2)"),
])
_DELTA_S_ODD = _table("delta-vertex-odd-s", "T5", "vertex", "odd", "S", "P", [
    ("1", "(3, h+1, 4)"),
    ("2..h-1", "(t+1, h-t+2, t+3)"),
    ("h", "(h+1, 3, h+2)"),
    ("h+1", "(h+2, 3, h+1)"),
    ("h+2..2h-1", "(2h-t+4, t-h+2, 2h-t+2)"),
    ("2h", "(2h-t+4, t-h+2, 3)"),
    ("2h+1", "(2h-t+4, h+2, 3)"),
])

VERTEX_TABLES: tuple[CodeTable, ...] = (
    _DELTA_P_EVEN,
    _plus_one("delta-vertex-even-q", _DELTA_P_EVEN, "Q"),
    _DELTA_R_EVEN,
    _DELTA_S_EVEN,
    _DELTA_P_ODD,
    _plus_one("delta-vertex-odd-q", _DELTA_P_ODD, "Q"),
    _DELTA_R_ODD,
    _DELTA_S_ODD,
)

# Edge codes of the ladder. The pp and pq tables are headed by
# Y_E = {s_2, s_{h+1}, s_n}; the qr, rs and sr tables by {r_2, r_{h+1}, r_n}.
EDGE_TABLES: tuple[CodeTable, ...] = (
    _table("gamma-edge-even-pp", "T7", "edge", "even", "pp", "S", [
        ("1..2", "(3, h-t+3, t+2)"),
        ("3..h", "(t, h-t+3, t+2)"),
        ("h+1", "(t, 3, 2h-t+2)"),
        ("h+2..2h-1", "(2h-t+4, t-h+1, 2h-t+2)"),
        ("2h", "(2h-t+4, t-h+1, 3)"),
    ]),
    _table("gamma-edge-even-pq", "T7", "edge", "even", "pq", "S", [
        ("1", "(4, h+2, 2)"),
        ("2..3", "(2, h-t+4, t+2)"),
        ("4..h", "(t, h-t+4, t+2)"),
        ("h+1..h+2", "(t, 2, 2h-t+3)"),
        ("h+3..2h-1", "(2h-t+5, t-h+1, 2h-t+3)"),
        ("2h", "(2h-t+5, t-h+1, 2)"),
    ]),
    _table("gamma-edge-even-qr", "T7", "edge", "even", "qr", "R", [
        ("1", "(3, h+3, 1)"),
        ("2", "(1, h-t+5, 3)"),
        ("3", "(1, h-t+5, 5)"),
        ("4", "(3, h-t+5, t+3)"),
        ("5", "(5, h-t+5, t+3)"),
        ("6..h-2", "(t+1, h-t+5, t+3)"),
        ("h-1", "(t+1, 5, t+3)"),
        ("h", "(t+1, 3, t+3)"),
        ("h+1,h+2", "(t+1, 1, 2h-t+4)"),
        ("h+3", "(n-t+6, 3, n-t+4)"),
        ("h+4", "(n-t+6, 5, n-t+4)"),
        ("h+5..n-3", "(n-t+6, t-h+2, n-t+4)"),
        ("n-2", "(n-t+6, t-h+2, 5)"),
        ("n-1", "(n-t+6, t-h+2, 3)"),
        ("n", "(5, t-h+2, 1)"),
    ]),
    _table("gamma-edge-even-rs", "T7", "edge", "even", "rs", "R", [
        ("1", "(2, h+4, 1)"),
        ("2", "(0, h-t+6, 3)"),
        ("3", "(1, h-t+6, 5)"),
        ("4", "(3, h-t+6, 7)"),
        ("5", "(5, h-t+6, t+4)"),
        ("6", "(7, h-t+6, t+4)"),
        ("7..h-4", "(t+2, h-t+6, t+4)"),
        ("h-3", "(t+2, 8, t+4)"),
        ("h-2", "(t+2, 6, t+4)"),
        ("h-1", "(t+2, 4, t+4)"),
        ("h", "(t+2, 2, t+4)"),
        ("h+1", "(t+2, 0, n-t+5)"),
        ("h+2", "(t+2, 1, n-t+5)"),
        ("h+3", "(n-t+7, 3, n-t+5)"),
        ("h+4", "(n-t+7, 5, n-t+5)"),
        ("h+5", "(n-t+7, 7, n-t+5)"),
        ("h+6..n-5", "(n-t+7, t-h+3, n-t+5)"),
        ("n-4", "(n-t+7, t-h+3, 8)"),
        ("n-3", "(n-t+7, t-h+3, 6)"),
        ("n-2", "(8, t-h+3, 4)"),
        ("n-1", "(6, t-h+3, 2)"),
        ("n", "(4, t-h+3, 0)"),
    ]),
    _table("gamma-edge-even-sr", "T7", "edge", "even", "sr", "R", [
        ("1", "(1, h-t+5, 2)"),
        ("2", "(0, h-t+5, 4)"),
        ("3", "(2, h-t+5, 6)"),
        ("4", "(4, h-t+5, 8)"),
        ("5", "(6, h-t+5, t+5)"),
        ("6", "(8, h-t+5, t+5)"),
        ("7..h-4", "(t+3, h-t+5, t+5)"),
        ("h-3", "(t+3, 7, t+5)"),
        ("h-2", "(t+3, 5, t+5)"),
        ("h-1", "(t+3, 3, t+5)"),
        ("h", "(t+3, 1, n-t+4)"),
        ("h+1", "(t+3, 0, n-t+4)"),
        ("h+2", "(n-t+6, 2, n-t+4)"),
        ("h+3", "(n-t+6, 4, n-t+4)"),
        ("h+4", "(n-t+6, 6, n-t+4)"),
        ("h+5", "(n-t+6, 8, n-t+4)"),
        ("h+6..n-5", "(n-t+6, t-h+4, n-t+4)"),
        ("n-4", "(n-t+6, t-h+4, 7)"),
        ("n-3", "(n-t+6, t-h+4, 5)"),
        ("n-2", "(7, t-h+4, 3)"),
        ("n-1", "(5, t-h+4, 1)"),
        ("n", "(3, t-h+4, 0)"),
    ]),
    _table("gamma-edge-odd-pp", "T7", "edge", "odd", "pp", "S", [
        ("1..2", "(3, h-t+3, t+2)"),
        ("3..h", "(t, h-t+3, t+2)"),
        ("h+1", "(t, 3, 2h-t+3)"),
        ("h+2", "(t, t-h+1, 2h-t+3)"),
        ("h+3..2h", "(2h-t+5, t-h+1, 2h-t+3)"),
        ("2h+1", "(2h-t+5, t-h+1, 3)"),
    ]),
    _table("gamma-edge-odd-pq", "T7", "edge", "odd", "pq", "S", [
        ("1", "(4, h-t+4, 2)"),
        ("2..3", "(2, h-t+4, t+2)"),
        ("4..h", "(t, h-t+4, t+2)"),
        ("h+1..h+2", "(t, 2, 2h-t+4)"),
        ("h+3..2h", "(2h-t+6, t-h+2, 2h-t+4)"),
        ("2h+1", "(2h-t+6, t-h+2, 2)"),
    ]),
    _table("gamma-edge-odd-qr", "T7", "edge", "odd", "qr", "R", [
        ("1", "(3, h-t+5, 1)"),
        ("2", "(1, h-t+5, 3)"),
        ("3", "(1, h-t+5, 5)"),
        ("4", "(3, h-t+5, t+3)"),
        ("5", "(5, h-t+5, t+3)"),
        ("6..h-2", "(t+1, h-t+5, t+3)"),
        ("h-1", "(t+1, 5, t+3)"),
        ("h", "(t+1, 3, t+3)"),
        ("h+1", "(t+1, 1, 2h-t+5)"),
        ("h+2", "(t+1, 1, 2h-t+5)"),
        ("h+3", "(2h-t+7, 3, 2h-t+5)"),
        ("h+4", "(2h-t+7, 5, 2h-t+5)"),
        ("h+5..2h-2", "(2h-t+7, t-h+2, 2h-t+5)"),
        ("n-2", "(2h-t+7, t-h+2, 5)"),
        ("n-1", "(2h-t+7, t-h+2, 3)"),
        ("n", "(5, t-h+2, 1)"),
    ]),
    _table("gamma-edge-odd-rs", "T7", "edge", "odd", "rs", "R", [
        ("1", "(2, h-t+6, 1)"),
        ("2", "(0, h-t+6, 3)"),
        ("3", "(1, h-t+6, 5)"),
        ("4", "(3, h-t+6, 7)"),
        ("5", "(5, h-t+6, t+4)"),
        ("6", "(7, h-t+6, t+4)"),
        ("7..h-4", "(t+2, h-t+6, t+4)"),
        ("h-3", "(t+2, 8, t+4)"),
        ("h-2", "(t+2, 6, t+4)"),
        ("h-1", "(t+2, 4, t+4)"),
        ("h", "(t+2, 2, t+4)"),
        ("h+1", "(t+2, 0, 2h-t+6)"),
        ("h+2", "(t+2, 1, 2h-t+6)"),
        ("h+3", "(2h-t+8, 3, 2h-t+6)"),
        ("h+4", "(2h-t+8, 5, 2h-t+6)"),
        ("h+5", "(2h-t+8, 7, 2h-t+6)"),
        ("h+6..2h-4", "(2h-t+8, t-h+3, 2h-t+6)"),
        ("2h-3", "(2h-t+8, t-h+3, 8)"),
        ("n-3", "(2h-t+8, t-h+3, 6)"),
        ("n-2", "(8, t-h+3, 4)"),
        ("n-1", "(6, t-h+3, 2)"),
        ("n", "(4, t-h+3, 0)"),
    ]),
    _table("gamma-edge-odd-sr", "T7", "edge", "odd", "sr", "R", [
        ("1", "(1, h-t+5, 2)"),
        ("2", "(0, h-t+5, 4)"),
        ("3", "(2, h-t+5, 6)"),
        ("4", "(4, h-t+5, 8)"),
        ("5", "(6, h-t+5, t+5)"),
        ("6", "(8, h-t+5, t+5)"),
        ("7..h-4", "(t+3, h-t+5, t+5)"),
        ("h-3", "(t+3, 7, t+5)"),
        ("h-2", "(t+3, 5, t+5)"),
        ("h-1", "(t+3, 3, t+5)"),
        ("h", "(t+3, 1, t+5)"),
        ("h+1", "(t+3, 0, 2h-t+5)"),
        ("h+2", "(t+3, 2, 2h-t+5)"),
        ("h+3", "(2h-t+7, 4, 2h-t+5)"),
        ("h+4", "(2h-t+7, 6, 2h-t+5)"),
        ("h+5", "(2h-t+7, 8, 2h-t+5)"),
        ("h+6..2h-4", "(2h-t+7, t-h+4, 2h-t+5)"),
        ("2h-3", "(2h-t+7, t-h+4, 7)"),
        ("n-3", "(2h-t+7, t-h+4, 5)"),
        ("n-2", "(7, t-h+4, 3)"),
        ("n-1", "(5, t-h+4, 1)"),
        ("n", "(3, t-h+4, 0)"),
    ]),
)

EDGE_CLASSES = ("pp", "pq", "qr", "rs", "sr")
VERTEX_CLASSES = ("P", "Q", "R", "S")


@dataclass(frozen=True)
class TableEntry:
    table_id: str
    row_index: int
    domain_text: str
    formula_text: str
    t: int
    code: tuple[int, ...]


@dataclass
class ClosedForm:
    """Evaluated tables for one n: entries per item class plus coverage faults.

    ``gaps`` lists ``(class, t)`` covered by no row; ``overlaps`` lists
    ``(class, t, row indices)`` covered by more than one row.
    """

    n: int
    entries: dict[str, list[TableEntry]]
    gaps: list[tuple[str, int]]
    overlaps: list[tuple[str, int, tuple[int, ...]]]
    out_of_range: list[TableEntry]

    def codes(self, item_class: str) -> dict[int, tuple[int, ...]]:
        """``t -> code`` using the first matching row for each t."""
        out: dict[int, tuple[int, ...]] = {}
        for e in self.entries[item_class]:
            out.setdefault(e.t, e.code)
        return out

    def covered(self, item_class: str) -> set[int]:
        return {e.t for e in self.entries[item_class]}


def _evaluate(tables: tuple[CodeTable, ...], classes: tuple[str, ...], n: int) -> ClosedForm:
    if n < 6:
        raise ValueError(f"closed-form tables need n >= 6, got {n}")
    entries: dict[str, list[TableEntry]] = {c: [] for c in classes}
    gaps, overlaps, out_of_range = [], [], []
    for table in tables:
        if not table.applies_to(n):
            continue
        hits: dict[int, list[int]] = {}
        for i, row in enumerate(table.rows):
            for t in row.ts(n):
                entry = TableEntry(table.table_id, i, row.domain_text, row.formula_text(), t, row.evaluate(t, n))
                if 1 <= t <= n:
                    entries[table.item_class].append(entry)
                    hits.setdefault(t, []).append(i)
                else:
                    out_of_range.append(entry)
        for t in range(1, n + 1):
            if t not in hits:
                gaps.append((table.item_class, t))
            elif len(hits[t]) > 1:
                overlaps.append((table.item_class, t, tuple(hits[t])))
    for c in classes:
        entries[c].sort(key=lambda e: (e.t, e.row_index))
    return ClosedForm(n, entries, gaps, overlaps, out_of_range)


def closed_form_vertex_codes(n: int) -> ClosedForm:
    """Chorded-ladder vertex codes for Y = {p_2, p_{h+1}, p_n}, parity chosen by n."""
    return _evaluate(VERTEX_TABLES, VERTEX_CLASSES, n)


def closed_form_edge_codes(n: int) -> ClosedForm:
    """Ladder edge codes for the five edge classes, parity chosen by n."""
    return _evaluate(EDGE_TABLES, EDGE_CLASSES, n)
