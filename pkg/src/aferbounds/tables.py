"""Catalogue of the binary AFER-optimal code families for k = 3, 4, 5.

Each family is ``[v_k * s + r, k, 2^(k-1) * s + offset; e]_2`` built from a
construction string in the grammar of :mod:`aferbounds.constructions`.
``s_min`` is 1 for families that only exist with at least one full Simplex
copy and 0 otherwise.  ``fixed`` rows are single codes.

``case`` is the index (1-5) of the bound that certifies the row.  For the
``IV`` rows it is None and ``published_lower`` carries the published lower bound
instead.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bounds_core import v
from .constructions import construct
from .linear_codes import GenMatrix, weight_distribution
from .projective_geometry import PointMultiset, to_generator_matrix


@dataclass(frozen=True)
class TableRow:
    table: str
    k: int
    r: int
    offset: int
    e: int
    construction: str
    s_min: int = 0
    case: int | None = None
    fixed: bool = False
    published_lower: int | None = None

    def length(self, s: int) -> int:
        return self.r if self.fixed else v(self.k, 2) * s + self.r

    def distance(self, s: int) -> int:
        return self.offset if self.fixed else 2 ** (self.k - 1) * s + self.offset

    def instances(self, s_max: int) -> list[int]:
        return [0] if self.fixed else list(range(self.s_min, s_max + 1))

    def multiset(self, s: int) -> PointMultiset:
        if s < self.s_min:
            raise ValueError(f"row {self.label} needs s >= {self.s_min}")
        return construct(self.construction, s=s, k=self.k, q=2)

    def generator(self, s: int) -> GenMatrix:
        return to_generator_matrix(self.multiset(s))

    def params(self, s: int) -> tuple[int, int, int, int]:
        return self.length(s), self.k, self.distance(s), self.e

    @property
    def label(self) -> str:
        if self.fixed:
            return f"[{self.r},{self.k},{self.offset};{self.e}]"
        var = "s1" if self.s_min else "s2"
        return f"[{v(self.k, 2)}{var}+{self.r},{self.k},{2 ** (self.k - 1)}{var}+{self.offset};{self.e}]"


def _rows(table, k, spec):
    out = []
    for item in spec:
        r, s_min, off, e, cons, case = item[:6]
        extra = item[6] if len(item) > 6 else {}
        out.append(TableRow(table, k, r, off, e, cons, s_min, case, **extra))
    return out


TABLE_I = _rows("I", 3, [
    (0, 1, 0, 7, "s*P[3]", 1),
    (1, 1, 0, 3, "s*P[3] + P{I1}", 1),
    (2, 1, 0, 1, "s*P[3] + P{I2}", 1),
    (3, 0, 1, 3, "s*P[3] + P{I3}", 1),
    (4, 0, 2, 6, "(s+1)*P[3] - P[2]", 3),
    (5, 0, 2, 2, "(s+1)*P[3] - P{I2}", 2),
    (6, 0, 3, 4, "(s+1)*P[3] - P{I1}", 1),
])

TABLE_II = _rows("II", 4, [
    (0, 1, 0, 15, "s*P[4]", 1),
    (1, 1, 0, 7, "s*P[4] + P{I1}", 1),
    (2, 1, 0, 3, "s*P[4] + P{I2}", 1),
    (3, 1, 0, 1, "s*P[4] + P{I3}", 1),
    (4, 0, 1, 4, "s*P[4] + P{I4}", 1),
    (5, 0, 2, 10, "s*P[4] + P{T4}", 3),
    (6, 0, 2, 3, "s*P[4] + P{T4'}", 2),
    (7, 0, 3, 7, "(s+1)*P[4] - (P[3] + P{4})", 1),
    (8, 0, 4, 14, "(s+1)*P[4] - P[3]", 3),
    (9, 0, 4, 6, "(s+1)*P[4] - (P[3] - P{I1})", 2),
    (10, 0, 4, 2, "(s+1)*P[4] - (P[3] - P{I2})", 2),
    (11, 0, 5, 6, "(s+1)*P[4] - (P[3] - P{I3})", 5),
    (12, 0, 6, 12, "(s+1)*P[4] - P[2]", 4),
    (13, 0, 6, 4, "(s+1)*P[4] - P{I2}", 2),
    (14, 0, 7, 8, "(s+1)*P[4] - P{I1}", 1),
])

_FIXED = {"fixed": True}

TABLE_III = _rows("III", 5, [
    (8, 0, 2, 1, "G{8_5_2}", 1, _FIXED),
    (12, 0, 4, 1, "G{12_5_4}", 1, _FIXED),
    (9, 0, 3, 4, "G{9_5_3}", 1, _FIXED),
    (0, 1, 0, 31, "s*P[5]", 1),
    (1, 1, 0, 15, "s*P[5] + P{I1}", 1),
    (2, 1, 0, 7, "s*P[5] + P{I2}", 1),
    (3, 1, 0, 3, "s*P[5] + P{I3}", 1),
    (4, 1, 0, 1, "s*P[5] + P{I4}", 1),
    (5, 0, 1, 5, "s*P[5] + P{I5}", 1),
    (6, 0, 2, 15, "s*P[5] + P{T5}", 3),
    (10, 0, 4, 10, "s*P[5] + G{10_5_4}", 2),
    (11, 1, 4, 3, "(s-1)*P[5] + G{42_5_20}", 2),
    (14, 0, 6, 7, "s*P[5] + G{14_5_6}", 2),
    (15, 0, 7, 15, "(s+1)*P[5] - (P[4] + P{5})", 1),
    (16, 0, 8, 30, "(s+1)*P[5] - P[4]", 3),
    (17, 0, 8, 14, "(s+1)*P[5] - (P[4] - P{I1})", 2),
    (18, 0, 8, 6, "(s+1)*P[5] - (P[4] - P{I2})", 2),
    (19, 0, 8, 2, "(s+1)*P[5] - (P[4] - P{I3})", 2),
    (22, 0, 10, 6, "(s+1)*P[5] - (P[4] - P{T4'})", 2),
    (24, 0, 12, 28, "(s+1)*P[5] - P[3]", 4),
    (25, 0, 12, 12, "(s+1)*P[5] - (P[3] - P{I1})", 2),
    (26, 0, 12, 4, "(s+1)*P[5] - (P[3] - P{I2})", 2),
    (27, 0, 13, 12, "(s+1)*P[5] - (P[2] + P{3})", 4),
    (28, 0, 14, 24, "(s+1)*P[5] - P[2]", 4),
    (29, 0, 14, 8, "(s+1)*P[5] - P{I2}", 2),
    (30, 0, 15, 16, "(s+1)*P[5] - P{I1}", 1),
])


def _iv(r, s_min, off, e, cons, lower, fixed=False):
    return (r, s_min, off, e, cons, None, {"published_lower": lower, "fixed": fixed})


TABLE_IV = _rows("IV", 5, [
    _iv(11, 0, 4, 4, "G{11_5_4}", 4, fixed=True),
    _iv(13, 0, 5, 3, "G{13_5_5}", None, fixed=True),
    _iv(7, 0, 2, 5, "s*P[5] + G{7_5_2}", 4),
    _iv(8, 1, 3, 13, "(s-1)*P[5] + G{39_5_19}", 11),
    _iv(9, 1, 4, 27, "(s+1)*P[5] - (P[4] + P[3..5])", 25),
    _iv(12, 1, 5, 11, "(s-1)*P[5] + G{43_5_21}", 9),
    _iv(13, 1, 6, 23, "(s+1)*P[5] - (P[4] + P[4..5])", 21),
    _iv(20, 0, 9, 8, "(s+1)*P[5] - (P[4] - P{I4})", 7),
    _iv(21, 0, 10, 20, "(s+1)*P[5] - (P[4] - P{T4})", 18),
    _iv(23, 0, 11, 14, "(s+1)*P[5] - (P[3] + P{4})", 13),
])

TABLES = {"I": TABLE_I, "II": TABLE_II, "III": TABLE_III, "IV": TABLE_IV}
TABLE_BY_K = {3: TABLE_I, 4: TABLE_II, 5: TABLE_III}

# s ranges used when reproducing each table
DEFAULT_S_MAX = {"I": 3, "II": 3, "III": 2, "IV": 1}


def all_rows(tables=("I", "II", "III", "IV")) -> list[TableRow]:
    return [row for t in tables for row in TABLES[t]]


def instances(tables=("I", "II", "III", "IV"), s_max: dict | None = None):
    """Yield ``(row, s)`` over the requested tables."""
    lim = dict(DEFAULT_S_MAX, **(s_max or {}))
    for t in tables:
        for row in TABLES[t]:
            for s in row.instances(lim[t]):
                yield row, s


def verify_instance(row: TableRow, s: int) -> tuple[int, int, int, int]:
    """Enumerate the constructed code; returns the observed (n, k, d, e)."""
    G = row.generator(s)
    wd = weight_distribution(G)
    return G.n, G.k, wd.d, wd.e
