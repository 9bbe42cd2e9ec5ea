"""Parameter database of optimal distances and error-coefficient bounds.

Entries are seeded exactly (closed-form two-dimensional codes, the binary
k <= 5 tables) and extended dimension by dimension with the combined bound.
Lookups distinguish "unresolved" (None) from a genuine zero.
"""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

from .bound_engine import DEFAULT_REGISTRY, RankCapRegistry, combined_bound
from .bounds_core import (
    adic_anti_expansion,
    griesmer_length,
    griesmer_max_distance,
    two_dim_optimal,
)
from .linear_codes import ENUMERATION_CAP, weight_distribution
from .projective_geometry import PointMultiset, identity_points, simplex, subspace_points, to_generator_matrix

SCHEMA = "aferbounds.codedb"
SCHEMA_VERSION = 1
D_KINDS = ("griesmer_attained", "exact_table", "conditional")
CERTIFIED = ("griesmer_attained", "exact_table")


@dataclass(frozen=True)
class DbEntry:
    n: int
    k: int
    q: int
    d_value: int
    d_kind: str
    e_lower: int
    e_exact: int | None = None
    provenance: str = ""

    def __post_init__(self):
        if self.d_kind not in D_KINDS:
            raise ValueError(f"unknown d_kind {self.d_kind!r}")
        if self.e_lower < self.q - 1 or self.e_lower % (self.q - 1):
            raise ValueError(f"e_lower={self.e_lower} is not a positive multiple of q-1")
        if self.e_exact is not None:
            if self.e_exact % (self.q - 1):
                raise ValueError(f"e_exact={self.e_exact} not divisible by q-1")
            if self.e_lower > self.e_exact:
                raise ValueError(f"e_lower={self.e_lower} exceeds e_exact={self.e_exact} at {self.key}")

    @property
    def key(self) -> tuple[int, int, int]:
        return self.n, self.k, self.q

    @property
    def certified(self) -> bool:
        return self.d_kind in CERTIFIED

    @property
    def e_best(self) -> int:
        return self.e_exact if self.e_exact is not None else self.e_lower

    def to_json(self) -> str:
        rec = {
            "n": self.n, "k": self.k, "q": self.q, "d": self.d_value, "d_kind": self.d_kind,
            "e_lower": self.e_lower, "e_exact": self.e_exact, "prov": self.provenance,
        }
        return json.dumps(rec)

    @classmethod
    def from_json(cls, line: str) -> DbEntry:
        r = json.loads(line)
        return cls(r["n"], r["k"], r["q"], r["d"], r["d_kind"], r["e_lower"], r["e_exact"], r["prov"])


class DatabaseError(RuntimeError):
    pass


@dataclass
class BuildReport:
    k: int
    q: int
    updated: int
    unresolved: list[int]
    conditional: list[int]


class CodeDB:
    """In-memory database keyed by (k, q) then n."""

    def __init__(self):
        self._data: dict[tuple[int, int], dict[int, DbEntry]] = {}

    # --- storage -----------------------------------------------------

    def insert(self, entry: DbEntry, overwrite: bool = False) -> DbEntry:
        bucket = self._data.setdefault((entry.k, entry.q), {})
        old = bucket.get(entry.n)
        if old is not None and not overwrite:
            if (old.d_value, old.e_exact) != (entry.d_value, entry.e_exact):
                raise DatabaseError(f"conflicting entries for {entry.key}: {old} vs {entry}")
            return old
        bucket[entry.n] = entry
        return entry

    def entries(self, k: int | None = None, q: int | None = None) -> list[DbEntry]:
        out = []
        for (kk, qq), bucket in sorted(self._data.items()):
            if (k is None or kk == k) and (q is None or qq == q):
                out.extend(bucket[n] for n in sorted(bucket))
        return out

    def dimensions(self) -> list[tuple[int, int]]:
        return sorted(self._data)

    def __len__(self):
        return sum(len(b) for b in self._data.values())

    # --- lookups -----------------------------------------------------

    def query(self, n: int, k: int, q: int) -> DbEntry | None:
        if n < 1 or k < 1 or n < k:
            return None
        if k == 1:
            # repetition code
            return DbEntry(n, 1, q, n, "exact_table", q - 1, q - 1, "analytic:k=1")
        return self._data.get((k, q), {}).get(n)

    def _certified(self, n, k, q) -> DbEntry | None:
        e = self.query(n, k, q)
        return e if e is not None and e.certified else None

    def distance(self, n: int, k: int, q: int) -> int | None:
        e = self._certified(n, k, q)
        return None if e is None else e.d_value

    def is_exact(self, n: int, k: int, q: int) -> bool:
        e = self._certified(n, k, q)
        return e is not None and e.e_exact is not None

    def e_optimal(self, n: int, k: int, q: int) -> int | None:
        e = self._certified(n, k, q)
        return None if e is None else e.e_best

    def e_at_distance(self, n: int, k: int, d: int, q: int) -> int | None:
        e = self._certified(n, k, q)
        if e is None:
            return None
        if d < e.d_value:
            return 0
        if d == e.d_value:
            return e.e_best
        return None

    def e_floor(self, n: int, k: int, d: int, q: int) -> int | None:
        e = self._certified(n, k, q)
        if e is None or d > e.d_value:
            return None
        return e.e_best if d == e.d_value else q - 1

    # --- seeding -----------------------------------------------------

    def seed_two_dim(self, q: int, n_max: int) -> int:
        count = 0
        for n in range(2, n_max + 1):
            ans = two_dim_optimal(n, q)
            self.insert(DbEntry(n, 2, q, ans.d, "exact_table", ans.e, ans.e, "two_dim:closed_form"))
            count += 1
        return count

    def seed_binary_tables(self, S: int = 3, verify: bool = True, n_max: int | None = None) -> int:
        """Insert every table row at s <= S (and, with ``n_max``, every length up to n_max)."""
        from .tables import all_rows

        count = 0
        for row in all_rows():
            for s in _row_instances(row, S, n_max):
                n, k, d, e = row.params(s)
                if n < k:
                    continue
                if verify:
                    G = row.generator(s)
                    wd = weight_distribution(G)
                    if (G.n, G.k, wd.d, wd.e) != (n, k, d, e):
                        raise DatabaseError(
                            f"table {row.table} row {row.label} at s={s}: "
                            f"enumerated {(G.n, G.k, wd.d, wd.e)}, expected {(n, k, d, e)}"
                        )
                prov = f"table:{row.table}:{row.label}:s={s}"
                self.insert(DbEntry(n, k, 2, d, "exact_table", 1, e, prov))
                count += 1
        return count

    def direct_sum_certifies(self, n: int, k: int, d: int, q: int) -> bool:
        """True if [n-m, k-1] (certified) plus an [m, 1, m] repetition code reaches distance d."""
        for m in range(d, n - k + 2):
            d1 = self.distance(n - m, k - 1, q)
            if d1 is not None and d1 >= d:
                return True
        return False

    # --- iteration ---------------------------------------------------

    def build_dimension(
        self, k: int, q: int, n_max: int, registry: RankCapRegistry = DEFAULT_REGISTRY,
        certify: bool = True,
    ) -> BuildReport:
        """Raise e_lower for every n in [k, n_max] with the combined bound."""
        if k < 3:
            raise ValueError("build_dimension starts at k = 3; seed k = 2 with seed_two_dim")
        updated, unresolved, conditional = 0, [], []
        new_entries = []
        for n in range(griesmer_length(k, 1, q), n_max + 1):
            old = self.query(n, k, q)
            wit = None
            if old is not None and old.certified:
                d, kind, e_exact, prov0 = old.d_value, old.d_kind, old.e_exact, old.provenance
            else:
                d = griesmer_max_distance(n, k, q)
                kind, e_exact, prov0 = "conditional", None, ""
                if certify:
                    wit = ss_witness(n, k, d, q)
                    if wit is not None:
                        kind, prov0 = "griesmer_attained", "witness:SS"
                    elif self.direct_sum_certifies(n, k, d, q):
                        kind, prov0 = "griesmer_attained", "witness:direct_sum"
            res = combined_bound(n, k, q, self, registry, d=d)
            win = res.winner
            if win is None:
                value, tag = q - 1, "floor"
                unresolved.append(n)
            else:
                value, tag = win.value, f"bound:{win.bound_id}"
            if kind == "conditional":
                conditional.append(n)
            e_lower = max(value, old.e_lower if old is not None else q - 1)
            upper = e_exact if e_exact is not None else wit
            if upper is not None and e_lower > upper:
                raise DatabaseError(f"lower bound {e_lower} exceeds a known code with e={upper} at ({n},{k},{q})")
            if wit is not None and wit == e_lower:
                # the witness attains the lower bound, so the value is exact
                e_exact = wit
            prov = ";".join(p for p in (prov0, tag) if p)
            entry = DbEntry(n, k, q, d, kind, e_lower, e_exact, prov)
            if old is None or entry != old:
                updated += 1
            new_entries.append(entry)
        # publish the new dimension only after every length has been evaluated
        for entry in new_entries:
            self.insert(entry, overwrite=True)
        return BuildReport(k, q, updated, unresolved, conditional)

    # --- persistence -------------------------------------------------

    @staticmethod
    def filename(k: int, q: int) -> str:
        return f"codedb_k{k}_q{q}.jsonl"

    def dump_jsonl(self, k: int, q: int) -> str:
        header = json.dumps({"schema": SCHEMA, "version": SCHEMA_VERSION, "k": k, "q": q})
        lines = [header] + [e.to_json() for e in self.entries(k, q)]
        return "\n".join(lines) + "\n"

    def save(self, directory) -> list[Path]:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        written = []
        for k, q in self.dimensions():
            written.append(_atomic_write(directory / self.filename(k, q), self.dump_jsonl(k, q)))
        written.append(_atomic_write(directory / "codedb.csv", self.to_csv()))
        return written

    @classmethod
    def load(cls, directory) -> CodeDB:
        db = cls()
        for path in sorted(Path(directory).glob("codedb_k*_q*.jsonl")):
            lines = path.read_text().splitlines()
            if not lines:
                continue
            head = json.loads(lines[0])
            if head.get("schema") != SCHEMA or head.get("version") != SCHEMA_VERSION:
                raise DatabaseError(f"{path}: unsupported schema header {head}")
            for line in lines[1:]:
                if line.strip():
                    db.insert(DbEntry.from_json(line), overwrite=True)
        return db

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "k", "q", "d", "e_lower", "e_exact", "provenance"])
        for e in self.entries():
            w.writerow([e.n, e.k, e.q, e.d_value, e.e_lower, "" if e.e_exact is None else e.e_exact, e.provenance])
        return buf.getvalue()


def _row_instances(row, S: int, n_max: int | None):
    if row.fixed:
        yield 0
        return
    s = row.s_min
    while s <= S or (n_max is not None and row.length(s) <= n_max):
        yield s
        s += 1


def _atomic_write(path: Path, text: str) -> Path:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


# --- Solomon-Stiffler witnesses ------------------------------------------


def ss_witness_multiset(n: int, k: int, d: int, q: int) -> PointMultiset | None:
    """A column multiset for an [n, k, >= d]_q code built by the SS recipe, if one fits.

    Writes d = s q^(k-1) - sum eps_i q^i, removes eps_i subspaces of
    dimension i+1 from s copies of PG(k-1, q) (coordinate blocks packed
    cyclically so no point is removed more than s times), then pads with
    unit vectors up to length n.
    """
    if k < 2 or n < griesmer_length(k, d, q):
        return None
    exp = adic_anti_expansion(d, k, q)
    s, eps = exp.s, exp.lam
    if sum(c * (i + 1) for i, c in enumerate(eps)) > s * k:
        return None
    M = simplex(k, q, s)
    start = 0
    for i in range(k - 2, -1, -1):
        for _ in range(eps[i]):
            block = [(start + j) % k + 1 for j in range(i + 1)]
            start = (start + i + 1) % k
            try:
                M = M - subspace_points(block, k, q)
            except ValueError:
                return None
    pad = n - M.cardinality
    if pad < 0:
        return None
    for j in range(pad):
        M = M + identity_points(1, k, q, coords=[j % k + 1])
    return M


def ss_witness(n: int, k: int, d: int, q: int) -> int | None:
    """A_d of an enumerated SS witness of distance exactly d, or None."""
    if q**k > ENUMERATION_CAP:
        return None
    M = ss_witness_multiset(n, k, d, q)
    if M is None:
        return None
    try:
        G = to_generator_matrix(M)
    except ValueError:
        return None
    wd = weight_distribution(G)
    return wd.e if wd.d == d else None


# --- orchestration -------------------------------------------------------


def build_database(
    k_max: int, q: int, n_max: int, registry: RankCapRegistry = DEFAULT_REGISTRY,
    verify: bool = True, S: int = 3,
) -> tuple[CodeDB, list[BuildReport]]:
    """Seed and iterate dimensions 3..k_max up to length n_max."""
    db = CodeDB()
    db.seed_two_dim(q, max(n_max, 2))
    if q == 2:
        db.seed_binary_tables(S=S, verify=verify, n_max=n_max)
    reports = [db.build_dimension(k, q, n_max, registry) for k in range(3, k_max + 1)]
    return db, reports
