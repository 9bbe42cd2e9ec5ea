"""Command-line interface: bound, construct, verify, table, db, afer.

Exit codes: 0 ok, 1 usage error, 2 verification mismatch, 3 unresolved lookup.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .bound_engine import bound_nonextendable, combined_bound
from .bounds_core import afer_value, griesmer_max_distance
from .code_db import CodeDB, build_database
from .constructions import ConstructionSyntaxError, fixture_names, load_fixture, parse_construction
from .linear_codes import format_matrix, read_matrix, weight_distribution, write_matrix
from .projective_geometry import to_generator_matrix
from .tables import DEFAULT_S_MAX, TABLE_BY_K, TABLES

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_UNRESOLVED = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class CommandReport:
    command: list[str]
    payload: dict
    warnings: list[str] = field(default_factory=list)
    exit_status: int = EXIT_OK
    text: str = ""  # human-readable rendering; not serialized

    def to_dict(self) -> dict:
        out = asdict(self)
        del out["text"]
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, s: str) -> CommandReport:
        return cls(**json.loads(s))


_TAG = re.compile(r"\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*(?:;\s*(\d+)\s*)?\](?:_(\d+))?")


def parse_tag(tag: str) -> dict:
    """``[n,k,d;e]`` or ``[n,k,d;e]_q`` -> dict (e and q optional)."""
    m = _TAG.fullmatch(tag.strip())
    if not m:
        raise UsageError(f"cannot parse parameter tag {tag!r}; expected [n,k,d;e]")
    n, k, d, e, q = m.groups()
    out = {"n": int(n), "k": int(k), "d": int(d)}
    if e is not None:
        out["e"] = int(e)
    if q is not None:
        out["q"] = int(q)
    return out


def _tag(n, k, d, e=None, q=2) -> str:
    body = f"{n},{k},{d}" + ("" if e is None else f";{e}")
    return f"[{body}]" if q == 2 else f"[{body}]_{q}"


# --- bound ----------------------------------------------------------------


def _db_for(args, k: int, q: int, n: int) -> CodeDB:
    if getattr(args, "db_dir", None):
        return CodeDB.load(args.db_dir)
    db, _ = build_database(k, q, n)
    return db


def _fmt_trace(t) -> str:
    if not t.applicable:
        return f"  {t.bound_id} (case {t.case}): n/a  {t.reason}"
    extras = [f"{name}={getattr(t, name)}" for name in ("t", "mu", "sigma", "k2", "rank_cap") if getattr(t, name) is not None]
    line = f"  {t.bound_id} (case {t.case}): {t.value}"
    if extras:
        line += "  " + " ".join(extras)
    if t.delta_notes:
        line += "  [" + "; ".join(t.delta_notes) + "]"
    return line


def cmd_bound(args) -> CommandReport:
    n, k, q = args.n, args.k, args.q
    if k < 3 or n < k:
        raise UsageError("bound needs k >= 3 and n >= k")
    db = _db_for(args, k, q, n)
    cb = combined_bound(n, k, q, db, d=args.d)
    payload = cb.to_dict()
    warnings = []
    if not cb.d_certified:
        warnings.append(f"d={cb.d} is not certified by the database; bounds are conditional on it")
    if q == 2 and cb.d % 2 == 0:
        ne = bound_nonextendable(n, k, cb.d, db)
        payload["nonextendable"] = ne.to_dict()
    w = cb.winner
    lines = [f"{_tag(n, k, cb.d, q=q)}  d {'certified' if cb.d_certified else 'conditional'}"]
    lines += [_fmt_trace(t) for t in cb.traces]
    if "nonextendable" in payload:
        ne = payload["nonextendable"]
        val = ne["value"] if ne["applicable"] else "n/a"
        lines.append(f"  NONEXT (if non-extendable): {val}")
    lines.append(f"combined {cb.value}" + ("" if w is None else f"  ({w.bound_id}, case {w.case})"))
    return CommandReport([], payload, warnings, EXIT_OK, "\n".join(lines))


# --- construct / verify -----------------------------------------------------


def cmd_construct(args) -> CommandReport:
    cons = parse_construction(args.spec)
    M = cons.build(s=args.s, k=args.k, q=args.q)
    G = to_generator_matrix(M)
    wd = weight_distribution(G)
    payload = {"n": G.n, "k": G.k, "d": wd.d, "e": wd.e, "q": G.q, "spec": args.spec, "s": args.s}
    tag = _tag(G.n, G.k, wd.d, wd.e, G.q)
    if args.out:
        write_matrix(G, args.out)
        payload["out"] = str(args.out)
        text = f"{tag} written to {args.out}"
    else:
        text = tag + "\n" + format_matrix(G).rstrip("\n")
    return CommandReport([], payload, [], EXIT_OK, text)


_FIXTURE_NAME = re.compile(r"G_(\d+)_(\d+)_(\d+)\.txt")


def _load_matrix(path: str):
    p = Path(path)
    if p.is_file():
        return read_matrix(p)
    m = _FIXTURE_NAME.fullmatch(p.name)
    if m and p.name in fixture_names():
        return load_fixture(*(int(x) for x in m.groups()))
    raise UsageError(f"no such matrix file: {path}")


def cmd_verify(args) -> CommandReport:
    G = _load_matrix(args.file)
    wd = weight_distribution(G)
    got = {"n": G.n, "k": G.k, "d": wd.d, "e": wd.e, "q": G.q}
    if args.expect:
        expect = parse_tag(args.expect)
    else:
        m = _FIXTURE_NAME.fullmatch(Path(args.file).name)
        expect = dict(zip("nkd", map(int, m.groups()))) if m else {}
    diff = {key: {"expected": val, "found": got[key]} for key, val in expect.items() if got[key] != val}
    status = EXIT_MISMATCH if diff else EXIT_OK
    payload = {"found": got, "expected": expect, "diff": diff, "ok": not diff}
    tag = _tag(G.n, G.k, wd.d, wd.e, G.q)
    text = f"{tag} OK" if not diff else f"{tag} MISMATCH " + ", ".join(
        f"{key}: expected {v['expected']}, found {v['found']}" for key, v in diff.items()
    )
    return CommandReport([], payload, [], status, text)


# --- table ------------------------------------------------------------------


def table_rows(table: str, s_max: int, long: bool = False) -> tuple[list[dict], bool]:
    """Verify and bound every instance; returns (records, all constructions verified)."""
    rows = TABLES[table]
    k = rows[0].k
    inst = [(row, s) for row in rows for s in row.instances(s_max)]
    n_max = max(row.length(s) for row, s in inst)
    db, _ = build_database(k, 2, n_max)
    all_ok = True
    per_row: dict[str, list[dict]] = {}
    for row, s in inst:
        n, kk, d, e = row.params(s)
        gn, gk, gd, ge = _verify_row(row, s)
        verified = (gn, gk, gd, ge) == (n, kk, d, e)
        all_ok &= verified
        cb = combined_bound(n, k, 2, db, d=d)
        w = cb.winner
        per_row.setdefault(row.label, []).append({
            "table": table, "row": row.label, "s": s, "n": n, "k": k, "d": d, "e": e,
            "verified": verified, "bound": cb.value,
            "winner": None if w is None else w.bound_id,
            "case": None if w is None else w.case,
            "expected_case": row.case, "gap": e - cb.value,
        })
    out = []
    for label, recs in per_row.items():
        if long:
            out += [dict(r, status="tight" if r["gap"] == 0 else "gap") for r in recs]
            continue
        worst = max(recs, key=lambda r: r["gap"])
        cases = sorted({r["case"] for r in recs if r["case"] is not None})
        out.append({
            "table": table, "row": label, "s": ",".join(str(r["s"]) for r in recs),
            "k": k, "e": recs[0]["e"], "verified": all(r["verified"] for r in recs),
            "bound": worst["bound"], "case": "/".join(map(str, cases)),
            "expected_case": recs[0]["expected_case"], "gap": worst["gap"],
            "status": "tight" if worst["gap"] == 0 else "gap",
        })
    return out, all_ok


def _verify_row(row, s):
    G = row.generator(s)
    wd = weight_distribution(G)
    return G.n, G.k, wd.d, wd.e


def cmd_table(args) -> CommandReport:
    if args.q != 2:
        raise UsageError("the catalogued tables are binary; use --q 2")
    if args.table:
        table = args.table
    elif args.k in TABLE_BY_K:
        table = TABLE_BY_K[args.k][0].table
    else:
        raise UsageError("tables exist for k in {3, 4, 5}")
    s_max = DEFAULT_S_MAX[table] if args.s_max is None else args.s_max
    recs, ok = table_rows(table, s_max, args.long)
    buf = io.StringIO()
    if recs:
        w = csv.DictWriter(buf, fieldnames=list(recs[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(recs)
    warnings = [] if ok else ["some constructions do not have their catalogued parameters"]
    payload = {"table": table, "s_max": s_max, "rows": recs}
    return CommandReport([], payload, warnings, EXIT_OK if ok else EXIT_MISMATCH, buf.getvalue().rstrip("\n"))


# --- db -----------------------------------------------------------------------


def cmd_db_build(args) -> CommandReport:
    db, reports = build_database(args.k, args.q, args.n_max)
    paths = db.save(args.out)
    payload = {
        "k": args.k, "q": args.q, "n_max": args.n_max, "entries": len(db),
        "files": [p.name for p in paths],
        "reports": [asdict(r) for r in reports],
    }
    lines = [f"{len(db)} entries written to {args.out}"]
    for r in reports:
        lines.append(
            f"  k={r.k}: {r.updated} bound updates, {len(r.conditional)} conditional, {len(r.unresolved)} unresolved"
        )
    return CommandReport([], payload, [], EXIT_OK, "\n".join(lines))


def cmd_db_query(args) -> CommandReport:
    if not Path(args.dir).is_dir():
        raise UsageError(f"no database directory {args.dir}")
    db = CodeDB.load(args.dir)
    entry = db.query(args.n, args.k, args.q)
    if entry is None:
        return CommandReport([], {"n": args.n, "k": args.k, "q": args.q, "entry": None},
                             ["no entry for these parameters"], EXIT_UNRESOLVED,
                             f"{_tag(args.n, args.k, '?', q=args.q)} unresolved")
    warnings = [] if entry.certified else [f"d={entry.d_value} is conditional (only the Griesmer value)"]
    payload = {
        "n": entry.n, "k": entry.k, "q": entry.q, "d": entry.d_value, "d_kind": entry.d_kind,
        "e_lower": entry.e_lower, "e_exact": entry.e_exact, "provenance": entry.provenance,
    }
    exact = "" if entry.e_exact is None else f" e_exact {entry.e_exact}"
    text = (f"{_tag(entry.n, entry.k, entry.d_value, q=entry.q)} ({entry.d_kind}) "
            f"e_lower {entry.e_lower}{exact}  [{entry.provenance}]")
    return CommandReport([], payload, warnings, EXIT_OK, text)


# --- afer ---------------------------------------------------------------------


def cmd_afer(args) -> CommandReport:
    ebn0 = 10 ** (args.ebn0 / 10) if args.db else args.ebn0
    if not ebn0 > 0:
        raise UsageError("Eb/N0 must be positive (linear scale)")
    if args.d > args.n or args.k > args.n:
        raise UsageError("need k <= n and d <= n")
    if args.d > griesmer_max_distance(args.n, args.k, args.q):
        raise UsageError(f"no [{args.n},{args.k},{args.d}]_{args.q} code exists (Griesmer bound)")
    val = afer_value(args.n, args.k, args.d, args.e, ebn0)
    payload = {"n": args.n, "k": args.k, "d": args.d, "e": args.e, "ebn0_linear": ebn0, "afer": val}
    return CommandReport([], payload, [], EXIT_OK, f"{val:.6e}")


# --- parser -------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the structured report")

    p = _Parser(prog="aferbounds", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("bound", parents=[common], help="combined lower bound with per-bound traces")
    b.add_argument("n", type=int)
    b.add_argument("k", type=int)
    b.add_argument("q", type=int)
    b.add_argument("--d", type=int, default=None, help="override the optimal distance")
    b.add_argument("--db-dir", default=None, help="load a saved database instead of seeding one")
    b.set_defaults(func=cmd_bound)

    c = sub.add_parser("construct", parents=[common], help="build a code from a construction string")
    c.add_argument("spec")
    c.add_argument("--s", type=int, default=0)
    c.add_argument("--k", type=int, default=None)
    c.add_argument("--q", type=int, default=2)
    c.add_argument("--out", default=None)
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", parents=[common], help="enumerate a generator-matrix file")
    v.add_argument("file")
    v.add_argument("--expect", default=None, help="expected tag, e.g. [13,5,5;3]")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("table", parents=[common], help="reproduce a catalogue table as CSV")
    t.add_argument("--k", type=int, default=None)
    t.add_argument("--q", type=int, default=2)
    t.add_argument("--s-max", type=int, default=None)
    t.add_argument("--table", choices=sorted(TABLES), default=None)
    t.add_argument("--long", action="store_true", help="one line per (row, s) instance")
    t.set_defaults(func=cmd_table)

    d = sub.add_parser("db", help="build or query the parameter database")
    dsub = d.add_subparsers(dest="db_command", required=True, parser_class=_Parser)
    db_build = dsub.add_parser("build", parents=[common])
    db_build.add_argument("--k", type=int, required=True)
    db_build.add_argument("--q", type=int, default=2)
    db_build.add_argument("--n-max", type=int, required=True)
    db_build.add_argument("--out", default="codedb")
    db_build.set_defaults(func=cmd_db_build)
    db_query = dsub.add_parser("query", parents=[common])
    db_query.add_argument("n", type=int)
    db_query.add_argument("k", type=int)
    db_query.add_argument("q", type=int)
    db_query.add_argument("--dir", default="codedb")
    db_query.set_defaults(func=cmd_db_query)

    a = sub.add_parser("afer", parents=[common], help="asymptotic frame error rate e*Q(sqrt(2dkEb/nN0))")
    a.add_argument("n", type=int)
    a.add_argument("k", type=int)
    a.add_argument("d", type=int)
    a.add_argument("e", type=int)
    a.add_argument("ebn0", type=float)
    a.add_argument("--q", type=int, default=2)
    a.add_argument("--db", action="store_true", help="ebn0 is given in dB")
    a.set_defaults(func=cmd_afer)
    return p


def run(argv: list[str]) -> CommandReport:
    """Parse and execute; never raises for user errors."""
    as_json = "--json" in argv
    try:
        args = build_parser().parse_args(argv)
        report = args.func(args)
    except (UsageError, ConstructionSyntaxError, ValueError, FileNotFoundError) as exc:
        report = CommandReport([], {"error": str(exc)}, [], EXIT_USAGE, f"error: {exc}")
    report.command = list(argv)
    if as_json:
        report.text = report.to_json()
    return report


def main(argv: list[str] | None = None) -> int:
    report = run(sys.argv[1:] if argv is None else argv)
    stream = sys.stderr if report.exit_status == EXIT_USAGE and "--json" not in report.command else sys.stdout
    print(report.text, file=stream)
    if "--json" not in report.command:
        for w in report.warnings:
            print(f"warning: {w}", file=sys.stderr)
    return report.exit_status


if __name__ == "__main__":
    sys.exit(main())
