"""Iterative lower bounds on the error coefficient e(n, k, q).

Every bound consults a database through three lookups (see
:class:`aferbounds.code_db.CodeDB`):

* ``e_optimal(n, k, q)``: lower bound on e(n, k, q), or None if unresolved
* ``e_at_distance(n, k, d, q)``: 0 below the optimal distance, e at it, None otherwise
* ``e_floor(n, k, d, q)``: lower bound on A_d over codes of distance d, or None

Unresolved lookups never turn into zeros: they make a bound (or one
candidate of it) inapplicable, and the trace says why.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

from .bounds_core import (
    ceil_div,
    gamma_with_flag,
    griesmer_length,
    griesmer_max_distance,
    is_griesmer_optimal,
    v,
)

BOUND_IDS = ("L1", "L2", "L3", "L4", "L5")
CASE_OF = {b: i + 1 for i, b in enumerate(BOUND_IDS)}


@dataclass
class BoundTrace:
    bound_id: str
    value: int = 0
    applicable: bool = False
    reason: str = ""
    t: int | None = None
    mu: int | None = None
    sigma: int | None = None
    k2: int | None = None
    rank_cap: int | None = None
    gamma: int | None = None
    inputs_resolved: list[dict] = field(default_factory=list)
    delta_notes: list[str] = field(default_factory=list)
    annotations: dict = field(default_factory=dict)

    @property
    def case(self) -> int | None:
        return CASE_OF.get(self.bound_id)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["case"] = self.case
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> BoundTrace:
        data = {k: v for k, v in data.items() if k != "case"}
        return cls(**data)


def _inapplicable(bound_id: str, reason: str, rec=None, **extra) -> BoundTrace:
    tr = BoundTrace(bound_id, 0, False, reason, **extra)
    if rec is not None:
        tr.inputs_resolved = rec.log
    return tr


class _Recorder:
    """Passes lookups through to the database and logs each one."""

    def __init__(self, db):
        self.db = db
        self.log: list[dict] = []

    def _note(self, op, n, k, q, d, value):
        self.log.append({"op": op, "n": n, "k": k, "q": q, "d": d, "value": value})
        return value

    def e_optimal(self, n, k, q):
        return self._note("e", n, k, q, None, self.db.e_optimal(n, k, q))

    def e_at_distance(self, n, k, d, q):
        return self._note("e_at", n, k, q, d, self.db.e_at_distance(n, k, d, q))

    def e_floor(self, n, k, d, q):
        return self._note("e_floor", n, k, q, d, self.db.e_floor(n, k, d, q))

    def is_exact(self, n, k, q):
        return self.db.is_exact(n, k, q)

    def distance(self, n, k, q):
        return self.db.distance(n, k, q)


def _round_up(x: int, m: int) -> int:
    return ceil_div(x, m) * m


def _smallest_multiple(lo: int, q: int, notes: list[str]) -> int:
    """Smallest multiple of q-1 that is >= lo (and >= q-1)."""
    val = max(_round_up(lo, q - 1), q - 1)
    if val != lo:
        notes.append(f"rounded {lo} up to {val} (multiple of q-1={q - 1})")
    return val


class RankCapRegistry:
    """Upper bounds on the rank of minihypers with parameters {f, m; k-1, q}.

    Built-in rule: a {f, 1; k-1, q}-minihyper has rank at most f-1.
    Extra entries map ``(f, m, k_minus_1, q)`` to ``(cap, provenance)``.
    """

    def __init__(self, entries: dict | None = None, builtin: bool = True):
        self._entries = dict(entries or {})
        self.builtin = builtin

    @property
    def entries(self) -> dict:
        return dict(self._entries)

    def lookup(self, f: int, m: int, k_minus_1: int, q: int) -> tuple[int, str] | None:
        key = (f, m, k_minus_1, q)
        if key in self._entries:
            return self._entries[key]
        if self.builtin and m == 1 and f >= 2:
            return f - 1, "rank cap f-1 for {f,1;k-1,q}-minihypers"
        return None


DEFAULT_REGISTRY = RankCapRegistry()


def _griesmer_gamma(n, k, d, q):
    if not is_griesmer_optimal(n, k, d, q):
        return None, False
    return gamma_with_flag(n, k, d, q)


# --- individual bounds ---------------------------------------------------


def bound_L1(n: int, k: int, d: int, q: int, db) -> BoundTrace:
    """Residual-code bound; needs only the residual lookup."""
    rec = _Recorder(db)
    if k < 2:
        return _inapplicable("L1", "needs k >= 2")
    t = q if d % q == 0 else d % q
    e_r = rec.e_at_distance(n - d, k - 1, ceil_div(d, q), q)
    if e_r is None:
        return _inapplicable("L1", f"residual [{n - d},{k - 1},{ceil_div(d, q)}] unresolved", rec, t=t)
    notes: list[str] = []
    value = _smallest_multiple(t * e_r + (q - 1), q, notes)
    return BoundTrace("L1", value, True, t=t, inputs_resolved=rec.log, delta_notes=notes)


def bound_L2(n: int, k: int, d: int, q: int, db) -> BoundTrace:
    rec = _Recorder(db)
    g, fallback = _griesmer_gamma(n, k, d, q)
    if g is None:
        return _inapplicable("L2", "not Griesmer optimal")
    if g >= k:
        return _inapplicable("L2", "Γ = k", gamma=g)
    e = rec.e_optimal(n - d - 1, k - 1, q)
    if e is None:
        return _inapplicable("L2", f"e({n - d - 1},{k - 1}) unresolved", rec, gamma=g)
    notes: list[str] = []
    value = _smallest_multiple(e, q, notes)
    ann = {"case2_stronger_value": (q - 1) * e + (q - 1)}
    if fallback:
        ann["gamma_fallback"] = True
    return BoundTrace("L2", value, True, gamma=g, inputs_resolved=rec.log, delta_notes=notes, annotations=ann)


def bound_L3(n: int, k: int, d: int, q: int, db) -> BoundTrace:
    rec = _Recorder(db)
    if d % q:
        return _inapplicable("L3", "q does not divide d")
    g, _ = _griesmer_gamma(n, k, d, q)
    if g is None:
        return _inapplicable("L3", "not Griesmer optimal")
    k1 = min(g, k - 1)
    if k1 < 2:
        return _inapplicable("L3", "k1 = min(Γ, k-1) < 2", gamma=g)
    # The argument needs a weight-d codeword outside a (k-1)-dim subcode.
    # Above the Griesmer length this can fail: [8,3,4;3]_2 has all its
    # weight-4 words in a 2-dim subcode and the formula would give 5.
    if n != griesmer_length(k, d, q):
        return _inapplicable("L3", "n > g_q(k, d): minimum-weight words may not span", gamma=g)
    s = ceil_div(d, q ** (k - 1))
    parts = [
        rec.e_optimal(griesmer_length(k1, d, q), k1, q),
        rec.e_at_distance(n - s, k - 1, d, q),
    ]
    known = [p for p in parts if p is not None]
    if not known:
        return _inapplicable("L3", "both μ lookups unresolved", rec, gamma=g)
    mu = max(known)
    e3 = rec.e_optimal(n - d, k - 1, q)
    if e3 is None:
        return _inapplicable("L3", f"e({n - d},{k - 1}) unresolved", rec, gamma=g, mu=mu)
    notes: list[str] = []
    if len(known) < len(parts):
        notes.append("μ taken over the resolved lookup only")
    value = _smallest_multiple((q - 1) * e3 + mu + (q - 1), q, notes)
    return BoundTrace("L3", value, True, mu=mu, gamma=g, inputs_resolved=rec.log, delta_notes=notes)


def bound_L4(n: int, k: int, d: int, q: int, db) -> BoundTrace:
    """Subcode-chain bound, maximized over the split dimension k2."""
    rec = _Recorder(db)
    g, _ = _griesmer_gamma(n, k, d, q)
    if g is None:
        return _inapplicable("L4", "not Griesmer optimal")
    k1 = min(g, k - 1)
    if k1 < 2:
        return _inapplicable("L4", "k1 = min(Γ, k-1) < 2", gamma=g)
    best = None
    notes: list[str] = []
    candidates = {}
    for k2 in range(1, k1):
        g2 = griesmer_length(k2, d, q)
        # the subtracted term must be exact, otherwise ς could be overstated
        if not rec.is_exact(g2, k2, q):
            notes.append(f"k2={k2}: e({g2},{k2}) not exact, skipped")
            continue
        e_lo = rec.e_optimal(g2, k2, q)
        e_hi = rec.e_optimal(griesmer_length(k2 + 1, d, q), k2 + 1, q)
        dr = ceil_div(d, q**k2)
        nr = n - g2
        if e_lo is None or e_hi is None:
            notes.append(f"k2={k2}: subcode lookup unresolved, skipped")
            continue
        if rec.distance(nr, k - k2, q) != dr:
            notes.append(f"k2={k2}: residual [{nr},{k - k2}] distance is not {dr}, skipped")
            continue
        e_r = rec.e_at_distance(nr, k - k2, dr, q)
        if e_r is None:
            notes.append(f"k2={k2}: residual unresolved, skipped")
            continue
        sigma = e_hi - e_lo
        if sigma <= 0:
            cand = e_lo
            notes.append(f"k2={k2}: ς={sigma} <= 0, candidate clamped to e_lo")
        else:
            sub: list[str] = []
            cand = _smallest_multiple(e_lo + ceil_div(sigma * e_r, q - 1), q, sub)
            notes.extend(f"k2={k2}: {x}" for x in sub)
        candidates[str(k2)] = cand  # str keys survive JSON
        if best is None or cand > best[0]:
            best = (cand, k2, sigma)
    if best is None:
        return _inapplicable("L4", "no k2 with resolved lookups", rec, gamma=g, delta_notes=notes)
    return BoundTrace(
        "L4", best[0], True, sigma=best[2], k2=best[1], gamma=g,
        inputs_resolved=rec.log, delta_notes=notes, annotations={"candidates": candidates},
    )


def bound_L5(n: int, k: int, d: int, q: int, db, registry: RankCapRegistry = DEFAULT_REGISTRY) -> BoundTrace:
    """Rank-cap bound for codes meeting the Griesmer bound with equality."""
    rec = _Recorder(db)
    if n != griesmer_length(k, d, q):
        return _inapplicable("L5", "n > g_q(k, d)")
    s = ceil_div(d, q ** (k - 1))
    f = s * v(k, q) - n
    m = s * v(k - 1, q) - n + d
    hit = registry.lookup(f, m, k - 1, q)
    minihyper = {"f": f, "m": m}
    if hit is None:
        return _inapplicable("L5", f"no rank cap for {{{f},{m};{k - 1},{q}}}", annotations=minihyper)
    cap, prov = hit
    minihyper["cap_source"] = prov
    if cap >= k:
        minihyper["non_informative"] = True
        return _inapplicable("L5", f"rank cap {cap} >= k is non-informative", rank_cap=cap, annotations=minihyper)
    if cap < 1:
        return _inapplicable("L5", f"rank cap {cap} < 1", rank_cap=cap, annotations=minihyper)
    n_sub = n + s * v(cap, q) - s * v(k, q)
    e = rec.e_optimal(n_sub, cap, q)
    if e is None:
        return _inapplicable("L5", f"e({n_sub},{cap}) unresolved", rec, rank_cap=cap, annotations=minihyper)
    return BoundTrace(
        "L5", q ** (k - cap) * e, True, rank_cap=cap, inputs_resolved=rec.log, annotations=minihyper
    )


def bound_nonextendable(n: int, k: int, d: int, db, q: int = 2) -> BoundTrace:
    """Bound for binary even-distance codes known to be non-extendable.

    Advisory only: the caller must establish non-extendability.
    """
    if q != 2:
        raise ValueError("bound_nonextendable is binary only")
    if d % 2:
        raise ValueError("bound_nonextendable needs even d")
    rec = _Recorder(db)
    s = ceil_div(n, 2**k - 1)
    x = rec.e_at_distance(n - s, k - 1, d, 2)
    if x is None:
        return _inapplicable("NONEXT", f"e_{d}({n - s},{k - 1}) unresolved", rec)
    y = rec.e_floor(n - d, k - 1, d // 2, 2)
    notes = []
    if y is None:
        y = 1
        notes.append("e_floor unresolved, using 1")
    value = max(x + 2, x + y + 1)
    return BoundTrace("NONEXT", value, True, inputs_resolved=rec.log, delta_notes=notes)


# --- combination ---------------------------------------------------------


@dataclass
class CombinedBound:
    n: int
    k: int
    q: int
    d: int
    d_certified: bool
    traces: list[BoundTrace]

    @property
    def applicable(self) -> list[BoundTrace]:
        return [t for t in self.traces if t.applicable]

    @property
    def value(self) -> int:
        return max((t.value for t in self.applicable), default=0)

    @property
    def winner(self) -> BoundTrace | None:
        best = None
        for t in self.applicable:
            if best is None or t.value > best.value:
                best = t
        return best

    def to_dict(self) -> dict:
        w = self.winner
        return {
            "n": self.n,
            "k": self.k,
            "q": self.q,
            "d": self.d,
            "d_certified": self.d_certified,
            "value": self.value,
            "winner": None if w is None else w.bound_id,
            "case": None if w is None else w.case,
            "traces": [t.to_dict() for t in self.traces],
        }


def resolve_distance(n: int, k: int, q: int, db) -> tuple[int, bool]:
    """Distance from a certified database entry, else the Griesmer value (uncertified)."""
    d = db.distance(n, k, q)
    if d is not None:
        return d, True
    return griesmer_max_distance(n, k, q), False


def combined_bound(
    n: int, k: int, q: int, db, registry: RankCapRegistry = DEFAULT_REGISTRY, d: int | None = None
) -> CombinedBound:
    """Evaluate L1-L5 and take the maximum over the applicable ones."""
    if k < 3:
        raise ValueError("combined_bound needs k >= 3")
    if d is None:
        d, certified = resolve_distance(n, k, q, db)
    else:
        certified = db.distance(n, k, q) == d
    traces = [bound_L1(n, k, d, q, db)]
    if is_griesmer_optimal(n, k, d, q):
        traces += [
            bound_L2(n, k, d, q, db),
            bound_L3(n, k, d, q, db),
            bound_L4(n, k, d, q, db),
            bound_L5(n, k, d, q, db, registry),
        ]
    else:
        traces += [_inapplicable(b, "not Griesmer optimal") for b in BOUND_IDS[1:]]
    return CombinedBound(n, k, q, d, certified, traces)
