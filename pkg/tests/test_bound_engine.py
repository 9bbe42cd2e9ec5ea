import dataclasses
import json

import numpy as np
import pytest

from aferbounds.bound_engine import (
    BoundTrace,
    RankCapRegistry,
    bound_L1,
    bound_L2,
    bound_L3,
    bound_L4,
    bound_L5,
    bound_nonextendable,
    combined_bound,
)
from aferbounds.bounds_core import v
from aferbounds.code_db import CodeDB, build_database
from aferbounds.linear_codes import weight_distribution
from aferbounds.projective_geometry import PointMultiset, multiset_rank, to_generator_matrix
from aferbounds.tables import instances


@pytest.mark.parametrize("fn,args,value", [
    (bound_L1, (7, 3, 4), 7),
    (bound_L1, (9, 5, 3), 4),
    (bound_L1, (8, 5, 2), 1),
    (bound_L2, (12, 3, 6), 2),
    (bound_L2, (10, 4, 4), 2),
    (bound_L2, (9, 4, 4), 6),
    (bound_L3, (4, 3, 2), 6),
    (bound_L3, (16, 5, 8), 30),
    (bound_L3, (5, 4, 2), 10),
    (bound_L4, (27, 4, 14), 12),
    (bound_L4, (12, 4, 6), 12),
    (bound_L5, (11, 4, 5), 6),
    (bound_L5, (26, 4, 13), 6),
])
def test_bound_anchors(db_binary, fn, args, value):
    tr = fn(*args, 2, db_binary)
    assert tr.applicable and tr.value == value


def test_trace_details(db_binary):
    tr = bound_L4(27, 4, 14, 2, db_binary)
    assert tr.k2 == 2 and tr.sigma == 3
    # the k2 = 1 candidate reduces to the L1 value
    assert tr.annotations["candidates"]["1"] == bound_L1(27, 4, 14, 2, db_binary).value
    assert bound_L4(7, 3, 4, 2, db_binary).annotations["candidates"]["1"] == 7
    tr = bound_L3(16, 5, 8, 2, db_binary)
    assert tr.mu == 15
    assert bound_L5(11, 4, 5, 2, db_binary).rank_cap == 3
    assert bound_L2(12, 3, 6, 2, db_binary).gamma == 1
    assert all(entry["op"] for entry in bound_L2(12, 3, 6, 2, db_binary).inputs_resolved)


def test_l3_requires_griesmer_length(db_binary):
    # [8,3,4]: weight-4 words lie in a 2-dim subcode; the true e is 3
    tr = bound_L3(8, 3, 4, 2, db_binary)
    assert not tr.applicable
    assert combined_bound(8, 3, 2, db_binary).value <= 3


def test_l5_non_informative_cap(db_binary):
    reg = RankCapRegistry({(4, 1, 3, 2): (4, "test")})
    tr = bound_L5(11, 4, 5, 2, db_binary, reg)
    assert not tr.applicable and tr.annotations.get("non_informative")
    assert not bound_L5(11, 4, 5, 2, db_binary, RankCapRegistry(builtin=False)).applicable


@pytest.mark.parametrize("n,k,d,value", [(7, 5, 2, 5), (11, 5, 4, 4)])
def test_nonextendable_anchors(db_binary, n, k, d, value):
    assert bound_nonextendable(n, k, d, db_binary).value == value


class _StubDB:
    """Answers e_at_distance with a constant and leaves everything else unresolved."""

    def __init__(self, x):
        self.x = x

    def e_at_distance(self, n, k, d, q):
        return self.x

    def e_floor(self, n, k, d, q):
        return None

    def e_optimal(self, n, k, q):
        return None

    def is_exact(self, n, k, q):
        return False

    def distance(self, n, k, q):
        return None


def test_nonextendable_unknown_floor_uses_one():
    tr = bound_nonextendable(20, 5, 8, _StubDB(9))
    assert tr.value == 11 and tr.delta_notes


def test_unresolved_inputs_make_bounds_inapplicable():
    db = _StubDB(None)
    for fn in (bound_L1, bound_L2, bound_L3, bound_L4):
        assert not fn(16, 5, 8, 2, db).applicable
    cb = combined_bound(16, 5, 2, db)
    assert cb.value == 0 and cb.winner is None and not cb.d_certified


@pytest.mark.parametrize("n,k,value,case", [(16, 5, 30, 3), (12, 3, 2, 2), (11, 4, 6, 5), (24, 5, 28, 4), (7, 5, 4, 2)])
def test_combined_anchors(db_binary, n, k, value, case):
    cb = combined_bound(n, k, 2, db_binary)
    assert cb.value == value and cb.winner.case == case


def test_combined_rejects_small_k(db_binary):
    with pytest.raises(ValueError):
        combined_bound(5, 2, 2, db_binary)


def test_not_griesmer_optimal_only_l1(db_binary):
    cb = combined_bound(8, 5, 2, db_binary, d=2)
    assert [t.bound_id for t in cb.applicable] == ["L1"]


def test_trace_json_round_trip(db_binary):
    cb = combined_bound(27, 4, 2, db_binary)
    for tr in cb.traces:
        data = json.loads(tr.to_json())
        back = BoundTrace.from_dict(json.loads(json.dumps(data)))
        assert back.to_dict() == tr.to_dict()
    d = cb.to_dict()
    assert d["winner"] == "L4" and d["case"] == 4 and d["value"] == 12


def test_tables_tight(db_binary):
    for row, s in instances(("I", "II", "III"), {"I": 4, "II": 4, "III": 2}):
        n, k, d, e = row.params(s)
        cb = combined_bound(n, k, 2, db_binary, d=d)
        assert cb.value == e, (row.label, s)


def _random_optimal_codes(q, k_max, n_max, db, samples, seed):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(samples):
        k = int(rng.integers(3, k_max + 1))
        nv = v(k, q)
        n = int(rng.integers(k + 1, min(n_max, 3 * nv) + 1))
        s = -(-n // nv)
        counts = np.full(nv, s)
        for _ in range(s * nv - n):
            counts[rng.choice(np.flatnonzero(counts > 0))] -= 1
        M = PointMultiset(k, q, counts)
        if multiset_rank(M) < k:
            continue
        wd = weight_distribution(to_generator_matrix(M))
        if wd.d == db.distance(n, k, q):
            out.append((n, k, wd.e))
    return out


@pytest.mark.parametrize("q,k_max,n_max", [(2, 5, 40), (3, 4, 30)])
def test_soundness_on_random_optimal_codes(q, k_max, n_max):
    db, _ = build_database(k_max, q, n_max)
    codes = _random_optimal_codes(q, k_max, n_max, db, 800, seed=7)
    assert len(codes) > 100
    for n, k, e in codes:
        for tr in combined_bound(n, k, q, db).applicable:
            assert tr.value <= e, (n, k, e, tr.bound_id, tr.value)


def test_bounds_monotone_in_database(db_k5):
    rng = np.random.default_rng(3)
    bumped = CodeDB()
    for entry in db_k5.entries():
        bumped.insert(entry)
    for entry in db_k5.entries(q=2):
        if entry.e_exact is None and entry.k >= 2 and rng.random() < 0.5:
            bumped.insert(dataclasses.replace(entry, e_lower=entry.e_lower + 1), overwrite=True)
    for k in (3, 4, 5):
        for n in range(k + 1, 90):
            a, b = combined_bound(n, k, 2, db_k5), combined_bound(n, k, 2, bumped)
            for ta, tb in zip(a.traces, b.traces):
                if ta.applicable:
                    assert tb.applicable and tb.value >= ta.value
