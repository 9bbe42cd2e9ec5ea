import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aferbounds.bounds_core import adic_anti_expansion, v
from aferbounds.linear_codes import GenMatrix, parameters, weight_distribution
from aferbounds.projective_geometry import (
    PointMultiset,
    belov_minihyper,
    classification_predicates,
    code_parameters,
    complement_arc,
    enumerate_points,
    frame_points,
    hyperplane_profile,
    identity_points,
    is_replicated_simplex,
    multiset_rank,
    normalize_point,
    rank_scaling_check,
    restrict_to_span,
    simplex,
    ss_minihyper,
    ss_two_subspace_error_coefficient,
    ss_two_subspace_minimum,
    subspace_points,
    to_generator_matrix,
)

from conftest import brute_d_e


@pytest.mark.parametrize("k,q,count", [(3, 2, 7), (2, 3, 4), (5, 2, 31), (3, 4, 21)])
def test_point_counts(k, q, count):
    pts = enumerate_points(k, q)
    assert len(pts) == count == v(k, q)
    assert len(set(pts)) == count
    assert all(normalize_point(p, q) == p for p in pts)


def test_subspace_sizes():
    assert subspace_points([1, 2, 3], 5, 2).cardinality == 7
    assert subspace_points({4, 5}, 5, 2).cardinality == 3
    assert subspace_points(range(1, 5), 4, 2) == simplex(4, 2)
    with pytest.raises(ValueError):
        subspace_points([6], 5, 2)


def test_multiset_algebra():
    M = simplex(3, 2) - subspace_points([1, 2], 3, 2)
    assert M.cardinality == 4
    U = subspace_points(range(1, 5), 5, 2) + subspace_points({3, 4, 5}, 5, 2)
    assert U.cardinality == 22
    assert sorted(U.mult.values()).count(2) == 3
    with pytest.raises(ValueError, match="underflow"):
        subspace_points([1], 3, 2) - subspace_points([1, 2], 3, 2)
    assert (2 * simplex(2, 2)).cardinality == 6


def test_generator_matrix_from_points():
    G = to_generator_matrix(simplex(3, 2))
    assert (G.k, G.n) == (3, 7)
    G1 = to_generator_matrix(PointMultiset.from_points([(1,), (1,)], 1, 2))
    assert G1.rows.tolist() == [[1, 1]]
    with pytest.raises(ValueError, match="rank"):
        to_generator_matrix(subspace_points([1, 2], 3, 2))


def test_from_matrix_rejects_zero_column():
    with pytest.raises(ValueError):
        PointMultiset.from_matrix(GenMatrix([[1, 0, 1], [0, 0, 1]], 2))


def test_complement_examples():
    arc = complement_arc(subspace_points([1, 2], 3, 2), 1)
    assert arc.cardinality == 4
    assert parameters(to_generator_matrix(arc))[:3] == (4, 3, 2)
    big = complement_arc(subspace_points(range(1, 5), 5, 2) + subspace_points({3, 4, 5}, 5, 2), 2)
    assert code_parameters(big) == (40, 5, 20, 27)
    assert weight_distribution(to_generator_matrix(big)).e == 27
    with pytest.raises(ValueError):
        complement_arc(2 * simplex(3, 2), 1)


def test_rank_of_frames():
    assert multiset_rank(subspace_points([1, 2, 3], 5, 2)) == 3
    assert multiset_rank(frame_points(4, 5, 2)) == 4
    assert frame_points(4, 5, 2).cardinality == 5


def test_rank_scaling():
    assert rank_scaling_check(subspace_points([1, 2, 3], 4, 2)).factor == 2
    one = PointMultiset.from_points([(1, 0, 0)], 3, 2)
    assert rank_scaling_check(one).factor == 4
    R = restrict_to_span(subspace_points([2, 4], 4, 2))
    assert R.k == 2 and R == simplex(2, 2)


def test_belov_and_ss_examples():
    b = belov_minihyper(range(1, 5), k=4)
    assert b.cardinality == 10
    # its complement in one copy of P[4] is the 5-point frame code [5,4,2;10]
    assert code_parameters(complement_arc(b, 1)) == (5, 4, 2, 10)
    with pytest.raises(ValueError):
        belov_minihyper([1, 2, 3], k=4)
    with pytest.raises(ValueError):
        ss_minihyper([1], [1, 2], k=3)
    M = complement_arc(ss_minihyper([1, 2], k=5), 1)
    assert code_parameters(M)[:3] == (28, 5, 14)


def _two_subspaces(k, a1, a2, inter):
    A1 = list(range(1, a1 + 1))
    A2 = list(range(a1 - inter + 1, a1 - inter + a2 + 1))
    return A1, A2


def _valid_triples(k):
    for a1 in range(1, k):
        for a2 in range(1, a1 + 1):
            for inter in range(max(0, a1 + a2 - k), a2 + 1):
                yield a1, a2, inter


@pytest.mark.parametrize("k", [4, 5])
def test_ss_two_subspace_closed_form_against_enumeration(k):
    for a1, a2, inter in _valid_triples(k):
        A1, A2 = _two_subspaces(k, a1, a2, inter)
        mh = ss_minihyper(A1, A2, k=k)
        code = complement_arc(mh, 2)
        if multiset_rank(code) < k:
            continue
        wd = weight_distribution(to_generator_matrix(code))
        assert hyperplane_profile(mh).achieving == wd.e
        assert ss_two_subspace_error_coefficient(k, a1, a2, inter) == wd.e, (a1, a2, inter)


@pytest.mark.parametrize("k,a1,a2,inter,e", [(5, 4, 3, 2, 27), (5, 2, 1, 0, 12), (5, 4, 2, 1, 23)])
def test_ss_two_subspace_anchors(k, a1, a2, inter, e):
    assert ss_two_subspace_error_coefficient(k, a1, a2, inter) == e


def test_ss_two_subspace_minimum_is_min():
    for k in (4, 5, 6):
        for a1 in range(1, k):
            for a2 in range(1, a1 + 1):
                inter, val = ss_two_subspace_minimum(k, a1, a2)
                vals = [ss_two_subspace_error_coefficient(k, a1, a2, i)
                        for i in range(max(0, a1 + a2 - k), a2 + 1)]
                assert val == min(vals)


def test_classification_predicates():
    lam = adic_anti_expansion(14, 4).lam
    assert lam == (0, 1, 0)
    assert classification_predicates(lam, 4, 1) == classification_predicates((0, 1, 0), 4, 1)
    assert not classification_predicates(lam, 4, 1).ss_excluded
    assert classification_predicates((1, 1, 1, 0), 5, 1).belov_shape == 4
    c = classification_predicates((0, 0, 0, 0), 5, 1)
    assert not c.ss_excluded and c.belov_shape is None
    assert classification_predicates((1, 1, 1, 1), 5, 1).ss_excluded


def test_replicated_simplex():
    assert is_replicated_simplex(simplex(3, 2, 3))
    assert is_replicated_simplex(2 * subspace_points([1, 2], 4, 2))
    assert not is_replicated_simplex(frame_points(3, 3, 2))


@st.composite
def multisets(draw):
    q = draw(st.sampled_from([2, 3]))
    k = draw(st.integers(2, 5 if q == 2 else 3))
    nv = v(k, q)
    counts = draw(st.lists(st.integers(0, 2), min_size=nv, max_size=nv))
    return PointMultiset(k, q, np.array(counts, dtype=np.int64))


@settings(max_examples=60, deadline=None)
@given(multisets())
def test_duality_profile_matches_enumeration(M):
    if multiset_rank(M) < M.k:
        return
    G = to_generator_matrix(M)
    wd = weight_distribution(G)
    assert code_parameters(M) == (G.n, G.k, wd.d, wd.e)
    if G.q == 2 and G.k <= 4:
        assert brute_d_e(G.rows.tolist(), 2) == (wd.d, wd.e)


@settings(max_examples=60, deadline=None)
@given(multisets(), st.integers(0, 2))
def test_double_complement_identity(M, extra):
    s = M.max_multiplicity + extra
    assert complement_arc(complement_arc(M, s), s) == M


def test_frame_sums_to_zero():
    T = frame_points(4, 5, 2)
    total = np.zeros(5, dtype=int)
    for p in T.points:
        total = (total + np.array(p)) % 2
    assert not total.any()
    assert identity_points(3, 5, 2).cardinality == 3
