import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aferbounds.bounds_core import (
    CodeParams,
    adic_anti_expansion,
    afer_estimate,
    afer_value,
    gamma,
    gamma_with_flag,
    gaussian_tail,
    griesmer_length,
    griesmer_max_distance,
    is_griesmer_optimal,
    log_gaussian_tail,
    modified_griesmer_length,
    two_dim_optimal,
    v,
)
from aferbounds.linear_codes import exhaustive_two_dim_oracle

from conftest import brute_griesmer, q_tail_mp

qs = st.sampled_from([2, 3, 4, 5])


# --- Griesmer ---------------------------------------------------------------


@pytest.mark.parametrize("k,d,q,g", [(3, 4, 2, 7), (1, 9, 5, 9), (5, 16, 2, 31), (4, 8, 2, 15), (3, 3, 3, 5)])
def test_griesmer_length_values(k, d, q, g):
    assert griesmer_length(k, d, q) == g


@pytest.mark.parametrize("k,d,m,q,g", [(2, 4, 4, 2, 6), (2, 4, 6, 2, 7), (3, 2, 2, 2, 4)])
def test_modified_griesmer(k, d, m, q, g):
    assert modified_griesmer_length(k, d, m, q) == g


def test_modified_griesmer_rejects_bad_max_weight():
    with pytest.raises(ValueError):
        modified_griesmer_length(3, 4, 3, 2)


@pytest.mark.parametrize("n,k,q,d", [(7, 3, 2, 4), (12, 4, 2, 6), (31, 5, 2, 16), (4, 2, 3, 3)])
def test_griesmer_max_distance_values(n, k, q, d):
    assert griesmer_max_distance(n, k, q) == d


def test_griesmer_max_distance_repetition():
    for n in range(1, 20):
        assert griesmer_max_distance(n, 1, 3) == n


@settings(max_examples=200)
@given(st.integers(1, 7), st.integers(1, 200), qs)
def test_griesmer_difference_counts_divisibility(k, d, q):
    # g(k, d+1) - g(k, d) counts the i < k with q^i | d
    diff = griesmer_length(k, d + 1, q) - griesmer_length(k, d, q)
    assert diff == sum(1 for i in range(k) if d % q**i == 0)
    assert (diff == 1) == (d % q != 0 or k == 1)
    assert griesmer_length(k, d, q) == brute_griesmer(k, d, q)


@settings(max_examples=200)
@given(st.integers(1, 6), st.integers(1, 300), qs)
def test_griesmer_max_distance_is_inverse(k, n, q):
    if n < k:
        return
    d = griesmer_max_distance(n, k, q)
    assert griesmer_length(k, d, q) <= n < griesmer_length(k, d + 1, q)
    assert is_griesmer_optimal(n, k, d, q)


def test_rejects_non_prime_power():
    with pytest.raises(ValueError):
        griesmer_length(3, 4, 6)
    with pytest.raises(ValueError):
        CodeParams(7, 3, 4, 10)


# --- Gamma --------------------------------------------------------------------


@pytest.mark.parametrize("n,k,d,q,g", [(7, 3, 4, 2, 3), (12, 3, 6, 2, 1), (27, 4, 14, 2, 4)])
def test_gamma_values(n, k, d, q, g):
    assert gamma(n, k, d, q) == g


def test_gamma_fallback_flag():
    flagged = [
        (n, k) for k in range(3, 6) for n in range(k, 70)
        if gamma_with_flag(n, k, griesmer_max_distance(n, k, 2), 2)[1]
    ]
    # every flagged instance sits strictly above the Griesmer length
    for n, k in flagged:
        assert n > griesmer_length(k, griesmer_max_distance(n, k, 2), 2)
        assert gamma(n, k, griesmer_max_distance(n, k, 2), 2) == k


def test_gamma_rejects_non_optimal():
    with pytest.raises(ValueError):
        gamma(8, 3, 3, 2)


# --- anti-expansion -----------------------------------------------------------


@pytest.mark.parametrize("d,k,s,lam", [(5, 4, 1, (1, 1, 0)), (8, 4, 1, (0, 0, 0)), (6, 4, 1, (0, 1, 0))])
def test_anti_expansion_values(d, k, s, lam):
    a = adic_anti_expansion(d, k)
    assert (a.s, a.lam) == (s, lam)


@settings(max_examples=300)
@given(st.integers(1, 500), st.integers(2, 7), qs)
def test_anti_expansion_round_trip(d, k, q):
    a = adic_anti_expansion(d, k, q)
    assert a.reconstruct() == d
    assert all(0 <= c < q for c in a.lam)
    assert (a.s - 1) * q ** (k - 1) < d <= a.s * q ** (k - 1)


# --- two-dimensional codes ----------------------------------------------------


@pytest.mark.parametrize("n,q,d,e", [(3, 2, 2, 3), (4, 2, 2, 1), (5, 2, 3, 2), (4, 3, 3, 8)])
def test_two_dim_values(n, q, d, e):
    ans = two_dim_optimal(n, q)
    assert (ans.d, ans.e) == (d, e)


@pytest.mark.parametrize("q", [2, 3])
def test_two_dim_matches_exhaustive_search(q):
    for n in range(2, 9):
        ans = two_dim_optimal(n, q)
        assert (ans.d, ans.e) == exhaustive_two_dim_oracle(n, q), n


@settings(max_examples=200)
@given(st.integers(2, 400), qs)
def test_two_dim_distance_is_griesmer(n, q):
    ans = two_dim_optimal(n, q)
    assert ans.d == griesmer_max_distance(n, 2, q)
    assert ans.e % (q - 1) == 0 and 0 < ans.e <= q * q - 1


# --- AFER ---------------------------------------------------------------------


def test_afer_matches_high_precision_oracle():
    x = math.sqrt(2 * 4 * 3 * 10 / 7)
    ref = 7 * float(q_tail_mp(x))
    got = afer_estimate(CodeParams(7, 3, 4, 2, 7), 10.0)
    assert abs(got - ref) / ref < 1e-12


@pytest.mark.parametrize("x", [0.0, 0.5, 2.0, 6.0, 20.0])
def test_gaussian_tail_against_oracle(x):
    ref = float(q_tail_mp(x))
    assert abs(gaussian_tail(x) - ref) <= 1e-13 * ref
    assert abs(log_gaussian_tail(x) - math.log(ref)) < 1e-10


def test_afer_deep_tail_does_not_underflow():
    val = afer_value(255, 8, 127, 1000, 1e4)
    assert val >= 0.0
    assert afer_value(7, 3, 4, 0, 5.0) == 0.0


@settings(max_examples=50)
@given(st.integers(1, 100), st.integers(1, 100), st.floats(0.01, 50))
def test_afer_monotone_in_error_coefficient(e1, e2, ebn0):
    if e1 == e2:
        return
    a1, a2 = afer_value(15, 4, 8, e1, ebn0), afer_value(15, 4, 8, e2, ebn0)
    assert (a1 < a2) == (e1 < e2)


def test_afer_validation():
    with pytest.raises(ValueError):
        afer_value(7, 3, 4, 7, 0.0)
    with pytest.raises(ValueError):
        afer_estimate(CodeParams(7, 3, 4, 2), 1.0)


def test_code_params_str_and_validation():
    assert str(CodeParams(7, 3, 4, 2, 7)) == "[7,3,4;7]_2"
    with pytest.raises(ValueError):
        CodeParams(7, 3, 4, 3, 5)
    assert v(5, 2) == 31 and v(2, 3) == 4


@settings(max_examples=300)
@given(st.integers(3, 7), st.integers(3, 400), qs)
def test_gamma_below_k_forces_q_divides_d(k, n, q):
    if n < k:
        return
    d = griesmer_max_distance(n, k, q)
    if gamma(n, k, d, q) < k:
        assert d % q == 0


def test_binary_griesmer_difference_can_exceed_two():
    # the step is 1 + #{1 <= i < k : 2^i | d}, so 4 | d already gives 3
    assert griesmer_length(3, 5, 2) - griesmer_length(3, 4, 2) == 3
