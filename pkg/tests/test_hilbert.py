from __future__ import annotations

from math import comb

import pytest
from hypothesis import given, settings

from helpers import brute_monomial_count, expand_series, quotient_pairs, si_pair, unit_ideal
from sdepthlab.hilbert import (
    HdepthResult,
    HilbertSeries,
    hdepth1,
    hdepth1_pair,
    herzog_question,
    hilbert_series,
)
from sdepthlab.monomials import Ideal, InputError, Monomial, QuotientPair
from sdepthlab.sdepth import sdepth


@given(quotient_pairs(max_n=4, normalized=False))
@settings(max_examples=40)
def test_series_counts_monomials(Q):
    H = hilbert_series(Q)
    assert H.denom_exp == Q.ambient
    for k in range(0, 7):
        assert H.coefficient(k) == brute_monomial_count(Q, k)


@given(quotient_pairs(max_n=4, normalized=False))
@settings(max_examples=40)
def test_hdepth_certified_by_expansion(Q):
    n = Q.ambient
    H = hilbert_series(Q)
    res = hdepth1_pair(Q)
    assert res == hdepth1(H)
    horizon = len(H.k_poly) + n + 25
    # nonnegative through the claimed value
    assert all(c >= 0 for c in expand_series(H.k_poly, n - res.value, horizon))
    if res.value == n:
        assert res.failing_coefficient is None
    else:
        idx = res.failing_coefficient
        assert idx is not None
        expanded = expand_series(H.k_poly, n - res.value - 1, max(horizon, idx))
        assert expanded[idx] < 0


@given(quotient_pairs(max_n=4))
@settings(max_examples=30)
def test_hdepth_dominates_sdepth(Q):
    assert hdepth1_pair(Q).value >= sdepth(Q).value


def test_polynomial_ring_series():
    Q = QuotientPair(unit_ideal(3), Ideal(3))
    H = hilbert_series(Q)
    assert H.k_poly == (1,)
    assert [H.coefficient(k) for k in range(4)] == [1, 3, 6, 10]
    assert hdepth1(H) == HdepthResult(value=3, failing_coefficient=None)


def test_maximal_ideal_n2():
    Q = QuotientPair(Ideal.from_strs(2, "x1", "x2"), Ideal(2))
    H = hilbert_series(Q)
    assert H.k_poly == (0, 2, -1)  # 2t - t^2
    assert [H.coefficient(k) for k in range(4)] == [0, 2, 3, 4]
    assert hdepth1(H) == HdepthResult(value=1, failing_coefficient=2)


def test_series_addition():
    n = 3
    m_pair = QuotientPair(
        Ideal(n, [Monomial.of(i) for i in range(1, n + 1)]), Ideal(n)
    )
    h_m = hilbert_series(m_pair)
    s = HilbertSeries(n, (1,))
    total = s + h_m
    for k in range(8):
        assert total.coefficient(k) == h_m.coefficient(k) + comb(k + n - 1, n - 1)
    with pytest.raises(InputError):
        s + HilbertSeries(n + 1, (1,))


def test_herzog_comparison_table():
    equal_ns = {1, 2, 3, 4, 5, 7, 9, 11}
    for n in range(1, 13):
        row = herzog_question(n)
        assert set(row) == {"n", "hdepth_m", "hdepth_s_plus_m", "equal"}
        assert row["n"] == n
        assert row["equal"] == (n in equal_ns)
        assert row["equal"] == (row["hdepth_m"] == row["hdepth_s_plus_m"])
    n6 = herzog_question(6)
    assert (n6["hdepth_m"], n6["hdepth_s_plus_m"]) == (3, 4)
    for bad_n in (0, 13):
        with pytest.raises(InputError):
            herzog_question(bad_n)


def test_si_form_series_matches_counts():
    I = Ideal.from_strs(4, "x1*x2", "x3*x4")
    Q = si_pair(I)
    H = hilbert_series(Q)
    for k in range(6):
        assert H.coefficient(k) == brute_monomial_count(Q, k)
    assert H.coefficient(0) == 1
