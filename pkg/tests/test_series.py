from __future__ import annotations

from hypothesis import given, strategies as st

from charsheaves.series import BigradedSeries, poly_mul, poly_pow, sym_series


def test_sym_series_rank_one_expansion():
    s = sym_series(1).scale(2)
    assert s.numerator_text() == "2"
    assert s.denominator_text() == "(1-t^2q^2)"
    assert s.t_coefficients(6) == [2, 0, 2, 0, 2, 0]


def test_constant_series():
    s = sym_series(0).scale(2)
    assert s.t_coefficients(4) == [2, 0, 0, 0]


@given(st.integers(0, 3), st.integers(0, 3))
def test_multiplicativity(a, b):
    assert (sym_series(a) * sym_series(b)).same_function(sym_series(a + b))


@given(st.integers(0, 4))
def test_poly_pow_matches_repeated_mul(n):
    p = {(0, 0): 1, (1, 1): 1}
    q = {(0, 0): 1}
    for _ in range(n):
        q = poly_mul(q, p)
    assert poly_pow(p, n) == {k: v for k, v in q.items() if v}


def test_series_are_nonnegative():
    assert sym_series(3).scale(6).is_nonnegative()
    assert isinstance(sym_series(1), BigradedSeries)
