from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dickedepth import binomial, format_rational, parse_rational, rational_cmp, to_float
from oracles import pascal

fractions = st.fractions(max_denominator=10**30)


def test_binomial_examples():
    assert binomial(5, 2) == 10
    assert binomial(7, 0) == 1
    assert binomial(0, 0) == 1
    assert binomial(60, 30) == 118264581564861424
    assert binomial(100, 50) == 100891344545564193334812497256


@pytest.mark.parametrize("k", [-3, -1, 6, 40])
def test_binomial_out_of_range_is_zero(k):
    assert binomial(5, k) == 0


def test_binomial_negative_n_rejected():
    with pytest.raises(ValueError):
        binomial(-1, 0)


def test_binomial_matches_pascal_table():
    for n in range(0, 201):
        for k in range(-1, n + 2):
            assert binomial(n, k) == pascal(n, k)


def test_binomial_symmetry_and_recurrence():
    for n in range(1, 201):
        for k in range(0, n + 1):
            assert binomial(n, k) == binomial(n, n - k)
            assert binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k)


def test_binomial_row_sums():
    for n in range(0, 65):
        assert sum(binomial(n, k) for k in range(n + 1)) == 2**n


@given(fractions, fractions)
def test_rational_cmp_agrees_with_exact_order(a, b):
    expected = (a > b) - (a < b)
    assert rational_cmp(a, b) == expected
    assert rational_cmp(b, a) == -expected


def test_rational_cmp_separates_values_floats_cannot():
    a = Fraction(10**40 + 1, 10**40)
    b = Fraction(10**40 + 2, 10**40)
    assert float(a) == float(b)
    assert rational_cmp(a, b) == -1
    assert rational_cmp(a, a) == 0


def test_format_rational():
    assert format_rational(Fraction(4, 6)) == "2/3"
    assert format_rational(1) == "1/1"
    assert format_rational(Fraction(-3, 9)) == "-1/3"


@given(fractions)
def test_format_parse_round_trip(q):
    assert parse_rational(format_rational(q)) == q


def test_parse_rational_accepts_integers():
    assert parse_rational(" 7 ") == 7


def test_to_float_huge_operands():
    q = Fraction(binomial(2000, 1000) + 1, 2 * binomial(2000, 1000))
    assert to_float(q) == pytest.approx(0.5, abs=1e-15)
