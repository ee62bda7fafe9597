from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dickedepth import (
    Bipartition,
    DomainError,
    Status,
    p_threshold,
    schmidt_spectrum,
    twin_fock_extrapolation,
    verdict_single,
)
from dickedepth.schmidt import THRESHOLD_CSV_COLUMNS, p_threshold_exhaustive, threshold_table
from oracles import enumerate_p


@st.composite
def split(draw, max_n=60):
    N = draw(st.integers(2, max_n))
    r = draw(st.integers(0, N))
    m0 = draw(st.integers(1, N - 1))
    return N, r, m0


# -- spectra ------------------------------------------------------------------

def test_spectrum_bell_pair():
    s = schmidt_spectrum(2, 1, 1)
    assert s.as_dict() == {0: Fraction(1, 2), 1: Fraction(1, 2)}


def test_spectrum_twin_fock_four():
    assert schmidt_spectrum(4, 2, 2).values() == [Fraction(1, 6), Fraction(2, 3), Fraction(1, 6)]


@pytest.mark.parametrize("N,m0", [(5, 2), (9, 1), (12, 6)])
def test_spectrum_product_targets(N, m0):
    assert schmidt_spectrum(N, 0, m0).values() == [1]
    assert schmidt_spectrum(N, N, m0).values() == [1]


def test_spectrum_normalized_everywhere():
    for N in range(2, 61):
        for r in range(N + 1):
            for m0 in range(1, N):
                assert sum(schmidt_spectrum(N, r, m0).values()) == 1


@given(split())
def test_spectrum_swap_symmetry(case):
    N, r, m0 = case
    a = schmidt_spectrum(N, r, m0).as_dict()
    b = schmidt_spectrum(N, r, N - m0).as_dict()
    assert a == {r - j: lam for j, lam in b.items()}


@given(split())
def test_spectrum_unimodal(case):
    vals = schmidt_spectrum(*case).values()
    peak = vals.index(max(vals))
    assert all(x <= y for x, y in zip(vals[:peak], vals[1 : peak + 1]))
    assert all(x >= y for x, y in zip(vals[peak:], vals[peak + 1 :]))


@pytest.mark.parametrize("args", [(1, 0, 1), (4, 5, 2), (4, -1, 2), (4, 2, 0), (4, 2, 4)])
def test_spectrum_domain(args):
    with pytest.raises(DomainError):
        schmidt_spectrum(*args)


def test_bipartition():
    b = Bipartition(2, 5)
    assert b.N == 7 and b.swapped() == Bipartition(5, 2)
    with pytest.raises(DomainError):
        Bipartition(0, 3)


# -- thresholds ---------------------------------------------------------------

def test_threshold_examples():
    t = p_threshold(2, 1)
    assert t.value == Fraction(1, 2)
    t = p_threshold(4, 2)
    assert t.value == Fraction(2, 3)
    assert (t.arg_partition.m0, t.arg_j) == (2, 1)
    assert p_threshold(4, 1).value == Fraction(3, 4)
    assert p_threshold(10, 5).value == Fraction(5, 9)
    assert p_threshold(7, 3).value == Fraction(4, 7)
    assert p_threshold(60, 30).value == Fraction(30, 59)
    assert p_threshold(5, 0).value == 1
    assert float(p_threshold(4, 2)) == pytest.approx(2 / 3)


def test_threshold_matches_enumeration_small():
    for N in range(2, 25):
        for r in range(N + 1):
            t = p_threshold(N, r)
            assert (t.value, t.arg_partition.m0, t.arg_j) == enumerate_p(N, r)


@given(st.integers(2, 400).flatmap(lambda N: st.tuples(st.just(N), st.integers(0, N))))
def test_prefilter_agrees_with_exhaustive_scan(case):
    assert p_threshold(*case) == p_threshold_exhaustive(*case)


def test_threshold_flip_symmetry_and_range():
    for N in range(2, 61):
        for r in range(N + 1):
            p = p_threshold(N, r).value
            assert p == p_threshold(N, N - r).value
            assert Fraction(1, 2) <= p <= 1
            assert (p == 1) == (r in (0, N))


def test_twin_fock_closed_form():
    for N in range(4, 201, 2):
        assert p_threshold(N, N // 2).value == Fraction(N, 2 * (N - 1))


def test_threshold_minimized_at_half_filling():
    for N in range(2, 61):
        values = [p_threshold(N, r).value for r in range(N + 1)]
        low = min(values)
        assert {r for r, v in enumerate(values) if v == low} <= {N // 2, (N + 1) // 2}
        half = N // 2
        assert all(values[r] >= values[r + 1] for r in range(half))


def test_threshold_attained_by_reported_argmax():
    for N in range(2, 31):
        for r in range(N + 1):
            t = p_threshold(N, r)
            s = schmidt_spectrum(N, r, t.arg_partition.m0).as_dict()
            assert s[t.arg_j] == t.value


def test_threshold_domain():
    with pytest.raises(DomainError):
        p_threshold(1, 0)
    with pytest.raises(DomainError):
        p_threshold(4, 5)


def test_threshold_table():
    rows = threshold_table(4)
    assert [row["r"] for row in rows] == [0, 1, 2, 3, 4]
    assert tuple(rows[2]) == THRESHOLD_CSV_COLUMNS
    assert (rows[2]["p_num"], rows[2]["p_den"], rows[2]["m0_star"], rows[2]["j_star"]) == (2, 3, 2, 1)


# -- verdicts ------------------------------------------------------------------

def test_verdict_examples():
    v = verdict_single(4, 2, Fraction(7, 10))
    assert v.status is Status.CERTIFIED and v.certified
    assert v.margin == pytest.approx(0.7 - 2 / 3)
    assert verdict_single(4, 2, Fraction(2, 3)).status is Status.INCONCLUSIVE
    assert verdict_single(4, 0, 1).status is Status.INCONCLUSIVE
    assert Status.CERTIFIED.value == "certified_depth_N"


def test_verdict_is_strict_and_exact():
    p = p_threshold(60, 30).value
    just_above = Fraction(p.numerator * 10**20 + 1, p.denominator * 10**20)
    assert verdict_single(60, 30, p).status is Status.INCONCLUSIVE
    assert verdict_single(60, 30, just_above).status is Status.CERTIFIED


@given(st.integers(2, 40).flatmap(lambda N: st.tuples(st.just(N), st.integers(0, N))), st.fractions(0, 1), st.fractions(0, 1))
def test_verdict_monotone_in_population(case, a, b):
    lo, hi = sorted((a, b))
    if verdict_single(*case, lo).certified:
        assert verdict_single(*case, hi).certified


@pytest.mark.parametrize("n", [-0.1, 1.5])
def test_verdict_domain(n):
    with pytest.raises(DomainError):
        verdict_single(4, 2, n)


# -- extrapolation ---------------------------------------------------------------

def test_extrapolation_exact_line():
    # p_{N,N/2} = 1/2 + 1/(2(N-1)) is not exactly linear in 1/N, but close.
    samples, intercept = twin_fock_extrapolation(range(4, 61, 2))
    assert samples[0] == (4, pytest.approx(2 / 3))
    assert abs(intercept - 0.5) < 0.01


def test_extrapolation_two_points():
    _, intercept = twin_fock_extrapolation([100, 200])
    p100, p200 = 100 / 198, 200 / 398
    slope = (p100 - p200) / (1 / 100 - 1 / 200)
    assert intercept == pytest.approx(p200 - slope / 200, abs=1e-12)


@pytest.mark.parametrize("Ns", [[4], [4, 5], [2, 4], []])
def test_extrapolation_domain(Ns):
    with pytest.raises(DomainError):
        twin_fock_extrapolation(Ns)
