import itertools
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nagata.cluster import (
    UNIT_LAST,
    UNIT_VALUE,
    ContractedDivisor,
    WeightedCluster,
    chain_cluster,
    cluster_from_cf,
    colength,
    compare_roundoff,
    continued_fraction,
    relative_zariski,
    sum_of_squares,
    unload,
    valuation_divisor,
    volume,
)
from nagata.errors import InvalidCluster, InvalidParameter, NonIntegral

rationals = st.builds(
    lambda q, extra: Fraction(q + extra, q),
    st.integers(1, 40),
    st.integers(1, 200),
).filter(lambda t: t > 1)


def last_point(c, m):
    return ContractedDivisor((Fraction(0),) * (c.s - 1) + (Fraction(m),))


# construction
def test_continued_fraction():
    assert continued_fraction(Fraction(17, 5)) == [3, 2, 2]
    assert continued_fraction(Fraction(3, 2)) == [1, 2]
    assert continued_fraction(Fraction(7)) == [7]


def test_three_halves_cluster():
    c = cluster_from_cf(Fraction(3, 2))
    assert c.weights == (1, Fraction(1, 2), Fraction(1, 2))
    assert c.proximate_to(2) == (0, 1)  # p_3 is a satellite
    assert cluster_from_cf(Fraction(3, 2), UNIT_LAST).weights == (2, 1, 1)


def test_seventeen_fifths_blocks():
    c = cluster_from_cf(Fraction(17, 5), UNIT_LAST)
    assert c.weights == (5, 5, 5, 2, 2, 1, 1)
    # block 2 = p_4, p_5, p_6 proximate to p_3; block 3 = p_6, p_7 proximate to p_5
    assert [c.proximate_to(i) for i in range(7)] == [(), (0,), (1,), (2,), (2, 3), (2, 4), (4, 5)]


@given(rationals)
def test_cluster_laws(t):
    c = cluster_from_cf(t)
    assert sum_of_squares(c) == t
    assert c.s == sum(continued_fraction(t))
    assert c.satisfies_proximity_equalities()
    last = cluster_from_cf(t, UNIT_LAST)
    assert last.weights[-1] == 1 and all(w.denominator == 1 for w in last.weights)
    assert sum_of_squares(last) == t.numerator * t.denominator


def test_bad_inputs():
    with pytest.raises(InvalidParameter):
        cluster_from_cf(1)
    with pytest.raises(InvalidParameter):
        cluster_from_cf(2, "weird")
    with pytest.raises(InvalidCluster):
        WeightedCluster((Fraction(1), Fraction(1)), (None, 0))
    with pytest.raises(InvalidCluster):
        WeightedCluster((Fraction(-1),), (None,))


# unloading
def test_d1_is_minus_e1():
    c = cluster_from_cf(Fraction(3, 2), UNIT_LAST)
    assert unload(c, last_point(c, 1)).divisor == ContractedDivisor.from_e_coefficients([-1, 0, 0])


def test_unload_trace_and_examples():
    c = cluster_from_cf(Fraction(3, 2), UNIT_LAST)
    res = unload(c, last_point(c, 1))
    # rho_1 = -1 at the start; each step pushes the defect one point further
    assert res.steps == [0, 1, 2]
    assert res.mbar == (1, 0, 0)
    chain = chain_cluster(2)
    assert unload(chain, ContractedDivisor((0, 3))).mbar == (2, 1)


@pytest.mark.parametrize("t", [Fraction(3, 2), Fraction(2), Fraction(7, 5), Fraction(17, 5), Fraction(11, 4)])
def test_unload_idempotent_and_schedule_free(t):
    c = cluster_from_cf(t, UNIT_LAST)
    for m in [1, 2, 5, 13, 40]:
        base = unload(c, last_point(c, m)).divisor
        assert unload(c, base).divisor == base and not unload(c, base).steps
        assert all(x >= 0 for x in base.excesses(c))
        for seed in range(10):
            assert unload(c, last_point(c, m), rng=random.Random(seed)).divisor == base


@pytest.mark.parametrize("t", [Fraction(3, 2), Fraction(2), Fraction(7, 5), Fraction(17, 5)])
def test_unload_matches_valuation_divisor_when_integral(t):
    c = cluster_from_cf(t, UNIT_LAST)
    dv = valuation_divisor(c)
    hits = 0
    for m in range(1, 200):
        if dv.scale(m).is_integral():
            hits += 1
            assert unload(c, last_point(c, m)).divisor == dv.scale(m)
    assert hits > 0


def test_three_halves_periodic_divisors():
    c = cluster_from_cf(Fraction(3, 2), UNIT_LAST)
    for k in range(1, 8):
        assert unload(c, last_point(c, 6 * k)).mbar == (2 * k, k, k)


def test_valuation_divisor():
    c = cluster_from_cf(Fraction(3, 2), UNIT_LAST)
    dv = valuation_divisor(c)
    assert dv.mbar == (Fraction(1, 3), Fraction(1, 6), Fraction(1, 6))
    assert dv.excesses(c)[:-1] == [0, 0]
    with pytest.raises(InvalidCluster):
        valuation_divisor(WeightedCluster((Fraction(1), Fraction(2)), (None, None)))


# colength and volume
def brute_colength(t: Fraction, m: int) -> int:
    """Monomials ``x^a y^b`` with ``q a + p b < m``: the valuation ideal of ``v(x) = q, v(y) = p``."""
    p_, q_ = t.numerator, t.denominator
    return sum(1 for a in range(m + 1) for b in range(m + 1) if q_ * a + p_ * b < m)


@pytest.mark.parametrize("t", [Fraction(3, 2), Fraction(2), Fraction(7, 5), Fraction(5, 3), Fraction(3)])
def test_colength_against_monomial_count(t):
    # for these t the divisorial valuation is monomial in (x, y), so colengths are lattice point counts
    c = cluster_from_cf(t, UNIT_LAST)
    for m in range(0, 60):
        assert colength(c, m) == brute_colength(t, m)


def test_colength_closed_form():
    c = cluster_from_cf(Fraction(3, 2), UNIT_LAST)
    assert [colength(c, 6 * k) for k in range(1, 5)] == [5, 16, 33, 56]
    assert all(colength(c, 6 * k) == 3 * k * k + 2 * k for k in range(1, 20))


@pytest.mark.parametrize("t", [Fraction(3, 2), Fraction(2), Fraction(7, 5)])
def test_volume_law(t):
    c = cluster_from_cf(t, UNIT_LAST)
    vol = volume(c)
    for m in range(1, 601):
        assert abs(Fraction(2 * colength(c, m), m * m) - vol) <= Fraction(8, m)


def test_colength_errors():
    with pytest.raises(NonIntegral):
        colength(cluster_from_cf(Fraction(3, 2)), 4)
    with pytest.raises(NonIntegral):
        colength(cluster_from_cf(Fraction(3, 2), UNIT_LAST), Fraction(1, 2))


def test_compare_roundoff_keys():
    out = compare_roundoff(cluster_from_cf(Fraction(3, 2), UNIT_LAST), 6)
    assert out["unloaded"]["total"] == out["m_times_Dv"]["total"] == ["-2", "-1", "-1"]


# relative Zariski decomposition
def check_decomposition(c, d, p, n):
    assert p + n == d
    strict = n.strict_coefficients(c)
    dots = p.excesses(c)
    assert all(a >= 0 for a in strict)
    assert all(x >= 0 for x in dots)
    assert all(dots[i] == 0 for i in range(c.s) if strict[i] != 0)


def small_clusters():
    out = []
    for t in [Fraction(2), Fraction(3), Fraction(3, 2), Fraction(5, 2), Fraction(4, 3), Fraction(5), Fraction(7, 3)]:
        for norm in (UNIT_VALUE, UNIT_LAST):
            c = cluster_from_cf(t, norm)
            if c.s <= 5:
                out.append(c)
    return out


def test_relative_zariski_properties():
    rng = random.Random(7)
    for c in small_clusters():
        for _ in range(40):
            d = ContractedDivisor(tuple(Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(c.s)))
            p, n = relative_zariski(c, d)
            check_decomposition(c, d, p, n)
            # idempotent on the positive part
            assert relative_zariski(c, p) == (p, ContractedDivisor.zero(c.s))


def grid_solutions(c, mbar):
    """All N = sum a_i Et_i, a_i in (1/12)Z ∩ [0, 3], giving a valid decomposition of D."""
    rows = np.array(c.strict_rows(), dtype=np.int64)
    gram = -rows @ rows.T
    d = ContractedDivisor(tuple(Fraction(x) for x in mbar))
    rho12 = np.array([12 * x for x in d.excesses(c)], dtype=np.int64)
    grid = np.array(list(itertools.product(range(37), repeat=c.s)), dtype=np.int64)  # 12 a
    dots = rho12[None, :] - grid @ gram.T  # 12 (P . Et_i)
    ok = (dots >= 0).all(axis=1) & ((grid == 0) | (dots == 0)).all(axis=1)
    return [tuple(Fraction(int(x), 12) for x in row) for row in grid[ok]]


@pytest.mark.parametrize("t", [Fraction(2), Fraction(3), Fraction(3, 2)])
def test_relative_zariski_grid_oracle(t):
    rng = random.Random(int(t * 12))
    for norm in (UNIT_VALUE, UNIT_LAST):
        c = cluster_from_cf(t, norm)
        assert c.s in (2, 3)
        for trial in range(25):
            mbar = [rng.randint(-3, 3) for _ in range(c.s)]
            _, n = relative_zariski(c, ContractedDivisor(tuple(mbar)))
            expected = n.strict_coefficients(c)
            sols = grid_solutions(c, mbar)
            on_grid = all((12 * a).denominator == 1 and 0 <= a <= 3 for a in expected)
            assert sols == ([tuple(expected)] if on_grid else [])


@pytest.mark.parametrize("t", [Fraction(3, 2), Fraction(2), Fraction(7, 5), Fraction(17, 5), Fraction(5, 2)])
def test_zariski_of_last_exceptional_is_valuation_divisor(t):
    c = cluster_from_cf(t, UNIT_LAST)
    p, n = relative_zariski(c, ContractedDivisor.from_e_coefficients([0] * (c.s - 1) + [-1]))
    assert p == valuation_divisor(c)
