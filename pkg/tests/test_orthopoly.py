import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spectral_moore.errors import CoefficientOverflow
from spectral_moore.orthopoly import (
    PolynomialFamily,
    bannai_ito_window,
    chain,
    combination_chain,
    horner,
    largest_root,
    largest_root_of_combination,
    orthogonality_defect,
)

valencies = st.integers(min_value=3, max_value=10)


def tree_walks(r, length):
    """Non-backtracking walks of a given length from the root of the r-regular tree."""
    # every step after the first has r - 1 choices; count by explicit enumeration
    def extend(depth, came_back_allowed_children):
        if depth == length:
            return 1
        return sum(extend(depth + 1, r - 1) for _ in range(came_back_allowed_children))
    return extend(0, r) if length else 1


def test_coefficient_seed_rows():
    fam = PolynomialFamily(3)
    assert fam.coefficients("F", 0) == (1,)
    assert fam.coefficients("F", 1) == (0, 1)
    assert fam.coefficients("F", 2) == (-3, 0, 1)
    assert fam.coefficients("G", 1) == (1, 1)
    assert fam.coefficients("H", 2) == (-2, 0, 1)


def test_small_values():
    fam = PolynomialFamily(3)
    assert fam.F(2, 0.0) == -3
    assert fam.F(1, 7.0) == 7
    assert fam.F(4, 3.0) == tree_walks(3, 4) == 24
    assert fam.G(2, 1.0) == 0
    assert abs(fam.H(2, math.sqrt(2))) < 1e-12


def test_table_value_is_near_root():
    assert abs(PolynomialFamily(4).G(3, 2.25342)) < 1e-3


@pytest.mark.parametrize("r", range(3, 11))
def test_f_at_r_counts_tree_walks(r):
    fam = PolynomialFamily(r)
    for j in range(1, 13):
        assert horner(fam.coefficients("F", j), r) == r * (r - 1) ** (j - 1)
    for j in range(1, 6):
        assert tree_walks(r, j) == r * (r - 1) ** (j - 1)


@pytest.mark.parametrize("r", range(3, 11))
def test_g_at_r_is_moore_bound(r):
    fam = PolynomialFamily(r)
    for D in range(1, 9):
        assert horner(fam.coefficients("G", D), r) == 1 + sum(r * (r - 1) ** i for i in range(D))


def test_summation_definitions():
    fam = PolynomialFamily(5)
    for j in range(10):
        F = [fam.coefficients("F", i) for i in range(j + 1)]
        G = [sum(p[d] for p in F if d < len(p)) for d in range(j + 1)]
        H = [sum(F[i][d] for i in range(j, -1, -2) if d < len(F[i])) for d in range(j + 1)]
        assert fam.coefficients("G", j) == tuple(G)
        assert fam.coefficients("H", j) == tuple(H)


def test_overflow_is_reported():
    fam = PolynomialFamily(12)
    with pytest.raises(CoefficientOverflow):
        fam.coefficients("F", 40)


@settings(max_examples=200, deadline=None)
@given(valencies, st.sampled_from("FGH"), st.integers(0, 14), st.floats(-6, 6))
def test_recurrence_matches_coefficients(r, family, j, x):
    fam = PolynomialFamily(r)
    direct = horner(fam.coefficients(family, j), x)
    # numpy's polyval as an independent evaluator of the exact coefficients
    oracle = np.polynomial.polynomial.polyval(x, fam.coefficients(family, j))
    rec = fam.evaluate(family, j, x)
    scale = max(1.0, abs(oracle), sum(abs(a) * abs(x) ** k for k, a in enumerate(fam.coefficients(family, j))))
    assert abs(rec - oracle) <= 1e-9 * scale
    assert abs(direct - oracle) <= 1e-9 * scale


@settings(max_examples=100, deadline=None)
@given(valencies, st.integers(1, 8), st.floats(0, 1))
def test_h_identity(r, j, u):
    fam = PolynomialFamily(r)
    two_q = 2 * math.sqrt(r - 1)
    x = -two_q + 2 * two_q * u
    lhs = fam.H(j, x) * (x * x - r * r)
    rhs = fam.F(j + 2, x) - (r - 1) ** 2 * fam.F(j, x)
    assert abs(lhs - rhs) <= 1e-8 * max(1.0, abs(rhs), (r - 1) ** (j + 2))


def test_largest_root_examples():
    assert abs(largest_root(PolynomialFamily(8), "G", 2).value - (-1 + math.sqrt(29)) / 2) < 1e-10
    assert abs(largest_root(PolynomialFamily(3), "F", 2).value - math.sqrt(3)) < 1e-10
    assert abs(largest_root(PolynomialFamily(3), "G", 5).value - 2.39309) < 1e-5


def test_root_record_bracket():
    rec = largest_root(PolynomialFamily(4), "G", 6)
    lo, hi = rec.bracket
    assert lo <= rec.value <= hi and hi - lo <= rec.tol
    p = PolynomialFamily(4)
    assert p.G(6, lo) * p.G(6, hi) <= 0


def test_h_identity_degree_zero_is_offset():
    # F_2 = x^2 - r does not follow the generic recurrence, so at j = 0 the
    # identity is off by exactly r - 1
    for r in range(3, 8):
        fam = PolynomialFamily(r)
        for x in (-1.3, 0.0, 2.2):
            lhs = fam.H(0, x) * (x * x - r * r)
            rhs = fam.F(2, x) - (r - 1) ** 2 * fam.F(0, x)
            assert rhs - lhs == pytest.approx(r - 1)


def test_combination_examples():
    assert abs(largest_root_of_combination(PolynomialFamily(3), "G", 3, 1).value - 1) < 1e-10
    assert abs(largest_root_of_combination(PolynomialFamily(8), "G", 3, 7 / 6).value - 2.09503) < 1e-5
    assert abs(largest_root_of_combination(PolynomialFamily(3), "H", 4, 2).value - 1) < 1e-10


@settings(max_examples=100, deadline=None)
@given(valencies, st.integers(2, 9), st.floats(0.05, 12.0), st.floats(-5, 5))
def test_combination_chain_matches_definition(r, t, c, x):
    fam = PolynomialFamily(r)
    g = combination_chain(r, "G", t, c).evaluate(x)
    want = fam.G(t - 1, x) + (c - 1) * fam.G(t - 2, x)
    assert abs(g - want) <= 1e-9 * max(1.0, abs(want), abs(fam.G(t - 1, x)) * c)
    if t >= 4:
        h = combination_chain(r, "H", t, c).evaluate(x)
        want = fam.H(t - 2, x) + (c - 1) * fam.H(t - 4, x)
        assert abs(h - want) <= 1e-9 * max(1.0, abs(want), abs(fam.H(t - 2, x)) * c)


@pytest.mark.parametrize("r", [3, 4, 7, 10])
def test_sturm_roots_match_numpy(r):
    fam = PolynomialFamily(r)
    for family in "FGH":
        for j in range(1, 9):
            ours = chain(r, family, j).roots()
            theirs = np.sort(np.roots(fam.coefficients(family, j)[::-1]).real)[::-1]
            assert np.allclose(ours, theirs, atol=1e-7)


@pytest.mark.parametrize("r", range(3, 11))
def test_interlacing_and_ordering(r):
    fam = PolynomialFamily(r)
    two_q = 2 * math.sqrt(r - 1)
    assert largest_root(fam, "G", 1).value == pytest.approx(-1, abs=1e-12)
    assert largest_root(fam, "F", 1).value == pytest.approx(0, abs=1e-12)
    for t in range(2, 9):
        big = chain(r, "G", t).roots()
        small = chain(r, "G", t - 1).roots()
        for k in range(t - 1):
            assert big[k + 1] < small[k] < big[k]
    for t in range(1, 9):
        lam = largest_root(fam, "G", t).value
        mu = largest_root(fam, "F", t).value
        lo, hi = bannai_ito_window(r, t)
        assert lam < mu < two_q
        assert lo < lam < hi


@pytest.mark.parametrize("r,i,j", [(3, 0, 1), (3, 1, 2), (4, 2, 3), (5, 0, 4)])
def test_orthogonality(r, i, j):
    assert abs(orthogonality_defect(PolynomialFamily(r), i, j, 4096)) < 1e-3


def test_orthogonality_norm_is_positive():
    # sanity check on the oracle itself: the diagonal inner product is not zero
    fam = PolynomialFamily(3)
    with pytest.raises(ValueError):
        orthogonality_defect(fam, 2, 2)
    two_q = 2 * math.sqrt(2)
    phi = (np.arange(4096) + 0.5) * math.pi / 4096
    x = two_q * np.cos(phi)
    val = float((fam.F(2, x) ** 2 * (two_q * np.sin(phi)) ** 2 / (9 - x * x)).sum() * math.pi / 4096)
    assert val > 0.1


def test_exact_fraction_evaluation_of_coefficients():
    # G_3 for r = 4 is x^3 + x^2 - 6x - 3
    fam = PolynomialFamily(4)
    assert fam.coefficients("G", 3) == (-3, -6, 1, 1)
    x = Fraction(1, 2)
    assert horner(fam.coefficients("G", 3), x) == x**3 + x**2 - 6 * x - 3


def test_bad_arguments():
    fam = PolynomialFamily(3)
    with pytest.raises(ValueError):
        PolynomialFamily(1)
    with pytest.raises(ValueError):
        fam.coefficients("Z", 2)
    with pytest.raises(ValueError):
        largest_root(fam, "H", 3)
    with pytest.raises(ValueError):
        largest_root_of_combination(fam, "G", 3, 0.0)
    with pytest.raises(ValueError):
        largest_root_of_combination(fam, "G", 3, math.inf)
