import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spectral_moore.errors import CrossCheckFailure, InvalidSpec
from spectral_moore.orthopoly import PolynomialFamily, largest_root
from spectral_moore.quotient import (
    QuotientMatrixSpec,
    SpectrumSummary,
    build_quotient,
    dense_eigenvalues,
    lambda2_of_quotient,
    polynomial_eigenvalues,
    spectrum,
)


def numpy_eigenvalues(spec):
    """Oracle: LAPACK on the unsymmetrized matrix."""
    return np.sort(np.linalg.eigvals(build_quotient(spec)).real)[::-1]


def test_build_examples():
    assert build_quotient(QuotientMatrixSpec(8, 2, 3)).tolist() == [[0, 8], [3, 5]]
    B = build_quotient(QuotientMatrixSpec(3, 4, 1, "bipartite"))
    assert B.tolist() == [[0, 3, 0, 0], [1, 0, 2, 0], [0, 1, 0, 2], [0, 0, 3, 0]]
    T = build_quotient(QuotientMatrixSpec(6, 3, Fraction(2, 3)), exact=True)
    assert T == [[0, 6, 0], [1, 0, 5], [0, Fraction(2, 3), Fraction(16, 3)]]


@pytest.mark.parametrize("kind", ["general", "bipartite"])
@pytest.mark.parametrize("r", [3, 4, 7])
def test_row_sums_exact(kind, r):
    for t in range(3, 8):
        for c in (Fraction(1, 3), 1, Fraction(5, 2), r):
            if c > r:
                continue
            rows = build_quotient(QuotientMatrixSpec(r, t, c, kind), exact=True)
            assert all(sum(row) == r for row in rows)


def test_spectrum_examples():
    assert np.allclose(spectrum(QuotientMatrixSpec(8, 2, 3)).eigenvalues, [8, -3])
    assert np.allclose(spectrum(QuotientMatrixSpec(3, 3, 1)).eigenvalues, [3, 1, -2])
    heawood = spectrum(QuotientMatrixSpec(3, 4, 1, "bipartite"))
    assert np.allclose(heawood.eigenvalues, [3, math.sqrt(2), -math.sqrt(2), -3])
    assert heawood.lambda2 == pytest.approx(math.sqrt(2))


def test_lambda2_examples():
    assert lambda2_of_quotient(QuotientMatrixSpec(3, 3, 1)) == pytest.approx(1, abs=1e-12)
    assert lambda2_of_quotient(QuotientMatrixSpec(8, 3, Fraction(7, 6))) == pytest.approx(2.09503, abs=1e-5)


@pytest.mark.parametrize("args", [
    (3, 2, 5), (3, 1, 1), (3, 3, 0), (3, 3, -1), (1, 3, 1), (3, 2, 1, "bipartite"), (3, 4, 1, "odd"),
])
def test_invalid_specs(args):
    with pytest.raises(InvalidSpec):
        QuotientMatrixSpec(*args)


def test_bipartite_t3_has_spectrum_r_zero_minus_r():
    assert np.allclose(spectrum(QuotientMatrixSpec(5, 3, 1, "bipartite")).eigenvalues, [5, 0, -5])


def test_bipartite_c_equal_r_splits_off_a_zero_block():
    # the last super-diagonal r - c vanishes, so 0 can repeat
    s = spectrum(QuotientMatrixSpec(4, 4, 4, "bipartite"))
    assert np.allclose(s.eigenvalues, [4, 0, 0, -4], atol=1e-9)


def test_extrapolated_flag():
    assert QuotientMatrixSpec(3, 2, 1).extrapolated
    assert not QuotientMatrixSpec(3, 3, 1).extrapolated


GRID = [(r, t, c, kind) for kind in ("general", "bipartite") for r in (3, 4, 5, 8, 10)
        for t in range(2 if kind == "general" else 3, 9)
        for c in (0.1, 0.25, 0.5, 1, 1.5, 2, r) if c <= r]


@pytest.mark.parametrize("r,t,c,kind", GRID)
def test_polynomial_vs_dense_vs_lapack(r, t, c, kind):
    spec = QuotientMatrixSpec(r, t, c, kind)
    poly = polynomial_eigenvalues(spec)
    assert np.max(np.abs(poly - dense_eigenvalues(spec))) < 1e-8
    assert np.max(np.abs(poly - numpy_eigenvalues(spec))) < 1e-6
    if kind == "general" or c < r:
        assert np.all(np.diff(poly) < -1e-9)  # distinct


@pytest.mark.parametrize("r", [3, 4, 6, 10])
@pytest.mark.parametrize("t", range(3, 7))
def test_lambda2_monotone_in_c(r, t):
    cs = np.linspace(0.1, r, 40)
    lam = [lambda2_of_quotient(QuotientMatrixSpec(r, t, float(c))) for c in cs]
    assert all(b < a for a, b in zip(lam, lam[1:]))
    fam = PolynomialFamily(r)
    one = lambda2_of_quotient(QuotientMatrixSpec(r, t, 1))
    assert one == pytest.approx(largest_root(fam, "G", t - 1).value, abs=1e-10)
    if t >= 3:
        floor = largest_root(fam, "G", t - 2).value
        assert min(lam) > floor


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 10), st.integers(3, 9), st.floats(0.01, 1.0))
def test_sampled_spectra_cross_check(r, t, frac):
    for kind in ("general", "bipartite"):
        s = spectrum(QuotientMatrixSpec(r, t, frac * r, kind))
        assert len(s) == t
        assert s.lambda1 == pytest.approx(r, abs=1e-9)
        assert sum(m for _, m in s.multiplicities) == t


def test_cross_check_alarm(monkeypatch):
    import spectral_moore.quotient as q

    monkeypatch.setattr(q, "dense_eigenvalues", lambda spec: polynomial_eigenvalues(spec) + 1e-6)
    with pytest.raises(CrossCheckFailure):
        q.spectrum(QuotientMatrixSpec(3, 4, 1))


def test_summary_fields():
    s = SpectrumSummary(np.array([3.0, 1.0, 1.0 + 1e-9, -2.0]))
    assert s.multiplicities[1][1] == 2
    assert s.beta == 2.0
    assert s.lambda_min == -2.0
