"""
Tridiagonal quotient matrices T(r,t,c) and B(r,t,c) and their spectra.

T(r,t,c) is the distance-partition quotient of a hypothetical r-regular graph
whose last layer is entered with c edges; B(r,t,c) is its bipartite analogue.
Spectra come from the factored characteristic polynomials

    det(xI - T) = (x - r) (G_{t-1} + (c-1) G_{t-2})
    det(xI - B) = (x^2 - r^2) (H_{t-2} + (c-1) H_{t-4})

and are cross-checked against a Jacobi eigensolve of the symmetrized matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Real

import numpy as np

from .errors import CrossCheckFailure, InvalidSpec
from .linalg import jacobi_eigvalsh, symmetrize_tridiagonal
from .orthopoly import DEFAULT_TOL, PolynomialFamily, combination_chain, largest_root_of_combination

KINDS = ("general", "bipartite")
CROSS_CHECK_TOL = 1e-8
MULTIPLICITY_GAP = 1e-7


@dataclass(frozen=True)
class QuotientMatrixSpec:
    r: int
    t: int
    c: Real
    kind: str = "general"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidSpec(f"kind must be one of {KINDS}, got {self.kind!r}")
        if int(self.r) != self.r or self.r < 2:
            raise InvalidSpec(f"r must be an integer >= 2, got {self.r!r}")
        min_t = 2 if self.kind == "general" else 3
        if int(self.t) != self.t or self.t < min_t:
            raise InvalidSpec(f"{self.kind} quotient needs integer t >= {min_t}, got {self.t!r}")
        if not 0 < self.c <= self.r:
            raise InvalidSpec(f"c must satisfy 0 < c <= r = {self.r}, got {self.c!r}")

    @property
    def extrapolated(self) -> bool:
        """t = 2 sits below the stated range of the bound theorem."""
        return self.kind == "general" and self.t == 2

    @property
    def combination(self) -> str:
        return "G" if self.kind == "general" else "H"


@dataclass(frozen=True)
class SpectrumSummary:
    """Eigenvalues sorted descending, repeated according to multiplicity."""

    eigenvalues: np.ndarray = field(repr=False)

    @property
    def lambda1(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def lambda2(self) -> float:
        return float(self.eigenvalues[1])

    @property
    def lambda_min(self) -> float:
        return float(self.eigenvalues[-1])

    @property
    def beta(self) -> float:
        return max(abs(self.lambda2), abs(self.lambda_min))

    @property
    def multiplicities(self) -> list[tuple[float, int]]:
        """Distinct eigenvalues with multiplicities, grouped at gap 1e-7."""
        groups: list[list[float]] = []
        for v in self.eigenvalues:
            if groups and groups[-1][-1] - v <= MULTIPLICITY_GAP:
                groups[-1].append(float(v))
            else:
                groups.append([float(v)])
        return [(float(np.mean(g)), len(g)) for g in groups]

    @property
    def distinct(self) -> list[float]:
        return [v for v, _ in self.multiplicities]

    def __len__(self) -> int:
        return len(self.eigenvalues)


def diagonals(spec: QuotientMatrixSpec) -> tuple[list, list, list]:
    """Exact (sub, diag, super) diagonals; entries are int or Fraction."""
    r, t = spec.r, spec.t
    c = Fraction(spec.c) if not isinstance(spec.c, float) else spec.c
    if spec.kind == "general":
        sub = [1] * (t - 2) + [c]
        diag = [0] * (t - 1) + [r - c]
        sup = [r] + [r - 1] * (t - 2)
    else:
        sub = [1] * (t - 3) + [c, r]
        diag = [0] * t
        sup = [r] + [r - 1] * (t - 3) + [r - c]
    return sub, diag, sup


def build_quotient(spec: QuotientMatrixSpec, exact: bool = False):
    """
    The t x t quotient matrix.

    With ``exact=True`` a list of rows of ints/Fractions is returned so that
    row sums can be checked without rounding (c must then be int/Fraction).
    """
    sub, diag, sup = diagonals(spec)
    t = spec.t
    if exact:
        rows = [[Fraction(0)] * t for _ in range(t)]
        for i in range(t):
            rows[i][i] = Fraction(diag[i])
        for i in range(t - 1):
            rows[i][i + 1] = Fraction(sup[i])
            rows[i + 1][i] = Fraction(sub[i])
        return rows
    M = np.diag(np.array(diag, dtype=float))
    M += np.diag(np.array(sup, dtype=float), 1)
    M += np.diag(np.array(sub, dtype=float), -1)
    return M


def polynomial_eigenvalues(spec: QuotientMatrixSpec, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Eigenvalues from the factored characteristic polynomial, descending."""
    roots = combination_chain(spec.r, spec.combination, spec.t, float(spec.c)).roots(tol)
    extra = [float(spec.r)] if spec.kind == "general" else [float(spec.r), -float(spec.r)]
    return np.sort(np.concatenate([extra, roots]))[::-1]


def dense_eigenvalues(spec: QuotientMatrixSpec) -> np.ndarray:
    """Jacobi eigenvalues of the symmetrized quotient matrix, descending."""
    sub, diag, sup = diagonals(spec)
    S = symmetrize_tridiagonal([float(v) for v in sub], [float(v) for v in diag],
                               [float(v) for v in sup])
    return jacobi_eigvalsh(S)


def spectrum(spec: QuotientMatrixSpec, tol: float = DEFAULT_TOL) -> SpectrumSummary:
    poly = polynomial_eigenvalues(spec, tol)
    dense = dense_eigenvalues(spec)
    gap = float(np.max(np.abs(poly - dense)))
    if gap > CROSS_CHECK_TOL:
        raise CrossCheckFailure(
            f"{spec}: factored-polynomial and Jacobi eigenvalues differ by {gap:.3e}"
        )
    return SpectrumSummary(poly)


def lambda2_of_quotient(spec: QuotientMatrixSpec, tol: float = DEFAULT_TOL) -> float:
    lam2 = spectrum(spec, tol).lambda2
    fam = PolynomialFamily(spec.r)
    direct = largest_root_of_combination(fam, spec.combination, spec.t, float(spec.c), tol).value
    if abs(direct - lam2) > 1e-10:
        raise CrossCheckFailure(f"{spec}: lambda2 {lam2!r} vs largest combination root {direct!r}")
    return lam2
