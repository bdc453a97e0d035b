"""
Linear-programming certificates in the F basis.

A polynomial ``f = sum f_i F_i`` certifies an order bound ``f(r) / f_0`` for
graphs whose non-trivial eigenvalues all satisfy ``f(theta) <= 0``, provided
``f(r) > 0``, ``f_0 > 0`` and every ``f_i >= 0``.  The bipartite version uses
the even parts of ``F_{2i}`` as polynomials in the squared eigenvalue.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Real
from typing import Sequence

import numpy as np

from .errors import CrossCheckFailure, MalformedSpectrum, NegativeSquaredEigenvalue, NotApplicable
from .orthopoly import PolynomialFamily, horner
from .quotient import QuotientMatrixSpec, spectrum

CERTIFICATE_RTOL = 1e-6


def _exact(values) -> bool:
    return all(isinstance(v, (int, Fraction)) for v in values)


def _total(values):
    values = list(values)
    return sum(values) if _exact(values) else math.fsum(values)


def _times_x(r: int, coeffs: list) -> list:
    """Multiply an F-basis coefficient vector by x."""
    out = [0] * (len(coeffs) + 1)
    for j, a in enumerate(coeffs):
        if not a:
            continue
        out[j + 1] += a
        if j == 1:
            out[0] += r * a
        elif j >= 2:
            out[j - 1] += (r - 1) * a
    return out


def to_f_basis(r: int, monomial: Sequence) -> tuple:
    """
    Rewrite ``sum a_k x^k`` (constant first) as ``sum f_i F_i``.

    Exact for int/Fraction input; float input is summed with ``math.fsum``.
    """
    monomial = list(monomial)
    if not monomial:
        return ()
    power: list = [1]
    parts: list[list] = [[] for _ in monomial]
    for k, a in enumerate(monomial):
        if k:
            power = _times_x(r, power)
        for i, p in enumerate(power):
            parts[i].append(a * p) if p else None
    return tuple(_total(col) if col else 0 for col in parts)


@dataclass(frozen=True)
class FBasisPolynomial:
    """``sum_i coeffs[i] * F_i(x)`` for valency ``r``."""

    r: int
    coeffs: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @classmethod
    def from_monomial(cls, r: int, monomial: Sequence) -> "FBasisPolynomial":
        return cls(r, to_f_basis(r, monomial))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def f0(self):
        return self.coeffs[0] if self.coeffs else 0

    def evaluate(self, x):
        """Clenshaw-free evaluation: run the F recurrence alongside the sum."""
        x = np.asarray(x, dtype=float) if not isinstance(x, (int, Fraction)) else x
        total = 0
        prev, cur = None, None
        for j, a in enumerate(self.coeffs):
            if j == 0:
                cur = 1 + 0 * x
            elif j == 1:
                prev, cur = cur, x
            else:
                factor = self.r if j == 2 else self.r - 1
                prev, cur = cur, x * cur - factor * prev
            total = total + a * cur
        return total

    __call__ = evaluate

    def to_monomial(self) -> tuple:
        fam = PolynomialFamily(self.r)
        out: list = [0] * len(self.coeffs)
        cols: list[list] = [[] for _ in self.coeffs]
        for j, a in enumerate(self.coeffs):
            for d, p in enumerate(fam.coefficients("F", j)):
                if p:
                    cols[d].append(a * p)
        for d, col in enumerate(cols):
            out[d] = _total(col) if col else 0
        return tuple(out)


def _poly_mul(a: Sequence[float], b: Sequence[float]) -> list[float]:
    return [math.fsum(a[i] * b[k - i] for i in range(len(a)) if 0 <= k - i < len(b))
            for k in range(len(a) + len(b) - 1)]


def theorem5_certificate(r: int, t: int, c: Real) -> FBasisPolynomial:
    """
    The extremal polynomial ``(1/c)(x - lambda_2) prod_{i>=3} (x - lambda_i)^2``
    built from the spectrum of T(r,t,c), expressed in the F basis.
    """
    from .bounds import general_bound

    spec = QuotientMatrixSpec(r, t, c, "general")
    eig = spectrum(spec).eigenvalues
    poly = [-float(eig[1]) / float(c), 1.0 / float(c)]
    for lam in eig[2:]:
        poly = _poly_mul(poly, [lam * lam, -2.0 * lam, 1.0])
    f = FBasisPolynomial.from_monomial(r, poly)
    ratio = float(f(r)) / f.f0
    expected = float(general_bound(r, t, c))
    if abs(ratio - expected) > CERTIFICATE_RTOL * expected:
        raise CrossCheckFailure(f"certificate ratio {ratio!r} vs closed form {expected!r}")
    return f


@dataclass(frozen=True)
class Condition:
    name: str
    holds: bool
    value: float


@dataclass(frozen=True)
class CertificateReport:
    conditions: tuple[Condition, ...]
    bound: float | None

    @property
    def applicable(self) -> bool:
        return all(c.holds for c in self.conditions)

    @property
    def failures(self) -> list[Condition]:
        return [c for c in self.conditions if not c.holds]

    def as_dict(self) -> dict:
        return {
            "applicable": self.applicable,
            "bound": self.bound,
            "conditions": [{"name": c.name, "holds": c.holds, "value": c.value}
                           for c in self.conditions],
        }


def _coefficient_conditions(coeffs, tol) -> list[Condition]:
    out = [Condition("f_0 > 0", float(coeffs[0]) > 0, float(coeffs[0]))]
    out += [Condition(f"f_{j} >= 0", float(a) >= -tol, float(a))
            for j, a in enumerate(coeffs) if j]
    return out


def _check_descending(values, top, what):
    values = [float(v) for v in values]
    if not values:
        raise MalformedSpectrum(f"empty {what}")
    if abs(values[0] - top) > 1e-9 * max(1.0, top):
        raise MalformedSpectrum(f"{what} must start with {top}, got {values[0]}")
    if any(b >= a for a, b in zip(values, values[1:])):
        raise MalformedSpectrum(f"{what} must be strictly descending")
    return values


def verify_general_lp(f: FBasisPolynomial, distinct_eigenvalues: Sequence[float]) -> CertificateReport:
    """Check ``f`` against a distinct spectrum ``r = theta_0 > theta_1 > ...``."""
    values = _check_descending(distinct_eigenvalues, float(f.r), "spectrum")
    fr = float(f(f.r))
    tol = 1e-9 * max(1.0, abs(fr))
    conds = [Condition("f(r) > 0", fr > 0, fr)]
    for i, theta in enumerate(values[1:], start=1):
        v = float(f(theta))
        conds.append(Condition(f"f(theta_{i}) <= 0", v <= tol, v))
    conds += _coefficient_conditions(f.coeffs, tol)
    report = CertificateReport(tuple(conds), None)
    if report.applicable:
        report = CertificateReport(tuple(conds), fr / float(f.f0))
    return report


# -- bipartite basis ------------------------------------------------------------

def bipartite_basis_coefficients(fam: PolynomialFamily, i: int, parity: int) -> tuple[int, ...]:
    """
    Coefficients in y of the even (parity 0) or odd (parity 1) part of
    F_{2i+parity}, written as ``x^parity * P(x^2)``.
    """
    coeffs = fam.coefficients("F", 2 * i + parity)
    return tuple(coeffs[parity::2])


def _horner_matrix(coeffs, Y: np.ndarray) -> np.ndarray:
    acc = np.zeros_like(Y, dtype=float)
    eye = np.eye(Y.shape[0])
    for a in reversed(coeffs):
        acc = acc @ Y + a * eye
    return acc


def evaluate_bipartite_basis(fam: PolynomialFamily, i: int, y, parity: int = 0):
    """Evaluate the i-th even (or odd) bipartite basis polynomial at a scalar or square matrix."""
    coeffs = bipartite_basis_coefficients(fam, i, parity)
    if isinstance(y, np.ndarray) and y.ndim == 2:
        return _horner_matrix(coeffs, y)
    return horner(coeffs, y)


@dataclass(frozen=True)
class EvenBasisPolynomial:
    """``sum_i coeffs[i] * P_i(y)`` where ``F_{2i}(x) = P_i(x^2)``."""

    r: int
    coeffs: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @property
    def f0(self):
        return self.coeffs[0] if self.coeffs else 0

    def evaluate(self, y):
        fam = PolynomialFamily(self.r)
        return _total(a * evaluate_bipartite_basis(fam, i, y) for i, a in enumerate(self.coeffs)) \
            if not isinstance(y, np.ndarray) else sum(
                a * evaluate_bipartite_basis(fam, i, y) for i, a in enumerate(self.coeffs))

    __call__ = evaluate


def verify_bipartite_lp(f: EvenBasisPolynomial, squared_spectrum: Sequence[float]) -> CertificateReport:
    """
    Check ``f`` against distinct squared eigenvalues ``r^2 = tau_0^2 > tau_1^2 > ...``;
    the bound is ``2 f(r^2) / f_0``.
    """
    values = [float(v) for v in squared_spectrum]
    for v in values:
        if v < 0:
            raise NegativeSquaredEigenvalue(f"squared eigenvalue {v} is negative")
    r2 = float(f.r * f.r)
    values = _check_descending(values, r2, "squared spectrum")
    fr = float(f(f.r * f.r))
    tol = 1e-9 * max(1.0, abs(fr))
    conds = [Condition("f(r^2) > 0", fr > 0, fr)]
    for i, y in enumerate(values[1:], start=1):
        v = float(f(y))
        conds.append(Condition(f"f(tau_{i}^2) <= 0", v <= tol, v))
    conds += _coefficient_conditions(f.coeffs, tol)
    report = CertificateReport(tuple(conds), None)
    if report.applicable:
        report = CertificateReport(tuple(conds), 2.0 * fr / float(f.f0))
    return report


@dataclass(frozen=True)
class EqualityDiagnostics:
    bound: float | None
    order: int
    girth: float
    required_girth: int
    traces: tuple[tuple[int, float, float], ...]
    values: tuple[tuple[float, float], ...]

    @property
    def equality(self) -> bool:
        return self.bound is not None and abs(self.bound - self.order) <= 1e-9 * self.order

    @property
    def girth_ok(self) -> bool:
        return self.girth >= self.required_girth

    @property
    def traces_vanish(self) -> bool:
        return all(abs(a) <= 1e-8 and abs(b) <= 1e-8 for _, a, b in self.traces)

    @property
    def values_vanish(self) -> bool:
        return all(abs(v) <= 1e-8 for _, v in self.values)


def bipartite_equality_diagnostics(g, f: EvenBasisPolynomial) -> EqualityDiagnostics:
    """
    When a bipartite graph meets the bound of ``f`` with equality, the traces
    of ``f_j P_j(N N^T)`` and ``f_j P_j(N^T N)`` vanish for j >= 1, ``f`` vanishes
    at every non-trivial squared eigenvalue, and the girth is at least 2t+2
    where t is the degree of ``f``.
    """
    from .graphs import biadjacency, diameter_and_girth

    r = g.degree
    if r is None or r < 3:
        raise NotApplicable("equality diagnostics need an r-regular graph with r >= 3")
    if r != f.r:
        raise NotApplicable(f"graph degree {r} differs from certificate valency {f.r}")
    N = biadjacency(g).astype(float)
    fam = PolynomialFamily(r)
    left, right = N @ N.T, N.T @ N
    traces = tuple(
        (j, float(a * np.trace(evaluate_bipartite_basis(fam, j, left))),
         float(a * np.trace(evaluate_bipartite_basis(fam, j, right))))
        for j, a in enumerate(f.coeffs) if j
    )
    squares = sorted({round(v * v, 9) for v in g.spectrum.distinct if v >= -1e-9}, reverse=True)
    values = tuple((y, float(f(y))) for y in squares[1:])
    cert = verify_bipartite_lp(f, squares)
    _, girth = diameter_and_girth(g)
    t = len(f.coeffs) - 1
    return EqualityDiagnostics(cert.bound, g.n, girth, 2 * t + 2, traces, values)
