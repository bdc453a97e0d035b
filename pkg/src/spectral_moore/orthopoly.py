"""
The orthogonal polynomial families attached to an r-regular tree.

``F_j`` counts non-backtracking walks, ``G_j = F_0 + ... + F_j`` and
``H_j = F_j + F_{j-2} + ...``.  All three obey a three-term recurrence and so
does every combination whose largest root parametrizes a quotient matrix:

    G_{t-1} + (c-1) G_{t-2} = (x + c - 1) G_{t-2} - (r-1) G_{t-3}
    H_{t-2} + (c-1) H_{t-4} = x H_{t-3} - (r-c) H_{t-4}

Each such polynomial is therefore the characteristic polynomial of a
symmetric tridiagonal (Jacobi) matrix, described here by a :class:`Chain`
of diagonal entries and off-diagonal products.  Chains give stable
evaluation, Sturm counts and certified root isolation.

Exact monomial coefficients are kept in :class:`PolynomialFamily` as Python
integers that are checked against the signed 64-bit range.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import CoefficientOverflow, NoSignChange

INT64_MAX = 2**63 - 1
INT64_MIN = -(2**63)

DEFAULT_TOL = 1e-12
MAX_BISECTIONS = 200

FAMILIES = ("F", "G", "H")


def _check_int64(values: Sequence[int], what: str) -> tuple[int, ...]:
    for v in values:
        if v > INT64_MAX or v < INT64_MIN:
            raise CoefficientOverflow(f"{what}: coefficient {v} exceeds the int64 range")
    return tuple(values)


def horner(coeffs: Sequence, x):
    """Evaluate a monomial coefficient list (constant term first) at ``x``."""
    acc = 0 * x + 0.0
    for a in reversed(coeffs):
        acc = acc * x + a
    return acc


class PolynomialFamily:
    """
    The families ``F_j``, ``G_j`` and ``H_j`` for one valency ``r``.

    Coefficient tables grow on demand under a lock; evaluation through the
    recurrences needs no table at all and is safe to call concurrently.
    """

    def __init__(self, r: int):
        if int(r) != r or r < 2:
            raise ValueError(f"valency must be an integer >= 2, got {r!r}")
        self.r = int(r)
        self._lock = threading.Lock()
        self._F: list[tuple[int, ...]] = [(1,), (0, 1), (-self.r, 0, 1)]
        self._G: list[tuple[int, ...]] = []
        self._H: list[tuple[int, ...]] = []

    def __repr__(self) -> str:
        return f"PolynomialFamily(r={self.r})"

    # exact coefficient tables -------------------------------------------

    def _extend(self, j: int) -> None:
        with self._lock:
            F = self._F
            while len(F) <= j:
                k = len(F)
                shifted = (0,) + F[k - 1]
                prev = F[k - 2] + (0, 0)
                F.append(_check_int64(
                    [a - (self.r - 1) * b for a, b in zip(shifted, prev)],
                    f"F_{k}",
                ))
            while len(self._G) <= j:
                k = len(self._G)
                acc = [0] * (k + 1)
                for i in range(k + 1):
                    for d, a in enumerate(F[i]):
                        acc[d] += a
                self._G.append(_check_int64(acc, f"G_{k}"))
            while len(self._H) <= j:
                k = len(self._H)
                acc = [0] * (k + 1)
                for i in range(k, -1, -2):
                    for d, a in enumerate(F[i]):
                        acc[d] += a
                self._H.append(_check_int64(acc, f"H_{k}"))

    def coefficients(self, family: str, j: int) -> tuple[int, ...]:
        """Exact monomial coefficients of ``family_j``, constant term first."""
        if family not in FAMILIES:
            raise ValueError(f"unknown family {family!r}")
        if j < 0:
            raise ValueError("degree must be non-negative")
        self._extend(j)
        return {"F": self._F, "G": self._G, "H": self._H}[family][j]

    # floating point evaluation -------------------------------------------

    def F(self, j: int, x):
        return chain(self.r, "F", j).evaluate(x)

    def G(self, j: int, x):
        return chain(self.r, "G", j).evaluate(x)

    def H(self, j: int, x):
        return chain(self.r, "H", j).evaluate(x)

    def evaluate(self, family: str, j: int, x):
        return chain(self.r, family, j).evaluate(x)


@dataclass(frozen=True)
class Chain:
    """
    Monic polynomial ``p_n`` generated by

        p_0 = 1,  p_1 = x - diag[0],
        p_k = (x - diag[k-1]) p_{k-1} - prods[k-1] p_{k-2}.

    ``prods[0]`` is unused (kept as 0 so both tuples have length n).  With
    every product non-negative, ``p_n`` is the characteristic polynomial of a
    real symmetric tridiagonal matrix and all its roots are real.
    """

    diag: tuple[float, ...]
    prods: tuple[float, ...]

    @property
    def degree(self) -> int:
        return len(self.diag)

    def evaluate(self, x):
        x = np.asarray(x, dtype=float) if not np.isscalar(x) else float(x)
        p_prev, p = 0.0 * x, 1.0 + 0.0 * x
        for a, b in zip(self.diag, self.prods):
            p_prev, p = p, (x - a) * p - b * p_prev
        return p

    def residual(self, x: float, coeff_err: float = 0.0) -> tuple[float, float]:
        """
        ``p_n(x)`` and a running bound on how far it can sit from zero purely
        through rounding and through coefficient errors of size ``coeff_err``.
        """
        x = float(x)
        eps = np.finfo(float).eps
        p_prev, p = 0.0, 1.0
        e_prev, e = 0.0, 0.0
        for a, b in zip(self.diag, self.prods):
            lin, quad = abs(x - a), abs(b)
            new_e = (lin * e + quad * e_prev
                     + coeff_err * (abs(p) + abs(p_prev))
                     + 2 * eps * (lin * abs(p) + quad * abs(p_prev)))
            p_prev, p = p, (x - a) * p - b * p_prev
            e_prev, e = e, new_e
        return p, e

    def count_above(self, x: float) -> int:
        """Number of roots strictly greater than ``x`` (Sturm count via pivots)."""
        count = 0
        d = 1.0
        tiny = 1e-300
        for a, b in zip(self.diag, self.prods):
            d = (x - a) - b / d
            if d == 0.0:
                d = -tiny
            if d < 0.0:
                count += 1
        return count

    def gershgorin(self) -> tuple[float, float]:
        off = [math.sqrt(b) for b in self.prods[1:]] + [0.0]
        lo = hi = 0.0
        for k, a in enumerate(self.diag):
            radius = off[k] + (off[k - 1] if k > 0 else 0.0)
            lo = min(lo, a - radius)
            hi = max(hi, a + radius)
        return lo - 1.0, hi + 1.0

    def kth_largest_root(self, k: int, tol: float = DEFAULT_TOL) -> tuple[float, float]:
        """Bracket ``(lo, hi)`` of width <= tol around the k-th largest root."""
        lo, hi = self.gershgorin()
        for _ in range(MAX_BISECTIONS):
            if hi - lo <= tol:
                return lo, hi
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi:
                return lo, hi
            if self.count_above(mid) >= k:
                lo = mid
            else:
                hi = mid
        raise NoSignChange(f"bisection did not reach tol={tol} in {MAX_BISECTIONS} steps")

    def roots(self, tol: float = DEFAULT_TOL) -> np.ndarray:
        """All roots, descending, each isolated by Sturm bisection."""
        out = []
        for k in range(1, self.degree + 1):
            lo, hi = self.kth_largest_root(k, tol)
            out.append(0.5 * (lo + hi))
        return np.array(out)


def chain(r: int, family: str, j: int) -> Chain:
    """Recurrence data for ``F_j``, ``G_j`` or ``H_j``."""
    if j < 0:
        raise ValueError("degree must be non-negative")
    diag = [0.0] * j
    prods = [0.0] + [float(r - 1)] * (j - 1) if j else []
    if family == "F":
        if j >= 2:
            prods[1] = float(r)
    elif family == "G":
        if j >= 1:
            diag[0] = -1.0
    elif family != "H":
        raise ValueError(f"unknown family {family!r}")
    return Chain(tuple(diag), tuple(prods))


def combination_chain(r: int, kind: str, t: int, c: float) -> Chain:
    """
    Recurrence data for ``G_{t-1} + (c-1) G_{t-2}`` (kind ``"G"``) or
    ``H_{t-2} + (c-1) H_{t-4}`` (kind ``"H"``, with ``H_{-1} = 0``).
    """
    c = float(c)
    if kind == "G":
        if t < 2:
            raise ValueError("G combination needs t >= 2")
        base = chain(r, "G", t - 1)
        diag = list(base.diag)
        diag[-1] += 1.0 - c
        return Chain(tuple(diag), base.prods)
    if kind == "H":
        if t < 3:
            raise ValueError("H combination needs t >= 3")
        base = chain(r, "H", t - 2)
        prods = list(base.prods)
        if t >= 4:
            prods[-1] = float(r) - c
        return Chain(base.diag, tuple(prods))
    raise ValueError(f"unknown combination kind {kind!r}")


@dataclass(frozen=True)
class RootRecord:
    family: str
    degree: int
    c: float | None
    value: float
    bracket: tuple[float, float]
    tol: float

    def __float__(self) -> float:
        return self.value


def _largest_root(ch: Chain, r: int, tol: float) -> tuple[float, tuple[float, float]]:
    if tol <= 0:
        raise ValueError("tol must be positive")
    two_q = 2.0 * math.sqrt(r - 1)
    hi = two_q + 1e-9
    if ch.count_above(hi) != 0:
        hi = ch.gershgorin()[1]
    step = two_q / (4 * max(ch.degree, 1))
    lo = hi - step
    while ch.count_above(lo) == 0:
        lo -= step
        if lo < -hi:
            # largest root lies below the symmetric window; fall back to the
            # Gershgorin lower end, which bounds every root
            lo = ch.gershgorin()[0]
            if ch.count_above(lo) == 0:
                raise NoSignChange("no root found below the upper bracket end")
            break
    if ch.count_above(lo) == 1:
        f_lo, f_hi = ch.evaluate(lo), ch.evaluate(hi)
        if f_lo * f_hi > 0:
            raise NoSignChange(f"no sign change on ({lo}, {hi}): {f_lo}, {f_hi}")
    for _ in range(MAX_BISECTIONS):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if ch.count_above(mid) >= 1:
            lo = mid
        else:
            hi = mid
    else:
        raise NoSignChange(f"bisection did not reach tol={tol} in {MAX_BISECTIONS} steps")
    return 0.5 * (lo + hi), (lo, hi)


def largest_root(fam: PolynomialFamily, family: str, t: int,
                 tol: float = DEFAULT_TOL) -> RootRecord:
    """Largest root of ``F_t`` (mu^(t)) or ``G_t`` (lambda^(t))."""
    if t < 1:
        raise ValueError("t must be >= 1")
    if family not in ("F", "G"):
        raise ValueError("family must be 'F' or 'G'")
    value, bracket = _largest_root(chain(fam.r, family, t), fam.r, tol)
    return RootRecord(family, t, None, value, bracket, tol)


def largest_root_of_combination(fam: PolynomialFamily, kind: str, t: int, c: float,
                                tol: float = DEFAULT_TOL) -> RootRecord:
    """
    Largest root of ``G_{t-1} + (c-1)G_{t-2}`` or ``H_{t-2} + (c-1)H_{t-4}``,
    i.e. the second eigenvalue of T(r,t,c) or B(r,t,c).
    """
    if not (c > 0 and math.isfinite(c)):
        raise ValueError(f"c must be positive and finite, got {c!r}")
    value, bracket = _largest_root(combination_chain(fam.r, kind, t, c), fam.r, tol)
    return RootRecord("combination" + kind, t, float(c), value, bracket, tol)


def bannai_ito_window(r: int, t: int) -> tuple[float, float]:
    """Open interval known to contain the largest root of ``G_t``."""
    two_q = 2.0 * math.sqrt(r - 1)
    return two_q * math.cos(math.pi / t), two_q * math.cos(math.pi / (t + 1))


def weight(r: int, x):
    """Orthogonality weight of the F family on [-2q, 2q], q = sqrt(r-1)."""
    x = np.asarray(x, dtype=float)
    return np.sqrt(4.0 * (r - 1) - x * x) / (r * r - x * x)


def orthogonality_defect(fam: PolynomialFamily, i: int, j: int,
                         quadrature_points: int = 4096) -> float:
    """
    Midpoint-rule estimate of the weighted inner product of ``F_i`` and ``F_j``.

    The substitution x = 2q cos(phi) removes the square-root endpoint
    behaviour of the weight, leaving a smooth periodic integrand.
    """
    if i == j:
        raise ValueError("i and j must differ")
    if quadrature_points < 64:
        raise ValueError("need at least 64 quadrature points")
    r = fam.r
    two_q = 2.0 * math.sqrt(r - 1)
    phi = (np.arange(quadrature_points) + 0.5) * (math.pi / quadrature_points)
    x = two_q * np.cos(phi)
    s = two_q * np.sin(phi)
    integrand = fam.F(i, x) * fam.F(j, x) * s * s / (r * r - x * x)
    return float(integrand.sum() * (math.pi / quadrature_points))
