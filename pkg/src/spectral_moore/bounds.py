"""
Order bounds for regular graphs with a prescribed second eigenvalue.

``v_upper`` bounds v(r, theta), the largest order of a connected r-regular
graph with lambda_2 <= theta.  ``b_upper`` does the same for bipartite graphs.
Both work by locating every quotient-matrix regime (t, c) whose second
eigenvalue equals theta and keeping the smallest resulting bound.

The remaining functions handle the classical degree-diameter problem: the
Moore bound, the defect bound m_{r,D} - G_D(beta) and the two thresholds that
delimit where the second eigenvalue of a graph beating a known record must lie.
"""

from __future__ import annotations

import functools
import json
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from numbers import Real

from scipy import optimize

from .errors import (
    CoefficientOverflow,
    NonPositiveDefect,
    NotInvertible,
    ThetaOutOfRange,
)
from .orthopoly import (
    DEFAULT_TOL,
    INT64_MAX,
    PolynomialFamily,
    combination_chain,
    largest_root,
    largest_root_of_combination,
)

# safety stop for the regime scan; the scan itself ends at the first
# non-positive Sturm pivot, which happens long before this for theta < 2q
MAX_REGIME_T = 100_000
FLOOR_SLACK = 1e-9
EPS = 2.0**-52


class WorseThanMooreWarning(UserWarning):
    """The defect bound exceeded the classical Moore bound."""


@dataclass(frozen=True)
class BoundResult:
    r: int
    theta: float
    kind: str
    t: int
    c: float
    bound: float
    floor_bound: int
    regime_note: str
    candidates: tuple[tuple[int, float, float], ...] = ()

    def as_dict(self) -> dict:
        return {
            "r": self.r, "theta": self.theta, "kind": self.kind, "t": self.t,
            "c": self.c, "bound": self.bound, "floor": self.floor_bound,
            "regime_note": self.regime_note,
        }


@dataclass(frozen=True)
class DefectWindow:
    r: int
    D: int
    known_order: int
    moore_bound: int
    defect: int
    lower_threshold: float
    beta_threshold: float
    lambda_D: float

    def as_dict(self) -> dict:
        return {
            "r": self.r, "D": self.D, "known": self.known_order,
            "moore_bound": self.moore_bound, "defect": self.defect,
            "lower": self.lower_threshold, "moore": self.lambda_D,
            "upper": self.beta_threshold,
        }


def _checked(value: int, what: str) -> int:
    if value > INT64_MAX:
        raise CoefficientOverflow(f"{what} = {value} exceeds the int64 range")
    return value


def moore_bound(r: int, D: int) -> int:
    """m_{r,D} = 1 + r + r(r-1) + ... + r(r-1)^(D-1)."""
    if r < 2 or D < 1:
        raise ValueError(f"need r >= 2 and D >= 1, got r={r}, D={D}")
    return _checked(1 + sum(r * (r - 1) ** i for i in range(D)), f"m_{{{r},{D}}}")


def alon_boppana_moore_bound(r: int, k: int) -> int:
    """m_{r,2k-1}: the order cap implied by lambda_2 < 2 sqrt(r-1) cos(pi/(k+1))."""
    if r < 3 or k < 1:
        raise ValueError(f"need r >= 3 and k >= 1, got r={r}, k={k}")
    return moore_bound(r, 2 * k - 1)


def general_bound(r: int, t: int, c):
    """1 + sum_{i=0}^{t-3} r(r-1)^i + r(r-1)^{t-2}/c.  Exact for int/Fraction c."""
    head = 1 + sum(r * (r - 1) ** i for i in range(t - 2))
    tail = r * (r - 1) ** (t - 2)
    if isinstance(c, (int, Fraction)):
        return head + Fraction(tail) / c
    return head + tail / c


def bipartite_bound(r: int, t: int, c):
    """M(r,t,c) = 2 (sum_{i=0}^{t-4} (r-1)^i + (r-1)^{t-3}/c + (r-1)^{t-2}/c)."""
    head = sum((r - 1) ** i for i in range(t - 3))
    tail = (r - 1) ** (t - 3) + (r - 1) ** (t - 2)
    if isinstance(c, (int, Fraction)):
        return 2 * (head + Fraction(tail) / c)
    return 2 * (head + tail / c)


def floor_bound(bound: float) -> int:
    """Integer part of a bound, tolerant of rounding just below an integer."""
    return math.floor(float(bound) + FLOOR_SLACK * max(1.0, abs(float(bound))))


def _check_theta(r: int, theta: float, low: float) -> float:
    if r < 3:
        raise ValueError(f"need r >= 3, got {r}")
    theta = float(theta)
    ramanujan = 2.0 * math.sqrt(r - 1)
    if theta >= ramanujan:
        raise ThetaOutOfRange(
            f"theta = {theta} >= 2 sqrt(r-1) = {ramanujan}: no finite bound "
            "from this theorem (Ramanujan regime)"
        )
    if theta < low:
        raise ThetaOutOfRange(f"theta = {theta} is below the admissible minimum {low}")
    return theta


def _regime_candidates(r: int, theta: float, kind: str):
    """
    Yield (t, c) with theta the largest root of the kind's combination.

    Walking the Sturm pivots d_k = p_k(theta)/p_{k-1}(theta) of the base
    family (G for general, H for bipartite), theta is the largest root for
    index t exactly when every pivot before the last one used is positive,
    and c follows from the last pivot(s).  The scan stops at the first
    negative pivot (general: non-positive).
    """
    d = 1.0
    for k in range(1, MAX_REGIME_T):
        a = -1.0 if (kind == "general" and k == 1) else 0.0
        b = 0.0 if k == 1 else float(r - 1)
        # d_k * d_{k-1} without dividing, so a zero pivot still yields c
        prod = (theta - a) * d - b
        d = prod / d if d != 0.0 else -math.inf
        if kind == "general":
            t, c = k + 1, 1.0 - d
        else:
            t, c = k + 2, 1.0 - prod
        if (kind == "general" or k >= 2) and c > 0.0 and math.isfinite(c):
            yield t, c
        # a zero bipartite pivot still admits the next index with c = r
        if d < 0.0 or (d == 0.0 and kind == "general"):
            return
    raise ArithmeticError("regime scan did not terminate")


def _locate(r: int, theta: float, kind: str, tol: float) -> BoundResult:
    fam = PolynomialFamily(r)
    combo = "G" if kind == "general" else "H"
    found = []
    for t, c in _regime_candidates(r, theta, kind):
        note = ""
        if kind == "bipartite":
            if c > r * (1.0 + 1e-9):
                continue
            if c > r:
                c = float(r)
            if c == r:
                note = f"c = r: equality case is renamed to B({r},{t - 1},1)"
        elif c > r:
            note = f"c = {c:.6g} exceeds r; bound taken from the closed form"
        try:
            value = (bipartite_bound if kind == "bipartite" else general_bound)(r, t, c)
        except OverflowError:
            value = math.inf
        found.append((value, t, c, note))
    if not found:
        raise ThetaOutOfRange(f"no admissible regime for r={r}, theta={theta}")
    found.sort(key=lambda item: (item[0], item[1]))
    best = found[0][0]
    if math.isinf(best):
        raise CoefficientOverflow(
            f"theta = {theta} is so close to 2 sqrt(r-1) that the bound exceeds the float range"
        )
    # equal bounds up to rounding are ties, broken toward smaller t
    value, t, c, note = min(
        (item for item in found if item[0] <= best * (1.0 + 1e-9)),
        key=lambda item: item[1],
    )
    root = largest_root_of_combination(fam, combo, t, c, tol).value
    if not _reproduces(r, combo, t, c, theta, root, tol):
        raise ArithmeticError(f"regime (t={t}, c={c}) reproduces lambda2 = {root}, not {theta}")
    regime = _regime_text(fam, kind, t, theta, tol)
    return BoundResult(
        r=r, theta=theta, kind=kind, t=t, c=c, bound=float(value),
        floor_bound=_floor_for_kind(value, kind),
        regime_note="; ".join(x for x in (regime, note) if x),
        candidates=tuple((tt, cc, float(vv)) for vv, tt, cc, _ in found),
    )


def _reproduces(r: int, combo: str, t: int, c: float, theta: float, root: float, tol: float) -> bool:
    """
    Does (t, c) give back theta as the largest root?  Forward error first;
    where the root is ill-conditioned in c (bipartite theta near 0) fall back
    to a tiny residual of the combination at theta.
    """
    if abs(root - theta) <= max(1e-9 * max(1.0, abs(theta)), 2.0 * tol):
        return True
    ch = combination_chain(r, combo, t, c)
    coeff_err = 4 * EPS * max(r, c)
    value, err = ch.residual(theta, coeff_err)
    # a coefficient error moves a double root by about its square root
    return abs(value) <= 4 * err and ch.count_above(theta + math.sqrt(coeff_err) + 1e-9) == 0


def _floor_for_kind(value: float, kind: str) -> int:
    floored = floor_bound(value)
    if kind == "bipartite" and floored % 2:
        floored -= 1
    return floored


def _regime_text(fam: PolynomialFamily, kind: str, t: int, theta: float, tol: float) -> str:
    if kind != "general":
        return f"theta is the second eigenvalue of B({fam.r},{t},c)"
    if t == 2:
        return "t = 2 (extrapolated below the theorem's stated range t >= 3)"
    lo = lambda_D(fam.r, t - 2, tol)
    hi = lambda_D(fam.r, t - 1, tol)
    side = "in" if lo < theta <= hi + 1e-12 else "outside"
    return f"theta {side} (lambda^({t - 2}), lambda^({t - 1})] = ({lo:.6f}, {hi:.6f}]"


def v_upper(r: int, theta: Real, tol: float = DEFAULT_TOL) -> BoundResult:
    """Upper bound on the order of a connected r-regular graph with lambda_2 <= theta."""
    theta = _check_theta(r, theta, -1.0)
    return _locate(r, theta, "general", tol)


def b_upper(r: int, theta: Real, tol: float = DEFAULT_TOL) -> BoundResult:
    """Upper bound on the order of a bipartite r-regular graph with lambda_2 <= theta."""
    theta = _check_theta(r, theta, 0.0)
    return _locate(r, theta, "bipartite", tol)


@functools.lru_cache(maxsize=1024)
def lambda_D(r: int, D: int, tol: float = DEFAULT_TOL) -> float:
    """Largest root of G_D."""
    return largest_root(PolynomialFamily(r), "G", D, tol).value


def defect_bound(r: int, D: int, beta: float) -> float:
    """
    m_{r,D} - G_D(beta): order bound for diameter D and beta = max(|l_2|, |l_n|).

    Emits :class:`WorseThanMooreWarning` when G_D(beta) < 0 beyond rounding.
    """
    if r < 3 or D < 2:
        raise ValueError(f"need r >= 3 and D >= 2, got r={r}, D={D}")
    if not 0 <= beta < r:
        raise ValueError(f"beta must lie in [0, r), got {beta}")
    g = PolynomialFamily(r).G(D, beta)
    m = moore_bound(r, D)
    if g < -1e-9 * m:
        warnings.warn(
            f"G_{D}({beta}) = {g:.6g} < 0: defect bound {m - g:.6g} is worse than "
            f"the Moore bound {m}", WorseThanMooreWarning, stacklevel=2,
        )
    return m - g


def beta_threshold(r: int, D: int, known_order: int, tol: float = DEFAULT_TOL) -> float:
    """
    The root beta* > lambda^(D) of G_D(x) = m_{r,D} - known_order.

    Any graph of diameter D with beta > beta* has fewer than known_order vertices.
    """
    m = moore_bound(r, D)
    defect = m - known_order
    if defect <= 0:
        raise NonPositiveDefect(
            f"known order {known_order} is not below the Moore bound m_{{{r},{D}}} = {m}"
        )
    fam = PolynomialFamily(r)
    lo = lambda_D(r, D, tol)
    return optimize.bisect(lambda x: fam.G(D, x) - defect, lo, float(r),
                           xtol=tol, rtol=4 * 2.0**-52, maxiter=200)


def lower_threshold(r: int, known_order: int, tol: float = DEFAULT_TOL) -> float:
    """
    theta* with v_upper(r, theta*) = known_order.

    v_upper is nondecreasing in theta, so bisection applies; any r-regular
    graph with lambda_2 < theta* has fewer than known_order vertices.
    """
    floor_value = v_upper(r, -1.0, tol).bound
    if known_order <= floor_value:
        raise NotInvertible(
            f"known order {known_order} is not above the smallest bound {floor_value:g}"
        )
    ramanujan = 2.0 * math.sqrt(r - 1)
    hi = ramanujan
    gap = 1e-3
    while True:
        hi = ramanujan - gap
        if v_upper(r, hi, tol).bound > known_order:
            break
        gap /= 10.0
        if gap < 1e-14:
            raise NotInvertible(f"order {known_order} is beyond reach below 2 sqrt(r-1)")

    def excess(theta: float) -> float:
        return v_upper(r, theta, tol).bound - known_order

    return optimize.bisect(excess, -1.0, hi, xtol=tol, rtol=4 * 2.0**-52, maxiter=200)


def search_window(r: int, D: int, known_order: int, tol: float = DEFAULT_TOL) -> DefectWindow:
    """Where lambda_2 / beta of an r-regular, diameter-D graph beating known_order must lie."""
    m = moore_bound(r, D)
    upper = beta_threshold(r, D, known_order, tol)
    lower = lower_threshold(r, known_order, tol)
    lam = lambda_D(r, D, tol)
    if not lower < lam < upper:
        raise ArithmeticError(f"window ordering violated: {lower} < {lam} < {upper}")
    return DefectWindow(r, D, known_order, m, m - known_order, lower, upper, lam)


# -- Table 1 ----------------------------------------------------------------

def table1_data() -> dict:
    """The shipped record orders and published thresholds."""
    text = resources.files("spectral_moore").joinpath("data/table1.json").read_text()
    return json.loads(text)


def known_order(r: int, D: int) -> int | None:
    for row in table1_data()["rows"]:
        if row["r"] == r and row["D"] == D:
            return row["known"]
    return None


def round5(x: float) -> str:
    """Five-decimal rounding, half to even on the exact binary value."""
    from decimal import ROUND_HALF_EVEN, Decimal

    return str(Decimal(x).quantize(Decimal("0.00001"), rounding=ROUND_HALF_EVEN))


@dataclass(frozen=True)
class Table1Row:
    r: int
    D: int
    known: int
    defect: int
    lower: str
    moore: str
    upper: str
    published: dict

    @property
    def mismatches(self) -> list[str]:
        out = []
        if self.defect != self.published["defect"]:
            out.append("defect")
        for col in ("lower", "moore", "upper"):
            if getattr(self, col) != self.published[col]:
                out.append(col)
        return out

    def as_dict(self) -> dict:
        return {
            "r": self.r, "D": self.D, "known": self.known, "defect": self.defect,
            "lower": self.lower, "moore": self.moore, "upper": self.upper,
            "published": self.published, "mismatches": self.mismatches,
        }


def reproduce_table1(tol: float = DEFAULT_TOL) -> list[Table1Row]:
    rows = []
    for row in table1_data()["rows"]:
        w = search_window(row["r"], row["D"], row["known"], tol)
        rows.append(Table1Row(
            r=w.r, D=w.D, known=w.known_order, defect=w.defect,
            lower=round5(w.lower_threshold), moore=round5(w.lambda_D),
            upper=round5(w.beta_threshold),
            published={k: row[k] for k in ("defect", "lower", "moore", "upper")},
        ))
    return rows
