"""The rate function C_{r,q} and the growth bounds it certifies for m_{(q-1)n/3}.

C_{r,q} = (1 + r + ... + r^(q-1)) / r^((q-1)/3).  For every 0 < r < 1 one has
m_{(q-1)n/3} <= C_{r,q}^n, so minimizing over r gives the exponential rate.
Floating-point only on the rate side; monomial counts stay exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .coeffs import coeff_row, m_value
from .errors import DomainError, InvariantViolation

GUARD = 1e-9
EDGE = 1e-6
GRID_POINTS = 64
INV_PHI = (math.sqrt(5) - 1) / 2


@dataclass(frozen=True)
class RateReport:
    q: int
    r_star: float
    c_star: float
    appendix_B: float

    def as_dict(self):
        return {"q": self.q, "r_star": self.r_star, "c_star": self.c_star, "appendix_B": self.appendix_B}


def _check_r(r):
    if not 0.0 < r < 1.0:
        raise DomainError(f"r must lie strictly between 0 and 1, got {r!r}")


def _check_q(q):
    if int(q) != q or q < 2:
        raise DomainError(f"q must be an integer >= 2, got {q!r}")


def crq(r: float, q: int) -> float:
    _check_r(r)
    _check_q(q)
    total = 0.0
    power = 1.0
    for _ in range(q):
        total += power
        power *= r
    return total / r ** ((q - 1) / 3)


def crq_closed(r: float, q: int) -> float:
    """Same value as ``crq`` via (1 - r^q) / ((1 - r) r^((q-1)/3))."""
    _check_r(r)
    _check_q(q)
    return -math.expm1(q * math.log(r)) / ((1.0 - r) * r ** ((q - 1) / 3))


def golden_section(f, a, b, tol):
    """Shrink [a, b] around a minimum of f until it is narrower than tol.

    Returns the midpoint of the final bracket.
    """
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    return (a + b) / 2


def minimize_crq(q: int, tol: float = 1e-10) -> RateReport:
    """Minimize C_{r,q} over r in (0, 1).

    A 64-point grid picks the bracket, since nothing guarantees the function
    is unimodal; golden-section search then narrows it to width ``tol``.
    """
    _check_q(q)
    if tol <= 0:
        raise DomainError("tol must be positive")
    lo, hi = EDGE, 1.0 - EDGE
    step = (hi - lo) / (GRID_POINTS - 1)
    grid = [lo + k * step for k in range(GRID_POINTS)]
    values = [crq(r, q) for r in grid]
    k = min(range(GRID_POINTS), key=values.__getitem__)
    a = grid[max(k - 1, 0)]
    b = grid[min(k + 1, GRID_POINTS - 1)]
    r_star = golden_section(lambda r: crq(r, q), a, b, tol)
    c_star = crq(r_star, q)
    if not (0.0 < r_star < 1.0 and c_star < q):
        raise InvariantViolation(f"no r in (0,1) with C_(r,{q}) < {q} found (r={r_star}, C={c_star})")
    return RateReport(q, r_star, c_star, c_star**2 / (1.0 - r_star))


def q3_closed_form() -> tuple[float, float]:
    """Minimizer and minimum of C_{r,3}: r = (sqrt(33)-1)/8, c = (3/8) cbrt(207 + 33 sqrt(33))."""
    s = math.sqrt(33.0)
    r = (s - 1.0) / 8.0
    c = ((3.0 / 8.0) ** 3 * (207.0 + 33.0 * s)) ** (1.0 / 3.0)
    return r, c


def _leq_guarded(lhs: int, rhs: float) -> bool:
    # int/float comparison in Python is exact, so the only slack is the guard band
    return lhs <= rhs * (1.0 + GUARD)


def check_growth(q: int, n: int, r: float) -> dict:
    """Compare exact m_{(q-1)n/3} with C_{r,q}^n."""
    lhs = m_value(q, n, Fraction((q - 1) * n, 3))
    rhs = crq(r, q) ** n
    return {"q": q, "n": n, "r": r, "lhs": lhs, "rhs": rhs, "holds": _leq_guarded(lhs, rhs)}


def appendix_bound_check(q: int, N: int, r: float) -> dict:
    """Evaluate the two coarser bounds obtained via coefficient extraction.

    ``divisible``: m at n = 3N, degree (q-1)N, against C^(3N) / (1 - r).
    ``general``: for n in 3N, 3N+1, 3N+2, m_{(q-1)n/3} against B C^n with
    B = C^2 / (1 - r).
    """
    _check_r(r)
    if N < 0:
        raise DomainError("N must be >= 0")
    c = crq(r, q)
    B = c**2 / (1.0 - r)
    lhs = m_value(q, 3 * N, (q - 1) * N)
    rhs = c ** (3 * N) / (1.0 - r)
    general = []
    for n in range(3 * N, 3 * N + 3):
        g_lhs = m_value(q, n, Fraction((q - 1) * n, 3))
        g_rhs = B * c**n
        general.append({"n": n, "lhs": g_lhs, "rhs": g_rhs, "holds": _leq_guarded(g_lhs, g_rhs)})
    return {
        "q": q,
        "N": N,
        "r": r,
        "B": B,
        "divisible": {"n": 3 * N, "lhs": lhs, "rhs": rhs, "holds": _leq_guarded(lhs, rhs)},
        "general": general,
        "holds": _leq_guarded(lhs, rhs) and all(g["holds"] for g in general),
    }


def coefficient_bound(q: int, n: int, j: int, r: float) -> tuple[int, float]:
    """c_j <= (1 + r + ... + r^(q-1))^n / r^j, returned as (c_j, bound)."""
    _check_r(r)
    row = coeff_row(q, n)
    base = crq(r, q) * r ** ((q - 1) / 3)
    return row[j], base**n / r**j
