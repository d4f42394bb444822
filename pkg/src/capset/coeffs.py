"""Coefficient rows of (1 + x + ... + x^(q-1))^n and the monomial counts m_d.

``c_j`` counts exponent vectors (a_1, ..., a_n) with 0 <= a_i <= q-1 and
digit sum j, so the partial sum of the first floor(d)+1 coefficients is the
number of reduced monomials of total degree at most d.
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError


@dataclass(frozen=True)
class CoeffRow:
    q: int
    n: int
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != (self.q - 1) * self.n + 1:
            raise DomainError(
                f"row for q={self.q}, n={self.n} needs {(self.q - 1) * self.n + 1} "
                f"entries, got {len(self.values)}"
            )

    def __len__(self):
        return len(self.values)

    def __getitem__(self, j):
        return self.values[j]

    def __iter__(self):
        return iter(self.values)

    @property
    def top(self) -> int:
        """Largest index, (q-1)*n."""
        return (self.q - 1) * self.n


def _check_q(q):
    if not isinstance(q, numbers.Integral) or q < 2:
        raise DomainError(f"q must be an integer >= 2, got {q!r}")


def as_degree(d) -> Fraction:
    """Coerce ``d`` to an exact rational.

    Accepts ints, Fractions and "num/den" strings. Floats are refused: the
    floor of the degree has to be exact.
    """
    if isinstance(d, bool):
        raise TypeError("degree must be rational, not bool")
    if isinstance(d, numbers.Rational):
        return Fraction(d)
    if isinstance(d, str):
        try:
            return Fraction(d.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"cannot parse degree {d!r}") from exc
    raise TypeError(f"degree must be an int, Fraction or 'num/den' string, got {type(d).__name__}")


def format_degree(d) -> str:
    d = as_degree(d)
    return f"{d.numerator}/{d.denominator}"


def _step(q, values):
    # schoolbook convolution with 1 + x + ... + x^(q-1), as a sliding window sum
    out = []
    window = 0
    m = len(values)
    for j in range(m + q - 1):
        if j < m:
            window += values[j]
        if j - q >= 0:
            window -= values[j - q]
        out.append(window)
    return tuple(out)


def cf_step(q: int, row: CoeffRow) -> CoeffRow:
    """Advance the row for n to the row for n+1.

    c^(n+1)_j = sum_{k=0}^{q-1} c^(n)_{j-k}
    """
    _check_q(q)
    if row.q != q:
        raise DomainError(f"row was built for q={row.q}, not q={q}")
    return CoeffRow(q, row.n + 1, _step(q, row.values))


@lru_cache(maxsize=256)
def _row_values(q, n):
    values = (1,)
    for _ in range(n):
        values = _step(q, values)
    return values


def coeff_row(q: int, n: int) -> CoeffRow:
    _check_q(q)
    if not isinstance(n, numbers.Integral) or n < 0:
        raise DomainError(f"n must be a nonnegative integer, got {n!r}")
    return CoeffRow(q, n, _row_values(q, n))


def m_value(q: int, n: int, d) -> int:
    """Number of monomials in n variables, exponents <= q-1, total degree <= d."""
    d = as_degree(d)
    if d < 0:
        raise DomainError(f"degree must be >= 0, got {d}")
    row = coeff_row(q, n)
    top = min(d.numerator // d.denominator, row.top)
    return sum(row.values[: top + 1])


def eg_bound(q: int, n: int) -> int:
    """3 * m_{(q-1)n/3}: the upper bound on progression-free subsets of F_q^n."""
    _check_q(q)
    if not isinstance(n, numbers.Integral) or n < 1:
        raise DomainError(f"the bound needs n >= 1, got {n!r}")
    return 3 * m_value(q, n, Fraction((q - 1) * n, 3))
