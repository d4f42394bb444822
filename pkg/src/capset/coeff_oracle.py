"""Coefficient extraction by averaging over scaled roots of unity.

For zeta a primitive l-th root of unity and l > max(deg f, i),

    l * [x^i] f = sum_{j<l} f(r zeta^j) / (r^i zeta^(ij)).

Used only as an independent floating-point check on the exact coefficient
rows; nothing in the bound pipeline depends on it.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import DomainError, NumericalError

IMAG_TOL = 1e-6
FILTER_TOL = 1e-9


@lru_cache(maxsize=128)
def _roots(l):
    # table of zeta^k for k < l; every power is looked up by exponent mod l
    return tuple(cmath.exp(2j * math.pi * k / l) for k in range(l))


def geometric_sum_filter(l: int, h: int) -> int:
    """sum_{j<l} zeta^(hj): l when l divides h, otherwise 0."""
    if l < 1:
        raise DomainError(f"l must be >= 1, got {l}")
    zeta = _roots(l)
    total = sum(zeta[(h * j) % l] for j in range(l))
    value = round(total.real)
    expected = l if h % l == 0 else 0
    if abs(total - expected) > FILTER_TOL or value != expected:
        raise NumericalError(f"geometric sum for l={l}, h={h} gave {total}, expected {expected}")
    return value


@dataclass(frozen=True)
class CoeffOracleQuery:
    f: Sequence[float]
    i: int
    l: int
    r: float

    def __post_init__(self):
        if not self.f:
            raise DomainError("f needs at least one coefficient")
        if self.i < 0:
            raise DomainError("i must be >= 0")
        if self.r <= 0:
            raise DomainError("r must be positive")
        if self.l <= max(len(self.f) - 1, self.i):
            raise DomainError(
                f"l={self.l} must exceed both deg f={len(self.f) - 1} and i={self.i}"
            )


def _horner(f, z):
    acc = 0j
    for coef in reversed(f):
        acc = acc * z + coef
    return acc


def extract_coeff(query: CoeffOracleQuery) -> float:
    f, i, l, r = query.f, query.i, query.l, query.r
    zeta = _roots(l)
    ri = r**i
    total = 0j
    scale = 0.0
    for j in range(l):
        term = _horner(f, r * zeta[j]) / (ri * zeta[(i * j) % l])
        scale = max(scale, abs(term))
        total += term
    value = total / l
    if abs(value.imag) > IMAG_TOL * max(1.0, scale):
        raise NumericalError(f"imaginary residue {value.imag:.3e} exceeds tolerance")
    return value.real
