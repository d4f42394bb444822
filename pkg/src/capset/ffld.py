"""Vectors over prime fields F_p and the progression-free predicate.

A set A in F_p^n is progression-free for coefficients (alpha, beta, gamma)
with alpha + beta + gamma = 0 and gamma != 0 when alpha*x + beta*y + gamma*z = 0
has no solutions in A other than x = y = z.
"""

from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass
from typing import Iterable

from .errors import DomainError

BRUTE_FORCE_LIMIT = 64


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    k = 3
    while k * k <= p:
        if p % k == 0:
            return False
        k += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise DomainError(f"{self.p} is not prime")

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, -1, self.p)

    def vector(self, entries) -> FieldVector:
        return FieldVector(self.p, tuple(int(e) % self.p for e in entries))

    def space(self, n: int) -> list[FieldVector]:
        """All p^n vectors, in packed-key order."""
        return [FieldVector(self.p, tuple(reversed(t))) for t in itertools.product(range(self.p), repeat=n)]


@dataclass(frozen=True, order=True)
class FieldVector:
    p: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if any(not 0 <= e < self.p for e in self.entries):
            raise DomainError(f"entries {self.entries} not reduced mod {self.p}")

    @property
    def n(self) -> int:
        return len(self.entries)

    def key(self) -> int:
        """Packed base-p integer; entry 0 is the least significant digit."""
        k = 0
        for e in reversed(self.entries):
            k = k * self.p + e
        return k

    @classmethod
    def from_key(cls, p: int, n: int, key: int) -> FieldVector:
        digits = []
        for _ in range(n):
            key, e = divmod(key, p)
            digits.append(e)
        return cls(p, tuple(digits))

    def scale(self, a: int) -> FieldVector:
        return FieldVector(self.p, tuple(a * e % self.p for e in self.entries))

    def __add__(self, other: FieldVector) -> FieldVector:
        _check_compatible(self, other)
        return FieldVector(self.p, tuple((x + y) % self.p for x, y in zip(self.entries, other.entries)))

    def __neg__(self) -> FieldVector:
        return self.scale(-1)

    def __str__(self):
        return "(" + ",".join(map(str, self.entries)) + ")"


def _check_compatible(*vectors):
    p, n = vectors[0].p, vectors[0].n
    for v in vectors[1:]:
        if v.p != p:
            raise DomainError(f"modulus mismatch: {v.p} vs {p}")
        if v.n != n:
            raise DomainError(f"dimension mismatch: {v.n} vs {n}")


def vec_combine(a: int, x: FieldVector, b: int, y: FieldVector, c: int, z: FieldVector) -> FieldVector:
    """a*x + b*y + c*z computed pointwise mod p."""
    _check_compatible(x, y, z)
    p = x.p
    return FieldVector(
        p, tuple((a * u + b * v + c * w) % p for u, v, w in zip(x.entries, y.entries, z.entries))
    )


@dataclass(frozen=True)
class ProgressionSpec:
    p: int
    alpha: int
    beta: int
    gamma: int

    def __post_init__(self):
        PrimeField(self.p)
        object.__setattr__(self, "alpha", self.alpha % self.p)
        object.__setattr__(self, "beta", self.beta % self.p)
        object.__setattr__(self, "gamma", self.gamma % self.p)
        if (self.alpha + self.beta + self.gamma) % self.p:
            raise DomainError("alpha + beta + gamma must vanish mod p")
        if self.gamma == 0:
            raise DomainError("gamma must be nonzero")

    @classmethod
    def cap(cls, p: int = 3) -> ProgressionSpec:
        """x + y + z = 0; for p = 3 this is the three-term progression condition."""
        return cls(p, 1, 1, 1)

    @classmethod
    def arithmetic(cls, p: int) -> ProgressionSpec:
        """x - 2y + z = 0: y is the midpoint of x and z."""
        return cls(p, 1, -2, 1)

    def solve_third(self, x: FieldVector, y: FieldVector) -> FieldVector:
        """The unique z with alpha*x + beta*y + gamma*z = 0."""
        g = pow(self.gamma, -1, self.p)
        return vec_combine(-self.alpha * g, x, -self.beta * g, y, 0, y)

    def as_tuple(self):
        return (self.alpha, self.beta, self.gamma)


class PointSet:
    """A finite set of distinct vectors sharing one (p, n); kept in key order."""

    def __init__(self, p: int, n: int, points: Iterable[FieldVector] = ()):
        PrimeField(p)
        self.p, self.n = p, n
        pts = list(points)
        for v in pts:
            if v.p != p or v.n != n:
                raise DomainError(f"point {v} does not live in F_{p}^{n}")
        keys = [v.key() for v in pts]
        if len(set(keys)) != len(keys):
            raise DomainError("duplicate points")
        self.points = tuple(sorted(pts, key=FieldVector.key))
        self._keys = frozenset(keys)

    @classmethod
    def from_tuples(cls, p, n, tuples) -> PointSet:
        return cls(p, n, [FieldVector(p, tuple(int(e) % p for e in t)) for t in tuples])

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, v):
        return v.key() in self._keys

    def __eq__(self, other):
        return isinstance(other, PointSet) and (self.p, self.n, self.points) == (other.p, other.n, other.points)

    def __hash__(self):
        return hash((self.p, self.n, self.points))

    def __repr__(self):
        return f"PointSet(p={self.p}, n={self.n}, {[v.entries for v in self.points]})"

    def keys(self) -> list[int]:
        return [v.key() for v in self.points]

    def translate(self, t: FieldVector) -> PointSet:
        return PointSet(self.p, self.n, [v + t for v in self.points])

    def permute(self, perm) -> PointSet:
        return PointSet(self.p, self.n, [FieldVector(self.p, tuple(v.entries[i] for i in perm)) for v in self.points])

    def to_csv(self) -> str:
        out = io.StringIO()
        out.write(f"p={self.p},n={self.n}\n")
        w = csv.writer(out, lineterminator="\n")
        for v in self.points:
            w.writerow(v.entries)
        return out.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> PointSet:
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise DomainError("empty point file")
        try:
            header = dict(part.split("=") for part in lines[0].replace(" ", "").split(","))
            p, n = int(header["p"]), int(header["n"])
        except (ValueError, KeyError) as exc:
            raise DomainError(f"bad header {lines[0]!r}, expected 'p=<p>,n=<n>'") from exc
        rows = []
        for row in csv.reader(lines[1:]):
            if len(row) != n:
                raise DomainError(f"row {row} has {len(row)} entries, expected {n}")
            vals = [int(x) for x in row]
            if any(not 0 <= x < p for x in vals):
                raise DomainError(f"row {row} not reduced mod {p}")
            rows.append(vals)
        return cls.from_tuples(p, n, rows)


def _check_spec(A: PointSet, spec: ProgressionSpec):
    if A.p != spec.p:
        raise DomainError(f"set lives over F_{A.p} but spec is over F_{spec.p}")


def is_progression_free_cubic(A: PointSet, spec: ProgressionSpec) -> bool:
    """Reference check over all |A|^3 triples."""
    _check_spec(A, spec)
    a, b, c = spec.as_tuple()
    zero = FieldVector(A.p, (0,) * A.n)
    for x in A:
        for y in A:
            for z in A:
                if vec_combine(a, x, b, y, c, z) == zero and not (x == y == z):
                    return False
    return True


def is_progression_free_quadratic(A: PointSet, spec: ProgressionSpec) -> bool:
    """Solve for the third point of each ordered pair; valid because gamma is invertible."""
    _check_spec(A, spec)
    for x in A:
        for y in A:
            z = spec.solve_third(x, y)
            if z in A and not (x == y == z):
                return False
    return True


def is_progression_free(A: PointSet, spec: ProgressionSpec) -> bool:
    if len(A) > BRUTE_FORCE_LIMIT:
        return is_progression_free_quadratic(A, spec)
    return is_progression_free_cubic(A, spec)


def has_arithmetic_progression(A: PointSet) -> bool:
    """Direct search for x, x+g, x+2g in A with g != 0."""
    space = PrimeField(A.p).space(A.n)
    zero = FieldVector(A.p, (0,) * A.n)
    for x in A:
        for g in space:
            if g == zero:
                continue
            y = x + g
            if y in A and y + g in A:
                return True
    return False
