"""Reduced monomial spaces over F_p and rank computations behind the cap set bound.

For a progression-free A in F_q^n and a degree d, let V be the space of
polynomials spanned by reduced monomials of degree <= d that vanish off -gamma*A.
Rank-nullity gives dim V >= m_d - q^n + |A|; the diagonal-matrix argument gives
dim V <= 2 m_{d/2}.  Both are checked here by exact elimination mod p.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .coeffs import as_degree, format_degree, m_value
from .errors import DomainError, InvariantViolation
from .ffld import FieldVector, PointSet, PrimeField, ProgressionSpec, is_progression_free

ENUMERATION_LIMIT = 2**20

Monomial = tuple  # exponent vector, each entry in [0, q-1]


@dataclass(frozen=True)
class MonomialBasis:
    q: int
    n: int
    d: Fraction
    monomials: tuple[Monomial, ...]

    def __len__(self):
        return len(self.monomials)


def _bounded(n, q, budget):
    if n == 0:
        yield ()
        return
    for a in range(min(q - 1, budget) + 1):
        for rest in _bounded(n - 1, q, budget - a):
            yield (a,) + rest


def monomial_basis(q: int, n: int, d) -> MonomialBasis:
    """Exponent vectors with entries <= q-1 and total degree <= floor(d).

    Graded lexicographic order: total degree ascending, then exponent tuples
    descending, so x_1 precedes x_2 and x_1^2 precedes x_1 x_2.
    """
    d = as_degree(d)
    if d < 0:
        raise DomainError(f"degree must be >= 0, got {d}")
    top = d.numerator // d.denominator
    monos = sorted(_bounded(n, q, top), key=lambda a: (sum(a), tuple(-e for e in a)))
    return MonomialBasis(q, n, d, tuple(monos))


@dataclass
class FpMatrix:
    p: int
    entries: np.ndarray

    def __post_init__(self):
        self.entries = np.asarray(self.entries, dtype=np.int64) % self.p
        if self.entries.ndim != 2:
            raise DomainError("matrix must be two-dimensional")

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def T(self) -> FpMatrix:
        return FpMatrix(self.p, self.entries.T.copy())

    def __matmul__(self, v):
        return (self.entries @ np.asarray(v, dtype=np.int64)) % self.p


def _rref(M: FpMatrix):
    p = M.p
    A = M.entries.copy()
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            A[[r, k]] = A[[k, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        factors = A[:, c].copy()
        factors[r] = 0
        A = (A - np.outer(factors, A[r])) % p
        pivots.append(c)
        r += 1
    return A, pivots


def rank(M: FpMatrix) -> int:
    return len(_rref(M)[1])


def null_space(M: FpMatrix) -> list[tuple[int, ...]]:
    """Basis of {v : M v = 0}, one vector per free column, in column order."""
    A, pivots = _rref(M)
    p = M.p
    free = [c for c in range(M.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = np.zeros(M.cols, dtype=np.int64)
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = -A[i, f] % p
        if np.any(M @ v):
            raise InvariantViolation("null space vector fails M v = 0")
        basis.append(tuple(int(x) for x in v))
    return basis


def eval_matrix(basis: MonomialBasis, points) -> FpMatrix:
    """Entry (i, j) is monomial i evaluated at point j, with 0^0 = 1."""
    p = basis.q
    PrimeField(p)
    points = list(points)
    for v in points:
        if v.p != p or v.n != basis.n:
            raise DomainError(f"point {v} is not in F_{p}^{basis.n}")
    E = np.ones((len(basis), len(points)), dtype=np.int64)
    if not points or not len(basis):
        return FpMatrix(p, E)
    P = np.array([v.entries for v in points], dtype=np.int64).reshape(len(points), basis.n)
    # powers[k, j, e] = point_j[k]^e mod p
    powers = np.ones((basis.n, len(points), p), dtype=np.int64)
    for e in range(1, p):
        powers[:, :, e] = powers[:, :, e - 1] * P.T % p
    for i, mono in enumerate(basis.monomials):
        row = np.ones(len(points), dtype=np.int64)
        for k, e in enumerate(mono):
            if e:
                row = row * powers[k, :, e] % p
        E[i] = row
    return FpMatrix(p, E)


def _guard(p, n):
    if p**n > ENUMERATION_LIMIT:
        raise DomainError(f"{p}^{n} points exceeds the enumeration limit {ENUMERATION_LIMIT}")


@dataclass(frozen=True)
class SubspaceReport:
    q: int
    n: int
    d: Fraction
    dim_S: int
    dim_V: int
    lower: int
    upper: int
    progression_free: bool

    @property
    def holds(self) -> bool:
        return max(self.lower, 0) <= self.dim_V <= min(self.upper, self.dim_S)

    def as_dict(self):
        return {
            "q": self.q,
            "n": self.n,
            "d": format_degree(self.d),
            "dim_S": self.dim_S,
            "dim_V": self.dim_V,
            "lower": self.lower,
            "upper": self.upper,
            "holds": self.holds,
        }


def dim_V(A: PointSet, d, spec: ProgressionSpec) -> SubspaceReport:
    """Dimension of the polynomials of degree <= d vanishing off -gamma*A.

    Lemma-level facts are asserted: the rank-nullity lower bound always,
    the upper bound 2 m_{d/2} whenever A is progression-free.
    """
    if A.p != spec.p:
        raise DomainError("set and spec live over different fields")
    p, n = A.p, A.n
    _guard(p, n)
    d = as_degree(d)
    basis = monomial_basis(p, n, d)
    scaled = {v.scale(-spec.gamma).key() for v in A}
    complement = [v for v in PrimeField(p).space(n) if v.key() not in scaled]
    dim_S = len(basis)
    dimv = dim_S - rank(eval_matrix(basis, complement))
    report = SubspaceReport(
        q=p,
        n=n,
        d=d,
        dim_S=dim_S,
        dim_V=dimv,
        lower=dim_S - p**n + len(A),
        upper=2 * m_value(p, n, d / 2),
        progression_free=is_progression_free(A, spec),
    )
    if p**n + dimv < dim_S + len(A):
        raise InvariantViolation(f"rank-nullity bound fails: {report}")
    if report.progression_free and not report.holds:
        raise InvariantViolation(f"dimension sandwich fails for a progression-free set: {report}")
    return report


def _eval_poly(coeffs, E: FpMatrix):
    return (np.asarray(coeffs, dtype=np.int64) @ E.entries) % E.p


def proposition2_check(A: PointSet, d, spec: ProgressionSpec) -> dict:
    """Count points a with P(-gamma a) != 0 for P vanishing on all alpha*a + beta*b, a != b.

    Every basis vector of the solution space is tried (plus their sum), and the
    largest count is reported against 2 m_{d/2}.  For each candidate the matrix
    B(x, y) = P(alpha x + beta y) over A x A is built and must be diagonal with
    rank equal to the count.
    """
    if A.p != spec.p:
        raise DomainError("set and spec live over different fields")
    p, n = A.p, A.n
    _guard(p, n)
    d = as_degree(d)
    basis = monomial_basis(p, n, d)
    pts = list(A)
    mixes = {}
    for a in pts:
        for b in pts:
            if a != b:
                v = a.scale(spec.alpha) + b.scale(spec.beta)
                mixes[v.key()] = v
    mix_pts = list(mixes.values())
    if mix_pts:
        solutions = null_space(eval_matrix(basis, mix_pts).T)
    else:
        solutions = [tuple(int(i == j) for j in range(len(basis))) for i in range(len(basis))]
    candidates = list(solutions)
    if len(solutions) > 1:
        candidates.append(tuple(int(x) for x in np.sum(solutions, axis=0) % p))

    bound = 2 * m_value(p, n, d / 2)
    targets = eval_matrix(basis, [a.scale(-spec.gamma) for a in pts])
    grid = eval_matrix(basis, [x.scale(spec.alpha) + y.scale(spec.beta) for x in pts for y in pts])
    worst = 0
    diagonal = True
    rank_matches = True
    for P in candidates:
        count = int(np.count_nonzero(_eval_poly(P, targets)))
        B = _eval_poly(P, grid).reshape(len(pts), len(pts))
        off = B - np.diag(np.diag(B))
        diagonal &= not np.any(off)
        rank_matches &= rank(FpMatrix(p, B)) == count
        worst = max(worst, count)
    result = {
        "q": p,
        "n": n,
        "d": format_degree(d),
        "solution_dim": len(solutions),
        "count": worst,
        "bound": bound,
        "diagonal": bool(diagonal),
        "rank_matches": bool(rank_matches),
        "holds": worst <= bound and diagonal and rank_matches,
    }
    if not result["holds"]:
        raise InvariantViolation(f"proposition check fails: {result}")
    return result


def combinatorial_bound_check(q: int, n: int, d) -> dict:
    """q^n <= m_{(q-1)n - d} + m_d, by complementing exponent vectors."""
    d = as_degree(d)
    top = (q - 1) * n
    if not 0 <= d <= top:
        raise DomainError(f"d={d} outside [0, {top}]")
    lhs = q**n
    left = m_value(q, n, top - d)
    right = m_value(q, n, d)
    result = {"q": q, "n": n, "d": format_degree(d), "lhs": lhs, "m_complement": left, "m_d": right,
              "holds": lhs <= left + right}
    if not result["holds"]:
        raise InvariantViolation(f"combinatorial bound fails: {result}")
    return result


def random_progression_free(p: int, n: int, spec: ProgressionSpec, rng, size=None) -> PointSet:
    """Greedy random progression-free set: shuffle F_p^n, keep points that stay compatible.

    ``size`` caps the result; by default a cap is drawn uniformly from
    1..p^n so that small and near-maximal sets both occur.
    """
    space = PrimeField(p).space(n)
    rng.shuffle(space)
    if size is None:
        size = rng.randint(1, len(space))
    chosen: list[FieldVector] = []
    for v in space:
        if len(chosen) >= size:
            break
        trial = PointSet(p, n, chosen + [v])
        if is_progression_free(trial, spec):
            chosen.append(v)
    return PointSet(p, n, chosen)
