"""Exhaustive branch-and-bound search for largest progression-free sets.

Points of F_p^n are indexed by their packed key and candidate sets are
Python ints used as bitsets.  The tree only ever extends a partial set by
points with a larger key than everything already chosen, so each subset is
visited at most once and depth-first order equals lexicographic order of
the sorted key tuples.  That makes the first maximum found the
lexicographically least one.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .coeffs import eg_bound
from .errors import DomainError, InvariantViolation
from .ffld import FieldVector, PointSet, PrimeField, ProgressionSpec, is_progression_free

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**9
EXHAUSTIVE_LIMIT = 2**14

# Triples (x, y, v) built from the new point Z, an already chosen point A and a
# candidate W; only those mentioning W can exclude it.
_ROLES = [(x, y, v) for x in "ZAW" for y in "ZAW" for v in "ZAW" if "W" in (x, y, v)]


@dataclass
class SearchResult:
    q: int
    n: int
    spec: ProgressionSpec
    max_size: int
    witness: PointSet
    exhaustive: bool
    nodes_explored: int

    def as_dict(self):
        return {
            "q": self.q,
            "n": self.n,
            "spec": list(self.spec.as_tuple()),
            "max_size": self.max_size,
            "exhaustive": self.exhaustive,
            "nodes_explored": self.nodes_explored,
            "witness": [list(v.entries) for v in self.witness],
        }


class _Exclusions:
    """Lazily computed masks: which candidates become illegal once z and a are both chosen."""

    def __init__(self, p, n, spec):
        self.p, self.n, self.spec = p, n, spec
        self.vectors = [v.entries for v in PrimeField(p).space(n)]
        self.size = len(self.vectors)
        self.full = (1 << self.size) - 1
        self.cache = {}

    def _key(self, entries):
        k = 0
        for e in reversed(entries):
            k = k * self.p + e
        return k

    def mask(self, z, a):
        k = (z, a) if z <= a else (a, z)
        m = self.cache.get(k)
        if m is None:
            m = self.cache[k] = self._compute(z, a) | self._compute(a, z)
        return m

    def _compute(self, z, a):
        p = self.p
        pts = {"Z": self.vectors[z], "A": self.vectors[a]}
        alpha, beta, gamma = self.spec.as_tuple()
        mask = 0
        for roles in _ROLES:
            c = {"Z": 0, "A": 0, "W": 0}
            for role, coef in zip(roles, (alpha, beta, gamma)):
                c[role] += coef
            cw = c["W"] % p
            rest = tuple((c["Z"] * u + c["A"] * v) % p for u, v in zip(pts["Z"], pts["A"]))
            used = {r for r in roles if r != "W"}
            if cw:
                inv = pow(cw, -1, p)
                w = tuple(-e * inv % p for e in rest)
                if any(pts[r] != w for r in used):
                    mask |= 1 << self._key(w)
            elif not any(rest):
                # equation holds for every w; only w equal to the other entries is harmless
                for wi, w in enumerate(self.vectors):
                    if any(pts[r] != w for r in used):
                        mask |= 1 << wi
        return mask


def _check_size(q, n):
    PrimeField(q)
    if q**n > EXHAUSTIVE_LIMIT:
        raise DomainError(f"{q}^{n} points exceeds the exhaustive search limit {EXHAUSTIVE_LIMIT}")


def max_progression_free(q: int, n: int, spec: ProgressionSpec | None = None,
                         node_budget: int = DEFAULT_BUDGET) -> SearchResult:
    """Largest progression-free subset of F_q^n, by depth-first branch and bound.

    If the node budget runs out the best set found so far is returned with
    ``exhaustive=False``.
    """
    if spec is None:
        spec = ProgressionSpec.cap(q)
    if spec.p != q:
        raise DomainError("spec must be over F_q")
    _check_size(q, n)
    ex = _Exclusions(q, n, spec)

    best: list[int] = []
    nodes = 0
    exhausted = False
    chosen: list[int] = []

    def dfs(cand):
        nonlocal best, nodes, exhausted
        nodes += 1
        if nodes > node_budget:
            exhausted = True
            return
        if len(chosen) > len(best):
            best = list(chosen)
        rest = cand
        while rest:
            low = rest & -rest
            z = low.bit_length() - 1
            rest ^= low
            if len(chosen) + 1 + rest.bit_count() <= len(best):
                break
            nxt = rest
            for a in chosen:
                nxt &= ~ex.mask(z, a)
            nxt &= ~ex.mask(z, z)
            chosen.append(z)
            dfs(nxt)
            chosen.pop()
            if exhausted:
                return

    dfs(ex.full)
    witness = PointSet(q, n, [FieldVector.from_key(q, n, k) for k in best])
    result = SearchResult(q, n, spec, len(best), witness, not exhausted, min(nodes, node_budget))
    log.debug("search q=%d n=%d: size %d after %d nodes", q, n, len(best), result.nodes_explored)
    if not is_progression_free(witness, spec):
        raise InvariantViolation(f"search returned a set that is not progression-free: {witness}")
    if result.exhaustive and n >= 1 and result.max_size > eg_bound(q, n):
        raise InvariantViolation(f"maximum {result.max_size} exceeds the bound {eg_bound(q, n)}")
    return result


def verify_cap(A: PointSet) -> bool:
    """True iff x + y + z = 0 in A forces x = y = z; only defined over F_3."""
    if A.p != 3:
        raise DomainError(f"caps live in F_3^n, got p={A.p}")
    return is_progression_free(A, ProgressionSpec.cap(3))
