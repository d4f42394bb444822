"""The reproduction table: each row is a self-contained check with a time limit.

Shared by ``capset repro`` and the test suite.  A check returns
``(passed, detail)``; timing is measured by ``run_row``.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .asymptotics import appendix_bound_check, check_growth, minimize_crq, q3_closed_form
from .coeff_oracle import CoeffOracleQuery, extract_coeff, geometric_sum_filter
from .coeffs import CoeffRow, cf_step, coeff_row, eg_bound, m_value
from .ffld import PrimeField, ProgressionSpec
from .polyspace import (
    combinatorial_bound_check,
    dim_V,
    eval_matrix,
    monomial_basis,
    proposition2_check,
    random_progression_free,
    rank,
)
from .search import max_progression_free
from .setgame import TWELVE_CARD_CAP, VALID_TRIPLE_EXAMPLE, find_valid_triples

DEFAULT_SEED = 20190101


def degree_grid(q, n, points=13):
    """Equally spaced exact rationals from 0 to (q-1)n inclusive."""
    top = (q - 1) * n
    return [Fraction(k * top, points - 1) for k in range(points)]


def rate_constant_q3():
    rep = minimize_crq(3)
    r_cf, c_cf = q3_closed_form()
    ok = abs(rep.c_star - c_cf) <= 1e-7 and rep.c_star < 2.755105 and abs(rep.r_star - r_cf) <= 1e-6
    return ok, f"r*={rep.r_star:.10f} (closed {r_cf:.10f}), c*={rep.c_star:.10f} (closed {c_cf:.10f})"


def rate_existence():
    parts = []
    ok = True
    for q in (2, 3, 4, 5, 7, 8):
        rep = minimize_crq(q)
        ok &= 0 < rep.r_star < 1 and rep.c_star < q
        parts.append(f"q={q}: c*={rep.c_star:.6f}")
    return ok, "; ".join(parts)


def growth_inequality():
    failures = []
    for q in (2, 3, 5):
        r = minimize_crq(q).r_star
        for n in range(31):
            rep = check_growth(q, n, r)
            if not rep["holds"]:
                failures.append((q, n))
    return not failures, f"violations: {failures}" if failures else "93 cases hold"


def coefficient_identities():
    bad = []
    for q in range(2, 6):
        row = CoeffRow(q, 0, (1,))
        for n in range(13):
            exact = coeff_row(q, n)
            top = (q - 1) * n
            if sum(exact) != q**n:
                bad.append((q, n, "sum"))
            if any(exact[j] != exact[top - j] for j in range(top + 1)):
                bad.append((q, n, "symmetry"))
            if row != exact:
                bad.append((q, n, "cf_step"))
            row = cf_step(q, row)
    return not bad, f"failures: {bad}" if bad else "q<=5, n<=12: sum, symmetry, recurrence hold"


def combinatorial_bound():
    count = 0
    for q in (2, 3, 5):
        for n in range(7):
            for d in degree_grid(q, n):
                combinatorial_bound_check(q, n, d)
                count += 1
    return True, f"{count} instances, zero violations"


def polynomial_lab(seed=DEFAULT_SEED, trials=50):
    rng = random.Random(seed)
    spec = ProgressionSpec.cap(3)
    degrees = [Fraction(1), Fraction(4, 3), Fraction(2), Fraction(8, 3)]
    checked = 0
    ok = True
    for n in (1, 2):
        for _ in range(trials):
            A = random_progression_free(3, n, spec, rng)
            for d in degrees:
                rep = dim_V(A, d, spec)
                prop = proposition2_check(A, d, spec)
                ok &= rep.holds and prop["holds"]
                checked += 1
    return ok, f"{checked} (set, degree) pairs checked"


def basis_and_rank():
    bad = []
    for q in (2, 3, 5):
        for n in range(7):
            for d in degree_grid(q, n):
                if len(monomial_basis(q, n, d)) != m_value(q, n, d):
                    bad.append((q, n, d))
    for q, n in ((3, 1), (3, 2), (5, 1)):
        basis = monomial_basis(q, n, (q - 1) * n)
        if rank(eval_matrix(basis, PrimeField(q).space(n))) != q**n:
            bad.append((q, n, "rank"))
    return not bad, f"failures: {bad}" if bad else "basis sizes match, full evaluation matrices invertible"


def exhaustive_maxima():
    expected = {1: 2, 2: 4, 3: 9}
    parts = []
    ok = True
    for n, size in expected.items():
        start = time.perf_counter()
        res = max_progression_free(3, n)
        elapsed = time.perf_counter() - start
        ok &= res.exhaustive and res.max_size == size and res.max_size <= eg_bound(3, n)
        if n <= 2:
            ok &= elapsed < 1.0
        parts.append(f"n={n}: {res.max_size} (bound {eg_bound(3, n)}, {res.nodes_explored} nodes, {elapsed:.2f}s)")
    return ok, "; ".join(parts)


def appendix_oracle():
    worst = 0.0
    for n in range(9):
        row = coeff_row(3, n)
        f = [float(c) for c in row]
        l = 2 * n + 1
        for j, c in enumerate(row):
            got = extract_coeff(CoeffOracleQuery(f, j, l, 0.6))
            worst = max(worst, abs(got - c) / c)
    filt = all(
        geometric_sum_filter(l, h) == (l if h % l == 0 else 0)
        for l in range(1, 65)
        for h in range(-512, 513)
    )
    return worst <= 1e-5 and filt, f"max relative error {worst:.2e}; filter exact: {filt}"


def appendix_bounds():
    r, c = q3_closed_form()
    ok = all(appendix_bound_check(3, N, r)["divisible"]["holds"] for N in range(9))
    B = c**2 / (1 - r)
    return ok and B <= 198, f"divisible-case bound holds for N<=8: {ok}; B={B:.4f}"


def set_game():
    a = find_valid_triples(VALID_TRIPLE_EXAMPLE)
    b = find_valid_triples(TWELVE_CARD_CAP)
    return len(a) == 1 and b == [], f"three cards: {len(a)} valid triple(s); twelve cards: {len(b)}"


@dataclass(frozen=True)
class Row:
    number: int
    name: str
    check: Callable[..., tuple[bool, str]]
    seconds: float
    seeded: bool = False


TABLE = [
    Row(1, "rate constant q=3", rate_constant_q3, 1.0),
    Row(2, "rate below q for q in 2,3,4,5,7,8", rate_existence, 1.0),
    Row(3, "growth inequality q in 2,3,5, n<=30", growth_inequality, 5.0),
    Row(4, "coefficient identities q<=5, n<=12", coefficient_identities, 5.0),
    Row(5, "complement inequality on degree grids", combinatorial_bound, 5.0),
    Row(6, "dimension sandwich and proposition check", polynomial_lab, 120.0, seeded=True),
    Row(7, "basis sizes and full-rank evaluation", basis_and_rank, 30.0),
    Row(8, "exhaustive cap maxima n=1,2,3", exhaustive_maxima, 600.0),
    Row(9, "root-of-unity extraction and filter", appendix_oracle, 5.0),
    Row(10, "coarse bound and constant <= 198", appendix_bounds, 1.0),
    Row(11, "Set card collections", set_game, 1.0),
]


def run_row(row: Row, seed: int = DEFAULT_SEED) -> tuple[bool, str, float]:
    start = time.perf_counter()
    try:
        ok, detail = row.check(seed=seed) if row.seeded else row.check()
    except AssertionError as exc:
        ok, detail = False, f"assertion: {exc}"
    elapsed = time.perf_counter() - start
    if elapsed > row.seconds:
        ok = False
        detail += f" [took {elapsed:.2f}s, limit {row.seconds:g}s]"
    return ok, detail, elapsed


def format_line(row: Row, ok: bool, detail: str, elapsed: float) -> str:
    return f"[{'PASS' if ok else 'FAIL'}] {row.number:>2}. {row.name} ({elapsed:.2f}s): {detail}"


def run_all(rows=TABLE, echo=print, seed: int = DEFAULT_SEED) -> bool:
    all_ok = True
    for row in rows:
        ok, detail, elapsed = run_row(row, seed)
        echo(format_line(row, ok, detail, elapsed))
        all_ok &= ok
    return all_ok


if __name__ == "__main__":
    raise SystemExit(0 if run_all() else 1)
