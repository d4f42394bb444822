import json
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from capset.coeffs import m_value
from capset.errors import DomainError
from capset.ffld import PointSet, PrimeField, ProgressionSpec, is_progression_free
from capset.polyspace import (
    FpMatrix,
    combinatorial_bound_check,
    dim_V,
    eval_matrix,
    monomial_basis,
    null_space,
    proposition2_check,
    random_progression_free,
    rank,
)

CAP = ProgressionSpec.cap(3)


def test_basis_examples():
    assert monomial_basis(3, 2, 1).monomials == ((0, 0), (1, 0), (0, 1))
    assert monomial_basis(5, 3, 0).monomials == ((0, 0, 0),)
    assert monomial_basis(3, 1, 2).monomials == ((0,), (1,), (2,))
    assert monomial_basis(3, 2, 2).monomials == ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2))


def test_basis_rejects_negative_degree():
    with pytest.raises(DomainError):
        monomial_basis(3, 2, Fraction(-1, 2))


@pytest.mark.parametrize("q", [2, 3, 4, 5])
@pytest.mark.parametrize("n", range(7))
def test_basis_size_is_m(q, n):
    top = (q - 1) * n
    for k in range(13):
        d = Fraction(k * top, 12)
        basis = monomial_basis(q, n, d)
        assert len(basis) == m_value(q, n, d)
        assert all(max(a, default=0) <= q - 1 and sum(a) <= d for a in basis.monomials)


def brute_rank(rows, p):
    """Rank by enumerating the row span (tiny matrices only)."""
    rows = [tuple(int(x) % p for x in r) for r in rows]
    span = {tuple([0] * len(rows[0]))} if rows else set()
    for r in rows:
        span = {tuple((a + c * b) % p for a, b in zip(s, r)) for s in span for c in range(p)}
    size = len(span)
    k = 0
    while p**k < size:
        k += 1
    return k


def test_rank_examples():
    assert rank(FpMatrix(3, np.eye(5, dtype=int))) == 5
    assert null_space(FpMatrix(3, np.eye(5, dtype=int))) == []
    Z = FpMatrix(3, np.zeros((3, 4), dtype=int))
    assert rank(Z) == 0
    assert len(null_space(Z)) == 4


def test_rank_shuffled_rows_and_span_oracle():
    rng = np.random.default_rng(7)
    for _ in range(30):
        M = rng.integers(0, 5, size=(6, 6))
        if rng.random() < 0.5:
            M[3] = (2 * M[0] + M[1]) % 5
        perm = rng.permutation(6)
        assert rank(FpMatrix(5, M)) == rank(FpMatrix(5, M[perm]))
    for _ in range(20):
        M = rng.integers(0, 3, size=(4, 5))
        assert rank(FpMatrix(3, M)) == brute_rank(M, 3)


@settings(max_examples=60)
@given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 6), st.integers(1, 7), st.data())
def test_rank_nullity(p, rows, cols, data):
    entries = data.draw(st.lists(st.lists(st.integers(0, p - 1), min_size=cols, max_size=cols),
                                 min_size=rows, max_size=rows))
    M = FpMatrix(p, entries)
    ns = null_space(M)
    assert rank(M) + len(ns) == cols
    for v in ns:
        assert not np.any(M @ v)
    if ns:
        assert rank(FpMatrix(p, ns)) == len(ns)


def test_eval_matrix_examples():
    pts = PrimeField(3).space(1)
    assert eval_matrix(monomial_basis(3, 1, 0), pts).entries.tolist() == [[1, 1, 1]]
    assert eval_matrix(monomial_basis(3, 1, 1), pts).entries.tolist() == [[1, 1, 1], [0, 1, 2]]
    E = eval_matrix(monomial_basis(3, 2, 4), PrimeField(3).space(2))
    for i, mono in enumerate(monomial_basis(3, 2, 4).monomials):
        for j, v in enumerate(PrimeField(3).space(2)):
            assert E.entries[i, j] == (v.entries[0] ** mono[0]) * (v.entries[1] ** mono[1]) % 3


def test_eval_matrix_modulus_mismatch():
    with pytest.raises(DomainError):
        eval_matrix(monomial_basis(3, 1, 1), PrimeField(5).space(1))


@pytest.mark.parametrize("q, n", [(2, 3), (3, 1), (3, 2), (5, 1), (5, 2)])
def test_full_basis_is_invertible(q, n):
    basis = monomial_basis(q, n, (q - 1) * n)
    assert rank(eval_matrix(basis, PrimeField(q).space(n))) == q**n


def test_dim_v_whole_space_and_empty_set():
    for n in (1, 2):
        for d in (Fraction(1), Fraction(4, 3), Fraction(2)):
            full = PointSet(3, n, PrimeField(3).space(n))
            assert dim_V(full, d, CAP).dim_V == m_value(3, n, d)
        assert dim_V(PointSet(3, n, []), 2 * n, CAP).dim_V == 0


def test_dim_v_report_json_shape():
    A = PointSet.from_tuples(3, 2, [(0, 0), (1, 0), (0, 1), (1, 1)])
    rep = dim_V(A, Fraction(4, 3), CAP)
    payload = json.loads(json.dumps(rep.as_dict()))
    assert list(payload) == ["q", "n", "d", "dim_S", "dim_V", "lower", "upper", "holds"]
    assert payload["d"] == "4/3"
    assert payload["holds"]


def test_dim_v_sandwich_on_random_caps():
    rng = random.Random(99)
    for _ in range(40):
        A = random_progression_free(3, 2, CAP, rng)
        rep = dim_V(A, 2, CAP)
        assert max(rep.lower, 0) <= rep.dim_V <= min(rep.upper, rep.dim_S)
        assert 9 + rep.dim_V >= rep.dim_S + len(A)


def test_dim_v_guard():
    with pytest.raises(DomainError):
        dim_V(PointSet(3, 13, []), 1, CAP)


def test_proposition_vacuous_when_only_zero():
    # every mix of a 9-point set hits all of F_3^2 once degrees are low, so only P = 0 survives
    A = PointSet(3, 2, PrimeField(3).space(2))
    res = proposition2_check(A, 1, CAP)
    assert res["solution_dim"] == 0 and res["count"] == 0 and res["holds"]


def test_proposition_four_point_cap():
    A = PointSet.from_tuples(3, 2, [(0, 0), (1, 0), (0, 1), (1, 1)])
    assert is_progression_free(A, CAP)
    res = proposition2_check(A, 2, CAP)
    assert res["bound"] == 2 * m_value(3, 2, 1) == 6
    assert res["count"] <= 6 and res["holds"] and res["diagonal"]


def test_proposition_two_points_rank_equals_count():
    A = PointSet.from_tuples(3, 2, [(0, 1), (2, 2)])
    res = proposition2_check(A, 4, CAP)
    assert res["diagonal"] and res["rank_matches"]
    assert res["count"] == 2


def test_proposition_on_arbitrary_sets():
    # the proposition does not need A to be progression-free
    rng = random.Random(5)
    space = PrimeField(3).space(2)
    for _ in range(30):
        A = PointSet(3, 2, rng.sample(space, rng.randint(1, 9)))
        for d in (1, Fraction(4, 3), 2, Fraction(8, 3), 3):
            assert proposition2_check(A, d, CAP)["holds"]


def test_proposition_other_specs_over_f5():
    rng = random.Random(11)
    for spec in (ProgressionSpec(5, 1, 3, 1), ProgressionSpec(5, 2, 2, 1), ProgressionSpec(5, 1, 1, 3)):
        for _ in range(5):
            A = random_progression_free(5, 2, spec, rng)
            for d in (2, Fraction(8, 3), 4):
                rep = dim_V(A, d, spec)
                assert rep.holds
                assert proposition2_check(A, d, spec)["holds"]


@pytest.mark.parametrize(
    "q, n, d, left, right",
    [(3, 2, Fraction(4, 3), 6, 3), (3, 4, 4, 50, 50), (3, 2, 0, 9, 1), (5, 1, 0, 5, 1)],
)
def test_combinatorial_bound_examples(q, n, d, left, right):
    res = combinatorial_bound_check(q, n, d)
    assert (res["m_complement"], res["m_d"]) == (left, right)
    assert res["lhs"] == q**n and res["holds"]


def test_combinatorial_bound_range():
    with pytest.raises(DomainError):
        combinatorial_bound_check(3, 2, 5)


def test_random_progression_free_reproducible():
    a = random_progression_free(3, 2, CAP, random.Random(3))
    b = random_progression_free(3, 2, CAP, random.Random(3))
    assert a == b and is_progression_free(a, CAP)


def test_end_to_end_search_respects_bound():
    from capset.coeffs import eg_bound
    from capset.search import max_progression_free

    for n in (1, 2, 3):
        res = max_progression_free(3, n)
        assert res.exhaustive and res.max_size <= eg_bound(3, n)
        d = Fraction(2 * 2 * n, 3)
        rep = dim_V(res.witness, d, CAP)
        assert rep.holds
