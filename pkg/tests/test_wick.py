import random
from fractions import Fraction
from math import factorial

import pytest
import sympy as sp

from confalg.errors import UsageError
from confalg.wick import (
    factorial_det_check,
    factorial_det_closed_form,
    factorial_matrix,
    forward_expand,
    separate,
    separation_window,
)

F = Fraction
CASES = [(m, N) for m in range(7) for N in range(m, 13) if N >= 1]


def random_laurent(rng, coords=(0,), zlo=-4, zhi=4):
    out = {}
    for _ in range(rng.randint(0, 4)):
        v = F(rng.randint(-9, 9), rng.randint(1, 6))
        if v:
            out[(rng.randint(zlo, zhi), rng.choice(coords))] = v
    return out


def random_family(rng, deg, coords=(0,)):
    return {i: random_laurent(rng, coords) for i in range(deg + 1)}


def nonzero(family):
    return {i: p for i, p in family.items() if p}


def test_matrix_examples():
    assert factorial_matrix(0, 3) == [[F(1, 6)]]
    assert factorial_matrix(1, 1) == [[F(1), F(1, 2)], [F(1), F(1)]]
    M = factorial_matrix(2, 2)
    assert [M[i][i] for i in range(3)] == [F(1, 2)] * 3


def test_matrix_rejects_small_n():
    with pytest.raises(UsageError):
        factorial_matrix(3, 2)
    with pytest.raises(UsageError):
        factorial_matrix(0, 0)


def test_determinant_examples():
    assert factorial_det_check(1, 1) == (F(1, 2), F(1, 2), True)
    computed, closed, equal = factorial_det_check(0, 5)
    assert computed == closed == F(1, 120) and equal


def test_determinant_against_cofactor_oracle():
    M = sp.Matrix(factorial_matrix(4, 6))
    oracle = M.det(method="berkowitz")
    computed, closed, _ = factorial_det_check(4, 6)
    assert sp.Rational(computed.numerator, computed.denominator) == oracle
    assert closed == computed


@pytest.mark.parametrize("m,N", CASES)
def test_determinant_closed_form(m, N):
    computed, closed, equal = factorial_det_check(m, N)
    assert equal and computed == factorial_det_closed_form(m, N)


def test_case_count():
    # the stated range has 69 valid pairs; the 7 x 7 grid N in [6, 12] is inside it
    assert len(CASES) == 69
    assert {(m, N) for m in range(7) for N in range(6, 13)} <= set(CASES)


def test_window():
    assert separation_window(2, 3) == [4, 5, 6]
    assert separation_window(3, -1) == [3, 4, 5, 6]
    assert separation_window(0, -1) == [1]


def test_separate_lambda_times_exponential():
    # p = lam, q = 0: coefficient of lam^N in lam e^{lam z} is z^(N-1)/(N-1)!
    coeffs = {N: {(N - 1, 0): F(1, factorial(N - 1))} for N in range(1, 8)}
    assert nonzero(separate(coeffs, 1, -1)) == {1: {(0, 0): F(1)}}


def test_separate_pure_q_gives_zero():
    rng = random.Random(0)
    q = random_family(rng, 3)
    coeffs = forward_expand({}, q, separation_window(2, 3))
    assert nonzero(separate(coeffs, 2, 3)) == {}


def test_separate_missing_degrees():
    with pytest.raises(UsageError):
        separate({1: {}}, 2, 0)


def test_round_trip():
    rng = random.Random(2024)
    for _ in range(100):
        m, n = rng.randint(0, 4), rng.randint(-1, 4)
        p = random_family(rng, m)
        q = random_family(rng, n) if n >= 0 else {}
        window = separation_window(m, n)
        coeffs = forward_expand(p, q, window)
        got = separate(coeffs, m, n)
        assert nonzero(got) == nonzero(p)
        assert forward_expand(got, q, window) == coeffs


def test_subspace_preservation():
    rng = random.Random(77)
    dims = 5
    for _ in range(20):
        U = set(rng.sample(range(dims), rng.randint(1, dims - 1)))
        outside = [c for c in range(dims) if c not in U]
        m, n = rng.randint(0, 4), rng.randint(0, 4)
        p = random_family(rng, m, tuple(U))
        q = random_family(rng, n, tuple(outside))
        window = separation_window(m, n)
        coeffs = forward_expand(p, q, window)
        assert all(c in U for N in window for (_, c) in coeffs[N])
        got = separate(coeffs, m, n)
        assert all(c in U for pi in got.values() for (_, c) in pi)
