import itertools
import random
from fractions import Fraction
from math import factorial

import pytest
import sympy as sp

from confalg import fock
from confalg.calculus import LambdaPoly
from confalg.errors import WindowRefused
from confalg.fock import (
    VACUUM,
    Cutoff,
    FockState,
    GradedSubspace,
    basis_up_to,
    borcherds_sides,
    extract_conformal,
    fock_lambda_bracket,
    full_space,
    locality_order,
    mode_action,
    parse_state,
    subspace_product,
    theorem_ideal_check,
    translation,
    translation_closure,
    vacuum_dichotomy,
    verify_axioms,
    verify_borcherds,
    verify_skew_vertex,
    verify_wick,
    weight_basis,
    wick_sides,
)

X = sp.symbols("x1:16")
x1, x2 = FockState.monomial(1), FockState.monomial(2)


def to_sympy(s):
    return sp.expand(sum(sp.Rational(v.numerator, v.denominator) * sp.Mul(*[X[i - 1] for i in m])
                         for m, v in s.items()))


def oracle_mode(b_mono, n, c_poly):
    """b_(n) c for a monomial b from the free-field normal-ordered product.

    The field of x_m1 ... x_mr is :prod_i d^(m_i - 1) a(z)/(m_i - 1)!:.  Its
    z^(-n-1) coefficient is a sum over oscillator indices k_i with
    sum(k_i + m_i) = n + 1, weighted by prod C(-k_i - 1, m_i - 1), with all
    annihilators (k > 0) applied before all creators (k < 0).
    """
    if not b_mono:
        return c_poly if n == -1 else sp.Integer(0)
    r = len(b_mono)
    total = n + 1 - sum(b_mono)
    wc = max((sum((i + 1) * e for i, e in enumerate(mon)) for mon in sp.Poly(c_poly, *X).monoms()), default=0)
    lo = -(abs(total) + r * (wc + 1) + 2)
    out = sp.Integer(0)
    for ks in itertools.product([k for k in range(lo, wc + 1) if k != 0], repeat=r):
        if sum(ks) != total:
            continue
        coef = sp.Integer(1)
        for k, m in zip(ks, b_mono):
            coef *= sp.binomial(-k - 1, m - 1)
        if coef == 0:
            continue
        v = c_poly
        for k in ks:
            if k > 0:
                v = k * sp.diff(v, X[k - 1])
        for k in ks:
            if k < 0:
                v = v * X[-k - 1]
        out += coef * v
    return sp.expand(out)


def test_mode_examples():
    assert mode_action(x1, -1, VACUUM) == x1
    assert not mode_action(x1, 0, x1)
    assert mode_action(x1, 1, x1) == VACUUM
    assert mode_action(x1, -2, VACUUM) == x2 == translation(x1)


def test_translation_examples():
    assert not translation(VACUUM)
    assert translation(x1) == x2
    assert translation(FockState.monomial(1, 1)) == FockState.monomial(1, 2) * 2


def test_parse_and_print_states():
    s = parse_state("2*x1^2*x3 - 1/2*x2")
    assert s == FockState.monomial(1, 1, 3) * 2 - x2 * Fraction(1, 2)
    assert parse_state("1") == VACUUM
    assert parse_state(str(s)) == s


def test_weight_basis_counts_partitions():
    assert [len(weight_basis(w)) for w in range(9)] == [1, 1, 2, 3, 5, 7, 11, 15, 22]


def test_modes_match_free_field_oracle():
    for b in basis_up_to(3)[1:]:
        (bm,) = b.terms
        for c in basis_up_to(3):
            for n in range(-3, 5):
                got = to_sympy(mode_action(b, n, c))
                assert got == oracle_mode(bm, n, to_sympy(c)), (b, n, c)


def test_weight_bookkeeping():
    for b in basis_up_to(4):
        for c in basis_up_to(3):
            for n in range(-4, b.weight + c.weight):
                r = mode_action(b, n, c)
                if r:
                    assert r.weights() == {b.weight + c.weight - n - 1}


def test_cutoff_refuses_heavy_inputs():
    cut = Cutoff(4, slack=1)
    with pytest.raises(WindowRefused) as info:
        mode_action(FockState.monomial(6), -1, VACUUM, cut)
    assert info.value.required_cutoff == 5
    assert mode_action(x1, -4, FockState.monomial(1, 1), cut) == FockState()


def test_lambda_brackets():
    assert fock_lambda_bracket(x1, x1) == LambdaPoly({1: VACUUM})
    assert not fock_lambda_bracket(x1, VACUUM)
    for b in basis_up_to(4):
        assert not fock_lambda_bracket(VACUUM, b)


def test_borcherds_examples():
    cut = Cutoff(12)
    c = FockState.monomial(1, 3)
    lhs, rhs = borcherds_sides(x1, 1, x1, -1, c)
    assert lhs == rhs == c
    lhs, rhs = borcherds_sides(x1, 1, x1, 1, FockState.monomial(1, 2))
    assert not lhs and not rhs
    for b in basis_up_to(2):
        assert verify_borcherds(VACUUM, b, x2, 2, -3, cut).passed


def test_borcherds_sample():
    rng = random.Random(5)
    B = basis_up_to(4)
    cut = Cutoff(12)
    for _ in range(300):
        a, b, c = rng.choice(B), rng.choice(B), rng.choice(B)
        m, n = rng.randint(-4, 4), rng.randint(-4, 4)
        assert verify_borcherds(a, b, c, m, n, cut).passed


def test_borcherds_refuses_heavy_sources():
    with pytest.raises(WindowRefused):
        verify_borcherds(FockState.monomial(5), x1, x1, 0, 0, Cutoff(4))


def test_borcherds_detects_wrong_binomials(monkeypatch):
    good = fock._gbinom
    monkeypatch.setattr(fock, "_gbinom", lambda top, k: good(top, k) + (1 if k == 1 else 0))
    fock._act.cache_clear()
    fock._nonneg_products.cache_clear()
    try:
        results = [verify_borcherds(x1, x1, c, m, -m, Cutoff(12)) for c in basis_up_to(3) for m in (2, 3)]
        bad = [r for r in results if not r.passed]
        assert bad and all(r.witness for r in bad)
    finally:
        fock._act.cache_clear()
        fock._nonneg_products.cache_clear()


def test_wick_closed_form():
    lhs, rhs = wick_sides(x1, x1, VACUUM, -2, 6)
    expect = {(n + 1, n): VACUUM * Fraction(1, factorial(n)) for n in range(7)}
    assert lhs == expect
    assert rhs == expect


def test_wick_trivial_cases():
    cut = Cutoff(12)
    lhs, rhs = wick_sides(VACUUM, x2, x1, -3, 5)
    assert not lhs and not rhs
    lhs, rhs = wick_sides(x2, VACUUM, VACUUM, -1, 5)
    assert not lhs and not rhs
    assert verify_wick(x1, x2, FockState.monomial(1, 1), cut).passed


def test_wick_sample():
    rng = random.Random(9)
    B = basis_up_to(3)
    for _ in range(40):
        assert verify_wick(rng.choice(B), rng.choice(B), rng.choice(B), Cutoff(12)).passed


def test_skew_examples():
    cut = Cutoff(10)
    assert verify_skew_vertex(x1, x1, cut).passed
    for b in basis_up_to(3):
        assert verify_skew_vertex(VACUUM, b, cut).passed
        assert verify_skew_vertex(b, VACUUM, cut).passed


def test_skew_all_weight_four_at_twelve():
    cut = Cutoff(12)
    B = basis_up_to(4)
    assert all(verify_skew_vertex(a, b, cut).passed for a in B for b in B)


def test_skew_refused_outside_window():
    with pytest.raises(WindowRefused):
        verify_skew_vertex(FockState.monomial(3), x1, Cutoff(5))


def test_axioms_pass():
    checks = verify_axioms(Cutoff(10), 4)
    assert all(c.passed for c in checks), [c for c in checks if not c.passed]
    assert not mode_action(VACUUM, 0, x2)
    assert locality_order(x1, x1) == 2


def test_mode_commutator_with_translation():
    lhs = translation(mode_action(x1, 1, x1)) - mode_action(x1, 1, translation(x1))
    assert lhs == mode_action(x1, 0, x1) * -1 == FockState()


def test_vacuum_dichotomy():
    assert all(c.passed for c in vacuum_dichotomy(8))


def test_subspace_product_examples():
    cut = Cutoff(4)
    one = GradedSubspace(4, [VACUUM])
    B = translation_closure([x1, FockState.monomial(1, 1)], 4)
    prod = subspace_product(one, B, cut)
    assert all(prod.contains(v) for v in B.vectors())
    X1 = GradedSubspace(4, [x1])
    P = subspace_product(X1, X1, cut)
    assert P.contains(VACUUM) and P.contains(FockState.monomial(1, 1))
    assert subspace_product(GradedSubspace(4), B, cut).dims() == [0] * 5


def test_subspace_product_commutes():
    cut = Cutoff(8)
    rng = random.Random(1)
    basis = basis_up_to(3)
    # sources are kept up to W + slack so that T-images of the top weights exist
    for _ in range(8):
        A = translation_closure(rng.sample(basis, 2), cut.W + cut.slack)
        B = translation_closure(rng.sample(basis, 2), cut.W + cut.slack)
        assert subspace_product(A, B, cut) == subspace_product(B, A, cut)


def test_full_space_dims():
    assert full_space(5).dims() == [1, 1, 2, 3, 5, 7]


def test_theorem_vacuum():
    rep = theorem_ideal_check([VACUUM], Cutoff(8, 4))
    assert rep.holds and sum(rep.J_dims) == 0
    names = [c.name for c in rep.checks]
    assert any("truncation-level" in n for n in names)
    assert all(c.passed for c in rep.checks)
    assert any("not a vertex ideal" in n for n in names)


def test_theorem_x1_and_empty():
    rep = theorem_ideal_check([x1], Cutoff(8, 4))
    assert rep.holds
    assert "not a proof" in rep.caveat
    assert theorem_ideal_check([], Cutoff(8, 4)).J_dims == [0] * 9


def test_theorem_refuses_heavy_generator():
    with pytest.raises(WindowRefused):
        theorem_ideal_check([FockState.monomial(6)], Cutoff(8, 4))


def test_extract_heisenberg_table():
    ext = extract_conformal(Cutoff(3), 1, [VACUUM, x1])
    assert ext.table[(1, 1)] == LambdaPoly({1: VACUUM})
    assert not ext.table[(0, 1)] and not ext.table[(1, 0)] and not ext.table[(0, 0)]
    assert all(c.passed for c in ext.checks)
    assert fock_lambda_bracket(translation(x1), x1) == LambdaPoly({2: VACUUM * -1})


def test_extract_refuses_wide_basis():
    with pytest.raises(WindowRefused):
        extract_conformal(Cutoff(5), 2)


def test_extract_weight_two_basis():
    ext = extract_conformal(Cutoff(6), 2)
    assert all(c.passed for c in ext.checks)
