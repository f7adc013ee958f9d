import random
from fractions import Fraction

import pytest

from confalg.arith import EchelonSpace, Scalar
from confalg.dsl import builtin
from confalg.errors import UnsupportedConfiguration
from confalg.lattice import Submodule, canonical_form, contains, module_equal, module_sum, whole, zero
from confalg.structure import ideal_closure

V = builtin("virasoro").specialize({"c": 1})
A3 = builtin("abelian_3")
MIXED = builtin("current_sl2").specialize({"k": 1})  # free e, f, h and torsion K


def slice_of(alg, gens, d, extra=6):
    """Q-basis of the D-degree <= d part of the C[D]-span of gens.

    Brute force: span D^j g for j <= d + extra, then intersect with the
    low-degree coordinates by putting high degrees first in the echelon order.
    """
    names = alg.generator_names
    top = d + extra + 8
    space = EchelonSpace()
    for g in gens:
        for j in range(d + extra + 1):
            vec = {}
            for (h, k), s in g.partial(j).items():
                vec[(top - k) * len(names) + names.index(h)] = s.constant_value()
            space.add(vec)
    cutoff = (top - d) * len(names)
    return [v for v in space.basis() if min(v) >= cutoff]


def slices_equal(alg, g1, g2, d=6):
    return all(slice_of(alg, g1, k) == slice_of(alg, g2, k) for k in range(d + 1))


def rand_elem(alg, rng):
    terms = {}
    for _ in range(rng.randint(1, 3)):
        terms[(rng.choice(alg.generator_names), rng.randint(0, 2))] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    return alg.element(terms)


def test_partial_and_generator():
    L = V.gen("L")
    M = canonical_form([L.partial(), L], V)
    assert M.rows == [L]


def test_torsion_scaling():
    C = V.gen("C")
    assert canonical_form([C * 2, C * 3], V).rows == [C]


def test_mixed_generators_slice_oracle():
    L = V.gen("L")
    gens = [L.partial(2) + L, L.partial()]
    M = canonical_form(gens, V)
    assert module_equal(M, canonical_form([L], V))
    assert slices_equal(V, gens, M.rows)


def test_containment_examples():
    L, C = V.gen("L"), V.gen("C")
    assert contains(canonical_form([L], V), L.partial(3))
    assert not contains(canonical_form([L.partial()], V), L)
    assert not contains(canonical_form([L + C], V), C)
    assert contains(canonical_form([L + C, L], V), C)


def test_containment_agrees_with_slice_oracle():
    L, C = V.gen("L"), V.gen("C")
    for gens, e in [([L + C], C), ([L + C, L], C), ([L + C], L.partial()), ([L.partial(2) - C], L.partial(2))]:
        M = canonical_form(gens, V)
        deg = max(k for (_, k), _ in e.items())
        in_slice = slice_of(V, gens + [e], deg) == slice_of(V, gens, deg)
        assert M.contains(e) == in_slice


def test_sum_laws():
    rng = random.Random(3)
    for _ in range(20):
        M = canonical_form([rand_elem(A3, rng) for _ in range(2)], A3)
        assert module_sum(M, zero(A3)) == M
        assert M + M == M


def test_sum_of_partial_and_generator():
    L = V.gen("L")
    assert canonical_form([L.partial()], V) + canonical_form([L], V) == canonical_form([L], V)


@pytest.mark.parametrize("alg", [V, A3, MIXED], ids=["virasoro", "abelian_3", "current_sl2"])
def test_confluence(alg):
    rng = random.Random(alg.name)
    for _ in range(25):
        gens = [rand_elem(alg, rng) for _ in range(rng.randint(1, 3))]
        base = canonical_form(gens, alg)
        shuffled = gens[:]
        rng.shuffle(shuffled)
        assert canonical_form(shuffled, alg).rows == base.rows
        if len(gens) >= 2:
            i, j = rng.sample(range(len(gens)), 2)
            f = [Fraction(rng.randint(-3, 3)) for _ in range(3)]
            moved = gens[:]
            for k, a in enumerate(f):
                moved[i] = moved[i] + gens[j].partial(k) * a
            assert canonical_form(moved, alg).rows == base.rows


@pytest.mark.parametrize("alg", [V, A3, MIXED], ids=["virasoro", "abelian_3", "current_sl2"])
def test_rows_and_their_derivatives_are_members(alg):
    rng = random.Random(alg.name + "rows")
    for _ in range(20):
        M = canonical_form([rand_elem(alg, rng) for _ in range(3)], alg)
        for r in M.rows:
            assert M.contains(r)
            assert M.contains(r.partial())


@pytest.mark.parametrize("alg", [V, MIXED], ids=["virasoro", "current_sl2"])
def test_equality_is_double_inclusion(alg):
    rng = random.Random(alg.name + "eq")
    for _ in range(30):
        M = canonical_form([rand_elem(alg, rng) for _ in range(2)], alg)
        N = canonical_form([rand_elem(alg, rng) for _ in range(2)] + ([M.rows[0]] if M.rows else []), alg)
        both = all(N.contains(r) for r in M.rows) and all(M.contains(r) for r in N.rows)
        assert module_equal(M, N) == both


def test_canonical_rows_generate_same_slices():
    rng = random.Random(11)
    for _ in range(10):
        gens = [rand_elem(V, rng) for _ in range(2)]
        assert slices_equal(V, gens, canonical_form(gens, V).rows, d=4)


def test_whole_and_zero():
    assert str(whole(V)) == "<L, C>"
    assert str(zero(V)) == "0"
    assert whole(V).is_subset(whole(V))
    assert zero(V).is_subset(whole(V))


def test_parameters_rejected():
    P = builtin("virasoro")
    with pytest.raises(UnsupportedConfiguration):
        Submodule(P, [P.element({("L", 0): Scalar.param("c")})])
    with pytest.raises(UnsupportedConfiguration):
        ideal_closure([P.gen("L")], P)


@pytest.mark.parametrize("name,values", [
    ("virasoro", {"c": 1}), ("heisenberg_conf", {}), ("current_sl2", {"k": 1}),
    ("neveu_schwarz", {"c": 1}), ("abelian_3", {}),
])
def test_closure_terminates_quickly(name, values):
    A = builtin(name).specialize(values)
    for g in A.generator_names:
        ideal_closure([A.gen(g)], A, max_rounds=10)
