import pytest

from confalg.dsl import builtin, parse_algebra
from confalg.errors import LimitExceeded, UnsupportedConfiguration
from confalg.lattice import Submodule, whole, zero
from confalg.structure import (
    bracket_of_ideals,
    centre,
    classify,
    derived_series,
    ideal_closure,
    is_central_ideal,
    is_ideal,
    lambda_coefficient_span,
)

VIR = builtin("virasoro").specialize({"c": 1})
HEIS = builtin("heisenberg_conf")
SL2 = builtin("current_sl2").specialize({"k": 1})
NS = builtin("neveu_schwarz").specialize({"c": 1})

# heisenberg plus a spectator generator that brackets to zero with everything
SPECTATOR = parse_algebra("""
algebra spect {
  generator a : even;
  generator b : even;
  central C;
  bracket [a, a] = lam*C;
}
""")


def span(alg, *names):
    return Submodule(alg, [alg.gen(n) for n in names])


def test_span_of_abelian_is_zero():
    A = builtin("abelian_3")
    assert lambda_coefficient_span(whole(A), whole(A), A).is_zero()


def test_span_heisenberg():
    assert lambda_coefficient_span(whole(HEIS), whole(HEIS), HEIS) == span(HEIS, "C")


def test_span_virasoro_is_everything():
    assert lambda_coefficient_span(whole(VIR), whole(VIR), VIR) == whole(VIR)


def test_parameters_rejected():
    with pytest.raises(UnsupportedConfiguration):
        derived_series(builtin("virasoro"))
    with pytest.raises(UnsupportedConfiguration):
        centre(builtin("current_sl2"))


def test_derived_series_examples():
    ab = builtin("abelian_2")
    s = derived_series(ab)
    assert s.solvable and [str(t) for t in s.terms] == ["<g1, g2>", "0"]
    s = derived_series(HEIS)
    assert s.solvable and s.terms == [whole(HEIS), span(HEIS, "C"), zero(HEIS)]
    s = derived_series(VIR)
    assert s.status == "stabilized" and s.solvable is False
    assert s.terms == [whole(VIR), whole(VIR)]


def test_derived_series_depth_limit():
    s = derived_series(HEIS, max_depth=1)
    assert s.status == "inconclusive"
    assert s.solvable is None


@pytest.mark.parametrize("alg", [VIR, HEIS, SL2, NS, SPECTATOR], ids=lambda a: a.name)
def test_derived_series_descends(alg):
    terms = derived_series(alg).terms
    for big, small in zip(terms, terms[1:]):
        assert small.is_subset(big)


def test_centre_virasoro():
    Z = centre(VIR, 3)
    assert Z.module == span(VIR, "C")
    assert Z.stable and not Z.full
    # brute-force oracle at a larger bound
    assert centre(VIR, 5).module == Z.module


def test_centre_heisenberg_and_abelian():
    assert centre(HEIS).module == span(HEIS, "C")
    A = builtin("abelian_2")
    Z = centre(A)
    assert Z.full and Z.module == whole(A)


def test_centre_spectator():
    Z = centre(SPECTATOR, 2)
    assert Z.module == span(SPECTATOR, "b", "C")
    assert Z.stable


def test_centre_needs_higher_degree():
    # D^3 a + b is central, so the bound-2 answer changes at bound 3
    alg = parse_algebra("""
    algebra deep {
      generator a : even;
      generator b : even;
      central C;
      bracket [a, a] = lam^3*C;
      bracket [a, b] = -lam^6*C;
      bracket [b, b] = -lam^9*C;
    }
    """)
    r = alg.element({("a", 3): 1, ("b", 0): 1})
    assert not alg.bracket(r, alg.gen("a")) and not alg.bracket(r, alg.gen("b"))
    low = centre(alg, 2)
    assert low.module == span(alg, "C") and not low.stable
    high = centre(alg, 3)
    assert high.module.contains(r) and high.stable


def test_centre_sl2():
    assert centre(SL2).module == span(SL2, "K")


def test_ideal_closure_examples():
    assert ideal_closure([VIR.gen("C")], VIR) == span(VIR, "C")
    assert ideal_closure([VIR.gen("L")], VIR) == whole(VIR)
    assert ideal_closure([], VIR).is_zero()


def test_ideal_closure_round_limit():
    with pytest.raises(LimitExceeded):
        ideal_closure([VIR.gen("L")], VIR, max_rounds=0)


def test_ideal_predicates():
    C = span(VIR, "C")
    assert is_ideal(C, VIR) and is_central_ideal(C, VIR)
    L = span(VIR, "L")
    assert not is_ideal(L, VIR)
    assert is_ideal(whole(VIR), VIR) and not is_central_ideal(whole(VIR), VIR)
    A = builtin("abelian_2")
    assert is_central_ideal(whole(A), A)


@pytest.mark.parametrize("alg", [VIR, HEIS, SL2, NS, SPECTATOR], ids=lambda a: a.name)
def test_bracket_of_ideals_is_ideal(alg):
    ideals = [whole(alg), centre(alg).module]
    ideals += [ideal_closure([alg.gen(g)], alg) for g in alg.generator_names]
    for I in ideals:
        assert is_ideal(I, alg)
    for I in ideals:
        for J in ideals:
            assert is_ideal(bracket_of_ideals(I, J, alg), alg)


def test_classify_virasoro():
    rep = classify(VIR)
    assert rep.perfect and not rep.abelian
    assert rep.centre.module == span(VIR, "C") and rep.centre.stable
    proper = [t for t in rep.tested if t.proper]
    assert [t.module for t in proper] == [span(VIR, "C")]
    assert all(t.central for t in proper)
    assert rep.verdict == "consistent with: irreducible central extension of a simple algebra"


def test_classify_other_verdicts():
    assert classify(builtin("abelian_1")).verdict == "abelian"
    assert classify(HEIS).verdict == "solvable"
    assert classify(SL2).verdict.startswith("consistent")
    assert classify(NS).verdict.startswith("consistent")


def test_classify_spectator_is_not_perfect():
    rep = classify(SPECTATOR)
    assert not rep.perfect
    assert rep.verdict == "solvable"


def test_non_central_proper_ideal_detected():
    # virasoro acting on a weight-one current: the current spans a non-central ideal
    alg = parse_algebra("""
    algebra vir_plus_current {
      generator L : even;
      generator J : even;
      central C;
      bracket [L, L] = (D + 2*lam) L + (1/12)*lam^3*C;
      bracket [L, J] = (D + lam) J;
    }
    """)
    rep = classify(alg)
    assert rep.perfect
    assert rep.verdict == "inconsistent: non-central proper ideal found"
    J = ideal_closure([alg.gen("J")], alg)
    assert is_ideal(J, alg) and not is_central_ideal(J, alg)
