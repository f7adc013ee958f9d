"""Structural analysis of parameter-free conformal algebras.

Everything here produces :class:`~confalg.lattice.Submodule` values: bracket
spans ``[A, B]``, the derived series, a degree-bounded centre, ideal
closures and a classification report built from them.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .arith import nullspace
from .conformal import ConformalAlgebra, ConformalElement
from .errors import LimitExceeded, UnsupportedConfiguration
from .lattice import Submodule, whole, zero


def _require_parameter_free(alg: ConformalAlgebra):
    if not alg.is_parameter_free():
        raise UnsupportedConfiguration(
            f"{alg.name} has free parameters {list(alg.parameters)}; specialize them first"
        )


def _gens(S) -> list[ConformalElement]:
    return list(S.rows) if isinstance(S, Submodule) else list(S)


def lambda_coefficient_span(A, B, alg: ConformalAlgebra) -> Submodule:
    """C[D]-span of all lam-coefficients of ``[u_lam w]``, u in A, w in B.

    A and B are given by C[D]-module generators (lists or Submodules); the
    span of the generators' brackets already contains the brackets of every
    ``D**m u`` with ``D**n w``.
    """
    _require_parameter_free(alg)
    coeffs = []
    for u in _gens(A):
        for w in _gens(B):
            coeffs.extend(v for _, v in alg.bracket(u, w).items())
    return Submodule(alg, coeffs)


@dataclass
class DerivedSeries:
    terms: list[Submodule]
    status: str  # "solvable" | "stabilized" | "inconclusive"

    @property
    def solvable(self) -> bool | None:
        if self.status == "inconclusive":
            return None
        return self.status == "solvable"


def derived_series(alg: ConformalAlgebra, max_depth: int = 10) -> DerivedSeries:
    _require_parameter_free(alg)
    terms = [whole(alg)]
    while True:
        if terms[-1].is_zero():
            return DerivedSeries(terms, "solvable")
        if len(terms) > max_depth:
            return DerivedSeries(terms, "inconclusive")
        nxt = lambda_coefficient_span(terms[-1], terms[-1], alg)
        stable = nxt == terms[-1]
        terms.append(nxt)
        if stable:
            return DerivedSeries(terms, "stabilized")


@dataclass
class Centre:
    module: Submodule
    degree_bound: int
    stable: bool
    full: bool  # the bounded computation already returned the whole algebra


def _bounded_centre(alg: ConformalAlgebra, bound: int) -> Submodule:
    unknowns = []
    for g in alg.generators:
        for k in range(1 if g.central else bound + 1):
            unknowns.append(alg.element({(g.name, k): 1}))
    columns = []
    for e in unknowns:
        col = {}
        for h in alg.generator_names:
            for i, v in alg.bracket(e, alg.gen(h)).items():
                for (g, k), c in v.items():
                    col[(h, i, g, k)] = c.constant_value()
        columns.append(col)
    keys = sorted({k for col in columns for k in col})
    matrix = [[col.get(key, Fraction(0)) for col in columns] for key in keys]
    kernel = nullspace(matrix, len(unknowns))
    central = []
    for vec in kernel:
        e = alg.zero()
        for coef, u in zip(vec, unknowns):
            if coef:
                e = e + u * coef
        central.append(e)
    return Submodule(alg, central)


def centre(alg: ConformalAlgebra, degree_bound: int = 3) -> Centre:
    """Central elements ``sum f_i(D) g_i`` with ``deg f_i <= degree_bound``.

    The search is repeated at ``degree_bound + 1``; ``stable`` records whether
    the answer changed.  Bracketing against generators suffices because
    ``[r_lam f(D) g] = f(lam + D)[r_lam g]``.
    """
    _require_parameter_free(alg)
    Z = _bounded_centre(alg, degree_bound)
    Z1 = _bounded_centre(alg, degree_bound + 1)
    return Centre(Z, degree_bound, Z == Z1, Z == whole(alg))


def ideal_closure(S: Iterable[ConformalElement], alg: ConformalAlgebra, max_rounds: int = 50) -> Submodule:
    """Smallest ideal containing ``S``: iterate ``I + [R, I]`` to a fixed point."""
    _require_parameter_free(alg)
    R = [alg.gen(g) for g in alg.generator_names]
    I = Submodule(alg, _gens(S))
    for _ in range(max_rounds):
        nxt = I + lambda_coefficient_span(R, I, alg)
        if nxt == I:
            return I
        I = nxt
    raise LimitExceeded(f"ideal closure did not settle within {max_rounds} rounds")


def is_ideal(I: Submodule, alg: ConformalAlgebra) -> bool:
    R = [alg.gen(g) for g in alg.generator_names]
    return lambda_coefficient_span(R, I, alg).is_subset(I)


def is_central_ideal(I: Submodule, alg: ConformalAlgebra) -> bool:
    R = [alg.gen(g) for g in alg.generator_names]
    return lambda_coefficient_span(R, I, alg).is_zero()


@dataclass
class TestedIdeal:
    label: str
    module: Submodule
    proper: bool
    central: bool


@dataclass
class StructureReport:
    algebra: str
    abelian: bool
    series: DerivedSeries
    perfect: bool
    centre: Centre
    tested: list[TestedIdeal] = field(default_factory=list)
    verdict: str = ""

    @property
    def central_ideals(self) -> list[TestedIdeal]:
        return [t for t in self.tested if t.label.startswith("closure(") and t.central]


def classify(alg: ConformalAlgebra, centre_bound: int = 3, max_depth: int = 10) -> StructureReport:
    """Collect the evidence relevant to the simple-quotient dichotomy.

    The tested ideal family is: the closure of every single generator, the
    derived-series terms and the bounded centre.  Simplicity itself is never
    decided; the verdict only says whether the evidence is consistent.
    """
    _require_parameter_free(alg)
    R = whole(alg)
    series = derived_series(alg, max_depth)
    derived = series.terms[1] if len(series.terms) > 1 else R
    abelian = derived.is_zero()
    perfect = derived == R
    Z = centre(alg, centre_bound)

    candidates: list[tuple[str, Submodule]] = []
    for g in alg.generator_names:
        candidates.append((f"closure({g})", ideal_closure([alg.gen(g)], alg)))
    for k, T in enumerate(series.terms[1:], start=1):
        candidates.append((f"R^{k}", T))
    if is_ideal(Z.module, alg):
        candidates.append(("centre", Z.module))
    tested = []
    seen = set()
    zero_mod = zero(alg)
    for label, M in candidates:
        if M in seen:
            continue
        seen.add(M)
        proper = M != R and M != zero_mod
        tested.append(TestedIdeal(label, M, proper, is_central_ideal(M, alg)))

    if abelian:
        verdict = "abelian"
    elif series.solvable:
        verdict = "solvable"
    elif perfect and all(t.central for t in tested if t.proper):
        verdict = "consistent with: irreducible central extension of a simple algebra"
    elif perfect:
        verdict = "inconsistent: non-central proper ideal found"
    else:
        verdict = "neither solvable nor perfect"
    return StructureReport(alg.name, abelian, series, perfect, Z, tested, verdict)


def bracket_of_ideals(I: Submodule, J: Submodule, alg: ConformalAlgebra) -> Submodule:
    return lambda_coefficient_span(I, J, alg)


def span(elements: Sequence[ConformalElement], alg: ConformalAlgebra) -> Submodule:
    return Submodule(alg, elements)
