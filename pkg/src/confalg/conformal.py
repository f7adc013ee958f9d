"""Lie conformal (super)algebras given by structure constants.

An algebra is a finitely generated C[D]-module.  Generators are either free
or *central*: a central generator is even, killed by D and brackets to zero
with everything.  The bracket of two generators is stored for one
orientation only; the other orientation is produced by skew-symmetry.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .arith import Fraction, Scalar, as_fraction
from .calculus import (
    LambdaMuPoly,
    LambdaPoly,
    jacobi_sides,
    sesquilinear_pair,
    shift_by_partial,
    skew_transform,
)
from .errors import DeclarationError, UsageError


@dataclass(frozen=True)
class GeneratorDecl:
    name: str
    parity: int = 0
    central: bool = False

    def __post_init__(self):
        if self.parity not in (0, 1):
            raise UsageError(f"parity of {self.name} must be 0 or 1")
        if self.central and self.parity:
            raise UsageError(f"central generator {self.name} must be even")


class ConformalElement:
    """Finite combination of ``D**k g`` with Scalar coefficients.

    ``terms`` maps ``(generator name, k)`` to the coefficient of ``D**k g``.
    Terms ``D**k g`` with ``k > 0`` on a central generator are dropped on
    construction since D kills those generators.
    """

    __slots__ = ("_terms", "torsion", "_hash")

    def __init__(self, terms: Mapping[tuple[str, int], object] | None = None, torsion=frozenset()):
        clean = {}
        for (g, k), c in (terms or {}).items():
            if k < 0:
                raise UsageError("negative power of D")
            if k and g in torsion:
                continue
            c = Scalar.coerce(c)
            if c:
                clean[(g, k)] = c
        self._terms = clean
        self.torsion = torsion
        self._hash = None

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def generators(self) -> set[str]:
        return {g for g, _ in self._terms}

    def parameters(self) -> set[str]:
        return set().union(*(c.parameters() for c in self._terms.values()))

    def partial(self, times: int = 1) -> "ConformalElement":
        return ConformalElement(
            {(g, k + times): c for (g, k), c in self._terms.items()}, self.torsion
        )

    def specialize(self, values: Mapping[str, Fraction]) -> "ConformalElement":
        return ConformalElement(
            {key: c.specialize(values) for key, c in self._terms.items()}, self.torsion
        )

    def __bool__(self):
        return bool(self._terms)

    def _combine(self, other, sign):
        if not isinstance(other, ConformalElement):
            return NotImplemented
        out = dict(self._terms)
        for key, c in other._terms.items():
            out[key] = out[key] + c * sign if key in out else c * sign
        return ConformalElement(out, self.torsion | other.torsion)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return ConformalElement({k: -c for k, c in self._terms.items()}, self.torsion)

    def __mul__(self, s):
        if not isinstance(s, (int, Fraction, Scalar)):
            return NotImplemented
        return ConformalElement({k: c * s for k, c in self._terms.items()}, self.torsion)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ConformalElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"ConformalElement({self})"


def format_element(e: ConformalElement, order: Sequence[str] | None = None) -> str:
    """Render ``e`` in the presentation syntax, e.g. ``2*D^2 L - (1/12)*c*C``."""
    if not e:
        return "0"
    rank = {g: i for i, g in enumerate(order)} if order else {}
    items = sorted(e.items(), key=lambda kv: (rank.get(kv[0][0], len(rank)), kv[0]))
    parts = []
    for (g, k), c in items:
        dpart = "" if k == 0 else ("D " if k == 1 else f"D^{k} ")
        coef = _format_scalar_factor(c)
        parts.append(f"{coef}{dpart}{g}")
    text = " + ".join(parts)
    return text.replace("+ -", "- ")


def _format_scalar_factor(c: Scalar) -> str:
    if c == 1:
        return ""
    if c == -1:
        return "-"
    terms = c.terms
    if len(terms) == 1:
        (mono, val), = terms.items()
        factors = []
        sign = "-" if val < 0 else ""
        val = abs(val)
        if val != 1 or not mono:
            factors.append(str(val) if val.denominator == 1 else f"({val})")
        factors.extend(mono)
        return sign + "*".join(factors) + "*"
    return f"({c})*"


class ConformalAlgebra:
    """Lie conformal algebra presented by generators and structure constants.

    ``table`` maps an ordered pair of generator names to the LambdaPoly
    ``[g_lam h]``.  Missing pairs are zero.  When both orientations of a pair
    are given they must agree under skew-symmetry.
    """

    def __init__(
        self,
        name: str,
        generators: Sequence[GeneratorDecl],
        parameters: Sequence[str] = (),
        table: Mapping[tuple[str, str], LambdaPoly] | None = None,
    ):
        self.name = name
        self.generators = tuple(generators)
        self.parameters = tuple(parameters)
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise UsageError("duplicate generator names")
        if len(set(self.parameters)) != len(self.parameters):
            raise UsageError("duplicate parameter names")
        self._decl = {g.name: g for g in self.generators}
        self.torsion = frozenset(g.name for g in self.generators if g.central)
        self._order = {n: i for i, n in enumerate(names)}
        self._shift_cache: dict = {}

        stored: dict[tuple[str, str], LambdaPoly] = {}
        given = {}
        for (g, h), P in (table or {}).items():
            for x in (g, h):
                if x not in self._decl:
                    raise DeclarationError(f"generator {x!r} is not declared in {name}")
            P = LambdaPoly({i: self._coerce(v) for i, v in P.items()})
            given[(g, h)] = P
        for (g, h), P in given.items():
            if self._order[g] <= self._order[h]:
                stored[(g, h)] = P
        for (g, h), P in given.items():
            if self._order[g] > self._order[h]:
                derived = skew_transform(P, self.sign(g, h), self.partial)
                if (h, g) in stored and stored[(h, g)] != derived:
                    raise UsageError(f"brackets [{h},{g}] and [{g},{h}] violate skew-symmetry")
                stored.setdefault((h, g), derived)
        self.table = {k: v for k, v in stored.items() if v}
        self._validate_table()

        full = dict(self.table)
        for (g, h), P in self.table.items():
            if g != h:
                full[(h, g)] = skew_transform(P, self.sign(g, h), self.partial)
        self._full = full

    # -- declarations -------------------------------------------------------

    @property
    def generator_names(self) -> list[str]:
        return [g.name for g in self.generators]

    def decl(self, name: str) -> GeneratorDecl:
        try:
            return self._decl[name]
        except KeyError:
            raise DeclarationError(f"generator {name!r} is not declared in {self.name}") from None

    def sign(self, g: str, h: str) -> int:
        return -1 if self.decl(g).parity and self.decl(h).parity else 1

    def gen(self, name: str) -> ConformalElement:
        self.decl(name)
        return ConformalElement({(name, 0): 1}, self.torsion)

    def element(self, terms: Mapping[tuple[str, int], object]) -> ConformalElement:
        for g, _ in terms:
            self.decl(g)
        return ConformalElement(terms, self.torsion)

    def zero(self) -> ConformalElement:
        return ConformalElement({}, self.torsion)

    def _coerce(self, e: ConformalElement) -> ConformalElement:
        for g in e.generators():
            self.decl(g)
        undeclared = e.parameters() - set(self.parameters)
        if undeclared:
            raise DeclarationError(f"parameters {sorted(undeclared)} not declared in {self.name}")
        return ConformalElement(e.terms, self.torsion)

    def _validate_table(self):
        for (g, h), P in self.table.items():
            if g in self.torsion or h in self.torsion:
                raise UsageError(f"central generator in bracket [{g},{h}]")
            want = (self.decl(g).parity + self.decl(h).parity) % 2
            for _, v in P.items():
                for x in v.generators():
                    if self.decl(x).parity != want:
                        raise UsageError(f"bracket [{g},{h}] is not parity preserving")

    def is_parameter_free(self) -> bool:
        return all(not v.parameters() for P in self.table.values() for _, v in P.items())

    def specialize(self, values: Mapping[str, object], name: str | None = None) -> "ConformalAlgebra":
        """Substitute rational values for some parameters."""
        vals = {k: as_fraction(v) for k, v in values.items()}
        unknown = set(vals) - set(self.parameters)
        if unknown:
            raise DeclarationError(f"parameters {sorted(unknown)} not declared in {self.name}")
        table = {k: P.map(lambda v: v.specialize(vals)) for k, P in self.table.items()}
        params = [p for p in self.parameters if p not in vals]
        return ConformalAlgebra(name or self.name, self.generators, params, table)

    def with_table(self, table: Mapping, name: str | None = None) -> "ConformalAlgebra":
        return ConformalAlgebra(name or self.name, self.generators, self.parameters, table)

    # -- calculus -----------------------------------------------------------

    def partial(self, e: ConformalElement, times: int = 1) -> ConformalElement:
        return e.partial(times)

    def structure(self, g: str, h: str) -> LambdaPoly:
        self.decl(g)
        self.decl(h)
        return self._full.get((g, h), LambdaPoly())

    def _shifted(self, g: str, h: str, n: int) -> LambdaPoly:
        key = (g, h, n)
        P = self._shift_cache.get(key)
        if P is None:
            P = shift_by_partial(self.structure(g, h), n, self.partial)
            self._shift_cache[key] = P
        return P

    def bracket(self, x: ConformalElement, y: ConformalElement) -> LambdaPoly:
        """``[x_lam y]`` by sesquilinear extension of the structure table."""
        acc: dict = {}
        for (g, m), s in x.items():
            for (h, n), t in y.items():
                P = self._shifted(g, h, n)
                if not P:
                    continue
                coef = s * t * (-1) ** m
                for i, v in P.items():
                    v = v * coef
                    acc[i + m] = acc[i + m] + v if (i + m) in acc else v
        return LambdaPoly(acc)

    def __repr__(self):
        return f"ConformalAlgebra({self.name!r}, generators={self.generator_names})"


def apply_partial(e: ConformalElement) -> ConformalElement:
    return e.partial()


def bracket(x: ConformalElement, y: ConformalElement, alg: ConformalAlgebra) -> LambdaPoly:
    return alg.bracket(x, y)


# -- axiom checks --------------------------------------------------------------


@dataclass
class AxiomEntry:
    label: str
    passed: bool
    residual: object = None


@dataclass
class AxiomReport:
    axiom: str
    entries: list[AxiomEntry] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def failures(self) -> list[AxiomEntry]:
        return [e for e in self.entries if not e.passed]


def check_structure(alg: ConformalAlgebra) -> AxiomReport:
    """Polynomiality and parity of the table (the table is finite by construction)."""
    rep = AxiomReport("C1")
    for g in alg.generator_names:
        for h in alg.generator_names:
            P = alg.structure(g, h)
            want = (alg.decl(g).parity + alg.decl(h).parity) % 2
            bad = [
                x for _, v in P.items() for x in v.generators() if alg.decl(x).parity != want
            ]
            rep.entries.append(AxiomEntry(f"[{g},{h}]", not bad, P if bad else None))
    return rep


def check_sesquilinear(alg: ConformalAlgebra) -> AxiomReport:
    rep = AxiomReport("C2")
    for g in alg.generator_names:
        for h in alg.generator_names:
            (l1, r1), (l2, r2) = sesquilinear_pair(alg.bracket, alg.partial, alg.gen(g), alg.gen(h))
            rep.entries.append(AxiomEntry(f"[D{g},{h}]", l1 == r1, None if l1 == r1 else l1 - r1))
            rep.entries.append(AxiomEntry(f"[{g},D{h}]", l2 == r2, None if l2 == r2 else l2 - r2))
    return rep


def check_skew(alg: ConformalAlgebra) -> AxiomReport:
    rep = AxiomReport("C3")
    names = alg.generator_names
    for i, g in enumerate(names):
        for h in names[i:]:
            lhs = alg.bracket(alg.gen(g), alg.gen(h))
            rhs = skew_transform(alg.bracket(alg.gen(h), alg.gen(g)), alg.sign(g, h), alg.partial)
            res = lhs - rhs
            rep.entries.append(AxiomEntry(f"[{g},{h}]", not res, res or None))
    return rep


def check_jacobi(alg: ConformalAlgebra) -> AxiomReport:
    rep = AxiomReport("C4")
    names = alg.generator_names
    for a in names:
        for b in names:
            for c in names:
                lhs, rhs = jacobi_sides(
                    alg.bracket, alg.gen(a), alg.gen(b), alg.gen(c), alg.sign(a, b)
                )
                res = lhs - rhs
                rep.entries.append(AxiomEntry(f"({a},{b},{c})", not res, res or None))
    if any(
        v.generators() & alg.torsion for P in alg.table.values() for _, v in P.items()
    ):
        rep.notes.append("central coefficient unconstrained by (C4)")
    return rep


def check_all(alg: ConformalAlgebra) -> list[AxiomReport]:
    return [check_structure(alg), check_sesquilinear(alg), check_skew(alg), check_jacobi(alg)]

