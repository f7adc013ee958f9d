"""Finitely generated C[D]-submodules of a conformal algebra.

The ambient module is ``Q[D]^f + (Q[D]/(D))^t``: one coordinate per
generator, in declaration order, with central generators killed by D.  A
submodule ``N`` is handled through its preimage ``N + D*Q[D]^t`` in the free
module ``Q[D]^(f+t)``, which is put in Hermite normal form: pivots in
strictly increasing columns, monic, entries above a pivot reduced modulo it.
Two generating sets give the same module exactly when the forms agree.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .conformal import ConformalAlgebra, ConformalElement, format_element
from .errors import UnsupportedConfiguration, UsageError

Poly = tuple  # coefficients in D, low degree first, no trailing zeros


def _trim(p: list) -> Poly:
    while p and not p[-1]:
        p.pop()
    return tuple(p)


def _sub(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    r = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = r[k + len(b) - 1] / lead
        if c:
            q[k] = c
            for i, y in enumerate(b):
                r[k + i] -= c * y
    return _trim(q), _trim(r[: len(b) - 1])


def _row_sub_mul(row: list, q: Poly, other: list) -> list:
    return [_sub(x, _mul(q, y)) for x, y in zip(row, other)]


def hermite_rows(rows: Iterable[Sequence[Poly]], ncols: int) -> list[tuple[Poly, ...]]:
    """Hermite normal form over Q[D] of the row module spanned by ``rows``."""
    pending = [list(r) for r in rows if any(r)]
    done: list[list] = []
    pivcols: list[int] = []
    for col in range(ncols):
        while True:
            nz = [r for r in pending if r[col]]
            if len(nz) <= 1:
                break
            piv = min(nz, key=lambda r: len(r[col]))
            for r in nz:
                if r is not piv:
                    q, _ = _divmod(r[col], piv[col])
                    r[:] = _row_sub_mul(r, q, piv)
            pending = [r for r in pending if any(r)]
        if nz:
            piv = nz[0]
            inv = 1 / piv[col][-1]
            piv[:] = [tuple(c * inv for c in x) for x in piv]
            pending = [r for r in pending if r is not piv]
            done.append(piv)
            pivcols.append(col)
    for i, col in enumerate(pivcols):
        for j in range(i):
            q, _ = _divmod(done[j][col], done[i][col])
            if q:
                done[j] = _row_sub_mul(done[j], q, done[i])
    return [tuple(r) for r in done]


class Submodule:
    """A C[D]-submodule of the ambient module of ``alg``.

    ``rows`` holds the canonical generators as ConformalElements; the
    pure relations ``D*C = 0`` of central generators are not listed.
    """

    def __init__(self, alg: ConformalAlgebra, generators: Iterable[ConformalElement] = ()):
        self.alg = alg
        self.ambient = tuple(alg.generator_names)
        self._torsion_cols = [i for i, g in enumerate(alg.generators) if g.central]
        lifted = [self._lift(e) for e in generators]
        n = len(self.ambient)
        for c in self._torsion_cols:
            rel = [()] * n
            rel[c] = (Fraction(0), Fraction(1))
            lifted.append(rel)
        self._hnf = hermite_rows(lifted, n)
        self._pivots = [next(i for i, x in enumerate(r) if x) for r in self._hnf]
        self.rows = [e for e in (self._project(r) for r in self._hnf) if e]

    def _lift(self, e: ConformalElement) -> list[Poly]:
        if e.parameters():
            raise UnsupportedConfiguration(
                "submodule operations need parameter-free scalars; specialize parameters first"
            )
        n = len(self.ambient)
        coords = [dict() for _ in range(n)]
        index = {g: i for i, g in enumerate(self.ambient)}
        for (g, k), c in e.items():
            if g not in index:
                raise UsageError(f"generator {g!r} is not in the ambient module")
            coords[index[g]][k] = c.constant_value()
        out = []
        for d in coords:
            top = max(d, default=-1)
            out.append(_trim([d.get(i, Fraction(0)) for i in range(top + 1)]))
        return out

    def _project(self, row: Sequence[Poly]) -> ConformalElement:
        terms = {}
        for g, p, decl in zip(self.ambient, row, self.alg.generators):
            if decl.central:
                p = p[:1]
            for k, c in enumerate(p):
                if c:
                    terms[(g, k)] = c
        return self.alg.element(terms)

    def _check_ambient(self, other: "Submodule"):
        if other.ambient != self.ambient or other.alg.torsion != self.alg.torsion:
            raise UsageError("submodules live in different ambient modules")

    def contains(self, e: ConformalElement) -> bool:
        v = self._lift(e)
        for row, col in zip(self._hnf, self._pivots):
            if v[col]:
                q, _ = _divmod(v[col], row[col])
                v = _row_sub_mul(v, q, row)
        return not any(v)

    def __contains__(self, e):
        return self.contains(e)

    def __add__(self, other: "Submodule") -> "Submodule":
        self._check_ambient(other)
        return Submodule(self.alg, self.rows + other.rows)

    def __eq__(self, other):
        if not isinstance(other, Submodule):
            return NotImplemented
        return self.ambient == other.ambient and self._hnf == other._hnf

    def __hash__(self):
        return hash((self.ambient, tuple(self._hnf)))

    def __bool__(self):
        return bool(self.rows)

    def is_zero(self) -> bool:
        return not self.rows

    def is_subset(self, other: "Submodule") -> bool:
        self._check_ambient(other)
        return all(other.contains(r) for r in self.rows)

    def pivot_profile(self) -> tuple:
        """(pivot column, pivot degree) per canonical row, for termination arguments."""
        return tuple((c, len(r[c]) - 1) for r, c in zip(self._hnf, self._pivots))

    def __str__(self):
        if not self.rows:
            return "0"
        order = list(self.ambient)
        return "<" + ", ".join(format_element(r, order) for r in self.rows) + ">"

    def __repr__(self):
        return f"Submodule({self})"


def canonical_form(generators: Iterable[ConformalElement], alg: ConformalAlgebra) -> Submodule:
    return Submodule(alg, generators)


def contains(M: Submodule, e: ConformalElement) -> bool:
    return M.contains(e)


def module_sum(M: Submodule, N: Submodule) -> Submodule:
    return M + N


def module_equal(M: Submodule, N: Submodule) -> bool:
    M._check_ambient(N)
    return M == N


def whole(alg: ConformalAlgebra) -> Submodule:
    return Submodule(alg, [alg.gen(g) for g in alg.generator_names])


def zero(alg: ConformalAlgebra) -> Submodule:
    return Submodule(alg, [])
