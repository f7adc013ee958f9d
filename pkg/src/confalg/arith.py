"""Exact scalar arithmetic.

Rationals are :class:`fractions.Fraction`.  :class:`Scalar` adds formal
parameters (a central charge, a level, ...) as a multivariate polynomial
ring over the rationals.  The module also carries the small pieces of exact
linear algebra the rest of the package needs.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb, lcm
from typing import Iterable, Mapping, Sequence

from .errors import UsageError

__all__ = [
    "Fraction",
    "Scalar",
    "UniPoly",
    "as_fraction",
    "substitute_shift",
    "EchelonSpace",
    "nullspace",
    "solve",
    "det_bareiss",
]

Monomial = tuple  # sorted tuple of parameter names, with repetition


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, Scalar):
        return x.constant_value()
    raise TypeError(f"cannot interpret {x!r} as a rational")


class Scalar:
    """Polynomial in declared parameters with rational coefficients.

    Terms map a parameter monomial (a sorted tuple of names, repeated for
    powers) to a nonzero :class:`Fraction`.  Instances are immutable.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        clean = {}
        if terms:
            for mono, val in terms.items():
                val = as_fraction(val)
                if val:
                    key = tuple(sorted(mono))
                    clean[key] = clean.get(key, 0) + val
                    if not clean[key]:
                        del clean[key]
        self._terms = clean
        self._hash = None

    @classmethod
    def const(cls, value) -> "Scalar":
        value = as_fraction(value)
        return cls({(): value}) if value else ZERO

    @classmethod
    def param(cls, name: str) -> "Scalar":
        return cls({(name,): Fraction(1)})

    @classmethod
    def coerce(cls, x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        return cls.const(x)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def is_constant(self) -> bool:
        return all(not mono for mono in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"scalar {self} depends on parameters")
        return self._terms.get((), Fraction(0))

    def parameters(self) -> set[str]:
        return {p for mono in self._terms for p in mono}

    def specialize(self, values: Mapping[str, Fraction]) -> "Scalar":
        out: dict = {}
        for mono, val in self._terms.items():
            rest = []
            for p in mono:
                if p in values:
                    val = val * values[p]
                else:
                    rest.append(p)
            key = tuple(rest)
            out[key] = out.get(key, 0) + val
        return Scalar(out)

    def __bool__(self):
        return bool(self._terms)

    def __add__(self, other):
        other = Scalar.coerce(other)
        out = dict(self._terms)
        for mono, val in other._terms.items():
            out[mono] = out.get(mono, 0) + val
        return Scalar(out)

    __radd__ = __add__

    def __neg__(self):
        return Scalar({m: -v for m, v in self._terms.items()})

    def __sub__(self, other):
        return self + (-Scalar.coerce(other))

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Scalar({m: v * other for m, v in self._terms.items()})
        if not isinstance(other, Scalar):
            return NotImplemented
        out: dict = {}
        for m1, v1 in self._terms.items():
            for m2, v2 in other._terms.items():
                key = tuple(sorted(m1 + m2))
                out[key] = out.get(key, 0) + v1 * v2
        return Scalar(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar.const(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def _sorted_terms(self):
        return sorted(self._terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for mono, val in self._sorted_terms():
            factors = []
            if val != 1 or not mono:
                factors.append(str(val) if val.denominator == 1 else f"({val})")
            factors.extend(mono)
            parts.append("*".join(factors))
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Scalar({self})"


ZERO = Scalar()
ONE = Scalar.const(1)


class UniPoly:
    """Univariate polynomial in a formal variable with Scalar coefficients."""

    __slots__ = ("var", "coeffs")

    def __init__(self, coeffs: Sequence = (), var: str = "lam"):
        cs = [Scalar.coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.var = var
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.var == other.var and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.var, self.coeffs))

    def __add__(self, other: "UniPoly"):
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (ZERO,) * (n - len(self.coeffs))
        b = other.coeffs + (ZERO,) * (n - len(other.coeffs))
        return UniPoly([x + y for x, y in zip(a, b)], self.var)

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return UniPoly([c * other for c in self.coeffs], self.var)
        if not self or not other:
            return UniPoly((), self.var)
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(out, self.var)

    def __repr__(self):
        return f"UniPoly({[str(c) for c in self.coeffs]}, var={self.var!r})"


def substitute_shift(p: UniPoly, image: str = "lam+mu") -> dict[tuple[int, int], Scalar]:
    """Expand ``p(lam + mu)`` into a bivariate coefficient map.

    Only the affine image ``lam -> lam + mu`` is expanded here; the
    ``lam -> -lam - D`` substitution needs the D-action and lives with the
    bracket calculus.
    """
    if image.replace(" ", "") != "lam+mu":
        raise UsageError(f"unsupported substitution image {image!r}")
    out: dict[tuple[int, int], Scalar] = {}
    for k, c in enumerate(p.coeffs):
        if not c:
            continue
        for r in range(k + 1):
            key = (k - r, r)
            out[key] = out.get(key, ZERO) + c * comb(k, r)
    return {k: v for k, v in out.items() if v}


# --- exact linear algebra -------------------------------------------------


class EchelonSpace:
    """Span of sparse vectors (dicts key -> Fraction) kept in reduced row form.

    Every stored row has a pivot key with coefficient 1 that appears in no
    other row, so membership is a single reduction pass.
    """

    def __init__(self, vectors: Iterable[Mapping] = ()):
        self.rows: dict = {}  # pivot key -> row dict
        for v in vectors:
            self.add(v)

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: Mapping) -> dict:
        v = {k: c for k, c in vec.items() if c}
        for piv, row in self.rows.items():
            c = v.get(piv)
            if c:
                for k, rc in row.items():
                    nv = v.get(k, 0) - c * rc
                    if nv:
                        v[k] = nv
                    else:
                        v.pop(k, None)
        return v

    def add(self, vec: Mapping) -> bool:
        """Insert ``vec``; return True when the span grew."""
        v = self.reduce(vec)
        if not v:
            return False
        piv = min(v)
        inv = 1 / Fraction(v[piv])
        v = {k: c * inv for k, c in v.items()}
        for p, row in self.rows.items():
            c = row.get(piv)
            if c:
                for k, vc in v.items():
                    nv = row.get(k, 0) - c * vc
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        self.rows[piv] = v
        return True

    def contains(self, vec: Mapping) -> bool:
        return not self.reduce(vec)

    def basis(self) -> list[dict]:
        return [dict(self.rows[p]) for p in sorted(self.rows)]


def _rref(matrix: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    m = [list(map(Fraction, row)) for row in matrix]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def nullspace(matrix: list[list[Fraction]], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right kernel of ``matrix`` over the rationals."""
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    if not matrix:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    red, pivots = _rref(matrix)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            vec[pc] = -row[f]
        basis.append(vec)
    return basis


def solve(matrix: list[list[Fraction]], rhs: list) -> list[Fraction]:
    """Solve a nonsingular square system exactly."""
    n = len(matrix)
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    red, pivots = _rref(aug)
    if pivots != list(range(n)):
        raise ZeroDivisionError("singular system")
    return [red[i][n] for i in range(n)]


def det_bareiss(matrix: Sequence[Sequence]) -> Fraction:
    """Determinant by fraction-free (Bareiss) elimination.

    Rational entries are first cleared to integers row by row so that all
    intermediate quantities stay integral.
    """
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    m = []
    for row in matrix:
        row = [as_fraction(x) for x in row]
        d = lcm(*(x.denominator for x in row))
        scale *= d
        m.append([int(x * d) for x in row])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return Fraction(0)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return Fraction(sign * m[n - 1][n - 1]) / scale
