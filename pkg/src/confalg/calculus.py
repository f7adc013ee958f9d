"""Polynomials in lam (and mu) with vector coefficients, and the generic
bracket manipulations built on them.

Coefficients can be any vector type supporting ``+``, ``-``, unary minus,
multiplication by integers and truthiness for zero.  Both
:class:`~confalg.conformal.ConformalElement` and
:class:`~confalg.fock.FockState` qualify.  Wherever the translation operator
appears it is passed in as ``partial`` and acts on the whole coefficient to
its right.
"""
from __future__ import annotations

from math import comb
from typing import Callable, Iterable


class LambdaPoly:
    """Polynomial in lam whose coefficients are vectors.

    Only nonzero coefficients are stored; ``coefficient(i)`` returns None for
    absent degrees.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs=None):
        if coeffs is None:
            coeffs = {}
        elif not isinstance(coeffs, dict):
            coeffs = dict(enumerate(coeffs))
        self._c = {i: v for i, v in coeffs.items() if v is not None and v}

    @property
    def degree(self) -> int:
        return max(self._c) if self._c else -1

    def coefficient(self, i: int):
        return self._c.get(i)

    def items(self):
        return sorted(self._c.items())

    def coefficients(self, zero) -> list:
        return [self._c.get(i, zero) for i in range(self.degree + 1)]

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if not isinstance(other, LambdaPoly):
            return NotImplemented
        return self._c == other._c

    def __add__(self, other: "LambdaPoly") -> "LambdaPoly":
        return LambdaPoly(_merge(self._c, other._c, 1))

    def __sub__(self, other: "LambdaPoly") -> "LambdaPoly":
        return LambdaPoly(_merge(self._c, other._c, -1))

    def __neg__(self):
        return LambdaPoly({i: -v for i, v in self._c.items()})

    def scale(self, s) -> "LambdaPoly":
        return LambdaPoly({i: v * s for i, v in self._c.items()})

    def shift(self, k: int) -> "LambdaPoly":
        """Multiply by lam**k."""
        return LambdaPoly({i + k: v for i, v in self._c.items()})

    def map(self, f: Callable) -> "LambdaPoly":
        return LambdaPoly({i: f(v) for i, v in self._c.items()})

    def __repr__(self):
        return "LambdaPoly({" + ", ".join(f"{i}: {v}" for i, v in self.items()) + "})"

    def __str__(self):
        if not self._c:
            return "0"
        return " + ".join(f"{_lam_power(i)}({v})" for i, v in self.items())


class LambdaMuPoly:
    """Polynomial in lam and mu; keys are ``(lam_degree, mu_degree)``."""

    __slots__ = ("_c",)

    def __init__(self, coeffs=None):
        self._c = {k: v for k, v in (coeffs or {}).items() if v}

    def items(self):
        return sorted(self._c.items())

    def coefficient(self, i: int, j: int):
        return self._c.get((i, j))

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if not isinstance(other, LambdaMuPoly):
            return NotImplemented
        return self._c == other._c

    def __add__(self, other):
        return LambdaMuPoly(_merge(self._c, other._c, 1))

    def __sub__(self, other):
        return LambdaMuPoly(_merge(self._c, other._c, -1))

    def __neg__(self):
        return LambdaMuPoly({k: -v for k, v in self._c.items()})

    def __repr__(self):
        return "LambdaMuPoly({" + ", ".join(f"{k}: {v}" for k, v in self.items()) + "})"

    def __str__(self):
        if not self._c:
            return "0"
        return " + ".join(
            f"{_lam_power(i, 'lam')}{_lam_power(j, 'mu')}({v})" for (i, j), v in self.items()
        )


def _lam_power(i: int, var: str = "lam") -> str:
    if i == 0:
        return ""
    return f"{var}*" if i == 1 else f"{var}^{i}*"


def _merge(a: dict, b: dict, sign: int) -> dict:
    out = dict(a)
    for k, v in b.items():
        if k in out:
            out[k] = out[k] + v if sign > 0 else out[k] - v
        else:
            out[k] = v if sign > 0 else -v
    return out


def _add_into(acc: dict, key, v):
    if not v:
        return
    if key in acc:
        acc[key] = acc[key] + v
    else:
        acc[key] = v


def _partial_powers(v, r: int, partial: Callable) -> list:
    out = [v]
    for _ in range(r):
        out.append(partial(out[-1]))
    return out


def shift_by_partial(P: LambdaPoly, n: int, partial: Callable) -> LambdaPoly:
    """Return ``(lam + D)**n P`` with D acting on the coefficients."""
    acc: dict = {}
    for k, v in P.items():
        powers = _partial_powers(v, n, partial)
        for r in range(n + 1):
            _add_into(acc, k + n - r, powers[r] * comb(n, r))
    return LambdaPoly(acc)


def skew_transform(P: LambdaPoly, sign: int, partial: Callable) -> LambdaPoly:
    """Return ``-sign * sum_k (-lam - D)**k v_k`` for ``P = sum_k lam**k v_k``.

    With ``P = [b_lam a]`` and ``sign = (-1)**(p(a) p(b))`` this is the value
    skew-symmetry predicts for ``[a_lam b]``.
    """
    acc: dict = {}
    for k, v in P.items():
        powers = _partial_powers(v, k, partial)
        for r in range(k + 1):
            # (-lam - D)^k = (-1)^k sum_r C(k, r) lam^(k-r) D^r
            coef = -sign * (-1) ** k * comb(k, r)
            _add_into(acc, k - r, powers[r] * coef)
    return LambdaPoly(acc)


def sesquilinear_pair(bracket: Callable, partial: Callable, x, y):
    """Both sides of the two sesquilinearity identities for ``x, y``.

    Returns ``((lhs_left, rhs_left), (lhs_right, rhs_right))`` where the left
    identity is ``[Dx_lam y] = -lam [x_lam y]`` and the right one is
    ``[x_lam Dy] = (lam + D)[x_lam y]``.
    """
    base = bracket(x, y)
    left = (bracket(partial(x), y), -base.shift(1))
    right = (bracket(x, partial(y)), shift_by_partial(base, 1, partial))
    return left, right


def jacobi_sides(bracket: Callable, a, b, c, sign_ab: int) -> tuple[LambdaMuPoly, LambdaMuPoly]:
    """Both sides of the Jacobi identity for the triple ``(a, b, c)``.

    Left:  ``[a_lam [b_mu c]] - sign_ab [b_mu [a_lam c]]``.
    Right: ``[[a_lam b]_{lam+mu} c]``, built by bracketing each lam-coefficient
    of ``[a_lam b]`` with ``c`` and substituting the inner variable by
    ``lam + mu``.
    """
    lhs: dict = {}
    for j, w in bracket(b, c).items():
        for i, v in bracket(a, w).items():
            _add_into(lhs, (i, j), v)
    for i, w in bracket(a, c).items():
        for j, v in bracket(b, w).items():
            _add_into(lhs, (i, j), -v if sign_ab > 0 else v)
    rhs: dict = {}
    for k, u in bracket(a, b).items():
        for l, v in bracket(u, c).items():
            # lam^k (lam + mu)^l
            for r in range(l + 1):
                _add_into(rhs, (k + l - r, r), v * comb(l, r))
    return LambdaMuPoly(lhs), LambdaMuPoly(rhs)


def lam_coefficients(polys: Iterable[LambdaPoly]) -> list:
    return [v for P in polys for _, v in P.items()]
