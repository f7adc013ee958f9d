"""Recovering p(lam) from the lam-coefficients of ``e^{lam z} p(lam) + q(lam)``.

Laurent polynomials in z are dicts ``{(z_power, coord): Fraction}``: the
coordinate index lets the coefficients live in a vector space Q^d (d = 1 for
plain rational data), so that "coefficients in a subspace U" can be tested
for coordinate subspaces U.

For ``N > deg q`` and ``N >= deg p = m`` the coefficient of ``lam^N`` is
``z^N sum_i p_i(z) z^-i / (N - i)!``; taking m + 1 consecutive values of N
gives a square system whose matrix has entries ``1/(N + j - i)!`` up to
transposition, and that matrix is invertible.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial, prod
from typing import Mapping

from .arith import det_bareiss, solve
from .errors import UsageError

Laurent = dict  # {(z_power, coord): Fraction}


def factorial_matrix(m: int, N: int) -> list[list[Fraction]]:
    """(m+1) x (m+1) matrix with (i, j) entry ``1/(N + j - i)!``."""
    if m < 0:
        raise UsageError("m must be nonnegative")
    if N < 1 or N < m:
        raise UsageError(f"need N >= max(1, m); got m={m}, N={N}")
    return [[Fraction(1, factorial(N + j - i)) for j in range(m + 1)] for i in range(m + 1)]


def factorial_det_closed_form(m: int, N: int) -> Fraction:
    return Fraction(
        prod(factorial(k) for k in range(1, m + 1)),
        prod(factorial(N + k) for k in range(m + 1)),
    )


def factorial_det_check(m: int, N: int) -> tuple[Fraction, Fraction, bool]:
    """Exact determinant by Bareiss elimination against the closed form."""
    computed = det_bareiss(factorial_matrix(m, N))
    closed = factorial_det_closed_form(m, N)
    return computed, closed, computed == closed


def _clean(p: Mapping) -> Laurent:
    return {k: Fraction(v) for k, v in p.items() if v}


def _add(acc: dict, p: Mapping, scale: Fraction = Fraction(1), zshift: int = 0):
    for (e, c), v in p.items():
        key = (e + zshift, c)
        nv = acc.get(key, 0) + v * scale
        if nv:
            acc[key] = nv
        else:
            acc.pop(key, None)


def forward_expand(p: Mapping[int, Laurent], q: Mapping[int, Laurent], degrees) -> dict[int, Laurent]:
    """lam-coefficients of ``e^{lam z} p(lam) + q(lam)`` for the given degrees."""
    out = {}
    for N in degrees:
        acc: dict = {}
        for i, pi in p.items():
            if i <= N:
                _add(acc, pi, Fraction(1, factorial(N - i)), N - i)
        if N in q:
            _add(acc, q[N])
        out[N] = acc
    return out


def separation_window(m: int, n: int) -> list[int]:
    """lam-degrees used to recover p: m + 1 consecutive degrees above n, none below m."""
    start = max(n + 1, m, 1)
    return list(range(start, start + m + 1))


def separate(coefficients: Mapping[int, Laurent], m: int, n: int) -> dict[int, Laurent]:
    """Recover ``p_0, ..., p_m`` from lam-coefficients of ``e^{lam z} p + q``.

    ``m`` bounds deg p and ``n`` bounds deg q (use -1 when q = 0).  The input
    must contain every degree returned by :func:`separation_window`.
    """
    if m < 0 or n < -1:
        raise UsageError("degree bounds must satisfy m >= 0, n >= -1")
    window = separation_window(m, n)
    missing = [N for N in window if N not in coefficients]
    if missing:
        raise UsageError(f"input lacks lam-degrees {missing}")
    N0 = window[0]
    # row r (degree N0 + r), column i: 1/(N0 + r - i)!; the transpose of factorial_matrix
    F = factorial_matrix(m, N0)
    A = [[F[i][r] for i in range(m + 1)] for r in range(m + 1)]
    # right-hand sides: c_N(z) / z^N, solved independently for each (z_power, coord)
    keys = set()
    rhs_rows = []
    for N in window:
        shifted = {(e - N, c): v for (e, c), v in _clean(coefficients[N]).items()}
        rhs_rows.append(shifted)
        keys |= set(shifted)
    size = m + 1
    inv_cols = [solve(A, [Fraction(int(r == c)) for r in range(size)]) for c in range(size)]
    recovered: dict[int, Laurent] = {i: {} for i in range(size)}
    for key in sorted(keys):
        b = [row.get(key, Fraction(0)) for row in rhs_rows]
        y = [sum(inv_cols[c][i] * b[c] for c in range(size)) for i in range(size)]
        for i, v in enumerate(y):
            if v:
                e, c = key
                recovered[i][(e + i, c)] = v
    return recovered
