"""Rank-one free boson vertex algebra on the polynomial Fock space.

States are polynomials in ``x1, x2, ...`` with ``wt(x_n) = n``; the vacuum
is the constant 1 and ``x_n = a_(-n) 1`` for the generating field ``a``.
The modes of ``a`` act by

    a_(k) = k d/dx_k   (k >= 1),    a_(0) = 0,    a_(-k) = x_k   (k >= 1),

and the field of a monomial ``x_m u`` is the normally ordered product of
``d^(m-1)a(z)/(m-1)!`` with the field of ``u``.  Every mode is homogeneous,
``wt(b_(n) c) = wt(b) + wt(c) - n - 1``, so each product is computed exactly;
a :class:`Cutoff` only bounds which weights are accepted and retained.
"""
from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Iterator, Mapping, Sequence

from .arith import EchelonSpace
from .calculus import LambdaPoly, jacobi_sides, sesquilinear_pair, skew_transform
from .errors import UsageError, WindowRefused

Monomial = tuple  # sorted indices with repetition; () is the vacuum


# -- states ----------------------------------------------------------------------


class FockState:
    """Finite rational combination of Fock monomials."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        clean = {}
        for mono, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                key = tuple(sorted(mono))
                if key and key[0] < 1:
                    raise UsageError(f"oscillator indices must be positive: {mono}")
                clean[key] = clean.get(key, 0) + c
                if not clean[key]:
                    del clean[key]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "FockState":
        s = cls.__new__(cls)
        s._terms = {k: v for k, v in terms.items() if v}
        s._hash = None
        return s

    @classmethod
    def vacuum(cls) -> "FockState":
        return cls._raw({(): Fraction(1)})

    @classmethod
    def monomial(cls, *indices: int) -> "FockState":
        return cls({tuple(indices): 1})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))

    @property
    def weight(self) -> int:
        """Largest weight present (-1 for the zero state)."""
        return max((sum(m) for m in self._terms), default=-1)

    def weights(self) -> set[int]:
        return {sum(m) for m in self._terms}

    def component(self, w: int) -> "FockState":
        return FockState._raw({m: c for m, c in self._terms.items() if sum(m) == w})

    def truncate(self, W: int) -> "FockState":
        return FockState._raw({m: c for m, c in self._terms.items() if sum(m) <= W})

    def __bool__(self):
        return bool(self._terms)

    def __add__(self, other):
        if not isinstance(other, FockState):
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return FockState._raw(out)

    def __sub__(self, other):
        if not isinstance(other, FockState):
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) - c
        return FockState._raw(out)

    def __neg__(self):
        return FockState._raw({m: -c for m, c in self._terms.items()})

    def __mul__(self, s):
        if isinstance(s, FockState):
            out: dict = {}
            for m1, c1 in self._terms.items():
                for m2, c2 in s._terms.items():
                    key = tuple(sorted(m1 + m2))
                    out[key] = out.get(key, 0) + c1 * c2
            return FockState._raw(out)
        if not isinstance(s, (int, Fraction)):
            return NotImplemented
        return FockState._raw({m: c * s for m, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, FockState):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for mono, c in self.items():
            body = format_monomial(mono)
            if body == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"FockState({self})"


def format_monomial(mono: Monomial) -> str:
    if not mono:
        return "1"
    counts: dict[int, int] = {}
    for k in mono:
        counts[k] = counts.get(k, 0) + 1
    return "*".join(f"x{k}" if e == 1 else f"x{k}^{e}" for k, e in sorted(counts.items()))


VACUUM = FockState.vacuum()


def parse_state(text: str) -> FockState:
    """Parse states like ``x1``, ``2*x1^2*x3 - 1/2*x2`` or ``1`` (the vacuum)."""
    src = text.replace(" ", "").replace("−", "-")
    if not src:
        raise UsageError("empty state expression")
    if src[0] not in "+-":
        src = "+" + src
    terms = re.findall(r"([+-])([^+-]+)", src)
    if "".join(s + b for s, b in terms) != src:
        raise UsageError(f"cannot parse state {text!r}")
    out = FockState()
    for sign, body in terms:
        coef = Fraction(-1 if sign == "-" else 1)
        mono: list[int] = []
        for factor in body.split("*"):
            m = re.fullmatch(r"x(\d+)(?:\^(\d+))?", factor)
            if m:
                k, e = int(m.group(1)), int(m.group(2) or 1)
                if k < 1:
                    raise UsageError(f"oscillator index must be positive in {text!r}")
                mono.extend([k] * e)
            elif re.fullmatch(r"\d+(/\d+)?", factor):
                coef *= Fraction(factor)
            else:
                raise UsageError(f"cannot parse factor {factor!r} in {text!r}")
        out = out + FockState({tuple(mono): coef})
    return out


# -- basis -----------------------------------------------------------------------


def _partitions(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield rest + (k,)


@lru_cache(maxsize=None)
def weight_basis(w: int) -> tuple[Monomial, ...]:
    """Monomials of weight ``w`` (partitions of w), in a fixed order."""
    return tuple(sorted(tuple(sorted(p)) for p in _partitions(w, w)))


def basis_up_to(W: int) -> list[FockState]:
    return [FockState._raw({m: Fraction(1)}) for w in range(W + 1) for m in weight_basis(w)]


# -- modes -----------------------------------------------------------------------


@dataclass(frozen=True)
class Cutoff:
    W: int
    slack: int = 4

    def __post_init__(self):
        if self.W < 1:
            raise UsageError("cutoff W must be at least 1")
        if self.slack < 0:
            raise UsageError("slack must be nonnegative")


def _wt(m: Monomial) -> int:
    return sum(m)


def _gbinom(top: int, k: int) -> int:
    """Binomial coefficient C(top, k) for any integer ``top`` and k >= 0."""
    if top >= 0:
        return comb(top, k)
    return (-1) ** k * comb(k - top - 1, k)


def _a_mode(k: int, mono: Monomial) -> tuple[Monomial, int] | None:
    """The generator mode a_(k) on a monomial: (result monomial, multiplier)."""
    if k < 0:
        return tuple(sorted(mono + (-k,))), 1
    if k == 0:
        return None
    mult = mono.count(k)
    if not mult:
        return None
    i = mono.index(k)
    return mono[:i] + mono[i + 1 :], k * mult


@lru_cache(maxsize=None)
def _act(b: Monomial, n: int, c: Monomial) -> dict:
    """``b_(n) c`` on monomials, with integer coefficients.  The returned
    dict must not be mutated."""
    if not b:
        return {c: 1} if n == -1 else {}
    wu_c = _wt(b) + _wt(c) - n - 1
    if wu_c < 0:
        return {}
    m = b[-1]
    u = b[:-1]
    # field of x_m is d^(m-1)a/(m-1)!, whose (j)-mode is C(-k-1, m-1) a_(k), k = j - m + 1
    if not u:
        k = n - m + 1
        coef = _gbinom(-k - 1, m - 1)
        r = _a_mode(k, c) if coef else None
        return {r[0]: coef * r[1]} if r else {}
    out: dict = defaultdict(int)
    wu, wc = _wt(u), _wt(c)
    # creation part, k <= -m: a_(k) u_(n-k-m) c; u_(l) c vanishes once l > wu + wc - 1
    k = -m
    while n - k - m <= wu + wc - 1:
        coef = comb(-k - 1, m - 1)
        for mono, val in _act(u, n - k - m, c).items():
            out[tuple(sorted(mono + (-k,)))] += coef * val
        k -= 1
    # annihilation part, k >= 1: u_(n-k-m) a_(k) c
    for k in sorted(set(c)):
        r = _a_mode(k, c)
        coef = _gbinom(-k - 1, m - 1) * r[1]
        for mono, val in _act(u, n - k - m, r[0]).items():
            out[mono] += coef * val
    return {mono: v for mono, v in out.items() if v}


def _apply(b: FockState, n: int, c: FockState) -> FockState:
    # integer coefficients stay ints until the end; Fraction arithmetic is slow
    out: dict = defaultdict(int)
    for bm, bc in b._terms.items():
        for cm, cc in c._terms.items():
            f = bc * cc
            if f.denominator == 1:
                f = f.numerator
            for mono, val in _act(bm, n, cm).items():
                out[mono] += f * val
    return FockState._raw({k: Fraction(v) for k, v in out.items() if v})


def mode_action(b: FockState, n: int, c: FockState, cut: Cutoff | None = None) -> FockState:
    """``b_(n) c``.  With a cutoff, inputs above ``W + slack`` are refused and
    output components above ``W`` are dropped."""
    if cut is not None:
        limit = cut.W + cut.slack
        for s in (b, c):
            if s.weight > limit:
                raise WindowRefused(f"input weight {s.weight} exceeds W + slack = {limit}", s.weight - cut.slack)
        return _apply(b, n, c).truncate(cut.W)
    return _apply(b, n, c)


def translation(c: FockState) -> FockState:
    """T = sum_k k x_(k+1) d/dx_k; equivalently T c = c_(-2) 1."""
    out: dict = defaultdict(Fraction)
    for mono, val in c._terms.items():
        for k in set(mono):
            i = mono.index(k)
            new = tuple(sorted(mono[:i] + mono[i + 1 :] + (k + 1,)))
            out[new] += val * k * mono.count(k)
    return FockState._raw(out)


def fock_lambda_bracket(a: FockState, b: FockState, cut: Cutoff | None = None) -> LambdaPoly:
    """``[a_lam b] = sum_n lam^n/n! a_(n) b``; the sum stops at wt(a)+wt(b)-1."""
    top = a.weight + b.weight - 1
    coeffs = {}
    for n in range(top + 1):
        v = mode_action(a, n, b, cut)
        if v:
            coeffs[n] = v * Fraction(1, factorial(n))
    return LambdaPoly(coeffs)


@lru_cache(maxsize=4096)
def _nonneg_products(a: FockState, b: FockState) -> dict[int, FockState]:
    """``{n: a_(n) b}`` for n >= 0.  Cached; the returned dict must not be mutated."""
    out = {}
    for n in range(a.weight + b.weight):
        v = _apply(a, n, b)
        if v:
            out[n] = v
    return out


# -- checks ----------------------------------------------------------------------


@dataclass
class Check:
    name: str
    status: str  # pass | fail | inconclusive | refused
    witness: str | None = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def _refuse_if(cond: bool, msg: str, required: int) -> None:
    if cond:
        raise WindowRefused(msg, required)


def _label(s: FockState) -> str:
    return str(s)


def borcherds_sides(a: FockState, m: int, b: FockState, n: int, c: FockState) -> tuple[FockState, FockState]:
    """``[a_(m), b_(n)] c`` and ``sum_j C(m, j) (a_(j) b)_(m+n-j) c``."""
    lhs = _apply(a, m, _apply(b, n, c)) - _apply(b, n, _apply(a, m, c))
    rhs = FockState()
    for j, ab in _nonneg_products(a, b).items():
        coef = _gbinom(m, j)
        if coef:
            rhs = rhs + _apply(ab, m + n - j, c) * coef
    return lhs, rhs


def verify_borcherds(a: FockState, b: FockState, c: FockState, m: int, n: int, cut: Cutoff) -> Check:
    """The commutator formula on one instance; exact, since every product is
    homogeneous and computed without truncation.  Sources must lie within W."""
    top = max(a.weight, b.weight, c.weight)
    _refuse_if(top > cut.W, f"source weight {top} exceeds cutoff {cut.W}", top)
    lhs, rhs = borcherds_sides(a, m, b, n, c)
    name = f"borcherds a={_label(a)} b={_label(b)} c={_label(c)} m={m} n={n}"
    if lhs == rhs:
        return Check(name, "pass")
    return Check(name, "fail", f"residual {lhs - rhs}")


def _z_coefficients_Y(a: FockState, b: FockState, pmin: int, pmax: int, sign: int = 1) -> dict[int, FockState]:
    """Coefficients of z^p in Y(a, sign*z) b for pmin <= p <= pmax."""
    out = {}
    for p in range(pmin, pmax + 1):
        j = -p - 1
        v = _apply(a, j, b)
        if v:
            out[p] = v * (sign ** (p % 2)) if sign < 0 else v
    return out


def skew_vertex_sides(a: FockState, b: FockState, pmax: int) -> tuple[dict, dict]:
    """z-coefficients of ``Y(a,z)b`` and ``e^{zT} Y(b,-z)a`` up to z^pmax."""
    low = -(a.weight + b.weight)
    lhs = _z_coefficients_Y(a, b, low, pmax)
    ya = _z_coefficients_Y(b, a, low, pmax, sign=-1)
    rhs: dict = {}
    for q, v in ya.items():
        t = v
        for k in range(0, pmax - q + 1):
            if not t:
                break
            p = q + k
            rhs[p] = rhs[p] + t if p in rhs else t
            t = translation(t) * Fraction(1, k + 1)
    return lhs, {p: v for p, v in rhs.items() if v}


def verify_skew_vertex(a: FockState, b: FockState, cut: Cutoff) -> Check:
    """Skew-commutativity on every z-power whose coefficient has weight <= W."""
    need = 2 * max(a.weight, b.weight)
    _refuse_if(need > cut.W, f"skew check needs weights <= W/2 (W={cut.W})", need)
    pmax = cut.W - a.weight - b.weight
    lhs, rhs = skew_vertex_sides(a, b, pmax)
    name = f"skew a={_label(a)} b={_label(b)}"
    bad = [p for p in sorted(set(lhs) | set(rhs)) if lhs.get(p, FockState()) != rhs.get(p, FockState())]
    if not bad:
        return Check(name, "pass")
    p = bad[0]
    return Check(name, "fail", f"z^{p}: {lhs.get(p, FockState())} vs {rhs.get(p, FockState())}")


def wick_sides(a: FockState, b: FockState, c: FockState, pmin: int, pmax: int) -> tuple[dict, dict]:
    """Coefficients, keyed by (lam-degree, z-power), of both sides of
    ``[a_lam Y(b,z) c] = e^{lam z} Y([a_lam b], z) c + Y(b,z) [a_lam c]``."""
    lhs: dict = {}
    rhs: dict = {}

    def add(d, key, v):
        if v:
            d[key] = d[key] + v if key in d else v

    ab = _nonneg_products(a, b)
    ac = _nonneg_products(a, c)
    for p in range(pmin, pmax + 1):
        j = -p - 1
        bc = _apply(b, j, c)
        if bc:
            for N, v in _nonneg_products(a, bc).items():
                add(lhs, (N, p), v * Fraction(1, factorial(N)))
        # e^{lam z} Y([a_lam b], z) c: lam^(r+s) z^p from lam^r z^r / r! and (a_(s) b)_(t), t = r - p - 1
        for s, v in ab.items():
            r = 0
            while True:
                t = r - p - 1
                # (a_(s) b)_(t) c vanishes for t >= wt + wt(c)
                if t > v.weight + c.weight - 1:
                    break
                w = _apply(v, t, c)
                add(rhs, (r + s, p), w * Fraction(1, factorial(r) * factorial(s)))
                r += 1
        for s, v in ac.items():
            add(rhs, (s, p), _apply(b, j, v) * Fraction(1, factorial(s)))
    return lhs, rhs


def verify_wick(a: FockState, b: FockState, c: FockState, cut: Cutoff) -> Check:
    """Generalized Wick formula, coefficient-wise in (lam, z).

    z-powers run from the lowest nonzero one up to the power where
    ``Y(b,z)c`` reaches weight W; every lam-degree is compared.
    """
    top = max(a.weight, b.weight, c.weight)
    _refuse_if(top > cut.W, f"source weight {top} exceeds cutoff {cut.W}", top)
    pmin = -(b.weight + c.weight)
    pmax = cut.W - b.weight - c.weight
    _refuse_if(pmax < pmin, "empty z-window", b.weight + c.weight)
    lhs, rhs = wick_sides(a, b, c, pmin, pmax)
    name = f"wick a={_label(a)} b={_label(b)} c={_label(c)}"
    bad = sorted(k for k in set(lhs) | set(rhs) if lhs.get(k, FockState()) != rhs.get(k, FockState()))
    if not bad:
        return Check(name, "pass")
    N, p = bad[0]
    return Check(
        name,
        "fail",
        f"lam^{N} z^{p}: {lhs.get(bad[0], FockState())} vs {rhs.get(bad[0], FockState())}",
    )


def locality_order(a: FockState, b: FockState) -> int:
    """Least N with a_(j) b = 0 for every j >= N."""
    for j in range(a.weight + b.weight - 1, -1, -1):
        if _apply(a, j, b):
            return j + 1
    return 0


def verify_axioms(cut: Cutoff, max_weight: int | None = None, mode_range: int = 4) -> list[Check]:
    """Vacuum and translation identities in mode form, plus locality orders.

    States come from the weight-<=max_weight basis (default: W//2); each
    identity is checked for every mode index with |n| <= mode_range + weight.
    """
    mw = cut.W // 2 if max_weight is None else max_weight
    _refuse_if(2 * mw > cut.W, f"axiom checks need max weight <= W/2 (W={cut.W})", 2 * mw)
    basis = basis_up_to(mw)
    checks: list[Check] = []

    def record(name: str, failures: list[str]):
        checks.append(Check(name, "fail", failures[0]) if failures else Check(name, "pass"))

    # vacuum field is the identity
    fails = []
    for c in basis:
        for n in range(-mode_range - 1, mode_range + 1):
            got = _apply(VACUUM, n, c)
            want = c if n == -1 else FockState()
            if got != want:
                fails.append(f"1_({n}) {c} = {got}")
    record("vacuum: Y(1,z) = id", fails)

    # creation property and a_(-2) 1 = T a
    fails = []
    for a in basis:
        if _apply(a, -1, VACUUM) != a:
            fails.append(f"{a}_(-1) 1 != {a}")
        for n in range(0, a.weight + mode_range + 1):
            if _apply(a, n, VACUUM):
                fails.append(f"{a}_({n}) 1 != 0")
    record("vacuum: a_(-1) 1 = a, a_(n) 1 = 0 for n >= 0", fails)

    fails = [f"{a}: {_apply(a, -2, VACUUM)} vs {translation(a)}" for a in basis if _apply(a, -2, VACUUM) != translation(a)]
    record("translation: a_(-2) 1 = T a", fails)

    T1 = translation(VACUUM)
    record("translation: T 1 = 0", [f"T 1 = {T1}"] if T1 else [])

    # [T, b_(n)] = -n b_(n-1) and (T b)_(n) = -n b_(n-1)
    fails_comm, fails_deriv = [], []
    for b in basis:
        Tb = translation(b)
        for c in basis:
            for n in range(-mode_range, mode_range + 1):
                want = _apply(b, n - 1, c) * (-n)
                comm = translation(_apply(b, n, c)) - _apply(b, n, translation(c))
                if comm != want:
                    fails_comm.append(f"b={b} c={c} n={n}")
                if _apply(Tb, n, c) != want:
                    fails_deriv.append(f"b={b} c={c} n={n}")
    record("translation: [T, b_(n)] = -n b_(n-1)", fails_comm)
    record("translation: (T b)_(n) = -n b_(n-1)", fails_deriv)

    orders = []
    for a in basis:
        for b in basis:
            orders.append(f"({a},{b}):{locality_order(a, b)}")
    checks.append(Check("locality orders finite", "pass", " ".join(orders)))
    return checks


# -- graded subspaces ---------------------------------------------------------------


class GradedSubspace:
    """Subspace of the Fock space spanned by weight-homogeneous vectors up to
    a maximal weight, stored per weight in reduced row form."""

    def __init__(self, max_weight: int, vectors: Iterable[FockState] = ()):
        self.max_weight = max_weight
        self.spaces: dict[int, EchelonSpace] = {}
        for v in vectors:
            self.add(v)

    def add(self, v: FockState) -> bool:
        grew = False
        for w in v.weights():
            if w <= self.max_weight:
                grew |= self.spaces.setdefault(w, EchelonSpace()).add(v.component(w)._terms)
        return grew

    def contains(self, v: FockState) -> bool:
        for w in v.weights():
            if w > self.max_weight:
                raise UsageError(f"weight {w} is beyond the stored range {self.max_weight}")
            comp = v.component(w)._terms
            if w not in self.spaces:
                return False
            if not self.spaces[w].contains(comp):
                return False
        return True

    def dim(self, w: int) -> int:
        return len(self.spaces.get(w, ()))

    def dims(self) -> list[int]:
        return [self.dim(w) for w in range(self.max_weight + 1)]

    def is_full(self, w: int) -> bool:
        return self.dim(w) == len(weight_basis(w))

    def vectors(self, max_weight: int | None = None) -> list[FockState]:
        top = self.max_weight if max_weight is None else max_weight
        return [
            FockState._raw(row)
            for w in sorted(self.spaces)
            if w <= top
            for row in self.spaces[w].basis()
        ]

    def restrict(self, max_weight: int) -> "GradedSubspace":
        return GradedSubspace(max_weight, self.vectors(max_weight))

    def __eq__(self, other):
        if not isinstance(other, GradedSubspace):
            return NotImplemented
        top = min(self.max_weight, other.max_weight)
        for w in range(top + 1):
            a, b = self.spaces.get(w), other.spaces.get(w)
            ra = a.basis() if a else []
            rb = b.basis() if b else []
            if ra != rb:
                return False
        return True


def translation_closure(gens: Iterable[FockState], max_weight: int) -> GradedSubspace:
    """Span of ``T^k g`` for the generators, kept up to ``max_weight``."""
    S = GradedSubspace(max_weight)
    for g in gens:
        v = g
        while v and min(v.weights()) <= max_weight:
            S.add(v)
            v = translation(v)
    return S


def full_space(max_weight: int) -> GradedSubspace:
    S = GradedSubspace(max_weight)
    for w in range(max_weight + 1):
        S.spaces[w] = EchelonSpace({m: Fraction(1)} for m in weight_basis(w))
    return S


def subspace_product(A: GradedSubspace, B: GradedSubspace, cut: Cutoff, max_weight: int | None = None) -> GradedSubspace:
    """Span of ``a_(j) b`` over stored vectors a of A, b of B and all j,
    kept at output weights <= max_weight (default W)."""
    top = cut.W if max_weight is None else max_weight
    out = GradedSubspace(top)
    avecs, bvecs = A.vectors(), B.vectors()
    for a in avecs:
        wa = a.weight
        for b in bvecs:
            wb = b.weight
            # output weight wa + wb - j - 1 must lie in [0, top]
            for j in range(wa + wb - 1 - top, wa + wb):
                w_out = wa + wb - j - 1
                if out.is_full(w_out):
                    continue
                out.add(_apply(a, j, b))
    return out


# -- the ideal harness ---------------------------------------------------------------


@dataclass
class TheoremReport:
    generators: list[FockState]
    cut: Cutoff
    checked_up_to: int
    J_dims: list[int]
    violations: list[tuple[int, str]] = field(default_factory=list)
    checks: list[Check] = field(default_factory=list)
    caveat: str = ""

    @property
    def holds(self) -> bool:
        return not self.violations


def bracket_span(I: GradedSubspace, cut: Cutoff) -> GradedSubspace:
    """``[I, V]``: lam-coefficients ``i_(n) v`` (n >= 0) with sources up to
    W + slack, kept at weights <= W."""
    W, src = cut.W, cut.W + cut.slack
    J = GradedSubspace(W)
    for i in I.vectors(src):
        wi = i.weight
        for wv in range(src + 1):
            for vm in weight_basis(wv):
                v = FockState._raw({vm: Fraction(1)})
                # output weight wi + wv - n - 1 <= W with n >= 0
                for n in range(max(0, wi + wv - 1 - W), wi + wv):
                    if J.is_full(wi + wv - n - 1):
                        continue
                    J.add(_apply(i, n, v))
    return J


def theorem_ideal_check(I_gens: Sequence[FockState], cut: Cutoff) -> TheoremReport:
    """Falsification harness for "[I, V] is a vertex ideal" at truncation.

    I is the translation closure of ``I_gens`` up to W + slack; J = [I, V]
    is built from sources up to W + slack and kept up to W; then every
    product ``j_(k) v`` with j in J, v a basis state of weight <= W, landing
    at weight <= W - slack is tested for membership in J.  A pass is a
    necessary condition at this truncation, not a proof.
    """
    W, slack = cut.W, cut.slack
    low = W - slack
    for g in I_gens:
        _refuse_if(g.weight > low, f"generator {g} has weight above W - slack = {low}", g.weight + slack)
    I = translation_closure(I_gens, W + slack)
    J = bracket_span(I, cut)
    report = TheoremReport(
        list(I_gens),
        cut,
        low,
        J.dims(),
        caveat=f"truncation-level necessary condition (W={W}, slack={slack}); not a proof",
    )
    Jlow = J.restrict(low)
    vbasis = basis_up_to(W)
    for w_out in range(low + 1):
        if Jlow.is_full(w_out):
            continue  # everything of this weight lies in J
        for j in J.vectors():
            wj = j.weight
            for v in vbasis:
                k = wj + v.weight - w_out - 1
                prod = _apply(j, k, v)
                if prod and not Jlow.contains(prod):
                    report.violations.append((w_out, f"({j})_({k}) ({v}) = {prod}"))
    label = "{" + ", ".join(str(g) for g in I_gens) + "}"
    name = f"[I,V]·V ⊆ [I,V] for I = <{label}> (truncation-level: weights <= {low}, W={W}, slack={slack})"
    if report.violations:
        report.checks.append(Check(name, "fail", report.violations[0][1]))
    else:
        report.checks.append(Check(name, "pass"))
    if list(I_gens) == [VACUUM]:
        x1 = FockState.monomial(1)
        prod = _apply(VACUUM, -1, x1)
        ok = prod == x1 and not I.restrict(1).contains(x1)
        report.checks.append(
            Check(
                "C1 is not a vertex ideal: 1_(-1) x1 = x1 lies outside span{1}",
                "pass" if ok else "fail",
                None if ok else f"1_(-1) x1 = {prod}",
            )
        )
    return report


def vacuum_dichotomy(max_weight: int) -> list[Check]:
    """C1 is central for the lambda-bracket but not closed under the modes."""
    bad = [str(b) for b in basis_up_to(max_weight) if fock_lambda_bracket(b, VACUUM)]
    central = Check(
        f"[b_lam 1] = 0 for all basis b of weight <= {max_weight}",
        "fail" if bad else "pass",
        bad[0] if bad else None,
    )
    x1 = FockState.monomial(1)
    prod = _apply(x1, -1, VACUUM)
    outside = prod == x1 and any(m for m in prod._terms)
    not_ideal = Check(
        "x1_(-1) 1 = x1 is not in Q·1",
        "pass" if outside else "fail",
        None if outside else f"x1_(-1) 1 = {prod}",
    )
    return [central, not_ideal]


# -- underlying conformal algebra -----------------------------------------------------


@dataclass
class FockConformal:
    """lam-brackets among basis states of weight <= max_weight, with D = T."""

    basis: list[FockState]
    table: dict[tuple[int, int], LambdaPoly]
    checks: list[Check]

    def bracket(self, x: FockState, y: FockState) -> LambdaPoly:
        return fock_lambda_bracket(x, y)


def extract_conformal(cut: Cutoff, max_weight: int, basis: Sequence[FockState] | None = None) -> FockConformal:
    """Tabulate ``[a_lam b]`` on a basis and check the conformal axioms on it.

    (C2) and (C3) are checked on every basis pair and (C4) on every triple,
    all with D acting as T.
    """
    _refuse_if(3 * max_weight > cut.W, f"extraction needs max_weight <= W/3 (W={cut.W})", 3 * max_weight)
    states = list(basis) if basis is not None else basis_up_to(max_weight)
    for s in states:
        _refuse_if(s.weight > max_weight, f"basis state {s} above max_weight", 3 * s.weight)
    table = {}
    for i, x in enumerate(states):
        for j, y in enumerate(states):
            table[(i, j)] = fock_lambda_bracket(x, y)
    checks: list[Check] = []
    fails: list[str] = []
    for x in states:
        for y in states:
            (l1, r1), (l2, r2) = sesquilinear_pair(fock_lambda_bracket, translation, x, y)
            if l1 != r1 or l2 != r2:
                fails.append(f"({x},{y})")
    checks.append(Check("C2 sesquilinearity (D = T)", "fail" if fails else "pass", fails[0] if fails else None))
    fails = []
    for i, x in enumerate(states):
        for j, y in enumerate(states):
            if table[(i, j)] != skew_transform(table[(j, i)], 1, translation):
                fails.append(f"({x},{y})")
    checks.append(Check("C3 skew-symmetry (D = T)", "fail" if fails else "pass", fails[0] if fails else None))
    fails = []
    for x in states:
        for y in states:
            for z in states:
                lhs, rhs = jacobi_sides(fock_lambda_bracket, x, y, z, 1)
                if lhs != rhs:
                    fails.append(f"({x},{y},{z})")
    checks.append(Check("C4 Jacobi identity (D = T)", "fail" if fails else "pass", fails[0] if fails else None))
    return FockConformal(states, table, checks)
