"""Text format for conformal algebra presentations (``.lca`` files).

::

    // comments run to the end of the line
    algebra virasoro {
        param c;
        generator L : even;
        central C;
        bracket [L, L] = (D + 2*lam) L + (1/12)*lam^3*c*C;
    }

Each additive term of a bracket must reduce to
``scalar * lam^i * D^k * generator``; ``D`` acts on the generator to its
right.  Factors may be juxtaposed or joined with ``*``.  Brackets that are
not written are zero.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .arith import Fraction, Scalar
from .calculus import LambdaPoly
from .conformal import ConformalAlgebra, ConformalElement, GeneratorDecl, check_jacobi, check_skew
from .errors import UsageError

ERROR_KINDS = (
    "syntax",
    "unknown-generator",
    "parity-mismatch",
    "duplicate-bracket",
    "torsion-misuse",
    "parameter-undeclared",
)


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    start: int  # byte offsets into the UTF-8 source, half-open
    end: int

    def __str__(self):
        return f"{self.line}:{self.column}"


@dataclass
class ParseError:
    span: SourceSpan
    kind: str
    message: str

    def __str__(self):
        return f"{self.span}: {self.kind}: {self.message}"


class ParseErrors(UsageError):
    def __init__(self, errors: list[ParseError]):
        self.errors = errors
        super().__init__("\n".join(str(e) for e in errors))


# -- lexer ---------------------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+|//[^\n]*)
  | (?P<num>\d+(?:\s*/\s*\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[{}\[\](),;:=+*^\-−])
    """,
    re.VERBOSE,
)


@dataclass
class Token:
    kind: str  # num | ident | punct | eof
    text: str
    span: SourceSpan


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    line, line_start = 1, 0
    encoded_upto = 0
    byte_pos = 0

    def span(a: int, b: int) -> SourceSpan:
        nonlocal encoded_upto, byte_pos
        byte_pos += len(text[encoded_upto:a].encode())
        encoded_upto = a
        start = byte_pos
        return SourceSpan(line, a - line_start + 1, start, start + len(text[a:b].encode()))

    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseErrors([ParseError(span(pos, pos + 1), "syntax", f"unexpected character {text[pos]!r}")])
        kind = m.lastgroup
        if kind != "ws":
            value = m.group()
            if value == "−":
                value = "-"
            tokens.append(Token(kind, value, span(pos, m.end())))
        for i in range(pos, m.end()):
            if text[i] == "\n":
                line += 1
                line_start = i + 1
        pos = m.end()
    tokens.append(Token("eof", "", span(len(text), len(text))))
    return tokens


# -- expression terms ----------------------------------------------------------


@dataclass
class _Term:
    coef: Scalar
    lam: int = 0
    d: int = 0
    gen: str | None = None

    def times(self, other: "_Term") -> "_Term":
        if self.gen and other.gen:
            raise ValueError("product of two generators")
        if self.gen and other.d:
            raise ValueError("D must stand to the left of the generator it acts on")
        return _Term(self.coef * other.coef, self.lam + other.lam, self.d + other.d, self.gen or other.gen)


class _Abort(Exception):
    pass


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0
        self.errors: list[ParseError] = []
        # declarations of the algebra currently being parsed
        self.params: set[str] = set()
        self.gens: dict[str, GeneratorDecl] = {}
        self.allow_lam = True

    # token helpers
    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        if t.kind != "eof":
            self.i += 1
        return t

    def at(self, text: str) -> bool:
        return self.tok.kind in ("punct", "ident") and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail(self.tok.span, "syntax", f"expected {text!r}, found {self.tok.text or 'end of input'!r}")
        return self.advance()

    def expect_kind(self, kind: str, what: str) -> Token:
        if self.tok.kind != kind:
            self.fail(self.tok.span, "syntax", f"expected {what}, found {self.tok.text or 'end of input'!r}")
        return self.advance()

    def fail(self, span: SourceSpan, kind: str, msg: str):
        self.errors.append(ParseError(span, kind, msg))
        raise _Abort

    def report(self, span: SourceSpan, kind: str, msg: str):
        self.errors.append(ParseError(span, kind, msg))

    def recover(self):
        while self.tok.kind != "eof" and not self.at(";") and not self.at("}"):
            self.advance()
        if self.at(";"):
            self.advance()

    # grammar
    def file(self) -> list[ConformalAlgebra]:
        out = []
        while self.tok.kind != "eof":
            try:
                alg = self.algebra()
            except _Abort:
                while self.tok.kind != "eof" and not self.at("algebra"):
                    self.advance()
                continue
            if alg is not None:
                out.append(alg)
        if not out and not self.errors:
            self.report(self.tok.span, "syntax", "no algebra found")
        return out

    def algebra(self) -> ConformalAlgebra | None:
        self.expect("algebra")
        name = self.expect_kind("ident", "algebra name").text
        self.expect("{")
        self.params, self.gens = set(), {}
        param_order: list[str] = []
        brackets: dict[tuple[str, str], tuple[LambdaPoly, SourceSpan]] = {}
        nerr = len(self.errors)
        while not self.at("}"):
            if self.tok.kind == "eof":
                self.fail(self.tok.span, "syntax", f"unterminated algebra {name!r}")
            try:
                self.item(param_order, brackets)
            except _Abort:
                self.recover()
        self.advance()
        if len(self.errors) > nerr:
            return None
        table = {k: v for k, (v, _) in brackets.items()}
        try:
            return ConformalAlgebra(name, list(self.gens.values()), param_order, table)
        except UsageError as exc:
            span = next(iter(brackets.values()))[1] if brackets else self.tok.span
            self.report(span, "duplicate-bracket", str(exc))
            return None

    def item(self, param_order, brackets):
        t = self.tok
        if self.at("param"):
            self.advance()
            name_tok = self.expect_kind("ident", "parameter name")
            self._declare(name_tok)
            self.params.add(name_tok.text)
            param_order.append(name_tok.text)
            self.expect(";")
        elif self.at("generator"):
            self.advance()
            name_tok = self.expect_kind("ident", "generator name")
            self.expect(":")
            par = self.expect_kind("ident", "parity")
            if par.text not in ("even", "odd"):
                self.fail(par.span, "syntax", "parity must be 'even' or 'odd'")
            self._declare(name_tok)
            self.gens[name_tok.text] = GeneratorDecl(name_tok.text, int(par.text == "odd"))
            self.expect(";")
        elif self.at("central"):
            self.advance()
            name_tok = self.expect_kind("ident", "generator name")
            self._declare(name_tok)
            self.gens[name_tok.text] = GeneratorDecl(name_tok.text, 0, central=True)
            self.expect(";")
        elif self.at("bracket"):
            self.bracket_item(brackets)
        else:
            self.fail(t.span, "syntax", f"unexpected {t.text or 'end of input'!r}")

    def _declare(self, tok: Token):
        if tok.text in ("lam", "D") or tok.text in ("param", "generator", "central", "bracket", "algebra"):
            self.fail(tok.span, "syntax", f"{tok.text!r} is reserved")
        if tok.text in self.params or tok.text in self.gens:
            self.fail(tok.span, "syntax", f"{tok.text!r} declared twice")

    def bracket_item(self, brackets):
        start = self.advance()
        self.expect("[")
        left = self.expect_kind("ident", "generator")
        self.expect(",")
        right = self.expect_kind("ident", "generator")
        self.expect("]")
        self.expect("=")
        bad = False
        for t in (left, right):
            if t.text not in self.gens:
                self.report(t.span, "unknown-generator", f"generator {t.text!r} is not declared")
                bad = True
            elif self.gens[t.text].central:
                self.report(t.span, "torsion-misuse", f"central generator {t.text!r} cannot appear in a bracket declaration")
                bad = True
        nerr = len(self.errors)
        terms = self.expr()
        self.expect(";")
        if bad or len(self.errors) > nerr:
            return
        want = None
        if left.text in self.gens and right.text in self.gens:
            want = (self.gens[left.text].parity + self.gens[right.text].parity) % 2
        coeffs: dict[int, dict] = {}
        for term, span in terms:
            if term.gen is None:
                self.report(span, "syntax", "every term of a bracket must end in a generator")
                continue
            if want is not None and self.gens[term.gen].parity != want:
                self.report(span, "parity-mismatch", f"term in {term.gen!r} has the wrong parity for [{left.text},{right.text}]")
                continue
            slot = coeffs.setdefault(term.lam, {})
            key = (term.gen, term.d)
            slot[key] = slot.get(key, Scalar()) + term.coef
        key = (left.text, right.text)
        if key in brackets:
            self.report(start.span, "duplicate-bracket", f"bracket [{left.text},{right.text}] declared twice")
            return
        torsion = frozenset(g for g, d in self.gens.items() if d.central)
        P = LambdaPoly({i: ConformalElement(t, torsion) for i, t in coeffs.items()})
        brackets[key] = (P, start.span)

    def expr(self) -> list[tuple[_Term, SourceSpan]]:
        sign = 1
        if self.at("+") or self.at("-"):
            sign = -1 if self.advance().text == "-" else 1
        out = [(t, s) for t, s in self._signed(self.term(), sign)]
        while self.at("+") or self.at("-"):
            sign = -1 if self.advance().text == "-" else 1
            out.extend(self._signed(self.term(), sign))
        return out

    @staticmethod
    def _signed(terms, sign):
        for t, s in terms:
            yield (_Term(t.coef * sign, t.lam, t.d, t.gen), s)

    def _starts_factor(self) -> bool:
        return self.tok.kind in ("num", "ident") or self.at("(")

    def term(self) -> list[tuple[_Term, SourceSpan]]:
        first = self.tok.span
        raw = [self.factor_raw()]
        while self.at("*") or (self._starts_factor() and not self._is_keyword()):
            if self.at("*"):
                self.advance()
            raw.append(self.factor_raw())
        span = SourceSpan(first.line, first.column, first.start, self.tokens[self.i - 1].span.end)
        factors = []
        for pos, (kind, val, tok) in enumerate(raw):
            if kind == "unknown":
                last = pos == len(raw) - 1
                if last:
                    self.report(tok.span, "unknown-generator", f"generator {tok.text!r} is not declared")
                else:
                    self.report(tok.span, "parameter-undeclared", f"parameter {tok.text!r} is not declared")
                raise _Abort
            factors.append(val)
        acc = [_Term(Scalar.const(1))]
        for f in factors:
            nxt = []
            for a in acc:
                for b in f:
                    try:
                        nxt.append(a.times(b))
                    except ValueError as exc:
                        self.fail(span, "syntax", str(exc))
            acc = nxt
        return [(t, span) for t in acc]

    def _is_keyword(self) -> bool:
        return self.tok.kind == "ident" and self.tok.text in ("param", "generator", "central", "bracket", "algebra")

    def _power(self) -> int:
        if self.at("^"):
            self.advance()
            return int(self.expect_kind("num", "integer exponent").text)
        return 1

    def factor_raw(self):
        t = self.tok
        if t.kind == "num":
            self.advance()
            return ("ok", [_Term(Scalar.const(Fraction(t.text.replace(" ", ""))))], t)
        if t.kind == "ident":
            self.advance()
            if t.text == "lam":
                if not self.allow_lam:
                    self.fail(t.span, "syntax", "lam is not allowed here")
                return ("ok", [_Term(Scalar.const(1), lam=self._power())], t)
            if t.text == "D":
                return ("ok", [_Term(Scalar.const(1), d=self._power())], t)
            if t.text in self.params:
                s = Scalar.param(t.text)
                p = self._power()
                out = Scalar.const(1)
                for _ in range(p):
                    out = out * s
                return ("ok", [_Term(out)], t)
            if t.text in self.gens:
                return ("ok", [_Term(Scalar.const(1), gen=t.text)], t)
            return ("unknown", None, t)
        if self.at("("):
            self.advance()
            inner = self.expr()
            self.expect(")")
            return ("ok", [x for x, _ in inner], t)
        self.fail(t.span, "syntax", f"unexpected {t.text or 'end of input'!r} in expression")


def parse(text: str) -> list[ConformalAlgebra]:
    """Parse every algebra in ``text``; raise ParseErrors listing all problems."""
    p = _Parser(text)
    algs = p.file()
    if p.errors:
        raise ParseErrors(p.errors)
    return algs


def parse_algebra(text: str) -> ConformalAlgebra:
    algs = parse(text)
    if len(algs) != 1:
        raise UsageError(f"expected exactly one algebra, found {len(algs)}")
    return algs[0]


def parse_element(text: str, alg: ConformalAlgebra) -> ConformalElement:
    """Parse an element such as ``2*D^2 L + C`` over the generators of ``alg``."""
    p = _Parser(text)
    p.params = set(alg.parameters)
    p.gens = {g.name: g for g in alg.generators}
    p.allow_lam = False
    try:
        terms = p.expr()
        if p.tok.kind != "eof":
            p.fail(p.tok.span, "syntax", f"unexpected {p.tok.text!r}")
    except _Abort:
        raise ParseErrors(p.errors) from None
    if p.errors:
        raise ParseErrors(p.errors)
    out = alg.zero()
    for t, span in terms:
        if t.gen is None:
            raise ParseErrors([ParseError(span, "syntax", "term without a generator")])
        out = out + alg.element({(t.gen, t.d): t.coef})
    return out


# -- printing --------------------------------------------------------------------


def _scalar_factor(c: Scalar) -> tuple[int, str]:
    """Split ``c`` into a sign and a factor string ('' when the factor is 1)."""
    terms = c.terms
    if len(terms) == 1:
        (mono, val), = terms.items()
        sign = -1 if val < 0 else 1
        val = abs(val)
        parts = []
        if val != 1 or not mono:
            parts.append(str(val) if val.denominator == 1 else f"({val})")
        parts.extend(mono)
        text = "*".join(parts)
        return sign, "" if text == "1" else text
    return 1, f"({c})"


def format_lambda_poly(P: LambdaPoly, order) -> str:
    rank = {g: i for i, g in enumerate(order)}
    pieces = []
    for i, v in P.items():
        for (g, k), c in sorted(v.items(), key=lambda kv: (rank[kv[0][0]], kv[0][1])):
            sign, sc = _scalar_factor(c)
            factors = [f for f in (sc, "" if i == 0 else ("lam" if i == 1 else f"lam^{i}")) if f]
            gen = g if k == 0 else (f"D {g}" if k == 1 else f"D^{k} {g}")
            factors.append(gen)
            pieces.append((sign, "*".join(factors)))
    if not pieces:
        return "0"
    text = ("-" if pieces[0][0] < 0 else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        text += (" - " if sign < 0 else " + ") + body
    return text


def format_algebra(alg: ConformalAlgebra) -> str:
    lines = [f"algebra {alg.name} {{"]
    for p in alg.parameters:
        lines.append(f"    param {p};")
    for g in alg.generators:
        if g.central:
            lines.append(f"    central {g.name};")
        else:
            lines.append(f"    generator {g.name} : {'odd' if g.parity else 'even'};")
    for (g, h), P in sorted(alg.table.items(), key=lambda kv: (alg._order[kv[0][0]], alg._order[kv[0][1]])):
        lines.append(f"    bracket [{g}, {h}] = {format_lambda_poly(P, alg.generator_names)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- builtins ----------------------------------------------------------------------

BUILTIN_SOURCES = {
    "virasoro": """
algebra virasoro {
    param c;
    generator L : even;
    central C;
    bracket [L, L] = (D + 2*lam) L + (1/12)*lam^3*c*C;
}
""",
    "heisenberg_conf": """
algebra heisenberg_conf {
    generator a : even;
    central C;
    bracket [a, a] = lam*C;
}
""",
    "current_sl2": """
// affine sl2 currents at level k, trace form (e|f) = 1, (h|h) = 2
algebra current_sl2 {
    param k;
    generator e : even;
    generator f : even;
    generator h : even;
    central K;
    bracket [e, f] = h + k*lam*K;
    bracket [e, h] = -2*e;
    bracket [f, h] = 2*f;
    bracket [h, h] = 2*k*lam*K;
}
""",
    "neveu_schwarz": """
algebra neveu_schwarz {
    param c;
    generator L : even;
    generator G : odd;
    central C;
    bracket [L, L] = (D + 2*lam) L + (1/12)*lam^3*c*C;
    bracket [L, G] = (D + (3/2)*lam) G;
    bracket [G, G] = 2*L + (1/3)*lam^2*c*C;
}
""",
}

_ABELIAN = re.compile(r"abelian_(\d+)$")


def builtin_source(name: str) -> str:
    if name in BUILTIN_SOURCES:
        return BUILTIN_SOURCES[name]
    m = _ABELIAN.match(name)
    if m and int(m.group(1)) >= 1:
        n = int(m.group(1))
        gens = "\n".join(f"    generator g{i} : even;" for i in range(1, n + 1))
        return f"algebra {name} {{\n{gens}\n}}\n"
    raise UsageError(f"unknown builtin {name!r}; known: {sorted(BUILTIN_SOURCES)} and abelian_<n>")


def builtin(name: str) -> ConformalAlgebra:
    """Return a standard algebra, after checking skew-symmetry and Jacobi on it."""
    alg = parse_algebra(builtin_source(name))
    for rep in (check_skew(alg), check_jacobi(alg)):
        if not rep.passed:
            raise RuntimeError(f"builtin {name} fails {rep.axiom}: {rep.failures()[0]}")
    return alg


def load(source: str) -> list[ConformalAlgebra]:
    """Load ``builtin:NAME`` or a path to an ``.lca`` file."""
    if source.startswith("builtin:"):
        return [builtin(source.split(":", 1)[1])]
    return parse(Path(source).read_text(encoding="utf-8"))
