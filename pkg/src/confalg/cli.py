"""Command-line entry point.

Exit codes: 0 all checks pass, 1 some check fails, 2 usage or parse error,
3 a limit was exceeded (refused truncation window, iteration bound).
"""
from __future__ import annotations

import argparse
import json
import shlex
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import fock
from .conformal import check_jacobi, check_sesquilinear, check_skew, check_structure
from .dsl import load, parse_element
from .errors import ConfalgError, LimitExceeded, UnsupportedConfiguration, UsageError
from .report import Report
from .structure import classify
from .wick import factorial_det_check, forward_expand, separate, separation_window


def _first_failure(rep) -> str:
    e = rep.failures()[0]
    return f"{e.label}: residual {e.residual}"


def cmd_check(args, report: Report):
    for alg in load(args.source):
        for rep in (check_structure(alg), check_sesquilinear(alg), check_skew(alg), check_jacobi(alg)):
            label = {"C1": "C1 structural", "C2": "C2 sesquilinearity", "C3": "C3 skew-symmetry", "C4": "C4 Jacobi"}[rep.axiom]
            if rep.passed:
                note = "; ".join(rep.notes) or None
                report.add(f"{alg.name}: {label}", "pass", note)
            else:
                report.add(f"{alg.name}: {label}", "fail", _first_failure(rep))


def _parse_sets(pairs) -> dict[str, Fraction]:
    values = {}
    for item in pairs or []:
        if "=" not in item:
            raise UsageError(f"--set expects param=rational, got {item!r}")
        k, v = item.split("=", 1)
        values[k.strip()] = Fraction(v.strip())
    return values


def _select(args):
    algs = load(args.source)
    if getattr(args, "algebra", None):
        algs = [a for a in algs if a.name == args.algebra]
        if not algs:
            raise UsageError(f"no algebra named {args.algebra!r} in {args.source}")
    return algs


def cmd_analyze(args, report: Report):
    values = _parse_sets(args.set)
    for alg in _select(args):
        if values:
            alg = alg.specialize({k: v for k, v in values.items() if k in alg.parameters})
        if not alg.is_parameter_free():
            raise UnsupportedConfiguration(
                f"{alg.name} has free parameters {list(alg.parameters)}; pass --set NAME=VALUE"
            )
        rep = classify(alg, args.centre_bound, args.max_depth)
        R = rep.series.terms[0]
        series = ", ".join("R" if t == R else str(t) for t in rep.series.terms)
        if rep.series.status == "inconclusive":
            report.add(f"{alg.name}: derived series", "inconclusive",
                       f"[{series}] did not settle within --max-depth {args.max_depth}")
        else:
            report.add(f"{alg.name}: derived series", "pass", f"[{series}] ({rep.series.status})")
        report.add(f"{alg.name}: abelian", "pass", "yes" if rep.abelian else "no")
        report.add(f"{alg.name}: derived algebra equals R", "pass", "yes" if rep.perfect else "no")
        Z = rep.centre
        text = f"{Z.module} at degree bound {Z.degree_bound}"
        if Z.stable:
            report.add(f"{alg.name}: centre", "pass", f"{text}, stable at bound {Z.degree_bound + 1}")
        else:
            report.add(f"{alg.name}: centre", "inconclusive",
                       f"{text}; changed at bound {Z.degree_bound + 1} (degree-truncated result)")
        for t in rep.tested:
            kind = "central" if t.central else "non-central"
            prop = "proper" if t.proper else "improper"
            report.add(f"{alg.name}: ideal {t.label}", "pass", f"{t.module} ({prop}, {kind})")
        report.add(f"{alg.name}: verdict", "pass", rep.verdict)


def cmd_bracket(args, report: Report):
    alg = _select(args)[0]
    x = parse_element(args.x, alg)
    y = parse_element(args.y, alg)
    report.add(f"[{x} _lam {y}]", "pass", str(alg.bracket(x, y)))


def _aggregate(report: Report, name: str, results, total_hint: str = ""):
    n = 0
    failures = []
    refused = []
    for r in results:
        n += 1
        if r.status == "fail":
            failures.append(r)
        elif r.status == "refused":
            refused.append(r)
    label = f"{name} ({n} instances{total_hint})"
    if failures:
        report.add(label, "fail", f"{len(failures)} failing; first: {failures[0].name}: {failures[0].witness}")
    elif refused:
        report.add(label, "refused", f"{len(refused)} refused; first: {refused[0].witness}")
    else:
        report.add(label, "pass")


def _guard(fn, *a):
    try:
        return fn(*a)
    except LimitExceeded as exc:
        need = getattr(exc, "required_cutoff", None)
        return fock.Check(fn.__name__, "refused", f"{exc} (required W >= {need})" if need else str(exc))


def cmd_fock(args, report: Report):
    cut = fock.Cutoff(args.cutoff, getattr(args, "slack", 4))
    what = args.fock_command
    if what == "axioms":
        mw = args.max_weight if args.max_weight is not None else min(4, cut.W // 2)
        report.extend(fock.verify_axioms(cut, mw))
        report.extend(fock.vacuum_dichotomy(min(8, cut.W)))
    elif what == "borcherds":
        B = fock.basis_up_to(args.max_weight)
        r = args.mode_range
        results = (
            _guard(fock.verify_borcherds, a, b, c, m, n, cut)
            for a in B for b in B for c in B
            for m in range(-r, r + 1) for n in range(-r, r + 1)
        )
        _aggregate(report, f"commutator formula, weights <= {args.max_weight}, |m|,|n| <= {r}", results)
    elif what == "wick":
        B = fock.basis_up_to(args.max_weight)
        results = (_guard(fock.verify_wick, a, b, c, cut) for a in B for b in B for c in B)
        _aggregate(report, f"generalized Wick formula, weights <= {args.max_weight}", results)
    elif what == "skew":
        mw = args.max_weight if args.max_weight is not None else min(4, cut.W // 2)
        B = fock.basis_up_to(mw)
        results = (_guard(fock.verify_skew_vertex, a, b, cut) for a in B for b in B)
        _aggregate(report, f"skew-commutativity, weights <= {mw}", results)
    elif what == "theorem":
        gens = [fock.parse_state(g) for g in args.gens.split(",") if g.strip()]
        rep = fock.theorem_ideal_check(gens, cut)
        report.extend(rep.checks)
        report.add("J = [I,V] dimensions by weight", "pass", f"{rep.J_dims}; {rep.caveat}")
    elif what == "extract":
        ext = fock.extract_conformal(cut, args.max_weight)
        rows = []
        for (i, j), P in sorted(ext.table.items()):
            if P:
                rows.append(f"[{ext.basis[i]} _lam {ext.basis[j]}] = {P}")
        report.add("bracket table (nonzero entries)", "pass", "; ".join(rows) or "all zero")
        report.extend(ext.checks)


def cmd_lemma(args, report: Report):
    if args.lemma_command == "det":
        computed, closed, equal = factorial_det_check(args.m, args.N)
        text = f"computed {computed} {'=' if equal else '!='} closed form {closed}"
        report.add(f"factorial determinant m={args.m} N={args.N}", "pass" if equal else "fail", text)
    else:
        doc = json.loads(Path(args.input).read_text(encoding="utf-8"))
        coeffs = _read_laurent_family(doc["coefficients"])
        m, n = int(doc["m"]), int(doc["n"])
        p = separate(coeffs, m, n)
        window = separation_window(m, n)
        again = forward_expand(p, {}, window)
        same = all(again[N] == {k: v for k, v in coeffs[N].items() if v} for N in window)
        report.add(
            f"separation m={m} n={n} on lam-degrees {window}",
            "pass" if same else "fail",
            "recovered p: " + _format_family(p),
        )


def _read_laurent_family(raw) -> dict:
    out = {}
    for N, poly in raw.items():
        entry = {}
        for e, v in poly.items():
            if isinstance(v, list):
                for c, x in enumerate(v):
                    if Fraction(x):
                        entry[(int(e), c)] = Fraction(x)
            elif Fraction(v):
                entry[(int(e), 0)] = Fraction(v)
        out[int(N)] = entry
    return out


def _format_family(p: dict) -> str:
    parts = []
    for i in sorted(p):
        terms = " + ".join(
            f"{v}*z^{e}" + (f"[{c}]" if c else "") for (e, c), v in sorted(p[i].items())
        )
        parts.append(f"p_{i} = {terms or 0}")
    return "; ".join(parts)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="confalg", description=__doc__.splitlines()[0])
    ap.add_argument("--out", help="write the JSON report to this path")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=argparse.SUPPRESS, help="write the JSON report to this path")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="check conformal algebra axioms (C1)-(C4)")
    p.add_argument("source", help="FILE.lca or builtin:NAME")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("analyze", parents=[common], help="derived series, centre, ideals, classification")
    p.add_argument("source")
    p.add_argument("--set", action="append", metavar="PARAM=RATIONAL")
    p.add_argument("--centre-bound", type=int, default=3)
    p.add_argument("--max-depth", type=int, default=10)
    p.add_argument("--algebra")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("bracket", parents=[common], help="lambda-bracket of two elements")
    p.add_argument("source")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--algebra")
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser("fock", parents=[common], help="free boson vertex algebra checks")
    fsub = p.add_subparsers(dest="fock_command", required=True)
    q = fsub.add_parser("axioms", parents=[common])
    q.add_argument("--cutoff", type=int, required=True)
    q.add_argument("--max-weight", type=int)
    q = fsub.add_parser("borcherds", parents=[common])
    q.add_argument("--cutoff", type=int, required=True)
    q.add_argument("--max-weight", type=int, default=4)
    q.add_argument("--mode-range", type=int, default=4)
    q = fsub.add_parser("wick", parents=[common])
    q.add_argument("--cutoff", type=int, required=True)
    q.add_argument("--max-weight", type=int, default=3)
    q = fsub.add_parser("skew", parents=[common])
    q.add_argument("--cutoff", type=int, required=True)
    q.add_argument("--max-weight", type=int)
    q = fsub.add_parser("theorem", parents=[common])
    q.add_argument("--gens", required=True, help="comma-separated states, e.g. x1,x1^2")
    q.add_argument("--cutoff", type=int, required=True)
    q.add_argument("--slack", type=int, default=4)
    q = fsub.add_parser("extract", parents=[common])
    q.add_argument("--cutoff", type=int, required=True)
    q.add_argument("--max-weight", type=int, required=True)
    p.set_defaults(func=cmd_fock)

    p = sub.add_parser("lemma", parents=[common], help="factorial matrix and separation lemma")
    lsub = p.add_subparsers(dest="lemma_command", required=True)
    q = lsub.add_parser("det", parents=[common])
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--N", type=int, required=True)
    q = lsub.add_parser("separate", parents=[common])
    q.add_argument("--input", required=True, help="JSON file with m, n and coefficients")
    p.set_defaults(func=cmd_lemma)
    return ap


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    report = Report(shlex.join(["confalg", *(argv if argv is not None else sys.argv[1:])]), _subject(args))
    start = time.perf_counter()
    try:
        args.func(args, report)
    except LimitExceeded as exc:
        report.add("limit", "refused", str(exc))
    except (ConfalgError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report.timing_ms = (time.perf_counter() - start) * 1000
    print(report.render())
    if args.out:
        Path(args.out).write_text(report.to_json() + "\n", encoding="utf-8")
    return report.exit_code()


def _subject(args) -> str:
    if hasattr(args, "source"):
        return args.source
    if args.command == "fock":
        return f"free boson (W={args.cutoff})"
    return "factorial matrix lemma" if args.lemma_command == "det" else "separation lemma"


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
