"""``kmbraid`` command line.

Exit codes: 0 success, 1 verification failure or golden mismatch,
2 usage or parse error.  Failure reports go to stderr as JSON.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import List, Sequence

from . import __version__, core
from .affine import AffineLoopAlgebra, DegreeWindow
from .braiding import BraidedLieBialgebra, NotInCarrier, graded_projection
from .cartan import CartanError, affinize, cartan_matrix, deletion_subdatum, grading_from_subdatum
from .dbos import InfiniteDimensional
from .golden import compare_golden, compute, make_table, to_json, to_latex, to_text, algebra
from .grammar import ExpressionSyntaxError, UnknownSymbol, parse_element
from .suites import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _window(text: str) -> DegreeWindow:
    try:
        return DegreeWindow.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _glue_windows(argv: List[str]) -> List[str]:
    """``--window -3..3`` -> ``--window=-3..3`` so argparse does not see an option."""
    out: List[str] = []
    it = iter(argv)
    for a in it:
        if a == "--window":
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


def _emit_tensor(t: core.TensorElement, args) -> str:
    if args.expanded:
        return core.render(t, "⊗" if args.unicode else "(x)")
    return core.render_wedges(t, "∧" if args.unicode else "/\\")


def _matrix_text(C) -> str:
    width = max(len(str(v)) for row in C.entries for v in row)
    return "\n".join(" ".join(str(v).rjust(width) for v in row) for row in C.entries)


# --- subcommands -------------------------------------------------------------

def cmd_cartan(args, out) -> int:
    C = cartan_matrix(args.type)
    print(json.dumps(C.to_json()) if args.format == "json" else _matrix_text(C), file=out)
    return EXIT_OK


def cmd_affinize(args, out) -> int:
    C = affinize(cartan_matrix(args.type))
    print(json.dumps(C.to_json()) if args.format == "json" else _matrix_text(C), file=out)
    return EXIT_OK


def cmd_algebra_build(args, out) -> int:
    alg = algebra(args.spec)
    if isinstance(alg, AffineLoopAlgebra):
        g = alg.serre_generators
        info = {
            "algebra": args.spec,
            "cartan": alg.cartan.to_json(),
            "finite": alg.finite.to_json(),
            "generators": {
                f"{k}{lab}": core.render(x)
                for k, seq in (("e", g.e), ("f", g.f), ("h", g.h))
                for lab, x in zip(alg.cartan.labels, seq)
            },
            "theta_sign": alg.finite.theta_sign_choice,
        }
        if args.format == "latex":
            print(alg.finite.latex_table(), file=out)
        elif args.format == "text":
            for name, x in info["generators"].items():
                print(f"{name} = {x}", file=out)
        else:
            print(json.dumps(info), file=out)
        return EXIT_OK
    if args.format == "latex":
        print(alg.latex_table(), file=out)
    elif args.format == "text":
        for a in alg.basis_symbols:
            for b in alg.basis_symbols:
                if a < b:
                    br = alg.bracket(core.basis(alg, a), core.basis(alg, b))
                    if br:
                        print(f"[{alg.format_symbol(a)},{alg.format_symbol(b)}] = {core.render(br)}", file=out)
    else:
        print(alg.dumps(), file=out)
    return EXIT_OK


def cmd_cobracket(args, out) -> int:
    alg = algebra(args.spec)
    x = parse_element(args.expr, alg)
    print(_emit_tensor(compute(alg, x, "delta"), args), file=out)
    return EXIT_OK


def cmd_braided(args, out) -> int:
    alg = algebra(args.spec)
    x = parse_element(args.expr, alg)
    if isinstance(alg, AffineLoopAlgebra):
        if args.delete:
            raise UsageError("--delete applies to finite-type specs only")
        gp = graded_projection(alg)
    else:
        if not args.delete:
            raise UsageError("a finite-type spec needs --delete to fix the grading")
        gp = graded_projection(alg, grading_from_subdatum(deletion_subdatum(alg.cartan, args.delete)))
    signs = {(gp.degree(s) > 0) - (gp.degree(s) < 0) for s in x.keys()}
    if len(signs) != 1 or 0 in signs:
        raise NotInCarrier("the element must have all degrees positive or all negative")
    blb = BraidedLieBialgebra(alg, gp, side=signs.pop())
    blb.check(x)
    print(_emit_tensor(blb.braided_cobracket(x), args), file=out)
    return EXIT_OK


def cmd_table(args, out) -> int:
    kind = "braided" if args.braided else "delta"
    tab = make_table(args.spec, args.max_degree, kind, args.min_degree)
    if args.format == "json":
        text = to_json(tab)
    elif args.format == "latex":
        text = to_latex(tab)
    else:
        text = to_text(tab, args.unicode)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text, file=out)
    return EXIT_OK


def _report_outcome(reports, out, err, label: str) -> int:
    for r in reports:
        print(r.summary(), file=out)
    bad = [r for r in reports if not r.ok]
    if bad:
        print(json.dumps({"suite": label, "reports": [r.to_json() for r in bad]}), file=err)
        return EXIT_FAIL
    return EXIT_OK


def cmd_verify(args, out, err) -> int:
    reports = run_suite(args.suite, args.spec, args.window, args.delete or ())
    return _report_outcome(reports, out, err, f"{args.suite} {args.spec}")


def cmd_dbos(args, out, err) -> int:
    affine_spec = args.spec.startswith("affine:")
    if args.affinization:
        spec = args.spec if affine_spec else f"affine:{args.spec}"
        reports = run_suite("dbos", spec, args.window)
    else:
        if affine_spec:
            raise UsageError("node deletion needs a finite-type spec")
        reports = run_suite("dbos", args.spec, None, args.delete)
    return _report_outcome(reports, out, err, f"dbos {args.spec}")


def cmd_golden_compare(args, out, err) -> int:
    results = [compare_golden(f) for f in args.files]
    for r in results:
        print(r.summary(), file=out)
    bad = [r for r in results if not r.ok]
    if bad:
        print(json.dumps({"suite": "golden", "reports": [r.to_json() for r in bad]}), file=err)
        return EXIT_FAIL
    return EXIT_OK


# --- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kmbraid", description="Exact Kac-Moody Lie bialgebra toolkit.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def pretty(sp):
        sp.add_argument("--unicode", action="store_true", help="print with ∧ / ⊗")
        sp.add_argument("--expanded", action="store_true", help="expanded tensor form instead of wedges")

    sp = sub.add_parser("cartan", help="Cartan matrix of a named type")
    sp.add_argument("type")
    sp.add_argument("--format", choices=("json", "text"), default="json")
    sp = sub.add_parser("affinize", help="untwisted affinization of a named type")
    sp.add_argument("type")
    sp.add_argument("--format", choices=("json", "text"), default="json")

    sp = sub.add_parser("algebra", help="algebra constructions")
    asub = sp.add_subparsers(dest="action", required=True)
    b = asub.add_parser("build", help="structure constants")
    b.add_argument("spec")
    b.add_argument("--format", choices=("json", "latex", "text"), default="json")

    sp = sub.add_parser("cobracket", help="cobracket of an element")
    sp.add_argument("spec")
    sp.add_argument("expr")
    pretty(sp)
    sp = sub.add_parser("braided", help="braided cobracket of a graded element")
    sp.add_argument("spec")
    sp.add_argument("expr")
    sp.add_argument("--delete", type=int, nargs="+", help="deleted node labels (finite type)")
    pretty(sp)

    sp = sub.add_parser("table", help="cobracket table of t^i*X for all X")
    sp.add_argument("spec")
    sp.add_argument("--max-degree", type=int, required=True)
    sp.add_argument("--min-degree", type=int, default=1)
    sp.add_argument("--format", choices=("json", "latex", "text"), default="text")
    sp.add_argument("--braided", action="store_true", help="braided cobracket instead of delta")
    sp.add_argument("--unicode", action="store_true")
    sp.add_argument("--output", "-o")

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("suite", choices=sorted(SUITES))
    sp.add_argument("spec")
    sp.add_argument("--window", type=_window)
    sp.add_argument("--delete", type=int, nargs="+")

    sp = sub.add_parser("dbos", help="double-bosonisation reconstruction")
    sp.add_argument("spec")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--delete", type=int, nargs="+")
    g.add_argument("--affinization", action="store_true")
    sp.add_argument("--window", type=_window)

    sp = sub.add_parser("golden", help="golden-file operations")
    gsub = sp.add_subparsers(dest="action", required=True)
    c = gsub.add_parser("compare", help="recompute and compare a golden table")
    c.add_argument("files", nargs="+")
    return p


def run_command(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    argv = _glue_windows(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        if args.command == "cartan":
            return cmd_cartan(args, out)
        if args.command == "affinize":
            return cmd_affinize(args, out)
        if args.command == "algebra":
            return cmd_algebra_build(args, out)
        if args.command == "cobracket":
            return cmd_cobracket(args, out)
        if args.command == "braided":
            return cmd_braided(args, out)
        if args.command == "table":
            return cmd_table(args, out)
        if args.command == "verify":
            return cmd_verify(args, out, err)
        if args.command == "dbos":
            return cmd_dbos(args, out, err)
        if args.command == "golden":
            return cmd_golden_compare(args, out, err)
    except (ExpressionSyntaxError, UnknownSymbol, CartanError, NotInCarrier, InfiniteDimensional,
            UsageError, FileNotFoundError, ValueError) as e:
        print(json.dumps({"error": type(e).__name__, "message": str(e),
                          **({"position": e.position} if isinstance(e, ExpressionSyntaxError) else {}),
                          **({"symbol": e.name} if isinstance(e, UnknownSymbol) else {})}), file=err)
        return EXIT_USAGE
    parser.error(f"unhandled command {args.command!r}")  # pragma: no cover
    return EXIT_USAGE


def main(argv: List[str] | None = None) -> int:
    return run_command(argv)


if __name__ == "__main__":
    raise SystemExit(main())
