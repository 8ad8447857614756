"""Command line entry point: ``voacheck <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import sys

from . import bosonization as bz
from . import characters as ch
from . import freefields as ff
from . import suites, wick
from .freefields import FockState
from .parser import ParseError, parse_expr
from .report import Report


class UsageError(Exception):
    pass


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("-D", "--level", type=int, default=6, help="maximal level of test states (default 6)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", help="also write the JSON report to this path")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="voacheck", description="Exact checks for free-field vertex algebras.")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", required=True, choices=suites.SUITES + ("all",))
    _add_common(v)
    v.add_argument("-M", "--modes", type=int, default=3, help="mode window |m|, |n| <= M (default 3)")
    v.add_argument("-s", "--twist", type=int, default=0, help="integer twist of the beta-gamma system (default 0)")
    v.add_argument("--charge-window", type=int, default=3)
    v.add_argument("--corrupt-contractions", action="store_true", help="negative control: flip the b-c contraction sign")

    c = sub.add_parser("character", help="triple-graded character of a Fock space")
    c.add_argument("--space", required=True, help="Fbar^l, F^l, Fbar or F")
    _add_common(c)
    c.add_argument("--against", choices=("barred", "full"), help="compare with a product formula")

    o = sub.add_parser("ope", help="singular part of the OPE of two fields")
    o.add_argument("left")
    o.add_argument("right")
    o.add_argument("--format", choices=("text", "json"), default="text")

    m = sub.add_parser("commutator", help="[A(m), B(n)] from the OPE, checked on states")
    m.add_argument("left")
    m.add_argument("m", type=int)
    m.add_argument("right")
    m.add_argument("n", type=int)
    _add_common(m)

    r = sub.add_parser("rewrite", help="express :d^i b d^j c: through T and Wt")
    r.add_argument("i", type=int)
    r.add_argument("j", type=int)
    _add_common(r)
    return ap


def _emit(rep: Report, args) -> int:
    sys.stdout.write(rep.to_json() if args.format == "json" else rep.to_text())
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(rep.to_json())
    return rep.exit_code


def cmd_verify(args) -> int:
    try:
        cfg = suites.Config(args.level, args.modes, args.twist, args.charge_window, args.corrupt_contractions)
    except ValueError as e:
        raise UsageError(str(e)) from e
    return _emit(suites.run_suite(args.suite, cfg), args)


def cmd_character(args) -> int:
    try:
        series = ch.enumerate_character(args.space, args.level)
    except ValueError as e:
        raise UsageError(str(e)) from e
    rep = Report("character", {"space": args.space, "level": args.level})
    if args.against:
        prod = ch.product_formula(args.level, args.against)
        kind, charges = ch.sectors(args.space, args.level)
        if args.space.replace(" ", "") not in ("F", "Fbar"):
            zs = {-l for l in charges}
            prod = type(prod)(prod.truncation_q, {k: p for k, p in prod.terms.items() if k[0] in zs})
        diff = ch.compare_series(series, prod)
        first = ""
        if diff.mismatches:
            z, q, e, a, b = diff.mismatches[0]
            first = f", first mismatch at z^{z} q^{q} p^{e}: {a.text(compact=True)} vs {b.text(compact=True)}"
        rep.add(f"character.against.{args.against}", diff.passed, f"{diff.matched} coefficients{first}")
    if args.format == "json":
        out = rep.as_dict()
        out["series"] = [{"charge": z, "level": q, "p_exponent": e, "coefficient": c.text(compact=True)} for z, q, e, c in series.records()]
        sys.stdout.write(json.dumps(out, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(ch.render_series(series) + "\n")
        if rep.checks:
            sys.stdout.write(rep.to_text())
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(rep.to_json())
    return rep.exit_code


def _parse(text: str):
    try:
        return parse_expr(text)
    except ParseError as e:
        raise UsageError(f"cannot parse {text!r}: {e}") from e


def cmd_ope(args) -> int:
    A, B = _parse(args.left), _parse(args.right)
    res = wick.ope_singular(A, B)
    poles = sorted(res.poles.items(), reverse=True)
    if args.format == "json":
        sys.stdout.write(json.dumps({"poles": [{"order": r, "field": f.render()} for r, f in poles]}, indent=2) + "\n")
    else:
        if not poles:
            sys.stdout.write("regular\n")
        for r, f in poles:
            sys.stdout.write(f"(z-w)^-{r}: {f.render()}\n")
    return 0


def cmd_commutator(args) -> int:
    A, B = _parse(args.left), _parse(args.right)
    try:
        ms = wick.commutator_via_ope(A, B, args.m, args.n)
    except ValueError as e:
        raise UsageError(str(e)) from e
    rep = Report("commutator", {"left": args.left, "m": args.m, "right": args.right, "n": args.n, "level": args.level})
    uses_j = any(f == "j" for mono in (*A.terms, *B.terms) for f, _ in mono)
    uses_bg = any(f in ("beta", "gamma") for mono in (*A.terms, *B.terms) for f, _ in mono)
    if uses_bg:
        keys = [k for d in range(args.level + 1) for k in ff.space_basis("M^0", d)]
    elif uses_j:
        keys = ff.n0_keys(args.level, range(-1, 2))
    else:
        keys = ff.all_f_keys(args.level)
    bad = []
    for key in keys:
        v = FockState.basis(key)
        if ms.apply(v) != wick.supercommutator_on(A, args.m, B, args.n, v):
            bad.append(ff.render_key(key))
    rep.add("commutator.state_check", not bad, ms.render(), states=len(keys), failures=bad[:10])
    return _emit(rep, args)


def cmd_rewrite(args) -> int:
    if args.i < 1 or args.j < 0:
        raise UsageError("need i >= 1 and j >= 0")
    try:
        r = bz.verify_rewrite(args.i, args.j, args.level)
    except ValueError as e:
        raise UsageError(str(e)) from e
    rep = Report("rewrite", {"i": args.i, "j": args.j, "level": args.level})
    rep.add("rewrite", r.symbolic and r.state_check, r.identity(), states=r.states)
    return _emit(rep, args)


COMMANDS = {
    "verify": cmd_verify,
    "character": cmd_character,
    "ope": cmd_ope,
    "commutator": cmd_commutator,
    "rewrite": cmd_rewrite,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as e:
        print(f"voacheck: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
