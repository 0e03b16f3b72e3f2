"""``nominal-au`` command line.

Exit status: 0 for success or ``true``, 1 for failure (``bot``) or ``false``,
2 for malformed input.
"""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field
from typing import Optional

from . import syntax
from .antiunify import antiunify, check_based, is_saturated, saturate
from .equivariance import solve_equivariance
from .freshness import alpha_eq, context_atoms, derives_fresh, fc
from .report import ResultReport, generalization_report
from .subsumption import exhaustive_subsumes, subsumes
from .terms import NameSupply, atoms_of

SIGNATURE_ENV = "NOMINAL_AU_SIGNATURE"


class UsageError(Exception):
    pass


@dataclass
class ProblemFile:
    atoms: Optional[frozenset] = None
    context: frozenset = frozenset()
    left: Optional[object] = None
    right: Optional[object] = None
    signature: dict = field(default_factory=dict)
    equations: list = field(default_factory=list)


def read_problem(text: str, signature=None) -> ProblemFile:
    """Parse the stanza format: ``atoms:``, ``context:``, ``left:``, ``right:``,
    ``sig:`` and ``eq:`` lines (bare ``t ~ s`` lines also count as equations).
    ``;`` starts a comment that runs to the end of the line."""
    raw = {}
    eqs = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split(";", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if sep and key in ("atoms", "context", "left", "right", "sig", "eq"):
            if key == "eq":
                eqs.append(rest)
            else:
                raw[key] = rest.strip()
        elif "~" in line:
            eqs.append(line)
        else:
            raise UsageError(f"line {lineno}: unrecognized stanza {line!r}")
    prob = ProblemFile(signature=dict(signature or {}))
    if "sig" in raw:
        prob.signature.update(syntax.parse_signature(raw["sig"]))
    sig = prob.signature
    if "atoms" in raw:
        prob.atoms = syntax.parse_atoms(raw["atoms"])
    if "context" in raw:
        prob.context = syntax.parse_context(raw["context"])
    if "left" in raw:
        prob.left = syntax.parse_term(raw["left"], sig)
    if "right" in raw:
        prob.right = syntax.parse_term(raw["right"], sig)
    prob.equations = [syntax.parse_equation(e, sig) for e in eqs]
    return prob


def _default_signature():
    path = os.environ.get(SIGNATURE_ENV)
    if not path:
        return {}
    with open(path, encoding="utf-8") as fh:
        return syntax.parse_signature(fh.read().replace("\n", ","))


def load_problem(args) -> ProblemFile:
    sig = _default_signature()
    if getattr(args, "sig", None):
        sig.update(syntax.parse_signature(args.sig))
    if getattr(args, "file", None):
        with open(args.file, encoding="utf-8") as fh:
            prob = read_problem(fh.read(), sig)
    else:
        prob = ProblemFile(signature=sig)
    sig = prob.signature
    if getattr(args, "atoms", None) is not None:
        prob.atoms = syntax.parse_atoms(args.atoms)
    if getattr(args, "context", None):
        prob.context = syntax.parse_context(args.context)
    if getattr(args, "left", None):
        prob.left = syntax.parse_term(args.left, sig)
    if getattr(args, "right", None):
        prob.right = syntax.parse_term(args.right, sig)
    for e in getattr(args, "eq", None) or ():
        prob.equations.append(syntax.parse_equation(e, sig))
    return prob


def _need_pair(prob):
    if prob.left is None or prob.right is None:
        raise UsageError("both a left and a right term are required")


def cmd_antiunify(args) -> ResultReport:
    prob = load_problem(args)
    _need_pair(prob)
    t, s, ctx = prob.left, prob.right, prob.context
    atoms = prob.atoms if prob.atoms is not None else frozenset(atoms_of(t, s) | context_atoms(ctx))
    check_based(atoms, t, s, ctx=ctx)
    diagnostics = []
    supply = NameSupply.avoiding(t, s, contexts=[ctx], names=atoms)
    if args.saturate:
        extended = saturate(atoms, t, s, ctx, supply)
        if extended != atoms:
            diagnostics.append(f"saturated atom set: {syntax.show_atoms(extended)}")
        atoms = extended
    elif not is_saturated(atoms, t, s, ctx):
        diagnostics.append("atom set is not saturated for this input")
    strategy = None if args.strategy in (None, "default") else int(args.strategy)
    res = antiunify(t, s, ctx, atoms, supply, strategy=strategy)
    return generalization_report(res, diagnostics)


def cmd_equiv(args) -> ResultReport:
    prob = load_problem(args)
    eqs = list(prob.equations)
    if prob.left is not None and prob.right is not None:
        eqs.append((prob.left, prob.right))
    if not eqs:
        raise UsageError("no equations given")
    trace = []
    pi = solve_equivariance(eqs, prob.context, prob.atoms, trace=trace)
    if pi is None:
        return ResultReport("failure", {}, [trace[-1]])
    return ResultReport("permutation", {"permutation": str(pi)}, [])


def cmd_alphaeq(args) -> ResultReport:
    prob = load_problem(args)
    _need_pair(prob)
    return ResultReport("boolean", {"value": alpha_eq(prob.context, prob.left, prob.right)})


def cmd_fresh(args) -> ResultReport:
    sig = _default_signature()
    ctx = syntax.parse_context(args.context) if args.context else frozenset()
    a, t = syntax.parse_formula(args.formula, sig)
    return ResultReport("boolean", {"value": derives_fresh(ctx, a, t)})


def cmd_fc(args) -> ResultReport:
    formulas = syntax.parse_formulas(args.formulas, _default_signature())
    res = fc(formulas)
    if res is None:
        return ResultReport("failure", {}, ["an irreducible a # a formula remains"])
    return ResultReport("context", {"context": syntax.show_context(res)})


def cmd_subsumes(args) -> ResultReport:
    sig = _default_signature()
    p1 = syntax.parse_term_in_context(args.general, sig)
    p2 = syntax.parse_term_in_context(args.specific, sig)
    value = subsumes(p1, p2)
    diagnostics = []
    if not value and args.max_depth is not None:
        value = exhaustive_subsumes(p1, p2, max_depth=args.max_depth, max_atoms=args.max_atoms)
        diagnostics.append(f"exhaustive search up to depth {args.max_depth}")
    return ResultReport("boolean", {"value": value}, diagnostics)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nominal-au", description="Nominal anti-unification toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, pair=True):
        p.add_argument("--file", help="problem file in the stanza format")
        p.add_argument("--atoms", help="atom set, e.g. a,b,c")
        p.add_argument("--context", help="freshness context, e.g. {a#X}")
        p.add_argument("--sig", help="signature, e.g. f/2,g/1,c/0")
        if pair:
            p.add_argument("--left")
            p.add_argument("--right")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("antiunify", help="least general generalization")
    common(p)
    p.add_argument("--saturate", action="store_true", help="extend the atom set until saturated")
    p.add_argument("--strategy", default="default", help="'default' or an integer seed")
    p.set_defaults(func=cmd_antiunify)

    p = sub.add_parser("equiv", help="constructive equivariance")
    common(p)
    p.add_argument("--eq", action="append", help="equation 't ~ s' (repeatable)")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("alphaeq", help="alpha-equivalence under a context")
    common(p)
    p.set_defaults(func=cmd_alphaeq)

    p = sub.add_parser("fresh", help="freshness judgment")
    p.add_argument("--context")
    p.add_argument("--formula", required=True, help="e.g. 'a # (a b)*X'")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_fresh)

    p = sub.add_parser("fc", help="minimal freshness context for formulas")
    p.add_argument("formulas", help="e.g. '{a # f(b, X)}'")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_fc)

    p = sub.add_parser("subsumes", help="is the first term-in-context more general?")
    p.add_argument("general", help="e.g. '<{a#X}, f(X)>'")
    p.add_argument("specific")
    p.add_argument("--max-atoms", type=int, default=4)
    p.add_argument("--max-depth", type=int, default=None, help="fall back to exhaustive search")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_subsumes)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.func(args)
    except (UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(report.to_json() if args.json else report.to_text())
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
