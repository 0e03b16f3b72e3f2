"""Concrete text syntax for terms, contexts, formulas and terms-in-context.

    term    := atom | atom "." term | sym "(" [term ("," term)*] ")" | perm "*" VAR | VAR
    perm    := ("(" atom atom ")")+
    context := "{" [atom "#" VAR ("," atom "#" VAR)*] "}"

A lowercase identifier not followed by "(" or "." is an atom unless the
signature declares it as a constant.  ``c()`` is always a constant.
"""
from __future__ import annotations

import re
from typing import Mapping, Optional

from .terms import ID, Abs, App, Atom, Permutation, Susp, Term

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<fatom>\#a\d+)
  | (?P<fvar>\#v\d+)
  | (?P<lower>[a-z][A-Za-z0-9_']*)
  | (?P<upper>[A-Z][A-Za-z0-9_']*)
  | (?P<punct>[().,*#{}~<>]|⟨|⟩|∅)
    """,
    re.VERBOSE,
)


class ParseError(ValueError):
    def __init__(self, msg, pos=None, text=None):
        self.pos = pos
        if pos is not None:
            msg = f"{msg} at position {pos}"
            if text is not None:
                msg += f": {text[:pos]}<!>{text[pos:]}"
        super().__init__(msg)


def _tokenize(text):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind != "ws":
            val = m.group()
            if kind == "fatom":
                kind = "lower"
            elif kind == "fvar":
                kind = "upper"
            elif kind == "punct":
                kind = {"⟨": "<", "⟩": ">"}.get(val, val)
            toks.append((kind, val, pos))
        pos = m.end()
    toks.append(("eof", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text, signature=None):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.signature = signature or {}

    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            shown = tok[1] or "end of input"
            raise ParseError(f"expected {kind!r}, found {shown!r}", tok[2], self.text)
        return tok[1]

    def fail(self, msg):
        raise ParseError(msg, self.peek()[2], self.text)

    def atom(self):
        return self.expect("lower")

    def perm(self):
        swaps = []
        while self.peek()[0] == "(":
            self.next()
            a = self.atom()
            b = self.atom()
            self.expect(")")
            swaps.append((a, b))
        return Permutation(swaps)

    def term(self) -> Term:
        kind, val, pos = self.peek()
        if kind == "(":
            p = self.perm()
            self.expect("*")
            return Susp(p, self.expect("upper"))
        if kind == "upper":
            self.next()
            return Susp(ID, val)
        if kind != "lower":
            self.fail("expected a term")
        self.next()
        nxt = self.peek()[0]
        if nxt == ".":
            self.next()
            return Abs(val, self.term())
        if nxt == "(":
            if val.startswith("#"):
                self.fail("generated atom names cannot be function symbols")
            self.next()
            args = []
            if self.peek()[0] != ")":
                args.append(self.term())
                while self.peek()[0] == ",":
                    self.next()
                    args.append(self.term())
            self.expect(")")
            self._check_arity(val, len(args), pos)
            return App(val, tuple(args))
        if self.signature.get(val) == 0:
            return App(val, ())
        return Atom(val)

    def _check_arity(self, sym, n, pos):
        if sym in self.signature and self.signature[sym] != n:
            raise ParseError(
                f"arity mismatch: {sym} declared with {self.signature[sym]} argument(s), used with {n}",
                pos,
                self.text,
            )

    def formula(self):
        a = self.atom()
        self.expect("#")
        return a, self.term()

    def braced(self, item):
        if self.peek()[0] == "∅":
            self.next()
            return []
        self.expect("{")
        out = []
        if self.peek()[0] != "}":
            out.append(item())
            while self.peek()[0] == ",":
                self.next()
                out.append(item())
        self.expect("}")
        return out

    def constraint(self):
        a = self.atom()
        self.expect("#")
        return a, self.expect("upper")

    def done(self, value):
        if self.peek()[0] != "eof":
            self.fail("trailing input")
        return value


def parse_term(text: str, signature: Optional[Mapping[str, int]] = None) -> Term:
    p = _Parser(text, signature)
    return p.done(p.term())


def parse_perm(text: str) -> Permutation:
    if text.strip() == "Id":
        return Permutation()
    p = _Parser(text)
    return p.done(p.perm())


def parse_context(text: str) -> frozenset:
    p = _Parser(text)
    return frozenset(p.done(p.braced(p.constraint)))


def parse_formulas(text: str, signature=None) -> list[tuple[str, Term]]:
    p = _Parser(text, signature)
    return p.done(p.braced(p.formula))


def parse_formula(text: str, signature=None) -> tuple[str, Term]:
    p = _Parser(text, signature)
    return p.done(p.formula())


def parse_equation(text: str, signature=None) -> tuple[Term, Term]:
    p = _Parser(text, signature)
    lhs = p.term()
    p.expect("~")
    return p.done((lhs, p.term()))


def parse_term_in_context(text: str, signature=None):
    """Parse ``<{a#X}, f(X)>`` (angle brackets ``⟨⟩`` also accepted)."""
    from .subsumption import TermInContext

    p = _Parser(text, signature)
    p.expect("<")
    ctx = frozenset(p.braced(p.constraint))
    p.expect(",")
    t = p.term()
    p.expect(">")
    return p.done(TermInContext(ctx, t))


def parse_atoms(text: str) -> frozenset[str]:
    """Comma-separated atom list, optionally in braces: ``a,b,c`` or ``{a, b}``."""
    p = _Parser(text)
    if p.peek()[0] in ("{", "∅"):
        return frozenset(p.done(p.braced(p.atom)))
    out = []
    if p.peek()[0] != "eof":
        out.append(p.atom())
        while p.peek()[0] == ",":
            p.next()
            out.append(p.atom())
    return frozenset(p.done(out))


def parse_signature(text: str) -> dict[str, int]:
    """``f/2, g/1, c/0``"""
    sig = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        m = re.fullmatch(r"([a-z][A-Za-z0-9_']*)\s*/\s*(\d+)", item)
        if m is None:
            raise ParseError(f"bad signature entry {item!r}")
        sig[m.group(1)] = int(m.group(2))
    return sig


def show_term(t: Term) -> str:
    return str(t)


def show_context(ctx) -> str:
    return "{" + ", ".join(f"{a}#{x}" for a, x in sorted(ctx, key=lambda c: (c[1], c[0]))) + "}"


def show_formulas(formulas) -> str:
    return "{" + ", ".join(f"{a} # {t}" for a, t in formulas) + "}"


def show_atoms(atoms) -> str:
    return ",".join(sorted(atoms))


def show_term_in_context(ctx, t) -> str:
    return f"<{show_context(ctx)}, {t}>"
