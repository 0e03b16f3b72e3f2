"""Freshness and alpha-equivalence judgments, and minimal freshness contexts.

A freshness context is a ``frozenset`` of ``(atom, variable)`` pairs, read as
``atom # variable``.  ``None`` stands for failure (no justifying context).
"""
from __future__ import annotations

from collections import deque
from typing import Iterable, Mapping, Optional

from .terms import Abs, App, Atom, Permutation, Susp, Term, perm_disagreement, swap_term

Context = frozenset


def context_atoms(ctx) -> set[str]:
    return {a for a, _ in ctx}


def context_vars(ctx) -> set[str]:
    return {x for _, x in ctx}


def derives_fresh(ctx, a: str, t: Term) -> bool:
    """Whether ``ctx |- a # t`` is derivable."""
    while True:
        if isinstance(t, Atom):
            return a != t.name
        if isinstance(t, Susp):
            return (t.perm.preimage(a), t.var) in ctx
        if isinstance(t, Abs):
            if t.binder == a:
                return True
            t = t.body
            continue
        return all(derives_fresh(ctx, a, u) for u in t.args)


def alpha_eq(ctx, t: Term, s: Term) -> bool:
    """Whether ``ctx |- t ~ s`` (alpha-equivalence) is derivable."""
    if isinstance(t, Atom):
        return isinstance(s, Atom) and t.name == s.name
    if isinstance(t, Abs):
        if not isinstance(s, Abs):
            return False
        if t.binder == s.binder:
            return alpha_eq(ctx, t.body, s.body)
        return derives_fresh(ctx, t.binder, s.body) and alpha_eq(
            ctx, t.body, swap_term(t.binder, s.binder, s.body)
        )
    if isinstance(t, App):
        return (
            isinstance(s, App)
            and t.symbol == s.symbol
            and len(t.args) == len(s.args)
            and all(alpha_eq(ctx, u, v) for u, v in zip(t.args, s.args))
        )
    if not isinstance(s, Susp) or t.var != s.var:
        return False
    return all((a, t.var) in ctx for a in perm_disagreement(t.perm, s.perm))


def fc(formulas: Iterable[tuple[str, Term]]) -> Optional[frozenset]:
    """Least context justifying every ``a # t`` in ``formulas``, or ``None``."""
    work = deque(formulas)
    out = set()
    while work:
        a, t = work.popleft()
        if isinstance(t, Atom):
            if a == t.name:
                return None
        elif isinstance(t, Abs):
            if a != t.binder:
                work.append((a, t.body))
        elif isinstance(t, App):
            work.extend((a, u) for u in t.args)
        else:
            out.add((t.perm.preimage(a), t.var))
    return frozenset(out)


def ctx_instance(ctx, sigma: Mapping[str, Term]) -> Optional[frozenset]:
    """The instance of ``ctx`` under ``sigma``; ``None`` if ``sigma`` does not respect it."""
    return fc(
        (a, sigma[x] if x in sigma else Susp(Permutation(), x)) for a, x in sorted(ctx)
    )


def respects(sigma: Mapping[str, Term], ctx) -> bool:
    return ctx_instance(ctx, sigma) is not None


def derives_all(ctx, formulas: Iterable[tuple[str, Term]]) -> bool:
    return all(derives_fresh(ctx, a, t) for a, t in formulas)


def as_formulas(ctx) -> list[tuple[str, Term]]:
    return [(a, Susp(Permutation(), x)) for a, x in sorted(ctx)]


def restrict(ctx, variables) -> frozenset:
    variables = set(variables)
    return frozenset(c for c in ctx if c[1] in variables)
