"""The more-general-than relation on terms and terms-in-context, plus the
brute-force oracles used to cross-check the algorithms on tiny inputs.

:func:`match_terms` is a sound witness finder, not a complete nominal
matcher: a ``None`` answer only means this procedure found no substitution.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional

from .freshness import (
    alpha_eq,
    as_formulas,
    context_atoms,
    context_vars,
    ctx_instance,
    derives_all,
)
from .terms import (
    Abs,
    App,
    Atom,
    NameSupply,
    Permutation,
    Susp,
    Term,
    atoms_of,
    depth,
    perm_apply_term,
    subst_apply,
    swap_term,
    vars_of,
)


@dataclass(frozen=True)
class TermInContext:
    ctx: frozenset
    term: Term

    def __str__(self):
        from .syntax import show_term_in_context

        return show_term_in_context(self.ctx, self.term)


def _match(p, u, ctx, sigma):
    if isinstance(p, Atom):
        return isinstance(u, Atom) and p.name == u.name
    if isinstance(p, App):
        return (
            isinstance(u, App)
            and p.symbol == u.symbol
            and len(p.args) == len(u.args)
            and all(_match(q, v, ctx, sigma) for q, v in zip(p.args, u.args))
        )
    if isinstance(p, Abs):
        if not isinstance(u, Abs):
            return False
        if p.binder == u.binder:
            return _match(p.body, u.body, ctx, sigma)
        # freshness of p.binder in u.body is left to the final alpha check
        return _match(p.body, swap_term(p.binder, u.binder, u.body), ctx, sigma)
    candidate = perm_apply_term(p.perm.inverse(), u)
    if p.var in sigma:
        return alpha_eq(ctx, sigma[p.var], candidate)
    sigma[p.var] = candidate
    return True


def match_terms(pattern: Term, target: Term, ctx=frozenset()) -> Optional[dict]:
    """A substitution ``sigma`` with ``ctx |- pattern sigma ~ target``, or ``None``.

    Variables of ``target`` are treated as constants, so pattern and target
    may share variable names.
    """
    sigma: dict = {}
    if not _match(pattern, target, ctx, sigma):
        return None
    if not alpha_eq(ctx, subst_apply(pattern, sigma), target):
        return None
    return sigma


def term_subsumes(ctx, t1: Term, t2: Term) -> bool:
    """``ctx |- t1 <= t2``: some instance of ``t1`` is alpha-equivalent to ``t2``."""
    return match_terms(t1, t2, ctx) is not None


def term_equi_general(ctx, t1: Term, t2: Term) -> bool:
    return term_subsumes(ctx, t1, t2) and term_subsumes(ctx, t2, t1)


def _context_ok(p1, p2, sigma):
    inst = ctx_instance(p1.ctx, sigma)
    return inst is not None and derives_all(p2.ctx, as_formulas(inst))


def subsumes(p1: TermInContext, p2: TermInContext, supply: Optional[NameSupply] = None) -> bool:
    """``p1 <= p2`` for terms-in-context.

    Context variables that the match leaves unbound are sent to a fresh atom,
    which respects any context and adds no constraints.
    """
    sigma = match_terms(p1.term, p2.term, p2.ctx)
    if sigma is None:
        return False
    unbound = context_vars(p1.ctx) - sigma.keys()
    if unbound:
        if supply is None:
            supply = NameSupply.avoiding(p1.term, p2.term, contexts=[p1.ctx, p2.ctx])
        filler = Atom(supply.fresh_atom())
        for x in unbound:
            sigma[x] = filler
    return _context_ok(p1, p2, sigma)


def equi_general(p1: TermInContext, p2: TermInContext, supply: Optional[NameSupply] = None) -> bool:
    return subsumes(p1, p2, supply) and subsumes(p2, p1, supply)


def all_bijections(atoms) -> Iterator[Permutation]:
    """Every bijection of ``atoms``, identity first."""
    atoms = sorted(atoms)
    for image in itertools.permutations(atoms):
        yield Permutation.from_mapping(dict(zip(atoms, image)))


def equivariance_solutions(t: Term, s: Term, ctx, atoms, max_atoms: int = 5) -> Iterator[Permutation]:
    if len(atoms) > max_atoms:
        raise ValueError(f"{len(atoms)} atoms exceeds the oracle bound {max_atoms}")
    for mu in all_bijections(atoms):
        if alpha_eq(ctx, perm_apply_term(mu, t), s):
            yield mu


def brute_equivariance(t: Term, s: Term, ctx=frozenset(), atoms=None, max_atoms: int = 5) -> Optional[Permutation]:
    """First ``atoms``-based permutation ``mu`` with ``ctx |- mu . t ~ s``, by enumeration."""
    if atoms is None:
        atoms = atoms_of(t, s)
    return next(equivariance_solutions(t, s, ctx, atoms, max_atoms), None)


# -- bounded exhaustive search ------------------------------------------------


def _symbols(*terms):
    out = {}
    stack = list(terms)
    while stack:
        t = stack.pop()
        if isinstance(t, App):
            out[t.symbol] = len(t.args)
            stack.extend(t.args)
        elif isinstance(t, Abs):
            stack.append(t.body)
    return out


def candidate_terms(atoms, symbols, variables, max_depth) -> list[Term]:
    """All terms over the given vocabulary up to ``max_depth``."""
    atoms = sorted(atoms)
    perms = list(all_bijections(atoms))
    layer = [Atom(a) for a in atoms]
    layer += [App(f, ()) for f, n in sorted(symbols.items()) if n == 0]
    layer += [Susp(p, x) for x in sorted(variables) for p in perms]
    terms = list(layer)
    for _ in range(max_depth):
        new = [Abs(a, t) for a in atoms for t in terms]
        for f, n in sorted(symbols.items()):
            if n > 0:
                new += [App(f, args) for args in itertools.product(terms, repeat=n)]
        terms = list(dict.fromkeys(terms + new))
    return terms


def exhaustive_subsumes(p1: TermInContext, p2: TermInContext, atoms=None, max_depth: int = 2, max_atoms: int = 4) -> bool:
    """Decide ``p1 <= p2`` by trying every substitution into terms of bounded depth.

    Candidates use the atoms of both sides (plus ``atoms``) and one extra
    atom, the symbols and variables of ``p2``.  ``False`` is only a proof of
    non-subsumption within those bounds.
    """
    pool = atoms_of(p1.term, p2.term) | context_atoms(p1.ctx) | context_atoms(p2.ctx) | set(atoms or ())
    supply = NameSupply.avoiding(p1.term, p2.term, contexts=[p1.ctx, p2.ctx], names=pool)
    pool.add(supply.fresh_atom())
    if len(pool) > max_atoms:
        raise ValueError(f"{len(pool)} atoms exceeds the search bound {max_atoms}")
    cands = candidate_terms(pool, _symbols(p2.term), vars_of(p2.term) | context_vars(p2.ctx), max_depth)
    dom = sorted(vars_of(p1.term) | context_vars(p1.ctx))
    for image in itertools.product(cands, repeat=len(dom)):
        sigma = dict(zip(dom, image))
        if alpha_eq(p2.ctx, subst_apply(p1.term, sigma), p2.term) and _context_ok(p1, p2, sigma):
            return True
    return False


def exhaustive_term_subsumes(ctx, t1: Term, t2: Term, atoms=None, max_depth: int = 2, max_atoms: int = 4) -> bool:
    pool = atoms_of(t1, t2) | context_atoms(ctx) | set(atoms or ())
    supply = NameSupply.avoiding(t1, t2, contexts=[ctx], names=pool)
    pool.add(supply.fresh_atom())
    if len(pool) > max_atoms:
        raise ValueError(f"{len(pool)} atoms exceeds the search bound {max_atoms}")
    cands = candidate_terms(pool, _symbols(t2), vars_of(t2) | context_vars(ctx), max_depth)
    dom = sorted(vars_of(t1))
    for image in itertools.product(cands, repeat=len(dom)):
        if alpha_eq(ctx, subst_apply(t1, dict(zip(dom, image))), t2):
            return True
    return False


# -- generalization oracle ----------------------------------------------------


def _shapes(t, s, atoms, d):
    """Term shapes with ``None`` holes that could generalize both ``t`` and ``s``.

    Any generalization of ``t`` keeps their constructors above its variables,
    so shapes are guided by the input pair; atom leaves range over ``atoms``.
    """
    yield None
    if isinstance(t, Atom) or isinstance(s, Atom):
        for a in sorted(atoms):
            yield Atom(a)
    if d <= 0:
        return
    if isinstance(t, App) and isinstance(s, App) and t.symbol == s.symbol and len(t.args) == len(s.args):
        subs = [list(_shapes(u, v, atoms, d - 1)) for u, v in zip(t.args, s.args)]
        for args in itertools.product(*subs):
            yield App(t.symbol, tuple(args))
    if isinstance(t, Abs) and isinstance(s, Abs):
        bodies = list(_shapes(t.body, s.body, atoms, d - 1))
        for c in sorted(atoms):
            for b in bodies:
                yield Abs(c, b)


def _holes(shape):
    if shape is None:
        return 1
    if isinstance(shape, Abs):
        return _holes(shape.body)
    if isinstance(shape, App):
        return sum(map(_holes, shape.args))
    return 0


def _fill(shape, fillers):
    if shape is None:
        return next(fillers)
    if isinstance(shape, Abs):
        return Abs(shape.binder, _fill(shape.body, fillers))
    if isinstance(shape, App):
        return App(shape.symbol, tuple(_fill(a, fillers) for a in shape.args))
    return shape


def _var_patterns(k, max_vars):
    # restricted growth strings: canonical variable assignments to k holes
    def rec(prefix, used):
        if len(prefix) == k:
            yield tuple(prefix)
            return
        for v in range(min(used + 1, max_vars)):
            yield from rec(prefix + [v], max(used, v + 1))

    yield from rec([], 0)


def enumerate_generalizations(
    p1: TermInContext,
    p2: TermInContext,
    atoms,
    depth_bound: int = 2,
    supply: Optional[NameSupply] = None,
    max_atoms: int = 3,
    max_depth: int = 2,
    max_vars: int = 2,
) -> list[TermInContext]:
    """Every ``atoms``-based generalization of ``p1`` and ``p2`` within the bounds.

    Variables come from ``supply``; contexts range over all subsets of
    ``atoms x vars`` and suspension permutations over all bijections of ``atoms``.
    """
    atoms = sorted(atoms)
    if len(atoms) > max_atoms or depth_bound > max_depth:
        raise ValueError("enumeration bounds exceeded")
    if supply is None:
        supply = NameSupply.avoiding(p1.term, p2.term, contexts=[p1.ctx, p2.ctx], names=atoms)
    names = [supply.fresh_var() for _ in range(max_vars)]
    perms = list(all_bijections(atoms))
    out = []
    for shape in _shapes(p1.term, p2.term, atoms, depth_bound):
        k = _holes(shape)
        for pattern in _var_patterns(k, max_vars):
            used = sorted({names[v] for v in pattern})
            for hole_perms in itertools.product(perms, repeat=k):
                r = _fill(shape, iter(Susp(p, names[v]) for p, v in zip(hole_perms, pattern)))
                if depth(r) > depth_bound:
                    continue
                s1 = match_terms(r, p1.term, p1.ctx)
                if s1 is None:
                    continue
                s2 = match_terms(r, p2.term, p2.ctx)
                if s2 is None:
                    continue
                pairs = [(a, x) for x in used for a in atoms]
                for bits in itertools.product((False, True), repeat=len(pairs)):
                    gamma = frozenset(c for c, b in zip(pairs, bits) if b)
                    cand = TermInContext(gamma, r)
                    if _context_ok(cand, p1, s1) and _context_ok(cand, p2, s2):
                        out.append(cand)
    return out
