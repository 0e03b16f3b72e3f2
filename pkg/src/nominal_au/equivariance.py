"""Constructive equivariance: find an atom permutation ``pi`` over a finite atom
set with ``ctx |- pi . t ~ s`` for every equation ``t ~ s``, or fail.

The solver runs in two phases.  The first decomposes equations (Dec-E,
Alp-E, Sus-E) until only atom equations remain; the second builds ``pi``
from them (Rem-E, Sol-E).

Each equation side carries a pending permutation, so renaming a bound atom
to a fresh one costs one permutation update instead of a term traversal.
"""
from __future__ import annotations

import random
from collections import defaultdict, deque
from typing import Iterable, Optional

from .terms import Abs, App, Atom, NameSupply, Permutation, Susp, Term, atoms_of

ID = Permutation()


class EquivarianceFailure(Exception):
    """Raised internally when no rule applies; carries the failing guard."""


def _pop(work, rng):
    if rng is None or len(work) < 2:
        return work.popleft()
    i = rng.randrange(len(work))
    work[i], work[0] = work[0], work[i]
    return work.popleft()


def _decompose(eqs, ctx, order, supply, rng, trace):
    """Phase one: reduce to a list of atom equations."""
    work = deque((ID, t, ID, s) for t, s in eqs)
    atom_eqs = []
    fresh_by_var = defaultdict(set)
    for a, x in ctx:
        fresh_by_var[x].add(a)
    unconstrained = {}
    while work:
        lp, t, rp, s = _pop(work, rng)
        if isinstance(t, Atom) and isinstance(s, Atom):
            atom_eqs.append((lp(t.name), rp(s.name)))
        elif isinstance(t, App) and isinstance(s, App):
            if t.symbol != s.symbol or len(t.args) != len(s.args):
                raise EquivarianceFailure(f"Dec-E: symbol clash {t.symbol}/{len(t.args)} vs {s.symbol}/{len(s.args)}")
            work.extend((lp, u, rp, v) for u, v in zip(t.args, s.args))
            trace is not None and trace.append("Dec-E")
        elif isinstance(t, Abs) and isinstance(s, Abs):
            c = supply.fresh_atom()
            work.append((lp.prepend_swap(c, lp(t.binder)), t.body, rp.prepend_swap(c, rp(s.binder)), s.body))
            trace is not None and trace.append("Alp-E")
        elif isinstance(t, Susp) and isinstance(s, Susp):
            if t.var != s.var:
                raise EquivarianceFailure(f"Sus-E: distinct variables {t.var} and {s.var}")
            free = unconstrained.get(t.var)
            if free is None:
                fresh = fresh_by_var[t.var]
                free = unconstrained[t.var] = [a for a in order if a not in fresh]
            atom_eqs.extend((lp(t.perm(a)), rp(s.perm(a))) for a in free)
            trace is not None and trace.append("Sus-E")
        else:
            raise EquivarianceFailure(f"shape clash between {t} and {s}")
    return atom_eqs


def _build(atom_eqs, avail, rng, trace):
    """Phase two: solve atom equations ``a ~ b`` for the permutation."""
    avail = set(avail)
    pi = Permutation()
    work = deque(atom_eqs)
    while work:
        a, b = _pop(work, rng)
        image = pi(a)
        if image == b:
            avail.discard(b)
            trace is not None and trace.append("Rem-E")
        elif image in avail and b in avail:
            pi.swap_in_place(image, b)
            avail.discard(b)
            trace is not None and trace.append("Sol-E")
        else:
            raise EquivarianceFailure(f"Sol-E: cannot map {a} (currently to {image}) onto {b}; atoms left {sorted(avail)}")
    return pi


def solve_equivariance(
    eqs: Iterable[tuple[Term, Term]],
    ctx=frozenset(),
    atoms: Optional[Iterable[str]] = None,
    supply: Optional[NameSupply] = None,
    rng: Optional[random.Random] = None,
    trace: Optional[list] = None,
) -> Optional[Permutation]:
    """Return an ``atoms``-based permutation solving every equation, or ``None``.

    ``atoms`` defaults to the atoms of the equations and must contain them.
    With ``rng`` the next equation is picked at random instead of FIFO; any
    order gives the same verdict.  ``trace`` collects rule names and, on
    failure, a final ``"fail: ..."`` diagnostic.
    """
    eqs = list(eqs)
    eq_atoms = atoms_of(*(u for eq in eqs for u in eq))
    avail = set(eq_atoms) if atoms is None else set(atoms)
    if not eq_atoms <= avail:
        raise ValueError(f"equations mention atoms outside the atom set: {sorted(eq_atoms - avail)}")
    if supply is None:
        supply = NameSupply(avail | {a for a, _ in ctx})
    else:
        supply.reserve(avail)
    order = sorted(avail)
    try:
        atom_eqs = _decompose(eqs, ctx, order, supply, rng, trace)
        return _build(atom_eqs, avail, rng, trace)
    except EquivarianceFailure as exc:
        if trace is not None:
            trace.append(f"fail: {exc}")
        return None


def is_equivariant(t: Term, s: Term, ctx=frozenset(), atoms=None) -> bool:
    return solve_equivariance([(t, s)], ctx, atoms) is not None
