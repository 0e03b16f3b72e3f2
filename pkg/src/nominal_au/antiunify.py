"""Least general generalization of two nominal terms-in-context over a finite
atom set.

The run keeps pending triples ``X: t =^= s``, a store of solved triples, the
context ``gamma`` over generalization variables and a triangular substitution.
By default the pending triples are processed first-in first-out and merging
is postponed until they are exhausted; pass ``strategy=<seed>`` for a
randomized but equally valid rule order.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .equivariance import solve_equivariance
from .freshness import context_atoms, derives_fresh
from .terms import (
    Abs,
    App,
    Atom,
    NameSupply,
    Permutation,
    Susp,
    Term,
    abs_count,
    atoms_of,
    perm_apply_term,
    swap_term,
    vars_of,
)

ID = Permutation()


@dataclass(frozen=True)
class AUT:
    """Anti-unification triple ``var: lhs =^= rhs``."""

    var: str
    lhs: Term
    rhs: Term

    def __str__(self):
        return f"{self.var}: {self.lhs} =^= {self.rhs}"


@dataclass
class GenResult:
    gamma: frozenset
    term: Term
    store: list
    witness_left: dict
    witness_right: dict
    atoms: frozenset = frozenset()


@dataclass
class NState:
    pending: list
    store: dict
    gamma: set
    bindings: dict
    atoms: frozenset
    ctx: frozenset
    root: str = ""
    steps: list = field(default_factory=list)


def fresh_atoms_for(atoms, t: Term, s: Term, ctx) -> set[str]:
    return set(atoms) - atoms_of(t, s) - context_atoms(ctx)


def is_saturated(atoms, t: Term, s: Term, ctx) -> bool:
    return len(fresh_atoms_for(atoms, t, s, ctx)) >= min(abs_count(t), abs_count(s))


def saturate(atoms, t: Term, s: Term, ctx, supply: Optional[NameSupply] = None) -> frozenset:
    """Smallest extension of ``atoms`` by generated atoms that is saturated."""
    atoms = set(atoms)
    missing = min(abs_count(t), abs_count(s)) - len(fresh_atoms_for(atoms, t, s, ctx))
    if missing <= 0:
        return frozenset(atoms)
    if supply is None:
        supply = NameSupply.avoiding(t, s, contexts=[ctx], names=atoms)
    supply.reserve(atoms)
    return frozenset(atoms | {supply.fresh_atom() for _ in range(missing)})


def sol_gamma(lhs: Term, rhs: Term, gen_var: str, atoms, ctx) -> frozenset:
    return frozenset(
        (a, gen_var) for a in atoms if derives_fresh(ctx, a, lhs) and derives_fresh(ctx, a, rhs)
    )


def abs_candidates(lhs: Abs, rhs: Abs, atoms, ctx) -> list[str]:
    return [c for c in sorted(atoms) if derives_fresh(ctx, c, lhs) and derives_fresh(ctx, c, rhs)]


def choose_abs_atom(lhs: Abs, rhs: Abs, atoms, ctx) -> Optional[str]:
    """Least atom fresh for both abstractions, or ``None``."""
    for c in sorted(atoms):
        if derives_fresh(ctx, c, lhs) and derives_fresh(ctx, c, rhs):
            return c
    return None


def merge_step(first: AUT, second: AUT, ctx, supply=None, rng=None) -> Optional[Permutation]:
    """Permutation mapping ``first`` onto ``second`` on both sides, or ``None``."""
    atoms = atoms_of(first.lhs, first.rhs, second.lhs, second.rhs)
    return solve_equivariance(
        [(first.lhs, second.lhs), (first.rhs, second.rhs)], ctx, atoms, supply, rng
    )


def _skeleton(t):
    # equivariant terms share this shape key; used to skip hopeless merge attempts
    if isinstance(t, Atom):
        return "@"
    if isinstance(t, Abs):
        return (".", _skeleton(t.body))
    if isinstance(t, App):
        return (t.symbol, *map(_skeleton, t.args))
    return ("*", t.var)


def check_based(atoms, *terms, ctx=frozenset()) -> None:
    extra = atoms_of(*terms) | context_atoms(ctx)
    extra -= set(atoms)
    if extra:
        raise ValueError(f"input is not based on the atom set; unexpected atoms: {', '.join(sorted(extra))}")


class _Run:
    def __init__(self, t, s, ctx, atoms, supply, rng, on_step):
        self.ctx = frozenset(ctx)
        self.atoms = frozenset(atoms)
        self.supply = supply
        self.rng = rng
        self.on_step = on_step
        self.root = supply.fresh_var()
        self.pending = deque([AUT(self.root, t, s)])
        self.store: dict[str, AUT] = {}
        self.keys: dict[str, tuple] = {}
        self.gamma: set = set()
        self.bindings: dict[str, Term] = {}

    def _notify(self, rule):
        if self.on_step is not None:
            self.on_step(rule, self.state())

    def state(self) -> NState:
        return NState(list(self.pending), dict(self.store), set(self.gamma), dict(self.bindings), self.atoms, self.ctx, self.root)

    def _next_pending(self):
        if self.rng is None:
            return self.pending.popleft()
        i = self.rng.randrange(len(self.pending))
        self.pending.rotate(-i)
        return self.pending.popleft()

    def transform(self, aut: AUT) -> None:
        t, s = aut.lhs, aut.rhs
        if isinstance(t, App) and isinstance(s, App) and t.symbol == s.symbol and len(t.args) == len(s.args):
            fresh = [self.supply.fresh_var() for _ in t.args]
            self.bindings[aut.var] = App(t.symbol, tuple(Susp(ID, y) for y in fresh))
            self.pending.extend(AUT(y, u, v) for y, u, v in zip(fresh, t.args, s.args))
            return self._notify("Dec")
        if isinstance(t, Atom) and isinstance(s, Atom) and t.name == s.name:
            self.bindings[aut.var] = t
            return self._notify("Dec")
        if isinstance(t, Abs) and isinstance(s, Abs):
            if self.rng is None:
                c = choose_abs_atom(t, s, self.atoms, self.ctx)
            else:
                cands = abs_candidates(t, s, self.atoms, self.ctx)
                c = self.rng.choice(cands) if cands else None
            if c is not None:
                y = self.supply.fresh_var()
                self.bindings[aut.var] = Abs(c, Susp(ID, y))
                self.pending.append(AUT(y, swap_term(c, t.binder, t.body), swap_term(c, s.binder, s.body)))
                return self._notify("Abs")
        self.store[aut.var] = aut
        self.keys[aut.var] = (_skeleton(t), _skeleton(s))
        self.gamma |= sol_gamma(t, s, aut.var, self.atoms, self.ctx)
        self._notify("Sol")

    def try_merge(self, x: str, y: str) -> bool:
        """Merge ``y`` into ``x`` if their triples are equivariant."""
        if self.keys[x] != self.keys[y]:
            return False
        pi = merge_step(self.store[x], self.store[y], self.ctx, self.supply, self.rng)
        if pi is None:
            return False
        del self.store[y]
        del self.keys[y]
        moved = {c for c in self.gamma if c[1] == y}
        self.gamma -= moved
        self.gamma |= {(pi.preimage(a), x) for a, _ in moved}
        self.bindings[y] = Susp(pi, x)
        self._notify("Mer")
        return True

    def run(self):
        if self.rng is None:
            while self.pending:
                self.transform(self.pending.popleft())
            order = list(self.store)
            removed = set()
            for i, x in enumerate(order):
                if x in removed:
                    continue
                for y in order[i + 1:]:
                    if y not in removed and self.try_merge(x, y):
                        removed.add(y)
        else:
            tried = set()
            while self.pending:
                if len(self.store) > 1 and self.rng.random() < 0.3:
                    x, y = self.rng.sample(list(self.store), 2)
                    if frozenset((x, y)) not in tried:
                        tried.add(frozenset((x, y)))
                        self.try_merge(x, y)
                    continue
                self.transform(self._next_pending())
            # exhaust merging; failed pairs stay unmergeable since triples never change
            changed = True
            while changed:
                changed = False
                pairs = [(x, y) for x in self.store for y in self.store if x < y and frozenset((x, y)) not in tried]
                self.rng.shuffle(pairs)
                for x, y in pairs:
                    if x in self.store and y in self.store:
                        tried.add(frozenset((x, y)))
                        if self.rng.random() < 0.5:
                            x, y = y, x
                        if self.try_merge(x, y):
                            changed = True
        return self.result()

    def resolve(self, t: Term, memo: dict) -> Term:
        if isinstance(t, Atom):
            return t
        if isinstance(t, Abs):
            return Abs(t.binder, self.resolve(t.body, memo))
        if isinstance(t, App):
            return App(t.symbol, tuple(self.resolve(u, memo) for u in t.args))
        if t.var not in self.bindings:
            return t
        if t.var not in memo:
            memo[t.var] = self.resolve(self.bindings[t.var], memo)
        return perm_apply_term(t.perm, memo[t.var])

    def result(self) -> GenResult:
        term = self.resolve(Susp(ID, self.root), {})
        store = list(self.store.values())
        return GenResult(
            gamma=frozenset(self.gamma),
            term=term,
            store=store,
            witness_left={a.var: a.lhs for a in store},
            witness_right={a.var: a.rhs for a in store},
            atoms=self.atoms,
        )


def antiunify(
    t: Term,
    s: Term,
    ctx=frozenset(),
    atoms: Optional[Iterable[str]] = None,
    supply: Optional[NameSupply] = None,
    strategy=None,
    on_step: Optional[Callable[[str, NState], None]] = None,
) -> GenResult:
    """Compute the ``atoms``-based lgg of ``<ctx, t>`` and ``<ctx, s>``.

    ``atoms`` defaults to the atoms of the input.  ``strategy`` is ``None``
    for the deterministic order or an ``int`` seed / ``random.Random`` for a
    randomized one.  ``on_step(rule, state)`` is called after every rule.
    """
    ctx = frozenset(ctx)
    atoms = atoms_of(t, s) | context_atoms(ctx) if atoms is None else set(atoms)
    check_based(atoms, t, s, ctx=ctx)
    if supply is None:
        supply = NameSupply.avoiding(t, s, contexts=[ctx], names=atoms)
    else:
        supply.reserve(atoms | vars_of(t, s) | {x for _, x in ctx})
    if strategy is None or strategy == "default":
        rng = None
    elif isinstance(strategy, random.Random):
        rng = strategy
    else:
        rng = random.Random(int(strategy))
    return _Run(t, s, ctx, atoms, supply, rng, on_step).run()
