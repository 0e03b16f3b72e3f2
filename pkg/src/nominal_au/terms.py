"""Nominal terms, atom permutations and capturing substitutions.

Atoms and variables are plain strings: atoms start with a lowercase letter,
variables with an uppercase one.  Names generated by :class:`NameSupply`
start with ``#`` so they can never clash with user input.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Union


class Permutation:
    """A finite permutation of atoms kept as a forward and an inverse table.

    ``Permutation([(a1, b1), ..., (an, bn)])`` denotes the swap sequence
    ``(a1 b1)...(an bn)``; the rightmost swapping acts first.  Only moved
    atoms are stored, so looking up any other atom returns it unchanged.

    Equality and hashing go by action, never by the swaps used to build it:
    ``Permutation([("a", "b"), ("a", "b")]) == Permutation()``.
    """

    __slots__ = ("_fwd", "_inv", "_hash")

    def __init__(self, swaps: Iterable[tuple[str, str]] = ()):
        self._fwd: dict[str, str] = {}
        self._inv: dict[str, str] = {}
        self._hash = None
        for a, b in reversed(list(swaps)):
            self.swap_in_place(a, b)

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, str]) -> Permutation:
        if len(set(mapping.values())) != len(mapping) or set(mapping.values()) != set(mapping):
            raise ValueError(f"not a bijection on its domain: {dict(mapping)}")
        p = cls()
        for x, y in mapping.items():
            if x != y:
                p._fwd[x] = y
                p._inv[y] = x
        return p

    def __call__(self, a: str) -> str:
        return self._fwd.get(a, a)

    def preimage(self, a: str) -> str:
        return self._inv.get(a, a)

    def swap_in_place(self, a: str, b: str) -> None:
        """Turn ``self`` into ``(a b)self`` with four table updates.

        Only for permutations the caller owns; shared permutations must use
        :meth:`prepend_swap`.
        """
        c = self._inv.get(a, a)
        d = self._inv.get(b, b)
        fwd, inv = self._fwd, self._inv
        fwd[c] = b
        fwd[d] = a
        inv[b] = c
        inv[a] = d
        for x in (c, d):
            if fwd.get(x) == x:
                del fwd[x]
        for y in (a, b):
            if inv.get(y) == y:
                del inv[y]
        self._hash = None

    def prepend_swap(self, a: str, b: str) -> Permutation:
        p = self.copy()
        p.swap_in_place(a, b)
        return p

    def copy(self) -> Permutation:
        p = Permutation()
        p._fwd = dict(self._fwd)
        p._inv = dict(self._inv)
        return p

    def inverse(self) -> Permutation:
        p = Permutation()
        p._fwd = dict(self._inv)
        p._inv = dict(self._fwd)
        return p

    def compose(self, other: Permutation) -> Permutation:
        """The permutation acting as ``other`` first, then ``self``."""
        if not other._fwd:
            return self
        if not self._fwd:
            return other
        mapping = {}
        for x in self._fwd.keys() | other._fwd.keys():
            mapping[x] = self(other(x))
        return Permutation.from_mapping(mapping)

    @property
    def support(self) -> frozenset[str]:
        return frozenset(self._fwd)

    def is_identity(self) -> bool:
        return not self._fwd

    def cycles(self) -> list[tuple[str, ...]]:
        seen = set()
        out = []
        for start in sorted(self._fwd):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = self._fwd[start]
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self._fwd[x]
            out.append(tuple(cyc))
        return out

    @property
    def swaps(self) -> tuple[tuple[str, str], ...]:
        """Canonical swap sequence: each cycle ``c1 -> c2 -> ... -> ck`` becomes
        ``(c1 c2)(c2 c3)...(c(k-1) ck)``, cycles ordered by their least atom."""
        out = []
        for cyc in self.cycles():
            out.extend(zip(cyc, cyc[1:]))
        return tuple(out)

    @property
    def atoms(self) -> frozenset[str]:
        return frozenset(itertools.chain.from_iterable(self.swaps))

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._fwd == other._fwd

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._fwd.items()))
        return self._hash

    def __str__(self):
        return "".join(f"({a} {b})" for a, b in self.swaps) or "Id"

    def __repr__(self):
        return f"Permutation({list(self.swaps)!r})"


ID = Permutation()


@dataclass(frozen=True)
class Atom:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Abs:
    binder: str
    body: Term

    def __str__(self):
        return f"{self.binder}.{self.body}"


@dataclass(frozen=True)
class App:
    symbol: str
    args: tuple[Term, ...] = ()

    def __str__(self):
        # zero-argument applications print as "c()" so they re-parse as constants
        return f"{self.symbol}({', '.join(map(str, self.args))})"


@dataclass(frozen=True)
class Susp:
    perm: Permutation
    var: str

    def __str__(self):
        if self.perm.is_identity():
            return self.var
        return f"{self.perm}*{self.var}"


Term = Union[Atom, Abs, App, Susp]
Substitution = dict  # variable name -> Term; the empty dict is the identity


def var(name: str) -> Susp:
    return Susp(ID, name)


def perm_apply_atom(p: Permutation, a: str) -> str:
    return p(a)


def perm_inverse(p: Permutation) -> Permutation:
    return p.inverse()


def perm_prepend_swap(a: str, b: str, p: Permutation) -> Permutation:
    return p.prepend_swap(a, b)


def perm_disagreement(p1: Permutation, p2: Permutation, domain: Iterable[str] = ()) -> set[str]:
    candidates = set(domain) | p1.support | p2.support
    return {a for a in candidates if p1(a) != p2(a)}


def perm_apply_term(p: Permutation, t: Term) -> Term:
    if p.is_identity():
        return t
    return _apply(p, t)


def _apply(p, t):
    if isinstance(t, Atom):
        return Atom(p(t.name))
    if isinstance(t, Abs):
        return Abs(p(t.binder), _apply(p, t.body))
    if isinstance(t, App):
        return App(t.symbol, tuple(_apply(p, u) for u in t.args))
    return Susp(p.compose(t.perm), t.var)


def swap_term(a: str, b: str, t: Term) -> Term:
    if a == b:
        return t
    return _apply(Permutation([(a, b)]), t)


def subst_apply(t: Term, sigma: Mapping[str, Term]) -> Term:
    """Apply ``sigma`` without renaming binders (atoms may be captured)."""
    if not sigma:
        return t
    if isinstance(t, Atom):
        return t
    if isinstance(t, Abs):
        return Abs(t.binder, subst_apply(t.body, sigma))
    if isinstance(t, App):
        return App(t.symbol, tuple(subst_apply(u, sigma) for u in t.args))
    if t.var in sigma:
        return perm_apply_term(t.perm, sigma[t.var])
    return t


def compose_subst(sigma: Mapping[str, Term], theta: Mapping[str, Term]) -> dict[str, Term]:
    """The substitution ``sigma theta``: first ``sigma``, then ``theta``."""
    out = {x: subst_apply(u, theta) for x, u in sigma.items()}
    for x, u in theta.items():
        out.setdefault(x, u)
    return {x: u for x, u in out.items() if u != var(x)}


def free_atoms(t: Term) -> set[str]:
    if isinstance(t, Atom):
        return {t.name}
    if isinstance(t, Abs):
        return free_atoms(t.body) - {t.binder}
    if isinstance(t, App):
        return set().union(*map(free_atoms, t.args))
    return set(t.perm.atoms)


def free_atoms_nosusp(t: Term) -> set[str]:
    if isinstance(t, Atom):
        return {t.name}
    if isinstance(t, Abs):
        return free_atoms_nosusp(t.body) - {t.binder}
    if isinstance(t, App):
        return set().union(*map(free_atoms_nosusp, t.args))
    return set()


def atoms_of(*terms: Term) -> set[str]:
    out: set[str] = set()
    stack = list(terms)
    while stack:
        t = stack.pop()
        if isinstance(t, Atom):
            out.add(t.name)
        elif isinstance(t, Abs):
            out.add(t.binder)
            stack.append(t.body)
        elif isinstance(t, App):
            stack.extend(t.args)
        else:
            out |= t.perm.support
    return out


def vars_of(*terms: Term) -> set[str]:
    out: set[str] = set()
    stack = list(terms)
    while stack:
        t = stack.pop()
        if isinstance(t, Abs):
            stack.append(t.body)
        elif isinstance(t, App):
            stack.extend(t.args)
        elif isinstance(t, Susp):
            out.add(t.var)
    return out


def size(t: Term) -> int:
    """Occurrences of atoms, variables and function symbols."""
    if isinstance(t, Atom):
        return 1
    if isinstance(t, Abs):
        return 1 + size(t.body)
    if isinstance(t, App):
        return 1 + sum(map(size, t.args))
    return 1 + 2 * len(t.perm.swaps)


def abs_count(t: Term) -> int:
    if isinstance(t, Abs):
        return 1 + abs_count(t.body)
    if isinstance(t, App):
        return sum(map(abs_count, t.args))
    return 0


def depth(t: Term) -> int:
    if isinstance(t, Abs):
        return 1 + depth(t.body)
    if isinstance(t, App) and t.args:
        return 1 + max(map(depth, t.args))
    return 0


@dataclass(frozen=True)
class Measures:
    free_atoms: frozenset
    free_atoms_nosusp: frozenset
    atoms: frozenset
    vars: frozenset
    size: int
    abs_count: int


def measures(t: Term) -> Measures:
    return Measures(
        frozenset(free_atoms(t)),
        frozenset(free_atoms_nosusp(t)),
        frozenset(atoms_of(t)),
        frozenset(vars_of(t)),
        size(t),
        abs_count(t),
    )


class NameSupply:
    """Source of fresh variable (``#v0``, ``#v1``, ...) and atom (``#a0``, ...) names.

    Not thread-safe: give each concurrent task its own supply.
    """

    def __init__(self, reserved: Iterable[str] = ()):
        self.reserved = set(reserved)
        self.counter = 0

    def reserve(self, names: Iterable[str]) -> None:
        self.reserved.update(names)

    def _next(self, prefix):
        while True:
            name = f"{prefix}{self.counter}"
            self.counter += 1
            if name not in self.reserved:
                self.reserved.add(name)
                return name

    def fresh_var(self) -> str:
        return self._next("#v")

    def fresh_atom(self) -> str:
        return self._next("#a")

    @classmethod
    def avoiding(cls, *terms: Term, contexts=(), names: Iterable[str] = ()) -> NameSupply:
        reserved = atoms_of(*terms) | vars_of(*terms) | set(names)
        for ctx in contexts:
            for a, x in ctx:
                reserved.add(a)
                reserved.add(x)
        return cls(reserved)
