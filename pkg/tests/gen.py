"""Random instance generators shared by the property and acceptance tests."""
from __future__ import annotations

import random

from nominal_au.terms import Abs, App, Atom, Permutation, Susp, perm_apply_term

SYMBOLS = {"f": 2, "g": 1, "c": 0}
ATOM_POOL = "abcde"
VAR_POOL = "XYZW"


def random_perm(rng: random.Random, atoms, max_swaps=2) -> Permutation:
    atoms = sorted(atoms)
    if len(atoms) < 2:
        return Permutation()
    swaps = [tuple(rng.sample(atoms, 2)) for _ in range(rng.randint(0, max_swaps))]
    return Permutation(swaps)


def random_term(rng: random.Random, atoms, variables, depth, symbols=SYMBOLS):
    atoms, variables = sorted(atoms), sorted(variables)
    leaves = []
    if atoms:
        leaves.append("atom")
    if variables:
        leaves.append("susp")
    if "c" in symbols:
        leaves.append("const")
    if depth <= 0 or rng.random() < 0.3:
        kind = rng.choice(leaves)
        if kind == "atom":
            return Atom(rng.choice(atoms))
        if kind == "susp":
            return Susp(random_perm(rng, atoms), rng.choice(variables))
        return App("c", ())
    kinds = ["app1", "app2"] + (["abs", "abs"] if atoms else [])
    kind = rng.choice(kinds)
    if kind == "abs":
        return Abs(rng.choice(atoms), random_term(rng, atoms, variables, depth - 1, symbols))
    if kind == "app1":
        return App("g", (random_term(rng, atoms, variables, depth - 1, symbols),))
    return App("f", tuple(random_term(rng, atoms, variables, depth - 1, symbols) for _ in range(2)))


def random_ctx(rng: random.Random, atoms, variables, p=0.25) -> frozenset:
    return frozenset((a, x) for a in sorted(atoms) for x in sorted(variables) if rng.random() < p)


def related_pair(rng: random.Random, atoms, variables, depth):
    """Two terms that often share structure: a term and a perturbed,
    permuted copy of it."""
    t = random_term(rng, atoms, variables, depth)
    r = rng.random()
    if r < 0.3:
        s = random_term(rng, atoms, variables, depth)
    elif r < 0.6:
        s = perm_apply_term(random_perm(rng, atoms, 3), t)
    else:
        s = _perturb(rng, perm_apply_term(random_perm(rng, atoms, 3), t), atoms, variables)
    return t, s


def _perturb(rng, t, atoms, variables):
    if rng.random() < 0.2:
        return random_term(rng, atoms, variables, 1)
    if isinstance(t, Abs):
        return Abs(t.binder, _perturb(rng, t.body, atoms, variables))
    if isinstance(t, App) and t.args:
        i = rng.randrange(len(t.args))
        args = list(t.args)
        args[i] = _perturb(rng, args[i], atoms, variables)
        return App(t.symbol, tuple(args))
    return t



def scaling_family(n: int):
    """Equivariant pair of terms of size about ``n`` with a context.

    Each term is ``k`` abstractions over a balanced ``f``-tree of ``k``
    suspension leaves ``(x_i x_i+1)*X``; the left uses binders ``a_i``, the
    right ``b_i``.  The context makes every atom fresh for ``X``, so
    ``(a_0 b_0)...(a_k-1 b_k-1)`` solves the pair.
    """
    from nominal_au.terms import size

    k = 1
    while size(_family_term(k + 1, "a")) <= n:
        k += 1
    t, s = _family_term(k, "a"), _family_term(k, "b")
    atoms = {f"{p}{i}" for p in "ab" for i in range(k)}
    ctx = frozenset((a, "X") for a in atoms)
    return t, s, ctx, atoms


def _family_term(k, prefix):
    names = [f"{prefix}{i}" for i in range(k)]
    leaves = [Susp(Permutation([(names[i], names[(i + 1) % k])]), "X") for i in range(k)]

    def tree(xs):
        if len(xs) == 1:
            return xs[0]
        mid = len(xs) // 2
        return App("f", (tree(xs[:mid]), tree(xs[mid:])))

    body = tree(leaves)
    for a in reversed(names):
        body = Abs(a, body)
    return body


def time_call(fn, samples=5, min_time=0.05):
    """Median seconds per call over ``samples`` samples; each sample repeats
    ``fn`` until it has run for at least ``min_time`` seconds."""
    import gc
    import statistics
    import time

    fn()
    out = []
    enabled = gc.isenabled()
    gc.disable()
    try:
        for _ in range(samples):
            reps, start = 0, time.perf_counter()
            while True:
                fn()
                reps += 1
                elapsed = time.perf_counter() - start
                if elapsed >= min_time:
                    break
            out.append(elapsed / reps)
    finally:
        if enabled:
            gc.enable()
    return statistics.median(out)
