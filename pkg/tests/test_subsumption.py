import pytest

from nominal_au.subsumption import (
    TermInContext,
    all_bijections,
    candidate_terms,
    enumerate_generalizations,
    equi_general,
    exhaustive_subsumes,
    exhaustive_term_subsumes,
    match_terms,
    subsumes,
    term_equi_general,
    term_subsumes,
)
from nominal_au.syntax import parse_context, parse_term, parse_term_in_context
from nominal_au.terms import Atom, Susp

T = parse_term
P = parse_term_in_context
E = frozenset()


def test_match_examples():
    assert match_terms(T("f(Z, (a b)*Z)"), T("f(Y, (a b)*Y)")) == {"Z": T("Y")}
    g = T("f(a, b.c)")
    assert match_terms(g, g) == {}
    sigma = match_terms(T("(a b)*X"), T("(a c)*X"), parse_context("{b#X}"))
    assert sigma == {"X": T("(a b)(a c)*X")}
    assert match_terms(T("f(X, X)"), T("f(a, b)")) is None


def test_match_through_binders():
    sigma = match_terms(T("a.X"), T("b.b"))
    assert sigma is not None and sigma["X"] == T("a")


def test_term_level_relation_examples():
    assert term_subsumes(E, T("f(X)"), T("f(Y)"))
    ctx = parse_context("{c#X}")
    assert term_subsumes(ctx, T("X"), T("c.X"))
    assert not term_subsumes(ctx, T("c.X"), T("X"))
    assert term_equi_general(E, T("f(X)"), T("f(Y)"))


def test_context_level_examples():
    assert subsumes(P("<{a#X}, f(a)>"), P("<{}, f(a)>"))
    assert equi_general(P("<{a#X}, f(a)>"), P("<{}, f(a)>"))
    assert subsumes(P("<{}, f(X)>"), P("<{a#X}, f(X)>"))
    assert not subsumes(P("<{a#X}, f(X)>"), P("<{}, f(Y)>"))
    assert not subsumes(P("<{a#X}, f(X)>"), P("<{a#X}, f(a)>"))
    assert equi_general(P("<{b#X}, (a b)*X>"), P("<{c#X}, (a c)*X>"))
    p = P("<{a#X}, g(X, b.Y)>")
    assert equi_general(p, p)
    assert not equi_general(P("<{}, X>"), P("<{a#X}, X>"))


@pytest.mark.parametrize(
    "general, specific",
    [
        ("<{a#X}, f(X)>", "<{}, f(X)>"),
        ("<{a#X}, f(X)>", "<{}, f(Y)>"),
        ("<{a#X}, f(X)>", "<{a#X}, f(a)>"),
        ("<{a#X}, X>", "<{}, X>"),
    ],
)
def test_negatives_hold_under_exhaustive_search(general, specific):
    assert not exhaustive_subsumes(P(general), P(specific), max_depth=2)


def test_exhaustive_search_finds_positives():
    assert exhaustive_subsumes(P("<{}, f(X)>"), P("<{a#X}, f(X)>"), max_depth=1)
    assert exhaustive_term_subsumes(parse_context("{c#X}"), T("X"), T("c.X"), max_depth=1)
    assert not exhaustive_term_subsumes(parse_context("{c#X}"), T("c.X"), T("X"), max_depth=2)


def test_bijections_and_candidates():
    perms = list(all_bijections("abc"))
    assert len(perms) == 6 and perms[0].is_identity()
    cands = candidate_terms({"a"}, {"g": 1}, {"X"}, 1)
    assert Atom("a") in cands and T("g(X)") in cands and T("a.a") in cands


def test_enumerate_generalizations_examples():
    gens = enumerate_generalizations(P("<{}, a>"), P("<{}, a>"), {"a"}, depth_bound=1)
    assert any(g.term == Atom("a") and g.ctx == E for g in gens)
    assert any(isinstance(g.term, Susp) and g.ctx == E for g in gens)
    gens = enumerate_generalizations(P("<{}, a>"), P("<{}, b>"), {"a", "b"}, depth_bound=1)
    assert gens and not any(isinstance(g.term, Atom) for g in gens)
    assert any(isinstance(g.term, Susp) for g in gens)
    with pytest.raises(ValueError):
        enumerate_generalizations(P("<{}, a>"), P("<{}, b>"), set("abcd"))


def test_term_in_context_prints():
    assert str(TermInContext(parse_context("{a#X}"), T("f(X)"))) == "<{a#X}, f(X)>"
