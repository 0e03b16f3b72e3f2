"""Nominal anti-unification: least general generalizations of nominal
terms-in-context over a finite atom set, with constructive equivariance."""
from .antiunify import (
    AUT,
    GenResult,
    antiunify,
    choose_abs_atom,
    fresh_atoms_for,
    is_saturated,
    merge_step,
    saturate,
    sol_gamma,
)
from .equivariance import solve_equivariance
from .freshness import alpha_eq, ctx_instance, derives_all, derives_fresh, fc, respects
from .subsumption import (
    TermInContext,
    brute_equivariance,
    enumerate_generalizations,
    equi_general,
    match_terms,
    subsumes,
    term_subsumes,
)
from .syntax import ParseError, parse_context, parse_formulas, parse_term, parse_term_in_context
from .terms import (
    ID,
    Abs,
    App,
    Atom,
    NameSupply,
    Permutation,
    Susp,
    measures,
    perm_apply_atom,
    perm_apply_term,
    perm_disagreement,
    perm_inverse,
    perm_prepend_swap,
    subst_apply,
)

__version__ = "0.1.0"
