"""Command results and their JSON encoding.

Every JSON report is an object whose first key is ``kind`` and whose last
key is ``diagnostics``.  Payload keys, in order:

==============  ================================================================
kind            payload
==============  ================================================================
generalization  ``atoms``, ``gamma``, ``term``, ``store`` (list of ``{var, lhs,
                rhs}``), ``witness_left``, ``witness_right`` (objects var -> term)
permutation     ``permutation`` (swap sequence, ``Id`` for the identity)
boolean         ``value``
context         ``context``
failure         (none)
==============  ================================================================

Terms, contexts and permutations are embedded as strings in the text syntax,
so :func:`decode` can rebuild the in-memory values with the parser.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import syntax
from .antiunify import AUT, GenResult

EXIT_CODES = {"generalization": 0, "permutation": 0, "context": 0, "failure": 1}


@dataclass
class ResultReport:
    kind: str
    payload: dict = field(default_factory=dict)
    diagnostics: list = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        if self.kind == "boolean":
            return 0 if self.payload["value"] else 1
        return EXIT_CODES[self.kind]

    def to_json(self) -> str:
        return json.dumps({"kind": self.kind, **self.payload, "diagnostics": self.diagnostics}, ensure_ascii=False)

    def to_text(self) -> str:
        p = self.payload
        if self.kind == "generalization":
            lines = [
                f"atoms: {p['atoms']}",
                f"lgg: <{p['gamma']}, {p['term']}>",
                "store:",
                *(f"  {e['var']}: {e['lhs']} =^= {e['rhs']}" for e in p["store"]),
                "left witness:  " + _show_subst(p["witness_left"]),
                "right witness: " + _show_subst(p["witness_right"]),
            ]
        elif self.kind == "permutation":
            lines = [p["permutation"]]
        elif self.kind == "boolean":
            lines = ["true" if p["value"] else "false"]
        elif self.kind == "context":
            lines = [p["context"]]
        else:
            lines = ["bot"]
        return "\n".join(lines + [f"; {d}" for d in self.diagnostics])


def _show_subst(sigma):
    return "{" + ", ".join(f"{x} -> {t}" for x, t in sigma.items()) + "}"


def generalization_report(res: GenResult, diagnostics=()) -> ResultReport:
    payload = {
        "atoms": syntax.show_atoms(res.atoms),
        "gamma": syntax.show_context(res.gamma),
        "term": str(res.term),
        "store": [{"var": a.var, "lhs": str(a.lhs), "rhs": str(a.rhs)} for a in res.store],
        "witness_left": {x: str(t) for x, t in res.witness_left.items()},
        "witness_right": {x: str(t) for x, t in res.witness_right.items()},
    }
    return ResultReport("generalization", payload, list(diagnostics))


def decode(text: str, signature=None):
    """Rebuild ``(kind, value)`` from a JSON report.

    The value is a :class:`GenResult`, a permutation, a bool, a context, or
    ``None`` for failure.
    """
    data = json.loads(text)
    kind = data["kind"]
    term = lambda s: syntax.parse_term(s, signature)  # noqa: E731
    if kind == "generalization":
        store = [AUT(e["var"], term(e["lhs"]), term(e["rhs"])) for e in data["store"]]
        value = GenResult(
            gamma=syntax.parse_context(data["gamma"]),
            term=term(data["term"]),
            store=store,
            witness_left={x: term(t) for x, t in data["witness_left"].items()},
            witness_right={x: term(t) for x, t in data["witness_right"].items()},
            atoms=syntax.parse_atoms(data["atoms"]),
        )
    elif kind == "permutation":
        value = syntax.parse_perm(data["permutation"])
    elif kind == "boolean":
        value = bool(data["value"])
    elif kind == "context":
        value = syntax.parse_context(data["context"])
    elif kind == "failure":
        value = None
    else:
        raise ValueError(f"unknown report kind {kind!r}")
    return kind, value
