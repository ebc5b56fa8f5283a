"""The ten intuitionistic axiom schemas and the weak excluded middle schema,
with a matcher that unifies schema metavariables against subsentences."""
from __future__ import annotations

from itertools import product as cartesian
from typing import Iterator, Optional

from residua.logic.syntax import BINARY, And, Atom, Implies, Not, Or, Sentence

# metavariables are atoms with negative indices
PHI, PSI, THETA = Atom(-1), Atom(-2), Atom(-3)

SCHEMAS: tuple[Sentence, ...] = (
    Implies(PHI, Implies(PSI, PHI)),
    Implies(Implies(PHI, PSI), Implies(Implies(PHI, Implies(PSI, THETA)), Implies(PHI, THETA))),
    Implies(Implies(PHI, THETA), Implies(Implies(PSI, THETA), Implies(Or(PHI, PSI), THETA))),
    Implies(PHI, Implies(PSI, And(PHI, PSI))),
    Implies(PHI, Or(PHI, PSI)),
    Implies(And(PHI, PSI), PHI),
    Implies(PSI, Or(PHI, PSI)),
    Implies(And(PHI, PSI), PSI),
    Implies(Implies(PHI, PSI), Implies(Implies(PHI, Not(PSI)), Not(PHI))),
    Implies(Not(PHI), Implies(PHI, PSI)),
)

WEM_SCHEMA: Sentence = Or(Not(PHI), Not(Not(PHI)))


def _match(pattern: Sentence, s: Sentence, binding: dict) -> bool:
    if isinstance(pattern, Atom) and pattern.index < 0:
        bound = binding.get(pattern.index)
        if bound is None:
            binding[pattern.index] = s
            return True
        return bound == s
    if type(pattern) is not type(s):
        return False
    if isinstance(pattern, Not):
        return _match(pattern.arg, s.arg, binding)
    if isinstance(pattern, BINARY):
        return _match(pattern.left, s.left, binding) and _match(pattern.right, s.right, binding)
    return pattern == s


def match_schema(pattern: Sentence, s: Sentence) -> Optional[dict]:
    binding: dict = {}
    return binding if _match(pattern, s, binding) else None


def ipc_axiom_check(s: Sentence) -> Optional[int]:
    """1-based id of the first schema ``s`` instantiates, or None."""
    for i, pattern in enumerate(SCHEMAS, 1):
        if match_schema(pattern, s) is not None:
            return i
    return None


def instantiate(pattern: Sentence, binding: dict) -> Sentence:
    if isinstance(pattern, Atom):
        return binding.get(pattern.index, pattern) if pattern.index < 0 else pattern
    if isinstance(pattern, Not):
        return Not(instantiate(pattern.arg, binding))
    if isinstance(pattern, BINARY):
        return type(pattern)(instantiate(pattern.left, binding), instantiate(pattern.right, binding))
    return pattern


def metavariables(pattern: Sentence) -> list[int]:
    out: set[int] = set()

    def go(t):
        if isinstance(t, Atom) and t.index < 0:
            out.add(t.index)
        elif isinstance(t, Not):
            go(t.arg)
        elif isinstance(t, BINARY):
            go(t.left)
            go(t.right)

    go(pattern)
    return sorted(out, reverse=True)


def instances(pattern: Sentence, pool) -> Iterator[Sentence]:
    """Every instance of ``pattern`` with metavariables drawn from ``pool``."""
    mvs = metavariables(pattern)
    for choice in cartesian(pool, repeat=len(mvs)):
        yield instantiate(pattern, dict(zip(mvs, choice)))
