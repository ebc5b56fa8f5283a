"""Terminating proof search for intuitionistic propositional logic.

Backward search in the contraction-free sequent calculus G4ip: every rule
except right-disjunction and the left rule for a nested implication
``(A -> B) -> C`` is invertible and is applied eagerly.  Only those two
non-invertible choices count against the depth budget.

Formulas are lowered to tuples for cheap hashing::

    ('a', i)   atom      ('&', A, B)   ('|', A, B)   ('>', A, B)
    ('F',)     bottom    ('T',)        top

``~A`` becomes ``A -> F``.
"""
from __future__ import annotations

from typing import Iterable, Optional

from residua.logic.syntax import And, Atom, Bot, Not, Or, Sentence, Top

BOT = ("F",)
TOP = ("T",)


def lower(s: Sentence) -> tuple:
    if isinstance(s, Atom):
        return ("a", s.index)
    if isinstance(s, Top):
        return TOP
    if isinstance(s, Bot):
        return BOT
    if isinstance(s, Not):
        return (">", lower(s.arg), BOT)
    tag = "&" if isinstance(s, And) else "|" if isinstance(s, Or) else ">"
    return (tag, lower(s.left), lower(s.right))


class Prover:
    """One search session; the memo table is shared across queries."""

    def __init__(self, max_depth: int = 40):
        self.max_depth = max_depth
        self._proved: set = set()
        self._refuted: set = set()
        self._unknown: dict = {}  # key -> largest budget that still ran out
        self.exhausted = False

    def provable(self, hyps: Iterable[Sentence], goal: Sentence) -> Optional[bool]:
        """True (proved), False (search space exhausted without a proof) or
        None (depth budget ran out)."""
        return self._prove(frozenset(lower(h) for h in hyps), lower(goal), self.max_depth)

    # -- left saturation with the invertible left rules --------------------

    @staticmethod
    def _saturate(gamma: frozenset) -> Optional[frozenset]:
        """Apply invertible left rules until none fire; None if ``F`` appears."""
        todo = list(gamma)
        done: set = set()
        while todo:
            f = todo.pop()
            if f in done:
                continue
            tag = f[0]
            if tag == "F":
                return None
            if tag == "T":
                continue
            if tag == "&":
                todo += [f[1], f[2]]
                continue
            if tag == ">":
                ante, cons = f[1], f[2]
                at = ante[0]
                if at == "F":
                    continue
                if at == "T":
                    todo.append(cons)
                    continue
                if at == "&":
                    todo.append((">", ante[1], (">", ante[2], cons)))
                    continue
                if at == "|":
                    todo += [(">", ante[1], cons), (">", ante[2], cons)]
                    continue
                if at == "a" and ante in done:
                    todo.append(cons)
                    continue
            done.add(f)
            if tag == "a":
                # an atom may unlock implications already stored
                for g in list(done):
                    if g[0] == ">" and g[1] == f:
                        done.discard(g)
                        todo.append(g[2])
        return frozenset(done)

    def _prove(self, gamma: frozenset, goal: tuple, budget: int) -> Optional[bool]:
        sat = self._saturate(gamma)
        if sat is None:
            return True
        gamma = sat
        # invertible right rules
        while True:
            if goal == TOP or goal in gamma:
                return True
            tag = goal[0]
            if tag == "&":
                left = self._prove(gamma, goal[1], budget)
                if left is False:
                    return False
                right = self._prove(gamma, goal[2], budget)
                if right is False:
                    return False
                return True if (left and right) else None
            if tag == ">":
                sat = self._saturate(gamma | {goal[1]})
                if sat is None:
                    return True
                gamma, goal = sat, goal[2]
                continue
            break

        key = (gamma, goal)
        if key in self._proved:
            return True
        if key in self._refuted:
            return False
        if self._unknown.get(key, -1) >= budget:
            return None
        result = self._search(gamma, goal, budget)
        if result is True:
            self._proved.add(key)
        elif result is False:
            self._refuted.add(key)
        else:
            self._unknown[key] = max(budget, self._unknown.get(key, -1))
        return result

    def _search(self, gamma: frozenset, goal: tuple, budget: int) -> Optional[bool]:
        # left disjunction is invertible: split on the first one found
        for f in sorted(gamma):
            if f[0] == "|":
                rest = gamma - {f}
                a = self._prove(rest | {f[1]}, goal, budget)
                if a is False:
                    return False
                b = self._prove(rest | {f[2]}, goal, budget)
                if b is False:
                    return False
                return True if (a and b) else None

        if budget <= 0:
            self.exhausted = True
            return None
        unknown = False
        if goal[0] == "|":
            for side in (goal[1], goal[2]):
                r = self._prove(gamma, side, budget - 1)
                if r:
                    return True
                unknown |= r is None
        for f in sorted(gamma):
            if f[0] == ">" and f[1][0] == ">":
                (_, (_, a, b), c) = f
                rest = gamma - {f}
                first = self._prove(rest | {(">", b, c)}, (">", a, b), budget - 1)
                if first is False:
                    continue
                second = self._prove(rest | {c}, goal, budget - 1)
                if first and second:
                    return True
                unknown |= first is None or second is None
        return None if unknown else False


def ipc_provable(hyps: Iterable[Sentence], goal: Sentence, max_depth: int = 40) -> Optional[bool]:
    return Prover(max_depth).provable(hyps, goal)
