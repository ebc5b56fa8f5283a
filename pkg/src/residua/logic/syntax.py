"""Propositional sentences: AST, parser and printer.

Grammar (loosest first)::

    imp  := disj ( '->' imp )?
    disj := conj ( '|' conj )*
    conj := un ( '&' un )*
    un   := '~' un | atom | 'T' | 'F' | '(' imp ')'

Atoms are written ``p0``, ``p1``, ...  ``T`` and ``F`` are the constants
top and bottom.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from residua.errors import FormulaSyntaxError


@dataclass(frozen=True)
class Atom:
    index: int

    def __str__(self):
        return f"p{self.index}"


@dataclass(frozen=True)
class Top:
    def __str__(self):
        return "T"


@dataclass(frozen=True)
class Bot:
    def __str__(self):
        return "F"


@dataclass(frozen=True)
class Not:
    arg: "Sentence"

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class And:
    left: "Sentence"
    right: "Sentence"

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Or:
    left: "Sentence"
    right: "Sentence"

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Implies:
    left: "Sentence"
    right: "Sentence"

    def __str__(self):
        return to_text(self)


Sentence = Union[Atom, Top, Bot, Not, And, Or, Implies]
BINARY = (And, Or, Implies)


def p(i: int) -> Atom:
    return Atom(i)


def neg(s: Sentence) -> Not:
    return Not(s)


def conj(parts) -> Sentence:
    """Left-nested conjunction; the empty conjunction is ``T``."""
    parts = list(parts)
    if not parts:
        return Top()
    out = parts[0]
    for q in parts[1:]:
        out = And(out, q)
    return out


def disj(parts) -> Sentence:
    """Left-nested disjunction; the empty disjunction is ``F``."""
    parts = list(parts)
    if not parts:
        return Bot()
    out = parts[0]
    for q in parts[1:]:
        out = Or(out, q)
    return out


def iff(a: Sentence, b: Sentence) -> Sentence:
    return And(Implies(a, b), Implies(b, a))


def atoms(s: Sentence) -> frozenset[int]:
    out: set[int] = set()
    stack = [s]
    while stack:
        t = stack.pop()
        if isinstance(t, Atom):
            out.add(t.index)
        elif isinstance(t, Not):
            stack.append(t.arg)
        elif isinstance(t, BINARY):
            stack += [t.left, t.right]
    return frozenset(out)


def positive(s: Sentence) -> bool:
    if isinstance(s, Not):
        return False
    if isinstance(s, BINARY):
        return positive(s.left) and positive(s.right)
    return True


def depth(s: Sentence) -> int:
    if isinstance(s, Not):
        return 1 + depth(s.arg)
    if isinstance(s, BINARY):
        return 1 + max(depth(s.left), depth(s.right))
    return 0


# --- parsing ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(->)|(p\d+)|([~&|()TF]))")


def _tokenize(text: str) -> list[tuple[str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise FormulaSyntaxError(f"unexpected character {text[start]!r}", start)
        tok = m.group(m.lastindex)
        toks.append((tok, m.start(m.lastindex)))
        pos = m.end()
    toks.append(("<end>", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.toks[self.i][0]

    def take(self) -> tuple[str, int]:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, what: str):
        tok, pos = self.toks[self.i]
        found = "end of input" if tok == "<end>" else repr(tok)
        raise FormulaSyntaxError(f"expected {what}, found {found}", pos)

    def imp(self) -> Sentence:
        left = self.disj()
        if self.peek() == "->":
            self.take()
            return Implies(left, self.imp())
        return left

    def disj(self) -> Sentence:
        out = self.conj()
        while self.peek() == "|":
            self.take()
            out = Or(out, self.conj())
        return out

    def conj(self) -> Sentence:
        out = self.unary()
        while self.peek() == "&":
            self.take()
            out = And(out, self.unary())
        return out

    def unary(self) -> Sentence:
        tok = self.peek()
        if tok == "~":
            self.take()
            return Not(self.unary())
        if tok == "(":
            self.take()
            inner = self.imp()
            if self.peek() != ")":
                self.fail("')'")
            self.take()
            return inner
        if tok.startswith("p"):
            self.take()
            return Atom(int(tok[1:]))
        if tok == "T":
            self.take()
            return Top()
        if tok == "F":
            self.take()
            return Bot()
        self.fail("a sentence")


def parse(text: str) -> Sentence:
    ps = _Parser(text)
    out = ps.imp()
    if ps.peek() != "<end>":
        ps.fail("an operator or end of input")
    return out


# --- printing --------------------------------------------------------------

_SYMBOL = {And: "&", Or: "|", Implies: "->"}


def to_text(s: Sentence) -> str:
    """Render with the fewest parentheses the parser needs, except that a
    binary operand of ``->`` or of a different binary connective is always
    bracketed for readability."""
    if isinstance(s, (Atom, Top, Bot)):
        return str(s)
    if isinstance(s, Not):
        inner = to_text(s.arg)
        return "~" + (f"({inner})" if isinstance(s.arg, BINARY) else inner)
    op = type(s)
    left, right = to_text(s.left), to_text(s.right)
    if isinstance(s.left, BINARY) and (op is Implies or type(s.left) is not op):
        left = f"({left})"
    if isinstance(s.right, BINARY):
        right = f"({right})"
    return f"{left} {_SYMBOL[op]} {right}"
