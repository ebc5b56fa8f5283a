"""Closed classes of sequences, truncated at a finite depth.

A class is a prefix-closed set of finite strings (a tree) whose level ``m``
children range over ``0 .. h(m)-1``.  Everything here is exact for the
truncated tree; statements about infinite paths are approximations whose
quality is controlled by the depth cap and a lookahead.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterable, Iterator, Optional, Sequence

from residua.errors import (
    BranchingMismatch,
    DepthExceeded,
    EmptyClass,
    FormatError,
    NotDisjoint,
)
from residua.logic.syntax import And, Atom, Bot, Not, Or, Sentence, Top, atoms, parse

Word = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class ClosedClass:
    depth_cap: int
    member: Callable[[Word], bool] = field(repr=False)
    branching: tuple[int, ...] = (2,)
    label: str = ""

    def bound(self, level: int) -> int:
        b = self.branching
        return b[level] if level < len(b) else b[-1]

    def _check(self, d: int):
        if d > self.depth_cap:
            raise DepthExceeded(f"depth {d} exceeds the cap {self.depth_cap}")

    def accepts(self, s: Sequence[int]) -> bool:
        s = tuple(s)
        self._check(len(s))
        if any(not 0 <= x < self.bound(i) for i, x in enumerate(s)):
            return False
        return self.member(s)

    def children(self, s: Word) -> list[Word]:
        if len(s) >= self.depth_cap:
            return []
        return [s + (i,) for i in range(self.bound(len(s))) if self.member(s + (i,))]

    def level(self, d: int) -> list[Word]:
        """Accepted strings of length ``d`` in lexicographic order."""
        self._check(d)
        layer = [()] if self.member(()) else []
        for _ in range(d):
            layer = [c for s in layer for c in self.children(s)]
        return layer

    def walk(self, d: int) -> Iterator[Word]:
        """Accepted strings of length at most ``d``, depth first."""
        self._check(d)
        if not self.member(()):
            return
        stack = [()]
        while stack:
            s = stack.pop()
            yield s
            if len(s) < d:
                stack += reversed(self.children(s))


# --- constructors -----------------------------------------------------------


@dataclass(frozen=True)
class ClauseTheory:
    clauses: tuple[Sentence, ...]

    @property
    def num_atoms(self) -> int:
        return max((max(atoms(c)) + 1 for c in self.clauses if atoms(c)), default=0)


def truth(s: Sentence, word: Word) -> bool:
    """Boolean value of ``s`` with p_i read as ``word[i] == 1``."""
    if isinstance(s, Atom):
        return word[s.index] == 1
    if isinstance(s, Top):
        return True
    if isinstance(s, Bot):
        return False
    if isinstance(s, Not):
        return not truth(s.arg, word)
    a = truth(s.left, word)
    if isinstance(s, Or):
        return a or truth(s.right, word)
    if isinstance(s, And):
        return a and truth(s.right, word)
    return (not a) or truth(s.right, word)


def class_from_clauses(theory, depth: int) -> ClosedClass:
    """Binary class of assignments satisfying every clause that only
    mentions positions inside the string."""
    clauses = tuple(theory.clauses if isinstance(theory, ClauseTheory) else theory)
    # a clause becomes checkable once every atom it mentions is fixed
    reach = [max(atoms(c), default=-1) + 1 for c in clauses]

    def member(w: Word) -> bool:
        n = len(w)
        return all(truth(c, w) for c, r in zip(clauses, reach) if r <= n)

    return ClosedClass(depth, member, (2,), "clauses")


def full_class(depth: int, branching: Sequence[int] = (2,)) -> ClosedClass:
    return ClosedClass(depth, lambda w: True, tuple(branching), "full")


def sep_class(A: Iterable[int], B: Iterable[int], depth: int) -> ClosedClass:
    """Characteristic sequences of sets containing A and avoiding B."""
    A, B = frozenset(A), frozenset(B)
    if A & B:
        raise NotDisjoint(f"A and B share {sorted(A & B)}")
    if A | B and max(A | B) >= depth:
        raise DepthExceeded(f"constraint at position {max(A | B)} is beyond depth {depth}")

    def member(w: Word) -> bool:
        return all(w[i] == 1 for i in A if i < len(w)) and all(w[i] == 0 for i in B if i < len(w))

    return ClosedClass(depth, member, (2,), "separating")


def sep_theory(A: Iterable[int], B: Iterable[int]) -> ClauseTheory:
    return ClauseTheory(tuple([Atom(a) for a in sorted(A)] + [Not(Atom(b)) for b in sorted(B)]))


def table_class(words: Iterable[Sequence[int]], depth: int, branching: Sequence[int] = (2,)) -> ClosedClass:
    """Prefix closure of the listed strings."""
    branching = tuple(branching)
    closure: set[Word] = set()
    for w in words:
        w = tuple(w)
        if len(w) > depth:
            raise DepthExceeded(f"string of length {len(w)} is beyond depth {depth}")
        for i, x in enumerate(w):
            bound = branching[i] if i < len(branching) else branching[-1]
            if not 0 <= x < bound:
                raise FormatError(f"symbol {x} at position {i} exceeds branching {bound}")
        closure.update(w[:k] for k in range(len(w) + 1))
    frozen = frozenset(closure)
    return ClosedClass(depth, frozen.__contains__, branching, "table")


# --- queries ----------------------------------------------------------------


def nonempty_at_depth(P: ClosedClass, d: int) -> bool:
    P._check(d)
    return any(len(s) == d for s in P.walk(d))


def prune(P: ClosedClass, lookahead: int) -> ClosedClass:
    """Keep a string only if it extends to an accepted string of length
    ``min(len + lookahead, depth_cap)``."""
    if lookahead < 0:
        raise ValueError("lookahead must be non-negative")

    @lru_cache(maxsize=None)
    def extends(s: Word, target: int) -> bool:
        if len(s) == target:
            return True
        return any(extends(c, target) for c in P.children(s))

    def member(w: Word) -> bool:
        return P.member(w) and extends(w, min(len(w) + lookahead, P.depth_cap))

    return ClosedClass(P.depth_cap, member, P.branching, f"pruned({P.label},{lookahead})")


def _lookahead(P: ClosedClass, d: int, lookahead: Optional[int]) -> int:
    P._check(d)
    L = P.depth_cap - d if lookahead is None else lookahead
    if d + L > P.depth_cap:
        raise DepthExceeded(f"depth {d} plus lookahead {L} exceeds the cap {P.depth_cap}")
    return L


def leftmost_branch(P: ClosedClass, d: int, lookahead: Optional[int] = None) -> Word:
    """Lexicographically least depth-``d`` string of the pruned tree.

    The default lookahead reaches the depth cap.  Raises EmptyClass when
    the pruned tree has no string of length ``d``.
    """
    Q = prune(P, _lookahead(P, d, lookahead))
    if not Q.member(()):
        raise EmptyClass("the pruned tree has no root")

    def dfs(s: Word) -> Optional[Word]:
        if len(s) == d:
            return s
        for c in Q.children(s):
            hit = dfs(c)
            if hit is not None:
                return hit
        return None

    hit = dfs(())
    if hit is None:
        raise EmptyClass(f"the pruned tree has no string of length {d}")
    return hit


def isolated_at_depth(P: ClosedClass, d: int, lookahead: Optional[int] = None) -> list[Word]:
    """Depth-``d`` strings of the pruned tree that are the only survivor
    above one of their proper prefixes.

    Survivor counts only shrink as the prefix grows, so it is enough to
    look at the parent.
    """
    Q = prune(P, _lookahead(P, d, lookahead))
    if d == 0:
        return []
    out = []
    for parent in Q.level(d - 1):
        kids = Q.children(parent)
        if len(kids) == 1:
            out.append(kids[0])
    return out


@dataclass(frozen=True)
class LevelProfile:
    counts: tuple[int, ...]
    estimates: tuple[Fraction, ...]

    def csv(self) -> str:
        rows = ["depth,count,estimate"]
        rows += [f"{d},{c},{format(float(e), '.10g')}" for d, (c, e) in enumerate(zip(self.counts, self.estimates))]
        return "\n".join(rows) + "\n"


def level_profile(P: ClosedClass, d_max: int) -> LevelProfile:
    """Accepted-string counts for depths ``0..d_max`` and the measure of the
    corresponding clopen approximation."""
    P._check(d_max)
    counts = []
    layer = [()] if P.member(()) else []
    volume = 1
    estimates = []
    for d in range(d_max + 1):
        if d:
            layer = [c for s in layer for c in P.children(s)]
            volume *= P.bound(d - 1)
        counts.append(len(layer))
        estimates.append(Fraction(len(layer), volume))
    return LevelProfile(tuple(counts), tuple(estimates))


# --- combinators ------------------------------------------------------------


def class_meet(P: ClosedClass, Q: ClosedClass) -> ClosedClass:
    """(0)^P together with (1)^Q."""
    cap = 1 + min(P.depth_cap, Q.depth_cap)
    if any(P.bound(m) != Q.bound(m) for m in range(cap)):
        raise BranchingMismatch("meet needs both classes to share their branching bounds")

    def member(w: Word) -> bool:
        if not w:
            return P.member(()) or Q.member(())
        return (P if w[0] == 0 else Q).member(w[1:])

    return ClosedClass(cap, member, (2,) + tuple(P.bound(m) for m in range(max(len(P.branching), 1))),
                       f"meet({P.label},{Q.label})")


def class_join(P: ClosedClass, Q: ClosedClass) -> ClosedClass:
    """Interleaving: even positions read a string of P, odd positions one of Q.

    A string of odd length is accepted when both projections are, so the
    extra even-position symbol must already extend a P-string.
    """
    cap = min(2 * P.depth_cap, 2 * Q.depth_cap + 1)
    branching = tuple(P.bound(m // 2) if m % 2 == 0 else Q.bound(m // 2) for m in range(cap + 1))

    def member(w: Word) -> bool:
        return P.member(w[0::2]) and Q.member(w[1::2])

    return ClosedClass(cap, member, branching, f"join({P.label},{Q.label})")


# --- class files ------------------------------------------------------------


def _parse_word(line: str, lineno: int) -> Word:
    toks = line.replace(",", " ").split()
    if toks in (["()"], ["-"]):
        return ()
    if len(toks) == 1:
        toks = list(toks[0])
    try:
        return tuple(int(t) for t in toks)
    except ValueError:
        raise FormatError(f"line {lineno}: bad string {line!r}") from None


def parse_class(text: str) -> ClosedClass:
    """Read ``branching``/``depth`` headers followed by ``clauses:`` or ``table:``."""
    branching: tuple[int, ...] = (2,)
    depth = None
    mode = None
    body: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if mode is not None:
            body.append((lineno, line))
            continue
        head, *rest = line.split()
        if head == "branching":
            try:
                branching = tuple(int(x) for x in rest)
            except ValueError:
                raise FormatError(f"line {lineno}: bad branching") from None
            if not branching or min(branching) < 1:
                raise FormatError(f"line {lineno}: branching needs positive integers")
        elif head == "depth":
            if len(rest) != 1 or not rest[0].isdigit():
                raise FormatError(f"line {lineno}: expected 'depth D'")
            depth = int(rest[0])
        elif line in ("clauses:", "table:"):
            mode = line[:-1]
        else:
            raise FormatError(f"line {lineno}: unknown directive {head!r}")
    if depth is None:
        raise FormatError("missing 'depth D' line")
    if mode is None:
        raise FormatError("missing 'clauses:' or 'table:' section")
    if mode == "clauses":
        if set(branching) != {2}:
            raise FormatError("clause classes are binary; use 'branching 2'")
        return class_from_clauses(ClauseTheory(tuple(parse(line) for _, line in body)), depth)
    return table_class([_parse_word(line, ln) for ln, line in body], depth, branching)


def read_class(path) -> ClosedClass:
    return parse_class(Path(path).read_text())


def format_word(w: Word) -> str:
    return " ".join(map(str, w)) if w else "()"
