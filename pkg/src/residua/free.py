"""The free dual-implicative lattice Free(P) over a finite poset P.

An element is a finite non-empty family S of finite non-empty subsets of P;
intuitively S stands for the join over A in S of the meet of A.  Families
are compared with

    {A} <= {B}  iff  every b in B lies above some a in A
    S <= T      iff  every A in S has some B in T with {A} <= {B}

and equality of elements is mutual ``free_leq``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Union

from residua.errors import (
    EmptyPoset,
    FormatError,
    NotDualImplicative,
    PosetMismatch,
    SizeLimit,
)
from residua.lattice.core import (
    FinLattice,
    FinPoset,
    build_poset,
    chain_poset,
    interval,
)

Block = frozenset  # a finite non-empty subset of P, as element ids


@dataclass(frozen=True)
class AntichainFamily:
    base: FinPoset
    sets: frozenset  # frozenset of Block

    def __post_init__(self):
        if not self.sets:
            raise ValueError("a family needs at least one set")
        for A in self.sets:
            if not A:
                raise ValueError("member sets must be non-empty")
            if any(not 0 <= a < self.base.n for a in A):
                raise ValueError(f"set {set(A)} has ids outside the base poset")

    @classmethod
    def of(cls, base: FinPoset, sets: Iterable[Iterable]) -> "AntichainFamily":
        """Build from element ids or element names."""
        blocks = []
        for A in sets:
            blocks.append(frozenset(base.index(a) if isinstance(a, str) else a for a in A))
        return cls(base, frozenset(blocks))

    @property
    def is_normal(self) -> bool:
        return normalize(self).sets == self.sets

    def sorted_sets(self) -> list[tuple[int, ...]]:
        return sorted((tuple(sorted(A)) for A in self.sets), key=lambda t: (len(t), t))

    def __str__(self):
        names = self.base.names
        return " ".join("{" + " ".join(names[a] for a in A) + "}" for A in self.sorted_sets())

    def __repr__(self):
        return f"AntichainFamily({self})"


def block_leq(P: FinPoset, A: Block, B: Block) -> bool:
    return all(any(P.leq[a][b] for a in A) for b in B)


def _same_base(S: AntichainFamily, T: AntichainFamily) -> None:
    if S.base is not T.base and S.base != T.base:
        raise PosetMismatch("families live over different posets")


def _block_below_family(P: FinPoset, A: Block, T: Iterable[Block]) -> bool:
    return any(block_leq(P, A, B) for B in T)


def free_leq(S: AntichainFamily, T: AntichainFamily) -> bool:
    _same_base(S, T)
    return all(_block_below_family(S.base, A, T.sets) for A in S.sets)


def free_equiv(S: AntichainFamily, T: AntichainFamily) -> bool:
    return free_leq(S, T) and free_leq(T, S)


def normalize(S: AntichainFamily) -> AntichainFamily:
    P = S.base
    blocks = {P.minimal(A) for A in S.sets}
    kept = frozenset(
        B for B in blocks if not any(A != B and block_leq(P, B, A) for A in blocks)
    )
    return AntichainFamily(P, kept)


def free_bounds(P: FinPoset) -> tuple[AntichainFamily, AntichainFamily]:
    if P.n == 0:
        raise EmptyPoset("Free(P) needs a non-empty poset")
    zero = AntichainFamily(P, frozenset([frozenset(range(P.n))]))
    one = AntichainFamily(P, frozenset(frozenset([a]) for a in range(P.n)))
    return normalize(zero), normalize(one)


def free_zero(P: FinPoset) -> AntichainFamily:
    return free_bounds(P)[0]


def free_one(P: FinPoset) -> AntichainFamily:
    return free_bounds(P)[1]


def free_join(S: AntichainFamily, T: AntichainFamily) -> AntichainFamily:
    _same_base(S, T)
    return normalize(AntichainFamily(S.base, S.sets | T.sets))


def free_meet(S: AntichainFamily, T: AntichainFamily) -> AntichainFamily:
    _same_base(S, T)
    return normalize(AntichainFamily(S.base, frozenset(A | B for A in S.sets for B in T.sets)))


def free_dual_implies(S: AntichainFamily, T: AntichainFamily) -> AntichainFamily:
    """S =>̌ T: the members of T not below S; the least element when none remain."""
    _same_base(S, T)
    picked = frozenset(B for B in T.sets if not _block_below_family(S.base, B, S.sets))
    if not picked:
        return free_zero(S.base)
    return normalize(AntichainFamily(S.base, picked))


def all_families(P: FinPoset, normalized: bool = True) -> list[AntichainFamily]:
    """Every family over P (or one normal form per equivalence class)."""
    blocks = [frozenset(c) for r in range(1, P.n + 1) for c in combinations(range(P.n), r)]
    out = []
    seen = set()
    for r in range(1, len(blocks) + 1):
        for fam in combinations(blocks, r):
            S = AntichainFamily(P, frozenset(fam))
            if normalized:
                S = normalize(S)
                if S.sets in seen:
                    continue
                seen.add(S.sets)
            out.append(S)
    return out


# -- product embedding ------------------------------------------------------


def disjoint_union(Q: FinPoset, R: FinPoset) -> FinPoset:
    """({0} x Q) u ({1} x R) with no order between the halves.

    (0, q) gets id q and (1, r) gets id len(Q) + r.
    """
    k = Q.n
    covers = Q.covers() + [(a + k, b + k) for a, b in R.covers()]
    names = [f"0.{x}" for x in Q.names] + [f"1.{x}" for x in R.names]
    return build_poset(Q.n + R.n, covers, names)


def product_embed(S: AntichainFamily, U: AntichainFamily, target: Optional[FinPoset] = None) -> AntichainFamily:
    """Image of the pair (S, U) in Free(Q + R): each A in S becomes
    ({0} x A) u ({1} x R) and each C in U becomes ({0} x Q) u ({1} x C)."""
    Q, R = S.base, U.base
    P = target if target is not None else disjoint_union(Q, R)
    k = Q.n
    all_r = frozenset(range(k, k + R.n))
    all_q = frozenset(range(k))
    sets = {frozenset(A) | all_r for A in S.sets}
    sets |= {all_q | frozenset(c + k for c in C) for C in U.sets}
    return normalize(AntichainFamily(P, frozenset(sets)))


# -- Free(P) with adjoined bounds -------------------------------------------


class Marker(enum.Enum):
    ZERO_STAR = "0*"
    ONE_STAR = "1*"

    def __str__(self):
        return self.value


ZERO_STAR = Marker.ZERO_STAR
ONE_STAR = Marker.ONE_STAR
ExtElement = Union[AntichainFamily, Marker]


def ext_leq(x: ExtElement, y: ExtElement) -> bool:
    if x is ZERO_STAR or y is ONE_STAR:
        return True
    if x is ONE_STAR or y is ZERO_STAR:
        return False
    return free_leq(x, y)


def ext_equiv(x: ExtElement, y: ExtElement) -> bool:
    return ext_leq(x, y) and ext_leq(y, x)


def ext_join(x: ExtElement, y: ExtElement) -> ExtElement:
    if x is ONE_STAR or y is ONE_STAR:
        return ONE_STAR
    if x is ZERO_STAR:
        return y
    if y is ZERO_STAR:
        return x
    return free_join(x, y)


def ext_meet(x: ExtElement, y: ExtElement) -> ExtElement:
    if x is ZERO_STAR or y is ZERO_STAR:
        return ZERO_STAR
    if x is ONE_STAR:
        return y
    if y is ONE_STAR:
        return x
    return free_meet(x, y)


def ext_dual_implies(x: ExtElement, y: ExtElement) -> ExtElement:
    """Least z with y <= x v z in Free(P) with 0* and 1* adjoined."""
    if ext_leq(y, x):
        return ZERO_STAR
    if y is ONE_STAR:
        return ONE_STAR
    if x is ZERO_STAR:
        return y
    return free_dual_implies(x, y)


# -- embedding finite dual-implicative lattices -----------------------------


@dataclass(frozen=True)
class EmbeddingWitness:
    source: FinLattice
    target_poset: FinPoset
    image: tuple  # image[a] is an AntichainFamily or Marker
    extended: bool  # True when the target is Free(P) with 0* and 1* adjoined

    def target_bounds(self) -> tuple[ExtElement, ExtElement]:
        if self.extended:
            return ZERO_STAR, ONE_STAR
        return free_bounds(self.target_poset)


def _with_new_bottom(Q: FinPoset) -> tuple[FinPoset, int]:
    k = Q.n
    covers = Q.covers() + [(k, a) for a in range(k) if not any(Q.lt(b, a) for b in range(k))]
    return build_poset(k + 1, covers, list(Q.names) + [f"z{k}"]), k


def _rebase(S: AntichainFamily, P: FinPoset) -> AntichainFamily:
    return AntichainFamily(P, S.sets)


def _least_disjoint_pair(L: FinLattice) -> Optional[tuple[int, int]]:
    for d in L.elements():
        for e in L.elements():
            if d < e and d != L.bottom and e != L.bottom and L.meet[d][e] == L.bottom:
                return d, e
    return None


def _embed(L: FinLattice) -> tuple[FinPoset, list[AntichainFamily]]:
    if L.n == 1:
        P = build_poset(1, [], ["a"])
        return P, [free_zero(P)]
    if L.n == 2:
        P = chain_poset(2)
        zero, one = free_bounds(P)
        return P, [zero if a == L.bottom else one for a in L.elements()]
    pair = _least_disjoint_pair(L)
    if pair is None:
        # bottom is meet-irreducible: L is an interval above the unique atom with 0 adjoined
        atom = L.meet_all(a for a in L.elements() if a != L.bottom)
        sub = interval(L, atom, L.top)
        Q, img = _embed(sub.lattice)
        P, new_bottom = _with_new_bottom(Q)
        out = []
        for a in L.elements():
            if a == L.bottom:
                out.append(AntichainFamily(P, frozenset([frozenset([new_bottom])])))
            else:
                out.append(_rebase(img[sub.index(a)], P))
        return P, out
    d, e = pair
    left, right = interval(L, d, L.top), interval(L, e, L.top)
    Q, img_q = _embed(left.lattice)
    R, img_r = _embed(right.lattice)
    P = disjoint_union(Q, R)
    out = []
    for a in L.elements():
        S = img_q[left.index(L.join[a][d])]
        U = img_r[right.index(L.join[a][e])]
        out.append(product_embed(S, U, P))
    return P, out


def embed_finite_lattice(L: FinLattice, size_cap: int = 8) -> EmbeddingWitness:
    if L.n > size_cap:
        raise SizeLimit(f"lattice has {L.n} elements, cap is {size_cap}")
    flags = L.properties
    if not (flags.distributive and L.dual_impl.total):
        raise NotDualImplicative("embedding needs a distributive dual-implicative lattice")
    if flags.zero_irreducible and flags.one_irreducible and L.n >= 4:
        lo = L.meet_all(a for a in L.elements() if a != L.bottom)
        hi = L.join_all(a for a in L.elements() if a != L.top)
        core = interval(L, lo, hi)
        P, img = _embed(core.lattice)
        image = []
        for a in L.elements():
            if a == L.bottom:
                image.append(ZERO_STAR)
            elif a == L.top:
                image.append(ONE_STAR)
            else:
                image.append(img[core.index(a)])
        return EmbeddingWitness(L, P, tuple(image), True)
    P, img = _embed(L)
    return EmbeddingWitness(L, P, tuple(img), False)


@dataclass(frozen=True)
class WitnessReport:
    order: bool
    join: bool
    meet: bool
    dual_implication: bool
    bottom: bool
    top: bool
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_witness(w: EmbeddingWitness) -> WitnessReport:
    """Check every pair of source elements against the target operations."""
    L, img = w.source, w.image
    if w.extended:
        leq, join, meet, dimpl, eq = ext_leq, ext_join, ext_meet, ext_dual_implies, ext_equiv
    else:
        leq, join, meet, dimpl, eq = free_leq, free_join, free_meet, free_dual_implies, free_equiv
    dtab = L.dual_impl.impl
    fails: list[str] = []
    checks = {"order": True, "join": True, "meet": True, "dual_implication": True}
    for a in L.elements():
        for b in L.elements():
            if L.leq(a, b) != leq(img[a], img[b]):
                checks["order"] = False
                fails.append(f"order {a},{b}")
            if not eq(img[L.join[a][b]], join(img[a], img[b])):
                checks["join"] = False
                fails.append(f"join {a},{b}")
            if not eq(img[L.meet[a][b]], meet(img[a], img[b])):
                checks["meet"] = False
                fails.append(f"meet {a},{b}")
            if not eq(img[dtab[a][b]], dimpl(img[a], img[b])):
                checks["dual_implication"] = False
                fails.append(f"dual_implication {a},{b}")
    zero, one = w.target_bounds()
    bottom_ok = eq(img[L.bottom], zero)
    top_ok = eq(img[L.top], one)
    if not bottom_ok:
        fails.append("bottom")
    if not top_ok:
        fails.append("top")
    return WitnessReport(
        checks["order"], checks["join"], checks["meet"], checks["dual_implication"],
        bottom_ok, top_ok, tuple(fails),
    )


# -- text format --------------------------------------------------------------


def parse_family(P: FinPoset, text: str) -> AntichainFamily:
    """Parse ``{a b} {a}``: brace groups of whitespace-separated element names."""
    sets = []
    rest = text.strip()
    while rest:
        if not rest.startswith("{"):
            raise FormatError(f"expected '{{' in family {text!r}")
        end = rest.find("}")
        if end < 0:
            raise FormatError(f"unclosed brace in family {text!r}")
        names = rest[1:end].split()
        if not names:
            raise FormatError("empty set in family")
        try:
            sets.append(frozenset(P.index(x) for x in names))
        except Exception as exc:
            raise FormatError(str(exc)) from None
        rest = rest[end + 1:].strip()
    if not sets:
        raise FormatError("empty family")
    return AntichainFamily(P, frozenset(sets))


def format_family(S) -> str:
    return str(S)
