"""Finite implicative sublattice generated by a set of elements.

Elements of L are represented as sets of prime filters (bitmasks over the
prime-filter list).  Inside the finite Boolean algebra generated by the
images of ``A | {0, 1}``, the operator

    J(u) = join of all meets of subsets W of A | {0, 1} with meet(W) <= u

is an interior operator; its image is the sublattice and its relativised
implication ``J(-J(u) | J(v))`` is the implication of the sublattice.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from residua.errors import NotImplicative
from residua.lattice.core import FinLattice, FinPoset, ImplTable, prime_filters


@dataclass(frozen=True)
class GeneratedSublattice:
    lattice: FinLattice
    implication: ImplTable
    elements: tuple[int, ...]  # new id i is old element elements[i]
    old_to_new: dict

    def __hash__(self):
        return hash(self.elements)


def _meet_closure(L: FinLattice, gens: set[int]) -> set[int]:
    out = {L.top}
    gens = sorted(gens)
    for r in range(1, len(gens) + 1):
        for W in combinations(gens, r):
            out.add(L.meet_all(W))
    return out


def generated_sublattice(L: FinLattice, A) -> GeneratedSublattice:
    if not L.implication.total:
        raise NotImplicative("generated_sublattice needs an implicative lattice")
    gens = set(A) | {L.bottom, L.top}
    pf = prime_filters(L)
    full = (1 << len(pf)) - 1

    def eta(a: int) -> int:
        return sum(1 << i for i, f in enumerate(pf) if a in f.members)

    # atoms of the Boolean algebra generated by eta(gens)
    gen_masks = [eta(g) for g in sorted(gens)]
    classes: dict[tuple, int] = {}
    for i in range(len(pf)):
        sig = tuple(m >> i & 1 for m in gen_masks)
        classes[sig] = classes.get(sig, 0) | (1 << i)
    atoms = list(classes.values())

    meets = _meet_closure(L, gens)
    meet_masks = {m: eta(m) for m in meets}

    def J(u: int) -> int:
        return L.join_all(m for m, mm in meet_masks.items() if mm & ~u == 0)

    image = set()
    for r in range(len(atoms) + 1):
        for chosen in combinations(atoms, r):
            u = 0
            for c in chosen:
                u |= c
            image.add(J(u))

    elems = tuple(sorted(image))
    pos = {a: i for i, a in enumerate(elems)}
    k = len(elems)
    leq = tuple(tuple(L.leq(a, b) for b in elems) for a in elems)
    meet = tuple(tuple(pos[L.meet[a][b]] for b in elems) for a in elems)
    join = tuple(tuple(pos[L.join[a][b]] for b in elems) for a in elems)
    names = tuple(L.poset.names[a] for a in elems)
    sub = FinLattice(FinPoset(k, leq, names), meet, join, pos[L.bottom], pos[L.top])
    impl = tuple(
        tuple(pos[J((full & ~eta(a)) | eta(b))] for b in elems) for a in elems
    )
    return GeneratedSublattice(sub, ImplTable(impl, True), elems, dict(pos))
