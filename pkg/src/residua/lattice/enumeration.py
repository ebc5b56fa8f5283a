"""Enumeration of finite distributive (hence implicative) lattices.

Every finite distributive lattice is the lattice of downsets of its poset of
join-irreducibles, so running over all posets whose downset lattice is small
enough reaches every one of them.  Isomorphic copies are merged by a
canonical form computed over all relabellings.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import permutations
from typing import Iterator

import numpy as np

from residua.lattice.core import FinLattice, lattice_from_covers, relabel

_PERM_CACHE: dict[int, np.ndarray] = {}


def _perms(n: int) -> np.ndarray:
    if n not in _PERM_CACHE:
        _PERM_CACHE[n] = np.array(list(permutations(range(n))), dtype=np.int64).reshape(-1, n)
    return _PERM_CACHE[n]


def canonical_order(L: FinLattice) -> tuple[int, ...]:
    """Relabelling that yields the lexicographically least order matrix.

    The order matrix of a labelling has entry [i][j] = (j <= i), so in the
    canonical labelling the bottom comes first.
    """
    n = L.n
    if n <= 1:
        return tuple(range(n))
    below = np.array([[L.leq(j, i) for j in range(n)] for i in range(n)], dtype=np.uint8)
    P = _perms(n)
    mats = below[P[:, :, None], P[:, None, :]].reshape(len(P), n * n)
    alive = np.arange(len(P))
    for col in range(n * n):
        vals = mats[alive, col]
        alive = alive[vals == vals.min()]
        if len(alive) == 1:
            break
    return tuple(int(x) for x in P[alive[0]])


def canonical_form(L: FinLattice) -> tuple[int, ...]:
    order = canonical_order(L)
    return tuple(int(L.leq(order[j], order[i])) for i in range(L.n) for j in range(L.n))


def canonical(L: FinLattice) -> FinLattice:
    return relabel(L, canonical_order(L))


def _downsets(k: int, below: list[int]) -> list[int]:
    """Downsets of a poset on 0..k-1 given strict-below bitmasks."""
    return [m for m in range(1 << k) if all(not (m >> i & 1) or below[i] & ~m == 0 for i in range(k))]


def _posets_with_few_downsets(max_downsets: int) -> Iterator[tuple[int, list[int]]]:
    """Naturally labelled posets (i < j whenever i < j in the order) with at
    most ``max_downsets`` downsets, as (size, strict-below bitmasks)."""

    def grow(k: int, below: list[int]):
        yield k, below
        # each new element sits above a downset of the existing ones
        for d in _downsets(k, below):
            nb = below + [d]
            if len(_downsets(k + 1, nb)) <= max_downsets:
                yield from grow(k + 1, nb)

    yield from grow(0, [])


def downset_lattice(k: int, below: list[int]) -> FinLattice:
    ds = _downsets(k, below)
    idx = {m: i for i, m in enumerate(ds)}
    covers = []
    for m in ds:
        for i in range(k):
            if not m >> i & 1 and (m | 1 << i) in idx:
                covers.append((idx[m], idx[m | 1 << i]))
    return lattice_from_covers(len(ds), covers)


@lru_cache(maxsize=None)
def distributive_lattices(max_elems: int) -> tuple[FinLattice, ...]:
    """Every distributive lattice with at most ``max_elems`` elements, one per
    isomorphism class, sorted by size then canonical form."""
    if max_elems < 1:
        raise ValueError("max_elems must be at least 1")
    seen: dict[tuple, FinLattice] = {}
    for k, below in _posets_with_few_downsets(max_elems):
        L = downset_lattice(k, below)
        key = (L.n, canonical_form(L))
        if key not in seen:
            seen[key] = canonical(L)
    return tuple(seen[key] for key in sorted(seen))


def enumerate_heyting(
    max_elems: int, require_zero_irr: bool = False, require_one_irr: bool = False
) -> Iterator[FinLattice]:
    for L in distributive_lattices(max_elems):
        if (require_zero_irr or require_one_irr) and L.n == 1:
            continue
        flags = L.properties
        if require_zero_irr and not flags.zero_irreducible:
            continue
        if require_one_irr and not flags.one_irreducible:
            continue
        if not L.implication.total:  # pragma: no cover - distributive lattices always qualify
            raise AssertionError("finite distributive lattice without implication")
        yield L

