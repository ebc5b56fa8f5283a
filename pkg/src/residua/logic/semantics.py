"""Lattice-valued semantics of propositional sentences."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product as cartesian
from typing import Mapping, Optional, Union

import numpy as np

from residua.errors import MissingAtom, NotImplicative
from residua.lattice.core import FinLattice, chain
from residua.logic.syntax import And, Atom, Bot, Not, Or, Sentence, Top, atoms


@dataclass(frozen=True)
class Valuation:
    lattice: FinLattice
    assignment: Mapping[int, int] = field(default_factory=dict)

    def __getitem__(self, atom: int) -> int:
        try:
            return self.assignment[atom]
        except KeyError:
            raise MissingAtom(f"valuation has no value for p{atom}") from None

    def __hash__(self):
        return hash(tuple(sorted(self.assignment.items())))

    def describe(self, names: bool = False) -> str:
        """``p0=1,p1=0`` using element ids, or element names if asked."""
        label = self.lattice.poset.names if names else range(self.lattice.n)
        return ",".join(f"p{a}={label[e]}" for a, e in sorted(self.assignment.items()))


def _impl(L: FinLattice):
    table = L.implication
    if not table.total:
        raise NotImplicative("implication is not total in this lattice")
    return table.impl


def evaluate(v: Valuation, s: Sentence) -> int:
    L = v.lattice
    if isinstance(s, Atom):
        a = v[s.index]
        if not 0 <= a < L.n:
            raise MissingAtom(f"p{s.index} is assigned {a}, outside the lattice")
        return a
    if isinstance(s, Top):
        return L.top
    if isinstance(s, Bot):
        return L.bottom
    if isinstance(s, Not):
        return _impl(L)[evaluate(v, s.arg)][L.bottom]
    a, b = evaluate(v, s.left), evaluate(v, s.right)
    if isinstance(s, And):
        return L.meet[a][b]
    if isinstance(s, Or):
        return L.join[a][b]
    return _impl(L)[a][b]


# --- vectorised evaluation over every valuation at once -------------------


@dataclass(frozen=True)
class _Tables:
    meet: np.ndarray
    join: np.ndarray
    impl: np.ndarray
    neg: np.ndarray


@lru_cache(maxsize=512)
def _tables(L: FinLattice) -> _Tables:
    impl = np.array(_impl(L), dtype=np.int8)
    return _Tables(
        np.array(L.meet, dtype=np.int8),
        np.array(L.join, dtype=np.int8),
        impl,
        impl[:, L.bottom].copy(),
    )


def all_valuations(n: int, k: int) -> np.ndarray:
    """Rows of every assignment of ``k`` atoms into ``range(n)``, in
    lexicographic order (first atom most significant)."""
    if k == 0:
        return np.zeros((1, 0), dtype=np.int8)
    grid = np.indices((n,) * k, dtype=np.int8).reshape(k, -1).T
    return np.ascontiguousarray(grid)


def value_vector(L: FinLattice, s: Sentence, columns: Mapping[int, np.ndarray]) -> np.ndarray:
    """Value of ``s`` under a batch of valuations given column-wise."""
    T = _tables(L)
    size = len(next(iter(columns.values()))) if columns else 1
    memo: dict[Sentence, np.ndarray] = {}

    def go(t: Sentence) -> np.ndarray:
        if t in memo:
            return memo[t]
        if isinstance(t, Atom):
            if t.index not in columns:
                raise MissingAtom(f"no values supplied for p{t.index}")
            r = columns[t.index]
        elif isinstance(t, Top):
            r = np.full(size, L.top, dtype=np.int8)
        elif isinstance(t, Bot):
            r = np.full(size, L.bottom, dtype=np.int8)
        elif isinstance(t, Not):
            r = T.neg[go(t.arg)]
        else:
            a, b = go(t.left), go(t.right)
            tab = T.meet if isinstance(t, And) else T.join if isinstance(t, Or) else T.impl
            r = tab[a, b]
        memo[t] = r
        return r

    return go(s)


def counter_valuation(L: FinLattice, s: Sentence) -> Optional[Valuation]:
    """First valuation (lexicographic over the sorted atoms) giving ``s`` a
    value other than top, or None."""
    ats = sorted(atoms(s))
    grid = all_valuations(L.n, len(ats))
    vals = value_vector(L, s, {a: grid[:, i] for i, a in enumerate(ats)})
    bad = np.flatnonzero(vals != L.top)
    if len(bad) == 0:
        return None
    row = grid[bad[0]]
    return Valuation(L, {a: int(row[i]) for i, a in enumerate(ats)})


def valid_in(L: FinLattice, s: Sentence) -> Union[bool, Valuation]:
    """``True`` when every valuation gives top, otherwise the first
    counter-valuation.  Compare with ``is True``."""
    cv = counter_valuation(L, s)
    return True if cv is None else cv


def valid_in_slow(L: FinLattice, s: Sentence) -> Union[bool, Valuation]:
    """Element-by-element version of :func:`valid_in`; kept as a cross-check."""
    ats = sorted(atoms(s))
    for combo in cartesian(range(L.n), repeat=len(ats)):
        v = Valuation(L, dict(zip(ats, combo)))
        if evaluate(v, s) != L.top:
            return v
    return True


def classical_tautology(s: Sentence) -> bool:
    return valid_in(chain(2), s) is True
