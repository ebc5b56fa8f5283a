from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product as cartesian
from typing import Iterable, Optional, Sequence

from residua.errors import BadId, CycleDetected, EmptyInterval, NotALattice, Unbounded

Table = tuple[tuple[int, ...], ...]
PartialTable = tuple[tuple[Optional[int], ...], ...]


@dataclass(frozen=True)
class FinPoset:
    """Finite partial order on the ids ``0..n-1``.

    ``leq[a][b]`` is True iff a <= b.  ``names`` are display labels only and
    take no part in the order.
    """

    n: int
    leq: tuple[tuple[bool, ...], ...]
    names: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if len(self.leq) != self.n or any(len(row) != self.n for row in self.leq):
            raise BadId(f"order matrix is not {self.n}x{self.n}")
        if not self.names:
            object.__setattr__(self, "names", tuple(str(i) for i in range(self.n)))
        elif len(self.names) != self.n:
            raise BadId("names do not match element count")
        for a in range(self.n):
            if not self.leq[a][a]:
                raise BadId(f"order is not reflexive at {a}")
            for b in range(self.n):
                if a != b and self.leq[a][b] and self.leq[b][a]:
                    raise CycleDetected(f"{a} <= {b} <= {a}")
                if self.leq[a][b]:
                    for c in range(self.n):
                        if self.leq[b][c] and not self.leq[a][c]:
                            raise BadId(f"order is not transitive at {a},{b},{c}")

    def lt(self, a: int, b: int) -> bool:
        return a != b and self.leq[a][b]

    def covers(self) -> list[tuple[int, int]]:
        """Hasse edges (a, b): a < b with nothing strictly between."""
        out = []
        for a in range(self.n):
            for b in range(self.n):
                if self.lt(a, b) and not any(
                    self.lt(a, c) and self.lt(c, b) for c in range(self.n)
                ):
                    out.append((a, b))
        return out

    def minimal(self, elems: Iterable[int]) -> frozenset[int]:
        elems = set(elems)
        return frozenset(a for a in elems if not any(self.lt(b, a) for b in elems))

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise BadId(f"unknown element {name!r}") from None


def _closure(n: int, pairs: Iterable[tuple[int, int]]) -> list[list[bool]]:
    rel = [[i == j for j in range(n)] for i in range(n)]
    for a, b in pairs:
        rel[a][b] = True
    for k in range(n):
        for i in range(n):
            if rel[i][k]:
                row_k = rel[k]
                row_i = rel[i]
                for j in range(n):
                    if row_k[j]:
                        row_i[j] = True
    return rel


def build_poset(n: int, covers: Iterable[tuple[int, int]], names: Sequence[str] = ()) -> FinPoset:
    covers = list(covers)
    if n < 0:
        raise BadId("negative element count")
    for a, b in covers:
        if not (0 <= a < n and 0 <= b < n):
            raise BadId(f"cover ({a}, {b}) outside 0..{n - 1}")
    rel = _closure(n, covers)
    for a in range(n):
        for b in range(a + 1, n):
            if rel[a][b] and rel[b][a]:
                raise CycleDetected(f"covers induce {a} <= {b} <= {a}")
    return FinPoset(n, tuple(tuple(r) for r in rel), tuple(names))


def chain_poset(n: int) -> FinPoset:
    return build_poset(n, [(i, i + 1) for i in range(n - 1)])


def antichain_poset(n: int, names: Sequence[str] = ()) -> FinPoset:
    return build_poset(n, [], names)


@dataclass(frozen=True)
class ImplTable:
    """``impl[a][b]`` is the element a->b, or None where no maximum exists."""

    impl: PartialTable
    total: bool

    def __call__(self, a: int, b: int) -> Optional[int]:
        return self.impl[a][b]


@dataclass(frozen=True)
class PropertyFlags:
    distributive: bool
    bounded: bool
    implicative: bool
    dual_implicative: bool
    boolean: bool
    zero_irreducible: bool
    one_irreducible: bool


@dataclass(frozen=True)
class PrimeFilter:
    members: frozenset[int]

    def __contains__(self, a: int) -> bool:
        return a in self.members


@dataclass(frozen=True)
class FinLattice:
    poset: FinPoset
    meet: Table
    join: Table
    bottom: int
    top: int

    @property
    def n(self) -> int:
        return self.poset.n

    def elements(self) -> range:
        return range(self.poset.n)

    def leq(self, a: int, b: int) -> bool:
        return self.poset.leq[a][b]

    def meet_all(self, elems: Iterable[int]) -> int:
        out = self.top
        for a in elems:
            out = self.meet[out][a]
        return out

    def join_all(self, elems: Iterable[int]) -> int:
        out = self.bottom
        for a in elems:
            out = self.join[out][a]
        return out

    # cached_property writes to __dict__ directly, so it works on frozen instances
    @cached_property
    def properties(self) -> PropertyFlags:
        return check_properties(self)

    @cached_property
    def implication(self) -> ImplTable:
        return heyting_implication(self)

    @cached_property
    def dual_impl(self) -> ImplTable:
        return dual_implication(self)

    def neg(self, a: int) -> Optional[int]:
        return self.implication.impl[a][self.bottom]

    def __repr__(self):
        return f"FinLattice(n={self.n}, covers={self.poset.covers()})"


def lattice_from_poset(p: FinPoset) -> FinLattice:
    n = p.n
    if n == 0:
        raise Unbounded("empty poset has no bounds")
    leq = p.leq
    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            lower = [x for x in range(n) if leq[x][a] and leq[x][b]]
            glb = [g for g in lower if all(leq[x][g] for x in lower)]
            upper = [x for x in range(n) if leq[a][x] and leq[b][x]]
            lub = [g for g in upper if all(leq[g][x] for x in upper)]
            if len(glb) != 1:
                raise NotALattice(f"{p.names[a]} and {p.names[b]} have no greatest lower bound")
            if len(lub) != 1:
                raise NotALattice(f"{p.names[a]} and {p.names[b]} have no least upper bound")
            meet[a][b] = meet[b][a] = glb[0]
            join[a][b] = join[b][a] = lub[0]
    bottoms = [x for x in range(n) if all(leq[x][y] for y in range(n))]
    tops = [x for x in range(n) if all(leq[y][x] for y in range(n))]
    if not bottoms or not tops:
        raise Unbounded("poset lacks a least or greatest element")
    return FinLattice(p, tuple(map(tuple, meet)), tuple(map(tuple, join)), bottoms[0], tops[0])


def lattice_from_covers(n: int, covers: Iterable[tuple[int, int]], names: Sequence[str] = ()) -> FinLattice:
    return lattice_from_poset(build_poset(n, covers, names))


def chain(n: int) -> FinLattice:
    return lattice_from_poset(chain_poset(n))


def boolean_lattice(k: int) -> FinLattice:
    """Subsets of a k-set ordered by inclusion; element id = bitmask."""
    n = 1 << k
    covers = [(m, m | (1 << i)) for m in range(n) for i in range(k) if not m & (1 << i)]
    return lattice_from_covers(n, covers)


def _is_distributive(L: FinLattice) -> bool:
    m, j = L.meet, L.join
    for a, b, c in cartesian(L.elements(), repeat=3):
        if m[a][j[b][c]] != j[m[a][b]][m[a][c]]:
            return False
        if j[a][m[b][c]] != m[j[a][b]][j[a][c]]:
            return False
    return True


def check_properties(L: FinLattice) -> PropertyFlags:
    distributive = _is_distributive(L)
    implicative = distributive and heyting_implication(L).total
    dual_implicative = distributive and dual_implication(L).total
    complemented = all(
        any(L.meet[a][b] == L.bottom and L.join[a][b] == L.top for b in L.elements())
        for a in L.elements()
    )
    boolean = distributive and complemented
    pairs = list(cartesian(L.elements(), repeat=2))
    zero_irr = all(
        a == L.bottom or b == L.bottom for a, b in pairs if L.meet[a][b] == L.bottom
    )
    one_irr = all(a == L.top or b == L.top for a, b in pairs if L.join[a][b] == L.top)
    return PropertyFlags(distributive, True, implicative, dual_implicative, boolean, zero_irr, one_irr)


def heyting_implication(L: FinLattice) -> ImplTable:
    rows = []
    total = True
    for a in L.elements():
        row = []
        for b in L.elements():
            cands = [x for x in L.elements() if L.leq(L.meet[a][x], b)]
            best = [x for x in cands if all(L.leq(y, x) for y in cands)]
            row.append(best[0] if best else None)
            total = total and bool(best)
        rows.append(tuple(row))
    return ImplTable(tuple(rows), total)


def dual_implication(L: FinLattice) -> ImplTable:
    """a =>̌ b: the least x with b <= a v x, where it exists."""
    rows = []
    total = True
    for a in L.elements():
        row = []
        for b in L.elements():
            cands = [x for x in L.elements() if L.leq(b, L.join[a][x])]
            best = [x for x in cands if all(L.leq(x, y) for y in cands)]
            row.append(best[0] if best else None)
            total = total and bool(best)
        rows.append(tuple(row))
    return ImplTable(tuple(rows), total)


def dual_lattice(L: FinLattice) -> FinLattice:
    p = L.poset
    geq = tuple(tuple(p.leq[b][a] for b in range(p.n)) for a in range(p.n))
    return FinLattice(FinPoset(p.n, geq, p.names), L.join, L.meet, L.top, L.bottom)


def relabel(L: FinLattice, order: Sequence[int]) -> FinLattice:
    """New lattice whose element i is the old element ``order[i]``."""
    inv = {old: new for new, old in enumerate(order)}
    n = L.n
    leq = tuple(tuple(L.leq(order[i], order[j]) for j in range(n)) for i in range(n))
    meet = tuple(tuple(inv[L.meet[order[i]][order[j]]] for j in range(n)) for i in range(n))
    join = tuple(tuple(inv[L.join[order[i]][order[j]]] for j in range(n)) for i in range(n))
    names = tuple(L.poset.names[o] for o in order)
    return FinLattice(FinPoset(n, leq, names), meet, join, inv[L.bottom], inv[L.top])


@dataclass(frozen=True)
class Adjoined:
    """Result of adjoining new bounds; ``old_to_new[a]`` is the id of old element a."""

    lattice: FinLattice
    old_to_new: tuple[int, ...]
    new_bottom: Optional[int]
    new_top: Optional[int]


def adjoin(L: FinLattice, add_bottom: bool, add_top: bool) -> Adjoined:
    """Extend L by a new least element 0* and/or a new greatest element 1*.

    The new bottom (if any) gets id 0, old elements keep their relative order
    and the new top (if any) is last.
    """
    if not (add_bottom or add_top):
        raise ValueError("adjoin needs add_bottom or add_top")
    shift = 1 if add_bottom else 0
    n = L.n + shift + (1 if add_top else 0)
    new_bottom = 0 if add_bottom else None
    new_top = n - 1 if add_top else None
    old_to_new = tuple(a + shift for a in L.elements())
    covers = [(old_to_new[a], old_to_new[b]) for a, b in L.poset.covers()]
    if add_bottom:
        covers.append((new_bottom, old_to_new[L.bottom]))
    if add_top:
        covers.append((old_to_new[L.top], new_top))
    names = [""] * n
    for a in L.elements():
        names[old_to_new[a]] = L.poset.names[a]
    if add_bottom:
        names[new_bottom] = "0*"
    if add_top:
        names[new_top] = "1*"
    return Adjoined(lattice_from_covers(n, covers, names), old_to_new, new_bottom, new_top)


def adjoin_implication(L: FinLattice, add_bottom: bool, add_top: bool) -> ImplTable:
    """Implication of the extension read off case by case from L's own table.

    Where L's table has ``0* -> b`` ambiguous between the old and new top, the
    maximum of the candidates is taken, which is the top of the extension.
    """
    ext = adjoin(L, add_bottom, add_top)
    K = ext.lattice
    imp = L.implication
    new_of = ext.old_to_new
    old_of = {v: k for k, v in enumerate(new_of)}
    rows = []
    for a in K.elements():
        row = []
        for b in K.elements():
            if a == ext.new_bottom:
                row.append(K.top)
            elif a == ext.new_top:
                row.append(b)
            elif b == ext.new_bottom:
                row.append(ext.new_bottom)
            elif b == ext.new_top:
                row.append(ext.new_top)
            else:
                oa, ob = old_of[a], old_of[b]
                if L.leq(oa, ob):
                    row.append(K.top)
                else:
                    val = imp.impl[oa][ob]
                    row.append(None if val is None else new_of[val])
        rows.append(tuple(row))
    table = tuple(rows)
    return ImplTable(table, all(x is not None for r in table for x in r))


@dataclass(frozen=True)
class Interval:
    lattice: FinLattice
    elements: tuple[int, ...]  # new id i is old element elements[i]
    implication: Optional[ImplTable]
    dual_implication: Optional[ImplTable]

    def index(self, a: int) -> int:
        return self.elements.index(a)


def interval(L: FinLattice, d: int, e: int) -> Interval:
    if not L.leq(d, e):
        raise EmptyInterval(f"{d} is not below {e}")
    elems = tuple(a for a in L.elements() if L.leq(d, a) and L.leq(a, e))
    pos = {a: i for i, a in enumerate(elems)}
    k = len(elems)
    leq = tuple(tuple(L.leq(a, b) for b in elems) for a in elems)
    meet = tuple(tuple(pos[L.meet[a][b]] for b in elems) for a in elems)
    join = tuple(tuple(pos[L.join[a][b]] for b in elems) for a in elems)
    names = tuple(L.poset.names[a] for a in elems)
    sub = FinLattice(FinPoset(k, leq, names), meet, join, pos[d], pos[e])
    impl = dimpl = None
    if L.implication.total:
        table = tuple(
            tuple(pos[L.meet[L.implication.impl[a][b]][e]] for b in elems) for a in elems
        )
        impl = ImplTable(table, True)
    if L.dual_impl.total:
        table = tuple(
            tuple(pos[L.join[d][L.dual_impl.impl[a][b]]] for b in elems) for a in elems
        )
        dimpl = ImplTable(table, True)
    return Interval(sub, elems, impl, dimpl)


def product(L: FinLattice, K: FinLattice) -> FinLattice:
    """Component-wise product; the pair (a, b) has id ``a * K.n + b``."""
    m = K.n
    pairs = [(a, b) for a in L.elements() for b in K.elements()]
    n = len(pairs)
    leq = tuple(
        tuple(L.leq(a, c) and K.leq(b, d) for (c, d) in pairs) for (a, b) in pairs
    )
    meet = tuple(
        tuple(L.meet[a][c] * m + K.meet[b][d] for (c, d) in pairs) for (a, b) in pairs
    )
    join = tuple(
        tuple(L.join[a][c] * m + K.join[b][d] for (c, d) in pairs) for (a, b) in pairs
    )
    names = tuple(f"({L.poset.names[a]},{K.poset.names[b]})" for a, b in pairs)
    return FinLattice(
        FinPoset(n, leq, names), meet, join, L.bottom * m + K.bottom, L.top * m + K.top
    )


def is_prime_filter(L: FinLattice, members: frozenset[int]) -> bool:
    if not members or len(members) == L.n:
        return False
    for a in members:
        for b in L.elements():
            if L.leq(a, b) and b not in members:
                return False
        for b in members:
            if L.meet[a][b] not in members:
                return False
    for a in L.elements():
        for b in L.elements():
            if L.join[a][b] in members and a not in members and b not in members:
                return False
    return True


def prime_filters(L: FinLattice) -> list[PrimeFilter]:
    out = []
    for mask in range(1, 1 << L.n):
        members = frozenset(a for a in L.elements() if mask >> a & 1)
        if is_prime_filter(L, members):
            out.append(PrimeFilter(members))
    return out


def join_irreducibles(L: FinLattice) -> list[int]:
    """Non-bottom elements that are not the join of two strictly smaller ones."""
    out = []
    for a in L.elements():
        if a == L.bottom:
            continue
        below = [x for x in L.elements() if L.poset.lt(x, a)]
        if not any(L.join[x][y] == a for x in below for y in below):
            out.append(a)
    return out


def upset(L: FinLattice, a: int) -> frozenset[int]:
    return frozenset(b for b in L.elements() if L.leq(a, b))
