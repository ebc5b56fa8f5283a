import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from residua.errors import BadId, CycleDetected, EmptyInterval, FormatError, NotALattice, Unbounded
from residua.lattice import (
    adjoin,
    adjoin_implication,
    boolean_lattice,
    build_poset,
    chain,
    check_properties,
    dual_lattice,
    enumerate_heyting,
    format_lattice,
    format_poset,
    heyting_implication,
    interval,
    join_irreducibles,
    lattice_from_covers,
    parse_lattice,
    parse_poset,
    prime_filters,
    product,
)

DIAMOND = [(0, 1), (0, 2), (1, 3), (2, 3)]


def diamond():
    return lattice_from_covers(4, DIAMOND, ["0", "a", "b", "1"])


def m3():
    return lattice_from_covers(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])


ALL = list(enumerate_heyting(6))


def test_two_chain_order():
    p = build_poset(2, [(0, 1)])
    assert p.leq[0][1] and not p.leq[1][0]


def test_diamond_poset_covers_roundtrip():
    assert build_poset(4, DIAMOND).covers() == DIAMOND


def test_cycle_detected():
    with pytest.raises(CycleDetected):
        build_poset(2, [(0, 1), (1, 0)])


def test_cover_out_of_range():
    with pytest.raises(BadId):
        build_poset(2, [(0, 2)])


def test_diamond_meet_join():
    L = diamond()
    assert L.meet[1][2] == 0 and L.join[1][2] == 3


def test_chain_tables_are_min_max():
    L = chain(3)
    for a, b in itertools.product(range(3), repeat=2):
        assert L.meet[a][b] == min(a, b)
        assert L.join[a][b] == max(a, b)


def test_m3_is_a_lattice_but_not_distributive():
    L = m3()
    assert L.meet[1][2] == 0
    flags = check_properties(L)
    assert not flags.distributive and not flags.implicative


def test_not_a_lattice():
    # two incomparable maximal elements above a shared bottom
    with pytest.raises((NotALattice, Unbounded)):
        lattice_from_covers(3, [(0, 1), (0, 2)])
    # two upper bounds, no least one
    with pytest.raises(NotALattice):
        lattice_from_covers(6, [(0, 1), (0, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 5), (4, 5)])


def test_chain_flags():
    f = check_properties(chain(3))
    assert f.distributive and f.zero_irreducible and f.one_irreducible
    assert not f.boolean


def test_diamond_flags():
    f = check_properties(diamond())
    assert f.boolean and not f.zero_irreducible and not f.one_irreducible


def test_diamond_atom_implication():
    L = diamond()
    assert L.implication(1, 2) == 2


def test_dual_implication_examples():
    L = diamond()
    assert L.dual_impl(1, 2) == 2
    C = chain(3)
    assert C.dual_impl(1, 2) == 2
    assert C.dual_impl(2, 1) == 0
    for K in ALL:
        for a in K.elements():
            assert K.dual_impl(a, K.bottom) == K.bottom


def test_boolean_dual_implication_is_relative_complement():
    B = boolean_lattice(3)
    for a, b in itertools.product(B.elements(), repeat=2):
        assert B.dual_impl(a, b) == b & ~a


def test_dual_of_chain_reverses():
    D = dual_lattice(chain(3))
    assert D.bottom == 2 and D.top == 0
    assert D.leq(2, 1) and D.leq(1, 0)


def test_dual_swaps_implications():
    for L in ALL:
        D = dual_lattice(L)
        for a, b in itertools.product(L.elements(), repeat=2):
            assert D.implication(a, b) == L.dual_impl(a, b)


def test_adjoin_bottom_to_two_chain():
    ext = adjoin(chain(2), add_bottom=True, add_top=False)
    K = ext.lattice
    assert K.n == 3 and ext.new_bottom == 0 and ext.old_to_new == (1, 2)
    assert K.poset.names == ("0*", "0", "1")
    imp = adjoin_implication(chain(2), True, False)
    assert imp(ext.old_to_new[0], ext.new_bottom) == ext.new_bottom


def test_adjoin_both_to_singleton():
    ext = adjoin(chain(1), True, True)
    assert ext.lattice.n == 3
    assert check_properties(ext.lattice).distributive


def test_adjoin_needs_a_flag():
    with pytest.raises(ValueError):
        adjoin(chain(2), False, False)


@pytest.mark.parametrize("flags", [(True, False), (False, True), (True, True)])
def test_adjoin_implication_matches_brute_force(flags):
    for L in ALL:
        ext = adjoin(L, *flags)
        table = adjoin_implication(L, *flags)
        assert table.impl == heyting_implication(ext.lattice).impl


def test_bottom_adjoined_is_zero_irreducible():
    for L in ALL:
        K = adjoin(L, True, False).lattice
        assert K.properties.zero_irreducible
        K = adjoin(L, True, True).lattice
        assert K.properties.zero_irreducible and K.properties.one_irreducible


def test_interval_examples():
    L = diamond()
    iv = interval(L, 1, 3)
    assert iv.elements == (1, 3) and iv.lattice.n == 2
    whole = interval(L, L.bottom, L.top)
    assert whole.implication.impl == L.implication.impl
    C = chain(4)
    assert interval(C, 1, 2).lattice.n == 2


def test_interval_empty():
    with pytest.raises(EmptyInterval):
        interval(diamond(), 1, 2)


def test_interval_implications_are_the_interval_lattice_ones():
    for L in ALL:
        for d, e in itertools.product(L.elements(), repeat=2):
            if not L.leq(d, e):
                continue
            iv = interval(L, d, e)
            assert iv.implication.impl == heyting_implication(iv.lattice).impl
            assert iv.dual_implication.impl == iv.lattice.dual_impl.impl


def test_product_of_chains_is_diamond():
    P = product(chain(2), chain(2))
    assert P.n == 4
    assert sorted(P.poset.covers()) == sorted(DIAMOND)


def test_prime_filter_examples():
    assert [sorted(f.members) for f in prime_filters(chain(3))] == [[2], [1, 2]]
    assert sorted(sorted(f.members) for f in prime_filters(diamond())) == [[1, 3], [2, 3]]
    assert [sorted(f.members) for f in prime_filters(chain(2))] == [[1]]


def test_join_irreducibles_of_boolean():
    assert join_irreducibles(boolean_lattice(3)) == [1, 2, 4]


def test_text_roundtrip():
    for L in ALL + [adjoin(chain(2), True, False).lattice, diamond()]:
        text = format_lattice(L)
        back = parse_lattice(text)
        assert back.poset.leq == L.poset.leq
        assert back.poset.names == L.poset.names


def test_text_errors():
    with pytest.raises(FormatError):
        parse_poset("cover 0 1\n")
    with pytest.raises(FormatError):
        parse_poset("elements 2\ncover 0 7\n")
    with pytest.raises(FormatError):
        parse_poset("elements 2\nfrobnicate\n")
    with pytest.raises(FormatError):
        parse_poset("elements 2\nnames a\n")


def test_format_poset_uses_names():
    text = format_poset(adjoin(chain(2), True, False).lattice.poset)
    assert "cover 0* 0" in text


@st.composite
def lattice_and_elements(draw, k=3):
    L = draw(st.sampled_from(ALL))
    return L, [draw(st.integers(0, L.n - 1)) for _ in range(k)]


@settings(max_examples=200, deadline=None)
@given(lattice_and_elements())
def test_heyting_laws(data):
    L, (a, b, c) = data
    imp = L.implication
    assert imp(a, a) == L.top
    assert L.meet[a][imp(a, b)] == L.meet[a][b]
    assert L.leq(b, imp(a, b))
    assert imp(a, L.meet[b][c]) == L.meet[imp(a, b)][imp(a, c)]
    # pseudo-complement is disjoint from the element
    assert L.meet[a][L.neg(a)] == L.bottom
