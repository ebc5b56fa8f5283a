from residua.lattice.core import (
    Adjoined,
    FinLattice,
    FinPoset,
    ImplTable,
    Interval,
    PrimeFilter,
    PropertyFlags,
    adjoin,
    adjoin_implication,
    antichain_poset,
    boolean_lattice,
    build_poset,
    chain,
    chain_poset,
    check_properties,
    dual_implication,
    dual_lattice,
    heyting_implication,
    interval,
    join_irreducibles,
    lattice_from_covers,
    lattice_from_poset,
    prime_filters,
    product,
    relabel,
)
from residua.lattice.enumeration import (
    canonical,
    canonical_form,
    distributive_lattices,
    enumerate_heyting,
)
from residua.lattice.sublattice import GeneratedSublattice, generated_sublattice
from residua.lattice.textio import (
    format_lattice,
    format_poset,
    parse_lattice,
    parse_poset,
    read_lattice,
    read_poset,
)

__all__ = [
    "Adjoined",
    "FinLattice",
    "FinPoset",
    "GeneratedSublattice",
    "ImplTable",
    "Interval",
    "PrimeFilter",
    "PropertyFlags",
    "adjoin",
    "adjoin_implication",
    "antichain_poset",
    "boolean_lattice",
    "build_poset",
    "canonical",
    "canonical_form",
    "chain",
    "chain_poset",
    "check_properties",
    "distributive_lattices",
    "dual_implication",
    "dual_lattice",
    "enumerate_heyting",
    "format_lattice",
    "format_poset",
    "generated_sublattice",
    "heyting_implication",
    "interval",
    "join_irreducibles",
    "lattice_from_covers",
    "lattice_from_poset",
    "parse_lattice",
    "parse_poset",
    "prime_filters",
    "product",
    "read_lattice",
    "read_poset",
    "relabel",
]
