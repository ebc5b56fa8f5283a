from residua.logic.axioms import SCHEMAS, WEM_SCHEMA, instances, ipc_axiom_check, match_schema
from residua.logic.decide import (
    Budget,
    Member,
    NonMember,
    Proved,
    Refuted,
    TheoryReport,
    TrichotomyCase,
    Unknown,
    certificate_ok,
    chi,
    countermodel,
    ipc_entails,
    theory_report,
    trichotomy,
    wem_decide,
)
from residua.logic.prover import Prover, ipc_provable
from residua.logic.semantics import (
    Valuation,
    classical_tautology,
    counter_valuation,
    evaluate,
    valid_in,
    value_vector,
)
from residua.logic.syntax import (
    And,
    Atom,
    Bot,
    Implies,
    Not,
    Or,
    Sentence,
    Top,
    atoms,
    conj,
    disj,
    parse,
    positive,
    to_text,
)

__all__ = [
    "And", "Atom", "Bot", "Budget", "Implies", "Member", "NonMember", "Not", "Or",
    "Proved", "Prover", "Refuted", "SCHEMAS", "Sentence", "TheoryReport", "Top",
    "TrichotomyCase", "Unknown", "Valuation", "WEM_SCHEMA", "atoms", "certificate_ok",
    "chi", "classical_tautology", "conj", "counter_valuation", "countermodel", "disj",
    "evaluate", "instances", "ipc_axiom_check", "ipc_entails", "ipc_provable",
    "match_schema", "parse", "positive", "theory_report", "to_text", "trichotomy",
    "valid_in", "value_vector", "wem_decide",
]
