"""Acceptance criteria 1-10.  Each test carries a ``criterion`` mark; the
terminal summary prints one PASS/FAIL line per criterion."""
import itertools
import random
import subprocess
import sys
import time
from pathlib import Path

import numpy as np
import pytest

import oracles
from residua.classes import (
    ClauseTheory,
    class_from_clauses,
    leftmost_branch,
    sep_class,
    sep_theory,
)
from residua.errors import EmptyClass
from residua.free import (
    all_families,
    embed_finite_lattice,
    free_bounds,
    free_dual_implies,
    free_equiv,
    free_join,
    free_leq,
    free_meet,
    verify_witness,
)
from residua.lattice import (
    antichain_poset,
    chain,
    chain_poset,
    enumerate_heyting,
    generated_sublattice,
    join_irreducibles,
    prime_filters,
)
from residua.logic import (
    SCHEMAS,
    Atom,
    Implies,
    Member,
    NonMember,
    Not,
    Or,
    Refuted,
    Unknown,
    certificate_ok,
    ipc_entails,
    ipc_provable,
    parse,
    valid_in,
    value_vector,
    wem_decide,
)
from residua.logic.axioms import instantiate, metavariables
from residua.logic.semantics import all_valuations

HERE = Path(__file__).parent
DATA = HERE / "data"
GOLDEN = HERE / "golden"

criterion = pytest.mark.criterion


def report(n, ok, detail):
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail}")


# --- 1 ----------------------------------------------------------------------


@criterion(1, "residuation in every distributive lattice up to 6 elements")
def test_c01_residuation():
    start = time.perf_counter()
    lattices = list(enumerate_heyting(6))
    sizes = [sum(1 for L in lattices if L.n == k) for k in range(1, 7)]
    expected = oracles.distributive_counts(6)
    bad = 0
    for L in lattices:
        imp = L.implication
        assert imp.total
        for a, x, b in itertools.product(L.elements(), repeat=3):
            if L.leq(L.meet[a][x], b) != L.leq(x, imp(a, b)):
                bad += 1
    elapsed = time.perf_counter() - start
    ok = sizes == expected and bad == 0 and elapsed < 10
    report(1, ok, f"counts {sizes} oracle {expected}, {bad} violations, {elapsed:.2f}s")
    assert sizes == expected == [1, 1, 1, 2, 3, 5]
    assert bad == 0
    assert elapsed < 10


# --- 2 ----------------------------------------------------------------------


def _schema_values(L, schema, columns):
    """Schema value with metavariable i read from ``columns[i]``."""
    mvs = metavariables(schema)
    pattern = instantiate(schema, {m: Atom(i) for i, m in enumerate(mvs)})
    return value_vector(L, pattern, {i: col for i, col in enumerate(columns)})


@criterion(2, "ten axiom schemas sound on depth-2 instances, modus ponens closed")
def test_c02_ipc_soundness():
    corpus = oracles.sentences_up_to_depth(2, 2)
    # 2 atoms, 14 of depth 1, 770 of depth 2
    assert len(corpus) == len(set(corpus)) == 786
    rng = random.Random(2)
    violations = 0
    sampled = 0
    mp_pairs = 0
    lattices = list(enumerate_heyting(6))
    for L in lattices:
        g = all_valuations(L.n, 2)
        cols = {0: g[:, 0], 1: g[:, 1]}
        vecs = np.array([value_vector(L, s, cols) for s in corpus])
        # exact reduction: at each valuation point, the instance value depends
        # only on the metavariable values there, which range over the values
        # the corpus achieves at that point
        for point in range(len(g)):
            achievable = np.unique(vecs[:, point])
            for schema in SCHEMAS:
                k = len(metavariables(schema))
                combos = np.array(list(itertools.product(achievable, repeat=k)), dtype=np.int8)
                vals = _schema_values(L, schema, [combos[:, i] for i in range(k)])
                violations += int(np.count_nonzero(vals != L.top))
        # direct instantiation on a random sample
        for _ in range(40):
            schema = rng.choice(SCHEMAS)
            mvs = metavariables(schema)
            inst = instantiate(schema, {m: rng.choice(corpus) for m in mvs})
            sampled += 1
            if valid_in(L, inst) is not True:
                violations += 1
        # modus ponens: phi valid and phi -> psi valid force psi valid
        valid_rows = [i for i in range(len(corpus)) if np.all(vecs[i] == L.top)]
        for i in rng.sample(valid_rows, min(8, len(valid_rows))):
            for psi in corpus:
                mp_pairs += 1
                if valid_in(L, Implies(corpus[i], psi)) is True and valid_in(L, psi) is not True:
                    violations += 1
    # modus ponens on the proof side
    for _ in range(150):
        phi, psi = rng.choice(corpus), rng.choice(corpus)
        if ipc_provable([], phi) and ipc_provable([], Implies(phi, psi)):
            mp_pairs += 1
            if ipc_provable([], psi) is not True:
                violations += 1
    report(2, violations == 0,
           f"{len(corpus)} sentences, {len(lattices)} lattices, {sampled} sampled instances, "
           f"{mp_pairs} modus ponens pairs, {violations} violations")
    assert violations == 0


# --- 3 ----------------------------------------------------------------------


def _wem_corpus():
    rng = random.Random(20)
    fixed = ["p0", "p0 -> p1", "p0 | p1", "~p0 & p1", "p0 | ~p0", "~~p0 -> p0"]
    phis = [parse(t) for t in fixed]
    while len(phis) < 20:
        phis.append(oracles.random_sentence(rng, 2, 3))
    return [Or(Not(f), Not(Not(f))) for f in phis]


def _certificate_refutes_independently(s, verdict):
    L = verdict.lattice
    alg = oracles.Algebra([[L.leq(a, b) for b in L.elements()] for a in L.elements()])
    leq = alg.leq
    irreducible = oracles.irreducible(leq, 0) and oracles.irreducible(leq, 1)
    return irreducible and alg.value(s, verdict.valuation.assignment) != alg.top


@criterion(3, "weak excluded middle membership calibrated against the lattice oracle")
def test_c03_wem_calibration():
    members = [wem_decide(s) for s in _wem_corpus()]
    all_member = all(isinstance(v, Member) for v in members)

    certs_ok = True
    for text in ("p0 | ~p0", "~~p0 -> p0"):
        s = parse(text)
        v = wem_decide(s)
        certs_ok &= isinstance(v, NonMember) and certificate_ok(s, v.valuation) \
            and _certificate_refutes_independently(s, v)

    rng = random.Random(3)
    algebras = oracles.wem_lattices(6)
    assert len(algebras) == 6
    unknown = disagree = 0
    total = 200
    for _ in range(total):
        s = oracles.random_sentence(rng, 3, 3)
        v = wem_decide(s)
        if isinstance(v, Unknown):
            unknown += 1
            continue
        truth = oracles.valid_in_all(algebras, s)
        if isinstance(v, Member) != truth:
            disagree += 1
        if isinstance(v, NonMember) and not _certificate_refutes_independently(s, v):
            disagree += 1
    rate = unknown / total
    ok = all_member and certs_ok and disagree == 0 and rate < 0.05
    report(3, ok, f"corpus members {sum(isinstance(v, Member) for v in members)}/20, "
                  f"certificates {'ok' if certs_ok else 'bad'}, {disagree} disagreements, "
                  f"unknown rate {rate:.1%}")
    assert all_member
    assert certs_ok
    assert disagree == 0
    assert rate < 0.05


# --- 4 ----------------------------------------------------------------------


@criterion(4, "strict inclusions between intuitionistic, weak excluded middle and classical logic")
def test_c04_strict_inclusions():
    wem_inst = parse("~p0 | ~~p0")
    lem = parse("p0 | ~p0")
    a = isinstance(wem_decide(wem_inst), Member)
    b = isinstance(ipc_entails([], wem_inst), Refuted)
    c = valid_in(chain(2), lem) is True
    d = isinstance(wem_decide(lem), NonMember)
    report(4, a and b and c and d, f"wem-member {a}, ipc-refuted {b}, classical {c}, wem-nonmember {d}")
    assert a and b and c and d


# --- 5 ----------------------------------------------------------------------


def _free_law_violations(P):
    fams = all_families(P, normalized=True)
    zero, one = free_bounds(P)
    eq, leq = free_equiv, free_leq
    J, M, D = free_join, free_meet, free_dual_implies
    bad = []
    for S in fams:
        if not (leq(zero, S) and leq(S, one)):
            bad.append(("bounds", S))
        if not (eq(J(S, S), S) and eq(M(S, S), S)):
            bad.append(("idempotence", S))
    for S, T in itertools.product(fams, repeat=2):
        if not (eq(J(S, T), J(T, S)) and eq(M(S, T), M(T, S))):
            bad.append(("commutativity", S, T))
        if not (eq(J(S, M(S, T)), S) and eq(M(S, J(S, T)), S)):
            bad.append(("absorption", S, T))
        if leq(S, T) != eq(J(S, T), T):
            bad.append(("order", S, T))
    for S, T, X in itertools.product(fams, repeat=3):
        if not eq(J(J(S, T), X), J(S, J(T, X))) or not eq(M(M(S, T), X), M(S, M(T, X))):
            bad.append(("associativity", S, T, X))
        if not eq(M(S, J(T, X)), J(M(S, T), M(S, X))):
            bad.append(("distributivity", S, T, X))
        if leq(T, J(S, X)) != leq(D(S, T), X):
            bad.append(("dual residuation", S, T, X))
    # well-definedness of the dual implication on raw families
    raw = all_families(P, normalized=False)
    for S, S2 in itertools.product(raw, repeat=2):
        if not eq(S, S2):
            continue
        for T, T2 in itertools.product(raw, repeat=2):
            if eq(T, T2) and not eq(D(S, T), D(S2, T2)):
                bad.append(("well-defined", S, S2, T, T2))
    return len(fams), len(raw), bad


@criterion(5, "free dual-implicative lattice laws over both two-element posets")
def test_c05_free_laws():
    start = time.perf_counter()
    details = []
    bad = []
    for name, P in (("chain", chain_poset(2)), ("antichain", antichain_poset(2))):
        n, raw, b = _free_law_violations(P)
        details.append(f"{name}: {n} normal families, {raw} raw")
        bad += b
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 30
    report(5, ok, f"{'; '.join(details)}, {len(bad)} violations, {elapsed:.2f}s")
    assert not bad, bad[:5]
    assert elapsed < 30


# --- 6 ----------------------------------------------------------------------


@criterion(6, "embedding of every 0- and 1-irreducible lattice up to 6 elements")
def test_c06_embeddings():
    lattices = list(enumerate_heyting(6, require_zero_irr=True, require_one_irr=True))
    results = [verify_witness(embed_finite_lattice(L)) for L in lattices]
    passed = sum(r.ok for r in results)
    report(6, passed == len(lattices), f"{passed}/{len(lattices)} witnesses verified")
    assert len(lattices) == 6
    assert passed == len(lattices), [r.failures for r in results if not r.ok]


# --- 7 ----------------------------------------------------------------------


@criterion(7, "generated implicative sublattice contract on random pairs")
def test_c07_generated_sublattice():
    rng = random.Random(7)
    pool = list(enumerate_heyting(6))
    problems = []
    for trial in range(50):
        L = rng.choice(pool)
        A = {a for a in L.elements() if rng.random() < 0.35}
        G = generated_sublattice(L, A)
        elems = set(G.elements)
        sub = G.lattice
        if not A | {L.bottom, L.top} <= elems:
            problems.append((trial, "containment"))
        for a, b in itertools.product(G.elements, repeat=2):
            na, nb = G.old_to_new[a], G.old_to_new[b]
            if L.meet[a][b] not in elems or L.join[a][b] not in elems:
                problems.append((trial, "closure", a, b))
                continue
            if sub.meet[na][nb] != G.old_to_new[L.meet[a][b]] or sub.join[na][nb] != G.old_to_new[L.join[a][b]]:
                problems.append((trial, "restriction", a, b))
            r = G.implication(na, nb)
            if r is None or not 0 <= r < sub.n:
                problems.append((trial, "implication closure", a, b))
                continue
            # r is the largest x in the sublattice with a & x <= b
            if any(sub.leq(sub.meet[na][x], nb) != sub.leq(x, r) for x in sub.elements()):
                problems.append((trial, "residuation", a, b))
            full = L.implication(a, b)
            if full in A | {L.bottom, L.top} and G.elements[r] != full:
                problems.append((trial, "property iii", a, b))
    report(7, not problems, f"50 pairs, {len(problems)} problems")
    assert not problems, problems[:5]


# --- 8 ----------------------------------------------------------------------


@criterion(8, "closed classes agree with the brute-force clause oracle")
def test_c08_class_oracle():
    rng = random.Random(8)
    cap = 6
    mismatches = []
    for trial in range(100):
        k = rng.randint(1, 4)
        clauses = tuple(oracles.random_clause(rng, k) for _ in range(rng.randint(1, 4)))
        P = class_from_clauses(ClauseTheory(clauses), cap)
        for d in range(cap + 1):
            if P.level(d) != oracles.clause_level(clauses, d):
                mismatches.append((trial, "level", d))
            expected = oracles.clause_extendable_level(clauses, d, cap)
            try:
                got = leftmost_branch(P, d)
            except EmptyClass:
                got = None
            if got != (expected[0] if expected else None):
                mismatches.append((trial, "lmb", d))
        A = set(rng.sample(range(cap), rng.randint(0, 3)))
        B = set(rng.sample(sorted(set(range(cap)) - A), rng.randint(0, 2)))
        S = sep_class(A, B, cap)
        T = class_from_clauses(sep_theory(A, B), cap)
        for d in range(cap + 1):
            if S.level(d) != T.level(d):
                mismatches.append((trial, "sep", d))
        for w in itertools.product((0, 1), repeat=cap):
            if S.accepts(w) != T.accepts(w):
                mismatches.append((trial, "sep-accepts", w))
                break
    report(8, not mismatches, f"100 theories to depth {cap}, {len(mismatches)} mismatches")
    assert not mismatches, mismatches[:5]


# --- 9 ----------------------------------------------------------------------


@criterion(9, "prime filters match join-irreducibles")
def test_c09_prime_filters():
    rows = [(L.n, len(prime_filters(L)), len(join_irreducibles(L))) for L in enumerate_heyting(6)]
    bad = [r for r in rows if r[1] != r[2]]
    report(9, not bad, f"{len(rows)} lattices, {len(bad)} mismatches")
    assert not bad


# --- 10 ---------------------------------------------------------------------

GOLDEN_RUNS = [
    ("lattice_check", ["lattice", "check", "diamond.lat"]),
    ("lattice_sub", ["lattice", "sub", "diamond.lat", "--elems", "a"]),
    ("free_meet", ["free", "op", "meet", "chain2.pos", "{a}", "{b}"]),
    ("free_dimpl", ["free", "op", "dimpl", "chain2.pos", "{b}", "{a}"]),
    ("free_embed", ["free", "embed", "chain3.lat"]),
    ("logic_eval_json", ["--json", "logic", "eval", "p0 -> p1", "--lattice", "diamond.lat",
                         "--assign", "p0=1,p1=2"]),
    ("logic_ipc", ["logic", "ipc", "~p0 | ~~p0"]),
    ("logic_wem_member", ["logic", "wem", "~p0 | ~~p0"]),
    ("logic_wem_nonmember", ["logic", "wem", "~~p0 -> p0"]),
    ("logic_valid", ["logic", "valid", "p0 | ~p0", "--lattice", "chain3.lat"]),
    ("class_profile", ["class", "profile", "example.cls", "--depth", "4"]),
    ("class_lmb", ["class", "lmb", "example.cls", "--depth", "3"]),
]

CERTIFICATE_RUNS = [
    ["logic", "wem", "p0 | ~p0"],
    ["logic", "wem", "~~p0 -> p0"],
    ["logic", "ipc", "~p0 | ~~p0"],
    ["logic", "counter", "(p0 -> p1) | (p1 -> p0)"],
]


def cli(args, cwd=DATA):
    proc = subprocess.run([sys.executable, "-m", "residua.cli", *args], cwd=cwd,
                          capture_output=True, text=True, timeout=120)
    return proc.returncode, proc.stdout


def render(code, out):
    return f"{out}# exit {code}\n"


def _field(out, key):
    for line in out.splitlines():
        if line.startswith(key + ":"):
            return line.split(":", 1)[1].strip()
    raise KeyError(key)


@criterion(10, "command line output matches golden files and certificates re-validate")
def test_c10_cli_golden(tmp_path):
    diffs = []
    for name, args in GOLDEN_RUNS:
        first = render(*cli(args))
        second = render(*cli(args))
        expected = (GOLDEN / f"{name}.txt").read_text()
        if first != expected or second != first:
            diffs.append(name)
    revalidated = 0
    for i, args in enumerate(CERTIFICATE_RUNS):
        cert = tmp_path / f"cert{i}.lat"
        code, out = cli([*args, "--cert-out", str(cert)])
        if code != 1:
            diffs.append(f"certificate run {args} exit {code}")
            continue
        code2, out2 = cli(["logic", "eval", args[-1], "--lattice", str(cert),
                           "--assign", _field(out, "assignment")])
        if code2 != 0 or _field(out2, "is-top") != "no" or _field(out2, "value") != _field(out, "value"):
            diffs.append(f"certificate {args} did not re-validate")
            continue
        revalidated += 1
    report(10, not diffs, f"{len(GOLDEN_RUNS)} golden runs, {revalidated} certificates re-validated, "
                          f"problems: {diffs or 'none'}")
    assert len(GOLDEN_RUNS) == 12
    assert not diffs
