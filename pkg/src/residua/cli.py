"""Command-line front end: ``residua <group> <command> ...``.

Exit codes: 0 success or positive verdict, 1 negative verdict (refuted,
non-member, empty), 2 error, 3 undecided within budget.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from residua.classes import (
    format_word,
    isolated_at_depth,
    leftmost_branch,
    level_profile,
    nonempty_at_depth,
    read_class,
)
from residua.errors import EmptyClass, ResiduaError
from residua.free import embed_finite_lattice, format_family, parse_family, verify_witness
from residua.free import free_dual_implies, free_join, free_meet, normalize
from residua.lattice.core import FinLattice
from residua.lattice.sublattice import generated_sublattice
from residua.lattice.textio import format_impl, format_poset, read_lattice, read_poset
from residua.logic.decide import (
    Budget,
    Member,
    NonMember,
    Proved,
    Refuted,
    countermodel,
    ipc_entails,
    wem_decide,
)
from residua.logic.semantics import Valuation, evaluate, valid_in
from residua.logic.syntax import Implies, atoms, conj, parse, to_text

OK, NEGATIVE, ERROR, UNDECIDED = 0, 1, 2, 3


class Report:
    """Ordered key/value lines, rendered as text or JSON."""

    def __init__(self):
        self.items: list[tuple[str, object]] = []

    def add(self, key: str, value):
        self.items.append((key, value))

    def text(self) -> str:
        out = []
        for key, value in self.items:
            if isinstance(value, str) and "\n" in value and key == "":
                out += value.rstrip("\n").splitlines()
            elif isinstance(value, str) and "\n" in value:
                out.append(f"{key}:")
                out += ["  " + line for line in value.rstrip("\n").splitlines()]
            elif key == "":
                out.append(str(value))
            else:
                out.append(f"{key}: {value}")
        return "\n".join(out) + "\n"

    def json(self) -> str:
        data: dict = {}
        for key, value in self.items:
            key = key or "result"
            if key in data:
                prev = data[key]
                data[key] = (prev if isinstance(prev, list) else [prev]) + [value]
            else:
                data[key] = value
        return json.dumps(data, indent=2, sort_keys=False) + "\n"


def _env_int(name: str, default: Optional[int]) -> Optional[int]:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"residua: {name} must be an integer, got {raw!r}")


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _lattice_summary(L: FinLattice, rep: Report):
    rep.add("elements", L.n)
    rep.add("names", " ".join(L.poset.names))
    rep.add("bottom", L.bottom)
    rep.add("top", L.top)
    f = L.properties
    for key in ("distributive", "implicative", "dual_implicative", "boolean",
                "zero_irreducible", "one_irreducible"):
        rep.add(key.replace("_", "-"), _yes(getattr(f, key)))


# --- lattice ----------------------------------------------------------------


def cmd_lattice_check(args, rep: Report) -> int:
    L = read_lattice(args.file)
    _lattice_summary(L, rep)
    rep.add("implication", format_impl(L.implication, "a->b (row a, column b)"))
    rep.add("dual-implication", format_impl(L.dual_impl, "a=>b (row a, column b)"))
    return OK


def _element(L: FinLattice, tok: str) -> int:
    """Ids win over names, matching how certificates print valuations."""
    if tok.isdigit() and int(tok) < L.n:
        return int(tok)
    names = L.poset.names
    if tok in names:
        return names.index(tok)
    raise ResiduaError(f"unknown element {tok!r}")


def cmd_lattice_sub(args, rep: Report) -> int:
    L = read_lattice(args.file)
    A = [_element(L, t) for t in args.elems.split(",") if t.strip()]
    sub = generated_sublattice(L, A)
    rep.add("generators", " ".join(str(a) for a in sorted(set(A))))
    rep.add("elements", " ".join(str(a) for a in sub.elements))
    rep.add("size", len(sub.elements))
    rep.add("implication", format_impl(sub.implication, "a->b in the sublattice (new ids)"))
    return OK


# --- free -------------------------------------------------------------------


def cmd_free_op(args, rep: Report) -> int:
    P = read_poset(args.poset)
    S, T = parse_family(P, args.fam1), parse_family(P, args.fam2)
    op = {"meet": free_meet, "join": free_join, "dimpl": free_dual_implies}[args.op]
    result = normalize(op(S, T))
    rep.add("op", args.op)
    rep.add("left", format_family(normalize(S)))
    rep.add("right", format_family(normalize(T)))
    rep.add("result", format_family(result))
    return OK


def cmd_free_embed(args, rep: Report) -> int:
    L = read_lattice(args.file)
    w = embed_finite_lattice(L, size_cap=args.max_size)
    report = verify_witness(w)
    rep.add("source-elements", L.n)
    rep.add("target", "Free(P) with 0* and 1* adjoined" if w.extended else "Free(P)")
    rep.add("poset", format_poset(w.target_poset))
    rep.add("image", "\n".join(f"{a} -> {format_family(x)}" for a, x in enumerate(w.image)))
    for key in ("order", "join", "meet", "dual_implication", "bottom", "top"):
        rep.add(f"check-{key.replace('_', '-')}", "pass" if getattr(report, key) else "FAIL")
    rep.add("verified", _yes(report.ok))
    return OK if report.ok else NEGATIVE


# --- logic ------------------------------------------------------------------


def _parse_assign(L: FinLattice, text: str) -> dict[int, int]:
    out = {}
    for part in filter(None, (x.strip() for x in text.split(","))):
        key, sep, val = part.partition("=")
        if not sep or not key.startswith("p") or not key[1:].isdigit():
            raise ResiduaError(f"bad assignment {part!r}; expected pN=element")
        out[int(key[1:])] = _element(L, val.strip())
    return out


def _certificate(rep: Report, L: FinLattice, v: Valuation, s, cert_out: Optional[str]):
    rep.add("lattice", format_poset(L.poset))
    rep.add("assignment", v.describe())
    rep.add("value", evaluate(v, s))
    rep.add("lattice-top", L.top)
    if cert_out:
        Path(cert_out).write_text(format_poset(L.poset))
        rep.add("certificate-file", cert_out)


def _budget(args) -> Budget:
    return Budget(lattice_size=args.max_size, proof_depth=args.budget_proof_depth)


def cmd_logic(args, rep: Report) -> int:
    s = parse(args.formula)
    rep.add("formula", to_text(s))
    kind = args.kind
    if kind in ("eval", "valid"):
        if not args.lattice:
            raise ResiduaError(f"logic {kind} needs --lattice FILE")
        L = read_lattice(args.lattice)
        if kind == "eval":
            v = Valuation(L, _parse_assign(L, args.assign or ""))
            missing = sorted(atoms(s) - set(v.assignment))
            if missing:
                raise ResiduaError("no value for " + ", ".join(f"p{a}" for a in missing))
            value = evaluate(v, s)
            rep.add("assignment", v.describe())
            rep.add("value", value)
            rep.add("is-top", _yes(value == L.top))
            return OK
        res = valid_in(L, s)
        if res is True:
            rep.add("", "VALID")
            return OK
        rep.add("", "INVALID")
        _certificate(rep, L, res, s, args.cert_out)
        return NEGATIVE
    budget = _budget(args)
    if kind == "counter":
        cv = countermodel(s, budget.lattice_size)
        if cv is None:
            rep.add("", f"NONE up to {budget.lattice_size} elements")
            return UNDECIDED
        rep.add("", "COUNTERMODEL")
        _certificate(rep, cv.lattice, cv, s, args.cert_out)
        return NEGATIVE
    if kind == "ipc":
        hyps = [parse(h) for h in args.hyp]
        if hyps:
            rep.add("hypotheses", "; ".join(to_text(h) for h in hyps))
        verdict = ipc_entails(hyps, s, budget)
        if isinstance(verdict, Proved):
            rep.add("", "PROVED")
            return OK
        if isinstance(verdict, Refuted):
            rep.add("", "REFUTED")
            target = Implies(conj(hyps), s) if hyps else s
            _certificate(rep, verdict.lattice, verdict.valuation, target, args.cert_out)
            return NEGATIVE
        rep.add("", f"UNKNOWN {verdict.note}")
        return UNDECIDED
    verdict = wem_decide(s, budget)
    if isinstance(verdict, Member):
        rep.add("", "MEMBER")
        return OK
    if isinstance(verdict, NonMember):
        rep.add("", "NONMEMBER")
        rep.add("sign-pattern", "{" + " ".join(f"p{a}" for a in sorted(verdict.pattern)) + "}")
        rep.add("construction", verdict.how)
        _certificate(rep, verdict.lattice, verdict.valuation, s, args.cert_out)
        return NEGATIVE
    rep.add("", f"UNKNOWN {verdict.note}")
    return UNDECIDED


# --- class ------------------------------------------------------------------


def cmd_class(args, rep: Report) -> int:
    P = read_class(args.file)
    d = P.depth_cap if args.depth is None else args.depth
    kind = args.kind
    if kind == "profile":
        prof = level_profile(P, d)
        rep.add("", prof.csv().rstrip("\n"))
        return OK
    if kind == "nonempty":
        ok = nonempty_at_depth(P, d)
        rep.add("", f"{'NONEMPTY' if ok else 'EMPTY'} at depth {d}")
        return OK if ok else NEGATIVE
    L = P.depth_cap - d if args.lookahead is None else args.lookahead
    if kind == "isolated":
        words = isolated_at_depth(P, d, L)
        for w in words:
            rep.add("", format_word(w))
        rep.add("", f"# {len(words)} isolated at depth {d}, lookahead {L}")
        return OK
    try:
        w = leftmost_branch(P, d, L)
    except EmptyClass as exc:
        rep.add("", f"EMPTY ({exc})")
        rep.add("", f"# lookahead {L}")
        return NEGATIVE
    rep.add("", format_word(w))
    rep.add("", f"# lookahead {L}")
    return OK


# --- wiring -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="residua", description=__doc__.splitlines()[0])
    ap.add_argument("--json", action="store_true", help="emit the report as JSON")
    groups = ap.add_subparsers(dest="group", required=True)

    lat = groups.add_parser("lattice", help="finite lattices").add_subparsers(dest="cmd", required=True)
    p = lat.add_parser("check", help="properties and implication tables")
    p.add_argument("file")
    p.set_defaults(func=cmd_lattice_check)
    p = lat.add_parser("sub", help="implicative sublattice generated by elements")
    p.add_argument("file")
    p.add_argument("--elems", required=True, help="comma-separated ids or names")
    p.set_defaults(func=cmd_lattice_sub)

    free = groups.add_parser("free", help="free dual-implicative lattices").add_subparsers(dest="cmd", required=True)
    p = free.add_parser("op", help="operate on two families over a poset")
    p.add_argument("op", choices=["meet", "join", "dimpl"])
    p.add_argument("poset")
    p.add_argument("fam1")
    p.add_argument("fam2")
    p.set_defaults(func=cmd_free_op)
    p = free.add_parser("embed", help="embed a finite lattice into a free lattice")
    p.add_argument("file")
    p.add_argument("--max-size", type=int, default=_env_int("RESIDUA_MAX_SIZE", 8))
    p.set_defaults(func=cmd_free_embed)

    logic = groups.add_parser("logic", help="propositional logic")
    logic.add_argument("kind", choices=["eval", "valid", "counter", "ipc", "wem"])
    logic.add_argument("formula")
    logic.add_argument("--lattice", help="lattice file for eval and valid")
    logic.add_argument("--assign", help="valuation for eval, e.g. p0=1,p1=0")
    logic.add_argument("--hyp", action="append", default=[], help="hypothesis for ipc (repeatable)")
    logic.add_argument("--max-size", type=int, default=_env_int("RESIDUA_MAX_SIZE", 6))
    logic.add_argument("--budget-proof-depth", type=int, default=_env_int("RESIDUA_BUDGET_PROOF_DEPTH", 40))
    logic.add_argument("--cert-out", help="also write the certificate lattice to this file")
    logic.set_defaults(func=cmd_logic)

    cls = groups.add_parser("class", help="closed classes at finite depth")
    cls.add_argument("kind", choices=["profile", "lmb", "nonempty", "isolated"])
    cls.add_argument("file")
    cls.add_argument("--depth", type=int, default=_env_int("RESIDUA_DEPTH", None))
    cls.add_argument("--lookahead", type=int, default=_env_int("RESIDUA_LOOKAHEAD", None))
    cls.set_defaults(func=cmd_class)
    return ap


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return ERROR if exc.code else OK
    rep = Report()
    try:
        code = args.func(args, rep)
    except (ResiduaError, OSError, ValueError) as exc:
        err.write(f"residua: error: {exc}\n")
        return ERROR
    out.write(rep.json() if args.json else rep.text())
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
