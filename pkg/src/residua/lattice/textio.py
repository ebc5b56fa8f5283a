"""Plain-text lattice and poset files.

    # comment
    elements 4
    names a b c d        (optional; default names are the ids)
    cover 0 1
    cover 0 2

``cover`` operands may be ids or names.  The writer appends the meet and
join tables as ``#`` comment blocks so they survive a round trip untouched.
"""
from __future__ import annotations

from pathlib import Path

from residua.errors import FormatError
from residua.lattice.core import FinLattice, FinPoset, build_poset, lattice_from_poset


def parse_poset(text: str) -> FinPoset:
    n = None
    names: list[str] = []
    covers_raw = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "elements":
            if n is not None or len(rest) != 1 or not rest[0].isdigit():
                raise FormatError(f"line {lineno}: expected 'elements N'")
            n = int(rest[0])
        elif head == "names":
            names = rest
        elif head == "cover":
            if len(rest) != 2:
                raise FormatError(f"line {lineno}: expected 'cover A B'")
            covers_raw.append((lineno, rest[0], rest[1]))
        else:
            raise FormatError(f"line {lineno}: unknown directive {head!r}")
    if n is None:
        raise FormatError("missing 'elements N' line")
    if names and len(names) != n:
        raise FormatError(f"{len(names)} names given for {n} elements")
    lookup = {name: i for i, name in enumerate(names)} if names else {}

    def resolve(lineno: int, tok: str) -> int:
        if tok in lookup:
            return lookup[tok]
        if tok.isdigit() and not names and int(tok) < n:
            return int(tok)
        raise FormatError(f"line {lineno}: unknown element {tok!r}")

    covers = [(resolve(ln, a), resolve(ln, b)) for ln, a, b in covers_raw]
    return build_poset(n, covers, names)


def parse_lattice(text: str) -> FinLattice:
    return lattice_from_poset(parse_poset(text))


def read_poset(path) -> FinPoset:
    return parse_poset(Path(path).read_text())


def read_lattice(path) -> FinLattice:
    return parse_lattice(Path(path).read_text())


def _has_default_names(p: FinPoset) -> bool:
    return p.names == tuple(str(i) for i in range(p.n))


def _names_writable(p: FinPoset) -> bool:
    ok = all(x and not any(c.isspace() for c in x) and "#" not in x for x in p.names)
    return ok and len(set(p.names)) == p.n


def format_poset(p: FinPoset) -> str:
    """Cover lines use names when a ``names`` line is written (names shadow
    ids on reading), ids otherwise."""
    lines = [f"elements {p.n}"]
    label: tuple = tuple(range(p.n))
    if not _has_default_names(p) and _names_writable(p):
        lines.append("names " + " ".join(p.names))
        label = p.names
    lines += [f"cover {label[a]} {label[b]}" for a, b in p.covers()]
    return "\n".join(lines) + "\n"


def _table_block(title: str, table) -> list[str]:
    width = max(len(str(len(table))), 1)
    out = [f"# {title}"]
    for row in table:
        out.append("#   " + " ".join(str(x).rjust(width) for x in row))
    return out


def format_lattice(L: FinLattice, tables: bool = True) -> str:
    text = format_poset(L.poset)
    if not tables:
        return text
    lines = _table_block("meet", L.meet) + _table_block("join", L.join)
    return text + "\n".join(lines) + "\n"


def format_impl(table, title: str) -> str:
    rows = [[("-" if x is None else x) for x in row] for row in table.impl]
    return "\n".join(l[2:] if l.startswith("# ") else l for l in _table_block(title, rows)) + "\n"
