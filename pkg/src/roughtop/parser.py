"""Parser and serializer for the structure-description text format.

The format is line oriented.  `#` starts a comment anywhere on a line;
blank lines are ignored; tokens never contain whitespace.  Declarations:

    universe <name>: tok tok ...
    table <name> on <universe>:        (followed by n lines of n tokens;
                                        the row for x lists x*y per column y)
    partition <name> on <universe>: {tok ...} {tok ...} ...
    subset <name> of <universe>: tok ...
    topology <name> on <carrier>: {} {tok ...} ...
    map <name> from <set> to <set>: tok->tok tok->tok ...

A <carrier> or map endpoint names a declared subset, or a universe
(standing for all of its elements).  The empty set is written `{}`, and
a topology must list its carrier among the opens.  Pair element names
like `(a,b)` are ordinary tokens.  Every error carries the 1-based line
and column it was detected at.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .approx import Partition, Universe
from .errors import InputError, ParseError
from .groups import CayleyTable
from .topology import FiniteMap, FiniteTopology

_BRACE_RE = re.compile(r"\{([^{}]*)\}")


@dataclass
class Workspace:
    """Symbol table of parsed declarations, one namespace per kind.

    Values keep the referenced names alongside the built objects so a
    workspace serializes back to an equivalent document.
    """

    universes: dict[str, Universe] = field(default_factory=dict)
    tables: dict[str, tuple[str, CayleyTable]] = field(default_factory=dict)
    partitions: dict[str, tuple[str, Partition]] = field(default_factory=dict)
    subsets: dict[str, tuple[str, int]] = field(default_factory=dict)
    topologies: dict[str, tuple[str, FiniteTopology]] = field(default_factory=dict)
    maps: dict[str, tuple[str, str, FiniteMap]] = field(default_factory=dict)

    def universe(self, name: str) -> Universe:
        if name not in self.universes:
            raise InputError(f"unknown universe {name!r}")
        return self.universes[name]

    def table(self, name: str) -> tuple[str, CayleyTable]:
        if name not in self.tables:
            raise InputError(f"unknown table {name!r}")
        return self.tables[name]

    def partition(self, name: str) -> tuple[str, Partition]:
        if name not in self.partitions:
            raise InputError(f"unknown partition {name!r}")
        return self.partitions[name]

    def set_ref(self, name: str) -> tuple[str, Universe, int]:
        """Resolve a subset name, or a universe name as its full set."""
        if name in self.subsets:
            uname, mask = self.subsets[name]
            return uname, self.universes[uname], mask
        if name in self.universes:
            u = self.universes[name]
            return name, u, u.all_mask
        raise InputError(f"unknown subset or universe {name!r}")

    def topology(self, name: str) -> tuple[str, FiniteTopology]:
        if name not in self.topologies:
            raise InputError(f"unknown topology {name!r}")
        return self.topologies[name]

    def map(self, name: str) -> tuple[str, str, FiniteMap]:
        if name not in self.maps:
            raise InputError(f"unknown map {name!r}")
        return self.maps[name]


def _col(raw: str, token: str) -> int:
    at = raw.find(token)
    return at + 1 if at >= 0 else 1


def _element(universe: Universe, uname: str, tok: str,
             lineno: int, raw: str) -> int:
    try:
        return universe.index(tok)
    except InputError:
        raise ParseError(f"unknown element {tok!r} in universe {uname}",
                         lineno, _col(raw, tok)) from None


def _brace_groups(tail: str, lineno: int, raw: str) -> list[list[str]]:
    groups = _BRACE_RE.findall(tail)
    if tail.count("{") != len(groups) or tail.count("}") != len(groups):
        raise ParseError("unbalanced braces", lineno, _col(raw, "{"))
    leftover = _BRACE_RE.sub("", tail).split()
    if leftover:
        raise ParseError(
            f"unexpected text {leftover[0]!r} outside braces",
            lineno, _col(raw, leftover[0]),
        )
    return [g.split() for g in groups]


def _split_header(content: str, lineno: int, raw: str) -> tuple[list[str], str]:
    head, colon, tail = content.partition(":")
    if not colon:
        raise ParseError("missing ':' after the declaration header",
                         lineno, len(raw.rstrip()) + 1)
    return head.split(), tail


def _expect_keyword(head: list[str], at: int, word: str,
                    lineno: int, raw: str) -> None:
    if len(head) <= at or head[at] != word:
        got = head[at] if len(head) > at else "end of header"
        raise ParseError(f"expected {word!r}, got {got!r}",
                         lineno, _col(raw, head[at]) if len(head) > at else 1)


def _check_fresh(kind: str, name: str, existing, lineno: int, raw: str) -> None:
    if name in existing:
        raise ParseError(f"duplicate {kind} name {name!r}",
                         lineno, _col(raw, name))


def parse_spec(text: str) -> Workspace:
    """Parse a document into a workspace, resolving every reference."""
    ws = Workspace()
    items: list[tuple[int, str, str]] = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        content = raw.split("#", 1)[0]
        if content.strip():
            items.append((lineno, raw, content))
    pos = 0
    while pos < len(items):
        lineno, raw, content = items[pos]
        pos += 1
        head, tail = _split_header(content, lineno, raw)
        if not head:
            raise ParseError("empty declaration header", lineno, 1)
        kind = head[0]
        if kind == "universe":
            if len(head) != 2:
                raise ParseError("expected 'universe <name>:'", lineno, 1)
            name = head[1]
            _check_fresh("universe", name, ws.universes, lineno, raw)
            try:
                ws.universes[name] = Universe(tuple(tail.split()))
            except InputError as e:
                raise ParseError(str(e), lineno, 1) from None
        elif kind == "table":
            if len(head) != 4:
                raise ParseError("expected 'table <name> on <universe>:'",
                                 lineno, 1)
            name = head[1]
            _expect_keyword(head, 2, "on", lineno, raw)
            _check_fresh("table", name, ws.tables, lineno, raw)
            uname = head[3]
            if uname not in ws.universes:
                raise ParseError(f"unknown universe {uname!r}",
                                 lineno, _col(raw, uname))
            if tail.split():
                raise ParseError("table rows belong on the following lines",
                                 lineno, _col(raw, tail.split()[0]))
            u = ws.universes[uname]
            n = u.size
            if pos + n > len(items):
                raise ParseError(
                    f"table {name!r} needs {n} rows, found {len(items) - pos}",
                    lineno, 1,
                )
            rows = []
            for r in range(n):
                row_lineno, row_raw, row_content = items[pos]
                pos += 1
                toks = row_content.split()
                if len(toks) != n:
                    raise ParseError(
                        f"table row has {len(toks)} entries, expected {n}",
                        row_lineno, 1,
                    )
                rows.append(tuple(
                    _element(u, uname, t, row_lineno, row_raw) for t in toks
                ))
            ws.tables[name] = (uname, CayleyTable(u, tuple(rows)))
        elif kind == "partition":
            if len(head) != 4:
                raise ParseError("expected 'partition <name> on <universe>:'",
                                 lineno, 1)
            name = head[1]
            _expect_keyword(head, 2, "on", lineno, raw)
            _check_fresh("partition", name, ws.partitions, lineno, raw)
            uname = head[3]
            if uname not in ws.universes:
                raise ParseError(f"unknown universe {uname!r}",
                                 lineno, _col(raw, uname))
            u = ws.universes[uname]
            blocks = []
            for group in _brace_groups(tail, lineno, raw):
                mask = 0
                for tok in group:
                    mask |= 1 << _element(u, uname, tok, lineno, raw)
                blocks.append(mask)
            try:
                ws.partitions[name] = (uname, Partition(u, tuple(blocks)))
            except InputError as e:
                raise ParseError(str(e), lineno, 1) from None
        elif kind == "subset":
            if len(head) != 4:
                raise ParseError("expected 'subset <name> of <universe>:'",
                                 lineno, 1)
            name = head[1]
            _expect_keyword(head, 2, "of", lineno, raw)
            _check_fresh("subset", name, ws.subsets, lineno, raw)
            uname = head[3]
            if uname not in ws.universes:
                raise ParseError(f"unknown universe {uname!r}",
                                 lineno, _col(raw, uname))
            u = ws.universes[uname]
            mask = 0
            for tok in tail.split():
                mask |= 1 << _element(u, uname, tok, lineno, raw)
            ws.subsets[name] = (uname, mask)
        elif kind == "topology":
            if len(head) != 4:
                raise ParseError("expected 'topology <name> on <carrier>:'",
                                 lineno, 1)
            name = head[1]
            _expect_keyword(head, 2, "on", lineno, raw)
            _check_fresh("topology", name, ws.topologies, lineno, raw)
            cname = head[3]
            try:
                _, u, carrier = ws.set_ref(cname)
            except InputError as e:
                raise ParseError(str(e), lineno, _col(raw, cname)) from None
            family = []
            for group in _brace_groups(tail, lineno, raw):
                mask = 0
                for tok in group:
                    mask |= 1 << _element(u, cname, tok, lineno, raw)
                family.append(mask)
            try:
                ws.topologies[name] = (
                    cname, FiniteTopology.from_family(u, carrier, family)
                )
            except InputError as e:
                raise ParseError(str(e), lineno, 1) from None
        elif kind == "map":
            if len(head) != 6:
                raise ParseError("expected 'map <name> from <set> to <set>:'",
                                 lineno, 1)
            name = head[1]
            _expect_keyword(head, 2, "from", lineno, raw)
            _expect_keyword(head, 4, "to", lineno, raw)
            _check_fresh("map", name, ws.maps, lineno, raw)
            aname, bname = head[3], head[5]
            try:
                _, au, amask = ws.set_ref(aname)
            except InputError as e:
                raise ParseError(str(e), lineno, _col(raw, aname)) from None
            try:
                _, bu, bmask = ws.set_ref(bname)
            except InputError as e:
                raise ParseError(str(e), lineno, _col(raw, bname)) from None
            pairs = []
            for tok in tail.split():
                parts = tok.split("->")
                if len(parts) != 2 or not parts[0] or not parts[1]:
                    raise ParseError(
                        f"expected 'src->dst', got {tok!r}",
                        lineno, _col(raw, tok),
                    )
                src = _element(au, aname, parts[0], lineno, raw)
                dst = _element(bu, bname, parts[1], lineno, raw)
                pairs.append((src, dst))
            try:
                ws.maps[name] = (
                    aname, bname, FiniteMap(au, bu, amask, bmask, tuple(pairs))
                )
            except InputError as e:
                raise ParseError(str(e), lineno, 1) from None
        else:
            raise ParseError(f"unknown declaration kind {kind!r}",
                             lineno, _col(raw, kind))
    return ws


def serialize_workspace(ws: Workspace) -> str:
    """Canonical text form: kinds grouped, sets in canonical order.

    Parsing the output yields a workspace equal to the original, and
    serializing again reproduces the same bytes.
    """
    out = []
    for name, u in ws.universes.items():
        out.append(f"universe {name}: " + " ".join(u.elements))
    for name, (uname, t) in ws.tables.items():
        out.append(f"table {name} on {uname}:")
        for row in t.rows:
            out.append(" ".join(t.universe.elements[v] for v in row))
    for name, (uname, p) in ws.partitions.items():
        groups = " ".join(
            "{" + " ".join(p.universe.names_of(b)) + "}" for b in p.blocks
        )
        out.append(f"partition {name} on {uname}: {groups}")
    for name, (uname, mask) in ws.subsets.items():
        u = ws.universes[uname]
        toks = " ".join(u.names_of(mask))
        out.append(f"subset {name} of {uname}:" + (f" {toks}" if toks else ""))
    for name, (cname, top) in ws.topologies.items():
        groups = " ".join(
            "{" + " ".join(top.universe.names_of(o)) + "}" for o in top.opens
        )
        out.append(f"topology {name} on {cname}: {groups}")
    for name, (aname, bname, m) in ws.maps.items():
        pairs = " ".join(
            f"{m.domain_universe.elements[s]}->{m.codomain_universe.elements[d]}"
            for s, d in m.pairs
        )
        out.append(f"map {name} from {aname} to {bname}:" +
                   (f" {pairs}" if pairs else ""))
    return "\n".join(out) + "\n"
