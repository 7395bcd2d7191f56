"""Shared fixtures and independent oracles.

Every oracle here recomputes a result with a method deliberately
different from the library implementation (frozensets instead of
bitmasks, fixpoint closure instead of down-set enumeration, sympy
instead of the hand-rolled permutation table) so that agreement is
meaningful evidence rather than the same code run twice.
"""

from __future__ import annotations

import io
import contextlib
from pathlib import Path

import pytest

from roughtop.cli import main as cli_main
from roughtop.parser import Workspace, parse_spec
from roughtop import (
    ApproxSpace,
    FiniteTopology,
    RoughGroupCert,
    RoughSpace,
    TRGCert,
    verify_rough_group,
    verify_trg,
)

ROOT = Path(__file__).resolve().parent.parent
FIXDIR = ROOT / "fixtures"


# ---------------------------------------------------------------------------
# oracle: approximations via frozensets


def oracle_lower(blocks: list[frozenset], xs: frozenset) -> frozenset:
    out: set = set()
    for b in blocks:
        if b <= xs:
            out |= b
    return frozenset(out)


def oracle_upper(blocks: list[frozenset], xs: frozenset) -> frozenset:
    out: set = set()
    for b in blocks:
        if b & xs:
            out |= b
    return frozenset(out)


def mask_to_set(mask: int) -> frozenset:
    return frozenset(i for i in range(mask.bit_length()) if (mask >> i) & 1)


def set_to_mask(s) -> int:
    return sum(1 << i for i in s)


# ---------------------------------------------------------------------------
# oracle: topology generation by union/intersection fixpoint closure


def oracle_close_family(carrier: int, members) -> tuple[int, ...]:
    """Smallest topology on the carrier containing the members, found by
    adding pairwise unions and intersections until nothing changes."""
    fam = set(members)
    fam.add(0)
    fam.add(carrier)
    changed = True
    while changed:
        changed = False
        snapshot = sorted(fam)
        for a in snapshot:
            for b in snapshot:
                for c in (a | b, a & b):
                    if c not in fam:
                        fam.add(c)
                        changed = True
    return tuple(sorted(fam))


def oracle_is_topology(carrier: int, fam) -> bool:
    s = set(fam)
    if 0 not in s or carrier not in s:
        return False
    for a in s:
        if a & ~carrier:
            return False
        for b in s:
            if (a | b) not in s or (a & b) not in s:
                return False
    return True


def oracle_all_topologies(n: int) -> list[tuple[int, ...]]:
    """All topologies on n points by filtering every family of proper
    nonempty subsets.  Exponential in 2^n; keep n tiny."""
    carrier = (1 << n) - 1
    proper = [m for m in range(1, carrier)]
    out = []
    for pick in range(1 << len(proper)):
        fam = {0, carrier}
        for i, m in enumerate(proper):
            if (pick >> i) & 1:
                fam.add(m)
        if oracle_is_topology(carrier, fam):
            out.append(tuple(sorted(fam)))
    return sorted(out)


# ---------------------------------------------------------------------------
# oracle: classical group axioms on an explicit table


def oracle_is_group(rows, elems) -> bool:
    es = set(elems)
    for x in elems:
        for y in elems:
            if rows[x][y] not in es:
                return False
            for z in elems:
                if rows[rows[x][y]][z] != rows[x][rows[y][z]]:
                    return False
    ident = None
    for e in elems:
        if all(rows[e][x] == x and rows[x][e] == x for x in elems):
            ident = e
            break
    if ident is None:
        return False
    for x in elems:
        if not any(rows[x][y] == ident and rows[y][x] == ident for y in elems):
            return False
    return True


# ---------------------------------------------------------------------------
# oracle: S4 composition via sympy


def sympy_s4_oracle(names):
    """name -> sympy Permutation, under the convention that our x*y
    applies y first (sympy's p*q applies p first, so ours is q*p)."""
    from sympy.combinatorics import Permutation

    def of_name(name: str) -> Permutation:
        if name == "1":
            return Permutation(3)
        cycles = []
        for part in name.replace(")(", ")|(").split("|"):
            digits = part.strip("()")
            cycles.append([int(d) - 1 for d in digits])
        return Permutation(cycles, size=4)

    return {n: of_name(n) for n in names}


# ---------------------------------------------------------------------------
# workspace fixtures


def load_fixture(name: str) -> Workspace:
    return parse_spec((FIXDIR / name).read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def ws_zmod3() -> Workspace:
    return load_fixture("zmod3.rg")


@pytest.fixture(scope="session")
def ws_s4() -> Workspace:
    return load_fixture("s4.rg")


@pytest.fixture(scope="session")
def ws_product() -> Workspace:
    return load_fixture("zmod3_product.rg")


@pytest.fixture(scope="session")
def ws_hom() -> Workspace:
    return load_fixture("hom_z3_to_s4.rg")


@pytest.fixture(scope="session")
def ws_zmod4() -> Workspace:
    return load_fixture("zmod4_discrete.rg")


@pytest.fixture(scope="session")
def ws_selfaction() -> Workspace:
    return load_fixture("zmod3_selfaction.rg")


def space_of(ws: Workspace, table: str, partition: str) -> ApproxSpace:
    uname, tab = ws.tables[table]
    _, part = ws.partitions[partition]
    return ApproxSpace(ws.universes[uname], part, tab)


def cert_of(ws: Workspace, table: str, partition: str,
            group: str) -> RoughGroupCert:
    space = space_of(ws, table, partition)
    report, cert = verify_rough_group(space, ws.subsets[group][1])
    assert cert is not None, report.first_witness()
    return cert


def trg_of(ws: Workspace, table: str, partition: str, group: str,
           topology: str, **kw) -> TRGCert:
    cert = cert_of(ws, table, partition, group)
    _, tau = ws.topologies[topology]
    report, tcert = verify_trg(cert, tau, **kw)
    assert tcert is not None, report.first_witness()
    return tcert


@pytest.fixture(scope="session")
def fixa_cert(ws_zmod3) -> RoughGroupCert:
    return cert_of(ws_zmod3, "TA", "PA", "GA")


@pytest.fixture(scope="session")
def fixa_trg(ws_zmod3) -> TRGCert:
    return trg_of(ws_zmod3, "TA", "PA", "GA", "tauA")


@pytest.fixture(scope="session")
def fixb_cert(ws_s4) -> RoughGroupCert:
    return cert_of(ws_s4, "TB", "PB", "GB")


@pytest.fixture(scope="session")
def fixb_trg(ws_s4) -> TRGCert:
    return trg_of(ws_s4, "TB", "PB", "GB", "tauB")


@pytest.fixture(scope="session")
def fixa_rspace(ws_zmod3) -> RoughSpace:
    space = space_of(ws_zmod3, "TA", "PA")
    _, tau = ws_zmod3.topologies["tauA"]
    return RoughSpace.make(space, ws_zmod3.subsets["GA"][1], tau)


# ---------------------------------------------------------------------------
# CLI runner


def run_cli(args: list[str], fixture: str | None = None,
            stdin: str | None = None):
    """Invoke the CLI in-process; returns (exit code, stdout, stderr)."""
    argv = list(args)
    if fixture is not None:
        argv += ["--file", str(FIXDIR / fixture)]
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        if stdin is None:
            code = cli_main(argv)
        else:
            import sys

            old = sys.stdin
            sys.stdin = io.StringIO(stdin)
            try:
                code = cli_main(argv)
            finally:
                sys.stdin = old
    return code, out.getvalue(), err.getvalue()
