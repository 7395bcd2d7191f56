#!/usr/bin/env python3
"""Sweep small modular-addition universes for topological rough groups.

For each modulus n, every partition of {0,...,n-1} (enumerated as
restricted growth strings) and every nonempty subset G is screened with
verify_rough_group.  For each certificate we then enumerate all
topologies on the upper approximation and count how many make the
product and inversion maps continuous, i.e. how many admit a passing
TRG certificate.  The output is a deterministic table, one line per
rough group, plus per-modulus and overall totals.

Usage:
    python3 scripts/explore_small_trgs.py [--max-n N]

Moduli 2..N are swept (default 3; 4 is allowed but markedly slower
because discrete topologies on a 4-point upper push the product
topology to 65536 open sets).
"""

from __future__ import annotations

import argparse
from collections import defaultdict

from roughtop.approx import ApproxSpace, Partition, Universe
from roughtop.groups import CayleyTable, verify_rough_group
from roughtop.topology import enumerate_topologies
from roughtop.trg import verify_trg


def restricted_growth_strings(n: int):
    """Yield every partition of range(n) as a block-assignment tuple."""
    assignment = [0] * n

    def extend(i: int, max_block: int):
        if i == n:
            yield tuple(assignment)
            return
        for b in range(max_block + 2):
            assignment[i] = b
            yield from extend(i + 1, max(max_block, b))

    yield from extend(1, 0) if n > 1 else iter([(0,)])


def blocks_of(assignment: tuple[int, ...]) -> list[list[int]]:
    grouped = defaultdict(list)
    for element, block in enumerate(assignment):
        grouped[block].append(element)
    return [grouped[b] for b in sorted(grouped)]


def partition_label(u: Universe, blocks: list[list[int]]) -> str:
    return " ".join(u.set_str(sum(1 << i for i in block)) for block in blocks)


def sweep_modulus(n: int) -> tuple[int, int, int]:
    u = Universe(tuple(str(i) for i in range(n)))
    table = CayleyTable.from_names(
        u, [[str((x + y) % n) for y in range(n)] for x in range(n)])
    rough_groups = 0
    trg_instances = 0
    candidates = 0
    print(f"== modulus {n} ==")
    for assignment in restricted_growth_strings(n):
        blocks = blocks_of(assignment)
        part = Partition(u, tuple(sum(1 << i for i in b) for b in blocks))
        space = ApproxSpace(u, part, table)
        label = partition_label(u, blocks)
        for g_mask in range(1, 1 << n):
            candidates += 1
            report, cert = verify_rough_group(space, g_mask)
            if cert is None:
                continue
            rough_groups += 1
            tops = enumerate_topologies(u, cert.upper)
            passing = sum(
                1 for tau in tops if verify_trg(cert, tau)[0].verdict == "pass")
            trg_instances += passing
            print(f"  partition {label:<16} G={u.set_str(g_mask):<10}"
                  f" identity {u.elements[cert.designated_e]};"
                  f" {passing}/{len(tops)} topologies admit a TRG")
    print(f"  modulus {n} totals: {rough_groups} rough groups out of"
          f" {candidates} candidates, {trg_instances} TRG instances")
    return candidates, rough_groups, trg_instances


def main() -> None:
    ap = argparse.ArgumentParser(
        description="enumerate topological rough groups over Z mod n")
    ap.add_argument("--max-n", type=int, default=3, choices=(2, 3, 4),
                    help="largest modulus to sweep (default 3)")
    args = ap.parse_args()
    grand = (0, 0, 0)
    for n in range(2, args.max_n + 1):
        result = sweep_modulus(n)
        grand = tuple(a + b for a, b in zip(grand, result))
    print(f"overall: {grand[1]} rough groups out of {grand[0]} candidates,"
          f" {grand[2]} TRG instances")


if __name__ == "__main__":
    main()
