"""Cayley tables and the rough-group layer.

A rough group is a subset G of an approximation-space universe whose
products stay inside the upper approximation of G, with associativity
on that upper approximation, a common identity there, and an inverse
inside G for every member.  Verification returns a clause-by-clause
report plus, on success, a certificate that downstream checks consume.

Convention for tables: ``rows[x][y]`` is x * y.  Element sets are
bitmasks over the universe's canonical order throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

from .approx import (
    DEFAULT_UNIVERSE_CAP,
    ApproxSpace,
    Universe,
    bit_indices,
    popcount,
    product_mask,
    product_space,
    upper_approx,
)
from .errors import AmbiguousInverseError, CapExceededError, InputError
from .report import (
    FAIL,
    INFO,
    NOT_APPLICABLE,
    PASS,
    Clause,
    VerificationReport,
    combine,
)
from .topology import FiniteMap

DEFAULT_SUBGROUP_ENUM_CAP = 20


@dataclass(frozen=True)
class CayleyTable:
    """Total binary operation on a universe, stored as an index matrix."""

    universe: Universe
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = self.universe.size
        if len(self.rows) != n:
            raise InputError(f"table has {len(self.rows)} rows, expected {n}")
        for i, row in enumerate(self.rows):
            if len(row) != n:
                raise InputError(
                    f"table row for {self.universe.elements[i]} has {len(row)} "
                    f"entries, expected {n}"
                )
            for v in row:
                if not 0 <= v < n:
                    raise InputError("table entry is not a universe element")

    @classmethod
    def from_names(cls, universe: Universe, name_rows) -> "CayleyTable":
        rows = tuple(
            tuple(universe.index(name) for name in row) for row in name_rows
        )
        return cls(universe, rows)

    def mul(self, i: int, j: int) -> int:
        return self.rows[i][j]


def set_product(table: CayleyTable, m1: int, m2: int) -> int:
    """Elementwise product set {x*y : x in m1, y in m2}."""
    acc = 0
    for i in bit_indices(m1):
        row = table.rows[i]
        for j in bit_indices(m2):
            acc |= 1 << row[j]
    return acc


def left_translate(table: CayleyTable, x: int, mask: int) -> int:
    """{x*n : n in mask}."""
    row = table.rows[x]
    acc = 0
    for j in bit_indices(mask):
        acc |= 1 << row[j]
    return acc


def right_translate(table: CayleyTable, mask: int, x: int) -> int:
    """{n*x : n in mask}."""
    acc = 0
    for i in bit_indices(mask):
        acc |= 1 << table.rows[i][x]
    return acc


def group_axioms_witness(table: CayleyTable, mask: int) -> str | None:
    """First classical group-axiom violation on a subset, or None.

    Checks closure of the subset under the table, associativity,
    a two-sided identity inside the subset, and inverses inside it.
    """
    u = table.universe
    elems = tuple(bit_indices(mask))
    for x in elems:
        for y in elems:
            z = table.rows[x][y]
            if (mask >> z) & 1 == 0:
                return (f"{u.elements[x]} * {u.elements[y]} = {u.elements[z]} "
                        "leaves the set")
    for x in elems:
        for y in elems:
            for z in elems:
                a = table.rows[table.rows[x][y]][z]
                b = table.rows[x][table.rows[y][z]]
                if a != b:
                    return (f"({u.elements[x]} * {u.elements[y]}) * {u.elements[z]} = "
                            f"{u.elements[a]} but {u.elements[x]} * "
                            f"({u.elements[y]} * {u.elements[z]}) = {u.elements[b]}")
    e = None
    for c in elems:
        if all(table.rows[x][c] == x and table.rows[c][x] == x for x in elems):
            e = c
            break
    if e is None:
        return "no identity element in the set"
    for x in elems:
        if not any(table.rows[x][y] == e and table.rows[y][x] == e for y in elems):
            return f"{u.elements[x]} has no inverse in the set"
    return None


@dataclass(frozen=True)
class RoughGroupCert:
    """Evidence that (space, G) passed the rough-group axioms.

    `identities` holds every element of the upper approximation acting
    as a two-sided identity on G; `designated_e` is the first of them
    in canonical order, and `inverse_sets` records, for each member of
    G, every inverse in G with respect to that designated identity.
    """

    space: ApproxSpace
    g_mask: int
    upper: int
    identities: tuple[int, ...]
    designated_e: int
    inverse_sets: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "_inv", dict(self.inverse_sets))

    @property
    def table(self) -> CayleyTable:
        return self.space.op

    def inverses_of(self, x: int) -> int:
        return self._inv[x]

    def has_unique_inverses(self) -> bool:
        return all(m.bit_count() == 1 for _, m in self.inverse_sets)

    def unique_inverse_map(self) -> FiniteMap:
        """The inverse assignment as a function G -> G.

        The common-identity reading actually forces uniqueness (if
        x*y = y*x = e = x*y' = y'*x then y = y*(x*y') = (y*x)*y' = y'),
        so this is a defensive guard against hand-built certificates.
        """
        pairs = []
        for x, m in self.inverse_sets:
            if m.bit_count() != 1:
                e_name = self.space.universe.elements[self.designated_e]
                raise AmbiguousInverseError(
                    f"{self.space.universe.elements[x]} has "
                    f"{m.bit_count()} inverses under identity {e_name}"
                )
            pairs.append((x, m.bit_length() - 1))
        return FiniteMap(self.space.universe, self.space.universe,
                         self.g_mask, self.g_mask, tuple(pairs))


def verify_rough_group(
    space: ApproxSpace, g_mask: int
) -> tuple[VerificationReport, RoughGroupCert | None]:
    """Check the four rough-group axioms on (space, G), in order.

    Clause order: products land in the upper approximation;
    associativity over the upper approximation; a common two-sided
    identity there; an inverse in G for every member.  The report
    lists every identity candidate; the certificate designates the
    canonically first one.
    """
    if space.op is None:
        raise InputError("the approximation space has no operation table")
    u = space.universe
    u.check_subset(g_mask, "G")
    if g_mask == 0:
        raise InputError("G is empty")
    table = space.op
    upper = upper_approx(space, g_mask)
    g_elems = tuple(bit_indices(g_mask))
    up_elems = tuple(bit_indices(upper))
    clauses = []

    wit = None
    for x in g_elems:
        for y in g_elems:
            z = table.rows[x][y]
            if (upper >> z) & 1 == 0:
                wit = (f"{u.elements[x]} * {u.elements[y]} = {u.elements[z]} "
                       "escapes the upper approximation")
                break
        if wit:
            break
    clauses.append(Clause("products-in-upper", FAIL if wit else PASS, wit))

    wit = None
    for x in up_elems:
        for y in up_elems:
            xy = table.rows[x][y]
            row_x = table.rows[x]
            for z in up_elems:
                a = table.rows[xy][z]
                b = row_x[table.rows[y][z]]
                if a != b:
                    wit = (f"({u.elements[x]} * {u.elements[y]}) * {u.elements[z]} = "
                           f"{u.elements[a]} but {u.elements[x]} * "
                           f"({u.elements[y]} * {u.elements[z]}) = {u.elements[b]}")
                    break
            if wit:
                break
        if wit:
            break
    clauses.append(Clause("associativity-on-upper", FAIL if wit else PASS, wit))

    identities = tuple(
        c for c in up_elems
        if all(table.rows[x][c] == x and table.rows[c][x] == x for x in g_elems)
    )
    if identities:
        e = identities[0]
        cand = 0
        for c in identities:
            cand |= 1 << c
        clauses.append(Clause(
            "identity-exists", PASS,
            f"designated identity {u.elements[e]}; candidates {u.set_str(cand)}",
        ))
    else:
        e = None
        clauses.append(Clause(
            "identity-exists", FAIL,
            "no element of the upper approximation is a two-sided identity "
            "for all of G",
        ))
        # the definition quantifies per element; note when that weaker
        # reading would have been satisfiable
        per_element = all(
            any(table.rows[x][c] == x and table.rows[c][x] == x for c in up_elems)
            for x in g_elems
        )
        if per_element:
            clauses.append(Clause(
                "per-element-identities", INFO,
                "each member of G has some identity of its own, but no single "
                "element serves all of G",
            ))

    inverse_sets = []
    if e is None:
        clauses.append(Clause("inverses-exist", NOT_APPLICABLE,
                              "skipped: no identity"))
    else:
        wit = None
        for x in g_elems:
            inv = 0
            for y in g_elems:
                if table.rows[x][y] == e and table.rows[y][x] == e:
                    inv |= 1 << y
            if inv == 0 and wit is None:
                wit = (f"{u.elements[x]} has no inverse in G with respect to "
                       f"identity {u.elements[e]}")
            inverse_sets.append((x, inv))
        clauses.append(Clause("inverses-exist", FAIL if wit else PASS, wit))

    report = combine("rough-group", clauses,
                     stats=[("identity-candidates", len(identities)),
                            ("upper-size", popcount(upper))])
    if not report.passed:
        return report, None
    cert = RoughGroupCert(space, g_mask, upper, identities, e, tuple(inverse_sets))
    return report, cert


def verify_rough_subgroup(parent: RoughGroupCert, h_mask: int) -> VerificationReport:
    """H is a rough subgroup when its own products stay inside upper(H)
    and each member has an inverse inside H (for the parent identity)."""
    u = parent.space.universe
    u.check_subset(h_mask, "H")
    if h_mask == 0:
        raise InputError("H is empty")
    if h_mask & ~parent.g_mask:
        raise InputError(
            f"H contains {u.set_str(h_mask & ~parent.g_mask)}, outside G"
        )
    table = parent.table
    upper_h = upper_approx(parent.space, h_mask)
    h_elems = tuple(bit_indices(h_mask))
    e = parent.designated_e
    clauses = []

    wit = None
    for x in h_elems:
        for y in h_elems:
            z = table.rows[x][y]
            if (upper_h >> z) & 1 == 0:
                wit = (f"{u.elements[x]} * {u.elements[y]} = {u.elements[z]} "
                       "escapes the upper approximation of H")
                break
        if wit:
            break
    clauses.append(Clause("products-in-upper", FAIL if wit else PASS, wit))

    wit = None
    for x in h_elems:
        if not any(table.rows[x][y] == e and table.rows[y][x] == e
                   for y in h_elems):
            wit = (f"{u.elements[x]} has no inverse inside H with respect to "
                   f"identity {u.elements[e]}")
            break
    clauses.append(Clause("inverses-in-H", FAIL if wit else PASS, wit))
    return combine("rough-subgroup", clauses,
                   stats=[("upper-size", popcount(upper_h))])


def is_rough_normal(parent: RoughGroupCert, n_mask: int) -> VerificationReport:
    """xN = Nx (as element sets in the universe) for every x in G.

    Being a rough subgroup is a premise: when it fails, the verdict is
    not-applicable rather than fail, carrying the subgroup witness.
    """
    sub = verify_rough_subgroup(parent, n_mask)
    if not sub.passed:
        return combine(
            "rough-normal",
            [Clause("premise-rough-subgroup", NOT_APPLICABLE,
                    sub.first_witness() or "N is not a rough subgroup")],
            verdict=NOT_APPLICABLE,
        )
    u = parent.space.universe
    table = parent.table
    clauses = [Clause("premise-rough-subgroup", PASS)]
    wit = None
    for x in bit_indices(parent.g_mask):
        xn = left_translate(table, x, n_mask)
        nx = right_translate(table, n_mask, x)
        if xn != nx:
            wit = (f"x = {u.elements[x]}: x*N = {u.set_str(xn)} but "
                   f"N*x = {u.set_str(nx)}")
            break
    clauses.append(Clause("cosets-match", FAIL if wit else PASS, wit))
    return combine("rough-normal", clauses)


def enumerate_rough_subgroups(
    parent: RoughGroupCert, cap: int = DEFAULT_SUBGROUP_ENUM_CAP
) -> tuple[int, ...]:
    """All nonempty rough subgroups of G, as masks in ascending order."""
    n = popcount(parent.g_mask)
    if n > cap:
        raise CapExceededError(
            f"subgroup enumeration supports at most {cap} elements, got {n}"
        )
    found = []
    g = parent.g_mask
    # ascending enumeration of the nonempty submasks of g
    sub = 0
    while True:
        sub = (sub - g) & g
        if sub == 0:
            break
        if verify_rough_subgroup(parent, sub).passed:
            found.append(sub)
    return tuple(found)


_CLASSIFICATIONS = ("homomorphism-only", "monomorphism", "epimorphism",
                    "isomorphism")


@dataclass(frozen=True)
class RoughHom:
    """A verified structure-compatible map between two rough groups."""

    source: RoughGroupCert
    target: RoughGroupCert
    fmap: FiniteMap
    classification: str

    def __post_init__(self):
        if self.classification not in _CLASSIFICATIONS:
            raise InputError(f"unknown classification {self.classification!r}")


def verify_rough_homomorphism(
    src: RoughGroupCert,
    tgt: RoughGroupCert,
    fmap: FiniteMap,
    strict: bool = False,
) -> tuple[VerificationReport, RoughHom | None]:
    """Compatibility of a map between the two upper approximations.

    The clause map(x*y) = map(x)*map(y) is checked for every pair
    whose product stays inside the source upper approximation; pairs
    whose product leaves it are unconstrained and only counted.  In
    strict mode a further clause requires that no pair leaves it.
    The map is classified by injectivity and surjectivity onto the
    target upper approximation.
    """
    su = src.space.universe
    tu = tgt.space.universe
    if fmap.domain_universe != su or fmap.domain != src.upper:
        raise InputError("map domain is not the source upper approximation")
    if fmap.codomain_universe != tu or fmap.codomain != tgt.upper:
        raise InputError("map codomain is not the target upper approximation")
    s_table = src.table
    t_table = tgt.table
    up1 = tuple(bit_indices(src.upper))
    constrained = 0
    unconstrained = 0
    wit = None
    first_escape = None
    for x in up1:
        fx = fmap.apply(x)
        for y in up1:
            z = s_table.rows[x][y]
            if (src.upper >> z) & 1 == 0:
                unconstrained += 1
                if first_escape is None:
                    first_escape = (f"{su.elements[x]} * {su.elements[y]} = "
                                    f"{su.elements[z]} leaves the source upper "
                                    "approximation")
                continue
            constrained += 1
            lhs = fmap.apply(z)
            rhs = t_table.rows[fx][fmap.apply(y)]
            if lhs != rhs and wit is None:
                wit = (f"map({su.elements[x]} * {su.elements[y]}) = "
                       f"{tu.elements[lhs]} but map({su.elements[x]}) * "
                       f"map({su.elements[y]}) = {tu.elements[rhs]}")
    clauses = [Clause("compatibility", FAIL if wit else PASS, wit)]
    if strict:
        clauses.append(Clause("upper-closed", FAIL if first_escape else PASS,
                              first_escape))
    injective = fmap.is_injective()
    surjective = fmap.image_mask() == tgt.upper
    if injective and surjective:
        classification = "isomorphism"
    elif surjective:
        classification = "epimorphism"
    elif injective:
        classification = "monomorphism"
    else:
        classification = "homomorphism-only"
    clauses.append(Clause("classification", INFO, classification))
    report = combine(
        "rough-homomorphism", clauses,
        stats=[("constrained-pairs", constrained),
               ("unconstrained-pairs", unconstrained)],
    )
    if not report.passed:
        return report, None
    return report, RoughHom(src, tgt, fmap, classification)


def rough_kernel(hom: RoughHom) -> tuple[int, VerificationReport]:
    """Members of the source G mapped to the target identity, with a
    report on whether that set is a rough normal subgroup."""
    src = hom.source
    e2 = hom.target.designated_e
    kernel = 0
    for x in bit_indices(src.g_mask):
        if hom.fmap.apply(x) == e2:
            kernel |= 1 << x
    u = src.space.universe
    clauses = [Clause("kernel-elements", INFO, u.set_str(kernel))]
    if kernel == 0:
        clauses.append(Clause(
            "kernel-nonempty", NOT_APPLICABLE,
            "empty kernel: no member of G maps to the target identity",
        ))
        return kernel, combine("rough-kernel", clauses,
                               stats=[("kernel-size", 0)],
                               verdict=NOT_APPLICABLE)
    sub = verify_rough_subgroup(src, kernel)
    clauses.append(Clause("kernel-subgroup", sub.verdict, sub.first_witness()))
    if sub.passed:
        normal = is_rough_normal(src, kernel)
        clauses.append(Clause("kernel-normal", normal.verdict,
                              normal.first_witness()))
    else:
        clauses.append(Clause("kernel-normal", NOT_APPLICABLE,
                              "skipped: kernel is not a rough subgroup"))
    return kernel, combine("rough-kernel", clauses,
                           stats=[("kernel-size", popcount(kernel))])


def product_rough_group(
    a: RoughGroupCert, b: RoughGroupCert, cap: int = DEFAULT_UNIVERSE_CAP
) -> RoughGroupCert:
    """Componentwise product certificate; the axioms re-verify by
    construction, so a failure here signals an internal bug."""
    space = product_space(a.space, b.space, cap)
    n2 = b.space.universe.size
    g = product_mask(a.g_mask, b.g_mask, n2)
    report, cert = verify_rough_group(space, g)
    if cert is None:
        raise RuntimeError(
            f"internal error: product of verified rough groups failed "
            f"re-verification: {report.first_witness()}"
        )
    return cert
