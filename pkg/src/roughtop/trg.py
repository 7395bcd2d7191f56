"""Topological rough groups: the two continuity conditions plus the
proposition suite that holds for every verified structure.

A topological rough group is a verified rough group G carrying a
topology tau on its upper approximation such that the product map
(x, y) -> x*y from G x G and the inverse map on G are continuous.  The
product map's codomain is the upper approximation; its continuity is
checked against tau by default, with a strict mode that instead pulls
back only the opens of the subspace topology on G (the two readings
genuinely disagree on some inputs, so every report names the mode).
"""

from __future__ import annotations

from dataclasses import dataclass

from .approx import DEFAULT_UNIVERSE_CAP, bit_indices
from .errors import InputError
from .groups import (
    RoughGroupCert,
    group_axioms_witness,
    product_rough_group,
    set_product,
    verify_rough_subgroup,
)
from .report import (
    FAIL,
    INFO,
    NOT_APPLICABLE,
    PASS,
    Clause,
    VerificationReport,
    combine,
)
from .topology import (
    DEFAULT_PRODUCT_CARRIER_CAP,
    FiniteMap,
    FiniteTopology,
    base_at,
    closure,
    is_continuous,
    is_homeomorphism,
    product_topology,
    subspace_topology,
    verify_base,
)

CODOMAIN_MODES = ("upper", "relative")


@dataclass(frozen=True)
class TRGCert:
    """A rough group certificate with verified continuity evidence."""

    group: RoughGroupCert
    tau: FiniteTopology
    tau_G: FiniteTopology
    inverse_map: FiniteMap
    codomain_mode: str
    evidence: VerificationReport

    @property
    def universe(self):
        return self.group.space.universe

    @property
    def table(self):
        return self.group.table

    @property
    def g_mask(self) -> int:
        return self.group.g_mask

    @property
    def upper(self) -> int:
        return self.group.upper

    @property
    def e(self) -> int:
        return self.group.designated_e


def _product_map_clause(
    group: RoughGroupCert,
    prod_top: FiniteTopology,
    cod_universe,
    cod_opens,
) -> Clause:
    """Continuity of (x, y) -> x*y out of G x G against a family of
    codomain opens, by direct preimage scan.

    The scan works even when products escape the codomain carrier
    (possible in strict mode, where the carrier is G but products only
    promise to stay in the upper approximation): such pairs simply lie
    in no preimage.
    """
    table = group.table
    n = group.space.universe.size
    g_elems = tuple(bit_indices(group.g_mask))
    wit = None
    for v in cod_opens:
        pre = 0
        for x in g_elems:
            row = table.rows[x]
            for y in g_elems:
                if (v >> row[y]) & 1:
                    pre |= 1 << (x * n + y)
        if not prod_top.is_open(pre):
            wit = (f"open {cod_universe.set_str(v)} pulls back to "
                   f"{prod_top.universe.set_str(pre)}, which is not open "
                   "in the product topology on G x G")
            break
    return Clause("product-map-continuity", FAIL if wit else PASS, wit)


def verify_trg(
    group: RoughGroupCert,
    tau: FiniteTopology,
    codomain_topology: str = "upper",
    cap: int = DEFAULT_PRODUCT_CARRIER_CAP,
) -> tuple[VerificationReport, TRGCert | None]:
    """Check the two continuity conditions over a verified rough group.

    Requires tau to live on the upper approximation and every member of
    G to have a unique inverse (the inverse map must be a function; an
    ambiguous certificate raises rather than picking silently).
    """
    if codomain_topology not in CODOMAIN_MODES:
        raise InputError(
            f"unknown codomain topology mode {codomain_topology!r}; "
            f"expected one of {', '.join(CODOMAIN_MODES)}"
        )
    u = group.space.universe
    if tau.universe != u:
        raise InputError("topology is defined over a different universe")
    if tau.carrier != group.upper:
        raise InputError(
            f"topology carrier {u.set_str(tau.carrier)} is not the upper "
            f"approximation {u.set_str(group.upper)}"
        )
    inverse_map = group.unique_inverse_map()
    tau_G = subspace_topology(tau, group.g_mask)
    prod_top = product_topology(tau_G, tau_G, cap=cap)
    clauses = [Clause("codomain-topology", INFO, codomain_topology)]
    cod_opens = tau.opens if codomain_topology == "upper" else tau_G.opens
    clauses.append(_product_map_clause(group, prod_top, u, cod_opens))
    inv_rep = is_continuous(inverse_map, tau_G, tau_G)
    clauses.append(Clause("inverse-map-continuity", inv_rep.verdict,
                          inv_rep.first_witness()))
    report = combine(
        "trg", clauses,
        stats=[("tau-opens", len(tau.opens)),
               ("tau-G-opens", len(tau_G.opens)),
               ("product-opens", len(prod_top.opens))],
    )
    if not report.passed:
        return report, None
    cert = TRGCert(group, tau, tau_G, inverse_map, codomain_topology, report)
    return report, cert


def inverse_of_set(cert: TRGCert, v_mask: int) -> int:
    """Image of a subset of G under the inverse map."""
    u = cert.universe
    if v_mask < 0 or v_mask & ~cert.g_mask:
        raise InputError(f"V = {u.set_str(v_mask)} is not a subset of G")
    return cert.inverse_map.image_mask(v_mask)


def upper_inverse_set(cert: TRGCert, v_mask: int) -> int:
    """Rough inverse of a subset of the upper approximation: every
    element of the upper approximation that inverts some member of V
    with respect to the designated identity.

    Members of G have their usual inverses; elements outside G may
    have none, which makes sets containing them asymmetric.
    """
    u = cert.universe
    if v_mask < 0 or v_mask & ~cert.upper:
        raise InputError(
            f"V = {u.set_str(v_mask)} is not a subset of the upper approximation"
        )
    table = cert.table
    e = cert.e
    acc = 0
    for y in bit_indices(cert.upper):
        for x in bit_indices(v_mask):
            if table.rows[x][y] == e and table.rows[y][x] == e:
                acc |= 1 << y
                break
    return acc


def is_rough_symmetric(cert: TRGCert, v_mask: int) -> bool:
    """V = V^-1 under the inverse map on G."""
    return v_mask == inverse_of_set(cert, v_mask)


def check_translations(cert: TRGCert, a: int) -> VerificationReport:
    """Left and right translation by a member of G are injective and
    continuous from (G, tau_G) into the upper space; the inverse map is
    a homeomorphism of (G, tau_G)."""
    u = cert.universe
    if (cert.g_mask >> a) & 1 == 0:
        raise InputError(f"{u.elements[a]} is not a member of G")
    table = cert.table
    g_elems = tuple(bit_indices(cert.g_mask))
    clauses = []
    for label, pairs in (
        ("left", tuple((x, table.rows[a][x]) for x in g_elems)),
        ("right", tuple((x, table.rows[x][a]) for x in g_elems)),
    ):
        fmap = FiniteMap(u, u, cert.g_mask, cert.upper, pairs)
        wit = None
        if not fmap.is_injective():
            seen = {}
            for x, y in pairs:
                if y in seen:
                    wit = (f"{u.elements[seen[y]]} and {u.elements[x]} both "
                           f"translate to {u.elements[y]}")
                    break
                seen[y] = x
        clauses.append(Clause(f"{label}-injective", FAIL if wit else PASS, wit))
        cont = is_continuous(fmap, cert.tau_G, cert.tau)
        clauses.append(Clause(f"{label}-continuity", cont.verdict,
                              cont.first_witness()))
    homeo = is_homeomorphism(cert.inverse_map, cert.tau_G, cert.tau_G)
    clauses.append(Clause("inverse-homeomorphism", homeo.verdict,
                          homeo.first_witness()))
    return combine("translations", clauses)


def check_G_equals_G_inverse(cert: TRGCert) -> VerificationReport:
    """The inverse image of G is G itself; a failure would mean the
    certificate is internally inconsistent."""
    u = cert.universe
    inv = inverse_of_set(cert, cert.g_mask)
    wit = None
    if inv != cert.g_mask:
        wit = f"G^-1 = {u.set_str(inv)} differs from G = {u.set_str(cert.g_mask)}"
    return combine("G-inverse",
                   [Clause("G-equals-G-inverse", FAIL if wit else PASS, wit)])


def check_open_iff_inverse_open(cert: TRGCert) -> VerificationReport:
    """The inverse map carries opens of tau_G to opens and closeds to
    closeds (both subsets of G, complements taken inside G)."""
    u = cert.universe
    wit = None
    for v in cert.tau_G.opens:
        inv = inverse_of_set(cert, v)
        if not cert.tau_G.is_open(inv):
            wit = (f"V = {u.set_str(v)} is open but V^-1 = {u.set_str(inv)} "
                   "is not")
            break
    clauses = [Clause("open-sets", FAIL if wit else PASS, wit)]
    wit = None
    for v in cert.tau_G.opens:
        c = cert.g_mask & ~v
        inv = inverse_of_set(cert, c)
        if not cert.tau_G.is_closed(inv):
            wit = (f"C = {u.set_str(c)} is closed but C^-1 = {u.set_str(inv)} "
                   "is not")
            break
    clauses.append(Clause("closed-sets", FAIL if wit else PASS, wit))
    return combine("open-inverse", clauses)


def find_symmetric_square_nbhd(
    cert: TRGCert, w_mask: int
) -> tuple[int | None, VerificationReport]:
    """Search for an open V containing the identity with V = V^-1 and
    V*V inside W, scanning the opens of tau in canonical order."""
    u = cert.universe
    if not cert.tau.is_open(w_mask):
        raise InputError(f"W = {u.set_str(w_mask)} is not open in the topology")
    if (w_mask >> cert.e) & 1 == 0:
        raise InputError(
            f"the designated identity {u.elements[cert.e]} is not a member of W"
        )
    clauses = [Clause(
        "inverse-convention", INFO,
        "inverses taken inside the upper approximation with respect to the "
        "designated identity",
    )]
    found = None
    for v in cert.tau.opens:
        if (v >> cert.e) & 1 == 0:
            continue
        if upper_inverse_set(cert, v) != v:
            continue
        if set_product(cert.table, v, v) & ~w_mask:
            continue
        found = v
        break
    if found is None:
        clauses.append(Clause(
            "witness-found", FAIL,
            "no open V with the identity in V, V = V^-1, and V*V inside W",
        ))
    else:
        clauses.append(Clause("witness-found", PASS, f"V = {u.set_str(found)}"))
    return found, combine("symmetric-square", clauses)


def check_topological_group(cert: TRGCert) -> VerificationReport:
    """When G equals its upper approximation, the structure must be a
    classical topological group; otherwise the check does not apply."""
    u = cert.universe
    if cert.g_mask != cert.upper:
        return combine(
            "topological-group",
            [Clause("premise-G-equals-upper", NOT_APPLICABLE,
                    f"G = {u.set_str(cert.g_mask)} differs from its upper "
                    f"approximation {u.set_str(cert.upper)}")],
            verdict=NOT_APPLICABLE,
        )
    clauses = [Clause("premise-G-equals-upper", PASS)]
    wit = group_axioms_witness(cert.table, cert.g_mask)
    clauses.append(Clause("group-axioms", FAIL if wit else PASS, wit))
    prod_top = product_topology(cert.tau, cert.tau)
    clauses.append(_product_map_clause(cert.group, prod_top, u, cert.tau.opens))
    inv_rep = is_continuous(cert.inverse_map, cert.tau_G, cert.tau_G)
    clauses.append(Clause("inversion-continuity", inv_rep.verdict,
                          inv_rep.first_witness()))
    return combine("topological-group", clauses)


def check_closure_symmetric(cert: TRGCert, a_mask: int) -> VerificationReport:
    """Closure (in tau) of a rough symmetric subset of G stays
    symmetric, provided it stays inside G at all."""
    u = cert.universe
    if a_mask < 0 or a_mask & ~cert.g_mask:
        raise InputError(f"A = {u.set_str(a_mask)} is not a subset of G")
    if not is_rough_symmetric(cert, a_mask):
        raise InputError(
            f"A = {u.set_str(a_mask)} is not rough symmetric: "
            f"A^-1 = {u.set_str(inverse_of_set(cert, a_mask))}"
        )
    cl = closure(cert.tau, a_mask)
    if cl & ~cert.g_mask:
        return combine(
            "closure-symmetric",
            [Clause("closure-inside-G", NOT_APPLICABLE,
                    f"closure escapes G: cl(A) = {u.set_str(cl)}")],
            verdict=NOT_APPLICABLE,
        )
    clauses = [Clause("closure-inside-G", PASS, f"cl(A) = {u.set_str(cl)}")]
    inv = inverse_of_set(cert, cl)
    wit = None
    if inv != cl:
        wit = f"cl(A) = {u.set_str(cl)} but cl(A)^-1 = {u.set_str(inv)}"
    clauses.append(Clause("closure-symmetric", FAIL if wit else PASS, wit))
    return combine("closure-symmetric", clauses)


def check_closure_subgroup(cert: TRGCert, h_mask: int) -> VerificationReport:
    """Closure (in tau) of a rough subgroup is again a rough subgroup,
    provided it stays inside G."""
    u = cert.universe
    sub = verify_rough_subgroup(cert.group, h_mask)
    if not sub.passed:
        return combine(
            "closure-subgroup",
            [Clause("premise-rough-subgroup", NOT_APPLICABLE,
                    sub.first_witness() or "H is not a rough subgroup")],
            verdict=NOT_APPLICABLE,
        )
    clauses = [Clause("premise-rough-subgroup", PASS)]
    cl = closure(cert.tau, h_mask)
    if cl & ~cert.g_mask:
        clauses.append(Clause("closure-inside-G", NOT_APPLICABLE,
                              f"closure escapes G: cl(H) = {u.set_str(cl)}"))
        return combine("closure-subgroup", clauses, verdict=NOT_APPLICABLE)
    clauses.append(Clause("closure-inside-G", PASS, f"cl(H) = {u.set_str(cl)}"))
    clsub = verify_rough_subgroup(cert.group, cl)
    clauses.append(Clause("closure-is-subgroup", clsub.verdict,
                          clsub.first_witness()))
    return combine("closure-subgroup", clauses)


def product_trg(a: TRGCert, b: TRGCert, cap: int = DEFAULT_UNIVERSE_CAP) -> TRGCert:
    """Componentwise product; the continuity conditions re-verify by
    construction, so a failure here signals an internal bug."""
    group = product_rough_group(a.group, b.group, cap)
    tau = product_topology(a.tau, b.tau, cap=cap)
    report, cert = verify_trg(group, tau, cap=cap)
    if cert is None:
        raise RuntimeError(
            "internal error: product of verified topological rough groups "
            f"failed re-verification: {report.first_witness()}"
        )
    return cert


def check_base_translation(cert: TRGCert, members) -> VerificationReport:
    """Translating a base at the identity by g yields a base at g in
    the upper space, for every g in G.

    Premises (each reported, any failure makes the check inapplicable):
    the identity lies in G; the upper approximation is closed under the
    operation; G is open in tau; the family is a base of tau_G.
    """
    u = cert.universe
    table = cert.table
    e = cert.e
    premises = []
    ok = (cert.g_mask >> e) & 1 == 1
    premises.append(Clause(
        "premise-identity-in-G", PASS if ok else NOT_APPLICABLE,
        None if ok else f"designated identity {u.elements[e]} lies outside G",
    ))
    wit = None
    for x in bit_indices(cert.upper):
        row = table.rows[x]
        for y in bit_indices(cert.upper):
            z = row[y]
            if (cert.upper >> z) & 1 == 0:
                wit = (f"{u.elements[x]} * {u.elements[y]} = {u.elements[z]} "
                       "leaves the upper approximation")
                break
        if wit:
            break
    premises.append(Clause("premise-upper-closed",
                           NOT_APPLICABLE if wit else PASS, wit))
    ok = cert.tau.is_open(cert.g_mask)
    premises.append(Clause(
        "premise-G-open", PASS if ok else NOT_APPLICABLE,
        None if ok else f"G = {u.set_str(cert.g_mask)} is not open in tau",
    ))
    base_rep = verify_base(cert.tau_G, members)
    premises.append(Clause(
        "premise-base", PASS if base_rep.passed else NOT_APPLICABLE,
        None if base_rep.passed else base_rep.first_witness(),
    ))
    if any(c.verdict != PASS for c in premises):
        return combine("base-translation", premises, verdict=NOT_APPLICABLE)

    clauses = list(premises)
    b_e = base_at(members, e)
    for g in bit_indices(cert.g_mask):
        translated = tuple(set_product(table, 1 << g, o) for o in b_e)
        wit = None
        for o, go in zip(b_e, translated):
            if not cert.tau.is_open(go):
                wit = (f"g*O = {u.set_str(go)} (O = {u.set_str(o)}) is not "
                       "open in tau")
                break
            if (go >> g) & 1 == 0:
                wit = f"g*O = {u.set_str(go)} does not contain {u.elements[g]}"
                break
        if wit is None:
            for w in cert.tau.opens:
                if (w >> g) & 1 == 0:
                    continue
                if not any(go & ~w == 0 for go in translated):
                    wit = (f"open {u.set_str(w)} contains {u.elements[g]} but "
                           "no translated member fits inside it")
                    break
        clauses.append(Clause(f"base-at-{u.elements[g]}",
                              FAIL if wit else PASS, wit))
    return combine("base-translation", clauses,
                   stats=[("base-members-at-identity", len(b_e))])
