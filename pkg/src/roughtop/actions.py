"""Rough actions of a topological rough group on a rough space.

An action is a continuous map from (upper(G) x upper(X)) to upper(X)
that is compatible with the group operation and fixes every point
under the designated identity.  Both laws quantify over the upper
approximations, so closure of upper(G) under the operation is an
explicit premise: without it the compatibility law is not even
well-posed, and the verdict is "not applicable" rather than a failure.

Right actions are mirrored onto the same code path: the map takes its
arguments in the other order and the compatibility law composes the
group elements in the other order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .approx import (
    ApproxSpace,
    bit_indices,
    product_mask,
    product_universe,
    upper_approx,
)
from .errors import CapExceededError, InputError
from .groups import (
    group_axioms_witness,
    left_translate,
    right_translate,
    verify_rough_subgroup,
)
from .report import (
    FAIL,
    NOT_APPLICABLE,
    PASS,
    Clause,
    VerificationReport,
    combine,
)
from .topology import (
    FiniteMap,
    FiniteTopology,
    is_continuous,
    is_homeomorphism,
    product_topology,
    subspace_topology,
)
from .trg import TRGCert

SIDES = ("left", "right")
DEFAULT_BIJECTION_CAP = 8


@dataclass(frozen=True)
class RoughSpace:
    """A rough set with a topology on its upper approximation."""

    space: ApproxSpace
    x_mask: int
    upper_x: int
    tau_x: FiniteTopology

    def __post_init__(self):
        if upper_approx(self.space, self.x_mask) != self.upper_x:
            raise InputError(
                "upper_x is not the upper approximation of X in this space"
            )
        if self.tau_x.universe != self.space.universe:
            raise InputError("topology is defined over a different universe")
        if self.tau_x.carrier != self.upper_x:
            raise InputError(
                "topology carrier is not the upper approximation of X"
            )

    @classmethod
    def make(cls, space: ApproxSpace, x_mask: int,
             tau_x: FiniteTopology) -> "RoughSpace":
        return cls(space, x_mask, upper_approx(space, x_mask), tau_x)


@dataclass(frozen=True)
class RoughAction:
    """A verified action, with the evidence report attached."""

    cert: TRGCert
    rspace: RoughSpace
    mu: FiniteMap
    side: str
    evidence: VerificationReport | None

    def __post_init__(self):
        ng = self.cert.universe.size
        nx = self.rspace.space.universe.size
        object.__setattr__(self, "_second_size", nx if self.side == "left" else ng)

    def act(self, g: int, x: int) -> int:
        """mu applied to (g, x), regardless of argument order on disk."""
        if self.side == "left":
            return self.mu.apply(g * self._second_size + x)
        return self.mu.apply(x * self._second_size + g)


def _expected_mu_shape(cert: TRGCert, rspace: RoughSpace, side: str):
    """Pair universe, domain mask, and product topology for the stated side."""
    gu = cert.universe
    xu = rspace.space.universe
    if side == "left":
        pu = product_universe(gu, xu)
        dom = product_mask(cert.upper, rspace.upper_x, xu.size)
        prod_top = product_topology(cert.tau, rspace.tau_x)
    else:
        pu = product_universe(xu, gu)
        dom = product_mask(rspace.upper_x, cert.upper, gu.size)
        prod_top = product_topology(rspace.tau_x, cert.tau)
    return pu, dom, prod_top


def verify_rough_action(
    cert: TRGCert,
    rspace: RoughSpace,
    mu: FiniteMap,
    side: str = "left",
) -> tuple[VerificationReport, RoughAction | None]:
    """Check the action laws and the continuity of mu.

    Clause order: closure of upper(G) under the operation (premise),
    continuity of mu against the product topology, compatibility
    g(g'x) = (gg')x over all of upper(G)^2 x upper(X), and identity
    e*x = x over upper(X).
    """
    if side not in SIDES:
        raise InputError(f"unknown action side {side!r}")
    gu = cert.universe
    xu = rspace.space.universe
    pu, dom, prod_top = _expected_mu_shape(cert, rspace, side)
    if mu.domain_universe != pu or mu.domain != dom:
        raise InputError(
            "action map domain is not upper(G) x upper(X) in the stated order"
        )
    if mu.codomain_universe != xu or mu.codomain != rspace.upper_x:
        raise InputError("action map codomain is not upper(X)")

    table = cert.table
    wit = None
    for x in bit_indices(cert.upper):
        row = table.rows[x]
        for y in bit_indices(cert.upper):
            z = row[y]
            if (cert.upper >> z) & 1 == 0:
                wit = (f"{gu.elements[x]} * {gu.elements[y]} = "
                       f"{gu.elements[z]} leaves the upper approximation of G")
                break
        if wit:
            break
    if wit is not None:
        return combine(
            "rough-action",
            [Clause("premise-upper-closed", NOT_APPLICABLE, wit)],
            verdict=NOT_APPLICABLE,
        ), None
    clauses = [Clause("premise-upper-closed", PASS)]

    cont = is_continuous(mu, prod_top, rspace.tau_x)
    clauses.append(Clause("action-continuity", cont.verdict,
                          cont.first_witness()))

    action = RoughAction(cert, rspace, mu, side, evidence=None)
    g_elems = tuple(bit_indices(cert.upper))
    x_elems = tuple(bit_indices(rspace.upper_x))
    wit = None
    for g in g_elems:
        for gp in g_elems:
            gg = table.rows[g][gp]
            for x in x_elems:
                if side == "left":
                    lhs = action.act(g, action.act(gp, x))
                else:
                    lhs = action.act(gp, action.act(g, x))
                rhs = action.act(gg, x)
                if lhs != rhs:
                    order = (f"{gu.elements[g]}({gu.elements[gp]} {xu.elements[x]})"
                             if side == "left" else
                             f"(({xu.elements[x]} {gu.elements[g]}) {gu.elements[gp]})")
                    wit = (f"{order} = {xu.elements[lhs]} but the combined "
                           f"element gives {xu.elements[rhs]}")
                    break
            if wit:
                break
        if wit:
            break
    clauses.append(Clause("compatibility", FAIL if wit else PASS, wit))

    e = cert.e
    wit = None
    for x in x_elems:
        y = action.act(e, x)
        if y != x:
            wit = (f"identity {gu.elements[e]} moves {xu.elements[x]} to "
                   f"{xu.elements[y]}")
            break
    clauses.append(Clause("identity", FAIL if wit else PASS, wit))

    report = combine(
        "rough-action", clauses,
        stats=[("compatibility-triples",
                len(g_elems) * len(g_elems) * len(x_elems))],
    )
    if not report.passed:
        return report, None
    return report, RoughAction(cert, rspace, mu, side, report)


def is_effective(action: RoughAction) -> tuple[bool, str | None]:
    """Distinct elements of upper(G) act differently on some point."""
    gu = action.cert.universe
    g_elems = tuple(bit_indices(action.cert.upper))
    x_elems = tuple(bit_indices(action.rspace.upper_x))
    for i, g in enumerate(g_elems):
        for gp in g_elems[i + 1:]:
            if all(action.act(g, x) == action.act(gp, x) for x in x_elems):
                return False, (f"{gu.elements[g]} and {gu.elements[gp]} "
                               "act identically on every point")
    return True, None


def is_transitive(action: RoughAction) -> tuple[bool, str | None]:
    """Every point reaches every other under some element of upper(G)."""
    xu = action.rspace.space.universe
    g_elems = tuple(bit_indices(action.cert.upper))
    x_elems = tuple(bit_indices(action.rspace.upper_x))
    for x in x_elems:
        reached = 0
        for g in g_elems:
            reached |= 1 << action.act(g, x)
        missing = action.rspace.upper_x & ~reached
        if missing:
            y = (missing & -missing).bit_length() - 1
            return False, (f"no group element carries {xu.elements[x]} to "
                           f"{xu.elements[y]}")
    return True, None


def translation_map(
    action: RoughAction, g: int
) -> tuple[FiniteMap, VerificationReport]:
    """The self-map x -> g.x of upper(X), verified to be a
    homeomorphism and to satisfy the composition and identity laws.

    Members of G always qualify; other elements of upper(G) qualify
    only when upper(G) is a group in the classical sense, which is what
    makes the inverse translation available.
    """
    cert = action.cert
    gu = cert.universe
    xu = action.rspace.space.universe
    if (cert.upper >> g) & 1 == 0:
        raise InputError(
            f"{gu.elements[g]} is not a member of the upper approximation of G"
        )
    if (cert.g_mask >> g) & 1 == 0:
        why = group_axioms_witness(cert.table, cert.upper)
        if why is not None:
            raise InputError(
                f"{gu.elements[g]} lies outside G and the upper approximation "
                f"is not a group ({why}), so its translation need not invert"
            )
    x_elems = tuple(bit_indices(action.rspace.upper_x))
    fmap = FiniteMap(
        xu, xu, action.rspace.upper_x, action.rspace.upper_x,
        tuple((x, action.act(g, x)) for x in x_elems),
    )
    homeo = is_homeomorphism(fmap, action.rspace.tau_x, action.rspace.tau_x)
    clauses = [Clause("homeomorphism", homeo.verdict, homeo.first_witness())]

    table = cert.table
    wit = None
    for gp in bit_indices(cert.upper):
        gg = table.rows[g][gp] if action.side == "left" else table.rows[gp][g]
        for x in x_elems:
            lhs = action.act(g, action.act(gp, x))
            rhs = action.act(gg, x)
            if lhs != rhs:
                wit = (f"translating by {gu.elements[gp]} then {gu.elements[g]} "
                       f"sends {xu.elements[x]} to {xu.elements[lhs]}, but the "
                       f"combined element sends it to {xu.elements[rhs]}")
                break
        if wit:
            break
    clauses.append(Clause("composition-law", FAIL if wit else PASS, wit))

    wit = None
    for x in x_elems:
        y = action.act(cert.e, x)
        if y != x:
            wit = (f"identity translation moves {xu.elements[x]} to "
                   f"{xu.elements[y]}")
            break
    clauses.append(Clause("identity-translation", FAIL if wit else PASS, wit))
    return fmap, combine("translation", clauses)


def is_rough_homogeneous(
    rspace: RoughSpace, cap: int = DEFAULT_BIJECTION_CAP
) -> tuple[bool, str | None]:
    """Every ordered pair of points of upper(X) is connected by some
    self-homeomorphism, found by enumerating all bijections.

    A bijection of a finite carrier is a homeomorphism exactly when it
    maps every open set to an open set (the induced map on the finite
    family of opens is injective, hence onto).
    """
    xu = rspace.space.universe
    points = tuple(bit_indices(rspace.upper_x))
    n = len(points)
    if n > cap:
        raise CapExceededError(
            f"homogeneity enumerates bijections of up to {cap} points, got "
            f"{n}; use translation maps of a verified action for one-sided "
            "evidence instead"
        )
    opens = rspace.tau_x.opens
    reach = {p: 1 << p for p in points}
    for perm in itertools.permutations(range(n)):
        assign = {points[i]: points[perm[i]] for i in range(n)}
        ok = True
        for o in opens:
            img = 0
            for p in bit_indices(o):
                img |= 1 << assign[p]
            if not rspace.tau_x.is_open(img):
                ok = False
                break
        if ok:
            for p in points:
                reach[p] |= 1 << assign[p]
    for p in points:
        missing = rspace.upper_x & ~reach[p]
        if missing:
            q = (missing & -missing).bit_length() - 1
            return False, (f"no self-homeomorphism carries {xu.elements[p]} "
                           f"to {xu.elements[q]}")
    return True, None


def check_AU_open(cert: TRGCert, a_mask: int, u_mask: int) -> VerificationReport:
    """Products of a subset with an open set stay open, on both sides,
    when the upper approximation is a group."""
    gu = cert.universe
    if a_mask < 0 or a_mask & ~cert.upper:
        raise InputError("A is not a subset of the upper approximation")
    if not cert.tau.is_open(u_mask):
        raise InputError(f"U = {gu.set_str(u_mask)} is not open in the topology")
    why = group_axioms_witness(cert.table, cert.upper)
    if why is not None:
        return combine(
            "AU-open",
            [Clause("premise-upper-group", NOT_APPLICABLE,
                    f"the upper approximation is not a group: {why}")],
            verdict=NOT_APPLICABLE,
        )
    clauses = [Clause("premise-upper-group", PASS)]
    au = 0
    ua = 0
    for a in bit_indices(a_mask):
        au |= left_translate(cert.table, a, u_mask)
        ua |= right_translate(cert.table, u_mask, a)
    wit = None
    if not cert.tau.is_open(au):
        wit = f"A*U = {gu.set_str(au)} is not open"
    clauses.append(Clause("AU-open", FAIL if wit else PASS, wit))
    wit = None
    if not cert.tau.is_open(ua):
        wit = f"U*A = {gu.set_str(ua)} is not open"
    clauses.append(Clause("UA-open", FAIL if wit else PASS, wit))
    return combine("AU-open", clauses)


def check_subgroup_open(
    cert: TRGCert, h_mask: int, w_mask: int
) -> VerificationReport:
    """An open neighborhood of the identity inside a rough subgroup
    makes the subgroup's upper approximation open; each translate of
    the neighborhood is open in the subspace on that set.

    Premises: the upper approximation of G is a group; H is a rough
    subgroup; upper(H) is closed under the operation; W is open in
    tau_G, contains the identity, and sits inside H.
    """
    gu = cert.universe
    premises = []
    why = group_axioms_witness(cert.table, cert.upper)
    premises.append(Clause(
        "premise-upper-group", NOT_APPLICABLE if why else PASS,
        f"the upper approximation is not a group: {why}" if why else None,
    ))
    sub = verify_rough_subgroup(cert.group, h_mask)
    premises.append(Clause(
        "premise-rough-subgroup", PASS if sub.passed else NOT_APPLICABLE,
        None if sub.passed else sub.first_witness(),
    ))
    upper_h = upper_approx(cert.group.space, h_mask)
    wit = None
    for x in bit_indices(upper_h):
        row = cert.table.rows[x]
        for y in bit_indices(upper_h):
            z = row[y]
            if (upper_h >> z) & 1 == 0:
                wit = (f"{gu.elements[x]} * {gu.elements[y]} = "
                       f"{gu.elements[z]} leaves the upper approximation of H")
                break
        if wit:
            break
    premises.append(Clause("premise-upper-H-closed",
                           NOT_APPLICABLE if wit else PASS, wit))
    ok = cert.tau_G.is_open(w_mask)
    premises.append(Clause(
        "premise-W-open", PASS if ok else NOT_APPLICABLE,
        None if ok else f"W = {gu.set_str(w_mask)} is not open in tau_G",
    ))
    ok = (w_mask >> cert.e) & 1 == 1
    premises.append(Clause(
        "premise-identity-in-W", PASS if ok else NOT_APPLICABLE,
        None if ok else f"the identity {gu.elements[cert.e]} is not in W",
    ))
    ok = w_mask & ~h_mask == 0
    premises.append(Clause(
        "premise-W-inside-H", PASS if ok else NOT_APPLICABLE,
        None if ok else f"W = {gu.set_str(w_mask)} is not a subset of H",
    ))
    if any(c.verdict != PASS for c in premises):
        return combine("subgroup-open", premises, verdict=NOT_APPLICABLE)

    clauses = list(premises)
    union = 0
    for h in bit_indices(upper_h):
        union |= left_translate(cert.table, h, w_mask)
    wit = None
    if union != upper_h:
        wit = (f"the union of translates is {gu.set_str(union)}, not "
               f"upper(H) = {gu.set_str(upper_h)}")
    clauses.append(Clause("union-is-upper-H", FAIL if wit else PASS, wit))
    wit = None
    if not cert.tau.is_open(upper_h):
        wit = f"upper(H) = {gu.set_str(upper_h)} is not open in tau"
    clauses.append(Clause("upper-H-open", FAIL if wit else PASS, wit))
    sub_top = subspace_topology(cert.tau, upper_h)
    wit = None
    for h in bit_indices(h_mask):
        hw = left_translate(cert.table, h, w_mask)
        if not sub_top.is_open(hw):
            wit = (f"h = {gu.elements[h]}: h*W = {gu.set_str(hw)} is not open "
                   "in the subspace on upper(H)")
            break
    clauses.append(Clause("translates-open-in-upper-H",
                          FAIL if wit else PASS, wit))
    return combine("subgroup-open", clauses)
