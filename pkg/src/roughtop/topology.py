"""Finite topologies stored as explicit families of opens.

Carriers are small, so every check is a direct scan.  On a finite
carrier, closure under pairwise unions already implies closure under
arbitrary unions (any finite union is a chain of pairwise ones, and
there are no infinite ones), so verification only scans pairs.

Bases are represented as plain tuples of open masks; `verify_base` and
`base_at` operate on those directly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .approx import Universe, bit_indices, product_mask, product_universe
from .errors import CapExceededError, InputError
from .report import FAIL, NOT_APPLICABLE, PASS, Clause, VerificationReport, combine

DEFAULT_PRODUCT_CARRIER_CAP = 64
ENUMERATION_MAX_POINTS = 4
# hard ceiling on the number of opens a generated topology may have;
# 2**16 is exactly the discrete topology on a 16-point carrier, the
# largest case the product checks produce
DEFAULT_MAX_OPENS = 1 << 16


def canonical_family(members) -> tuple[int, ...]:
    return tuple(sorted(set(members)))


def family_str(universe: Universe, members) -> str:
    return " ".join(universe.set_str(m) for m in members)


@dataclass(frozen=True)
class FiniteTopology:
    """Family of open sets over a carrier inside a universe.

    The topology axioms are assumed by this type; raw families coming
    from outside go through `from_family`, which validates them with
    `verify_topology`.  The algorithmic constructors below produce
    valid topologies directly.
    """

    universe: Universe
    carrier: int
    opens: tuple[int, ...]

    def __post_init__(self):
        opens = canonical_family(self.opens)
        object.__setattr__(self, "opens", opens)
        object.__setattr__(self, "_open_set", frozenset(opens))

    @classmethod
    def from_family(cls, universe: Universe, carrier: int, family) -> "FiniteTopology":
        rep = verify_topology(universe, carrier, family)
        if rep.verdict != PASS:
            raise InputError(f"family is not a topology: {rep.first_witness()}")
        return cls(universe, carrier, family)

    def is_open(self, mask: int) -> bool:
        return mask in self._open_set

    def is_closed(self, mask: int) -> bool:
        return (self.carrier & ~mask) in self._open_set and mask & ~self.carrier == 0


def verify_topology(universe: Universe, carrier: int, family) -> VerificationReport:
    """Check the finite topology axioms on a raw family of subsets."""
    universe.check_subset(carrier, "carrier")
    fam = canonical_family(family)
    for m in fam:
        if m < 0 or m & ~carrier:
            raise InputError(
                f"family member {universe.set_str(m & universe.all_mask)} is not a subset "
                f"of the carrier {universe.set_str(carrier)}"
            )
    members = frozenset(fam)
    clauses = []
    ok = 0 in members
    clauses.append(Clause("empty-set-member", PASS if ok else FAIL,
                          None if ok else "the empty set is missing from the family"))
    ok = carrier in members
    clauses.append(Clause("carrier-member", PASS if ok else FAIL,
                          None if ok else f"the carrier {universe.set_str(carrier)} is missing"))
    wit = None
    for i, a in enumerate(fam):
        for b in fam[i + 1:]:
            if a | b not in members:
                wit = (f"union of {universe.set_str(a)} and {universe.set_str(b)} = "
                       f"{universe.set_str(a | b)} is not in the family")
                break
        if wit:
            break
    clauses.append(Clause("union-closure", FAIL if wit else PASS, wit))
    wit = None
    for i, a in enumerate(fam):
        for b in fam[i + 1:]:
            if a & b not in members:
                wit = (f"intersection of {universe.set_str(a)} and {universe.set_str(b)} = "
                       f"{universe.set_str(a & b)} is not in the family")
                break
        if wit:
            break
    clauses.append(Clause("intersection-closure", FAIL if wit else PASS, wit))
    return combine("topology", clauses, stats=[("members", len(fam))])


def generate_topology(universe: Universe, carrier: int, subbasis,
                      max_opens: int = DEFAULT_MAX_OPENS) -> FiniteTopology:
    """Smallest topology on the carrier containing every subbasis member.

    On a finite carrier the generated topology is determined by minimal
    neighborhoods: N(p) is the intersection of the carrier with every
    subbasis member containing p, and a set is open exactly when it
    contains N(p) for each of its points.  Opens are then the unions of
    point classes (points sharing a neighborhood) that are downward
    closed under neighborhood inclusion, enumerated by a depth-first
    walk whose cost is proportional to the size of the output.  A naive
    union fixpoint over the basis computes the same family but is
    quadratic in the number of opens, which is prohibitive for the
    near-discrete topologies the product constructions produce.
    """
    universe.check_subset(carrier, "carrier")
    sub = canonical_family(subbasis)
    for m in sub:
        if m < 0 or m & ~carrier:
            raise InputError("subbasis member is not a subset of the carrier")
    nbhd_pts: dict[int, int] = {}
    for p in bit_indices(carrier):
        acc = carrier
        pbit = 1 << p
        for m in sub:
            if m & pbit:
                acc &= m
        nbhd_pts[acc] = nbhd_pts.get(acc, 0) | pbit
    # classes ordered by neighborhood size give a linear extension of
    # the inclusion order, so every prerequisite has a smaller index
    classes = sorted(nbhd_pts, key=lambda m: (m.bit_count(), m))
    k = len(classes)
    pts = [nbhd_pts[m] for m in classes]
    req = []
    for i, ni in enumerate(classes):
        r = 0
        for j in range(i):
            if classes[j] & ~ni == 0:
                r |= 1 << j
        req.append(r)
    opens: list[int] = []

    def walk(i: int, chosen: int, mask: int) -> None:
        if i == k:
            if len(opens) >= max_opens:
                raise CapExceededError(
                    f"generated topology exceeds the cap of {max_opens} open sets"
                )
            opens.append(mask)
            return
        walk(i + 1, chosen, mask)
        if req[i] & ~chosen == 0:
            walk(i + 1, chosen | (1 << i), mask | pts[i])

    walk(0, 0, 0)
    return FiniteTopology(universe, carrier, tuple(opens))


def subspace_topology(top: FiniteTopology, a_mask: int) -> FiniteTopology:
    """Relative topology: intersections of opens with the new carrier."""
    if a_mask < 0 or a_mask & ~top.carrier:
        raise InputError("subspace carrier is not a subset of the carrier")
    return FiniteTopology(top.universe, a_mask, tuple(o & a_mask for o in top.opens))


def product_topology(t1: FiniteTopology, t2: FiniteTopology,
                     cap: int = DEFAULT_PRODUCT_CARRIER_CAP) -> FiniteTopology:
    """Product topology on the pair universe, generated by open rectangles."""
    n = t1.carrier.bit_count() * t2.carrier.bit_count()
    if n > cap:
        raise CapExceededError(
            f"product carrier would have {n} points, exceeding the cap of {cap}"
        )
    universe = product_universe(t1.universe, t2.universe)
    n2 = t2.universe.size
    carrier = product_mask(t1.carrier, t2.carrier, n2)
    rectangles = [product_mask(o1, o2, n2) for o1 in t1.opens for o2 in t2.opens]
    return generate_topology(universe, carrier, rectangles)


def closure(top: FiniteTopology, a_mask: int) -> int:
    """Smallest closed superset of A."""
    if a_mask < 0 or a_mask & ~top.carrier:
        raise InputError("A is not a subset of the carrier")
    acc = top.carrier
    for o in top.opens:
        c = top.carrier & ~o
        if a_mask & ~c == 0:
            acc &= c
    return acc


def interior(top: FiniteTopology, a_mask: int) -> int:
    """Largest open subset of A."""
    if a_mask < 0 or a_mask & ~top.carrier:
        raise InputError("A is not a subset of the carrier")
    acc = 0
    for o in top.opens:
        if o & ~a_mask == 0:
            acc |= o
    return acc


@dataclass(frozen=True)
class FiniteMap:
    """Total map between finite subsets, stored by element index."""

    domain_universe: Universe
    codomain_universe: Universe
    domain: int
    codomain: int
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        pairs = tuple(sorted(self.pairs))
        object.__setattr__(self, "pairs", pairs)
        seen = 0
        table = {}
        for src, dst in pairs:
            if (self.domain >> src) & 1 == 0:
                raise InputError("map assigns an element outside its domain")
            if seen >> src & 1:
                raise InputError("map assigns an element twice")
            if (self.codomain >> dst) & 1 == 0:
                raise InputError("map image escapes its codomain")
            seen |= 1 << src
            table[src] = dst
        if seen != self.domain:
            missing = self.domain_universe.set_str(self.domain & ~seen)
            raise InputError(f"map is not total: missing {missing}")
        object.__setattr__(self, "_table", table)

    @classmethod
    def from_dict(cls, dom_u, cod_u, domain, codomain, mapping: dict) -> "FiniteMap":
        return cls(dom_u, cod_u, domain, codomain, tuple(mapping.items()))

    @classmethod
    def identity(cls, universe: Universe, mask: int) -> "FiniteMap":
        return cls(universe, universe, mask, mask, tuple((i, i) for i in bit_indices(mask)))

    def apply(self, i: int) -> int:
        return self._table[i]

    def image_mask(self, mask: int | None = None) -> int:
        if mask is None:
            mask = self.domain
        acc = 0
        for i in bit_indices(mask & self.domain):
            acc |= 1 << self._table[i]
        return acc

    def preimage(self, target: int) -> int:
        acc = 0
        for src, dst in self.pairs:
            if (target >> dst) & 1:
                acc |= 1 << src
        return acc

    def is_injective(self) -> bool:
        return self.image_mask().bit_count() == self.domain.bit_count()

    def is_bijective(self) -> bool:
        return self.is_injective() and self.image_mask() == self.codomain

    def then(self, g: "FiniteMap") -> "FiniteMap":
        """Composite x -> g(f(x)); requires f's codomain to be g's domain."""
        if self.codomain_universe != g.domain_universe or self.codomain != g.domain:
            raise InputError("maps do not compose: codomain and domain differ")
        return FiniteMap(
            self.domain_universe, g.codomain_universe, self.domain, g.codomain,
            tuple((src, g.apply(dst)) for src, dst in self.pairs),
        )

    def inverse(self) -> "FiniteMap":
        if not self.is_bijective():
            raise InputError("map is not bijective, cannot invert")
        return FiniteMap(
            self.codomain_universe, self.domain_universe, self.codomain, self.domain,
            tuple((dst, src) for src, dst in self.pairs),
        )


def is_continuous(fmap: FiniteMap, dom_top: FiniteTopology,
                  cod_top: FiniteTopology) -> VerificationReport:
    """Preimage scan: every open of the codomain pulls back to an open set."""
    if fmap.domain_universe != dom_top.universe or fmap.codomain_universe != cod_top.universe:
        raise InputError("map universes do not match the topologies")
    if fmap.domain != dom_top.carrier:
        raise InputError("map domain differs from the domain-topology carrier")
    if fmap.codomain != cod_top.carrier:
        raise InputError("map codomain differs from the codomain-topology carrier")
    wit = None
    for o in cod_top.opens:
        pre = fmap.preimage(o)
        if not dom_top.is_open(pre):
            wit = (f"open {cod_top.universe.set_str(o)} has preimage "
                   f"{dom_top.universe.set_str(pre)}, which is not open")
            break
    return combine("continuity", [Clause("preimage-openness", FAIL if wit else PASS, wit)])


def is_homeomorphism(fmap: FiniteMap, dom_top: FiniteTopology,
                     cod_top: FiniteTopology) -> VerificationReport:
    """Bijective plus continuous both ways; stops at the first failure."""
    clauses = []
    if not fmap.is_bijective():
        wit = ("map is not injective" if not fmap.is_injective()
               else "map is not onto its codomain")
        clauses.append(Clause("bijective", FAIL, wit))
        return combine("homeomorphism", clauses)
    clauses.append(Clause("bijective", PASS))
    fwd = is_continuous(fmap, dom_top, cod_top)
    clauses.append(Clause("forward-continuity", fwd.verdict, fwd.first_witness()))
    if fwd.verdict != PASS:
        return combine("homeomorphism", clauses)
    bwd = is_continuous(fmap.inverse(), cod_top, dom_top)
    clauses.append(Clause("inverse-continuity", bwd.verdict, bwd.first_witness()))
    return combine("homeomorphism", clauses)


def verify_base(top: FiniteTopology, members) -> VerificationReport:
    """A base: open members whose unions recover every open set."""
    fam = canonical_family(members)
    clauses = []
    wit = None
    for m in fam:
        if m < 0 or m & ~top.carrier:
            raise InputError("base member is not a subset of the carrier")
        if not top.is_open(m):
            wit = f"member {top.universe.set_str(m)} is not open"
            break
    clauses.append(Clause("members-open", FAIL if wit else PASS, wit))
    wit = None
    if clauses[0].verdict == PASS:
        for o in top.opens:
            u = 0
            for m in fam:
                if m & ~o == 0:
                    u |= m
            if u != o:
                wit = (f"open {top.universe.set_str(o)} is not a union of members; "
                       f"members inside it cover only {top.universe.set_str(u)}")
                break
        clauses.append(Clause("covers-all-opens", FAIL if wit else PASS, wit))
    else:
        clauses.append(Clause("covers-all-opens", NOT_APPLICABLE, "skipped: non-open member"))
    return combine("base", clauses, stats=[("members", len(fam))])


def base_at(members, point: int) -> tuple[int, ...]:
    """Subfamily of base members containing the given element index."""
    return tuple(m for m in canonical_family(members) if (m >> point) & 1)


def enumerate_topologies(universe: Universe, carrier: int) -> tuple[FiniteTopology, ...]:
    """All topologies on the carrier, in canonical order.

    Uses the bijection between topologies on a finite set and preorders:
    opens are exactly the up-closed sets of the specialization preorder,
    and distinct preorders give distinct topologies.  Candidate relation
    count grows as 2^(n^2 - n), so the carrier is capped at
    ENUMERATION_MAX_POINTS points.
    """
    universe.check_subset(carrier, "carrier")
    points = tuple(bit_indices(carrier))
    n = len(points)
    if n > ENUMERATION_MAX_POINTS:
        raise CapExceededError(
            f"topology enumeration supports at most {ENUMERATION_MAX_POINTS} points, got {n}"
        )
    if n == 0:
        return (FiniteTopology(universe, 0, (0,)),)
    offdiag = [(i, j) for i in range(n) for j in range(n) if i != j]
    found = []
    for bitsv in range(1 << len(offdiag)):
        rows = [1 << i for i in range(n)]
        for k, (i, j) in enumerate(offdiag):
            if (bitsv >> k) & 1:
                rows[i] |= 1 << j
        transitive = True
        for i in range(n):
            for j in bit_indices(rows[i]):
                if rows[j] & ~rows[i]:
                    transitive = False
                    break
            if not transitive:
                break
        if not transitive:
            continue
        opens = []
        for s in range(1 << n):
            if all(rows[i] & ~s == 0 for i in bit_indices(s)):
                mask = 0
                for i in bit_indices(s):
                    mask |= 1 << points[i]
                opens.append(mask)
        found.append(FiniteTopology(universe, carrier, tuple(opens)))
    found.sort(key=lambda t: t.opens)
    return tuple(found)
