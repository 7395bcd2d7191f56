"""Structure-preserving maps between two topological rough groups.

A topological rough group homomorphism is a rough homomorphism between
the upper approximations that is also continuous for the two given
topologies.  A homeomorphism additionally requires bijectivity with a
continuous, structure-preserving inverse; the identity composites are
checked on the source G (the definition's reading) and on both full
upper approximations (the stronger conventional reading), with each
verdict reported separately.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groups import RoughHom, verify_rough_homomorphism
from .report import (
    FAIL,
    INFO,
    PASS,
    Clause,
    VerificationReport,
    combine,
)
from .topology import FiniteMap, is_continuous
from .trg import TRGCert


@dataclass(frozen=True)
class TRGHom:
    """A verified continuous rough homomorphism between certificates."""

    src: TRGCert
    tgt: TRGCert
    fmap: FiniteMap
    algebra: RoughHom
    continuity: VerificationReport

    @property
    def classification(self) -> str:
        return self.algebra.classification


def verify_trg_homomorphism(
    src: TRGCert,
    tgt: TRGCert,
    fmap: FiniteMap,
    strict: bool = False,
) -> tuple[VerificationReport, TRGHom | None]:
    """Both halves of the definition: algebra then continuity."""
    algebra_rep, algebra = verify_rough_homomorphism(
        src.group, tgt.group, fmap, strict=strict
    )
    clauses = [Clause("rough-homomorphism", algebra_rep.verdict,
                      algebra_rep.first_witness())]
    cont = is_continuous(fmap, src.tau, tgt.tau)
    clauses.append(Clause("continuity", cont.verdict, cont.first_witness()))
    cls_clause = algebra_rep.clause("classification")
    classification = cls_clause.witness if cls_clause else "homomorphism-only"
    clauses.append(Clause("classification", INFO, classification))
    report = combine("trg-homomorphism", clauses, stats=algebra_rep.stats)
    if not report.passed or algebra is None:
        return report, None
    return report, TRGHom(src, tgt, fmap, algebra, cont)


def verify_trg_homeomorphism(hom: TRGHom) -> VerificationReport:
    """Bijectivity plus a verified inverse homomorphism.

    The inverse is the set-theoretic one, so the composite-identity
    clauses hold by construction once bijectivity does; they are still
    checked explicitly, on the source G and on both upper
    approximations.  The image of G under the map is reported for
    information only: the definition does not say whether a
    homeomorphism must carry the source G onto the target G.
    """
    fmap = hom.fmap
    su = hom.src.universe
    tu = hom.tgt.universe
    if not fmap.is_bijective():
        wit = ("map is not injective" if not fmap.is_injective()
               else "map is not onto the target upper approximation")
        return combine("trg-homeomorphism", [Clause("bijective", FAIL, wit)])
    clauses = [Clause("bijective", PASS)]
    inverse = fmap.inverse()
    inv_rep, _ = verify_trg_homomorphism(hom.tgt, hom.src, inverse)
    clauses.append(Clause("inverse-homomorphism", inv_rep.verdict,
                          inv_rep.first_witness()))

    wit = None
    for x in range(su.size):
        if (hom.src.g_mask >> x) & 1 and inverse.apply(fmap.apply(x)) != x:
            wit = f"composite moves {su.elements[x]}"
            break
    clauses.append(Clause("composite-identity-on-source-G",
                          FAIL if wit else PASS, wit))
    wit = None
    for x in range(su.size):
        if (hom.src.upper >> x) & 1 and inverse.apply(fmap.apply(x)) != x:
            wit = f"composite moves {su.elements[x]}"
            break
    clauses.append(Clause("composite-identity-on-source-upper",
                          FAIL if wit else PASS, wit))
    wit = None
    for y in range(tu.size):
        if (hom.tgt.upper >> y) & 1 and fmap.apply(inverse.apply(y)) != y:
            wit = f"composite moves {tu.elements[y]}"
            break
    clauses.append(Clause("composite-identity-on-target-upper",
                          FAIL if wit else PASS, wit))
    g_image = fmap.image_mask(hom.src.g_mask)
    clauses.append(Clause(
        "G-image", INFO,
        f"map carries G to {tu.set_str(g_image)}; the target G is "
        f"{tu.set_str(hom.tgt.g_mask)} (agreement is not asserted)",
    ))
    return combine("trg-homeomorphism", clauses)
