"""Continuous actions of topological rough groups on rough sets."""

import dataclasses

import pytest

from roughtop import ApproxSpace, Partition, Universe
from roughtop.actions import (
    RoughSpace,
    is_effective,
    is_rough_homogeneous,
    is_transitive,
    translation_map,
    verify_rough_action,
)
from roughtop.approx import pair_name, product_mask, product_universe
from roughtop.errors import CapExceededError, InputError
from roughtop.groups import CayleyTable, verify_rough_group
from roughtop.topology import FiniteMap, FiniteTopology
from roughtop.trg import verify_trg

from conftest import cert_of, space_of, trg_of


@pytest.fixture(scope="module")
def sa(ws_selfaction):
    """Everything needed from the self-action fixture: space, trg certs
    under the given and the discrete topology, and both action maps."""
    space = space_of(ws_selfaction, "TA", "PA")
    cert = cert_of(ws_selfaction, "TA", "PA", "GA")
    _, tc_disc = verify_trg(cert, ws_selfaction.topologies["tauD"][1])
    _, tc_given = verify_trg(cert, ws_selfaction.topologies["tauA"][1])
    return {
        "ws": ws_selfaction,
        "space": space,
        "u": ws_selfaction.universes["UA"],
        "tc_disc": tc_disc,
        "tc_given": tc_given,
        "mu": ws_selfaction.maps["mu"][2],
        "mut": ws_selfaction.maps["mut"][2],
    }


def test_rough_space_validation(ws_zmod3):
    space = space_of(ws_zmod3, "TA", "PA")
    u = ws_zmod3.universes["UA"]
    tau = ws_zmod3.topologies["tauA"][1]
    rs = RoughSpace.make(space, ws_zmod3.subsets["GA"][1], tau)
    assert rs.upper_x == u.all_mask
    with pytest.raises(InputError, match=r"not the upper approximation of X"):
        RoughSpace(space, ws_zmod3.subsets["GA"][1], u.mask_of(["1", "2"]), tau)
    shrunk = FiniteTopology(u, u.mask_of(["1", "2"]), (0, u.mask_of(["1", "2"])))
    with pytest.raises(InputError, match=r"carrier is not the upper"):
        RoughSpace.make(space, ws_zmod3.subsets["GA"][1], shrunk)


def test_self_action_under_discrete_topology(sa):
    rs = RoughSpace.make(sa["space"], sa["u"].all_mask,
                         sa["ws"].topologies["tauD"][1])
    rep, action = verify_rough_action(sa["tc_disc"], rs, sa["mu"])
    assert rep.verdict == "pass"
    assert [c.name for c in rep.clauses] == [
        "premise-upper-closed", "action-continuity", "compatibility",
        "identity"]
    assert rep.stats == (("compatibility-triples", 27),)
    assert is_effective(action) == (True, None)
    assert is_transitive(action) == (True, None)


def test_translation_map_laws(sa):
    u = sa["u"]
    rs = RoughSpace.make(sa["space"], u.all_mask, sa["ws"].topologies["tauD"][1])
    _, action = verify_rough_action(sa["tc_disc"], rs, sa["mu"])
    tmap, rep = translation_map(action, u.index("1"))
    assert [u.elements[tmap.apply(u.index(s))] for s in ("0", "1", "2")] == [
        "1", "2", "0"]
    assert rep.verdict == "pass"
    assert [c.name for c in rep.clauses] == [
        "homeomorphism", "composition-law", "identity-translation"]


def test_action_continuity_failure(sa):
    """The addition action is not continuous against the asymmetric
    topology carried by the fixture."""
    rs = RoughSpace.make(sa["space"], sa["u"].all_mask,
                         sa["ws"].topologies["tauA"][1])
    rep, action = verify_rough_action(sa["tc_given"], rs, sa["mu"])
    assert rep.verdict == "fail"
    assert action is None
    assert rep.clause("action-continuity").witness == (
        "open {1} has preimage {(0,1),(1,0),(2,2)}, which is not open")
    assert rep.clause("compatibility").verdict == "pass"
    assert rep.clause("identity").verdict == "pass"


def test_trivial_action(sa):
    """Projection onto the point factor: continuous and lawful, but neither
    effective nor transitive, with canonical first witnesses."""
    rs = RoughSpace.make(sa["space"], sa["u"].all_mask,
                         sa["ws"].topologies["tauA"][1])
    rep, action = verify_rough_action(sa["tc_given"], rs, sa["mut"])
    assert rep.verdict == "pass"
    assert is_effective(action) == (
        False, "0 and 1 act identically on every point")
    assert is_transitive(action) == (
        False, "no group element carries 0 to 1")


def test_action_shape_errors(sa):
    u = sa["u"]
    rs = RoughSpace.make(sa["space"], u.all_mask, sa["ws"].topologies["tauD"][1])
    with pytest.raises(InputError, match=r"domain is not upper\(G\) x upper\(X\)"):
        verify_rough_action(sa["tc_disc"], rs, FiniteMap.identity(u, u.all_mask))
    with pytest.raises(InputError, match=r"unknown action side 'up'"):
        verify_rough_action(sa["tc_disc"], rs, sa["mu"], side="up")


def test_action_right_side(sa):
    """Addition is abelian, so the transposed map acts on the right."""
    u = sa["u"]
    rs = RoughSpace.make(sa["space"], u.all_mask, sa["ws"].topologies["tauD"][1])
    pu = product_universe(u, u)
    pairs = {}
    for x in range(3):
        for g in range(3):
            name = pair_name(u.elements[x], u.elements[g])
            pairs[pu.index(name)] = (x + g) % 3
    mu_r = FiniteMap.from_dict(
        pu, u, product_mask(u.all_mask, u.all_mask, 3), u.all_mask, pairs)
    rep, action = verify_rough_action(sa["tc_disc"], rs, mu_r, side="right")
    assert rep.verdict == "pass"
    assert action.side == "right"


def test_action_premise_not_applicable(sa):
    """A certificate doctored so upper(G) is not closed under the table
    short-circuits to a not-applicable verdict before continuity."""
    u = sa["u"]
    doc_group = dataclasses.replace(
        sa["tc_disc"].group, upper=u.mask_of(["1", "2"]))
    doc = dataclasses.replace(sa["tc_disc"], group=doc_group)
    rs = RoughSpace.make(sa["space"], u.all_mask, sa["ws"].topologies["tauD"][1])
    pu = product_universe(u, u)
    dom = product_mask(doc_group.upper, u.all_mask, u.size)
    pairs = {}
    for g in (1, 2):
        for x in (0, 1, 2):
            name = pair_name(u.elements[g], u.elements[x])
            pairs[pu.index(name)] = (g + x) % 3
    mu = FiniteMap.from_dict(pu, u, dom, u.all_mask, pairs)
    rep, action = verify_rough_action(doc, rs, mu)
    assert rep.verdict == "not-applicable"
    assert action is None
    assert rep.clause("premise-upper-closed").witness == (
        "1 * 2 = 0 leaves the upper approximation of G")


def test_monoid_action_translation_refusal():
    """Acting by an element with no inverse in sight: the verifier accepts
    the action but refuses to certify that translation inverts."""
    u = Universe(("0", "1"))
    table = CayleyTable.from_names(u, [["0", "1"], ["1", "1"]])
    space = ApproxSpace(u, Partition.one_block(u), table)
    _, cert = verify_rough_group(space, 0b01)
    assert u.elements[cert.designated_e] == "0"
    discrete = FiniteTopology(u, 0b11, (0, 1, 2, 3))
    _, tcert = verify_trg(cert, discrete)
    rs = RoughSpace.make(space, 0b11, discrete)
    pu = product_universe(u, u)
    pairs = {}
    for a in range(2):
        for b in range(2):
            name = pair_name(u.elements[a], u.elements[b])
            pairs[pu.index(name)] = a | b
    mu = FiniteMap.from_dict(pu, u, pu.all_mask, 0b11, pairs)
    rep, action = verify_rough_action(tcert, rs, mu)
    assert rep.verdict == "pass"
    assert rep.stats == (("compatibility-triples", 8),)
    _, rep0 = translation_map(action, 0)
    assert rep0.verdict == "pass"
    with pytest.raises(InputError) as exc:
        translation_map(action, 1)
    assert str(exc.value) == (
        "1 lies outside G and the upper approximation is not a group "
        "(1 has no inverse in the set), so its translation need not invert")


def test_homogeneity(sa, ws_zmod3):
    u = sa["u"]
    rs_given = RoughSpace.make(sa["space"], u.all_mask,
                               sa["ws"].topologies["tauA"][1])
    assert is_rough_homogeneous(rs_given) == (
        False, "no self-homeomorphism carries 0 to 1")
    rs_disc = RoughSpace.make(sa["space"], u.all_mask,
                              sa["ws"].topologies["tauD"][1])
    assert is_rough_homogeneous(rs_disc) == (True, None)


def test_homogeneity_two_points():
    u = Universe(("a", "b"))
    space = ApproxSpace(u, Partition.one_block(u))
    asym = RoughSpace.make(space, 0b11, FiniteTopology(u, 0b11, (0, 0b01, 0b11)))
    assert is_rough_homogeneous(asym) == (
        False, "no self-homeomorphism carries a to b")
    sym = RoughSpace.make(space, 0b11, FiniteTopology(u, 0b11, (0, 0b11)))
    assert is_rough_homogeneous(sym) == (True, None)


def test_homogeneity_cap():
    u = Universe(("0", "1", "2", "3"))
    space = ApproxSpace(u, Partition.one_block(u))
    rs = RoughSpace.make(
        space, 0b1111, FiniteTopology(u, 0b1111, tuple(range(16))))
    with pytest.raises(CapExceededError) as exc:
        is_rough_homogeneous(rs, cap=3)
    assert str(exc.value) == (
        "homogeneity enumerates bijections of up to 3 points, got 4; use "
        "translation maps of a verified action for one-sided evidence instead")
    assert is_rough_homogeneous(rs, cap=4) == (True, None)
