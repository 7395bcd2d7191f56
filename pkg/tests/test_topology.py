"""Finite topologies: verification, generation, products, maps, enumeration."""

import pytest

from roughtop import Universe
from roughtop.errors import CapExceededError, InputError
from roughtop.report import serialize_report
from roughtop.topology import (
    FiniteMap,
    FiniteTopology,
    base_at,
    canonical_family,
    closure,
    enumerate_topologies,
    family_str,
    generate_topology,
    interior,
    is_continuous,
    is_homeomorphism,
    product_topology,
    subspace_topology,
    verify_base,
    verify_topology,
)

from conftest import oracle_all_topologies, oracle_close_family, oracle_is_topology


@pytest.fixture
def u3():
    return Universe(("0", "1", "2"))


@pytest.fixture
def topA(u3):
    return FiniteTopology(u3, 0b111, (0, 0b010, 0b100, 0b110, 0b111))


def test_verify_topology_passes_fixture(ws_s4):
    u = ws_s4.universes["UB"]
    top = ws_s4.topologies["tauB"][1]
    assert len(top.opens) == 5
    rep = verify_topology(u, top.carrier, top.opens)
    assert rep.verdict == "pass"
    assert all(c.verdict == "pass" for c in rep.clauses)
    assert rep.stats == (("members", 5),)


def test_verify_topology_union_witness(ws_s4):
    u = ws_s4.universes["UB"]
    top = ws_s4.topologies["tauB"][1]
    drop = u.mask_of(["1", "(12)", "(123)", "(132)"])
    rep = verify_topology(u, top.carrier, [m for m in top.opens if m != drop])
    assert rep.verdict == "fail"
    assert rep.clause("union-closure").witness == (
        "union of {(12)} and {1,(123),(132)} = {1,(12),(123),(132)} "
        "is not in the family")
    assert rep.clause("intersection-closure").verdict == "pass"


def test_verify_topology_missing_empty_set(ws_s4):
    u = ws_s4.universes["UB"]
    top = ws_s4.topologies["tauB"][1]
    rep = verify_topology(u, top.carrier, [m for m in top.opens if m != 0])
    assert rep.verdict == "fail"
    assert rep.clause("empty-set-member").witness == (
        "the empty set is missing from the family")
    assert rep.clause("intersection-closure").witness == (
        "intersection of {(12)} and {1,(123),(132)} = {} is not in the family")


def test_verify_topology_intersection_witness():
    u = Universe(("a", "b", "c"))
    rep = verify_topology(
        u, 0b111, [0, u.mask_of(["a", "b"]), u.mask_of(["b", "c"]), 0b111])
    assert rep.verdict == "fail"
    assert rep.clause("intersection-closure").witness == (
        "intersection of {a,b} and {b,c} = {b} is not in the family")


def test_verify_topology_rejects_stray_member(u3):
    with pytest.raises(InputError, match=r"not a subset of the carrier"):
        verify_topology(u3, 0b110, [0, 0b110, 0b001])


def test_generate_topology_trivial(u3):
    top = generate_topology(u3, 0b111, [])
    assert top.opens == (0, 0b111)


def test_generate_topology_idempotent(topA, u3):
    again = generate_topology(u3, 0b111, topA.opens)
    assert again.opens == topA.opens


def test_generate_matches_closure_oracle_on_rectangles(ws_product):
    """Rectangle subbasis over the pair universe closes to the fixture family."""
    u = ws_product.universes["UP"]
    top = ws_product.topologies["tauP"][1]
    tau_a = [0, 0b010, 0b100, 0b110, 0b111]
    rects = []
    for m1 in tau_a:
        for m2 in tau_a:
            rect = 0
            for i in range(3):
                for j in range(3):
                    if (m1 >> i) & 1 and (m2 >> j) & 1:
                        rect |= 1 << (i * 3 + j)
            rects.append(rect)
    gen = generate_topology(u, u.all_mask, rects)
    assert gen.opens == top.opens
    assert len(gen.opens) == 48
    oracle = oracle_close_family(u.all_mask, rects)
    assert set(gen.opens) == set(oracle)
    assert oracle_is_topology(u.all_mask, gen.opens)


def test_generate_topology_cap():
    u = Universe(tuple(str(i) for i in range(17)))
    with pytest.raises(CapExceededError, match=r"cap of 65536 open sets"):
        generate_topology(u, (1 << 17) - 1, [1 << i for i in range(17)])


def test_subspace_topology(topA, u3, ws_s4):
    sub = subspace_topology(topA, 0b011)
    assert sub.carrier == 0b011
    assert sub.opens == (0, 0b010, 0b011)
    topB = ws_s4.topologies["tauB"][1]
    uB = ws_s4.universes["UB"]
    w = uB.mask_of(["1", "(12)", "(123)", "(132)"])
    subB = subspace_topology(topB, w)
    assert family_str(uB, subB.opens) == (
        "{} {(12)} {1,(123),(132)} {1,(12),(123),(132)}")
    assert subspace_topology(topA, topA.carrier) == topA


def test_subspace_requires_subset(topA):
    with pytest.raises(InputError):
        subspace_topology(topA, 0b1011)


def test_product_topology_values(topA, u3, ws_product):
    prod = product_topology(topA, topA)
    assert len(prod.opens) == 48
    assert canonical_family(prod.opens) == ws_product.topologies["tauP"][1].opens
    indiscrete = FiniteTopology(u3, 0b111, (0, 0b111))
    assert len(product_topology(indiscrete, indiscrete).opens) == 2
    discrete = FiniteTopology(u3, 0b111, tuple(range(8)))
    assert len(product_topology(discrete, discrete).opens) == 512


def test_product_topology_cap():
    u9 = Universe(tuple(str(i) for i in range(9)))
    big = FiniteTopology(u9, (1 << 9) - 1, tuple(range(1 << 9)))
    with pytest.raises(CapExceededError, match=r"81 points, exceeding the cap of 64"):
        product_topology(big, big)


def test_closure_interior_values(topA, u3):
    assert u3.set_str(closure(topA, 0b100)) == "{0,2}"
    assert u3.set_str(interior(topA, 0b101)) == "{2}"
    assert closure(topA, 0) == 0
    assert interior(topA, 0b111) == 0b111


def test_finite_map_validation(u3):
    with pytest.raises(InputError, match=r"not total: missing \{2\}"):
        FiniteMap.from_dict(u3, u3, 0b111, 0b111, {0: 0, 1: 1})
    with pytest.raises(InputError, match=r"outside its domain"):
        FiniteMap.from_dict(u3, u3, 0b011, 0b111, {0: 0, 1: 1, 2: 2})
    with pytest.raises(InputError, match=r"escapes its codomain"):
        FiniteMap.from_dict(u3, u3, 0b011, 0b001, {0: 0, 1: 1})
    with pytest.raises(InputError, match=r"assigns an element twice"):
        FiniteMap(u3, u3, 0b001, 0b111, ((0, 0), (0, 1)))


def test_finite_map_operations(u3):
    swap = FiniteMap.from_dict(u3, u3, 0b111, 0b111, {0: 0, 1: 2, 2: 1})
    assert swap.apply(1) == 2
    assert swap.image_mask() == 0b111
    assert swap.preimage(0b010) == 0b100
    assert swap.is_bijective()
    assert swap.then(swap) == FiniteMap.identity(u3, 0b111)
    assert swap.inverse() == swap
    const = FiniteMap.from_dict(u3, u3, 0b111, 0b111, {0: 0, 1: 0, 2: 0})
    assert not const.is_injective()
    with pytest.raises(InputError, match=r"not bijective"):
        const.inverse()
    half = FiniteMap.from_dict(u3, u3, 0b011, 0b011, {0: 1, 1: 0})
    with pytest.raises(InputError, match=r"do not compose"):
        swap.then(half)


def test_is_continuous(topA, u3):
    ident = FiniteMap.identity(u3, 0b111)
    assert is_continuous(ident, topA, topA).verdict == "pass"
    const = FiniteMap.from_dict(u3, u3, 0b111, 0b111, {0: 0, 1: 0, 2: 0})
    assert is_continuous(const, topA, topA).verdict == "pass"
    indiscrete = FiniteTopology(u3, 0b111, (0, 0b111))
    rep = is_continuous(ident, indiscrete, topA)
    assert rep.verdict == "fail"
    assert rep.clause("preimage-openness").witness == (
        "open {1} has preimage {1}, which is not open")
    half = FiniteMap.from_dict(u3, u3, 0b011, 0b111, {0: 0, 1: 1})
    with pytest.raises(InputError, match=r"domain differs"):
        is_continuous(half, topA, topA)


def test_is_homeomorphism(topA, u3):
    swap = FiniteMap.from_dict(u3, u3, 0b111, 0b111, {0: 0, 1: 2, 2: 1})
    rep = is_homeomorphism(swap, topA, topA)
    assert rep.verdict == "pass"
    assert [c.name for c in rep.clauses] == [
        "bijective", "forward-continuity", "inverse-continuity"]
    const = FiniteMap.from_dict(u3, u3, 0b111, 0b111, {0: 0, 1: 0, 2: 0})
    rep2 = is_homeomorphism(const, topA, topA)
    assert rep2.verdict == "fail"
    assert rep2.clause("bijective").witness == "map is not injective"
    discrete = FiniteTopology(u3, 0b111, tuple(range(8)))
    rep3 = is_homeomorphism(FiniteMap.identity(u3, 0b111), discrete, topA)
    assert rep3.verdict == "fail"
    assert rep3.clause("forward-continuity").verdict == "pass"
    assert rep3.clause("inverse-continuity").witness == (
        "open {0} has preimage {0}, which is not open")


def test_verify_base(topA, u3):
    good = verify_base(topA, [0b010, 0b100, 0b111])
    assert good.verdict == "pass"
    rep = verify_base(topA, [0b010, 0b100])
    assert rep.verdict == "fail"
    assert rep.clause("covers-all-opens").witness == (
        "open {0,1,2} is not a union of members; members inside it cover only {1,2}")
    rep2 = verify_base(topA, [0b111])
    assert rep2.clause("covers-all-opens").witness == (
        "open {1} is not a union of members; members inside it cover only {}")
    rep3 = verify_base(topA, [0b010, 0b100, 0b101, 0b111])
    assert rep3.verdict == "fail"
    assert rep3.clause("members-open").witness == "member {0,2} is not open"


def test_base_at(u3):
    members = [0b010, 0b100, 0b110, 0b111]
    assert base_at(members, 1) == (0b010, 0b110, 0b111)
    assert base_at(members, 0) == (0b111,)


def test_enumerate_topologies_counts():
    for n, count in ((1, 1), (2, 4), (3, 29), (4, 355)):
        u = Universe(tuple(str(i) for i in range(n)))
        tops = enumerate_topologies(u, (1 << n) - 1)
        assert len(tops) == count
        assert len({t.opens for t in tops}) == count


def test_enumerate_topologies_matches_oracle():
    u = Universe(("0", "1", "2"))
    tops = enumerate_topologies(u, 0b111)
    assert {t.opens for t in tops} == set(oracle_all_topologies(3))
    assert tops[0].opens == tuple(range(8))


def test_enumerate_topologies_partial_carrier():
    u = Universe(("0", "1", "2", "3"))
    assert len(enumerate_topologies(u, 0b0011)) == 4


def test_enumerate_topologies_cap():
    u = Universe(tuple(str(i) for i in range(5)))
    with pytest.raises(CapExceededError, match=r"at most 4 points, got 5"):
        enumerate_topologies(u, 0b11111)


def test_finite_topology_canonicalizes_and_validates(u3):
    top = FiniteTopology(u3, 0b111, (0b111, 0, 0b010, 0b110, 0b100))
    assert top.opens == (0, 0b010, 0b100, 0b110, 0b111)
    assert top.is_open(0b110) and not top.is_open(0b001)
    assert top.is_closed(0b001)
    with pytest.raises(InputError, match=r"not a subset of the carrier"):
        FiniteTopology.from_family(u3, 0b011, (0, 0b011, 0b100))
    with pytest.raises(InputError, match=r"family is not a topology: union of"):
        FiniteTopology.from_family(u3, 0b111, (0, 0b010, 0b100, 0b111))


def test_report_serialization_shape(topA, u3):
    rep = verify_topology(u3, 0b111, topA.opens)
    text = serialize_report(rep)
    assert text.splitlines()[0] == "PASS topology"
    assert text.endswith("stat members=5\n")
    js = serialize_report(rep, fmt="json")
    import json

    payload = json.loads(js)
    assert payload["verdict"] == "pass"
    assert payload["stats"] == {"members": 5}
