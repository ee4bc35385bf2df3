"""Group actions on complexes, fixed complexes, orbit decompositions."""

import pytest

from eqtwist.equivariant import GSimplicialSet, fixed_point_system
from eqtwist.groups import FiniteGroup, OrbitCategory
from eqtwist.simplicial import FiniteSimplicialSet, SimplexRef, nondeg

from helpers import load_gx, refs1_gx


def test_refs1_orbits():
    gx = refs1_gx()
    vertex_orbits = gx.orbits(0)
    assert sorted(o.rep for o in vertex_orbits) == ["a", "b"]
    for o in vertex_orbits:
        assert o.stab_key == "e,t"
        assert o.members == (o.rep,)
    edge_orbits = gx.orbits(1)
    assert len(edge_orbits) == 1
    orb = edge_orbits[0]
    assert sorted(orb.members) == ["p", "q"]
    assert orb.stab_key == "e"
    # the transporter carries the representative onto each member
    for cid in orb.members:
        assert gx.perms[orb.transporters[cid]][orb.rep] == cid


def test_refs1_fixed_complexes():
    gx = refs1_gx()
    cat = OrbitCategory(gx.group)
    ph = fixed_point_system(gx, cat)
    full = ph.complexes["e"]
    assert sorted(full.cells[1]) == ["p", "q"]
    fixed = ph.complexes["e,t"]
    assert sorted(fixed.cells[0]) == ["a", "b"]
    assert fixed.cells[1] == []
    # conjugation by t swaps the two arcs on the free complex
    flip = ph.maps["e|e|t"]
    assert flip.values["p"] == nondeg("q")
    assert flip.values["q"] == nondeg("p")


def test_free_action_has_empty_fixed_complex():
    gx = load_gx("sphere0.json")
    cat = OrbitCategory(gx.group)
    ph = fixed_point_system(gx, cat)
    assert ph.complexes["e,t"].cells[0] == []
    orbs = gx.orbits(0)
    assert len(orbs) == 1
    assert sorted(orbs[0].members) == ["n", "s"]


def test_action_closure_from_generators():
    # a four cycle given only by its generator
    c4 = FiniteGroup.cyclic(4)
    fs = FiniteSimplicialSet(1, {0: ["0", "1", "2", "3"]}, {})
    rot = {str(k): str((k + 1) % 4) for k in range(4)}
    gx = GSimplicialSet(fs, c4, {c4.names[1]: rot})
    two = c4.mul(c4.names[1], c4.names[1])
    assert gx.perms[two]["0"] == "2"
    assert len(gx.orbits(0)) == 1


def test_action_must_commute_with_faces():
    # swap the two vertices of an edge without moving the edge
    fs = FiniteSimplicialSet(
        1, {0: ["x", "y"], 1: ["f"]},
        {"f": (SimplexRef((), "y"), SimplexRef((), "x"))})
    c2 = FiniteGroup.cyclic(2)
    with pytest.raises(ValueError):
        GSimplicialSet(fs, c2, {"t": {"x": "y", "y": "x", "f": "f"}})


def test_identity_must_be_identity():
    gx = refs1_gx()
    cat = OrbitCategory(gx.group)
    ph = fixed_point_system(gx, cat)
    ident = ph.maps["e|e|e"]
    for ids in ph.complexes["e"].cells.values():
        for cid in ids:
            assert ident.values[cid] == nondeg(cid)
