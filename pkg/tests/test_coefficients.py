"""Coefficient systems over the orbit category and group actions on them."""

import pytest

from eqtwist.abgroups import AbHom, FgAbGroup
from eqtwist.coefficients import CoefficientSystem, LocalSystem
from eqtwist.groups import FiniteGroup, OrbitCategory
from eqtwist.intmat import IntMatrix

from helpers import c2_category, nonconstant_system, sign_local_system


def test_constant_system_validates():
    cat = c2_category()
    sys_ = CoefficientSystem.constant(cat, FgAbGroup.cyclic(2))
    sys_.validate()
    for m in cat.all_morphisms():
        assert sys_.maps[m.key].equal_as_maps(
            AbHom.identity(sys_.values[m.src.key]))


def test_nonconstant_system_functorial():
    cat = c2_category()
    z = FgAbGroup.free(1)
    z2 = FgAbGroup.cyclic(2)
    sys_ = nonconstant_system(cat, z2, z, [[1]])
    sys_.validate()
    # restriction of the value at the fixed orbit to the free orbit
    m = cat.coset_morphism(cat.by_key["e"], cat.by_key["e,t"], "e")
    assert sys_.maps[m.key].source is z
    assert sys_.maps[m.key].target is z2


def test_functoriality_failure_rejected():
    cat = c2_category()
    z2 = FgAbGroup.cyclic(2)
    values = {s.key: z2 for s in cat.subgroups}
    maps = {}
    for m in cat.all_morphisms():
        if m.key == "e|e|t":
            # an involution must square to the identity; zero does not
            # contradict that, so break functoriality against the
            # composite with the projection instead
            maps[m.key] = AbHom.zero(z2, z2)
        else:
            maps[m.key] = AbHom.identity(z2)
    with pytest.raises(ValueError):
        CoefficientSystem(cat, values, maps)


def test_from_json_constant_and_explicit():
    cat = c2_category()
    sys_ = CoefficientSystem.from_json(
        cat, {"constant": {"gens": 1, "rels": [[4]]}})
    assert sys_.values["e"].normal_form() == (0, (4,))
    data = {"values": {"e": {"gens": 1, "rels": [[2]]},
                       "e,t": {"gens": 1, "rels": []}},
            "maps": {"e|e,t|e": [[1]],
                     "e|e,t|t": [[1]],
                     "e|e|t": [[1]]}}
    sys_ = CoefficientSystem.from_json(cat, data)
    assert sys_.values["e,t"].normal_form() == (1, ())
    assert sys_.values["e"].normal_form() == (0, (2,))


def test_local_system_sign_action():
    cat = OrbitCategory(FiniteGroup.trivial())
    z4 = FgAbGroup.cyclic(4)
    sys_ = CoefficientSystem.constant(cat, z4)
    pi = FiniteGroup.cyclic(4)
    local = sign_local_system(sys_, pi, -1)
    g = pi.names[1]
    skey = cat.subgroups[0].key
    assert local.act(skey, g).apply((1,)) == (3,)
    assert local.act_inv(skey, g).apply((3,)) == (1,)
    sq = pi.mul(g, g)
    assert local.act(skey, sq).equal_as_maps(AbHom.identity(z4))


def test_local_system_rejects_non_action():
    cat = OrbitCategory(FiniteGroup.trivial())
    z4 = FgAbGroup.cyclic(4)
    sys_ = CoefficientSystem.constant(cat, z4)
    pi = FiniteGroup.cyclic(2)
    skey = cat.subgroups[0].key
    # doubling is not invertible on Z/4
    phi = {(skey, "e"): AbHom.identity(z4),
           (skey, "t"): AbHom(z4, z4, IntMatrix([[2]], 1))}
    with pytest.raises(ValueError):
        LocalSystem(sys_, pi, phi)


def test_local_system_must_commute_with_restrictions():
    cat = c2_category()
    z = FgAbGroup.free(1)
    z2 = FgAbGroup.cyclic(2)
    sys_ = nonconstant_system(cat, z2, z, [[1]])
    pi = FiniteGroup.cyclic(2)
    phi = {}
    for s in cat.subgroups:
        val = sys_.values[s.key]
        phi[(s.key, "e")] = AbHom.identity(val)
        # negate only over the free orbit: Z/2 upstairs cannot see it,
        # so the squares commute and this is a legitimate local system
        sign = -1 if s.key == "e" else 1
        phi[(s.key, "t")] = AbHom(val, val,
                                  IntMatrix([[sign]], val.ngens))
    local = LocalSystem(sys_, pi, phi)
    local.validate()
    # but negating modulo nothing downstairs while fixing Z upstairs
    # breaks the intertwining when the values are swapped
    z4 = FgAbGroup.cyclic(4)
    sys4 = nonconstant_system(cat, z4, z, [[1]])
    bad = {}
    for s in cat.subgroups:
        val = sys4.values[s.key]
        bad[(s.key, "e")] = AbHom.identity(val)
        sign = -1 if s.key == "e,t" else 1
        bad[(s.key, "t")] = AbHom(val, val,
                                  IntMatrix([[sign]], val.ngens))
    with pytest.raises(ValueError):
        LocalSystem(sys4, pi, bad)
