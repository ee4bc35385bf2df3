"""Shared builders for the test suite.

Complexes come from the bundled fixture files so the tests exercise the
same inputs the command line tool ships with; twisted setups are
assembled here because the tests want them in many coefficient
variations.
"""

from eqtwist.abgroups import AbHom, FgAbGroup
from eqtwist.bredon import (EdgePathProvider, EquivariantCochains,
                            GroupTwistProvider, TrivialTwistProvider,
                            twisted_complex, untwisted_complex)
from eqtwist.coefficients import CoefficientSystem, LocalSystem
from eqtwist.edgepaths import EdgeActionSystem, PathChoice
from eqtwist.equivariant import GSimplicialSet, fixed_point_system
from eqtwist.fixtures import fixture_path, load_json
from eqtwist.groups import FiniteGroup, OrbitCategory
from eqtwist.intmat import IntMatrix
from eqtwist.simplicial import FiniteSimplicialSet, SimplexRef, nondeg
from eqtwist.twisting import GroupTwist


def load_gx(name: str) -> GSimplicialSet:
    return GSimplicialSet.from_json(load_json(fixture_path(name)))


def circle_gx():
    return load_gx("s1.json")


def refs1_gx():
    return load_gx("refs1.json")


def triangle_gx():
    return load_gx("triangle.json")


def sphere2_gx():
    return load_gx("sphere2.json")


def delta2_gx():
    return load_gx("delta2.json")


def constant_setup(gx, coeff: FgAbGroup):
    cat = OrbitCategory(gx.group)
    system = CoefficientSystem.constant(cat, coeff)
    return cat, system


def sign_local_system(system: CoefficientSystem, pi: FiniteGroup,
                      gen_sign: int) -> LocalSystem:
    """The generator of a cyclic pi acts by gen_sign on every value;
    values must be cyclic on one generator."""
    phi = {}
    for s in system.cat.subgroups:
        val = system.values[s.key]
        powers = {pi.identity: AbHom.identity(val)}
        gen = pi.names[1]
        cur, sign = gen, gen_sign
        while cur not in powers:
            powers[cur] = AbHom(val, val, IntMatrix([[sign]], val.ngens))
            cur, sign = pi.mul(cur, gen), sign * gen_sign
        for u, h in powers.items():
            phi[(s.key, u)] = h
    return LocalSystem(system, pi, phi)


def s1_twisted(coeff: FgAbGroup, order: int = 2, gen_sign: int = -1):
    """The circle whose loop maps to the generator of Z/order, acting
    by gen_sign on the constant coefficients."""
    gx = circle_gx()
    cat, system = constant_setup(gx, coeff)
    pi = FiniteGroup.cyclic(order)
    twist = GroupTwist(gx.space, pi, {"e": pi.names[1]})
    local = sign_local_system(system, pi, gen_sign)
    provider = GroupTwistProvider(local, twist, gx=gx)
    return gx, cat, system, provider


def s1_untwisted(coeff: FgAbGroup):
    gx = circle_gx()
    cat, system = constant_setup(gx, coeff)
    return gx, cat, system, TrivialTwistProvider(system)


def triangle_kappa(coeff: FgAbGroup):
    """The hollow triangle with the holonomy that negates coefficients
    along the far edge."""
    gx = triangle_gx()
    cat, system = constant_setup(gx, coeff)
    ph = fixed_point_system(gx, cat)
    kdata = load_json(fixture_path("twist_triangle.json"))["kappa"]
    choice = PathChoice.from_json(ph, kdata)
    adata = load_json(fixture_path("action_triangle.json"))["edges"]
    acts = EdgeActionSystem.from_json(ph, system, adata)
    return gx, cat, system, EdgePathProvider(ph, choice, acts)


def refs1_setup(coeff: FgAbGroup):
    gx = refs1_gx()
    cat, system = constant_setup(gx, coeff)
    return gx, cat, system, TrivialTwistProvider(system)


def normal_forms(gx, cat, system, provider, nmax: int):
    """Twisted cohomology normal forms in degrees 0..nmax."""
    ecn = min(gx.space.truncation, nmax + 1)
    ec = EquivariantCochains(gx, cat, system, ecn)
    cc = twisted_complex(ec, provider)
    out = []
    for n in range(nmax + 1):
        if n <= ec.nmax:
            out.append(cc.cohomology(n).group.normal_form())
        else:
            out.append((0, ()))
    return out


def c2_category():
    return OrbitCategory(FiniteGroup.cyclic(2))


def nonconstant_system(cat: OrbitCategory, top: FgAbGroup,
                       bottom: FgAbGroup, mat_rows) -> CoefficientSystem:
    """System over the two-subgroup orbit category of Z/2 with distinct
    values; mat_rows gives the restriction from the fixed orbit value
    to the free orbit value."""
    tkey = min((s for s in cat.subgroups), key=lambda s: s.order).key
    fkey = max((s for s in cat.subgroups), key=lambda s: s.order).key
    values = {tkey: top, fkey: bottom}
    maps = {}
    for m in cat.all_morphisms():
        if m.is_identity():
            maps[m.key] = AbHom.identity(values[m.src.key])
        elif m.src.key == tkey and m.tgt.key == fkey:
            maps[m.key] = AbHom(bottom, top,
                                IntMatrix(mat_rows, bottom.ngens))
        else:
            maps[m.key] = AbHom.identity(values[m.src.key])
    return CoefficientSystem(cat, values, maps)
