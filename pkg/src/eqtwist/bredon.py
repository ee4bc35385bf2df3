"""Bredon cochains of a finite group action, with twisted coboundaries.

The degree-n cochain group is the direct sum, over orbit representatives
of nondegenerate n-cells, of the coefficient value at the orbit type
G/G_sigma.  A cochain is evaluated at an arbitrary cell x = g.sigma
through the coefficient map of the orbit morphism determined by g, and
vanishes on degenerate simplices.

The coboundary is the alternating face sum; in the twisted variant the
d_0 term is corrected by an automorphism of the coefficient value that
depends on the simplex.  Three sources for that correction are
provided: none at all, a group-valued twisting function pushed through
a compatible action on the coefficients, and edge-path transport where
the correction is the holonomy of the loop spanned by the leading edge.
Squaring to zero is re-checked on the assembled integer matrices, so a
bad twist cannot slip through silently.
"""

from __future__ import annotations

from .abgroups import (AbHom, CochainComplex, FgAbGroup, assemble_hom,
                       direct_sum)
from .coefficients import CoefficientSystem, LocalSystem
from .edgepaths import EdgeActionSystem, PathChoice, loop_of_simplex
from .equivariant import GSimplicialSet, OGComplex
from .groups import OrbitCategory
from .intmat import IntMatrix
from .simplicial import SimplexRef, nondeg
from .twisting import GroupTwist


class EquivariantCochains:
    """Cochain groups of a G-complex valued in a coefficient system.

    nmax is the top degree carried; coboundaries out of degree nmax are
    not formed, so nmax should exceed the top dimension with cells
    whenever the top cohomology is wanted exactly.
    """

    def __init__(self, gx: GSimplicialSet, cat: OrbitCategory,
                 system: CoefficientSystem, nmax: int):
        if nmax > gx.space.truncation:
            raise ValueError("nmax exceeds the truncation of the complex")
        self.gx = gx
        self.cat = cat
        self.system = system
        self.nmax = nmax
        self.orbits = {n: gx.orbits(n) for n in range(nmax + 1)}
        self.summands = {n: [system.values[o.stab_key] for o in self.orbits[n]]
                         for n in range(nmax + 1)}
        self.groups = {}
        self.offsets = {}
        for n in range(nmax + 1):
            self.groups[n], self.offsets[n] = direct_sum(self.summands[n])
        self.orbit_index = {}
        for n in range(nmax + 1):
            idx = {}
            for j, o in enumerate(self.orbits[n]):
                for cid in o.members:
                    idx[cid] = (j, o)
            self.orbit_index[n] = idx

    def describe(self, n: int) -> str:
        return self.groups[n].describe()


# twist providers ----------------------------------------------------

class TrivialTwistProvider:
    """No correction: the d_0 term enters untwisted."""

    def __init__(self, system: CoefficientSystem):
        self.system = system

    def phi_hom(self, skey: str, xref: SimplexRef) -> AbHom:
        return AbHom.identity(self.system.values[skey])

    def phi_inv_hom(self, skey: str, xref: SimplexRef) -> AbHom:
        return AbHom.identity(self.system.values[skey])


class GroupTwistProvider:
    """Correction by phi(tau(x))^{-1} for a group-valued twisting function
    and an action phi of the group on the coefficients."""

    def __init__(self, local: LocalSystem, twist: GroupTwist,
                 gx: GSimplicialSet | None = None):
        self.local = local
        self.twist = twist
        if gx is not None:
            twist.check_equivariant(gx)

    def phi_hom(self, skey: str, xref: SimplexRef) -> AbHom:
        return self.local.act(skey, self.twist.value(xref))

    def phi_inv_hom(self, skey: str, xref: SimplexRef) -> AbHom:
        return self.local.act_inv(skey, self.twist.value(xref))


class EdgePathProvider:
    """Correction by the inverse holonomy of the loop carried by the
    leading edge, with loops read off inside each fixed complex."""

    def __init__(self, ph: OGComplex, choice: PathChoice,
                 actions: EdgeActionSystem):
        self.ph = ph
        self.choice = choice
        self.actions = actions

    def phi_hom(self, skey: str, xref: SimplexRef) -> AbHom:
        fc = self.ph.complexes[skey]
        w = loop_of_simplex(fc, self.choice, skey, xref)
        return self.actions.act(skey, w)

    def phi_inv_hom(self, skey: str, xref: SimplexRef) -> AbHom:
        fc = self.ph.complexes[skey]
        w = loop_of_simplex(fc, self.choice, skey, xref)
        return self.actions.act(skey, w.inverse())


# coboundaries -------------------------------------------------------

def _face_block(ec: EquivariantCochains, hkey: str, n: int,
                fref: SimplexRef) -> tuple[int, AbHom] | None:
    """Column index and evaluation hom for one face of an orbit rep."""
    if fref.word:
        return None
    j, orb = ec.orbit_index[n][fref.base]
    g = orb.transporters[fref.base]
    m = ec.cat.coset_morphism(ec.cat.by_key[hkey],
                              ec.cat.by_key[orb.stab_key], g)
    return j, ec.system.maps[m.key]


def twisted_coboundary(ec: EquivariantCochains, provider, n: int) -> AbHom:
    """delta^n with the d_0 term corrected by the provider."""
    blocks: dict[tuple[int, int], IntMatrix] = {}
    for xi, ox in enumerate(ec.orbits[n + 1]):
        hkey = ox.stab_key
        xref = nondeg(ox.rep)
        for i in range(n + 2):
            fb = _face_block(ec, hkey, n, ec.gx.space.face(i, xref))
            if fb is None:
                continue
            j, hom = fb
            if i == 0:
                hom = provider.phi_inv_hom(hkey, xref).compose(hom)
            mat = hom.matrix if i % 2 == 0 else -hom.matrix
            prev = blocks.get((xi, j))
            blocks[(xi, j)] = mat if prev is None else prev + mat
    return assemble_hom(ec.summands[n], ec.summands[n + 1], blocks,
                        source_sum=ec.groups[n],
                        target_sum=ec.groups[n + 1])


def coboundary(ec: EquivariantCochains, n: int) -> AbHom:
    """The untwisted delta^n, assembled without any provider branch."""
    blocks: dict[tuple[int, int], IntMatrix] = {}
    for xi, ox in enumerate(ec.orbits[n + 1]):
        xref = nondeg(ox.rep)
        for i in range(n + 2):
            fb = _face_block(ec, ox.stab_key, n, ec.gx.space.face(i, xref))
            if fb is None:
                continue
            j, hom = fb
            mat = hom.matrix if i % 2 == 0 else -hom.matrix
            prev = blocks.get((xi, j))
            blocks[(xi, j)] = mat if prev is None else prev + mat
    return assemble_hom(ec.summands[n], ec.summands[n + 1], blocks,
                        source_sum=ec.groups[n],
                        target_sum=ec.groups[n + 1])


def twisted_complex(ec: EquivariantCochains, provider) -> CochainComplex:
    diffs = [twisted_coboundary(ec, provider, n) for n in range(ec.nmax)]
    return CochainComplex([ec.groups[n] for n in range(ec.nmax + 1)], diffs)


def untwisted_complex(ec: EquivariantCochains) -> CochainComplex:
    diffs = [coboundary(ec, n) for n in range(ec.nmax)]
    return CochainComplex([ec.groups[n] for n in range(ec.nmax + 1)], diffs)


# evaluation ---------------------------------------------------------

def evaluate_cochain(ec: EquivariantCochains, n: int,
                     coords: tuple[int, ...], skey: str,
                     ref: SimplexRef) -> tuple[int, ...]:
    """Value of a cochain at a cell of the skey-fixed complex, as a
    normal-form vector in M(G/H).  Degenerate simplices give zero."""
    target = ec.system.values[skey]
    if ref.word:
        return target.zero()
    j, orb = ec.orbit_index[n][ref.base]
    g = orb.transporters[ref.base]
    m = ec.cat.coset_morphism(ec.cat.by_key[skey],
                              ec.cat.by_key[orb.stab_key], g)
    lo = ec.offsets[n][j]
    piece = ec.summands[n][j].reduce(
        tuple(coords[lo:lo + ec.summands[n][j].ngens]))
    return target.reduce(ec.system.maps[m.key].apply(piece))
