"""Cartan-style equivariant cohomology theories and the lift complex.

A theory is a cochain sequence A^0 -> A^1 -> ... of simplicial
coefficient systems: contravariant functors from the orbit category to
simplicial abelian groups, with levelwise differentials and an action
of the coefficient automorphisms on every term.  The canonical model
takes A^i(G/H) to the simplicial cochain groups C(M(G/H), i).

Given a G-space with a twist, the degree-n lift group collects one
element of A^n(G/G_sigma) per cell orbit, constrained so that the
assignment is a simplicial map with the zero face corrected through
the twist.  The theory differentials descend to these subgroups, and
the cohomology of the resulting complex is compared with the Bredon
cohomology of the twist.  The axiom checks, the comparison, and a
brute-force vertical homotopy search all run over exact integer
arithmetic; everything is truncated to the declared (i_max, p_max)
window and the reports say so.
"""

from __future__ import annotations

import itertools

from .abgroups import (AbHom, FgAbGroup, assemble_hom, cohomology_at,
                       direct_sum, enumerate_automorphisms)
from .bredon import EquivariantCochains, twisted_coboundary, twisted_complex
from .coefficients import CoefficientSystem
from .classifying import SimplicialFiniteGroup, contraction, total_elements
from .em import CochainModel, delta_hom
from .equivariant import GSimplicialSet
from .groups import FiniteGroup, OrbitCategory
from .intmat import IntMatrix, solve
from .simplicial import SimplexRef, cylinder, nondeg


def _add_block(blocks: dict, key: tuple[int, int], mat: IntMatrix):
    prev = blocks.get(key)
    blocks[key] = mat if prev is None else prev + mat


def element_preimage(h: AbHom, elem) -> tuple[int, ...] | None:
    """Canonical coordinates of some preimage of a target element, or None."""
    vec = h.target.to_vector(elem)
    aug = IntMatrix.hstack([h.matrix, h.target.rels])
    x = solve(aug, vec)
    if x is None:
        return None
    return h.source.from_vector(x[: h.source.ngens])


def element_in_image(h: AbHom, elem) -> bool:
    return element_preimage(h, elem) is not None


# simplicial abelian groups ------------------------------------------

class SimplicialAb:
    """Simplicial abelian group up to a level bound, as explicit homs."""

    def __init__(self, levels: list[FgAbGroup],
                 faces: dict[tuple[int, int], AbHom],
                 degs: dict[tuple[int, int], AbHom],
                 check: bool = True):
        self.levels = list(levels)
        self.faces = faces
        self.degs = degs
        if check:
            self.validate()

    @property
    def top(self) -> int:
        return len(self.levels) - 1

    def validate(self):
        top = self.top
        for q in range(1, top + 1):
            for i in range(q + 1):
                f = self.faces[(q, i)]
                if f.source is not self.levels[q] or \
                        f.target is not self.levels[q - 1]:
                    raise ValueError(f"d{i} at level {q}: wrong endpoints")
        for q in range(top):
            for j in range(q + 1):
                s = self.degs[(q, j)]
                if s.source is not self.levels[q] or \
                        s.target is not self.levels[q + 1]:
                    raise ValueError(f"s{j} at level {q}: wrong endpoints")
        for q in range(2, top + 1):
            for j in range(1, q + 1):
                for i in range(j):
                    lhs = self.faces[(q - 1, i)].compose(self.faces[(q, j)])
                    rhs = self.faces[(q - 1, j - 1)].compose(self.faces[(q, i)])
                    if not lhs.equal_as_maps(rhs):
                        raise ValueError(f"face identity fails at ({q},{i},{j})")
        for q in range(top):
            for j in range(q + 1):
                for i in range(q + 2):
                    lhs = self.faces[(q + 1, i)].compose(self.degs[(q, j)])
                    if i in (j, j + 1):
                        rhs = AbHom.identity(self.levels[q])
                    elif q == 0:
                        continue
                    elif i < j:
                        rhs = self.degs[(q - 1, j - 1)].compose(
                            self.faces[(q, i)])
                    else:
                        rhs = self.degs[(q - 1, j)].compose(
                            self.faces[(q, i - 1)])
                    if not lhs.equal_as_maps(rhs):
                        raise ValueError(
                            f"face/degeneracy identity fails at ({q},{i},{j})")
        for q in range(top - 1):
            for j in range(q + 1):
                for i in range(j + 1):
                    lhs = self.degs[(q + 1, i)].compose(self.degs[(q, j)])
                    rhs = self.degs[(q + 1, j + 1)].compose(self.degs[(q, i)])
                    if not lhs.equal_as_maps(rhs):
                        raise ValueError(
                            f"degeneracy identity fails at ({q},{i},{j})")


def simplicial_ab_of_model(model: CochainModel) -> SimplicialAb:
    faces = {(q, i): model.face_hom(i, q)
             for q in range(1, model.top + 1) for i in range(q + 1)}
    degs = {(q, j): model.deg_hom(j, q)
            for q in range(model.top) for j in range(q + 1)}
    return SimplicialAb(model.levels, faces, degs, check=False)


def moore_subgroup(sab: SimplicialAb, q: int) -> tuple[FgAbGroup, AbHom]:
    """The normalized chain group N_q = ker d_1 .. ker d_q with inclusion."""
    g = sab.levels[q]
    if q == 0:
        return g, AbHom.identity(g)
    blocks = {(i, 0): sab.faces[(q, i + 1)].matrix for i in range(q)}
    hom = assemble_hom([g], [sab.levels[q - 1]] * q, blocks)
    return hom.kernel()


def moore_homotopy(sab: SimplicialAb, n: int) -> FgAbGroup:
    """Homotopy pi_n as homology of the Moore complex (d_0 differential)."""
    if n + 1 > sab.top:
        raise ValueError("levels up to n+1 are required")
    sub_n, inc_n = moore_subgroup(sab, n)
    _sub_up, inc_up = moore_subgroup(sab, n + 1)
    incoming = sab.faces[(n + 1, 0)].compose(inc_up).factor_through(inc_n)
    outgoing = None
    if n >= 1:
        _sub_dn, inc_dn = moore_subgroup(sab, n - 1)
        outgoing = sab.faces[(n, 0)].compose(inc_n).factor_through(inc_dn)
    return cohomology_at(sub_n, incoming, outgoing).group


class OGSimplicialAb:
    """Contravariant functor from the orbit category to SimplicialAb."""

    def __init__(self, cat: OrbitCategory, objects: dict[str, SimplicialAb],
                 maps: dict[str, list[AbHom]], check: bool = True):
        self.cat = cat
        self.objects = objects
        self.maps = maps
        if check:
            self.validate()

    @property
    def top(self) -> int:
        return next(iter(self.objects.values())).top

    def validate(self):
        top = self.top
        for m in self.cat.all_morphisms():
            row = self.maps[m.key]
            src = self.objects[m.src.key]
            tgt = self.objects[m.tgt.key]
            for q in range(top + 1):
                h = row[q]
                if h.source is not tgt.levels[q] or \
                        h.target is not src.levels[q]:
                    raise ValueError(f"map at {m.key} level {q}: endpoints")
            for q in range(1, top + 1):
                for i in range(q + 1):
                    lhs = src.faces[(q, i)].compose(row[q])
                    rhs = row[q - 1].compose(tgt.faces[(q, i)])
                    if not lhs.equal_as_maps(rhs):
                        raise ValueError(
                            f"map at {m.key} not simplicial at d{i}, level {q}")
            for q in range(top):
                for j in range(q + 1):
                    lhs = src.degs[(q, j)].compose(row[q])
                    rhs = row[q + 1].compose(tgt.degs[(q, j)])
                    if not lhs.equal_as_maps(rhs):
                        raise ValueError(
                            f"map at {m.key} not simplicial at s{j}, level {q}")
        for s in self.cat.subgroups:
            ident = self.cat.identity(s.key)
            for q in range(top + 1):
                h = self.maps[ident.key][q]
                if not h.equal_as_maps(AbHom.identity(h.source)):
                    raise ValueError(f"identity of {s.key} is not the identity")
        for f, h in self.cat.composable_pairs():
            comp = self.cat.compose(f, h)
            for q in range(top + 1):
                lhs = self.maps[f.key][q].compose(self.maps[h.key][q])
                if not lhs.equal_as_maps(self.maps[comp.key][q]):
                    raise ValueError(
                        f"functoriality fails at {f.key} ; {h.key}, level {q}")


# theories -----------------------------------------------------------

class CartanTheory:
    """A bounded cochain sequence of simplicial coefficient systems.

    terms[i] is the functor A^i; deltas[i][skey][q] is the level-q
    component of delta^i at the orbit named skey; psi(skey, alpha, i, q)
    realizes the action of a coefficient automorphism alpha on the
    level-q part of A^i at that orbit.
    """

    def __init__(self, cat: OrbitCategory, coeffs: CoefficientSystem,
                 terms: list[OGSimplicialAb],
                 deltas: list[dict[str, list[AbHom]]],
                 psi, i_max: int, p_max: int):
        if len(terms) != i_max + 1 or len(deltas) != i_max:
            raise ValueError("term and differential counts must match i_max")
        self.cat = cat
        self.coeffs = coeffs
        self.terms = terms
        self.deltas = deltas
        self.psi = psi
        self.i_max = i_max
        self.p_max = p_max


def canonical_theory(cat: OrbitCategory, coeffs: CoefficientSystem,
                     i_max: int, p_max: int) -> CartanTheory:
    """A^i(G/H) = C(M(G/H), i) with the cochain differential."""
    models = {}
    for s in cat.subgroups:
        for i in range(i_max + 1):
            models[(s.key, i)] = CochainModel(coeffs.values[s.key], i, p_max)
    terms = []
    for i in range(i_max + 1):
        objects = {s.key: simplicial_ab_of_model(models[(s.key, i)])
                   for s in cat.subgroups}
        maps = {}
        for m in cat.all_morphisms():
            src, tgt = m.src.key, m.tgt.key
            maps[m.key] = [
                models[(tgt, i)].postcompose_hom(q, coeffs.maps[m.key],
                                                 models[(src, i)])
                for q in range(p_max + 1)]
        terms.append(OGSimplicialAb(cat, objects, maps, check=False))
    deltas = []
    for i in range(i_max):
        deltas.append({s.key: [delta_hom(models[(s.key, i)],
                                         models[(s.key, i + 1)], q)
                               for q in range(p_max + 1)]
                       for s in cat.subgroups})

    def psi(skey, alpha, i, q):
        return models[(skey, i)].postcompose_hom(q, alpha)

    out = CartanTheory(cat, coeffs, terms, deltas, psi, i_max, p_max)
    out.models = models
    return out


def kernel_term(theory: CartanTheory, n: int) -> OGSimplicialAb:
    """The functor Z^n = ker(delta^n), with stored level inclusions."""
    if n >= theory.i_max:
        raise ValueError("kernel term needs the next differential")
    cat = theory.cat
    objects = {}
    incls = {}
    for s in cat.subgroups:
        skey = s.key
        amb = theory.terms[n].objects[skey]
        subs = []
        inc = []
        for q in range(theory.p_max + 1):
            sub, i0 = theory.deltas[n][skey][q].kernel()
            subs.append(sub)
            inc.append(i0)
        faces = {}
        for q in range(1, theory.p_max + 1):
            for i in range(q + 1):
                faces[(q, i)] = amb.faces[(q, i)].compose(
                    inc[q]).factor_through(inc[q - 1])
        degs = {}
        for q in range(theory.p_max):
            for j in range(q + 1):
                degs[(q, j)] = amb.degs[(q, j)].compose(
                    inc[q]).factor_through(inc[q + 1])
        objects[skey] = SimplicialAb(subs, faces, degs, check=False)
        incls[skey] = inc
    maps = {}
    for m in cat.all_morphisms():
        src, tgt = m.src.key, m.tgt.key
        maps[m.key] = [
            theory.terms[n].maps[m.key][q].compose(
                incls[tgt][q]).factor_through(incls[src][q])
            for q in range(theory.p_max + 1)]
    out = OGSimplicialAb(cat, objects, maps, check=False)
    out.inclusions = incls
    return out


# axiom checking -----------------------------------------------------

class AxiomReport:
    """Per-axiom verdicts with failure witnesses and informational notes."""

    AXIOMS = (1, 2, 3, 4, 5)

    def __init__(self, i_max: int, p_max: int):
        self.i_max = i_max
        self.p_max = p_max
        self.failures = {a: [] for a in self.AXIOMS}
        self.info = {a: [] for a in self.AXIOMS}

    def ok(self, axiom: int) -> bool:
        return not self.failures[axiom]

    @property
    def all_ok(self) -> bool:
        return all(self.ok(a) for a in self.AXIOMS)

    def lines(self) -> list[str]:
        out = [f"checked within bounds i_max={self.i_max}, p_max={self.p_max}"]
        for a in self.AXIOMS:
            out.append(f"axiom {a}: " + ("pass" if self.ok(a) else "fail"))
            for msg in self.failures[a]:
                out.append(f"  {msg}")
            for msg in self.info[a]:
                out.append(f"  note: {msg}")
        return out


def check_axioms(theory: CartanTheory) -> AxiomReport:
    rep = AxiomReport(theory.i_max, theory.p_max)
    cat = theory.cat

    # axiom 1: a cochain sequence of simplicial coefficient systems.
    # Only the additive and differential structure is checked; no
    # product is modelled.
    for i, term in enumerate(theory.terms):
        try:
            for s in cat.subgroups:
                term.objects[s.key].validate()
            term.validate()
        except ValueError as ex:
            rep.failures[1].append(f"A^{i}: {ex}")
    for i in range(theory.i_max):
        for s in cat.subgroups:
            skey = s.key
            lower = theory.terms[i].objects[skey]
            upper = theory.terms[i + 1].objects[skey]
            ds = theory.deltas[i][skey]
            for q in range(theory.p_max + 1):
                d = ds[q]
                if d.source is not lower.levels[q] or \
                        d.target is not upper.levels[q]:
                    rep.failures[1].append(
                        f"delta^{i} at {skey} level {q}: wrong endpoints")
            for q in range(1, theory.p_max + 1):
                for j in range(q + 1):
                    lhs = upper.faces[(q, j)].compose(ds[q])
                    rhs = ds[q - 1].compose(lower.faces[(q, j)])
                    if not lhs.equal_as_maps(rhs):
                        rep.failures[1].append(
                            f"delta^{i} at {skey} misses d{j} at level {q}")
            for q in range(theory.p_max):
                for j in range(q + 1):
                    lhs = upper.degs[(q, j)].compose(ds[q])
                    rhs = ds[q + 1].compose(lower.degs[(q, j)])
                    if not lhs.equal_as_maps(rhs):
                        rep.failures[1].append(
                            f"delta^{i} at {skey} misses s{j} at level {q}")
        for m in cat.all_morphisms():
            src, tgt = m.src.key, m.tgt.key
            for q in range(theory.p_max + 1):
                lhs = theory.terms[i + 1].maps[m.key][q].compose(
                    theory.deltas[i][tgt][q])
                rhs = theory.deltas[i][src][q].compose(
                    theory.terms[i].maps[m.key][q])
                if not lhs.equal_as_maps(rhs):
                    rep.failures[1].append(
                        f"delta^{i} not natural along {m.key} at level {q}")
    for i in range(theory.i_max - 1):
        for s in cat.subgroups:
            for q in range(theory.p_max + 1):
                comp = theory.deltas[i + 1][s.key][q].compose(
                    theory.deltas[i][s.key][q])
                if not comp.is_zero_map:
                    rep.failures[1].append(
                        f"delta.delta != 0 at {s.key}, degree {i}, level {q}")
    rep.info[1].append("multiplicative structure not modelled")

    # axiom 2: exactness at the interior degrees.
    for d in range(1, theory.i_max):
        for s in cat.subgroups:
            for q in range(theory.p_max + 1):
                h = cohomology_at(theory.terms[d].objects[s.key].levels[q],
                                  theory.deltas[d - 1][s.key][q],
                                  theory.deltas[d][s.key][q]).group
                if not h.is_trivial:
                    rep.failures[2].append(
                        f"cohomology {h.describe()} at degree {d}, "
                        f"{s.key}, level {q}")
    if theory.i_max < 2:
        rep.info[2].append("no interior degrees at this truncation")
    rep.info[2].append("degree 0 read as defining Z^0, not checked")

    # axiom 3: each term is homotopically trivial.
    for i in range(theory.i_max + 1):
        for s in cat.subgroups:
            sab = theory.terms[i].objects[s.key]
            for nn in range(theory.p_max):
                g = moore_homotopy(sab, nn)
                if not g.is_trivial:
                    rep.failures[3].append(
                        f"pi_{nn} of A^{i}({s.key}) = {g.describe()}")

    # axiom 4: Z^0 is simplicially trivial and recovers the coefficients.
    try:
        z0 = kernel_term(theory, 0)
    except ValueError as ex:
        rep.failures[4].append(str(ex))
        z0 = None
    if z0 is not None:
        for s in cat.subgroups:
            obj = z0.objects[s.key]
            for q in range(1, theory.p_max + 1):
                for i in range(q + 1):
                    if not obj.faces[(q, i)].is_iso():
                        rep.failures[4].append(
                            f"Z^0({s.key}): d{i} at level {q} is not an iso")
            for q in range(theory.p_max):
                for j in range(q + 1):
                    if not obj.degs[(q, j)].is_iso():
                        rep.failures[4].append(
                            f"Z^0({s.key}): s{j} at level {q} is not an iso")
            want = theory.coeffs.values[s.key]
            if obj.levels[0].normal_form() != want.normal_form():
                rep.failures[4].append(
                    f"(Z^0)_0({s.key}) = {obj.levels[0].describe()}, "
                    f"declared {want.describe()}")

    # axiom 5: the automorphism action is simplicial, commutes with the
    # differential, and is natural over the orbit category.
    auts = {}
    for s in cat.subgroups:
        mgrp = theory.coeffs.values[s.key]
        found = enumerate_automorphisms(mgrp)
        if found is None:
            rep.info[5].append(
                f"automorphisms of {mgrp.describe()} not enumerable; "
                "identity only")
            found = [AbHom.identity(mgrp)]
        auts[s.key] = found
    for s in cat.subgroups:
        skey = s.key
        mgrp = theory.coeffs.values[skey]
        iden = AbHom.identity(mgrp)
        for i in range(theory.i_max + 1):
            for q in range(theory.p_max + 1):
                lv = theory.terms[i].objects[skey].levels[q]
                got = theory.psi(skey, iden, i, q)
                if not got.equal_as_maps(AbHom.identity(lv)):
                    rep.failures[5].append(
                        f"psi(id) at {skey}, A^{i}, level {q} is not id")
        for a, b in itertools.product(auts[skey], repeat=2):
            ab = a.compose(b)
            for i in range(theory.i_max + 1):
                for q in range(theory.p_max + 1):
                    lhs = theory.psi(skey, ab, i, q)
                    rhs = theory.psi(skey, a, i, q).compose(
                        theory.psi(skey, b, i, q))
                    if not lhs.equal_as_maps(rhs):
                        rep.failures[5].append(
                            f"psi not multiplicative at {skey}, A^{i}, "
                            f"level {q}")
        for a in auts[skey]:
            for i in range(theory.i_max + 1):
                obj = theory.terms[i].objects[skey]
                for q in range(1, theory.p_max + 1):
                    for j in range(q + 1):
                        lhs = obj.faces[(q, j)].compose(
                            theory.psi(skey, a, i, q))
                        rhs = theory.psi(skey, a, i, q - 1).compose(
                            obj.faces[(q, j)])
                        if not lhs.equal_as_maps(rhs):
                            rep.failures[5].append(
                                f"psi at {skey}, A^{i} misses d{j} "
                                f"at level {q}")
                for q in range(theory.p_max):
                    for j in range(q + 1):
                        lhs = obj.degs[(q, j)].compose(
                            theory.psi(skey, a, i, q))
                        rhs = theory.psi(skey, a, i, q + 1).compose(
                            obj.degs[(q, j)])
                        if not lhs.equal_as_maps(rhs):
                            rep.failures[5].append(
                                f"psi at {skey}, A^{i} misses s{j} "
                                f"at level {q}")
            for i in range(theory.i_max):
                for q in range(theory.p_max + 1):
                    lhs = theory.deltas[i][skey][q].compose(
                        theory.psi(skey, a, i, q))
                    rhs = theory.psi(skey, a, i + 1, q).compose(
                        theory.deltas[i][skey][q])
                    if not lhs.equal_as_maps(rhs):
                        rep.failures[5].append(
                            f"psi at {skey} does not commute with delta^{i} "
                            f"at level {q}")
    for m in cat.all_morphisms():
        src, tgt = m.src.key, m.tgt.key
        res = theory.coeffs.maps[m.key]
        for a in auts[src]:
            for b in auts[tgt]:
                if not a.compose(res).equal_as_maps(res.compose(b)):
                    continue
                for i in range(theory.i_max + 1):
                    for q in range(theory.p_max + 1):
                        lhs = theory.psi(src, a, i, q).compose(
                            theory.terms[i].maps[m.key][q])
                        rhs = theory.terms[i].maps[m.key][q].compose(
                            theory.psi(tgt, b, i, q))
                        if not lhs.equal_as_maps(rhs):
                            rep.failures[5].append(
                                f"psi not natural along {m.key} at A^{i}, "
                                f"level {q}")
    return rep


# planted negative controls ------------------------------------------

def with_zero_delta(theory: CartanTheory, at: int = 1) -> CartanTheory:
    """Copy with delta^at replaced by zero; breaks exactness only."""
    if not 1 <= at < theory.i_max:
        raise ValueError("the planted degree must be interior")
    deltas = []
    for i, dd in enumerate(theory.deltas):
        if i != at:
            deltas.append(dd)
        else:
            deltas.append({skey: [AbHom.zero(h.source, h.target)
                                  for h in homs]
                           for skey, homs in dd.items()})
    return CartanTheory(theory.cat, theory.coeffs, theory.terms, deltas,
                        theory.psi, theory.i_max, theory.p_max)


def zero_theory(cat: OrbitCategory, coeffs: CoefficientSystem,
                i_max: int, p_max: int) -> CartanTheory:
    """All terms zero while still declaring the coefficients.

    Every structural and exactness axiom holds vacuously, but the
    kernel term cannot recover a nonzero M, so simplicial triviality
    of Z^0 fails in its coefficient clause.
    """
    zero = FgAbGroup.trivial()
    zh = AbHom.identity(zero)
    levels = [zero] * (p_max + 1)
    faces = {(q, i): zh for q in range(1, p_max + 1) for i in range(q + 1)}
    degs = {(q, j): zh for q in range(p_max) for j in range(q + 1)}
    sab = SimplicialAb(levels, faces, degs, check=False)
    objects = {s.key: sab for s in cat.subgroups}
    maps = {m.key: [zh] * (p_max + 1) for m in cat.all_morphisms()}
    term = OGSimplicialAb(cat, objects, maps, check=False)
    terms = [term] * (i_max + 1)
    deltas = [{s.key: [zh] * (p_max + 1) for s in cat.subgroups}
              for _ in range(i_max)]

    def psi(skey, alpha, i, q):
        return zh

    return CartanTheory(cat, coeffs, terms, deltas, psi, i_max, p_max)


def with_blinded_psi(theory: CartanTheory, skey: str,
                     at_i: int = 0) -> CartanTheory:
    """Copy whose psi ignores nonidentity automorphisms in one term."""

    def psi(sk, alpha, i, q):
        if sk == skey and i == at_i and \
                not alpha.equal_as_maps(AbHom.identity(alpha.source)):
            return AbHom.identity(theory.terms[i].objects[sk].levels[q])
        return theory.psi(sk, alpha, i, q)

    return CartanTheory(theory.cat, theory.coeffs, theory.terms,
                        theory.deltas, psi, theory.i_max, theory.p_max)


# lift groups --------------------------------------------------------

class LiftSystem:
    """The groups of lifts A_phi^n(X; tau) with their differentials.

    The degree-n group stores one element of A^n(G/G_sigma) at the
    level of sigma, per orbit of nondegenerate cells; membership is cut
    out by the face constraints of a simplicial map into the twisted
    target, with the zero face corrected through psi(phi(tau)).  The
    theory differentials act blockwise and descend to the cut-out
    subgroups.
    """

    def __init__(self, ec: EquivariantCochains, theory: CartanTheory,
                 provider, nmax: int):
        if theory.coeffs is not ec.system:
            raise ValueError("theory and cochains disagree on coefficients")
        if nmax > theory.i_max:
            raise ValueError("degree bound exceeds the theory truncation")
        self.ec = ec
        self.theory = theory
        self.provider = provider
        self.nmax = nmax
        maxdim = 0
        for q, os in ec.orbits.items():
            if os:
                maxdim = max(maxdim, q)
        self.top_dim = min(maxdim, theory.p_max)
        self.vars = []
        self.var_index = {}
        for q in range(self.top_dim + 1):
            for j, o in enumerate(ec.orbits[q]):
                self.var_index[(q, j)] = len(self.vars)
                self.vars.append((q, j, o.rep, o.stab_key))
        self.var_groups = {}
        self.ambient = {}
        self.offsets = {}
        self.groups = {}
        self.inclusions = {}
        for n in range(nmax + 1):
            vg = [theory.terms[n].objects[sk].levels[q]
                  for (q, j, rep, sk) in self.vars]
            amb, offs = direct_sum(vg)
            self.var_groups[n] = vg
            self.ambient[n] = amb
            self.offsets[n] = offs
            sub, incl = self._constraint_hom(n).kernel()
            self.groups[n] = sub
            self.inclusions[n] = incl
        self.diffs = {}
        for n in range(nmax):
            self.diffs[n] = self._descend_delta(n)

    def _evaluation(self, n: int, hkey: str,
                    fref: SimplexRef) -> tuple[int, AbHom]:
        """Column and hom evaluating a degree-n assignment on a face."""
        ec = self.ec
        qp = ec.gx.space.dim_of(fref.base)
        jp, orb = ec.orbit_index[qp][fref.base]
        g = orb.transporters[fref.base]
        m = ec.cat.coset_morphism(ec.cat.by_key[hkey],
                                  ec.cat.by_key[orb.stab_key], g)
        hom = self.theory.terms[n].maps[m.key][qp]
        obj = self.theory.terms[n].objects[hkey]
        lvl = qp
        for jj in reversed(fref.word):
            hom = obj.degs[(lvl, jj)].compose(hom)
            lvl += 1
        return self.var_index[(qp, jp)], hom

    def _constraint_hom(self, n: int) -> AbHom:
        vg = self.var_groups[n]
        terms = self.theory.terms[n]
        blocks = {}
        tgroups = []
        ti = 0
        for vi, (q, j, rep, hkey) in enumerate(self.vars):
            if q == 0:
                continue
            xref = nondeg(rep)
            obj = terms.objects[hkey]
            for i in range(q + 1):
                tgroups.append(obj.levels[q - 1])
                face = obj.faces[(q, i)]
                if i == 0:
                    ph = self.theory.psi(
                        hkey, self.provider.phi_hom(hkey, xref), n, q - 1)
                    face = ph.compose(face)
                _add_block(blocks, (ti, vi), -face.matrix)
                col, hom = self._evaluation(n, hkey,
                                            self.ec.gx.space.face(i, xref))
                _add_block(blocks, (ti, col), hom.matrix)
                ti += 1
        if not tgroups:
            return AbHom.zero(self.ambient[n], FgAbGroup.trivial())
        return assemble_hom(vg, tgroups, blocks, source_sum=self.ambient[n])

    def _descend_delta(self, n: int) -> AbHom:
        blocks = {}
        for vi, (q, j, rep, sk) in enumerate(self.vars):
            blocks[(vi, vi)] = self.theory.deltas[n][sk][q].matrix
        big = assemble_hom(self.var_groups[n], self.var_groups[n + 1], blocks,
                           source_sum=self.ambient[n],
                           target_sum=self.ambient[n + 1])
        return big.compose(self.inclusions[n]).factor_through(
            self.inclusions[n + 1])

    def cohomology(self, n: int):
        return cohomology_at(self.groups[n], self.diffs.get(n - 1),
                             self.diffs.get(n))

    def var_value(self, n: int, elem, vi: int) -> tuple[int, ...]:
        """The vi-th coordinate of a degree-n element, in A^n terms."""
        gen = self.ambient[n].to_vector(self.inclusions[n].apply(elem))
        g = self.var_groups[n][vi]
        off = self.offsets[n][vi]
        return g.from_vector(gen[off: off + g.ngens])

    def value_at(self, n: int, elem, hkey: str,
                 ref: SimplexRef) -> tuple[int, ...]:
        """Evaluate a degree-n element on any reference over G/H."""
        col, hom = self._evaluation(n, hkey, ref)
        return hom.apply(self.var_value(n, elem, col))

    def bredon_iso(self, n: int) -> AbHom:
        """Projection onto the degree-n coordinates, valued in M.

        Defined when A^n(G/H) at level n has the coefficient group in
        its own coordinates, as the canonical theory does.
        """
        ec = self.ec
        blocks = {}
        for bj, o in enumerate(ec.orbits[n]):
            vi = self.var_index[(n, bj)]
            vg = self.var_groups[n][vi]
            mg = ec.summands[n][bj]
            if vg.ngens != mg.ngens:
                raise ValueError(
                    "theory coordinates do not project onto coefficients")
            blocks[(bj, vi)] = IntMatrix.identity(mg.ngens)
        big = assemble_hom(self.var_groups[n], ec.summands[n], blocks,
                           source_sum=self.ambient[n],
                           target_sum=ec.groups[n])
        return big.compose(self.inclusions[n])

    def describe(self, n: int) -> str:
        return self.groups[n].describe()


def theory_cohomology(ec: EquivariantCochains, theory: CartanTheory,
                      provider, n: int) -> FgAbGroup:
    """H^n of the lift complex; degree 0 is a kernel by convention."""
    ls = LiftSystem(ec, theory, provider, min(n + 1, theory.i_max))
    return ls.cohomology(n).group


# the main comparison ------------------------------------------------

def crosscheck_theorem(gx: GSimplicialSet, cat: OrbitCategory,
                       system: CoefficientSystem, provider, nmax: int,
                       theory: CartanTheory | None = None) -> dict:
    """Compare twisted Bredon cohomology with lift cohomology.

    Returns per-degree normal forms from both pipelines together with
    match flags; for theories in canonical coordinates the explicit
    cochain-level isomorphism is built and checked against the
    differentials.
    """
    space = gx.space
    maxdim = 0
    for q, ids in space.cells.items():
        if ids:
            maxdim = max(maxdim, q)
    ecn = min(space.truncation, max(nmax + 1, maxdim))
    ec = EquivariantCochains(gx, cat, system, ecn)
    if theory is None:
        theory = canonical_theory(cat, system, nmax + 1,
                                  max(maxdim, nmax + 1))
    if theory.i_max < nmax + 1:
        raise ValueError("theory truncated below the requested degree")
    tc = twisted_complex(ec, provider)
    ls = LiftSystem(ec, theory, provider, nmax + 1)
    report = {"degrees": [], "all_match": True}
    for n in range(nmax + 1):
        hb = tc.cohomology(n).group
        hl = ls.cohomology(n).group
        entry = {"degree": n, "bredon": hb.describe(), "lift": hl.describe(),
                 "match": hb.normal_form() == hl.normal_form()}
        report["degrees"].append(entry)
        report["all_match"] = report["all_match"] and entry["match"]
    try:
        top = min(nmax + 1, ec.nmax)
        phis = {n: ls.bredon_iso(n) for n in range(top + 1)}
        report["iso"] = all(phi.is_iso() for phi in phis.values())
        commutes = True
        for n in range(nmax + 1):
            if n + 1 not in phis or n not in ls.diffs:
                continue
            lhs = twisted_coboundary(ec, provider, n).compose(phis[n])
            rhs = phis[n + 1].compose(ls.diffs[n])
            commutes = commutes and lhs.equal_as_maps(rhs)
        report["commutes"] = commutes
    except ValueError:
        # non-canonical coordinates: normal-form comparison only
        report["iso"] = None
        report["commutes"] = None
    return report


# vertical homotopies ------------------------------------------------

class BudgetExceeded(Exception):
    pass


def cylinder_with_action(gx: GSimplicialSet, truncation: int | None = None):
    """Cylinder of the underlying space, with the action on the left
    factor; the end inclusions and the projection are equivariant."""
    pc, i0, i1, pr = cylinder(gx.space, truncation)
    perms = {}
    for gname, table in gx.perms.items():
        out = {}
        for cid, (rx, ry) in pc.pair_of.items():
            gref = SimplexRef(rx.word, table[rx.base])
            out[cid] = pc.ref_of_pair(gref, ry).base
        perms[gname] = out
    gcyl = GSimplicialSet(pc.complex, gx.group, perms)
    return pc, i0, i1, pr, gcyl


def vertical_homotopy_oracle(ls: LiftSystem, n: int, f, g,
                             budget: int = 200000):
    """Search for an equivariant vertical homotopy from f to g.

    f and g are degree-n lift elements in canonical coordinates.  The
    homotopy is a cocycle-valued lift on the cylinder restricting to f
    and g at the ends, found (or refuted) by exhaustive search over the
    kernel-term values on middle cell orbits, dimension by dimension.
    Returns (found, tried): found is True or False when the search is
    conclusive and None when the budget ran out first.
    """
    ec = ls.ec
    theory = ls.theory
    provider = ls.provider
    if n >= theory.i_max:
        raise ValueError("kernel term needs the next differential")
    pc, _i0, _i1, _pr, gcyl = cylinder_with_action(ec.gx)
    space = pc.complex
    maxdim = 0
    for q, ids in space.cells.items():
        if ids:
            maxdim = max(maxdim, q)
    if maxdim > theory.p_max:
        raise ValueError("theory truncated below the cylinder dimension")
    cat = ec.cat
    zn = kernel_term(theory, n)
    for s in cat.subgroups:
        for q in range(maxdim + 1):
            if not zn.objects[s.key].levels[q].is_finite:
                raise ValueError("search needs finite kernel levels")
    orbits = {q: gcyl.orbits(q) for q in range(maxdim + 1)}
    oindex = {}
    for q, os in orbits.items():
        for jj, o in enumerate(os):
            for cid in o.members:
                oindex[cid] = (q, o)

    def expand(values, hkey, ref):
        q, o = oindex[ref.base]
        gname = o.transporters[ref.base]
        m = cat.coset_morphism(cat.by_key[hkey], cat.by_key[o.stab_key],
                               gname)
        val = zn.maps[m.key][q].apply(values[o.rep])
        obj = zn.objects[hkey]
        lvl = q
        for jj in reversed(ref.word):
            val = obj.degs[(lvl, jj)].apply(val)
            lvl += 1
        return val

    psi_cache = {}

    def twist_hom(hkey, rx, q):
        key = (hkey, rx, q)
        if key not in psi_cache:
            ph = theory.psi(hkey, provider.phi_hom(hkey, rx), n, q)
            inc = zn.inclusions[hkey][q]
            psi_cache[key] = ph.compose(inc).factor_through(inc)
        return psi_cache[key]

    def cell_ok(values, o, q):
        hkey = o.stab_key
        obj = zn.objects[hkey]
        ref = nondeg(o.rep)
        rx, _ry = pc.pair_of[o.rep]
        for i in range(q + 1):
            want = expand(values, hkey, space.face(i, ref))
            got = obj.faces[(q, i)].apply(values[o.rep])
            if i == 0:
                got = twist_hom(hkey, rx, q - 1).apply(got)
            if want != got:
                return False
        return True

    values = {}
    middles = []
    for q in range(maxdim + 1):
        for o in orbits[q]:
            rx, ry = pc.pair_of[o.rep]
            if ry.base == "0-1":
                middles.append((q, o))
                continue
            src = f if ry.base == "0" else g
            aval = ls.value_at(n, src, o.stab_key, rx)
            zv = element_preimage(zn.inclusions[o.stab_key][q], aval)
            if zv is None:
                # an end value escapes the kernel term; no homotopy can
                # restrict to it
                return False, 0
            values[o.rep] = zv
    for q in range(1, maxdim + 1):
        for o in orbits[q]:
            if o.rep in values and not cell_ok(values, o, q):
                raise ValueError("end restriction violates the face laws")

    state = {"tried": 0}

    def backtrack(k):
        if k == len(middles):
            return True
        q, o = middles[k]
        for cand in zn.objects[o.stab_key].levels[q].elements():
            state["tried"] += 1
            if state["tried"] > budget:
                raise BudgetExceeded
            values[o.rep] = cand
            if cell_ok(values, o, q) and backtrack(k + 1):
                return True
        values.pop(o.rep, None)
        return False

    try:
        found = backtrack(0)
    except BudgetExceeded:
        return None, state["tried"]
    return found, state["tried"]


# named presentations for contraction checks -------------------------

def finite_simplicial_group(sab: SimplicialAb) \
        -> tuple[SimplicialFiniteGroup, list[dict]]:
    """Present a levelwise finite simplicial abelian group by tables.

    Returns the named group along with per-level dicts from canonical
    element tuples to names, for transporting homomorphisms into the
    named world.
    """
    levels = []
    name_of = []
    for q in range(sab.top + 1):
        g = sab.levels[q]
        if not g.is_finite:
            raise ValueError("levels must be finite")
        els = g.elements()
        names = ["c" + ",".join(str(a) for a in el) for el in els]
        idx = {el: k for k, el in enumerate(els)}
        table = [[idx[g.add(a, b)] for b in els] for a in els]
        levels.append(FiniteGroup(names, table, check=False))
        name_of.append({el: names[k] for k, el in enumerate(els)})
    face_maps = {}
    for q in range(1, sab.top + 1):
        for i in range(q + 1):
            h = sab.faces[(q, i)]
            face_maps[(q, i)] = {
                name_of[q][el]: name_of[q - 1][h.apply(el)]
                for el in sab.levels[q].elements()}
    deg_maps = {}
    for q in range(sab.top):
        for j in range(q + 1):
            h = sab.degs[(q, j)]
            deg_maps[(q, j)] = {
                name_of[q][el]: name_of[q + 1][h.apply(el)]
                for el in sab.levels[q].elements()}
    return SimplicialFiniteGroup(levels, face_maps, deg_maps), name_of


def contraction_is_natural(cat: OrbitCategory, ogs: OGSimplicialAb,
                           qmax: int) -> None:
    """Check that h_m commutes with the orbit-category maps.

    Raises on the first mismatch; needs levels up to qmax + 1.
    """
    named = {s.key: finite_simplicial_group(ogs.objects[s.key])
             for s in cat.subgroups}
    for m in cat.all_morphisms():
        src, tgt = m.src.key, m.tgt.key
        sg_src, src_names = named[src]
        sg_tgt, tgt_names = named[tgt]
        conv = []
        for q in range(ogs.top + 1):
            h = ogs.maps[m.key][q]
            conv.append({tgt_names[q][el]: src_names[q][h.apply(el)]
                         for el in ogs.objects[tgt].levels[q].elements()})
        for q in range(qmax + 1):
            for t in total_elements(sg_tgt, q):
                mapped_t = tuple(conv[q - j][t[j]] for j in range(q + 1))
                for mm in range(q + 1):
                    a = contraction(sg_tgt, mm, q, t)
                    lhs = tuple(conv[q + 1 - j][a[j]] for j in range(q + 2))
                    rhs = contraction(sg_src, mm, q, mapped_t)
                    if lhs != rhs:
                        raise ValueError(
                            f"h_{mm} is not natural along {m.key} "
                            f"at dimension {q}")
