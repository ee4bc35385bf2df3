"""Finite groups, their subgroups, and the category of orbits.

Groups are multiplication tables over named elements.  A morphism of
orbits G/H -> G/K is a coset gK with g^-1 H g contained in K; it is
stored with a canonical representative so that morphisms can be dict
keys.  Composition of G/H -> G/K -> G/L sends the representatives to
their product.
"""

from __future__ import annotations

import itertools


class FiniteGroup:
    """Multiplication table on named elements."""

    def __init__(self, names: list[str], table: list[list[int]],
                 check: bool = True):
        self.names = list(names)
        self.index = {n: k for k, n in enumerate(self.names)}
        if len(self.index) != len(self.names):
            raise ValueError("duplicate element names")
        self.table = [list(row) for row in table]
        ident = None
        n = len(self.names)
        for k in range(n):
            if all(self.table[k][j] == j and self.table[j][k] == j
                   for j in range(n)):
                ident = k
                break
        if ident is None:
            raise ValueError("table has no identity")
        self.identity_index = ident
        self.identity = self.names[ident]
        self._inv = [None] * n
        for k in range(n):
            for j in range(n):
                if self.table[k][j] == ident:
                    self._inv[k] = j
        if any(v is None for v in self._inv):
            raise ValueError("table has a non-invertible element")
        if check:
            for a in range(n):
                for b in range(n):
                    for c in range(n):
                        if self.table[self.table[a][b]][c] != \
                                self.table[a][self.table[b][c]]:
                            raise ValueError("table is not associative")

    @property
    def order(self) -> int:
        return len(self.names)

    def mul(self, a: str, b: str) -> str:
        return self.names[self.table[self.index[a]][self.index[b]]]

    def inv(self, a: str) -> str:
        return self.names[self._inv[self.index[a]]]

    def conjugate(self, g: str, h: str) -> str:
        """g^-1 h g."""
        return self.mul(self.inv(g), self.mul(h, g))

    @classmethod
    def trivial(cls) -> "FiniteGroup":
        return cls(["e"], [[0]], check=False)

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        if n < 1:
            raise ValueError("order must be positive")
        names = ["e"] + [f"t{k}" if k > 1 else "t" for k in range(1, n)]
        table = [[(a + b) % n for b in range(n)] for a in range(n)]
        return cls(names, table, check=False)

    @classmethod
    def symmetric3(cls) -> "FiniteGroup":
        perms = [(0, 1, 2), (1, 2, 0), (2, 0, 1),
                 (1, 0, 2), (0, 2, 1), (2, 1, 0)]
        names = ["e", "r", "r2", "s", "sr", "sr2"]
        def comp(p, q):  # p after q
            return tuple(p[q[k]] for k in range(3))
        table = [[perms.index(comp(p, q)) for q in perms] for p in perms]
        return cls(names, table, check=False)

    def to_json(self) -> dict:
        return {"elements": list(self.names),
                "table": [list(r) for r in self.table]}

    @classmethod
    def from_json(cls, data: dict) -> "FiniteGroup":
        return cls(list(data["elements"]),
                   [list(r) for r in data["table"]])

    def __repr__(self) -> str:
        return f"FiniteGroup<order {self.order}>"


def subgroup_key(members: set[str] | frozenset[str]) -> str:
    return ",".join(sorted(members))


class Subgroup:
    __slots__ = ("group", "members", "key")

    def __init__(self, group: FiniteGroup, members: frozenset[str]):
        self.group = group
        self.members = members
        self.key = subgroup_key(members)

    @property
    def order(self) -> int:
        return len(self.members)

    def __repr__(self) -> str:
        return f"Subgroup<{self.key}>"


def all_subgroups(g: FiniteGroup) -> list[Subgroup]:
    """Every subgroup, found by closing generating subsets.

    Fine for the small groups this library works with.
    """
    found: dict[frozenset, Subgroup] = {}
    base = frozenset([g.identity])
    found[base] = Subgroup(g, base)
    names = g.names
    for r in range(1, len(names) + 1):
        for gens in itertools.combinations(names, r):
            members = set(base) | set(gens)
            while True:
                new = {g.mul(a, b) for a in members for b in members} \
                    | {g.inv(a) for a in members}
                if new <= members:
                    break
                members |= new
            fz = frozenset(members)
            if fz not in found:
                found[fz] = Subgroup(g, fz)
    return sorted(found.values(), key=lambda s: (s.order, s.key))


class OrbitMorphism:
    """Morphism of orbits G/src -> G/tgt, i.e. a coset g*tgt with
    g^-1 (src) g inside tgt."""

    __slots__ = ("group", "src", "tgt", "coset", "rep", "key")

    def __init__(self, group: FiniteGroup, src: Subgroup, tgt: Subgroup,
                 coset: frozenset[str]):
        self.group = group
        self.src = src
        self.tgt = tgt
        self.coset = coset
        self.rep = min(coset, key=lambda n: group.index[n])
        self.key = f"{src.key}|{tgt.key}|{self.rep}"

    def is_identity(self) -> bool:
        return self.src is self.tgt and self.coset == self.src.members

    def __repr__(self) -> str:
        return f"OrbitMorphism<{self.key}>"


class OrbitCategory:
    """All orbits of a finite group and the maps between them."""

    def __init__(self, group: FiniteGroup):
        self.group = group
        self.subgroups = all_subgroups(group)
        self.by_key = {s.key: s for s in self.subgroups}
        self._morphisms: dict[str, OrbitMorphism] = {}
        self._hom: dict[tuple[str, str], list[OrbitMorphism]] = {}
        for src in self.subgroups:
            for tgt in self.subgroups:
                homs = []
                seen: set[frozenset] = set()
                for gname in group.names:
                    if any(group.conjugate(gname, h) not in tgt.members
                           for h in src.members):
                        continue
                    coset = frozenset(group.mul(gname, k)
                                      for k in tgt.members)
                    if coset in seen:
                        continue
                    seen.add(coset)
                    m = OrbitMorphism(group, src, tgt, coset)
                    homs.append(m)
                    self._morphisms[m.key] = m
                homs.sort(key=lambda m: group.index[m.rep])
                self._hom[(src.key, tgt.key)] = homs

    def hom(self, src_key: str, tgt_key: str) -> list[OrbitMorphism]:
        return self._hom[(src_key, tgt_key)]

    def morphism(self, key: str) -> OrbitMorphism:
        return self._morphisms[key]

    def identity(self, key: str) -> OrbitMorphism:
        s = self.by_key[key]
        return self.coset_morphism(s, s, self.group.identity)

    def coset_morphism(self, src: Subgroup, tgt: Subgroup,
                       gname: str) -> OrbitMorphism:
        coset = frozenset(self.group.mul(gname, k) for k in tgt.members)
        m = OrbitMorphism(self.group, src, tgt, coset)
        return self._morphisms[m.key]

    def compose(self, f: OrbitMorphism, h: OrbitMorphism) -> OrbitMorphism:
        """h o f for f: G/H -> G/K, h: G/K -> G/L."""
        if f.tgt.key != h.src.key:
            raise ValueError("morphisms do not compose")
        return self.coset_morphism(f.src, h.tgt,
                                   self.group.mul(f.rep, h.rep))

    def all_morphisms(self) -> list[OrbitMorphism]:
        return [self._morphisms[k] for k in sorted(self._morphisms)]

    def composable_pairs(self):
        for f in self.all_morphisms():
            for tgt in self.subgroups:
                for h in self._hom[(f.tgt.key, tgt.key)]:
                    yield f, h
