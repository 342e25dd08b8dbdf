"""The orbit category O_G and the marked orbit category O_{G,+}.

A morphism G/H -> G/K of O_G is the G-map r_a sending eH to aK; it exists
exactly when a^-1 H a <= K and depends only on the coset aK.  Morphisms are
labelled ``(h, k, c)`` with ``h``, ``k`` subgroup ids and ``c`` the index of
aK in G/K, so the label fixes the canonical representative a = min(aK).

Objects of O_{G,+} are pairs ``(h, c)``, the orbit G/H marked by its c-th
coset.  A morphism (G/H, aH) -> (G/K, bK) is a G-map f with f(aH) = bK; it is
unique when it exists, namely r_{a^-1 b}, and exists iff aHa^-1 <= bKb^-1.
"""

from __future__ import annotations

from functools import cached_property

from .categories import FinCategory, Functor, build_category, full_subcategory
from .equivariant import GCategory
from .groups import FiniteGroup, GroupError, Subgroup, coset_space, fixed_cosets
from .limits import guard


class OrbitCategory:
    def __init__(self, G: FiniteGroup):
        guard("group_order", G.order, "group order")
        self.group = G
        self.subgroups = G.subgroups
        self.spaces = tuple(coset_space(G, H) for H in self.subgroups)
        n = len(self.subgroups)
        mors = []
        for h in range(n):
            for k in range(n):
                for c in fixed_cosets(self.spaces[k], self.subgroups[h]):
                    mors.append(((h, k, c), h, k))

        def compose(g, f):
            h, k, ca = f
            k2, l, cb = g
            a, b = self.spaces[k].rep(ca), self.spaces[l].rep(cb)
            return (h, l, self.spaces[l].coset_of[G.mult[a][b]])

        self.cat = build_category(range(n), mors, lambda h: (h, h, 0), compose, name=f"O_{G.name}")

    def __repr__(self):
        return f"OrbitCategory({self.group.name}: {self.cat.n_obj} orbits, {self.cat.n_mor} maps)"

    def rep(self, m: int) -> int:
        h, k, c = self.cat.mor_labels[m]
        return self.spaces[k].rep(c)

    def morphism(self, h: int, k: int, a: int) -> int:
        """Id of r_a : G/H -> G/K (eH -> aK); raises if r_a is not a G-map."""
        label = (h, k, self.spaces[k].coset_of[a])
        try:
            return self.cat.mor_index[label]
        except KeyError:
            raise GroupError(f"no G-map G/H{h} -> G/H{k} sends eH to {a}K") from None

    def apply(self, m: int, c: int) -> int:
        """Image of the coset xH (index c) under the map m : G/H -> G/K."""
        h, k, _ = self.cat.mor_labels[m]
        x = self.spaces[h].rep(c)
        return self.spaces[k].coset_of[self.group.mult[x][self.rep(m)]]

    def hom_size(self, h: int, k: int) -> int:
        return len(self.cat.hom(h, k))


class MarkedOrbitCategory:
    """O_{G,+} as a G-category, with the forgetful functor to O_G."""

    def __init__(self, orbit: OrbitCategory):
        self.orbit = orbit
        G = self.group = orbit.group
        spaces = orbit.spaces
        objs = [(h, c) for h in range(len(spaces)) for c in range(len(spaces[h]))]
        guard("morphisms", len(objs) ** 2, "marked orbit category hom table")
        mors = []
        for (h, ca) in objs:
            a = spaces[h].rep(ca)
            for (k, cb) in objs:
                b = spaces[k].rep(cb)
                if self.underlying_label(h, a, k, b) in orbit.cat.mor_index:
                    mors.append((((h, ca), (k, cb)), (h, ca), (k, cb)))
        self.cat = build_category(objs, mors, lambda x: (x, x), lambda g, f: (f[0], g[1]),
                                  name=f"O_{G.name},+")

        def act_obj(g, x):
            return (x[0], spaces[x[0]].action[g][x[1]])

        self.gcat = GCategory.from_labels(self.cat, G, act_obj,
                                          lambda g, m: (act_obj(g, m[0]), act_obj(g, m[1])),
                                          name=self.cat.name)

    def underlying_label(self, h: int, a: int, k: int, b: int):
        """Label of r_{a^-1 b} : G/H -> G/K, the only candidate map aH -> bK."""
        G = self.group
        return (h, k, self.orbit.spaces[k].coset_of[G.mult[G.inv[a]][b]])

    def rep(self, obj_label) -> int:
        h, c = obj_label
        return self.orbit.spaces[h].rep(c)

    def underlying(self, m: int) -> int:
        """O_G morphism id under the forgetful functor."""
        (h, ca), (k, cb) = self.cat.mor_labels[m]
        sp = self.orbit.spaces
        return self.orbit.cat.mor_index[self.underlying_label(h, sp[h].rep(ca), k, sp[k].rep(cb))]

    @cached_property
    def forgetful(self) -> Functor:
        return Functor(self.cat, self.orbit.cat,
                       [h for (h, c) in self.cat.objects],
                       [self.underlying(m) for m in range(self.cat.n_mor)], name="p")

    def fixed_object_ids(self, K: Subgroup) -> list[int]:
        return [i for i, (h, c) in enumerate(self.cat.objects)
                if c in set(fixed_cosets(self.orbit.spaces[h], K))]


_orbit_cache: dict = {}


def orbit_category(G: FiniteGroup) -> OrbitCategory:
    hit = _orbit_cache.get(id(G))
    if hit is None or hit.group is not G:
        hit = _orbit_cache[id(G)] = OrbitCategory(G)
    return hit


_marked_cache: dict = {}


def marked_orbit_category(G: FiniteGroup) -> MarkedOrbitCategory:
    hit = _marked_cache.get(id(G))
    if hit is None or hit.group is not G:
        hit = _marked_cache[id(G)] = MarkedOrbitCategory(orbit_category(G))
    return hit


def fixed_marked_subcategory(Op: MarkedOrbitCategory, K: Subgroup) -> FinCategory:
    """Full subcategory of O_{G,+} on the objects whose mark is K-fixed.

    G acts trivially on the underlying maps, so every morphism between fixed
    objects is fixed and this agrees with the fixed subcategory.
    """
    return full_subcategory(Op.cat, Op.fixed_object_ids(K), name=f"{Op.cat.name}^{K.elements}")
