"""Categories and preorders with a G-action by automorphisms."""

from __future__ import annotations

from functools import cached_property

from .categories import (
    CategoryError,
    FinCategory,
    Functor,
    Preorder,
    Poset,
    cat_to_preorder,
    preorder_to_cat,
    subcategory,
    validate_functor,
)
from .groups import FiniteGroup, Subgroup
from .report import Report


class NotEquivariantError(CategoryError):
    pass


class GCategory:
    """A finite category with action tables ``obj_act[g][x]`` and ``mor_act[g][m]``."""

    def __init__(self, cat: FinCategory, group: FiniteGroup, obj_act, mor_act, name=None):
        self.cat = cat
        self.group = group
        self.obj_act = tuple(tuple(r) for r in obj_act)
        self.mor_act = tuple(tuple(r) for r in mor_act)
        self.name = name or cat.name

    def __repr__(self):
        return f"GCategory({self.name or '?'}, {self.group.name}: {self.cat.n_obj} objects, {self.cat.n_mor} morphisms)"

    @classmethod
    def from_labels(cls, cat: FinCategory, group: FiniteGroup, act_obj, act_mor, name=None) -> GCategory:
        """Action given on labels by ``act_obj(g, x)`` and ``act_mor(g, m)``."""
        oa = [[cat.obj_index[act_obj(g, x)] for x in cat.objects] for g in range(group.order)]
        ma = [[cat.mor_index[act_mor(g, m)] for m in cat.mor_labels] for g in range(group.order)]
        return cls(cat, group, oa, ma, name=name)

    @classmethod
    def trivial(cls, cat: FinCategory, group: FiniteGroup) -> GCategory:
        return cls(cat, group, [range(cat.n_obj)] * group.order, [range(cat.n_mor)] * group.order)

    def act_functor(self, g: int) -> Functor:
        return Functor(self.cat, self.cat, self.obj_act[g], self.mor_act[g], name=f"g{g}")

    def fixed_object_ids(self, H: Subgroup) -> list[int]:
        return [x for x in range(self.cat.n_obj) if all(self.obj_act[h][x] == x for h in H)]

    def fixed_morphism_ids(self, H: Subgroup) -> list[int]:
        return [m for m in range(self.cat.n_mor) if all(self.mor_act[h][m] == m for h in H)]

    def fixed_subcategory(self, H: Subgroup) -> FinCategory:
        key = H.elements
        hit = self._fixed_cache.get(key)
        if hit is None:
            hit = subcategory(self.cat, self.fixed_object_ids(H), self.fixed_morphism_ids(H),
                              name=f"{self.name}^{key}")
            self._fixed_cache[key] = hit
        return hit

    @cached_property
    def _fixed_cache(self) -> dict:
        return {}


def fixed_subcategory(C: GCategory, H: Subgroup) -> FinCategory:
    """C^H: the H-fixed objects and the H-fixed morphisms between them."""
    if H.group is not C.group:
        raise CategoryError("subgroup of a different group")
    return C.fixed_subcategory(H)


def validate_gcategory(C: GCategory) -> Report:
    G = C.group
    n, m = C.cat.n_obj, C.cat.n_mor
    if len(C.obj_act) != G.order or len(C.mor_act) != G.order:
        return Report.fail("action tables have the wrong length")
    if tuple(C.obj_act[0]) != tuple(range(n)) or tuple(C.mor_act[0]) != tuple(range(m)):
        return Report.fail("identity element acts nontrivially")
    for g in range(G.order):
        r = validate_functor(C.act_functor(g))
        if not r:
            return Report.fail(f"element {g} does not act by a functor: {r.witness}")
    for g in range(G.order):
        for h in range(G.order):
            gh = G.mult[g][h]
            for x in range(n):
                if C.obj_act[gh][x] != C.obj_act[g][C.obj_act[h][x]]:
                    return Report.fail(f"action law fails on object {C.cat.objects[x]!r} at ({g}, {h})")
            for f in range(m):
                if C.mor_act[gh][f] != C.mor_act[g][C.mor_act[h][f]]:
                    return Report.fail(f"action law fails on morphism {C.cat.mor_labels[f]!r} at ({g}, {h})")
    return Report.success()


def check_equivariant(F: Functor, C: GCategory, D: GCategory) -> Report:
    """F(g x) = g F(x) and F(g f) = g F(f) for all g."""
    if F.source is not C.cat or F.target is not D.cat:
        if not (F.source.same_as(C.cat) and F.target.same_as(D.cat)):
            return Report.fail("functor endpoints do not match the G-categories")
        F = Functor.from_labels(C.cat, D.cat, F.obj_label, F.mor_label)
    for g in range(C.group.order):
        for x in range(C.cat.n_obj):
            if F.obj_map[C.obj_act[g][x]] != D.obj_act[g][F.obj_map[x]]:
                return Report.fail(f"not equivariant: g={g} on object {C.cat.objects[x]!r}")
        for f in range(C.cat.n_mor):
            if F.mor_map[C.mor_act[g][f]] != D.mor_act[g][F.mor_map[f]]:
                return Report.fail(f"not equivariant: g={g} on morphism {C.cat.mor_labels[f]!r}")
    return Report.success()


class GPreorder:
    """A preorder with an order-preserving G-action ``action[g][i]``."""

    def __init__(self, order: Preorder, group: FiniteGroup, action, name=None):
        self.order = order
        self.group = group
        self.action = tuple(tuple(r) for r in action)
        self.name = name

    def __len__(self):
        return len(self.order)

    def __repr__(self):
        return f"GPreorder({self.name or '?'}, {self.group.name}, {len(self)} elements)"

    @property
    def elements(self):
        return self.order.elements

    @property
    def is_poset(self) -> bool:
        return self.order.is_antisymmetric

    @classmethod
    def from_labels(cls, order: Preorder, group: FiniteGroup, act, name=None) -> GPreorder:
        return cls(order, group, [[order.index[act(g, x)] for x in order.elements]
                                  for g in range(group.order)], name=name)

    def fixed_ids(self, H: Subgroup) -> list[int]:
        return [i for i in range(len(self)) if all(self.action[h][i] == i for h in H)]

    def fixed(self, H: Subgroup) -> Preorder:
        ids = self.fixed_ids(H)
        E, L = self.order.elements, self.order.leq
        cls = Poset if isinstance(self.order, Poset) else Preorder
        return cls([E[i] for i in ids], [[L[i][j] for j in ids] for i in ids], check=False)

    def validate(self) -> Report:
        r = self.order.validate()
        if not r:
            return r
        G, n, L = self.group, len(self), self.order.leq
        if self.action[0] != tuple(range(n)):
            return Report.fail("identity element acts nontrivially")
        for g in range(G.order):
            a = self.action[g]
            if sorted(a) != list(range(n)):
                return Report.fail(f"element {g} does not act by a bijection")
            for i in range(n):
                for j in range(n):
                    if L[i][j] != L[a[i]][a[j]]:
                        return Report.fail(f"element {g} is not an order automorphism at ({self.elements[i]!r}, {self.elements[j]!r})")
        for g in range(G.order):
            for h in range(G.order):
                gh = G.mult[g][h]
                for i in range(n):
                    if self.action[gh][i] != self.action[g][self.action[h][i]]:
                        return Report.fail(f"action law fails at ({g}, {h}) on {self.elements[i]!r}")
        return Report.success()

    def to_gcategory(self) -> GCategory:
        C = preorder_to_cat(self.order)
        E, act = self.elements, self.action
        idx = self.order.index
        return GCategory.from_labels(
            C, self.group,
            lambda g, x: E[act[g][idx[x]]],
            lambda g, m: (E[act[g][idx[m[0]]]], E[act[g][idx[m[1]]]]),
            name=self.name,
        )

    def to_json(self) -> dict:
        data = self.order.to_json()
        data["strict"] = [[i, j] for i, j in self.order.strict_pairs()]
        data["action"] = [list(r) for r in self.action]
        return data


def gcategory_to_gpreorder(C: GCategory, name=None) -> GPreorder:
    P = cat_to_preorder(C.cat)
    if P.is_antisymmetric:
        P = Poset(P.elements, P.leq, check=False)
    return GPreorder(P, C.group, C.obj_act, name=name or C.name)


def is_monotone(f, P: Preorder, Q: Preorder) -> bool:
    n = len(P)
    return all(Q.leq[f[i]][f[j]] for i in range(n) for j in range(n) if P.leq[i][j])


def is_equivariant_map(f, P: GPreorder, Q: GPreorder) -> bool:
    return all(f[P.action[g][i]] == Q.action[g][f[i]]
               for g in range(P.group.order) for i in range(len(P)))
