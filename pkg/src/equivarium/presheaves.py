"""Presheaves O_G^op -> Cat / Pos, subgroup families and the fixed-point presheaf."""

from __future__ import annotations

import itertools

from .categories import (
    CategoryError,
    FinCategory,
    Functor,
    compose_functors,
    empty_category,
    equal_functors,
    identity_functor,
    terminal_category,
    validate_functor,
)
from .equivariant import GCategory, NotEquivariantError, check_equivariant
from .groups import FiniteGroup, GroupError, Subgroup, is_subconjugate
from .orbit import OrbitCategory, orbit_category
from .report import Report


class PresheafError(ValueError):
    pass


class FamilyError(PresheafError):
    pass


class OrbitPresheaf:
    """X : O_G^op -> Cat.

    ``values[h]`` is X(G/H) for the subgroup with id ``h``.  ``restrictions[m]``
    is the functor f^* : X(G/K) -> X(G/H) for the O_G morphism m = f : G/H -> G/K,
    i.e. it is keyed by the O_G label (source subgroup, target subgroup, coset).
    """

    def __init__(self, orbit: OrbitCategory, values, restrictions, flavor: str = "cat", name=None):
        if flavor not in ("cat", "pos"):
            raise PresheafError(f"unknown flavor {flavor!r}")
        self.orbit = orbit
        self.values = tuple(values)
        self.restrictions = tuple(restrictions)
        self.flavor = flavor
        self.name = name
        if len(self.values) != orbit.cat.n_obj or len(self.restrictions) != orbit.cat.n_mor:
            raise PresheafError("presheaf data does not match the orbit category")

    def __repr__(self):
        return f"OrbitPresheaf({self.name or '?'} over {self.group.name}, {self.flavor})"

    @property
    def group(self) -> FiniteGroup:
        return self.orbit.group

    def value(self, H: Subgroup) -> FinCategory:
        return self.values[H.id]

    def restriction(self, m: int) -> Functor:
        return self.restrictions[m]

    def restriction_along(self, k: int, h: int, a: int) -> Functor:
        """r_a^* : X(G/H) -> X(G/K) for r_a : G/K -> G/H, eK -> aH."""
        return self.restrictions[self.orbit.morphism(k, h, a)]


def validate_presheaf(X: OrbitPresheaf) -> Report:
    O = X.orbit.cat
    for m in range(O.n_mor):
        F = X.restrictions[m]
        h, k = O.src[m], O.tgt[m]
        if not (F.source.same_as(X.values[k]) and F.target.same_as(X.values[h])):
            return Report.fail(f"restriction along {O.mor_labels[m]} has the wrong endpoints")
        r = validate_functor(F)
        if not r:
            return Report.fail(f"restriction along {O.mor_labels[m]} is not a functor: {r.witness}")
    for h in range(O.n_obj):
        if not equal_functors(X.restrictions[O.ident[h]], identity_functor(X.values[h])):
            return Report.fail(f"identity of G/H{h} does not restrict to the identity")
    for (g, f), gf in O.comp.items():
        # (g o f)^* = f^* o g^*
        if not equal_functors(X.restrictions[gf], compose_functors(X.restrictions[f], X.restrictions[g])):
            return Report.fail(f"functoriality fails at {O.mor_labels[g]} o {O.mor_labels[f]}")
    if X.flavor == "pos":
        for h, V in enumerate(X.values):
            if not V.is_thin:
                return Report.fail(f"value at G/H{h} is not thin")
            if any(V.src[m] != V.tgt[m] and V.hom(V.tgt[m], V.src[m]) for m in range(V.n_mor)):
                return Report.fail(f"value at G/H{h} is not antisymmetric")
    return Report.success()


# --- families ------------------------------------------------------------------


class SubgroupFamily:
    """A set of subgroups closed under subgroups and conjugation."""

    def __init__(self, group: FiniteGroup, members, check: bool = True):
        self.group = group
        self.members = tuple(sorted({H.elements: H for H in members}.values(), key=Subgroup.sort_key))
        self._keys = frozenset(H.elements for H in self.members)
        if check:
            self.validate().raise_for(FamilyError)

    def __contains__(self, H: Subgroup) -> bool:
        return H.elements in self._keys

    def __len__(self):
        return len(self.members)

    def __repr__(self):
        return f"SubgroupFamily({[H.elements for H in self.members]})"

    @property
    def ids(self) -> list[int]:
        return [H.id for H in self.members]

    def validate(self) -> Report:
        for H in self.members:
            if H.group is not self.group:
                return Report.fail("member of a different group")
            for K in self.group.subgroups:
                if K not in self and is_subconjugate(K, H):
                    return Report.fail(f"family not subconjugacy-closed: {K.elements} is subconjugate to {H.elements}")
        return Report.success()


def all_families(G: FiniteGroup) -> list[SubgroupFamily]:
    """Every subconjugacy-closed family, including the empty one."""
    classes = []
    for H in G.subgroups:
        if not any(H in cls for cls in classes):
            cls = SubgroupFamily(G, [K for K in G.subgroups if is_subconjugate(K, H) and is_subconjugate(H, K)], check=False)
            classes.append(cls)
    out = []
    for mask in itertools.product((0, 1), repeat=len(classes)):
        members = [H for on, cls in zip(mask, classes) if on for H in cls.members]
        fam = SubgroupFamily(G, members, check=False)
        if fam.validate():
            out.append(fam)
    out.sort(key=lambda F: (len(F), [H.sort_key() for H in F.members]))
    return out


_TERMINAL = terminal_category()
_EMPTY = empty_category()


def family_presheaf(G: FiniteGroup, family: SubgroupFamily, name=None) -> OrbitPresheaf:
    """X_F(G/H) = * if H in F, empty otherwise."""
    family.validate().raise_for(FamilyError)
    O = orbit_category(G)
    values = [_TERMINAL if H in family else _EMPTY for H in G.subgroups]
    restr = []
    for m in range(O.cat.n_mor):
        h, k = O.cat.src[m], O.cat.tgt[m]
        src, tgt = values[k], values[h]
        if src.n_obj and not tgt.n_obj:
            raise FamilyError("family not subconjugacy-closed")
        restr.append(Functor(src, tgt, [0] * src.n_obj, [0] * src.n_mor, name="!"))
    return OrbitPresheaf(O, values, restr, flavor="pos",
                         name=name or "family:" + ",".join(str(i) for i in family.ids))


def constant_presheaf(G: FiniteGroup, D: FinCategory, flavor: str = "cat", name=None) -> OrbitPresheaf:
    O = orbit_category(G)
    idD = identity_functor(D)
    return OrbitPresheaf(O, [D] * O.cat.n_obj, [idD] * O.cat.n_mor, flavor=flavor,
                         name=name or f"const:{D.name}")


def phi(C: GCategory, name=None) -> OrbitPresheaf:
    """Fixed-point presheaf G/H -> C^H; r_a : G/K -> G/H restricts by x -> a.x."""
    G = C.group
    O = orbit_category(G)
    values = [C.fixed_subcategory(H) for H in G.subgroups]
    cat = C.cat
    restr = []
    for m in range(O.cat.n_mor):
        k, h, _ = O.cat.mor_labels[m]
        a = O.rep(m)
        oa, ma = C.obj_act[a], C.mor_act[a]
        restr.append(Functor.from_labels(
            values[h], values[k],
            lambda x, oa=oa: cat.objects[oa[cat.obj_index[x]]],
            lambda f, ma=ma: cat.mor_labels[ma[cat.mor_index[f]]],
            name=f"{a}.",
        ))
    flavor = "pos" if cat.is_thin and all(
        not (cat.src[f] != cat.tgt[f] and cat.hom(cat.tgt[f], cat.src[f])) for f in range(cat.n_mor)) else "cat"
    return OrbitPresheaf(O, values, restr, flavor=flavor, name=name or f"Phi({C.name})")


# --- morphisms of presheaves -----------------------------------------------------


class PresheafMorphism:
    """lambda : X => Y with ``components[h]`` : X(G/H) -> Y(G/H)."""

    def __init__(self, source: OrbitPresheaf, target: OrbitPresheaf, components, name=None):
        self.source = source
        self.target = target
        self.components = tuple(components)
        self.name = name


def validate_presheaf_morphism(lam: PresheafMorphism) -> Report:
    X, Y = lam.source, lam.target
    if X.orbit is not Y.orbit:
        return Report.fail("presheaves over different orbit categories")
    O = X.orbit.cat
    for h, F in enumerate(lam.components):
        if not (F.source.same_as(X.values[h]) and F.target.same_as(Y.values[h])):
            return Report.fail(f"component at G/H{h} has the wrong endpoints")
        r = validate_functor(F)
        if not r:
            return Report.fail(f"component at G/H{h}: {r.witness}")
    for m in range(O.n_mor):
        h, k = O.src[m], O.tgt[m]
        lhs = compose_functors(lam.components[h], X.restrictions[m])
        rhs = compose_functors(Y.restrictions[m], lam.components[k])
        if not equal_functors(lhs, rhs):
            return Report.fail(f"naturality fails along {O.mor_labels[m]}")
    return Report.success()


def identity_presheaf_morphism(X: OrbitPresheaf) -> PresheafMorphism:
    return PresheafMorphism(X, X, [identity_functor(V) for V in X.values], name="id")


def compose_presheaf_morphisms(mu: PresheafMorphism, lam: PresheafMorphism) -> PresheafMorphism:
    """mu . lam"""
    return PresheafMorphism(lam.source, mu.target,
                            [compose_functors(b, a) for a, b in zip(lam.components, mu.components)])


def phi_on_functor(F: Functor, C: GCategory, D: GCategory) -> PresheafMorphism:
    """Phi F : Phi C => Phi D, the levelwise restriction of a G-functor."""
    r = check_equivariant(F, C, D)
    if not r:
        raise NotEquivariantError(r.witness)
    X, Y = phi(C), phi(D)
    comps = [Functor.from_labels(X.values[h], Y.values[h], F.obj_label, F.mor_label)
             for h in range(len(X.values))]
    return PresheafMorphism(X, Y, comps, name=f"Phi({F.name})")


def presheaf_to_json(X: OrbitPresheaf) -> dict:
    from .serialize import category_to_json

    O = X.orbit.cat
    return {
        "group": X.group.name,
        "flavor": X.flavor,
        "name": X.name,
        "subgroups": [list(H.elements) for H in X.group.subgroups],
        "values": {str(h): category_to_json(V) for h, V in enumerate(X.values)},
        "restrictions": [
            {
                "source": O.mor_labels[m][0], "target": O.mor_labels[m][1], "coset": O.mor_labels[m][2],
                "obj_map": [F.target.objects[i] for i in F.obj_map],
                "mor_map": [F.target.mor_labels[i] for i in F.mor_map],
            }
            for m, F in enumerate(X.restrictions)
        ],
    }
