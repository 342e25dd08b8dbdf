"""The categorical Elmendorf construction C X = Grothendieck(O_{G,+}^op, X o p).

Objects are labelled ``((h, c), x)``: orbit G/H, marked coset c = aH and x an
object of X(G/H).

Direction convention (easy to get backwards): a morphism
``(H, aH, x) -> (K, bK, y)`` of C X is a pair (f, h) where

    f : (G/K, bK) -> (G/H, aH)    is a morphism of O_{G,+}  (note: reversed)
    h : f^* x -> y                is a morphism of X(G/K)

so it exists only when bKb^-1 <= aHa^-1.  Its label is ``(f_label, h_label)``
with ``f_label = ((k, cb), (h, ca))`` the O_{G,+} label, i.e. source first.
"""

from __future__ import annotations

from .categories import (
    CategoryError,
    FinCategory,
    Functor,
    NatTransformation,
    identity_functor,
    opposite,
)
from .equivariant import GCategory
from .grothendieck import Diagram, grothendieck
from .groups import GroupError, Subgroup, conjugate_subgroup
from .limits import guard
from .orbit import MarkedOrbitCategory, marked_orbit_category
from .presheaves import OrbitPresheaf, PresheafMorphism, phi
from .report import Report


class ElmendorfCategory(GCategory):
    """C X as a G-category, keeping track of the presheaf it came from."""

    def __init__(self, X: OrbitPresheaf, marked: MarkedOrbitCategory, diagram: Diagram, cat: FinCategory):
        G = X.group
        spaces = marked.orbit.spaces

        def act_mark(g, mark):
            return (mark[0], spaces[mark[0]].action[g][mark[1]])

        oa = [[cat.obj_index[(act_mark(g, m), x)] for (m, x) in cat.objects] for g in range(G.order)]
        ma = [[cat.mor_index[((act_mark(g, f[0]), act_mark(g, f[1])), h)] for (f, h) in cat.mor_labels]
              for g in range(G.order)]
        super().__init__(cat, G, oa, ma, name=cat.name)
        self.presheaf = X
        self.marked = marked
        self.diagram = diagram


def elmendorf_diagram(X: OrbitPresheaf) -> Diagram:
    """X o p as a functor O_{G,+}^op -> Cat."""
    Op = marked_orbit_category(X.group)
    I = opposite(Op.cat)
    fibers = tuple(X.values[h] for (h, c) in I.objects)
    # a morphism u : c -> d of O_{G,+}^op is the O_{G,+} morphism d -> c,
    # whose underlying G-map restricts X(c) -> X(d)
    maps = tuple(X.restrictions[Op.underlying(u)] for u in range(I.n_mor))
    return Diagram(I, fibers, maps)


def c_cat(X: OrbitPresheaf) -> ElmendorfCategory:
    cached = getattr(X, "_c_cat", None)
    if cached is not None:
        return cached
    G = X.group
    Op = marked_orbit_category(G)
    spaces = Op.orbit.spaces
    guard("morphisms", sum(len(spaces[h]) * X.values[h].n_obj for h in range(len(spaces))),
          "objects of C X")
    D = elmendorf_diagram(X)
    cat = grothendieck(D, name=f"C({X.name})")
    out = ElmendorfCategory(X, Op, D, cat)
    X._c_cat = out
    return out


def c_on_nat(lam: PresheafMorphism) -> Functor:
    """C lambda : C X -> C Y, (H, aH, x) -> (H, aH, lam_H x), (f, h) -> (f, lam_K h)."""
    CX, CY = c_cat(lam.source), c_cat(lam.target)
    comps = lam.components

    def on_obj(obj):
        mark, x = obj
        return (mark, comps[mark[0]].obj_label(x))

    def on_mor(mor):
        f, h = mor
        return (f, comps[f[0][0]].mor_label(h))

    return Functor.from_labels(CX.cat, CY.cat, on_obj, on_mor, name="C(lambda)")


def _check_subgroup(X: OrbitPresheaf, L: Subgroup):
    if L.group is not X.group:
        raise GroupError("subgroup of a different group")
    return L.id


def epsilon(X: OrbitPresheaf, L: Subgroup) -> Functor:
    """eps_L : (C X)^L -> X(G/L), (H, aH, x) -> r_a^* x and (f, h) -> r_b^* h."""
    l = _check_subgroup(X, L)
    CX = c_cat(X)
    fixed = CX.fixed_subcategory(L)
    orbit = CX.marked.orbit
    spaces = orbit.spaces

    def restrict_along(mark):
        h, c = mark
        try:
            m = orbit.morphism(l, h, spaces[h].rep(c))
        except GroupError:
            raise CategoryError(f"object with mark {mark} is not {L.elements}-fixed") from None
        return X.restrictions[m]

    return Functor.from_labels(
        fixed, X.values[l],
        lambda obj: restrict_along(obj[0]).obj_label(obj[1]),
        lambda mor: restrict_along(mor[0][0]).mor_label(mor[1]),
        name=f"eps_{L.elements}",
    )


def epsilon_on(X: OrbitPresheaf, L: Subgroup, obj_label):
    """eps_L on a single object; raises if the object is not L-fixed."""
    l = _check_subgroup(X, L)
    orbit = marked_orbit_category(X.group).orbit
    (h, c), x = obj_label
    try:
        m = orbit.morphism(l, h, orbit.spaces[h].rep(c))
    except GroupError:
        raise CategoryError(f"object {obj_label!r} is not {L.elements}-fixed") from None
    return X.restrictions[m].obj_label(x)


def eta_l(X: OrbitPresheaf, L: Subgroup) -> Functor:
    """eta_L : X(G/L) -> (C X)^L, x -> (G/L, eL, x), f -> (id, f).

    Defined one subgroup at a time; it is not natural in L.
    """
    l = _check_subgroup(X, L)
    CX = c_cat(X)
    mark = (l, 0)
    return Functor.from_labels(
        X.values[l], CX.fixed_subcategory(L),
        lambda x: (mark, x),
        lambda f: ((mark, mark), f),
        name=f"eta_{L.elements}",
    )


def unit_zigzag(X: OrbitPresheaf, L: Subgroup) -> NatTransformation:
    """id => eta_L o eps_L with component (r_a, id) : (H, aH, x) -> (G/L, eL, r_a^* x)."""
    from .categories import compose_functors

    l = _check_subgroup(X, L)
    CX = c_cat(X)
    fixed = CX.fixed_subcategory(L)
    eps, eta = epsilon(X, L), eta_l(X, L)
    target = compose_functors(eta, eps)
    VL = X.values[l]

    def component(obj):
        mark, x = obj
        ex = eps.obj_label(obj)
        return (((l, 0), mark), VL.id_label(ex))

    return NatTransformation.from_labels(identity_functor(fixed), target, component,
                                         name=f"unit_{L.elements}")


def ev(C: GCategory) -> Functor:
    """ev_C : C Phi C -> C, (H, aH, x) -> a.x and (f, h) : (.., bK, y) -> b.h."""
    X = phi(C)
    CX = c_cat(X)
    spaces = CX.marked.orbit.spaces
    cat = C.cat

    def on_obj(obj):
        (h, c), x = obj
        a = spaces[h].rep(c)
        return cat.objects[C.obj_act[a][cat.obj_index[x]]]

    def on_mor(mor):
        f, hl = mor
        k, cb = f[0]
        b = spaces[k].rep(cb)
        return cat.mor_labels[C.mor_act[b][cat.mor_index[hl]]]

    F = Functor.from_labels(CX.cat, cat, on_obj, on_mor, name="ev")
    F.presheaf = X
    return F


def phi_ev_matches_epsilon(C: GCategory) -> Report:
    """Phi(ev_C) = eps_{Phi C} componentwise, as exact functor data."""
    from .categories import equal_functors

    F = ev(C)
    X = F.presheaf
    CX = c_cat(X)
    for L in C.group.subgroups:
        fixed = CX.fixed_subcategory(L)
        restricted = Functor.from_labels(fixed, C.fixed_subcategory(L), F.obj_label, F.mor_label)
        if not equal_functors(restricted, epsilon(X, L)):
            return Report.fail(f"Phi(ev) differs from eps at L = {L.elements}")
    return Report.success()


def epsilon_presheaf_morphism(X: OrbitPresheaf) -> PresheafMorphism:
    """eps_X : Phi C X => X; validating it checks naturality in L."""
    CX = c_cat(X)
    return PresheafMorphism(phi(CX), X, [epsilon(X, L) for L in X.group.subgroups], name="eps")


def is_thin_output(X: OrbitPresheaf) -> bool:
    return c_cat(X).cat.is_thin


# --- universal spaces ----------------------------------------------------------


def stabilizer(G, h: int, c: int) -> Subgroup:
    """Stabilizer aHa^-1 of the coset aH."""
    H = G.subgroups[h]
    a = marked_orbit_category(G).orbit.spaces[h].rep(c)
    return conjugate_subgroup(H, a)


def family_gset_report(X: OrbitPresheaf, family) -> Report:
    """Objects of C X_F form the G-set of marked orbits G/H over H in F, and
    (H, aH) <= (K, bK) iff aHa^-1 contains bKb^-1."""
    G = X.group
    CX = c_cat(X)
    spaces = CX.marked.orbit.spaces
    expected = {(h, c) for h in family.ids for c in range(len(spaces[h]))}
    marks = [mark for (mark, x) in CX.cat.objects]
    if len(set(marks)) != len(marks) or set(marks) != expected:
        return Report.fail("objects are not the disjoint union of the orbits in the family")
    for g in range(G.order):
        for i, (h, c) in enumerate(marks):
            if marks[CX.obj_act[g][i]] != (h, spaces[h].action[g][c]):
                return Report.fail(f"object map is not equivariant at g={g}")
    stab = {m: stabilizer(G, *m) for m in marks}
    cat = CX.cat
    for i, mi in enumerate(marks):
        for j, mj in enumerate(marks):
            has = bool(cat.hom(i, j))
            if has != stab[mj].issubset(stab[mi]):
                return Report.fail(f"order at ({mi}, {mj}) disagrees with the stabilizer formula")
    return Report.success()
