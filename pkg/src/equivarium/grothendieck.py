"""Diagrams of finite categories and their Grothendieck constructions.

A :class:`Diagram` is a functor F : I -> Cat with I finite.  The Grothendieck
construction has objects (c, x) with x in F(c) and morphisms
(f, h) : (c, x) -> (d, y) with f : c -> d and h : F(f)(x) -> y, composed by
(f', h') o (f, h) = (f' o f, h' o F(f')(h)).
"""

from __future__ import annotations

from dataclasses import dataclass

from .categories import (
    CategoryError,
    FinCategory,
    Functor,
    build_category,
    compose_functors,
    equal_functors,
    full_subcategory,
    identity_functor,
    validate_functor,
)
from .limits import guard
from .report import Report


@dataclass(frozen=True, eq=False)
class Diagram:
    index: FinCategory
    fibers: tuple  # FinCategory per object id of index
    maps: tuple  # Functor per morphism id of index, fibers[src] -> fibers[tgt]

    def fiber(self, label) -> FinCategory:
        return self.fibers[self.index.obj_index[label]]

    def fmap(self, label) -> Functor:
        return self.maps[self.index.mor_index[label]]

    def restrict(self, obj_ids) -> Diagram:
        """Restriction to the full subcategory of the index on ``obj_ids``."""
        I = self.index
        sub = full_subcategory(I, obj_ids, name=f"{I.name}|")
        return Diagram(
            sub,
            tuple(self.fibers[I.obj_index[x]] for x in sub.objects),
            tuple(self.maps[I.mor_index[m]] for m in sub.mor_labels),
        )

    def validate(self) -> Report:
        I = self.index
        for u in range(I.n_mor):
            F = self.maps[u]
            if not (F.source.same_as(self.fibers[I.src[u]]) and F.target.same_as(self.fibers[I.tgt[u]])):
                return Report.fail(f"F({I.mor_labels[u]!r}) has the wrong endpoints")
            r = validate_functor(F)
            if not r:
                return Report.fail(f"F({I.mor_labels[u]!r}): {r.witness}")
        for x in range(I.n_obj):
            if not equal_functors(self.maps[I.ident[x]], identity_functor(self.fibers[x])):
                return Report.fail(f"F does not preserve the identity of {I.objects[x]!r}")
        for (g, f), gf in I.comp.items():
            if not equal_functors(self.maps[gf], compose_functors(self.maps[g], self.maps[f])):
                return Report.fail(f"F does not preserve {I.mor_labels[g]!r} o {I.mor_labels[f]!r}")
        return Report.success()


def grothendieck(D: Diagram, name: str | None = None) -> FinCategory:
    """The Grothendieck construction, with labels ((c, x)) and ((f, h))."""
    I = D.index
    guard("morphisms", sum(F.n_obj for F in D.fibers), "Grothendieck construction objects")
    objects = [(I.objects[c], x) for c in range(I.n_obj) for x in D.fibers[c].objects]

    def morphisms():
        for u in range(I.n_mor):
            c, d = I.src[u], I.tgt[u]
            Fu, Fc, Fd = D.maps[u], D.fibers[c], D.fibers[d]
            cl, dl, ul = I.objects[c], I.objects[d], I.mor_labels[u]
            for x in range(Fc.n_obj):
                fx = Fu.obj_map[x]
                for y in range(Fd.n_obj):
                    for h in Fd.hom(fx, y):
                        yield (ul, Fd.mor_labels[h]), (cl, Fc.objects[x]), (dl, Fd.objects[y])

    def identity(obj):
        c, x = obj
        return (I.mor_labels[I.ident[I.obj_index[c]]], D.fiber(c).id_label(x))

    def compose(second, first):
        (u2, h2), (u1, h1) = second, first
        iu1, iu2 = I.mor_index[u1], I.mor_index[u2]
        d = I.tgt[iu1]
        e = I.tgt[iu2]
        Fd, Fe = D.fibers[d], D.fibers[e]
        pushed = D.maps[iu2].mor_map[Fd.mor_index[h1]]
        h = Fe.comp[(Fe.mor_index[h2], pushed)]
        return (I.mor_labels[I.comp[(iu2, iu1)]], Fe.mor_labels[h])

    try:
        return build_category(objects, morphisms(), identity, compose, name=name or f"int_{I.name}")
    except KeyError as e:
        raise CategoryError(f"inconsistent diagram data: {e}") from None
