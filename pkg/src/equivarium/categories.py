"""Finite categories, functors and natural transformations as explicit tables.

Objects and morphisms carry hashable *labels*; ids are dense integers that
index into the tables.  Labels are what survive passage to subcategories, so
functors and categories built independently compare equal through them.
"""

from __future__ import annotations

from collections import defaultdict
from functools import cached_property
from typing import Callable, Hashable, Iterable

from .limits import guard
from .report import Report


class CategoryError(ValueError):
    pass


class NotThinError(CategoryError):
    pass


class FinCategory:
    """A finite category with an explicit composition table.

    ``comp[(g, f)]`` is the id of ``g o f`` and is defined exactly when
    ``tgt[f] == src[g]``.
    """

    def __init__(self, objects, mor_labels, src, tgt, ident, comp, name=None):
        self.objects = tuple(objects)
        self.mor_labels = tuple(mor_labels)
        guard("morphisms", len(self.mor_labels), "morphisms per category")
        self.src = tuple(src)
        self.tgt = tuple(tgt)
        self.ident = tuple(ident)
        self.comp = comp
        self.name = name
        self.obj_index = {x: i for i, x in enumerate(self.objects)}
        self.mor_index = {m: i for i, m in enumerate(self.mor_labels)}
        if len(self.obj_index) != len(self.objects) or len(self.mor_index) != len(self.mor_labels):
            raise CategoryError("duplicate labels")

    def __repr__(self):
        return f"FinCategory({self.name or '?'}: {self.n_obj} objects, {self.n_mor} morphisms)"

    @property
    def n_obj(self) -> int:
        return len(self.objects)

    @property
    def n_mor(self) -> int:
        return len(self.mor_labels)

    def compose(self, g: int, f: int) -> int:
        return self.comp[(g, f)]

    @cached_property
    def _homs(self):
        homs = defaultdict(list)
        out, into = defaultdict(list), defaultdict(list)
        for m in range(self.n_mor):
            homs[(self.src[m], self.tgt[m])].append(m)
            out[self.src[m]].append(m)
            into[self.tgt[m]].append(m)
        return homs, out, into

    def hom(self, x: int, y: int) -> list[int]:
        return self._homs[0].get((x, y), [])

    def out_of(self, x: int) -> list[int]:
        return self._homs[1].get(x, [])

    def into(self, y: int) -> list[int]:
        return self._homs[2].get(y, [])

    @cached_property
    def is_thin(self) -> bool:
        return all(len(v) <= 1 for v in self._homs[0].values())

    def is_identity(self, m: int) -> bool:
        return self.ident[self.src[m]] == m

    # label-level access
    def obj(self, label) -> int:
        return self.obj_index[label]

    def mor(self, label) -> int:
        return self.mor_index[label]

    def id_label(self, obj_label):
        return self.mor_labels[self.ident[self.obj_index[obj_label]]]

    @cached_property
    def signature(self):
        """Label-level data determining the category up to equality."""
        L, O = self.mor_labels, self.objects
        return (
            frozenset(O),
            frozenset((L[m], O[self.src[m]], O[self.tgt[m]]) for m in range(self.n_mor)),
            frozenset((O[x], L[self.ident[x]]) for x in range(self.n_obj)),
            frozenset((L[g], L[f], L[h]) for (g, f), h in self.comp.items()),
        )

    def same_as(self, other: FinCategory) -> bool:
        return self is other or self.signature == other.signature


def build_category(
    objects: Iterable[Hashable],
    morphisms: Iterable[tuple[Hashable, Hashable, Hashable]],
    identity: Callable,
    compose: Callable,
    name: str | None = None,
) -> FinCategory:
    """Tabulate a category from label-level data.

    ``morphisms`` yields ``(label, src_label, tgt_label)``; ``identity`` maps an
    object label to its identity label; ``compose(g, f)`` returns the label of
    ``g o f``.
    """
    objects = list(objects)
    oidx = {x: i for i, x in enumerate(objects)}
    labels, src, tgt = [], [], []
    for lab, s, t in morphisms:
        labels.append(lab)
        src.append(oidx[s])
        tgt.append(oidx[t])
    guard("morphisms", len(labels), "morphisms per category")
    midx = {m: i for i, m in enumerate(labels)}
    ident = [midx[identity(x)] for x in objects]
    into, out = defaultdict(list), defaultdict(list)
    for m in range(len(labels)):
        into[tgt[m]].append(m)
        out[src[m]].append(m)
    comp = {}
    for y in range(len(objects)):
        for f in into[y]:
            for g in out[y]:
                h = compose(labels[g], labels[f])
                try:
                    comp[(g, f)] = midx[h]
                except KeyError:
                    raise CategoryError(f"composite {h!r} of {labels[g]!r} o {labels[f]!r} is not a morphism") from None
    return FinCategory(objects, labels, src, tgt, ident, comp, name=name)


def validate_category(C: FinCategory) -> Report:
    n = C.n_mor
    for x in range(C.n_obj):
        i = C.ident[x]
        if C.src[i] != x or C.tgt[i] != x:
            return Report.fail(f"identity of {C.objects[x]!r} has wrong endpoints")
    expected = sum(len(C.into(y)) * len(C.out_of(y)) for y in range(C.n_obj))
    if len(C.comp) != expected:
        return Report.fail("composition is not defined exactly on composable pairs")
    for (g, f), h in C.comp.items():
        if C.tgt[f] != C.src[g]:
            return Report.fail(f"composition defined on non-composable pair ({C.mor_labels[g]!r}, {C.mor_labels[f]!r})")
        if C.src[h] != C.src[f] or C.tgt[h] != C.tgt[g]:
            return Report.fail(f"composite of ({C.mor_labels[g]!r}, {C.mor_labels[f]!r}) has wrong endpoints")
    for m in range(n):
        if C.comp[(m, C.ident[C.src[m]])] != m or C.comp[(C.ident[C.tgt[m]], m)] != m:
            return Report.fail(f"unit law fails at {C.mor_labels[m]!r}")
    if C.is_thin:
        # well-typed composition in a thin category is automatically associative
        return Report.success()
    comp = C.comp
    for f in range(n):
        for g in C.out_of(C.tgt[f]):
            gf = comp[(g, f)]
            for h in C.out_of(C.tgt[g]):
                if comp[(h, gf)] != comp[(comp[(h, g)], f)]:
                    L = C.mor_labels
                    return Report.fail(f"associativity fails at triple ({L[h]!r}, {L[g]!r}, {L[f]!r})")
    return Report.success()


def subcategory(C: FinCategory, obj_ids: Iterable[int], mor_ids: Iterable[int], name=None) -> FinCategory:
    """Subcategory on the given ids (assumed closed), keeping labels."""
    obj_ids = sorted(set(obj_ids))
    mor_ids = sorted(set(mor_ids))
    onew = {x: i for i, x in enumerate(obj_ids)}
    mnew = {m: i for i, m in enumerate(mor_ids)}
    comp = {}
    for (g, f), h in C.comp.items():
        if g in mnew and f in mnew:
            if h not in mnew:
                raise CategoryError("subcategory is not closed under composition")
            comp[(mnew[g], mnew[f])] = mnew[h]
    return FinCategory(
        [C.objects[x] for x in obj_ids],
        [C.mor_labels[m] for m in mor_ids],
        [onew[C.src[m]] for m in mor_ids],
        [onew[C.tgt[m]] for m in mor_ids],
        [mnew[C.ident[x]] for x in obj_ids],
        comp,
        name=name,
    )


def full_subcategory(C: FinCategory, obj_ids: Iterable[int], name=None) -> FinCategory:
    keep = set(obj_ids)
    mors = [m for m in range(C.n_mor) if C.src[m] in keep and C.tgt[m] in keep]
    return subcategory(C, keep, mors, name=name)


def opposite(C: FinCategory) -> FinCategory:
    comp = {(f, g): h for (g, f), h in C.comp.items()}
    return FinCategory(C.objects, C.mor_labels, C.tgt, C.src, C.ident, comp,
                       name=f"{C.name}^op" if C.name else None)


def terminal_category() -> FinCategory:
    return FinCategory(["*"], ["id*"], [0], [0], [0], {(0, 0): 0}, name="*")


def empty_category() -> FinCategory:
    return FinCategory([], [], [], [], [], {}, name="0")


def product_category(C: FinCategory, D: FinCategory) -> FinCategory:
    objs = [(x, y) for x in C.objects for y in D.objects]
    mors = [
        ((f, g), (C.objects[C.src[i]], D.objects[D.src[j]]), (C.objects[C.tgt[i]], D.objects[D.tgt[j]]))
        for i, f in enumerate(C.mor_labels)
        for j, g in enumerate(D.mor_labels)
    ]

    def compose(b, a):
        return (
            C.mor_labels[C.comp[(C.mor(b[0]), C.mor(a[0]))]],
            D.mor_labels[D.comp[(D.mor(b[1]), D.mor(a[1]))]],
        )

    return build_category(objs, mors, lambda xy: (C.id_label(xy[0]), D.id_label(xy[1])), compose,
                          name=f"{C.name}x{D.name}")


def cyclic_monoid_category(n: int) -> FinCategory:
    """One object whose endomorphisms form the cyclic group of order n."""
    return build_category(["o"], [(k, "o", "o") for k in range(n)], lambda _: 0,
                          lambda b, a: (a + b) % n, name=f"BZ{n}")


# --- functors ----------------------------------------------------------------


class Functor:
    def __init__(self, source: FinCategory, target: FinCategory, obj_map, mor_map, name=None):
        self.source = source
        self.target = target
        self.obj_map = tuple(obj_map)
        self.mor_map = tuple(mor_map)
        self.name = name
        if len(self.obj_map) != source.n_obj or len(self.mor_map) != source.n_mor:
            raise CategoryError("functor tables have the wrong length")

    def __repr__(self):
        return f"Functor({self.name or '?'}: {self.source!r} -> {self.target!r})"

    @classmethod
    def from_labels(cls, source, target, fobj, fmor, name=None) -> Functor:
        """Build from label-level maps (callables or dicts)."""
        fobj = fobj.__getitem__ if isinstance(fobj, dict) else fobj
        fmor = fmor.__getitem__ if isinstance(fmor, dict) else fmor
        try:
            om = [target.obj_index[fobj(x)] for x in source.objects]
            mm = [target.mor_index[fmor(m)] for m in source.mor_labels]
        except KeyError as e:
            raise CategoryError(f"image {e.args[0]!r} is not in the target category") from None
        return cls(source, target, om, mm, name=name)

    def obj_label(self, x):
        return self.target.objects[self.obj_map[self.source.obj_index[x]]]

    def mor_label(self, m):
        return self.target.mor_labels[self.mor_map[self.source.mor_index[m]]]

    @cached_property
    def label_data(self):
        S, T = self.source, self.target
        return (
            {S.objects[i]: T.objects[j] for i, j in enumerate(self.obj_map)},
            {S.mor_labels[i]: T.mor_labels[j] for i, j in enumerate(self.mor_map)},
        )


def validate_functor(F: Functor) -> Report:
    S, T = F.source, F.target
    for x in range(S.n_obj):
        if F.mor_map[S.ident[x]] != T.ident[F.obj_map[x]]:
            return Report.fail(f"identity of {S.objects[x]!r} not preserved")
    for m in range(S.n_mor):
        fm = F.mor_map[m]
        if T.src[fm] != F.obj_map[S.src[m]] or T.tgt[fm] != F.obj_map[S.tgt[m]]:
            return Report.fail(f"endpoints of {S.mor_labels[m]!r} not preserved")
    for (g, f), h in S.comp.items():
        if T.comp[(F.mor_map[g], F.mor_map[f])] != F.mor_map[h]:
            return Report.fail(f"composition {S.mor_labels[g]!r} o {S.mor_labels[f]!r} not preserved")
    return Report.success()


def equal_functors(F: Functor, G: Functor) -> bool:
    if not (F.source.same_as(G.source) and F.target.same_as(G.target)):
        return False
    if F.source is G.source and F.target is G.target:
        return F.obj_map == G.obj_map and F.mor_map == G.mor_map
    return F.label_data == G.label_data


def identity_functor(C: FinCategory) -> Functor:
    return Functor(C, C, range(C.n_obj), range(C.n_mor), name="id")


def compose_functors(G: Functor, F: Functor) -> Functor:
    """G o F"""
    if not F.target.same_as(G.source):
        raise CategoryError("functors are not composable")
    if F.target is not G.source:
        F = Functor.from_labels(F.source, G.source, F.obj_label, F.mor_label)
    return Functor(F.source, G.target,
                   [G.obj_map[y] for y in F.obj_map],
                   [G.mor_map[m] for m in F.mor_map])


def inclusion_functor(S: FinCategory, C: FinCategory) -> Functor:
    return Functor.from_labels(S, C, lambda x: x, lambda m: m, name="incl")


class NatTransformation:
    """alpha : F => H with ``components[x]`` a morphism id of the target category."""

    def __init__(self, source: Functor, target: Functor, components, name=None):
        self.source = source
        self.target = target
        self.components = tuple(components)
        self.name = name

    @property
    def domain(self) -> FinCategory:
        return self.source.source

    @property
    def codomain(self) -> FinCategory:
        return self.source.target

    @classmethod
    def from_labels(cls, source: Functor, target: Functor, comp, name=None) -> NatTransformation:
        comp = comp.__getitem__ if isinstance(comp, dict) else comp
        D = source.target
        return cls(source, target, [D.mor_index[comp(x)] for x in source.source.objects], name=name)


def validate_nat(alpha: NatTransformation) -> Report:
    F, H = alpha.source, alpha.target
    if not (F.source.same_as(H.source) and F.target.same_as(H.target)):
        return Report.fail("functors are not parallel")
    if H.source is not F.source or H.target is not F.target:
        H = Functor.from_labels(F.source, F.target, H.obj_label, H.mor_label)
    C, D = F.source, F.target
    if len(alpha.components) != C.n_obj:
        return Report.fail("wrong number of components")
    for x in range(C.n_obj):
        a = alpha.components[x]
        if D.src[a] != F.obj_map[x] or D.tgt[a] != H.obj_map[x]:
            return Report.fail(f"component at {C.objects[x]!r} has wrong endpoints")
    for m in range(C.n_mor):
        x, y = C.src[m], C.tgt[m]
        lhs = D.comp[(H.mor_map[m], alpha.components[x])]
        rhs = D.comp[(alpha.components[y], F.mor_map[m])]
        if lhs != rhs:
            return Report.fail(f"naturality square at {C.mor_labels[m]!r} does not commute")
    return Report.success()


def identity_nat(F: Functor) -> NatTransformation:
    D = F.target
    return NatTransformation(F, F, [D.ident[y] for y in F.obj_map], name="id")


def vertical_compose(beta: NatTransformation, alpha: NatTransformation) -> NatTransformation:
    """beta . alpha : F => K for alpha : F => H, beta : H => K."""
    if not equal_functors(alpha.target, beta.source):
        raise CategoryError("transformations are not vertically composable")
    D = alpha.codomain
    if beta.codomain is not D:
        raise CategoryError("transformations live in different category instances")
    comps = [D.comp[(b, a)] for a, b in zip(alpha.components, beta.components)]
    return NatTransformation(alpha.source, beta.target, comps)


def whisker_left(K: Functor, alpha: NatTransformation) -> NatTransformation:
    """K alpha : K o F => K o H"""
    return NatTransformation(compose_functors(K, alpha.source), compose_functors(K, alpha.target),
                             [K.mor_map[a] for a in alpha.components])


def whisker_right(alpha: NatTransformation, K: Functor) -> NatTransformation:
    """alpha K : F o K => H o K"""
    return NatTransformation(compose_functors(alpha.source, K), compose_functors(alpha.target, K),
                             [alpha.components[y] for y in K.obj_map])


def horizontal_compose(beta: NatTransformation, alpha: NatTransformation) -> NatTransformation:
    """beta * alpha : K o F => L o H for alpha : F => H (C -> D), beta : K => L (D -> E)."""
    return vertical_compose(whisker_left(beta.target, alpha), whisker_right(beta, alpha.source))


# --- preorders ---------------------------------------------------------------


class Preorder:
    """A reflexive, transitive relation given as a boolean matrix (rows = <=-rows)."""

    def __init__(self, elements, leq, check=True):
        self.elements = tuple(elements)
        self.leq = tuple(tuple(bool(v) for v in row) for row in leq)
        self.index = {x: i for i, x in enumerate(self.elements)}
        guard("poset_elements", len(self.elements), "order elements")
        if check:
            self.validate().raise_for(CategoryError)

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"{type(self).__name__}({len(self)} elements)"

    @classmethod
    def from_relation(cls, elements, rel: Callable[[Hashable, Hashable], bool], check=True):
        elements = list(elements)
        return cls(elements, [[rel(x, y) for y in elements] for x in elements], check=check)

    def le(self, i: int, j: int) -> bool:
        return self.leq[i][j]

    def validate(self) -> Report:
        n = len(self.elements)
        if len(self.leq) != n or any(len(r) != n for r in self.leq):
            return Report.fail("relation matrix has the wrong shape")
        for i in range(n):
            if not self.leq[i][i]:
                return Report.fail(f"not reflexive at {self.elements[i]!r}")
        ups = [frozenset(j for j in range(n) if self.leq[i][j]) for i in range(n)]
        for i in range(n):
            for j in ups[i]:
                if not ups[j] <= ups[i]:
                    k = min(ups[j] - ups[i])
                    return Report.fail(f"not transitive at {self.elements[i]!r} <= {self.elements[j]!r} <= {self.elements[k]!r}")
        return Report.success()

    @property
    def is_antisymmetric(self) -> bool:
        n = len(self.elements)
        return not any(self.leq[i][j] and self.leq[j][i] for i in range(n) for j in range(i + 1, n))

    def relation_pairs(self) -> frozenset:
        E = self.elements
        return frozenset((E[i], E[j]) for i, row in enumerate(self.leq) for j, v in enumerate(row) if v)

    def strict_pairs(self) -> list[tuple[int, int]]:
        n = len(self.elements)
        return [(i, j) for i in range(n) for j in range(n) if i != j and self.leq[i][j]]

    def same_as(self, other: Preorder) -> bool:
        return set(self.elements) == set(other.elements) and self.relation_pairs() == other.relation_pairs()

    def to_json(self) -> dict:
        return {"elements": [_jsonable(x) for x in self.elements],
                "leq": [[int(v) for v in row] for row in self.leq]}


class Poset(Preorder):
    def validate(self) -> Report:
        r = super().validate()
        if r and not self.is_antisymmetric:
            return Report.fail("not antisymmetric")
        return r


def preorder_to_cat(P: Preorder) -> FinCategory:
    E = P.elements
    mors = [((E[i], E[j]), E[i], E[j]) for i in range(len(E)) for j in range(len(E)) if P.leq[i][j]]
    return build_category(E, mors, lambda x: (x, x), lambda b, a: (a[0], b[1]), name="preorder")


def cat_to_preorder(C: FinCategory, poset: bool = False) -> Preorder:
    if not C.is_thin:
        for (x, y), ms in C._homs[0].items():
            if len(ms) > 1:
                raise NotThinError(f"not thin: {len(ms)} morphisms {C.objects[x]!r} -> {C.objects[y]!r}")
    n = C.n_obj
    leq = [[False] * n for _ in range(n)]
    for m in range(C.n_mor):
        leq[C.src[m]][C.tgt[m]] = True
    return (Poset if poset else Preorder)(C.objects, leq)


def _jsonable(x):
    if isinstance(x, (tuple, list)):
        return [_jsonable(v) for v in x]
    if isinstance(x, frozenset):
        return sorted(_jsonable(v) for v in x)
    return x
