"""Named inputs: groups, presheaf descriptors and the standard test corpus."""

from __future__ import annotations

import json
import os

from .categories import (
    Preorder,
    cyclic_monoid_category,
    preorder_to_cat,
    product_category,
    terminal_category,
)
from .equivariant import GCategory, GPreorder, gcategory_to_gpreorder
from .groups import FiniteGroup, GroupError, group_from_key
from .presheaves import (
    FamilyError,
    OrbitPresheaf,
    SubgroupFamily,
    all_families,
    constant_presheaf,
    family_presheaf,
)

CORPUS_GROUPS = ("C2", "C3", "C4", "S3")
CONSTANTS = ("point", "chain2", "bz2")


class DescriptorError(ValueError):
    pass


def load_group(key: str) -> FiniteGroup:
    """A builtin key like ``S3`` or a path to group JSON."""
    if os.path.exists(key):
        with open(key) as fh:
            return FiniteGroup.from_json(json.load(fh))
    return group_from_key(key)


def chain_category(n: int = 2):
    P = Preorder.from_relation(range(n), lambda a, b: a <= b)
    C = preorder_to_cat(P)
    C.name = f"[{n - 1}]"
    return C


def _constant(name: str):
    if name == "point":
        return terminal_category(), "pos"
    if name == "chain2":
        return chain_category(2), "pos"
    if name == "bz2":
        return cyclic_monoid_category(2), "cat"
    raise DescriptorError(f"unknown constant presheaf {name!r}")


def parse_family(G: FiniteGroup, text: str) -> SubgroupFamily:
    if text == "e":
        return SubgroupFamily(G, [G.trivial])
    if text == "all":
        return SubgroupFamily(G, G.subgroups)
    if text in ("", "none", "empty"):
        return SubgroupFamily(G, [])
    try:
        ids = sorted({int(t) for t in text.split(",")})
    except ValueError:
        raise DescriptorError(f"bad family {text!r}: expected e, all or subgroup ids") from None
    if any(i < 0 or i >= len(G.subgroups) for i in ids):
        raise DescriptorError(f"subgroup ids out of range 0..{len(G.subgroups) - 1}")
    return SubgroupFamily(G, [G.subgroups[i] for i in ids])


def family_name(G: FiniteGroup, fam: SubgroupFamily) -> str:
    if len(fam) == 1 and fam.members[0] == G.trivial:
        return "family:e"
    if len(fam) == len(G.subgroups):
        return "family:all"
    if not len(fam):
        return "family:empty"
    return "family:" + ",".join(map(str, fam.ids))


def presheaf_from_descriptor(G: FiniteGroup, desc: str) -> OrbitPresheaf:
    """``family:e``, ``family:all``, ``family:0,2``, ``const:point``, ``const:chain2``, ``const:bz2``."""
    kind, _, arg = desc.partition(":")
    if kind == "family":
        try:
            fam = parse_family(G, arg)
        except FamilyError as e:
            raise DescriptorError(str(e)) from None
        return family_presheaf(G, fam, name=desc)
    if kind == "const":
        D, flavor = _constant(arg)
        return constant_presheaf(G, D, flavor=flavor, name=desc)
    raise DescriptorError(f"unknown presheaf descriptor {desc!r}")


def corpus_presheaves(G: FiniteGroup, include_empty: bool = False, include_cat: bool = True):
    """(descriptor, presheaf) for every family and every constant presheaf."""
    out = []
    for fam in all_families(G):
        if len(fam) or include_empty:
            name = family_name(G, fam)
            out.append((name, family_presheaf(G, fam, name=name)))
    for c in CONSTANTS:
        X = presheaf_from_descriptor(G, f"const:{c}")
        if include_cat or X.flavor == "pos":
            out.append((f"const:{c}", X))
    return out


def eg_times(G: FiniteGroup, D) -> GCategory:
    """EG x D: the chaotic category on G acted on by left translation, times D."""
    EG = preorder_to_cat(Preorder.from_relation(range(G.order), lambda a, b: True))
    C = product_category(EG, D)

    def act_obj(g, xy):
        return (G.mult[g][xy[0]], xy[1])

    def act_mor(g, m):
        (a, b), f = m
        return ((G.mult[g][a], G.mult[g][b]), f)

    return GCategory.from_labels(C, G, act_obj, act_mor, name=f"EG x {D.name}")


def corpus_gcategories(G: FiniteGroup):
    """(name, G-category) pairs used for the structural and fixed-point checks."""
    from .elmendorf import c_cat
    from .orbit import marked_orbit_category
    from .posets import milnor

    out = [(f"C({name})", c_cat(X)) for name, X in corpus_presheaves(G)]
    out.append(("O_G,+", marked_orbit_category(G).gcat))
    out.append(("EG x BZ2", eg_times(G, cyclic_monoid_category(2))))
    X = presheaf_from_descriptor(G, "family:e")
    out.append(("M_1 C(family:e)", milnor(gcategory_to_gpreorder(c_cat(X)), 1).to_gcategory()))
    return out


def corpus_gpreorders(G: FiniteGroup):
    """(name, G-preorder) pairs: C X for every poset-valued corpus presheaf, plus
    a chain with trivial action."""
    from .elmendorf import c_cat

    out = [(f"C({name})", gcategory_to_gpreorder(c_cat(X)))
           for name, X in corpus_presheaves(G, include_cat=False)]
    chain = Preorder.from_relation(range(3), lambda a, b: a <= b)
    out.append(("chain3", GPreorder(chain, G, [range(3)] * G.order, name="chain3")))
    return out
