"""JSON views of every construction.  Output is deterministic: no sets, no timings."""

from __future__ import annotations

import json

from .categories import FinCategory, Preorder, _jsonable
from .equivariant import GCategory, GPreorder
from .groups import FiniteGroup


def group_to_json(G: FiniteGroup) -> dict:
    data = G.to_json()
    data["subgroups"] = [list(H.elements) for H in G.subgroups]
    return data


def category_to_json(C: FinCategory) -> dict:
    return {
        "name": C.name,
        "objects": [_jsonable(x) for x in C.objects],
        "morphisms": [
            {"label": _jsonable(C.mor_labels[m]), "source": C.src[m], "target": C.tgt[m]}
            for m in range(C.n_mor)
        ],
        "identities": list(C.ident),
        "composition": [[g, f, h] for (g, f), h in sorted(C.comp.items())],
    }


def gcategory_to_json(C: GCategory) -> dict:
    data = category_to_json(C.cat)
    data["group"] = C.group.name
    data["object_action"] = [list(r) for r in C.obj_act]
    data["morphism_action"] = [list(r) for r in C.mor_act]
    return data


def preorder_to_json(P: Preorder) -> dict:
    return P.to_json()


def gpreorder_to_json(P: GPreorder) -> dict:
    data = P.to_json()
    data["group"] = P.group.name
    data["antisymmetric"] = P.is_poset
    return data


def orbit_to_json(orbit, full: bool = False) -> dict:
    C = orbit.cat
    n = C.n_obj
    data = {
        "group": orbit.group.name,
        "objects": [{"id": h, "subgroup": list(orbit.subgroups[h].elements),
                     "cosets": len(orbit.spaces[h])} for h in range(n)],
        "hom_sizes": [[orbit.hom_size(h, k) for k in range(n)] for h in range(n)],
    }
    if full:
        data["category"] = category_to_json(C)
    return data


def marked_to_json(Op) -> dict:
    data = gcategory_to_json(Op.gcat)
    data["forgetful"] = {"object_map": list(Op.forgetful.obj_map), "morphism_map": list(Op.forgetful.mor_map)}
    return data


def presheaf_to_json(X) -> dict:
    from .presheaves import presheaf_to_json as impl

    return impl(X)


def sset_to_json(S) -> dict:
    data = S.to_json()
    data["name"] = S.name
    if S.action is not None:
        data["action"] = [[list(r) for r in per_q] for per_q in S.action]
    return data


def homology_to_json(profile) -> list[dict]:
    return profile.to_json()


def dumps(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True)
