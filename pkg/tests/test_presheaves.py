import itertools

import pytest

from equivarium.categories import Functor, cyclic_monoid_category, identity_functor
from equivarium.corpus import (
    DescriptorError,
    corpus_gcategories,
    parse_family,
    presheaf_from_descriptor,
)
from equivarium.elmendorf import c_cat
from equivarium.equivariant import GCategory, NotEquivariantError, check_equivariant
from equivarium.groups import group_from_key, perm_index
from equivarium.presheaves import (
    FamilyError,
    OrbitPresheaf,
    SubgroupFamily,
    all_families,
    compose_presheaf_morphisms,
    constant_presheaf,
    family_presheaf,
    identity_presheaf_morphism,
    phi,
    phi_on_functor,
    validate_presheaf,
    validate_presheaf_morphism,
)
from oracles import brute_subgroups, cyclic_table, s3_table

TABLES = {"C2": cyclic_table(2), "C3": cyclic_table(3), "C4": cyclic_table(4), "S3": s3_table()}
KEYS = sorted(TABLES)


def oracle_family_count(mult):
    n = len(mult)
    inv = [next(b for b in range(n) if mult[a][b] == 0) for a in range(n)]
    subs = [frozenset(S) for S in brute_subgroups(mult)]

    def conj(S, a):
        return frozenset(mult[mult[a][s]][inv[a]] for s in S)

    def closed(fam):
        return all(K in fam for H in fam for K in subs for a in range(n) if K <= conj(H, a))

    return sum(1 for r in range(len(subs) + 1) for fam in itertools.combinations(subs, r) if closed(set(fam)))


@pytest.mark.parametrize("key", KEYS)
def test_family_enumeration_matches_oracle(key):
    G = group_from_key(key)
    fams = all_families(G)
    assert len(fams) == oracle_family_count(TABLES[key])
    assert len({tuple(F.ids) for F in fams}) == len(fams)


@pytest.mark.parametrize("key", KEYS)
def test_family_presheaf_values(key):
    G = group_from_key(key)
    for fam in all_families(G):
        X = family_presheaf(G, fam)
        assert validate_presheaf(X)
        assert X.flavor == "pos"
        for H in G.subgroups:
            assert (X.value(H).n_obj > 0) == (H in fam)
            assert X.value(H).n_obj <= 1


def test_c2_family_e_values():
    G = group_from_key("C2")
    X = presheaf_from_descriptor(G, "family:e")
    assert [V.n_obj for V in X.values] == [1, 0]


def test_family_not_closed_under_conjugation():
    G = group_from_key("S3")
    T = G.subgroup(G.generate([perm_index(G, "(12)")]))
    with pytest.raises(FamilyError, match="subconjugate"):
        SubgroupFamily(G, [G.trivial, T])
    with pytest.raises(FamilyError):
        SubgroupFamily(G, [T])
    with pytest.raises(DescriptorError):
        presheaf_from_descriptor(G, f"family:{T.id}")
    with pytest.raises(DescriptorError):
        parse_family(G, "0,99")


def test_restriction_mutation_is_caught():
    G = group_from_key("C2")
    D = cyclic_monoid_category(2)
    X = constant_presheaf(G, D)
    assert validate_presheaf(X)
    O = X.orbit
    r_g = O.morphism(0, 0, 1)
    collapse = Functor(D, D, [0], [D.ident[0]] * D.n_mor)
    restr = list(X.restrictions)
    restr[r_g] = collapse
    r = validate_presheaf(OrbitPresheaf(O, X.values, restr))
    assert not r and "functoriality" in r.witness


@pytest.mark.parametrize("key", KEYS)
def test_phi_of_corpus_is_valid_and_nested(key):
    G = group_from_key(key)
    for name, C in corpus_gcategories(G):
        X = phi(C)
        assert validate_presheaf(X), name
        for K, H in itertools.product(G.subgroups, G.subgroups):
            if K.issubset(H):
                big, small = C.fixed_subcategory(K), C.fixed_subcategory(H)
                assert set(small.objects) <= set(big.objects)
                assert set(small.mor_labels) <= set(big.mor_labels)


def test_phi_of_trivial_action_is_constant():
    G = group_from_key("S3")
    D = cyclic_monoid_category(3)
    X = phi(GCategory.trivial(D, G))
    assert all(V.same_as(D) for V in X.values)
    idD = identity_functor(D)
    assert all(F.obj_map == idD.obj_map and F.mor_map == idD.mor_map for F in X.restrictions)


def test_phi_of_trivial_group():
    G = group_from_key("C1")
    D = cyclic_monoid_category(2)
    X = phi(GCategory.trivial(D, G))
    assert len(X.values) == 1 and X.values[0].same_as(D)


def test_phi_of_free_universal_space():
    G = group_from_key("C2")
    C = c_cat(presheaf_from_descriptor(G, "family:e"))
    X = phi(C)
    assert [V.n_obj for V in X.values] == [2, 0]
    assert X.flavor == "cat"  # complete preorder on 2 is not antisymmetric


def test_phi_on_functor():
    G = group_from_key("C2")
    C = c_cat(presheaf_from_descriptor(G, "family:all"))
    lam = phi_on_functor(identity_functor(C.cat), C, C)
    assert validate_presheaf_morphism(lam)
    ident = identity_presheaf_morphism(phi(C))
    assert validate_presheaf_morphism(compose_presheaf_morphisms(ident, lam))
    for a, b in zip(lam.components, ident.components):
        assert a.obj_map == b.obj_map and a.mor_map == b.mor_map


def test_non_equivariant_functor_is_rejected():
    G = group_from_key("C2")
    C = c_cat(presheaf_from_descriptor(G, "family:e"))
    # send every object to the first one: fine as a functor, not equivariant
    cat = C.cat
    x0 = cat.objects[0]
    idx = cat.ident[0]
    F = Functor(cat, cat, [0] * cat.n_obj, [idx] * cat.n_mor)
    r = check_equivariant(F, C, C)
    assert not r and "not equivariant" in r.witness
    with pytest.raises(NotEquivariantError):
        phi_on_functor(F, C, C)
    assert x0 == cat.objects[F.obj_map[1]]
