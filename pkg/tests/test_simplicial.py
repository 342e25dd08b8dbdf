import pytest

import frozen
from equivarium.categories import (
    Preorder,
    cyclic_monoid_category,
    identity_functor,
    preorder_to_cat,
    terminal_category,
)
from equivarium.corpus import chain_category, corpus_gcategories, corpus_presheaves, presheaf_from_descriptor
from equivarium.elmendorf import c_cat
from equivarium.equivariant import GCategory
from equivarium.groups import group_from_key
from equivarium.limits import SizeGuardError
from equivarium.presheaves import constant_presheaf
from equivarium.simplicial import (
    SimplicialError,
    SimplicialMap,
    bar_reindex_check,
    fixed_sset,
    free_on_nondegenerate,
    hocolim_diag,
    nerve,
    nerve_of_functor,
    thomason_eta,
    thomason_fixed_report,
    validate_simplicial_map,
    validate_sset,
)
from oracles import nerve_chain_count

KEYS = ["C2", "C3", "C4", "S3"]


def hom_sizes(C):
    return [[len(C.hom(x, y)) for y in range(C.n_obj)] for x in range(C.n_obj)]


@pytest.mark.parametrize("C", [terminal_category(), chain_category(3), cyclic_monoid_category(3),
                               preorder_to_cat(Preorder.from_relation(range(2), lambda a, b: True))],
                         ids=["pt", "chain3", "Z3monoid", "complete2"])
def test_nerve_counts_and_identities(C):
    S = nerve(C, 3)
    assert validate_sset(S)
    H = hom_sizes(C)
    assert S.counts() == [nerve_chain_count(C.n_obj, H, q) for q in range(4)]


def test_small_nerves():
    assert nerve(terminal_category(), 3).nondegenerate_counts() == [1, 0, 0, 0]
    assert nerve(chain_category(2), 3).nondegenerate_counts() == [2, 1, 0, 0]
    K = preorder_to_cat(Preorder.from_relation(range(2), lambda a, b: True))
    assert nerve(K, 3).nondegenerate_counts() == frozen.COMPLETE2_NONDEGENERATE


def test_nerve_face_of_composable_pair():
    C = chain_category(3)
    S = nerve(C, 2)
    for x, key in enumerate(S.keys[2]):
        f, g = key
        assert S.keys[1][S.faces[2][1][x]] == (C.compose(g, f),)
        assert S.keys[1][S.faces[2][0][x]] == (g,)
        assert S.keys[1][S.faces[2][2][x]] == (f,)


def test_fixed_sset_basics():
    G = group_from_key("C2")
    S = nerve(GCategory.trivial(cyclic_monoid_category(2), G), 3)
    assert fixed_sset(S, G.subgroups[-1]).same_as(S)
    with pytest.raises(SimplicialError, match="no group action"):
        fixed_sset(nerve(chain_category(2), 2), G.subgroups[-1])
    CX = c_cat(presheaf_from_descriptor(G, "family:e"))
    N = nerve(CX, 3)
    assert validate_sset(N)
    assert fixed_sset(N, G.subgroups[-1]).counts() == [0, 0, 0, 0]
    assert free_on_nondegenerate(N)


@pytest.mark.parametrize("key", KEYS)
def test_nerve_of_fixed_is_fixed_of_nerve(key):
    G = group_from_key(key)
    for name, C in corpus_gcategories(G):
        try:
            N = nerve(C, 3)
        except SizeGuardError:
            continue
        assert validate_sset(N), name
        for H in G.subgroups:
            assert nerve(C.fixed_subcategory(H), 3).same_as(fixed_sset(N, H)), (name, H)


def test_nerve_of_identity_functor():
    C = cyclic_monoid_category(3)
    f = nerve_of_functor(identity_functor(C), 3)
    assert validate_simplicial_map(f)
    assert all(list(m) == list(range(len(m))) for m in f.maps)


def test_broken_map_is_rejected():
    C = chain_category(2)
    S = nerve(C, 2)
    f = nerve_of_functor(identity_functor(C), 2)
    maps = [list(m) for m in f.maps]
    maps[0] = maps[0][::-1]  # swap the two vertices but keep the edges
    r = validate_simplicial_map(SimplicialMap(S, S, maps))
    assert not r and "does not commute" in r.witness


def test_hocolim_of_terminal_over_trivial_group():
    G = group_from_key("C1")
    X = constant_presheaf(G, terminal_category(), flavor="pos")
    h = hocolim_diag(X, 3)
    assert h.nondegenerate_counts() == [1, 0, 0, 0]
    eta = thomason_eta(X, 3, h)
    assert validate_simplicial_map(eta)
    assert all(sorted(m) == list(range(len(m))) for m in eta.maps)


def test_hocolim_free_example_degree_zero():
    G = group_from_key("C2")
    X = presheaf_from_descriptor(G, "family:e")
    h = hocolim_diag(X, 2)
    assert h.count(0) == 2
    assert validate_sset(h)


@pytest.mark.parametrize("key", ["C2", "C3"])
def test_thomason_eta_valid_and_equivariant(key):
    G = group_from_key(key)
    for name, X in corpus_presheaves(G):
        eta = thomason_eta(X, 3)
        assert validate_sset(eta.source), name
        assert validate_simplicial_map(eta), name
        for K in G.subgroups:
            assert thomason_fixed_report(X, 3, K, eta), (name, K)


@pytest.mark.parametrize("key", KEYS)
def test_bar_reindex(key):
    G = group_from_key(key)
    for name, X in corpus_presheaves(G):
        for q in range(3):
            rep = bar_reindex_check(X, q)
            assert rep["ok"], (name, rep)


def test_bar_reindex_c2_all_degree_one():
    G = group_from_key("C2")
    rep = bar_reindex_check(presheaf_from_descriptor(G, "family:all"), 1)
    assert rep["left_count"] == rep["right_count"]
    assert rep["bijective"] and rep["equivariant"]


def test_bar_reindex_trivial_group():
    G = group_from_key("C1")
    X = constant_presheaf(G, chain_category(2), flavor="pos")
    for q in range(3):
        rep = bar_reindex_check(X, q)
        assert rep["ok"] and rep["left_count"] == rep["right_count"] == 1
