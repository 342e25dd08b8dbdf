import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import frozen
from equivarium.categories import (
    Functor,
    Preorder,
    cyclic_monoid_category,
    preorder_to_cat,
    terminal_category,
)
from equivarium.corpus import chain_category, corpus_gcategories, presheaf_from_descriptor
from equivarium.elmendorf import c_cat
from equivarium.equivariant import gcategory_to_gpreorder
from equivarium.groups import group_from_key
from equivarium.homology import (
    HomologyError,
    homology,
    homology_iso_report,
    invariant_factors,
    normalized_chains,
)
from equivarium.limits import SizeGuardError
from equivarium.posets import milnor, milnor_order
from equivarium.simplicial import nerve, nerve_of_functor
from oracles import order_complex_homology, smith_factors


def discrete_category(n):
    return preorder_to_cat(Preorder.from_relation(range(n), lambda a, b: a == b))


def as_pairs(h):
    return [h.degree(q) for q in range(len(h.betti))]


matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_invariant_factors_match_sympy(M):
    rows = [{j: x for j, x in enumerate(r) if x} for r in M]
    mine = invariant_factors(rows, len(M[0]))
    assert sorted(mine) == smith_factors(M, len(M[0]))
    assert all(b % a == 0 for a, b in zip(mine, mine[1:]))


@pytest.mark.parametrize("key", ["C2", "S3"])
def test_dd_is_zero(key):
    G = group_from_key(key)
    for name, C in corpus_gcategories(G):
        try:
            S = nerve(C, 3)
        except SizeGuardError:
            continue
        chains, _ = normalized_chains(S)
        assert chains.check_dd(), name


def test_h0_counts_components():
    D = discrete_category(3)
    assert homology(nerve(D, 2)).betti[0] == 3
    P = Preorder.from_relation(range(4), lambda a, b: a == b or (a < 2 and b >= 2 and (a + b) % 2 == 0))
    assert homology(nerve(preorder_to_cat(P), 2)).betti[0] == 2


def test_point_and_contractible():
    assert homology(nerve(terminal_category(), 3)).is_point()
    assert homology(nerve(chain_category(4), 3)).is_point()


def test_torsion_in_bz2():
    # normalized chains of B(Z/2): one cell per degree, boundary 1 + (-1)^q
    h = homology(nerve(cyclic_monoid_category(2), 3))
    assert as_pairs(h) == [(1, ()), (0, (2,)), (0, ())]


def test_free_example_matches_oracle():
    G = group_from_key("C2")
    P = gcategory_to_gpreorder(c_cat(presheaf_from_descriptor(G, "family:e")))
    h = homology(nerve(preorder_to_cat(P.order), 3))
    assert as_pairs(h) == frozen.C2_E_HOMOLOGY
    M1 = milnor(P, 1)
    N1 = nerve(preorder_to_cat(M1.order), 2)
    assert tuple(N1.nondegenerate_counts()[:2]) == frozen.M1_C2_COUNTS
    assert as_pairs(homology(N1)) == frozen.M1_C2_HOMOLOGY
    M2 = milnor(P, 2)
    assert as_pairs(homology(nerve(preorder_to_cat(M2.order), 3))) == frozen.M2_C2_HOMOLOGY


@pytest.mark.parametrize("k,n", sorted(frozen.MILNOR_REDUCED))
def test_milnor_tower(k, n):
    P = Preorder.from_relation(range(k), lambda a, b: True)
    M = milnor_order(P, n)
    h = homology(nerve(preorder_to_cat(M), n + 1))
    assert h.reduced_betti() == frozen.MILNOR_REDUCED[(k, n)]
    assert not any(h.torsion)
    oracle, _ = order_complex_homology(M.elements, lambda u, v: M.leq[M.index[u]][M.index[v]], n + 1)
    assert as_pairs(h) == oracle


def test_truncation_limit():
    S = nerve(chain_category(2), 2)
    assert homology(S).through == 1
    with pytest.raises(HomologyError, match="beyond"):
        homology(S, 2)
    top = homology(S, 2, allow_untrusted=True)
    assert top.trusted == (True, True, False)
    assert top.to_json()[2]["trusted"] is False


def test_iso_report_accepts_equivalences():
    C = chain_category(3)
    T = terminal_category()
    to_pt = Functor(C, T, [0] * C.n_obj, [0] * C.n_mor)
    assert homology_iso_report(nerve_of_functor(to_pt, 3))


def test_iso_report_rejects_non_isomorphisms():
    D, T = discrete_category(2), terminal_category()
    r = homology_iso_report(nerve_of_functor(Functor(D, T, [0, 0], [0, 0]), 3))
    # the kernel in H_0 surfaces as H_1 of the cone
    assert not r and "nonzero H_1" in r.witness
    # same homology on both sides, but the map collapses the two points
    fold = Functor(D, D, [0, 0], [D.ident[0], D.ident[0]])
    r = homology_iso_report(nerve_of_functor(fold, 3))
    assert not r and "mapping cone" in r.witness


def test_describe():
    h = homology(nerve(cyclic_monoid_category(2), 3))
    assert h.describe() == "H0=Z, H1=Z/2, H2=0"
