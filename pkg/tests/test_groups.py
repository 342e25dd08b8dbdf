import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from equivarium.groups import (
    FiniteGroup,
    GroupError,
    Subgroup,
    conjugate_subgroup,
    coset_space,
    cyclic_group,
    dihedral_group,
    enumerate_subgroups,
    fixed_cosets,
    group_from_key,
    is_subconjugate,
    is_subgroup,
    perm_index,
    symmetric_group,
)
from oracles import brute_subgroups

SMALL = [cyclic_group(n) for n in range(1, 9)] + [dihedral_group(n) for n in range(1, 5)] + [
    symmetric_group(n) for n in range(1, 4)
]


@pytest.mark.parametrize("G", SMALL, ids=lambda G: G.name)
def test_axioms_hold_for_builtins(G):
    assert G.check_axioms()


@pytest.mark.parametrize("G", SMALL, ids=lambda G: G.name)
def test_subgroups_match_brute_force(G):
    mine = sorted(H.elements for H in enumerate_subgroups(G))
    assert mine == sorted(brute_subgroups(G.mult))


def test_subgroup_counts():
    assert len(group_from_key("S3").subgroups) == 6
    assert len(group_from_key("C4").subgroups) == 3
    assert len(group_from_key("D4").subgroups) == 10


def test_subgroups_are_sorted_and_trivial_first():
    G = group_from_key("S3")
    subs = G.subgroups
    assert subs[0].elements == (0,)
    assert subs[-1].elements == tuple(range(6))
    assert [H.id for H in subs] == list(range(6))


def test_bad_tables_are_rejected():
    with pytest.raises(GroupError):
        FiniteGroup([[0, 1], [1, 1]])
    with pytest.raises(GroupError):
        FiniteGroup([])
    # a Latin square that is not associative
    bad = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(GroupError):
        FiniteGroup(bad)


def test_subgroup_invariants_enforced():
    G = cyclic_group(4)
    with pytest.raises(GroupError):
        Subgroup(G, (1, 2))
    with pytest.raises(GroupError):
        Subgroup(G, (0, 1))
    assert not is_subgroup(G, [0, 1])
    assert is_subgroup(G, [0, 2])


def test_json_roundtrip():
    G = group_from_key("S3")
    H = FiniteGroup.from_json(json.loads(json.dumps(G.to_json())))
    assert H.mult == G.mult and H.name == "S3"
    with pytest.raises(GroupError):
        FiniteGroup.from_json({"order": 3, "mult": [[0, 1], [1, 0]]})


def test_perm_index_and_conjugation():
    G = group_from_key("S3")
    t, r = perm_index(G, "(12)"), perm_index(G, "(123)")
    assert G.mul(t, t) == 0
    assert G.prod(r, r, r) == 0
    # (12)(123)(12) = (132)
    assert G.conj(t, r) == perm_index(G, "(132)")
    T = G.subgroup([0, t])
    assert conjugate_subgroup(T, r) != T
    assert is_subconjugate(T, conjugate_subgroup(T, r))
    assert not is_subconjugate(G.subgroup([0, 3, 4]), T)


@pytest.mark.parametrize("key", ["C2", "C4", "S3", "D4"])
def test_coset_actions_and_fixed_cosets(key):
    G = group_from_key(key)
    for H in G.subgroups:
        X = coset_space(G, H)
        assert X.check_action()
        assert len(X) * len(H) == G.order
        assert X.cosets[0] == H.elements
        for K in G.subgroups:
            by_action = [c for c in range(len(X)) if all(X.action[k][c] == c for k in K)]
            assert fixed_cosets(X, K) == by_action


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=1, max_value=12))
def test_cyclic_subgroups_are_divisors(n):
    G = cyclic_group(n)
    sizes = sorted(len(H) for H in G.subgroups)
    assert sizes == [d for d in range(1, n + 1) if n % d == 0]


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_generate_is_closed(data):
    G = symmetric_group(3)
    gens = data.draw(st.lists(st.integers(0, 5), max_size=3))
    els = G.generate(gens)
    assert is_subgroup(G, els)
    assert set(gens) <= set(els)
