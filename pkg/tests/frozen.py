"""Expected values derived once from tests/oracles.py and frozen here.

test_oracles.py recomputes every entry from the oracles, so a drift in either
place shows up.
"""

# brute_subgroups
SUBGROUP_COUNTS = {"C2": 2, "C3": 2, "C4": 3, "S3": 6}

# reduced homology of nerve(M_n(complete preorder on k)) through degree n:
# (k, n) -> list of reduced Betti numbers, degrees 0..n (order_complex_homology)
MILNOR_REDUCED = {
    (2, 1): [0, 1],
    (2, 2): [0, 0, 1],
    (3, 1): [0, 4],
}

# nondegenerate q-simplices of the nerve of the complete preorder on 2, q = 0..3
COMPLETE2_NONDEGENERATE = [2, 2, 2, 2]

# the circle M_1(C X_e) for C2: 4 vertices, 4 edges; (betti, torsion) for q = 0, 1
M1_C2_HOMOLOGY = [(1, ()), (1, ())]
M1_C2_COUNTS = (4, 4)
# M_2(C X_e) for C2, degrees 0..2
M2_C2_HOMOLOGY = [(1, ()), (0, ()), (1, ())]

# C X_e for C2 is the complete preorder on 2; degrees 0..2
C2_E_HOMOLOGY = [(1, ()), (0, ()), (0, ())]

# hom sets of O_{C2,+}: identities on 3 objects, (e,i) -> (G,0), (e,0) <-> (e,1)
C2_MARKED_MORPHISMS = 7

# 4-element preorder {0,1} ~ , {2,3} ~, first class below second
TWO_CLASS_QUOTIENT = {"size": 2, "strict": 1}

# M_1 of the complete preorder on 2: elements and strict relations
M1_COMPLETE2 = {"elements": 4, "strict": 4}
