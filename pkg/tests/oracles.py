"""Independent reference computations used to derive frozen expected values.

Nothing here imports the package: groups are plain multiplication tables,
preorders are plain relation functions and homology goes through sympy.
"""

from __future__ import annotations

import itertools

from sympy import ZZ, Matrix
from sympy.matrices.normalforms import smith_normal_form


def cyclic_table(n):
    return [[(a + b) % n for b in range(n)] for a in range(n)]


def s3_table():
    perms = sorted(itertools.permutations(range(3)))
    idx = {p: i for i, p in enumerate(perms)}
    return [[idx[tuple(p[q[i]] for i in range(3))] for q in perms] for p in perms]


def brute_subgroups(mult):
    """Every subset containing 0 and closed under multiplication."""
    n = len(mult)
    out = []
    for mask in range(1 << n):
        S = [i for i in range(n) if mask >> i & 1]
        if 0 in S and all(mult[a][b] in S for a in S for b in S):
            out.append(tuple(S))
    return out


def smith_factors(rows, ncols):
    """Nonzero invariant factors of a dense integer matrix, via sympy."""
    if not rows or not ncols:
        return []
    S = smith_normal_form(Matrix(rows), domain=ZZ)
    return sorted(abs(int(S[i, i])) for i in range(min(S.shape)) if S[i, i] != 0)


def order_complex_homology(elements, le, top):
    """Integral homology H_0..H_{top-1} of the nerve of a finite preorder.

    Nondegenerate q-simplices of the nerve are sequences x_0 <= ... <= x_q
    with consecutive entries distinct; a face is dropped if it becomes
    degenerate.  Built from scratch, independent of the package's nerve.
    """
    E = list(elements)
    chains = [[(x,) for x in E]]
    for q in range(1, top + 1):
        chains.append([c + (y,) for c in chains[-1] for y in E if y != c[-1] and le(c[-1], y)])
    index = [{c: i for i, c in enumerate(cs)} for cs in chains]

    def boundary(q):
        rows = [[0] * len(chains[q - 1]) for _ in chains[q]]
        for r, c in enumerate(chains[q]):
            for i in range(q + 1):
                f = c[:i] + c[i + 1:]
                if f in index[q - 1]:
                    rows[r][index[q - 1][f]] += (-1) ** i
        return rows

    factors = {q: smith_factors(boundary(q), len(chains[q - 1])) for q in range(1, top + 1)}
    out = []
    for q in range(top):
        rank_out = len(factors.get(q, []))
        inc = factors[q + 1]
        out.append((len(chains[q]) - rank_out - len(inc), tuple(t for t in inc if t > 1)))
    return out, [len(c) for c in chains]


def milnor_relation(base_le, n):
    def le(u, v):
        return u == v or (base_le(u[0], v[0]) and u[1] < v[1])

    return le


def complete_milnor(k, n):
    elements = [(x, m) for x in range(k) for m in range(n + 1)]
    return elements, milnor_relation(lambda a, b: True, n)


def nerve_chain_count(n_obj, hom, q):
    """Number of q-simplices (all chains, degenerate included) of the nerve of
    a category given by hom-set sizes hom[x][y]."""
    counts = [1] * n_obj
    for _ in range(q):
        counts = [sum(counts[x] * hom[x][y] for x in range(n_obj)) for y in range(n_obj)]
    return sum(counts)
