"""Integral homology of truncated simplicial sets via Smith normal form.

Chains are normalized: the basis in degree q is the nondegenerate q-simplices
and degenerate faces are dropped.  All arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .limits import guard
from .report import Report
from .simplicial import SimplicialMap, TruncatedSSet


class HomologyError(ValueError):
    pass


# --- Smith normal form ---------------------------------------------------------


def _eliminate_units(rows: list[dict]) -> tuple[int, list[dict]]:
    """Pivot on +-1 entries until none are left; returns (#unit factors, remainder)."""
    rows = [dict(r) for r in rows if r]
    col_rows: dict[int, set] = {}
    for i, r in enumerate(rows):
        for c in r:
            col_rows.setdefault(c, set()).add(i)
    alive = set(range(len(rows)))
    ones = 0
    progress = True
    while progress:
        progress = False
        for c in sorted(col_rows):
            cand = [i for i in col_rows.get(c, ()) if rows[i].get(c) in (1, -1)]
            if not cand:
                continue
            p = min(cand, key=lambda i: (len(rows[i]), i))
            prow, v = rows[p], rows[p][c]
            for i in list(col_rows[c]):
                if i == p:
                    continue
                r = rows[i]
                f = r[c] * v
                for cc, x in prow.items():
                    y = r.get(cc, 0) - f * x
                    if y:
                        if cc not in r:
                            col_rows.setdefault(cc, set()).add(i)
                        r[cc] = y
                    elif cc in r:
                        del r[cc]
                        col_rows[cc].discard(i)
            for cc in prow:
                col_rows[cc].discard(p)
            rows[p] = {}
            alive.discard(p)
            ones += 1
            progress = True
        col_rows = {c: s for c, s in col_rows.items() if s}
    return ones, [rows[i] for i in sorted(alive) if rows[i]]


def _dense_diagonal(rows: list[dict]) -> list[int]:
    """Nonzero diagonal of a diagonalization of a small dense integer matrix."""
    cols = sorted({c for r in rows for c in r})
    cpos = {c: j for j, c in enumerate(cols)}
    A = [[0] * len(cols) for _ in rows]
    for i, r in enumerate(rows):
        for c, x in r.items():
            A[i][cpos[c]] = x
    m, n = len(A), len(cols)
    diag = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    if q:
                        A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    if q:
                        for row in A:
                            row[j] -= q * row[t]
                    if A[t][j]:
                        done = False
            if done:
                break
            # a smaller remainder appeared in row/column t: move it to the pivot
            cand = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
            cand += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
            _, i, j = min(cand)
            if j == t:
                A[t], A[i] = A[i], A[t]
            else:
                for row in A:
                    row[t], row[j] = row[j], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    return diag


def _normalize(diag: list[int]) -> list[int]:
    """Turn a diagonal into the invariant-factor chain d_1 | d_2 | ..."""
    d = sorted(diag)
    changed = True
    while changed:
        changed = False
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                if d[j] % d[i]:
                    g = gcd(d[i], d[j])
                    d[i], d[j] = g, d[i] * d[j] // g
                    changed = True
        d.sort()
    return d


def invariant_factors(rows: list[dict], ncols: int | None = None) -> list[int]:
    """Nonzero invariant factors of the sparse integer matrix given as row dicts."""
    guard("matrix", max(len(rows), ncols or 0), "boundary matrix dimension")
    ones, rest = _eliminate_units(rows)
    return [1] * ones + _normalize(_dense_diagonal(rest))


# --- chain complexes -------------------------------------------------------------


class ChainComplex:
    """``boundary[q]`` lists, for each basis element in degree q, its boundary as
    a dict over the basis in degree q-1 (``boundary[0]`` is all zero)."""

    def __init__(self, ranks: list[int], boundary: list[list[dict]], name=None):
        self.ranks = ranks
        self.boundary = boundary
        self.name = name
        self._factors: dict[int, list[int]] = {}

    @property
    def top(self) -> int:
        return len(self.ranks) - 1

    def factors(self, q: int) -> list[int]:
        """Invariant factors of the boundary map out of degree q."""
        if q <= 0 or q > self.top:
            return []
        if q not in self._factors:
            self._factors[q] = invariant_factors(self.boundary[q], self.ranks[q - 1])
        return self._factors[q]

    def check_dd(self) -> Report:
        for q in range(2, self.top + 1):
            prev = self.boundary[q - 1]
            for i, b in enumerate(self.boundary[q]):
                acc: dict[int, int] = {}
                for j, x in b.items():
                    for k, y in prev[j].items():
                        acc[k] = acc.get(k, 0) + x * y
                if any(acc.values()):
                    return Report.fail(f"boundary of boundary nonzero on basis element {i} of degree {q}")
        return Report.success()


def normalized_chains(S: TruncatedSSet) -> tuple[ChainComplex, list[dict]]:
    """Normalized chain complex and, per degree, simplex index -> basis position."""
    pos = [{s: i for i, s in enumerate(S.nondegenerate(q))} for q in range(S.dim + 1)]
    boundary = [[{} for _ in pos[0]]]
    for q in range(1, S.dim + 1):
        col = []
        for s in pos[q]:
            b: dict[int, int] = {}
            for i in range(q + 1):
                f = pos[q - 1].get(S.faces[q][i][s])
                if f is not None:
                    b[f] = b.get(f, 0) + (-1 if i % 2 else 1)
            col.append({k: v for k, v in b.items() if v})
        boundary.append(col)
    return ChainComplex([len(p) for p in pos], boundary, name=S.name), pos


@dataclass(frozen=True)
class HomologyProfile:
    betti: tuple
    torsion: tuple  # per degree, tuple of torsion coefficients (> 1)
    trusted: tuple
    valid_through: int

    def degree(self, q: int) -> tuple:
        return self.betti[q], self.torsion[q]

    @property
    def through(self) -> int:
        return len(self.betti) - 1

    def reduced_betti(self) -> list[int]:
        b = list(self.betti)
        if b and b[0]:
            b[0] -= 1
        return b

    def is_point(self) -> bool:
        return self.betti[0] == 1 and not any(self.betti[1:]) and not any(self.torsion)

    def is_zero(self) -> bool:
        return not any(self.betti) and not any(self.torsion)

    def to_json(self) -> list[dict]:
        return [
            {"degree": q, "betti": self.betti[q], "torsion": list(self.torsion[q]), "trusted": self.trusted[q]}
            for q in range(len(self.betti))
        ]

    def describe(self) -> str:
        parts = []
        for q in range(len(self.betti)):
            terms = (["Z^%d" % self.betti[q]] if self.betti[q] > 1 else ["Z"] if self.betti[q] else [])
            terms += [f"Z/{t}" for t in self.torsion[q]]
            parts.append(f"H{q}=" + ("+".join(terms) or "0"))
        return ", ".join(parts)


def complex_homology(C: ChainComplex, through: int, valid_through: int | None = None) -> HomologyProfile:
    betti, torsion = [], []
    for q in range(through + 1):
        out = C.factors(q)
        inc = C.factors(q + 1)
        betti.append(C.ranks[q] - len(out) - len(inc))
        torsion.append(tuple(t for t in inc if t > 1))
    vt = C.top - 1 if valid_through is None else valid_through
    return HomologyProfile(tuple(betti), tuple(torsion), tuple(q <= vt for q in range(through + 1)), vt)


def homology(S: TruncatedSSet, through: int | None = None, allow_untrusted: bool = False) -> HomologyProfile:
    """H_0..H_through of S.  Degrees up to dim-1 are trustworthy; the top degree
    is only computed with ``allow_untrusted`` and is then flagged."""
    if through is None:
        through = S.valid_through
    limit = S.dim if allow_untrusted else S.valid_through
    if through > limit or through < 0:
        raise HomologyError(f"degree {through} is beyond the valid range 0..{S.valid_through} of a {S.dim}-truncation")
    C, _ = normalized_chains(S)
    return complex_homology(C, through, S.valid_through)


# --- induced isomorphisms ---------------------------------------------------------


def _chain_map(f: SimplicialMap, spos, tpos, q: int) -> list:
    return [tpos[q].get(f.maps[q][s]) for s in f.source.nondegenerate(q)]


def cone_complex(f: SimplicialMap, top: int) -> ChainComplex:
    """Mapping cone through degree ``top``: Cone_q = N_{q-1}(S) + N_q(T),
    d(a, b) = (-da, f(a) + db)."""
    CS, spos = normalized_chains(f.source)
    CT, tpos = normalized_chains(f.target)
    ranks, boundary = [], []
    for q in range(top + 1):
        ns = CS.ranks[q - 1] if q >= 1 else 0
        ranks.append(ns + CT.ranks[q])
        rows = []
        if q >= 1:
            ns_prev = CS.ranks[q - 2] if q >= 2 else 0
            fm = _chain_map(f, spos, tpos, q - 1)
            for a in range(ns):
                r = {j: -x for j, x in CS.boundary[q - 1][a].items()} if q >= 2 else {}
                if fm[a] is not None:
                    r[ns_prev + fm[a]] = 1
                rows.append(r)
            for b in range(CT.ranks[q]):
                rows.append({ns_prev + j: x for j, x in CT.boundary[q][b].items()})
        else:
            rows = [{} for _ in range(ranks[0])]
        boundary.append(rows)
    return ChainComplex(ranks, boundary, name=f"Cone({f.name})")


def homology_iso_report(f: SimplicialMap, through: int | None = None) -> Report:
    """Does f induce isomorphisms H_q(S) -> H_q(T) for q = 0..through?

    H_q(Cone f) = 0 for q <= k makes f_* bijective below k and onto in degree k;
    an onto map between abstractly isomorphic finitely generated abelian groups
    is an isomorphism, which settles degree k.
    """
    S, T = f.source, f.target
    k = min(S.valid_through, T.valid_through) if through is None else through
    if k > min(S.valid_through, T.valid_through):
        raise HomologyError(f"degree {k} is beyond the valid range of the truncations")
    hs, ht = homology(S, k), homology(T, k)
    if hs.degree(k) != ht.degree(k):
        return Report.fail(f"H_{k} differs: {hs.describe()} vs {ht.describe()}")
    cone = complex_homology(cone_complex(f, k + 1), k, k)
    for q in range(k + 1):
        if cone.betti[q] or cone.torsion[q]:
            return Report.fail(f"mapping cone has nonzero H_{q}: {cone.describe()}; "
                               f"source {hs.describe()}, target {ht.describe()}")
    return Report.success()
