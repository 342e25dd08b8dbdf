"""Posetal quotients, the truncated Milnor construction M_n and C_pos = M_n o C.

M_n P has elements (x, m) with 0 <= m <= n and (x, m) < (y, m') iff x <= y in
P and m < m'.  It is always antisymmetric, whatever P is.
"""

from __future__ import annotations

from .categories import Functor, Poset, Preorder, preorder_to_cat
from .equivariant import GPreorder, gcategory_to_gpreorder, is_equivariant_map, is_monotone
from .groups import FiniteGroup, GroupError, Subgroup
from .limits import guard
from .report import Report


class PosetError(ValueError):
    pass


# --- posetal quotient -----------------------------------------------------------


class PosetalQuotient:
    def __init__(self, source: GPreorder | Preorder):
        P = source.order if isinstance(source, GPreorder) else source
        self.source = source
        n = len(P)
        cls_of = [-1] * n
        reps = []
        for i in range(n):
            if cls_of[i] < 0:
                c = len(reps)
                reps.append(i)
                for j in range(i, n):
                    if P.leq[i][j] and P.leq[j][i]:
                        cls_of[j] = c
        self.proj = tuple(cls_of)
        self.section = tuple(reps)  # minimal index in each class
        E = P.elements
        self.quotient = Poset([E[r] for r in reps], [[P.leq[a][b] for b in reps] for a in reps], check=False)
        self.action = None
        if isinstance(source, GPreorder):
            self.action = tuple(tuple(cls_of[source.action[g][r]] for r in reps) for g in range(source.group.order))

    @property
    def classes(self) -> list[list[int]]:
        out = [[] for _ in self.section]
        for i, c in enumerate(self.proj):
            out[c].append(i)
        return out

    def gquotient(self) -> GPreorder:
        if self.action is None:
            raise PosetError("source carries no group action")
        return GPreorder(self.quotient, self.source.group, self.action, name="quotient")

    def check(self) -> Report:
        P = self.source.order if isinstance(self.source, GPreorder) else self.source
        Q, pi, s = self.quotient, self.proj, self.section
        n = len(P)
        for i in range(n):
            for j in range(n):
                same = P.leq[i][j] and P.leq[j][i]
                if same != (pi[i] == pi[j]):
                    return Report.fail(f"classes wrong at ({P.elements[i]!r}, {P.elements[j]!r})")
        if any(pi[s[c]] != c for c in range(len(s))):
            return Report.fail("pi o s is not the identity")
        for i in range(n):
            r = s[pi[i]]
            if not (P.leq[i][r] and P.leq[r][i]):
                return Report.fail(f"zig-zag fails at {P.elements[i]!r}")
        if not Q.is_antisymmetric:
            return Report.fail("quotient is not antisymmetric")
        if not is_monotone(pi, P, Q):
            return Report.fail("pi is not monotone")
        if not is_monotone(s, Q, P):
            return Report.fail("s is not monotone")
        return Report.success()

    def functors(self):
        """(pi, s) as functors between the associated thin categories."""
        P = self.source.order if isinstance(self.source, GPreorder) else self.source
        CP, CQ = preorder_to_cat(P), preorder_to_cat(self.quotient)
        E, QE = P.elements, self.quotient.elements
        pi = {E[i]: QE[c] for i, c in enumerate(self.proj)}
        s = {QE[c]: E[r] for c, r in enumerate(self.section)}
        F = Functor.from_labels(CP, CQ, pi.__getitem__, lambda m: (pi[m[0]], pi[m[1]]), name="pi")
        Gb = Functor.from_labels(CQ, CP, s.__getitem__, lambda m: (s[m[0]], s[m[1]]), name="s")
        return CP, CQ, F, Gb


def posetal_quotient(P: GPreorder | Preorder) -> PosetalQuotient:
    return PosetalQuotient(P)


# --- Milnor construction ----------------------------------------------------------


def milnor_order(P: Preorder, n: int) -> Poset:
    if n < 0:
        raise PosetError("depth must be nonnegative")
    guard("poset_elements", len(P) * (n + 1), "Milnor poset elements")
    E, L = P.elements, P.leq
    idx = [(i, m) for i in range(len(P)) for m in range(n + 1)]
    leq = [[(i == j and m == m2) or (L[i][j] and m < m2) for (j, m2) in idx] for (i, m) in idx]
    return Poset([(E[i], m) for (i, m) in idx], leq, check=False)


class MilnorPoset(GPreorder):
    def __init__(self, source: GPreorder, depth: int):
        order = milnor_order(source.order, depth)
        k = depth + 1
        act = [[source.action[g][i] * k + m for i in range(len(source)) for m in range(k)]
               for g in range(source.group.order)]
        super().__init__(order, source.group, act, name=f"M_{depth}({source.name})")
        self.source = source
        self.depth = depth
        self.proj = tuple(i for i in range(len(source)) for _ in range(k))


def milnor(P: GPreorder, n: int) -> MilnorPoset:
    return MilnorPoset(P, n)


def milnor_on_map(f, P: Preorder | GPreorder, n: int) -> tuple:
    """M_n f = f x id as an index map."""
    k = n + 1
    return tuple(f[i] * k + m for i in range(len(P)) for m in range(k))


def milnor_projection(M: MilnorPoset) -> tuple:
    return M.proj


def projection_report(M: MilnorPoset) -> Report:
    pi = M.proj
    P = M.source
    if set(pi) != set(range(len(P))):
        return Report.fail("projection is not surjective")
    if not is_monotone(pi, M.order, P.order):
        return Report.fail("projection is not monotone")
    if not is_equivariant_map(pi, M, P):
        return Report.fail("projection is not equivariant")
    return Report.success()


def milnor_fixed_report(M: MilnorPoset, H: Subgroup) -> Report:
    """(M_n P)^H = M_n(P^H) as posets, compared on labels."""
    lhs = M.fixed(H)
    rhs = milnor_order(M.source.fixed(H), M.depth)
    if not lhs.same_as(rhs):
        return Report.fail(f"(M P)^H differs from M(P^H) for H = {H.elements}")
    return Report.success()


def stability_report(P: GPreorder, n: int) -> Report:
    """M_n P is a full subposet of M_{n+1} P."""
    small, big = milnor_order(P.order, n), milnor_order(P.order, n + 1)
    for i, x in enumerate(small.elements):
        bi = big.index.get(x)
        if bi is None:
            return Report.fail(f"{x!r} missing from the next stage")
        for j, y in enumerate(small.elements):
            if small.leq[i][j] != big.leq[bi][big.index[y]]:
                return Report.fail(f"order differs at ({x!r}, {y!r})")
    return Report.success()


def projection_functor(P: Preorder, n: int) -> Functor:
    """M_n P -> P as a functor between thin categories, for nerve maps."""
    CM, CP = preorder_to_cat(milnor_order(P, n)), preorder_to_cat(P)
    return Functor.from_labels(CM, CP, lambda u: u[0], lambda m: (m[0][0], m[1][0]), name="pi")


def milnor_functor(M: MilnorPoset) -> Functor:
    return projection_functor(M.source.order, M.depth)


# --- comma-category retraction ----------------------------------------------------


def retraction_report(P: Preorder, n: int) -> Report:
    """For each x, the fibre pi^-1[x] inside the comma poset (x | pi) of M_n P:
    r is a monotone retraction, s is monotone on the truncated domain, and
    (y, m) <= s(y, m) >= r(y, m); fibres are ordered by level and bounded above
    whenever the bound stays within depth n."""
    M = milnor_order(P, n)
    L = P.leq
    k = n + 1

    def le(u, v):
        return M.leq[u[0] * k + u[1]][v[0] * k + v[1]]

    N = len(P)
    for x in range(N):
        cls = {y for y in range(N) if L[x][y] and L[y][x]}
        comma = [(y, m) for y in range(N) if L[x][y] for m in range(k)]
        fibre = [(y, m) for (y, m) in comma if y in cls]

        def r(u):
            return u if u[0] in cls else (x, u[1])

        dom = [u for u in comma if u[0] in cls or u[1] < n]

        def s(u):
            return u if u[0] in cls else (u[0], u[1] + 1)

        for u in fibre:
            if r(u) != u:
                return Report.fail(f"r o i is not the identity at x={P.elements[x]!r}")
        for u in comma:
            if r(u) not in fibre:
                return Report.fail(f"r leaves the fibre at x={P.elements[x]!r}")
            for v in comma:
                if le(u, v) and not le(r(u), r(v)):
                    return Report.fail(f"r is not monotone at x={P.elements[x]!r}")
        for u in dom:
            su = s(u)
            if not L[x][su[0]]:
                return Report.fail(f"s leaves the comma poset at x={P.elements[x]!r}")
            if not (le(u, su) and le(r(u), su)):
                return Report.fail(f"(y,m) <= s(y,m) >= r(y,m) fails at x={P.elements[x]!r}, {u}")
            for v in dom:
                if le(u, v) and not le(su, s(v)):
                    return Report.fail(f"s is not monotone at x={P.elements[x]!r}")
        for u in fibre:
            for v in fibre:
                if u != v and le(u, v) != (u[1] < v[1]):
                    return Report.fail(f"fibre order is not the level order at x={P.elements[x]!r}")
                top = max(u[1], v[1]) + 1
                if top <= n and not (le(u, (x, top)) and le(v, (x, top))):
                    return Report.fail(f"fibre not bounded above at x={P.elements[x]!r}")
    return Report.success()


# --- C_pos ------------------------------------------------------------------------


def _require_pos(X):
    if X.flavor != "pos":
        raise PosetError("C_pos needs a poset-valued presheaf")


def c_pos(X, n: int) -> MilnorPoset:
    """M_n applied to the preorder underlying C X."""
    from .elmendorf import c_cat

    _require_pos(X)
    return milnor(gcategory_to_gpreorder(c_cat(X)), n)


def c_pos_closed_form(X, n: int) -> GPreorder:
    """C_pos built directly: ((H, aH), x, m) <= ((K, bK), y, m') iff equal, or
    aHa^-1 contains bKb^-1, r_{b^-1 a}^* x <= y in X(G/K) and m < m'."""
    from .elmendorf import stabilizer
    from .orbit import marked_orbit_category

    _require_pos(X)
    G = X.group
    Op = marked_orbit_category(G)
    orbit = Op.orbit
    spaces = orbit.spaces
    elems = [((h, c), x, m) for h in range(len(spaces)) for c in range(len(spaces[h]))
             for x in X.values[h].objects for m in range(n + 1)]
    guard("poset_elements", len(elems), "C_pos elements")
    stab = {}

    def conj(mark):
        if mark not in stab:
            stab[mark] = stabilizer(G, *mark)
        return stab[mark]

    def rel(u, v):
        if u == v:
            return True
        (hm, x, m), (km, y, m2) = u, v
        if not m < m2 or not conj(km).issubset(conj(hm)):
            return False
        a, b = spaces[hm[0]].rep(hm[1]), spaces[km[0]].rep(km[1])
        try:
            f = orbit.morphism(km[0], hm[0], G.mult[G.inv[b]][a])
        except GroupError:
            return False
        V = X.values[km[0]]
        fx = X.restrictions[f].obj_label(x)
        return bool(V.hom(V.obj_index[fx], V.obj_index[y]))

    order = Poset.from_relation(elems, rel, check=False)
    # relabel to the composite's ((mark, x), m) labels
    order = Poset([((hm, x), m) for (hm, x, m) in order.elements], order.leq, check=False)

    def act(g, u):
        (mark, x), m = u
        return ((mark[0], spaces[mark[0]].action[g][mark[1]]), x), m

    return GPreorder.from_labels(order, G, act, name=f"Cpos_closed({X.name})")


def c_pos_report(X, n: int) -> Report:
    composite, closed = c_pos(X, n), c_pos_closed_form(X, n)
    if not composite.order.same_as(closed.order):
        diff = composite.order.relation_pairs() ^ closed.order.relation_pairs()
        return Report.fail(f"closed form and M o C differ, e.g. at {min(diff, key=repr)!r}")
    ia, ib = composite.order.index, closed.order.index
    for g in range(X.group.order):
        for x in composite.elements:
            if composite.elements[composite.action[g][ia[x]]] != closed.elements[closed.action[g][ib[x]]]:
                return Report.fail(f"actions differ at g={g}, {x!r}")
    if not composite.is_poset:
        return Report.fail("C_pos is not antisymmetric")
    return Report.success()


# --- the quotient counterexample ---------------------------------------------------


def quotient_counterexample_report(G: FiniteGroup, n: int = 2, d: int = 4) -> dict:
    """For P = C X_{e}: the posetal quotient is a G-fixed point while N(P) is
    G-free on nondegenerate simplices and M_n P has no G-fixed element."""
    from .elmendorf import c_cat
    from .presheaves import SubgroupFamily, family_presheaf
    from .simplicial import free_on_nondegenerate, nerve

    if G.order < 2:
        raise GroupError("the counterexample needs a nontrivial group")
    X = family_presheaf(G, SubgroupFamily(G, [G.trivial]), name="family:e")
    CX = c_cat(X)
    P = gcategory_to_gpreorder(CX)
    q = posetal_quotient(P)
    Q = q.gquotient()
    point = len(Q) == 1 and all(a == (0,) for a in Q.action)
    complete = all(all(row) for row in P.order.leq)
    N = nerve(CX, d)
    free = free_on_nondegenerate(N)
    M = milnor(P, n)
    m_fixed = M.fixed_ids(G.whole)
    q_fixed = Q.fixed_ids(G.whole)
    return {
        "group": G.name,
        "preorder_size": len(P),
        "complete_preorder": complete,
        "quotient_size": len(Q),
        "quotient_is_fixed_point": point,
        "nerve_dim": d,
        "nondegenerate_counts": N.nondegenerate_counts(),
        "free_on_nondegenerate": bool(free),
        "free_witness": free.witness,
        "milnor_depth": n,
        "milnor_fixed_count": len(m_fixed),
        "quotient_fixed_count": len(q_fixed),
        "quotient_check": bool(q.check()),
        "ok": point and complete and bool(free) and not m_fixed and len(q_fixed) == 1 and bool(q.check()),
    }
