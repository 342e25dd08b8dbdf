"""Truncated simplicial sets: nerves, fixed points, hocolim diagonals, Thomason's map.

Nerve orientation is the standard one: a q-simplex of N(C) is a chain
y_0 -> y_1 -> ... -> y_q, stored as the tuple of its q morphism ids (a
0-simplex is the 1-tuple of an object id), and d_i deletes y_i.

The Bousfield-Kan diagonal of a diagram F : I -> Cat has q-simplices
(gamma, xi) with gamma = (c_0 -> ... -> c_q) a chain of I and xi a q-simplex
of N F(c_0).  Thomason's map sends it to the chain in the Grothendieck
construction with vertices (c_j, F(c_0 -> c_j) xi_j).  Writing chains with
arrows pointing left and vertices numbered from the other end gives the usual
textbook statement of the same formula.
"""

from __future__ import annotations

from functools import cached_property

from .categories import FinCategory, Functor
from .equivariant import GCategory
from .grothendieck import Diagram, grothendieck
from .groups import FiniteGroup, Subgroup
from .limits import SizeGuardError, guard
from .report import Report


class SimplicialError(ValueError):
    pass


class TruncatedSSet:
    """Simplices of degrees 0..dim with face/degeneracy index tables.

    ``faces[q][i][s]`` is the index of d_i of simplex s of degree q (q >= 1),
    ``degens[q][i][s]`` the index of s_i s in degree q+1 (q < dim), and
    ``action[q][g][s]`` the optional G-action.  ``labels[q][s]`` identify
    simplices across different constructions.
    """

    def __init__(self, dim, keys, labels, faces, degens, group=None, action=None, name=None):
        self.dim = dim
        self.keys = keys
        self.labels = labels
        self.faces = faces
        self.degens = degens
        self.group = group
        self.action = action
        self.name = name
        self.index = [{k: i for i, k in enumerate(ks)} for ks in keys]

    def __repr__(self):
        return f"TruncatedSSet({self.name or '?'}, dim={self.dim}, counts={self.counts()})"

    def count(self, q: int) -> int:
        return len(self.keys[q])

    def counts(self) -> list[int]:
        return [len(k) for k in self.keys]

    @cached_property
    def _degenerate(self) -> list[frozenset]:
        out = [frozenset()]
        for q in range(1, self.dim + 1):
            out.append(frozenset(s for tbl in self.degens[q - 1] for s in tbl))
        return out

    def nondegenerate(self, q: int) -> list[int]:
        deg = self._degenerate[q]
        return [s for s in range(self.count(q)) if s not in deg]

    def nondegenerate_counts(self) -> list[int]:
        return [len(self.nondegenerate(q)) for q in range(self.dim + 1)]

    @property
    def valid_through(self) -> int:
        return self.dim - 1

    @cached_property
    def label_index(self) -> list[dict]:
        return [{lab: i for i, lab in enumerate(ls)} for ls in self.labels]

    @cached_property
    def signature(self):
        """Label-level data: per degree, label -> (face labels, degeneracy labels)."""
        out = []
        for q in range(self.dim + 1):
            L = self.labels[q]
            deg = {}
            for s in range(self.count(q)):
                fs = tuple(self.labels[q - 1][self.faces[q][i][s]] for i in range(q + 1)) if q else ()
                ds = tuple(self.labels[q + 1][self.degens[q][i][s]] for i in range(q + 1)) if q < self.dim else ()
                deg[L[s]] = (fs, ds)
            out.append(deg)
        return out

    def same_as(self, other: TruncatedSSet) -> bool:
        return self.dim == other.dim and self.signature == other.signature

    def to_json(self) -> dict:
        from .categories import _jsonable

        return {
            "dim": self.dim,
            "simplices": [[_jsonable(l) for l in ls] for ls in self.labels],
            # faces[q] for q >= 1; degree 0 has none
            "faces": [[]] + [[list(t) for t in f] for f in self.faces[1:]],
            "degeneracies": [[list(t) for t in d] for d in self.degens],
            "nondegenerate": [self.nondegenerate(q) for q in range(self.dim + 1)],
        }


def validate_sset(S: TruncatedSSet) -> Report:
    """Simplicial identities on all stored degrees, and compatibility of the action."""
    d, s, n = S.faces, S.degens, S.dim
    for q in range(2, n + 1):
        for j in range(q + 1):
            for i in range(j):
                # d_i d_j = d_{j-1} d_i
                for x in range(S.count(q)):
                    if d[q - 1][i][d[q][j][x]] != d[q - 1][j - 1][d[q][i][x]]:
                        return Report.fail(f"d_{i} d_{j} != d_{j-1} d_{i} on {S.labels[q][x]!r}")
    for q in range(n):
        for j in range(q + 1):
            for x in range(S.count(q)):
                y = s[q][j][x]
                for i in range(q + 2):
                    if q == 0 and i > 1:
                        continue
                    got = d[q + 1][i][y]
                    if i < j:
                        want = s[q - 1][j - 1][d[q][i][x]]
                    elif i in (j, j + 1):
                        want = x
                    else:
                        want = s[q - 1][j][d[q][i - 1][x]]
                    if got != want:
                        return Report.fail(f"d_{i} s_{j} identity fails on {S.labels[q][x]!r}")
    for q in range(n - 1):
        for j in range(q + 1):
            for i in range(j + 1):
                for x in range(S.count(q)):
                    if s[q + 1][i][s[q][j][x]] != s[q + 1][j + 1][s[q][i][x]]:
                        return Report.fail(f"s_{i} s_{j} != s_{j+1} s_{i} on {S.labels[q][x]!r}")
    if S.action is not None:
        G = S.group
        for q in range(n + 1):
            for g in range(G.order):
                a = S.action[q][g]
                if sorted(a) != list(range(S.count(q))):
                    return Report.fail(f"element {g} does not permute {q}-simplices")
                for i in range(q + 1):
                    for x in range(S.count(q)):
                        if q and S.action[q - 1][g][d[q][i][x]] != d[q][i][a[x]]:
                            return Report.fail(f"action of {g} does not commute with d_{i}")
                        if q < n and S.action[q + 1][g][s[q][i][x]] != s[q][i][a[x]]:
                            return Report.fail(f"action of {g} does not commute with s_{i}")
            for g in range(G.order):
                for h in range(G.order):
                    gh = G.mult[g][h]
                    if any(S.action[q][gh][x] != S.action[q][g][S.action[q][h][x]] for x in range(S.count(q))):
                        return Report.fail(f"action law fails in degree {q}")
    return Report.success()


# --- chains in a category ---------------------------------------------------


def chain_vertex(C: FinCategory, key, q: int, j: int) -> int:
    if q == 0:
        return key[0]
    return C.src[key[j]] if j < q else C.tgt[key[q - 1]]


def chain_face(C: FinCategory, key, q: int, i: int):
    if q == 1:
        return (C.tgt[key[0]],) if i == 0 else (C.src[key[0]],)
    if i == 0:
        return key[1:]
    if i == q:
        return key[:-1]
    return key[:i - 1] + (C.comp[(key[i], key[i - 1])],) + key[i + 1:]


def chain_degen(C: FinCategory, key, q: int, i: int):
    if q == 0:
        return (C.ident[key[0]],)
    y = chain_vertex(C, key, q, i)
    return key[:i] + (C.ident[y],) + key[i:]


def enumerate_chains(C: FinCategory, d: int) -> list[list[tuple]]:
    out = [[(x,) for x in range(C.n_obj)]]
    if d >= 1:
        out.append([(m,) for m in range(C.n_mor)])
    for q in range(2, d + 1):
        layer = [ch + (m,) for ch in out[-1] for m in C.out_of(C.tgt[ch[-1]])]
        guard("simplices", len(layer), f"chains of length {q} in {C.name}")
        out.append(layer)
    return out


def chain_labels(C: FinCategory, keys, q: int):
    if q == 0:
        return [(C.objects[k[0]],) for k in keys]
    L = C.mor_labels
    return [tuple(L[m] for m in k) for k in keys]


def nerve(C: FinCategory | GCategory, d: int, name=None) -> TruncatedSSet:
    """N(C) through degree d; a G-category gets the induced simplicial action."""
    gcat = C if isinstance(C, GCategory) else None
    C = gcat.cat if gcat else C
    cache = getattr(C, "_nerves", None)
    if cache is None:
        cache = C._nerves = {}
    if (d, id(gcat)) in cache:
        return cache[(d, id(gcat))]
    keys = enumerate_chains(C, d)
    index = [{k: i for i, k in enumerate(ks)} for ks in keys]
    faces = [None] + [
        [tuple(index[q - 1][chain_face(C, k, q, i)] for k in keys[q]) for i in range(q + 1)]
        for q in range(1, d + 1)
    ]
    degens = [
        [tuple(index[q + 1][chain_degen(C, k, q, i)] for k in keys[q]) for i in range(q + 1)]
        for q in range(d)
    ]
    labels = [chain_labels(C, keys[q], q) for q in range(d + 1)]
    action = group = None
    if gcat is not None:
        group = gcat.group
        action = []
        for q in range(d + 1):
            per_g = []
            for g in range(group.order):
                if q == 0:
                    oa = gcat.obj_act[g]
                    per_g.append(tuple(index[0][(oa[k[0]],)] for k in keys[0]))
                else:
                    ma = gcat.mor_act[g]
                    per_g.append(tuple(index[q][tuple(ma[m] for m in k)] for k in keys[q]))
            action.append(per_g)
    S = TruncatedSSet(d, keys, labels, faces, degens, group=group, action=action, name=name or f"N({C.name})")
    cache[(d, id(gcat))] = S
    return S


def fixed_sset(S: TruncatedSSet, H: Subgroup) -> TruncatedSSet:
    """Degreewise H-fixed simplices."""
    if S.action is None:
        raise SimplicialError("no group action attached")
    keep = [[x for x in range(S.count(q)) if all(S.action[q][h][x] == x for h in H)]
            for q in range(S.dim + 1)]
    new = [{x: i for i, x in enumerate(k)} for k in keep]
    faces = [None] + [[tuple(new[q - 1][S.faces[q][i][x]] for x in keep[q]) for i in range(q + 1)]
                      for q in range(1, S.dim + 1)]
    degens = [[tuple(new[q + 1][S.degens[q][i][x]] for x in keep[q]) for i in range(q + 1)]
              for q in range(S.dim)]
    # only the normalizer of H acts on the fixed part, so no action is kept
    return TruncatedSSet(
        S.dim,
        [[S.keys[q][x] for x in keep[q]] for q in range(S.dim + 1)],
        [[S.labels[q][x] for x in keep[q]] for q in range(S.dim + 1)],
        faces, degens, name=f"{S.name}^{H.elements}",
    )


# --- simplicial maps ---------------------------------------------------------


class SimplicialMap:
    def __init__(self, source: TruncatedSSet, target: TruncatedSSet, maps, name=None):
        self.source = source
        self.target = target
        self.maps = [tuple(m) for m in maps]
        self.name = name

    @cached_property
    def label_data(self):
        S, T = self.source, self.target
        return [{S.labels[q][x]: T.labels[q][y] for x, y in enumerate(self.maps[q])}
                for q in range(S.dim + 1)]

    def restrict_fixed(self, H: Subgroup) -> SimplicialMap:
        S, T = fixed_sset(self.source, H), fixed_sset(self.target, H)
        out = []
        for q in range(S.dim + 1):
            full_s = self.source.label_index[q]
            tidx = T.label_index[q]
            row = []
            for lab in S.labels[q]:
                img = self.target.labels[q][self.maps[q][full_s[lab]]]
                if img not in tidx:
                    raise SimplicialError("map does not carry fixed simplices to fixed simplices")
                row.append(tidx[img])
            out.append(row)
        return SimplicialMap(S, T, out, name=f"{self.name}^{H.elements}")


def validate_simplicial_map(f: SimplicialMap) -> Report:
    S, T = f.source, f.target
    if S.dim != T.dim:
        return Report.fail("dimension mismatch")
    for q in range(S.dim + 1):
        m = f.maps[q]
        if len(m) != S.count(q):
            return Report.fail(f"map table in degree {q} has the wrong length")
        for i in range(q + 1):
            for x in range(S.count(q)):
                if q and f.maps[q - 1][S.faces[q][i][x]] != T.faces[q][i][m[x]]:
                    return Report.fail(f"does not commute with d_{i} on {S.labels[q][x]!r}")
                if q < S.dim and f.maps[q + 1][S.degens[q][i][x]] != T.degens[q][i][m[x]]:
                    return Report.fail(f"does not commute with s_{i} on {S.labels[q][x]!r}")
    if S.action is not None and T.action is not None:
        for q in range(S.dim + 1):
            for g in range(S.group.order):
                for x in range(S.count(q)):
                    if f.maps[q][S.action[q][g][x]] != T.action[q][g][f.maps[q][x]]:
                        return Report.fail(f"not equivariant: g={g} on {S.labels[q][x]!r}")
    return Report.success()


def nerve_of_functor(F: Functor, d: int, source=None, target=None) -> SimplicialMap:
    S = source or nerve(F.source, d)
    T = target or nerve(F.target, d)
    maps = [[T.index[0][(F.obj_map[k[0]],)] for k in S.keys[0]]]
    for q in range(1, d + 1):
        maps.append([T.index[q][tuple(F.mor_map[m] for m in k)] for k in S.keys[q]])
    return SimplicialMap(S, T, maps, name=f"N({F.name})")


# --- homotopy colimits -------------------------------------------------------


def _push(F: Functor, key, q: int):
    if q == 0:
        return (F.obj_map[key[0]],)
    return tuple(F.mor_map[m] for m in key)


def diagram_hocolim(D: Diagram, d: int, action=None, name=None) -> TruncatedSSet:
    """Diagonal of the Bousfield-Kan simplicial replacement of N o F.

    ``action`` is an optional (group, obj_act, mor_act) acting on the index
    category with F invariant; it acts on the chain and leaves the fiber simplex
    alone (permuting summands).
    """
    I = D.index
    ichains = enumerate_chains(I, d)
    fiber_keys = {}
    fiber_index = {}
    for F in D.fibers:
        if id(F) not in fiber_keys:
            ks = enumerate_chains(F, d)
            fiber_keys[id(F)] = ks
    keys = []
    for q in range(d + 1):
        layer = []
        for g in ichains[q]:
            c0 = chain_vertex(I, g, q, 0)
            for xi in fiber_keys[id(D.fibers[c0])][q]:
                layer.append((g, xi))
        guard("simplices", len(layer), f"hocolim simplices in degree {q}")
        keys.append(layer)
    index = [{k: i for i, k in enumerate(ks)} for ks in keys]

    def face(key, q, i):
        g, xi = key
        F0 = D.fibers[chain_vertex(I, g, q, 0)]
        if i == 0:
            return chain_face(I, g, q, 0), _push(D.maps[g[0]], chain_face(F0, xi, q, 0), q - 1)
        return chain_face(I, g, q, i), chain_face(F0, xi, q, i)

    def degen(key, q, i):
        g, xi = key
        F0 = D.fibers[chain_vertex(I, g, q, 0)]
        return chain_degen(I, g, q, i), chain_degen(F0, xi, q, i)

    faces = [None] + [[tuple(index[q - 1][face(k, q, i)] for k in keys[q]) for i in range(q + 1)]
                      for q in range(1, d + 1)]
    degens = [[tuple(index[q + 1][degen(k, q, i)] for k in keys[q]) for i in range(q + 1)]
              for q in range(d)]
    labels = []
    for q in range(d + 1):
        row = []
        for g, xi in keys[q]:
            F0 = D.fibers[chain_vertex(I, g, q, 0)]
            row.append((chain_labels(I, [g], q)[0], chain_labels(F0, [xi], q)[0]))
        labels.append(row)
    group = act = None
    if action is not None:
        group, oa, ma = action
        act = []
        for q in range(d + 1):
            per_g = []
            for g in range(group.order):
                if q == 0:
                    per_g.append(tuple(index[0][((oa[g][c[0]],), xi)] for c, xi in keys[0]))
                else:
                    per_g.append(tuple(index[q][(tuple(ma[g][u] for u in c), xi)] for c, xi in keys[q]))
            act.append(per_g)
    return TruncatedSSet(d, keys, labels, faces, degens, group=group, action=act, name=name or "hocolim")


def diagram_thomason(D: Diagram, hocolim: TruncatedSSet, target: TruncatedSSet,
                     groth: FinCategory) -> SimplicialMap:
    """Thomason's map hocolim N F -> N(Grothendieck F) on the diagonal."""
    I = D.index
    omap = groth.obj_index
    mmap = groth.mor_index
    maps = []
    for q in range(hocolim.dim + 1):
        row = []
        for g, xi in hocolim.keys[q]:
            c0 = chain_vertex(I, g, q, 0)
            F0 = D.fibers[c0]
            if q == 0:
                key = (omap[(I.objects[c0], F0.objects[xi[0]])],)
            else:
                out = []
                w = I.ident[c0]
                for j in range(q):
                    u = g[j]
                    w = I.comp[(u, w)]  # c_0 -> c_{j+1}
                    Fw = D.maps[w]
                    h = Fw.mor_map[xi[j]]
                    out.append(mmap[(I.mor_labels[u], Fw.target.mor_labels[h])])
                key = tuple(out)
            row.append(target.index[q][key])
        maps.append(row)
    return SimplicialMap(hocolim, target, maps, name="eta")


# --- orbit presheaves -------------------------------------


def hocolim_diag(X, d: int) -> TruncatedSSet:
    """hocolim over O_{G,+}^op of N o X o p, with G permuting summands."""
    from .elmendorf import c_cat

    CX = c_cat(X)
    D = CX.diagram
    I = D.index
    Op = CX.marked
    # the index is O_{G,+}^op, sharing labels (hence the action) with O_{G,+}
    oa = [[I.obj_index[Op.cat.objects[Op.gcat.obj_act[g][Op.cat.obj_index[x]]]] for x in I.objects]
          for g in range(X.group.order)]
    ma = [[I.mor_index[Op.cat.mor_labels[Op.gcat.mor_act[g][Op.cat.mor_index[m]]]] for m in I.mor_labels]
          for g in range(X.group.order)]
    return diagram_hocolim(D, d, action=(X.group, oa, ma), name=f"hocolim({X.name})")


def thomason_eta(X, d: int, hocolim: TruncatedSSet | None = None) -> SimplicialMap:
    from .elmendorf import c_cat

    CX = c_cat(X)
    S = hocolim or hocolim_diag(X, d)
    T = nerve(CX, d)
    return diagram_thomason(CX.diagram, S, T, CX.cat)


def thomason_fixed_report(X, d: int, K: Subgroup, eta: SimplicialMap | None = None) -> Report:
    """The K-fixed part of eta equals eta for the data restricted to (O_{G,+}^op)^K,
    together with the identifications of both fixed-point sides."""
    from .elmendorf import c_cat

    CX = c_cat(X)
    eta = eta or thomason_eta(X, d)
    fixed_ids = CX.marked.fixed_object_ids(K)
    I = CX.diagram.index
    fixed_labels = {CX.marked.cat.objects[i] for i in fixed_ids}
    Dk = CX.diagram.restrict([I.obj_index[x] for x in fixed_labels])
    hk = diagram_hocolim(Dk, d)
    gk = grothendieck(Dk)
    if not gk.same_as(CX.fixed_subcategory(K)):
        return Report.fail(f"(C X)^K differs from the Grothendieck construction over the K-fixed part, K={K.elements}")
    nk = nerve(gk, d)
    etak = diagram_thomason(Dk, hk, nk, gk)
    restricted = eta.restrict_fixed(K)
    if not restricted.source.same_as(hk):
        return Report.fail(f"hocolim^K differs from hocolim over the K-fixed index, K={K.elements}")
    if not restricted.target.same_as(nk):
        return Report.fail(f"N(C X)^K differs from N((C X)^K), K={K.elements}")
    if restricted.label_data != etak.label_data:
        return Report.fail(f"eta^K differs from eta of the restricted data, K={K.elements}")
    return Report.success()


def bar_reindex_check(X, q: int) -> dict:
    """Degree-q re-indexing between (chains in O_G, basepoint in G/H_0) and
    chains in O_{G,+}, carrying the summand X(G/H_q) along.

    Returns a report dict with counts and verdicts.
    """
    from .elmendorf import c_cat

    CX = c_cat(X)
    Op = CX.marked
    orbit = Op.orbit
    O = orbit.cat
    G = X.group
    spaces = orbit.spaces
    ochains = enumerate_chains(O, q)[q]
    # left: (chain G/H_0 -> ... -> G/H_q in O_G, coset a_0 H_0)
    left = []
    for ch in ochains:
        h0 = chain_vertex(O, ch, q, 0)
        for c0 in range(len(spaces[h0])):
            left.append((ch, c0))

    def phi_(item):
        ch, c0 = item
        if q == 0:
            return ((ch[0], c0),)
        marks = [(O.src[ch[0]], c0)]
        for m in ch:
            marks.append((O.tgt[m], orbit.apply(m, marks[-1][1])))
        return tuple(Op.cat.mor_index[(marks[j], marks[j + 1])] for j in range(q))

    right = enumerate_chains(Op.cat, q)[q]
    if q == 0:
        right = [(Op.cat.objects[k[0]],) for k in right]
    image = [phi_(it) for it in left]
    bijective = len(set(image)) == len(image) and set(image) == set(right)

    def act_left(g, item):
        ch, c0 = item
        h0 = chain_vertex(O, ch, q, 0)
        return ch, spaces[h0].action[g][c0]

    def act_right(g, key):
        if q == 0:
            h, c = key[0]
            return ((h, spaces[h].action[g][c]),)
        return tuple(Op.gcat.mor_act[g][m] for m in key)

    equivariant = all(phi_(act_left(g, it)) == act_right(g, phi_(it))
                      for g in range(G.order) for it in left)

    def last_orbit(key):
        if q == 0:
            return key[0][0]
        return Op.cat.objects[Op.cat.tgt[key[-1]]][0]

    summands = all(chain_vertex(O, it[0], q, q) == last_orbit(phi_(it)) for it in left)
    # degree-q simplices of the hocolim, counted through the re-indexing
    nx = {h: len(enumerate_chains(X.values[h], q)[q]) for h in range(len(spaces))}
    total_left = sum(nx[chain_vertex(O, it[0], q, q)] for it in left)
    S = hocolim_diag(X, q)
    return {
        "degree": q,
        "left_count": len(left),
        "right_count": len(right),
        "bijective": bijective,
        "equivariant": equivariant,
        "summands_preserved": summands,
        "simplex_count": total_left,
        "hocolim_count": S.count(q),
        "ok": bijective and equivariant and summands and total_left == S.count(q),
    }


def free_on_nondegenerate(S: TruncatedSSet) -> Report:
    """Every non-identity element moves every nondegenerate simplex."""
    for q in range(S.dim + 1):
        nd = S.nondegenerate(q)
        for g in range(1, S.group.order):
            for x in nd:
                if S.action[q][g][x] == x:
                    return Report.fail(f"element {g} fixes {S.labels[q][x]!r}")
    return Report.success()
