"""Finite groups given by multiplication tables, their subgroups and coset spaces.

Elements are the integers ``0..order-1`` and the identity is always ``0``.
Cosets are left cosets ``aH`` and ``G`` acts on them from the left.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property

from .limits import guard
from .report import Report


class GroupError(ValueError):
    pass


class FiniteGroup:
    """A finite group with an explicit multiplication table.

    ``mult[a][b]`` is the index of the product ``a*b``.  Instances compare by
    identity, which is what subgroups and coset spaces hang off.
    """

    def __init__(self, mult, name: str | None = None, check: bool = True):
        mult = tuple(tuple(int(x) for x in row) for row in mult)
        n = len(mult)
        if n == 0 or any(len(row) != n for row in mult):
            raise GroupError("multiplication table must be a non-empty square")
        guard("group_order", n, "group order")
        self.order = n
        self.mult = mult
        self.name = name or f"G{n}"
        self.identity = 0
        inv = [None] * n
        for a in range(n):
            for b in range(n):
                if mult[a][b] == 0:
                    inv[a] = b
                    break
        if any(x is None for x in inv):
            raise GroupError("some element has no inverse")
        self.inv = tuple(inv)
        if check:
            report = self.check_axioms()
            if not report:
                raise GroupError(report.witness)

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"

    def mul(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def prod(self, *elts: int) -> int:
        out = 0
        for x in elts:
            out = self.mult[out][x]
        return out

    def conj(self, a: int, x: int) -> int:
        """a x a^-1"""
        return self.mult[self.mult[a][x]][self.inv[a]]

    def check_axioms(self) -> Report:
        n, m = self.order, self.mult
        for a in range(n):
            if m[0][a] != a or m[a][0] != a:
                return Report.fail(f"0 is not a two-sided identity at {a}")
            for b in range(n):
                if not 0 <= m[a][b] < n:
                    return Report.fail(f"product {a}*{b} out of range")
        for a in range(n):
            if m[a][self.inv[a]] != 0 or m[self.inv[a]][a] != 0:
                return Report.fail(f"inverse law fails at {a}")
            if sorted(m[a]) != list(range(n)):
                return Report.fail(f"row {a} is not a permutation")
        for a, b, c in itertools.product(range(n), repeat=3):
            if m[m[a][b]][c] != m[a][m[b][c]]:
                return Report.fail(f"associativity fails at ({a}, {b}, {c})")
        return Report.success()

    def generate(self, gens) -> tuple[int, ...]:
        """Elements of the subgroup generated by ``gens``."""
        els = {0}
        frontier = [0]
        gens = list(gens)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mult[x][g]
                    if y not in els:
                        els.add(y)
                        nxt.append(y)
            frontier = nxt
        return tuple(sorted(els))

    @cached_property
    def subgroups(self) -> tuple[Subgroup, ...]:
        return tuple(enumerate_subgroups(self))

    @cached_property
    def _subgroup_index(self) -> dict:
        return {H.elements: i for i, H in enumerate(self.subgroups)}

    def subgroup_id(self, H: Subgroup) -> int:
        return self._subgroup_index[H.elements]

    def subgroup(self, elements) -> Subgroup:
        return Subgroup(self, tuple(sorted(set(elements))))

    @property
    def trivial(self) -> Subgroup:
        return Subgroup(self, (0,))

    @property
    def whole(self) -> Subgroup:
        return Subgroup(self, tuple(range(self.order)))

    def to_json(self) -> dict:
        return {"name": self.name, "order": self.order, "mult": [list(r) for r in self.mult]}

    @classmethod
    def from_json(cls, data: dict) -> FiniteGroup:
        mult = data["mult"]
        if "order" in data and data["order"] != len(mult):
            raise GroupError("declared order does not match the table")
        return cls(mult, name=data.get("name"))


@dataclass(frozen=True)
class Subgroup:
    group: FiniteGroup = field(repr=False)
    elements: tuple[int, ...]

    def __post_init__(self):
        els = set(self.elements)
        g = self.group
        if 0 not in els:
            raise GroupError(f"{self.elements} does not contain the identity")
        for a in els:
            if g.inv[a] not in els or any(g.mult[a][b] not in els for b in els):
                raise GroupError(f"{self.elements} is not closed")
        if g.order % len(els):
            raise GroupError(f"{self.elements} violates Lagrange")

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self._set

    def __iter__(self):
        return iter(self.elements)

    @cached_property
    def _set(self) -> frozenset:
        return frozenset(self.elements)

    def issubset(self, other: Subgroup) -> bool:
        return self._set <= other._set

    @property
    def id(self) -> int:
        return self.group.subgroup_id(self)

    def sort_key(self):
        return (len(self.elements), self.elements)


def is_subgroup(G: FiniteGroup, elements) -> bool:
    try:
        Subgroup(G, tuple(sorted(set(elements))))
    except GroupError:
        return False
    return True


def enumerate_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """All subgroups, sorted by (size, element list).

    Every subgroup is a join of cyclic subgroups, so close the set of cyclic
    subgroups under joins with cyclic subgroups.
    """
    cyclic = {G.generate([g]) for g in range(G.order)}
    found = set(cyclic)
    frontier = set(cyclic)
    while frontier:
        new = set()
        for A in frontier:
            for C in cyclic:
                if set(C) <= set(A):
                    continue
                J = G.generate(A + C)
                if J not in found:
                    new.add(J)
        found |= new
        frontier = new
    subs = [Subgroup(G, els) for els in found]
    subs.sort(key=Subgroup.sort_key)
    return subs


def conjugate_subgroup(H: Subgroup, a: int) -> Subgroup:
    """aHa^-1"""
    G = H.group
    return Subgroup(G, tuple(sorted(G.conj(a, h) for h in H)))


def is_subconjugate(K: Subgroup, H: Subgroup) -> bool:
    """True when aKa^-1 <= H for some a."""
    G = H.group
    return any(conjugate_subgroup(K, a).issubset(H) for a in range(G.order))


@dataclass(frozen=True)
class CosetSpace:
    """Left cosets G/H with the left multiplication action.

    Cosets are ordered by their minimal element, which is also the canonical
    representative, so coset 0 is H itself.
    """

    subgroup: Subgroup
    cosets: tuple[tuple[int, ...], ...]
    action: tuple[tuple[int, ...], ...]  # action[g][c]
    coset_of: tuple[int, ...]  # element -> coset index

    @property
    def group(self) -> FiniteGroup:
        return self.subgroup.group

    def rep(self, c: int) -> int:
        return self.cosets[c][0]

    def __len__(self):
        return len(self.cosets)

    def check_action(self) -> Report:
        G = self.group
        seen = sorted(x for c in self.cosets for x in c)
        if seen != list(range(G.order)):
            return Report.fail("cosets do not partition G")
        for c in range(len(self)):
            if self.action[0][c] != c:
                return Report.fail(f"identity moves coset {c}")
        for g, h in itertools.product(range(G.order), repeat=2):
            gh = G.mult[g][h]
            for c in range(len(self)):
                if self.action[gh][c] != self.action[g][self.action[h][c]]:
                    return Report.fail(f"action law fails at g={g}, h={h}, coset {c}")
        return Report.success()


_coset_cache: dict = {}


def coset_space(G: FiniteGroup, H: Subgroup) -> CosetSpace:
    if H.group is not G:
        raise GroupError("subgroup belongs to a different group")
    key = (id(G), H.elements)
    hit = _coset_cache.get(key)
    if hit is not None and hit.group is G:
        return hit
    coset_of = [-1] * G.order
    cosets = []
    for a in range(G.order):
        if coset_of[a] >= 0:
            continue
        c = tuple(sorted(G.mult[a][h] for h in H))
        for x in c:
            coset_of[x] = len(cosets)
        cosets.append(c)
    action = tuple(
        tuple(coset_of[G.mult[g][c[0]]] for c in cosets) for g in range(G.order)
    )
    X = CosetSpace(H, tuple(cosets), action, tuple(coset_of))
    _coset_cache[key] = X
    return X


def fixed_cosets(X: CosetSpace, K: Subgroup) -> list[int]:
    """Cosets aH with a^-1 K a contained in H."""
    G = X.group
    if K.group is not G:
        raise GroupError("subgroup belongs to a different group")
    H = X.subgroup
    out = []
    for c, coset in enumerate(X.cosets):
        a = coset[0]
        if all(G.conj(G.inv[a], k) in H for k in K):
            out.append(c)
    return out


# --- builtin groups ---------------------------------------------------------


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("n must be positive")
    guard("group_order", n, "group order")
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)], name=f"C{n}")


def dihedral_group(n: int) -> FiniteGroup:
    """Order 2n.  Element i + n*j is r^i s^j, with s r s = r^-1."""
    if n < 1:
        raise GroupError("n must be positive")
    guard("group_order", 2 * n, "group order")

    def mul(x, y):
        i, j = x % n, x // n
        k, l = y % n, y // n
        return (i + (k if j == 0 else -k)) % n + n * ((j + l) % 2)

    return FiniteGroup([[mul(x, y) for y in range(2 * n)] for x in range(2 * n)], name=f"D{n}")


def symmetric_group(n: int) -> FiniteGroup:
    """Permutations of range(n) in lexicographic order; (p*q)(i) = p(q(i))."""
    if n < 1:
        raise GroupError("n must be positive")
    guard("symmetric_degree", n, "symmetric group degree")
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    mult = [[index[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms]
    G = FiniteGroup(mult, name=f"S{n}")
    G.permutations = perms
    return G


def builtin_group(kind: str, n: int) -> FiniteGroup:
    makers = {"cyclic": cyclic_group, "dihedral": dihedral_group, "symmetric": symmetric_group}
    if kind not in makers:
        raise GroupError(f"unknown group kind {kind!r}")
    return makers[kind](n)


_KEY = re.compile(r"^([CDS])(\d+)$")
_group_cache: dict[str, FiniteGroup] = {}


def group_from_key(key: str) -> FiniteGroup:
    """Builtin groups by key: ``C<n>``, ``D<n>`` (order 2n), ``S<n>``."""
    m = _KEY.match(key.strip())
    if not m:
        raise GroupError(f"unknown group key {key!r}")
    if key not in _group_cache:
        kind = {"C": "cyclic", "D": "dihedral", "S": "symmetric"}[m.group(1)]
        _group_cache[key] = builtin_group(kind, int(m.group(2)))
    return _group_cache[key]


def perm_index(G: FiniteGroup, cycle_notation: str) -> int:
    """Index of a permutation in a builtin symmetric group, e.g. '(12)', '(123)'.

    Cycles are written 1-based as usual.
    """
    perms = getattr(G, "permutations", None)
    if perms is None:
        raise GroupError("not a builtin symmetric group")
    n = len(perms[0])
    img = list(range(n))
    for cyc in re.findall(r"\(([^)]*)\)", cycle_notation):
        pts = [int(ch) - 1 for ch in cyc if ch.isdigit()]
        for i, p in enumerate(pts):
            img[p] = pts[(i + 1) % len(pts)]
    return perms.index(tuple(img))
