"""Verification suites producing deterministic JSON reports.

Every check records an id, a short statement of what it verifies, a verdict and
a witness on failure.  Homology-based checks are labelled "homology evidence":
they are necessary conditions for a weak equivalence, not proofs of one.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import __version__
from .categories import (
    compose_functors,
    equal_functors,
    identity_functor,
    validate_category,
    validate_functor,
    validate_nat,
)
from .certificates import epsilon_eta_certificate, quotient_certificate
from .corpus import (
    CORPUS_GROUPS,
    corpus_gcategories,
    corpus_gpreorders,
    corpus_presheaves,
    load_group,
    presheaf_from_descriptor,
)
from .elmendorf import (
    c_cat,
    epsilon,
    epsilon_presheaf_morphism,
    eta_l,
    ev,
    family_gset_report,
    phi_ev_matches_epsilon,
    unit_zigzag,
)
from .equivariant import check_equivariant, gcategory_to_gpreorder, validate_gcategory
from .groups import fixed_cosets
from .homology import homology_iso_report
from .limits import SizeGuardError, guard
from .orbit import marked_orbit_category, orbit_category
from .posets import (
    c_pos_report,
    milnor,
    milnor_fixed_report,
    projection_functor,
    posetal_quotient,
    projection_report,
    quotient_counterexample_report,
    retraction_report,
    stability_report,
)
from .presheaves import phi, validate_presheaf, validate_presheaf_morphism
from .report import Report, first_failure
from .simplicial import (
    bar_reindex_check,
    fixed_sset,
    hocolim_diag,
    nerve,
    nerve_of_functor,
    thomason_eta,
    thomason_fixed_report,
    validate_simplicial_map,
    validate_sset,
)

SUITES = ("cat-theorem", "pos-theorem", "thomason", "quotient-counterexample", "all")
ALIASES = {"elmendorf-cat": "cat-theorem", "elmendorf-pos": "pos-theorem"}
EVIDENCE = "homology evidence"


@dataclass
class Check:
    id: str
    ref: str
    verdict: str
    witness: str | None = None
    data: dict | None = None

    def to_json(self) -> dict:
        out = {"id": self.id, "ref": self.ref, "verdict": self.verdict}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.data is not None:
            out["data"] = self.data
        return out


@dataclass
class VerificationReport:
    suite: str
    groups: list
    descriptor: str
    checks: list = field(default_factory=list)
    timing: dict | None = None

    @property
    def ok(self) -> bool:
        return all(c.verdict != "fail" for c in self.checks)

    def first_failure(self) -> Check | None:
        return next((c for c in self.checks if c.verdict == "fail"), None)

    def run(self, cid: str, ref: str, fn, evidence: bool = False) -> bool:
        """Run ``fn`` (returning a Report, bool or dict with "ok") and record it."""
        data = None
        try:
            r = fn()
        except SizeGuardError as e:
            # one oversized instance is reported, not fatal
            self.checks.append(Check(cid, ref, "skipped", str(e)))
            return False
        except Exception as e:  # a crash inside a check is a failed check
            r = Report.fail(f"{type(e).__name__}: {e}")
        if isinstance(r, dict):
            data = r
            r = Report(bool(r.get("ok")), None if r.get("ok") else "see data")
        elif not isinstance(r, Report):
            r = Report(bool(r), None if r else "check returned false")
        verdict = ("pass" if r else "fail")
        if evidence and r:
            verdict = f"pass ({EVIDENCE})"
        self.checks.append(Check(cid, ref, verdict, r.witness, data))
        return bool(r)

    def to_json(self) -> dict:
        fail = self.first_failure()
        out = {
            "suite": self.suite,
            "groups": self.groups,
            "descriptor": self.descriptor,
            "version": __version__,
            "ok": self.ok,
            "counts": {
                "total": len(self.checks),
                "failed": sum(c.verdict == "fail" for c in self.checks),
                "skipped": sum(c.verdict == "skipped" for c in self.checks),
            },
            "first_failure": fail.to_json() if fail else None,
            "checks": [c.to_json() for c in self.checks],
        }
        if self.timing is not None:
            out["timing"] = self.timing
        return out


# --- individual suites --------------------------------------------------------------


def _presheaves(G, descriptor, include_cat=True, include_empty=False):
    if descriptor:
        return [(descriptor, presheaf_from_descriptor(G, descriptor))]
    return corpus_presheaves(G, include_empty=include_empty, include_cat=include_cat)


def _structure_checks(rep: VerificationReport, G):
    g = G.name
    O = orbit_category(G)
    Op = marked_orbit_category(G)
    rep.run(f"{g}/group.axioms", "group axioms", G.check_axioms)
    rep.run(f"{g}/orbit.category", "O_G is a category", lambda: validate_category(O.cat))

    def hom_sizes():
        for h, H in enumerate(O.subgroups):
            for k in range(len(O.subgroups)):
                if O.hom_size(h, k) != len(fixed_cosets(O.spaces[k], H)):
                    return Report.fail(f"|O_G(G/H{h}, G/H{k})| != |(G/H{k})^H{h}|")
        return Report.success()

    rep.run(f"{g}/orbit.hom_sizes", "hom sets of O_G are fixed coset sets", hom_sizes)
    rep.run(f"{g}/marked.category", "O_G,+ is a category", lambda: validate_category(Op.cat))
    rep.run(f"{g}/marked.thin", "O_G,+ is thin", lambda: Op.cat.is_thin)

    def marked_order():
        from .elmendorf import stabilizer

        objs = Op.cat.objects
        st = [stabilizer(G, *x) for x in objs]
        for i in range(len(objs)):
            for j in range(len(objs)):
                if bool(Op.cat.hom(i, j)) != st[i].issubset(st[j]):
                    return Report.fail(f"hom({objs[i]}, {objs[j]}) disagrees with aHa^-1 <= bKb^-1")
        return Report.success()

    rep.run(f"{g}/marked.order", "marked maps exist iff stabilizers are nested", marked_order)
    rep.run(f"{g}/marked.action", "G acts on O_G,+ by automorphisms", lambda: validate_gcategory(Op.gcat))

    def forgetful():
        r = validate_functor(Op.forgetful)
        if not r:
            return r
        p = Op.forgetful.mor_map
        if any(p[Op.gcat.mor_act[x][m]] != p[m] for x in range(G.order) for m in range(Op.cat.n_mor)):
            return Report.fail("p is not G-invariant on morphisms")
        return Report.success()

    rep.run(f"{g}/marked.forgetful", "forgetful functor O_G,+ -> O_G is G-invariant", forgetful)


def cat_theorem(rep: VerificationReport, G, descriptor=None):
    _structure_checks(rep, G)
    g = G.name
    for name, X in _presheaves(G, descriptor, include_empty=descriptor is None):
        tag = f"{g}/{name}"
        if not rep.run(f"{tag}/presheaf", "presheaf laws", lambda: validate_presheaf(X)):
            continue
        CX = c_cat(X)
        rep.run(f"{tag}/c_cat.category", "C X is a category", lambda: validate_category(CX.cat))
        rep.run(f"{tag}/c_cat.action", "G acts on C X by automorphisms", lambda: validate_gcategory(CX))
        if X.flavor == "pos":
            rep.run(f"{tag}/c_cat.thin", "C of a poset-valued presheaf is thin", lambda: CX.cat.is_thin)
        if name.startswith("family:"):
            from .corpus import parse_family

            fam = parse_family(G, name.partition(":")[2])
            rep.run(f"{tag}/c_cat.gset", "C X_F is the G-set of orbits in F with the stabilizer order",
                    lambda: family_gset_report(X, fam))
        for L in G.subgroups:
            lt = f"{tag}/L={L.id}"

            def fixed_full(L=L):
                fixed = CX.fixed_subcategory(L)
                ids = set(CX.marked.fixed_object_ids(L))
                marks = {CX.marked.cat.objects[i] for i in ids}
                expect = [o for o in CX.cat.objects if o[0] in marks]
                if list(fixed.objects) != expect:
                    return Report.fail("fixed objects are not the triples with fixed marks")
                full = [m for m in range(CX.cat.n_mor)
                        if CX.cat.objects[CX.cat.src[m]][0] in marks and CX.cat.objects[CX.cat.tgt[m]][0] in marks]
                if len(full) != fixed.n_mor:
                    return Report.fail("fixed subcategory is not full")
                return Report.success()

            rep.run(f"{lt}/fixed_full", "(C X)^L is full on triples with L-fixed marks", fixed_full)

            def eps_eta(L=L):
                e, n = epsilon(X, L), eta_l(X, L)
                for F in (e, n):
                    r = validate_functor(F)
                    if not r:
                        return r
                return equal_functors(compose_functors(e, n), identity_functor(X.values[L.id]))

            rep.run(f"{lt}/eps_eta", "eps_L o eta_L = id exactly", eps_eta)
            rep.run(f"{lt}/unit", "unit id => eta_L o eps_L is natural",
                    lambda L=L: validate_nat(unit_zigzag(X, L)))
            rep.run(f"{lt}/certificate", "(eps_L, eta_L) is a certified homotopy equivalence",
                    lambda L=L: bool(epsilon_eta_certificate(X, L)))
        rep.run(f"{tag}/eps_natural", "eps is natural in L (a presheaf morphism Phi C X => X)",
                lambda: validate_presheaf_morphism(epsilon_presheaf_morphism(X)))
    if descriptor is None:
        for name, C in corpus_gcategories(G):
            if name.startswith("M_"):
                continue
            tag = f"{g}/{name}"
            rep.run(f"{tag}/phi", "Phi C is a presheaf", lambda C=C: validate_presheaf(phi(C)))

            def ev_equivariant(C=C):
                F = ev(C)
                r = validate_functor(F)
                return r if not r else check_equivariant(F, c_cat(F.presheaf), C)

            rep.run(f"{tag}/ev", "ev_C is a G-functor", ev_equivariant)
            rep.run(f"{tag}/phi_ev", "Phi(ev_C) = eps_{Phi C} exactly", lambda C=C: phi_ev_matches_epsilon(C))


def pos_theorem(rep: VerificationReport, G, descriptor=None, depth=2):
    g = G.name
    for name, X in _presheaves(G, descriptor, include_cat=False):
        tag = f"{g}/{name}"
        if X.flavor != "pos":
            rep.checks.append(Check(f"{tag}/flavor", "C_pos needs a poset-valued presheaf", "fail",
                                    f"{name} is not poset-valued"))
            continue
        rep.run(f"{tag}/c_cat.thin", "C of a poset-valued presheaf is thin", lambda: c_cat(X).cat.is_thin)
        for n in range(depth + 1):
            rep.run(f"{tag}/c_pos[n={n}]", "closed-form C_pos order equals M_n o C, antisymmetric",
                    lambda n=n: c_pos_report(X, n))
    preorders = corpus_gpreorders(G)
    if descriptor:
        X = presheaf_from_descriptor(G, descriptor)
        preorders = [(f"C({descriptor})", gcategory_to_gpreorder(c_cat(X)))] if X.flavor == "pos" else []
    for name, P in preorders:
        tag = f"{g}/{name}"
        rep.run(f"{tag}/gpreorder", "G acts by order automorphisms", P.validate)
        q = posetal_quotient(P)
        rep.run(f"{tag}/quotient", "posetal quotient: classes, pi s = id, zig-zag", q.check)
        rep.run(f"{tag}/quotient.certificate", "(pi, s) is a certified homotopy equivalence",
                lambda q=q: bool(quotient_certificate(q)))
        M = milnor(P, depth)
        rep.run(f"{tag}/milnor.valid", "M_n P is a G-poset",
                lambda M=M: first_failure(M.validate(), Report(M.is_poset, "not antisymmetric")))
        rep.run(f"{tag}/milnor.projection", "projection is an equivariant monotone surjection",
                lambda M=M: projection_report(M))
        rep.run(f"{tag}/milnor.stability", "M_n P is a full subposet of M_n+1 P",
                lambda P=P: stability_report(P, depth))
        rep.run(f"{tag}/milnor.retraction", "fibre retraction r and map s of the comma posets",
                lambda P=P: retraction_report(P.order, depth))
        for H in G.subgroups:
            ht = f"{tag}/H={H.id}"
            rep.run(f"{ht}/milnor.fixed", "(M_n P)^H = M_n(P^H)", lambda H=H: milnor_fixed_report(M, H))

            def proj_iso(H=H):
                PH = P.fixed(H)
                if not len(PH):
                    return Report.success()
                return homology_iso_report(nerve_of_functor(projection_functor(PH, depth), depth), depth - 1)

            rep.run(f"{ht}/milnor.homology", f"projection induces H_q isomorphisms for q < {depth}",
                    proj_iso, evidence=True)


def thomason(rep: VerificationReport, G, descriptor=None, dim=3):
    g = G.name
    for name, X in _presheaves(G, descriptor):
        tag = f"{g}/{name}"
        S = hocolim_diag(X, dim)
        rep.run(f"{tag}/hocolim", "hocolim diagonal satisfies the simplicial identities, G-compatibly",
                lambda: validate_sset(S))
        eta = thomason_eta(X, dim, S)
        rep.run(f"{tag}/nerve", "N(C X) satisfies the simplicial identities, G-compatibly",
                lambda: validate_sset(eta.target))
        rep.run(f"{tag}/eta", "eta is a G-equivariant simplicial map", lambda: validate_simplicial_map(eta))
        rep.run(f"{tag}/eta.homology", f"eta induces H_q isomorphisms for q < {dim}",
                lambda: homology_iso_report(eta), evidence=True)
        for K in G.subgroups:
            kt = f"{tag}/K={K.id}"
            rep.run(f"{kt}/eta.fixed", "eta^K equals eta of the K-fixed data",
                    lambda K=K: thomason_fixed_report(X, dim, K, eta))
            rep.run(f"{kt}/eta.fixed.homology", f"eta^K induces H_q isomorphisms for q < {dim}",
                    lambda K=K: homology_iso_report(eta.restrict_fixed(K)), evidence=True)
        for q in range(3):
            rep.run(f"{tag}/bar_reindex[q={q}]", "bar simplices re-index as chains in O_G,+",
                    lambda q=q: bar_reindex_check(X, q))
    if descriptor is None:
        for name, C in corpus_gcategories(G):
            N = nerve(C, dim)
            for H in G.subgroups:
                rep.run(f"{g}/{name}/H={H.id}/nerve_fixed", "N(C^H) = N(C)^H degreewise",
                        lambda H=H, C=C, N=N: nerve(C.fixed_subcategory(H), dim).same_as(fixed_sset(N, H)))


def counterexample(rep: VerificationReport, G, depth=2, dim=4):
    if G.order < 2:
        rep.checks.append(Check(f"{G.name}/counterexample", "needs a nontrivial group", "fail",
                                "trivial group"))
        return
    rep.run(f"{G.name}/counterexample",
            "quotient of C X_e is a fixed point; N(C X_e) is free; (M_n C X_e)^G is empty",
            lambda: quotient_counterexample_report(G, depth, dim))


def run_suite(suite: str, groups=None, descriptor: str | None = None, depth: int = 2, dim: int = 3,
              timing: bool = False) -> VerificationReport:
    suite = ALIASES.get(suite, suite)
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    Gs = [load_group(k) if isinstance(k, str) else k for k in (groups or CORPUS_GROUPS)]
    for G in Gs:
        guard("suite_group_order", G.order, f"group order for verification suites ({G.name})")
    rep = VerificationReport(suite, [G.name for G in Gs], descriptor or "corpus")
    t0 = time.perf_counter()
    stamps = {}
    parts = {
        "cat-theorem": lambda G: cat_theorem(rep, G, descriptor),
        "pos-theorem": lambda G: pos_theorem(rep, G, descriptor, depth),
        "thomason": lambda G: thomason(rep, G, descriptor, dim),
        "quotient-counterexample": lambda G: counterexample(rep, G, depth),
    }
    chosen = list(parts) if suite == "all" else [suite]
    for G in Gs:
        for s in chosen:
            t = time.perf_counter()
            parts[s](G)
            stamps[f"{G.name}/{s}"] = round(time.perf_counter() - t, 3)
    if timing:
        stamps["total"] = round(time.perf_counter() - t0, 3)
        rep.timing = stamps
    return rep
