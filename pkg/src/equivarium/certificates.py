"""Homotopy-equivalence certificates from zig-zags of natural transformations.

A natural transformation between functors C -> D gives a homotopy between the
induced maps BC -> BD, so a pair F : C -> D, Gb : D -> C together with
zig-zags Gb o F ~ id_C and F o Gb ~ id_D makes BF a homotopy equivalence.
"""

from __future__ import annotations

from dataclasses import dataclass

from .categories import (
    Functor,
    NatTransformation,
    compose_functors,
    equal_functors,
    identity_functor,
    validate_functor,
    validate_nat,
)
from .report import Report

CERTIFIED = "certified homotopy equivalence"
REJECTED = "rejected"


@dataclass(frozen=True)
class Certificate:
    verdict: str
    witness: str | None = None

    def __bool__(self):
        return self.verdict == CERTIFIED


def check_zigzag(start: Functor, end: Functor, steps) -> Report:
    """Walk ``steps`` from ``start`` to ``end``; each step may point either way."""
    cur = start
    for n, alpha in enumerate(steps):
        r = validate_nat(alpha)
        if not r:
            return Report.fail(f"step {n} ({alpha.name or '?'}) is not natural: {r.witness}")
        if equal_functors(alpha.source, cur):
            cur = alpha.target
        elif equal_functors(alpha.target, cur):
            cur = alpha.source
        else:
            return Report.fail(f"step {n} ({alpha.name or '?'}) does not touch the current functor")
    if not equal_functors(cur, end):
        return Report.fail("zig-zag does not end at the identity")
    return Report.success()


def htpy_certificate(F: Functor, Gb: Functor, zigzags) -> Certificate:
    """``zigzags`` = (steps from Gb o F to id_C, steps from F o Gb to id_D)."""
    for name, K in (("F", F), ("Gb", Gb)):
        r = validate_functor(K)
        if not r:
            return Certificate(REJECTED, f"{name} is not a functor: {r.witness}")
    if not (F.target.same_as(Gb.source) and Gb.target.same_as(F.source)):
        return Certificate(REJECTED, "F and Gb are not composable both ways")
    left, right = zigzags
    r = check_zigzag(compose_functors(Gb, F), identity_functor(F.source), left)
    if not r:
        return Certificate(REJECTED, f"Gb o F side: {r.witness}")
    r = check_zigzag(compose_functors(F, Gb), identity_functor(F.target), right)
    if not r:
        return Certificate(REJECTED, f"F o Gb side: {r.witness}")
    return Certificate(CERTIFIED)


def quotient_certificate(q) -> Certificate:
    """(pi, s) for a posetal quotient: id => s pi => id, and pi s = id exactly."""
    CP, CQ, F, Gb = q.functors()
    sp = compose_functors(Gb, F)
    ident = identity_functor(CP)
    fwd = NatTransformation.from_labels(ident, sp, lambda x: (x, sp.obj_label(x)), name="id=>s.pi")
    return htpy_certificate(F, Gb, ([fwd], []))


def epsilon_eta_certificate(X, L) -> Certificate:
    """(eps_L, eta_L) with eps o eta = id and the unit transformation id => eta o eps."""
    from .elmendorf import epsilon, eta_l, unit_zigzag

    return htpy_certificate(epsilon(X, L), eta_l(X, L), ([unit_zigzag(X, L)], []))
