"""Invariant subrings and effective quotients of toric equivalence relations."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .cones import Cone, dot
from .equiv import ToricRelation, difference, difference_ideal, effectivize
from .errors import NotASubmonoid
from .gb.buchberger import groebner
from .gb.ideal import Ambient, IdealHandle, ideal_compare
from .gb.poly import block_order, convert, embed
from .monoid import AffineMonoid, presentation
from .zlin import Lattice, lattice_quotient


@dataclass
class QuotientReport:
    generators: list
    bound: int
    stabilized: bool
    finiteness: dict
    verdict: str
    certificate: dict = field(default_factory=dict)
    effective_W: list = field(default_factory=list)
    effective_verified: bool = False
    presentation: Optional[list] = None


def _norm(v) -> int:
    return sum(abs(a) for a in v)


def invariant_monoid(R: ToricRelation, D: int) -> tuple[list, bool]:
    """Generators of tau' = {s : x^s - y^s in I} among elements of l1-norm <= D.

    ``stabilized`` is a heuristic: the last two norm layers added nothing.
    """
    gens: list = []
    layer_of: dict = {}
    sub_monoid: Optional[AffineMonoid] = None
    for s in R.sigma.elements_up_to(D):
        if not any(s):
            continue
        if sub_monoid is not None and sub_monoid.contains(s) is not None:
            continue
        if R.ideal.contains(difference(R.A2, s)):
            gens.append(s)
            layer_of[s] = _norm(s)
            sub_monoid = AffineMonoid(R.sigma.d, gens)
    stabilized = D >= 2 and not any(n >= D - 1 for n in layer_of.values())
    return gens, stabilized


def finiteness(tau_gens: list, sigma: AffineMonoid) -> dict:
    """k[sigma] is finite over k[tau'] iff the cones agree and the group index is finite."""
    for g in tau_gens:
        if sigma.contains(g) is None:
            raise NotASubmonoid(f"{g} is not in sigma")
    if not tau_gens:
        cone_equal = not sigma.generators
        index = lattice_quotient(Lattice(sigma.d, []), sigma.grp)["index"]
        return {"cone_equal": cone_equal, "group_index": index, "finite": False}
    tc = Cone(sigma.d, tau_gens)
    cone_equal = all(tc.contains(g) for g in sigma.generators)
    tau = AffineMonoid(sigma.d, tau_gens)
    index = lattice_quotient(tau.grp, sigma.grp)["index"]
    finite = cone_equal and index != float("inf")
    return {"cone_equal": cone_equal, "group_index": index, "finite": finite}


def _face_certificate(R: ToricRelation, tau_gens: list) -> Optional[dict]:
    """A face F of sigma on which I restricts to zero, so tau' meets F only in 0.

    Picks a generator g of sigma outside cone(tau'_D), the minimal face
    containing g, and checks the restriction of I to k[F x F].
    """
    sigma = R.sigma
    tc = Cone(sigma.d, tau_gens) if tau_gens else None
    for g in sigma.generators:
        if tc is not None and tc.contains(g):
            continue
        tight = [a for a in sigma.facets if dot(a, g) == 0]
        face_idx = [j for j, h in enumerate(sigma.generators)
                    if all(dot(a, h) == 0 for a in tight)]
        missing = [a for a in sigma.facets
                   if tc is None or a not in tc.facets]
        if _restriction_vanishes(R, face_idx):
            return {"generator": list(g),
                    "face_generators": [list(sigma.generators[j]) for j in face_idx],
                    "face_equations": [list(a) for a in tight],
                    "missing_facets": [list(a) for a in missing],
                    "proven": True}
    return None


def _restriction_vanishes(R: ToricRelation, face_idx: list) -> bool:
    sigma, k = R.sigma, R.A2.k
    face = AffineMonoid(sigma.d, [sigma.generators[j] for j in face_idx])
    keep = [c * k + j for c in range(2) for j in face_idx]
    pos = {v: i for i, v in enumerate(keep)}
    A = Ambient(face, 2, R.field)
    P = IdealHandle(A, [])
    for g in R.ideal.gens:
        res = {}
        for e, c in g.items():
            if all(a == 0 or v in pos for v, a in enumerate(e)):
                res[tuple(e[v] for v in keep)] = c
        if res and not P.contains(res):
            return False
    return True


def graph_is_finite(sigma: AffineMonoid, tau_gens: list, field) -> bool:
    """k[sigma] finite over k[tau] via the graph ideal (z_j - x^{w_j}) + P_sigma."""
    k, kt = sigma.ngens, len(tau_gens)
    n = k + kt
    gens = [embed(convert(b, field), range(k), n) for b in presentation(sigma).binomials()]
    for j, w in enumerate(tau_gens):
        e = list(sigma.contains(w)) + [0] * kt
        z = [0] * n
        z[k + j] = 1
        gens.append({tuple(z): field.one, tuple(e): -field.one})
    order = block_order([list(range(k)), list(range(k, n))])
    G = groebner(gens, n, field, order)
    lms = [max(g, key=order.key) for g in G]
    return all(any(e[v] > 0 and not any(a for i, a in enumerate(e) if i != v) for e in lms)
               for v in range(k))


def quotient_compute(R: ToricRelation, bound: Optional[int] = None) -> QuotientReport:
    model = effectivize(R)
    if bound is None:
        bound = max([4] + [2 * _norm(w) + 2 for w in model.W])
    gens, stabilized = invariant_monoid(R, bound)
    fin = finiteness(gens, R.sigma)
    report = QuotientReport(gens, bound, stabilized, fin, "Inconclusive",
                            effective_W=[list(w) for w in model.W],
                            effective_verified=model.verified)
    if not fin["cone_equal"]:
        cert = _face_certificate(R, gens)
        if cert is not None:
            report.verdict = "NoFiniteQuotient"
            report.certificate = cert
        else:
            report.certificate = {"reason": "cone of the found generators differs from "
                                            "cone(sigma) but no vanishing face was found",
                                  "bound": bound}
        return report
    if not stabilized or not model.verified or not fin["finite"]:
        report.certificate = {"reason": "invariant generators not stabilized"
                              if not stabilized else "finiteness or effectivity failed",
                              "bound": bound}
        return report
    diff_equal = ideal_compare(R.ideal, difference_ideal(R.A2, gens), "equal")
    graph_finite = graph_is_finite(R.sigma, gens, R.field)
    if diff_equal and graph_finite:
        report.verdict = "EffectiveGeometricQuotient"
        report.presentation = presentation(AffineMonoid(R.sigma.d, gens)).binomials()
    report.certificate = {"difference_ideal_equal": diff_equal, "graph_finite": graph_finite}
    return report
