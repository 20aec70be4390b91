"""Toric equivalence relations: axioms, effectivization, noneffectiveness.

Polynomials live in :class:`~torq.gb.ideal.Ambient` rings k[sigma^m]. Degree-0
coefficients are Laurent polynomials in characters u^s = x^s y^{-s}, with s
written in coordinates of the HNF basis of l(sigma) (see
:func:`torq.gb.ideal.laurent_monomial` for the variable layout).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import permutations
from typing import Optional, Sequence

from .errors import (BudgetExceeded, GNotInI, InternalInvariantViolated, InvalidAmbient,
                     NotAnEquivalenceRelation, NotToric)
from .gb.ideal import (Ambient, IdealHandle, colon_monomial, degree_zero_characters,
                       exponent_lattice, finite_over_subring, ideal_compare, laurent_certify,
                       laurent_exponent, laurent_gb, laurent_is_unit, laurent_monomial,
                       laurent_normal_form, laurent_normalize, lattice_ideal, _kernel)
from .gb.poly import QQ, add, mul, mul_term, scale, sub
from .monoid import AffineMonoid, QuotientMonoid, ToricPresentation, presentation, vadd, vneg
from .tensor import TensorPower
from .zlin import Lattice

log = logging.getLogger(__name__)


# -- relations -------------------------------------------------------------------

class ToricRelation:
    """The ideal I(x, y) of a relation on Spec k[sigma]."""

    def __init__(self, sigma: AffineMonoid, generators: Sequence[dict], field=QQ,
                 require_toric: bool = True, **budgets):
        self.sigma = sigma
        self.field = field
        self.budgets = budgets
        self.A2 = Ambient(sigma, 2, field)
        self.raw = IdealHandle(self.A2, generators, **budgets)
        for g in self.raw.gens:
            if any(len(e) != self.A2.nvars for e in g):
                raise InvalidAmbient("generator has the wrong number of variables")
        comps = []
        self.toric = True
        for g in self.raw.gens:
            for part in self.A2.homogeneous_components(g).values():
                if not self.raw.contains(part):
                    self.toric = False
                    if require_toric:
                        raise NotToric("homogeneous component escapes the ideal", part)
                comps.append(part)
        self.components = comps if self.toric else list(self.raw.gens)
        self.ideal = IdealHandle(self.A2, self.components, **budgets) if self.toric \
            else self.raw
        self._axioms: Optional[dict] = None

    def difference(self, w) -> dict:
        return difference(self.A2, w)


def relation_new(sigma: AffineMonoid, raw_generators: Sequence[dict], field=QQ,
                 require_toric: bool = True, **budgets) -> ToricRelation:
    return ToricRelation(sigma, raw_generators, field, require_toric, **budgets)


def difference(A: Ambient, w, copies=(0, 1)) -> dict:
    """x_a^w - x_b^w in A, for copies (a, b)."""
    zero = tuple([0] * A.sigma.d)
    ea = [zero] * A.m
    eb = [zero] * A.m
    ea[copies[0]] = tuple(w)
    eb[copies[1]] = tuple(w)
    return sub(A.monomial(ea), A.monomial(eb), A.field)


def difference_ideal(A: Ambient, W: Sequence, **budgets) -> IdealHandle:
    gens = []
    pairs = [(a, b) for a in range(A.m) for b in range(a + 1, A.m)]
    for w in W:
        for a, b in pairs:
            gens.append(difference(A, w, (a, b)))
    return IdealHandle(A, gens, **budgets)


def verify_axioms(R: ToricRelation) -> dict:
    """Each axiom maps to True/False, or None with an entry in report['errors']."""
    if R._axioms is not None:
        return R._axioms
    report: dict = {"errors": {}}
    checks = {"reflexive": _reflexive, "symmetric": _symmetric,
              "transitive": _transitive, "finite": _finite}
    for name, fn in checks.items():
        try:
            report[name] = fn(R)
        except BudgetExceeded as exc:
            report[name] = None
            report["errors"][name] = str(exc)
    R._axioms = report
    return report


def _reflexive(R: ToricRelation) -> bool:
    A1 = Ambient(R.sigma, 1, R.field)
    P = IdealHandle(A1, [], **R.budgets)
    k = R.A2.k
    for g in R.ideal.gens:
        diag: dict = {}
        for e, c in g.items():
            ne = tuple(a + b for a, b in zip(e[:k], e[k:]))
            diag = add(diag, {ne: c}, R.field)
        if not P.contains(diag):
            return False
    return True


def _symmetric(R: ToricRelation) -> bool:
    return ideal_compare(R.ideal, R.ideal.permuted([1, 0]), "equal")


def _transitive(R: ToricRelation) -> bool:
    A3 = Ambient(R.sigma, 3, R.field)
    gens = [A3.include(g, R.A2, c) for c in ((0, 1), (1, 2)) for g in R.ideal.gens]
    I3 = IdealHandle(A3, gens, **R.budgets)
    return all(I3.contains(A3.include(g, R.A2, (0, 2))) for g in R.ideal.gens)


def _finite(R: ToricRelation) -> bool:
    return finite_over_subring(R.ideal, (0,))


# -- effectivization ------------------------------------------------------------

@dataclass
class PQForm:
    gamma: tuple
    p: list                 # Laurent polys in the characters of l(sigma)
    q: list
    a: Optional[list] = None  # certificate matrices (degree-0 in k[sigma^3])
    b: Optional[list] = None


@dataclass
class EffectiveModel:
    W: list
    tau: Optional[AffineMonoid]
    tau_generators: list
    Y_presentation: Optional[ToricPresentation]
    verified: bool
    transcript: list = field(default_factory=list)


class _Context:
    """Per-run state: sigma data, current W, difference ideal and tensor square."""

    def __init__(self, R: ToricRelation):
        self.R = R
        self.sigma = R.sigma
        self.F = R.field
        self.A2 = R.A2
        self.units = R.sigma.units
        self.r = self.units.rank
        self.zero = tuple([0] * R.sigma.d)
        self.W: list = []
        self.refresh()

    def refresh(self):
        self.Itilde = difference_ideal(self.A2, self.W, **self.R.budgets)
        self.T2 = TensorPower(self.sigma, self.W, 2)

    def coords(self, s) -> tuple:
        return self.units.member(s) if self.r else ()

    def char(self, s_coords) -> tuple:
        return self.units.combine(s_coords) if self.r else self.zero

    def u(self, s, c=None) -> dict:
        """Laurent monomial u^s for s in l(sigma) (ambient vector)."""
        F = self.F
        return laurent_monomial(self.coords(s), self.r, F, F.one if c is None else c)

    def to_ambient(self, f: dict, A: Ambient, copies=(0, 1)) -> dict:
        """Laurent poly in u to a degree-0 poly of A, with u^s = x_a^s x_b^{-s}."""
        out: dict = {}
        for e, c in f.items():
            s = self.char(laurent_exponent(e, self.r))
            elems = [self.zero] * A.m
            elems[copies[0]] = vadd(elems[copies[0]], s)
            elems[copies[1]] = vadd(elems[copies[1]], vneg(s))
            out = add(out, A.monomial(elems, c), self.F)
        return out

    def shift(self, g: dict, t, copy: int = 0) -> dict:
        """Multiply by the unit monomial x_copy^t."""
        elems = [self.zero] * self.A2.m
        elems[copy] = tuple(t)
        e = self.A2.exponent(elems)
        return mul_term(g, e, self.F.one, self.F)


def pq_normalize(ctx: _Context, gamma: tuple, gens: Sequence[dict]) -> PQForm:
    """Write each g as p x^gamma + q y^gamma modulo the current difference ideal."""
    F, A2, T2 = ctx.F, ctx.A2, ctx.T2
    P, Q = [], []
    for g in gens:
        p: dict = {}
        q: dict = {}
        loose: dict = {}
        for e, c in g.items():
            al, be = A2.degrees(e)
            hit = T2.unit_twist_solve((al, be), (gamma, ctx.zero))
            if hit is not None:
                p = add(p, ctx.u(hit[0], c), F)
                continue
            hit = T2.unit_twist_solve((al, be), (ctx.zero, gamma))
            if hit is not None:
                q = add(q, ctx.u(hit[0], c), F)
                continue
            loose[e] = c
        if loose and not ctx.Itilde.contains(loose):
            raise InternalInvariantViolated(
                f"terms of degree {gamma} admit neither rewrite toward x^γ nor y^γ")
        pq = add(mul(ctx.to_ambient(p, A2), A2.monomial([gamma, ctx.zero]), F),
                 mul(ctx.to_ambient(q, A2), A2.monomial([ctx.zero, gamma]), F), F)
        if not ctx.Itilde.contains(sub(sub(g, loose, F), pq, F)):
            raise InternalInvariantViolated("pq-form does not match the generator")
        P.append(laurent_normalize(p, ctx.r, F))
        Q.append(laurent_normalize(q, ctx.r, F))
    return PQForm(gamma, P, Q)


def dichotomy(ctx: _Context, gamma: tuple):
    """('case1', s) when x^{γ-s} ≡ y^{γ-s} modulo the difference ideal, else ('case2', None)."""
    hit = ctx.T2.unit_twist_solve((gamma, ctx.zero), (ctx.zero, gamma))
    if hit is None:
        return "case2", None
    return "case1", hit[0]


def _stabilizer(ctx: _Context, gamma: tuple) -> Lattice:
    """Lattice of J_0 = (Ĩ : x^γ)_0: all s with x^γ u^s ≡ x^γ."""
    hit = ctx.T2.unit_twist_solve((gamma, ctx.zero), (gamma, ctx.zero))
    if hit is None:
        raise InternalInvariantViolated("tensor monomial not equal to itself")
    return Lattice(ctx.r, [ctx.coords(v) for v in hit[1].basis]) if ctx.r else Lattice(0, [])


def effectivize(R: ToricRelation, deep_checks: bool = False) -> EffectiveModel:
    """Difference generators W with I = (x^w - y^w : w in W).

    ``deep_checks`` additionally verifies the permutation invariance of
    J_0(x, y, z) and the cocycle relations of the case-2 matrices.
    """
    if not R.toric:
        raise NotToric("effectivization needs a torus-invariant ideal")
    ctx = _Context(R)
    sigma, F = R.sigma, R.field
    qm = QuotientMonoid(sigma)
    classes: dict = {}
    for g in R.components:
        grade = R.A2.grade(next(iter(g)))
        classes.setdefault(sigma.cls(grade), []).append((grade, g))
    order = sorted(classes, key=qm.sort_key)
    transcript = []
    for cls_ in order:
        items = classes[cls_]
        gamma = items[0][0]
        gens = [ctx.shift(g, tuple(a - b for a, b in zip(gamma, grade)))
                for grade, g in items]
        gens = [h for h in (ctx.Itilde.normal_form(g) for g in gens) if h]
        entry = {"class": list(cls_), "gamma": list(gamma), "generators": len(items)}
        if not gens:
            entry["case"] = "skip"
            transcript.append(entry)
            continue
        case, s = dichotomy(ctx, gamma)
        if case == "case1" and any(s):
            gens = [ctx.shift(g, vneg(s), 1) for g in gens]
            gamma = tuple(a - b for a, b in zip(gamma, s))
        pq = pq_normalize(ctx, gamma, gens)
        L0 = _stabilizer(ctx, gamma)
        J0 = lattice_ideal(L0, F)
        if case == "case1":
            added = _case1(ctx, gamma, pq, J0)
        else:
            added = _case2(ctx, gamma, pq, J0)
            if deep_checks:
                check_cocycle_relations(ctx, pq, gens)
        if deep_checks:
            check_j0_symmetry(ctx, gamma)
        entry.update(case=case, gamma=list(gamma), added=[list(w) for w in added])
        transcript.append(entry)
        log.debug("class %s: %s added %s", cls_, case, added)
        for w in added:
            if w not in ctx.W:
                ctx.W.append(w)
        ctx.refresh()
    return _finish(R, ctx, transcript)


def _case1(ctx: _Context, gamma, pq: PQForm, J0: list) -> list:
    F, r = ctx.F, ctx.r
    e = [add(p, q, F) for p, q in zip(pq.p, pq.q)]
    L, ok = exponent_lattice([x for x in e if x] + J0, r, F, **ctx.R.budgets)
    if not ok:
        raise NotAnEquivalenceRelation("case 1 ideal is not a subgroup scheme",
                                       {"gamma": list(gamma)})
    return [vadd(gamma, ctx.char(s)) for s in L.basis]


def _case2(ctx: _Context, gamma, pq: PQForm, J0: list) -> list:
    F, r = ctx.F, ctx.r
    budgets = ctx.R.budgets
    if not laurent_is_unit(pq.p + J0, r, F, **budgets):
        raise NotAnEquivalenceRelation("the p_i do not generate the unit ideal",
                                       {"gamma": list(gamma)})
    one = laurent_monomial([0] * r, r, F)
    c = laurent_certify(one, pq.p + J0, r, F, **budgets)
    if c is None:
        raise InternalInvariantViolated("unit ideal without a certificate")
    c = c[:len(pq.p)]
    q1 = {}
    for ci, qi in zip(c, pq.q):
        q1 = add(q1, mul(ci, qi, F), F)
    q1 = laurent_normalize(q1, r, F)
    rest = [laurent_normalize(sub(qi, mul(pi, q1, F), F), r, F)
            for pi, qi in zip(pq.p, pq.q)]
    Jt = [x for x in rest if x] + J0
    L, ok = exponent_lattice(Jt, r, F, **budgets)
    if not ok:
        raise NotAnEquivalenceRelation("q-ideal is not a subgroup scheme",
                                       {"gamma": list(gamma)})
    nf = laurent_normal_form(q1, Jt, r, F, **budgets)
    if len(nf) != 1 or F.norm(next(iter(nf.values())) + F.one):
        raise InternalInvariantViolated(f"q_1 is not minus a character modulo J~: {nf}")
    s1 = ctx.char(laurent_exponent(next(iter(nf)), r))
    base = tuple(a - b for a, b in zip(gamma, s1))
    return [base] + [vadd(base, ctx.char(s)) for s in L.basis]


def _unit_closure(sigma: AffineMonoid, W: Sequence) -> list:
    out = list(W)
    for w in W:
        if sigma.is_unit(w) and vneg(w) not in out:
            out.append(vneg(w))
    return out


def _finish(R: ToricRelation, ctx: _Context, transcript: list) -> EffectiveModel:
    W = [w for w in ctx.W if any(w)]
    tau_gens = _unit_closure(R.sigma, W)
    final = difference_ideal(R.A2, W, **R.budgets)
    verified = ideal_compare(R.ideal, final, "equal")
    tau = AffineMonoid(R.sigma.d, tau_gens) if tau_gens else None
    pres = presentation(tau) if tau is not None else None
    return EffectiveModel(W, tau, tau_gens, pres, verified, transcript)


# -- deep checks -----------------------------------------------------------------

def _difference3(ctx: _Context) -> IdealHandle:
    A3 = Ambient(ctx.sigma, 3, ctx.F)
    return difference_ideal(A3, ctx.W, **ctx.R.budgets)


def check_j0_symmetry(ctx: _Context, gamma) -> bool:
    """J_0(x, y, z) is stable under all permutations of the three copies."""
    I3 = _difference3(ctx)
    A3 = I3.ambient
    J = colon_monomial(I3, A3.exponent([gamma, ctx.zero, ctx.zero]))
    if not ctx.r:
        return True
    chars = degree_zero_characters(J, ctx.units.basis)
    # characters: u_0 = x z^{-1}, u_1 = y z^{-1}; map back to degree-0 polys
    back = []
    r = ctx.r
    for h in chars:
        poly: dict = {}
        for e, c in h.items():
            s0 = ctx.char(tuple(e[i] - e[2 * r + i] for i in range(r)))
            s1 = ctx.char(tuple(e[r + i] - e[3 * r + i] for i in range(r)))
            elems = [s0, s1, vneg(vadd(s0, s1))]
            poly = add(poly, A3.monomial(elems, c), ctx.F)
        back.append(poly)
    for perm in permutations(range(3)):
        for h in back:
            if not J.contains(A3.permute_copies(h, perm)):
                raise InternalInvariantViolated(f"J_0(x,y,z) not invariant under {perm}")
    return True


def check_cocycle_relations(ctx: _Context, pq: PQForm, gens: Sequence[dict]) -> bool:
    """Certificates a, b for g(x,z) in (g(x,y), g(y,z)) + Ĩ(x,y,z) and the three
    congruences they induce on P and Q modulo J_0(x,y,z)."""
    I3 = _difference3(ctx)
    A3, F, A2 = I3.ambient, ctx.F, ctx.A2
    gamma = pq.gamma
    g2 = [add(mul(ctx.to_ambient(p, A2), A2.monomial([gamma, ctx.zero]), F),
              mul(ctx.to_ambient(q, A2), A2.monomial([ctx.zero, gamma]), F), F)
          for p, q in zip(pq.p, pq.q)]
    m = len(g2)
    xy = [A3.include(g, A2, (0, 1)) for g in g2]
    yz = [A3.include(g, A2, (1, 2)) for g in g2]
    K = IdealHandle(A3, xy + yz + I3.gens, **ctx.R.budgets)
    A, B = [], []
    for g in g2:
        cof = K.member_certify(A3.include(g, A2, (0, 2)))
        if cof is None:
            raise InternalInvariantViolated("transitivity certificate missing")
        zero_grade = ctx.zero
        deg0 = [{e: c for e, c in h.items() if A3.grade(e) == zero_grade} for h in cof]
        A.append(deg0[:m])
        B.append(deg0[m:2 * m])
    pq.a, pq.b = A, B
    X = A3.monomial([gamma, ctx.zero, ctx.zero])

    def lift(f, copies):
        return ctx.to_ambient(f, A3, copies)

    for i in range(m):
        rx = lift(pq.p[i], (0, 2))
        ry, rz = {}, scale(lift(pq.q[i], (0, 2)), F(-1), F)
        for j in range(m):
            rx = sub(rx, mul(A[i][j], lift(pq.p[j], (0, 1)), F), F)
            ry = add(ry, mul(A[i][j], lift(pq.q[j], (0, 1)), F), F)
            ry = add(ry, mul(B[i][j], lift(pq.p[j], (1, 2)), F), F)
            rz = add(rz, mul(B[i][j], lift(pq.q[j], (1, 2)), F), F)
        for name, rel in (("x", rx), ("y", ry), ("z", rz)):
            if rel and not I3.contains(mul(rel, X, F)):
                raise InternalInvariantViolated(f"cocycle relation ({name}) fails at {gamma}")
    return True


# -- invariant functions and noneffectiveness ------------------------------------

def _elements_by_degree(sigma: AffineMonoid, D: int) -> list[tuple]:
    """Elements of a pointed sigma with positive-functional degree at most D."""
    ell = sigma._ell
    zero = tuple([0] * sigma.d)
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for a in frontier:
            for g in sigma.generators:
                b = vadd(a, g)
                if b not in seen and sum(x * y for x, y in zip(ell, b)) <= D:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return sorted(seen, key=lambda v: (sum(x * y for x, y in zip(ell, v)), v))


def invariant_functions(R: ToricRelation, D: int) -> list[dict]:
    """Basis of {f in k[sigma] of degree <= D : f(x) - f(y) in I} (pointed sigma).

    Monomials are sigma elements; a function is returned as {element: coeff}.
    """
    sigma, F, A2 = R.sigma, R.field, R.A2
    if not sigma.pointed:
        raise InvalidAmbient("invariant functions are enumerated for pointed sigma only")
    elems = _elements_by_degree(sigma, D)
    zero = tuple([0] * sigma.d)
    images = [R.ideal.normal_form(sub(A2.monomial([a, zero]), A2.monomial([zero, a]), F))
              for a in elems]
    basis = _kernel(images, F)
    return [{elems[i]: c for i, c in sorted(v.items())} for v in basis]


def certify_noneffective(R: ToricRelation, g: dict, D: int) -> dict:
    """holds=True proves g is not in the ideal of differences of invariants."""
    F, A2 = R.field, R.A2
    if not R.ideal.contains(g):
        raise GNotInI("g is not in I")
    ell = R.sigma._ell
    degs = {sum(x * y for x, y in zip(ell, R.A2.grade(e))) for e in g}
    if degs != {D}:
        raise GNotInI(f"g is not homogeneous of degree {D} (degrees {sorted(degs)})")
    basis = invariant_functions(R, D)
    zero = tuple([0] * R.sigma.d)
    diffs = []
    for f in basis:
        h: dict = {}
        for a, c in f.items():
            h = add(h, scale(sub(A2.monomial([a, zero]), A2.monomial([zero, a]), F), c, F), F)
        if h:
            diffs.append(h)
    K = IdealHandle(A2, diffs, **R.budgets)
    return {"holds": not K.contains(g), "basis": basis, "degree": D}
