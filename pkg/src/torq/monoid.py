"""Affine monoids inside Z^d.

An :class:`AffineMonoid` caches its group ``grp``, unit group ``units``
(the largest subgroup), cone facets, and a memo table for membership.
Membership is decided on classes modulo the unit group, which turns the
search into a well-founded descent along a functional that is positive on
every non-unit generator.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional, Sequence

from .cones import Cone, dot, nonneg_combination
from .errors import (BudgetExceeded, DimensionMismatch, EmptyGenerators,
                     ImageNotInTarget, RelationsNotRespected)
from .zlin import (Lattice, lattice_quotient, left_kernel, quotient_map,
                   saturate, solve_integer, vecmat)

DEFAULT_MEMBERSHIP_BUDGET = 10 ** 6


def _vec(v) -> tuple:
    return tuple(int(a) for a in v)


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vneg(a):
    return tuple(-x for x in a)


class AffineMonoid:
    """Finitely generated submonoid of Z^d."""

    def __init__(self, d: int, generators: Sequence[Sequence[int]],
                 budget: int = DEFAULT_MEMBERSHIP_BUDGET):
        gens = []
        for g in generators:
            g = _vec(g)
            if len(g) != d:
                raise DimensionMismatch(f"generator {g} is not in Z^{d}")
            if any(g) and g not in gens:
                gens.append(g)
        if not generators:
            raise EmptyGenerators("an affine monoid needs at least one generator")
        self.d = d
        self.generators = tuple(gens)
        self.budget = budget
        self.grp = Lattice(d, gens)
        self.cone = Cone(d, gens)
        self.facets = self.cone.facets
        lin = set(self.cone.lineality_generators)
        self._unit_idx = [i for i, g in enumerate(gens) if g in lin]
        self._pos_idx = [i for i, g in enumerate(gens) if g not in lin]
        self.units = Lattice(d, [gens[i] for i in self._unit_idx])
        self.pointed = self.units.rank == 0
        self._ell = self.cone.positive_functional()
        self._zero = tuple([0] * d)
        self._memo: dict = {self._zero: ()}
        self._lock = threading.Lock()
        self._neg = {i: self._negation_witness(i) for i in self._unit_idx}

    def __repr__(self):
        return f"AffineMonoid({self.d}, {list(self.generators)})"

    def __eq__(self, other):
        return isinstance(other, AffineMonoid) and self.d == other.d and \
            self.generators == other.generators

    def __hash__(self):
        return hash((self.d, self.generators))

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def cls(self, v) -> tuple:
        """Canonical representative of v modulo the unit group."""
        return self.units.reduce(v)

    def ell(self, v) -> int:
        return dot(self._ell, v)

    def _negation_witness(self, i: int) -> tuple:
        ug = [self.generators[j] for j in self._unit_idx]
        lam = nonneg_combination(ug, vneg(self.generators[i]))
        N = 1
        for x in lam:
            N = lcm(N, x.denominator)
        mult = [0] * self.ngens
        mult[i] += N - 1
        for j, x in zip(self._unit_idx, lam):
            mult[j] += int(x * N)
        return tuple(mult)

    def _in_cone_class(self, c) -> bool:
        return all(dot(a, c) >= 0 for a in self.facets)

    def _search(self, c, counter) -> bool:
        """Memoized descent on unit-classes; memo maps class -> (gen, next) or None."""
        stack = [c]
        while stack:
            cur = stack[-1]
            if cur in self._memo:
                stack.pop()
                continue
            counter[0] += 1
            if counter[0] > self.budget:
                raise BudgetExceeded(f"membership search exceeded {self.budget} nodes",
                                     self.budget)
            pending = None
            result = None
            for i in self._pos_idx:
                nxt = self.cls(vsub(cur, self.generators[i]))
                if not self._in_cone_class(nxt) or self.ell(nxt) < 0:
                    continue
                if nxt in self._memo:
                    if self._memo[nxt] is not None:
                        result = (i, nxt)
                        break
                    continue
                pending = nxt
                break
            if result is not None:
                self._memo[cur] = result
                stack.pop()
            elif pending is not None:
                stack.append(pending)
            else:
                self._memo[cur] = None
                stack.pop()
        return self._memo[c] is not None

    def contains(self, v: Sequence[int], budget: Optional[int] = None) -> Optional[tuple]:
        """Witness multiplicities over ``generators`` if v is in the monoid, else None.

        Raises BudgetExceeded when the search bound is hit; that is never
        reported as a "no".
        """
        v = _vec(v)
        if len(v) != self.d:
            raise DimensionMismatch(f"{v} is not in Z^{self.d}")
        if v not in self.grp or not self.cone.contains(v):
            return None
        c = self.cls(v)
        saved = self.budget
        if budget is not None:
            self.budget = budget
        try:
            with self._lock:
                found = self._search(c, [0])
        finally:
            self.budget = saved
        if not found:
            return None
        mult = [0] * self.ngens
        cur, rest = c, v
        while cur != self._zero and self.cls(cur) != self._zero:
            i, nxt = self._memo[cur]
            mult[i] += 1
            rest = vsub(rest, self.generators[i])
            cur = nxt
        if any(rest):
            self._unit_witness(rest, mult)
        return tuple(mult)

    def __contains__(self, v) -> bool:
        return self.contains(v) is not None

    def _unit_witness(self, u, mult) -> None:
        ug = [list(self.generators[j]) for j in self._unit_idx]
        sol = solve_integer(ug, u, self.d)
        assert sol is not None, "residual escaped the unit group"
        for j, z in zip(self._unit_idx, sol[0]):
            if z >= 0:
                mult[j] += z
            else:
                for t, m in enumerate(self._neg[j]):
                    mult[t] += -z * m

    def combine(self, mult: Sequence[int]) -> tuple:
        return vecmat(mult, [list(g) for g in self.generators], self.d)

    def is_unit(self, v) -> bool:
        return _vec(v) in self.units

    def elements_up_to(self, bound: int) -> list[tuple]:
        """All elements of l1-norm at most ``bound``, by box enumeration."""
        out = []
        for v in _l1_ball(self.d, bound):
            if self.contains(v) is not None:
                out.append(v)
        return sorted(out, key=lambda v: (sum(abs(a) for a in v), v))


def _l1_ball(d: int, r: int):
    if d == 0:
        yield ()
        return
    for a in range(-r, r + 1):
        for rest in _l1_ball(d - 1, r - abs(a)):
            yield (a,) + rest


def monoid_new(d: int, generators, budget: int = DEFAULT_MEMBERSHIP_BUDGET) -> AffineMonoid:
    return AffineMonoid(d, generators, budget)


def monoid_contains(sigma: AffineMonoid, v, budget: Optional[int] = None):
    return sigma.contains(v, budget)


class QuotientMonoid:
    """sigma modulo its units, ordered through the pointed quotient by a saturated summand."""

    def __init__(self, source: AffineMonoid):
        self.source = source
        self.unit_lattice = source.units
        self.saturated_lattice = saturate(source.units, source.grp)
        self.torsion = lattice_quotient(source.units, self.saturated_lattice)["torsion_invariants"]
        self._P, self.tilde_rank = quotient_map(source.units, source.grp)
        # sigma is a group exactly when the pointed quotient has rank 0
        self.tilde = None
        if self.tilde_rank:
            self.tilde = AffineMonoid(self.tilde_rank, [self.pi(g) for g in source.generators])

    def pi(self, v) -> tuple:
        coords = self.source.grp.member(v)
        if coords is None:
            raise DimensionMismatch(f"{v} is not in grp(sigma)")
        return vecmat(coords, self._P, self.tilde_rank)

    def order_key(self, v) -> tuple:
        """Monomial-order key of pi(v): (positive functional, facet values, coordinates)."""
        y = self.pi(v)
        if self.tilde is None:
            return ((0,), ())
        vals = tuple(dot(a, y) for a in self.tilde.facets)
        return ((self.tilde.ell(y),) + vals, y)

    def sort_key(self, v) -> tuple:
        """A linear extension of the partial order, ties broken by the class representative."""
        return self.order_key(v) + (self.source.cls(v),)

    def compare(self, a, b) -> str:
        if self.source.cls(a) == self.source.cls(b):
            return "eq"
        ka, kb = self.order_key(a), self.order_key(b)
        if ka < kb:
            return "lt"
        if ka > kb:
            return "gt"
        return "incomparable"


def rbar(sigma: AffineMonoid) -> QuotientMonoid:
    return QuotientMonoid(sigma)


def rdeg_compare(q: QuotientMonoid, a, b) -> str:
    return q.compare(a, b)


@dataclass(frozen=True)
class MonoidHom:
    source: AffineMonoid
    target: AffineMonoid
    images: tuple

    def apply(self, v) -> tuple:
        mult = self.source.contains(v)
        if mult is None:
            raise ImageNotInTarget(f"{v} is not in the source monoid")
        out = tuple([0] * self.target.d)
        for m, img in zip(mult, self.images):
            out = vadd(out, tuple(m * a for a in img))
        return out


def hom_new(tau: AffineMonoid, sigma: AffineMonoid, images=None) -> MonoidHom:
    """Monoid map sending the i-th generator of tau to images[i] (identity if omitted)."""
    if images is None:
        images = tau.generators
    images = tuple(_vec(v) for v in images)
    if len(images) != tau.ngens:
        raise DimensionMismatch(f"{len(images)} images for {tau.ngens} generators")
    for img in images:
        if len(img) != sigma.d:
            raise DimensionMismatch(f"image {img} not in Z^{sigma.d}")
        if sigma.contains(img) is None:
            raise ImageNotInTarget(f"image {img} is not in the target monoid")
    G = [list(g) for g in tau.generators]
    for rel in left_kernel(G, tau.ngens):
        if any(vecmat(rel, [list(i) for i in images], sigma.d)):
            raise RelationsNotRespected(f"relation {rel} of the source is not preserved")
    return MonoidHom(tau, sigma, images)


@dataclass(frozen=True)
class ToricPresentation:
    monoid: AffineMonoid
    free_rank: int
    kernel: tuple
    defining_ideal: tuple  # binomials as dicts {exponent: coefficient}

    def binomials(self):
        return [dict(b) for b in self.defining_ideal]


_PRESENTATIONS: dict = {}


def presentation(sigma: AffineMonoid) -> ToricPresentation:
    """Toric ideal of sigma: kernel-lattice binomials saturated by all variables."""
    key = (sigma.d, sigma.generators)
    if key in _PRESENTATIONS:
        return _PRESENTATIONS[key]
    from .gb.poly import QQ
    from .gb.buchberger import saturate_by_variables
    k = sigma.ngens
    kernel = tuple(left_kernel([list(g) for g in sigma.generators], k))
    gens = []
    for u in kernel:
        plus = tuple(max(a, 0) for a in u)
        minus = tuple(max(-a, 0) for a in u)
        gens.append({plus: Fraction(1), minus: Fraction(-1)})
    basis = saturate_by_variables(gens, k, QQ) if gens else []
    pres = ToricPresentation(sigma, k, kernel,
                             tuple(tuple(sorted(b.items())) for b in basis))
    _PRESENTATIONS[key] = pres
    return pres
