"""Ideals in monoid rings k[sigma^m], realized as k[z]/P with P the toric presentation.

Variables are copy-major: copy c, generator j of sigma is variable c*k + j.
Every basis computation appends the replicated presentation ideal.
"""
from __future__ import annotations

from typing import Optional, Sequence

from ..errors import (BinomialityViolated, DimensionMismatch, InvalidInput,
                      NotASubmonoid, NotDifferenceGenerated)
from ..monoid import AffineMonoid, presentation, vadd
from ..zlin import Lattice
from .buchberger import (divide_tracked, eliminate, groebner, normal_form)
from .poly import (QQ, MonomialOrder, block_order, convert, divides, embed, exp_sub,
                   grevlex, mul, mul_term, scale, sub)


class Ambient:
    """k[sigma^m] presented as a quotient of a polynomial ring."""

    def __init__(self, sigma: AffineMonoid, m: int, field=QQ):
        self.sigma = sigma
        self.m = m
        self.field = field
        self.k = sigma.ngens
        self.nvars = m * self.k
        base = [convert(b, field) for b in presentation(sigma).binomials()]
        self.relations = [embed(b, range(c * self.k, (c + 1) * self.k), self.nvars)
                          for c in range(m) for b in base]

    def __eq__(self, other):
        return isinstance(other, Ambient) and (self.sigma, self.m, self.field) == \
            (other.sigma, other.m, other.field)

    def __hash__(self):
        return hash((self.sigma, self.m, self.field))

    def var(self, c: int, j: int) -> int:
        return c * self.k + j

    def copy_vars(self, c: int) -> list[int]:
        return list(range(c * self.k, (c + 1) * self.k))

    def exponent(self, elements: Sequence[Sequence[int]]) -> tuple:
        """Exponent vector of x_1^{a_1} ... x_m^{a_m} for sigma elements a_c."""
        if len(elements) != self.m:
            raise DimensionMismatch(f"expected {self.m} sigma elements")
        e = []
        for a in elements:
            w = self.sigma.contains(a)
            if w is None:
                raise NotASubmonoid(f"{tuple(a)} is not in sigma")
            e.extend(w)
        return tuple(e)

    def monomial(self, elements, coeff=1) -> dict:
        return {self.exponent(elements): self.field(coeff)}

    def copy_degree(self, e: tuple, c: int) -> tuple:
        out = tuple([0] * self.sigma.d)
        for j, g in enumerate(self.sigma.generators):
            a = e[c * self.k + j]
            if a:
                out = vadd(out, tuple(a * x for x in g))
        return out

    def degrees(self, e: tuple) -> tuple:
        return tuple(self.copy_degree(e, c) for c in range(self.m))

    def grade(self, e: tuple) -> tuple:
        """Degree for the diagonal torus action: sum of the copy degrees."""
        out = tuple([0] * self.sigma.d)
        for c in range(self.m):
            out = vadd(out, self.copy_degree(e, c))
        return out

    def homogeneous_components(self, f: dict) -> dict:
        comps: dict = {}
        for e, c in f.items():
            comps.setdefault(self.grade(e), {})[e] = c
        return comps

    def permute_copies(self, f: dict, perm: Sequence[int]) -> dict:
        """Send copy c to copy perm[c]."""
        out = {}
        for e, a in f.items():
            ne = [0] * self.nvars
            for c in range(self.m):
                for j in range(self.k):
                    ne[perm[c] * self.k + j] += e[c * self.k + j]
            out[tuple(ne)] = a
        return out

    def include(self, f: dict, other: "Ambient", copies: Sequence[int]) -> dict:
        """Image of f from ``other`` (fewer copies) with its copy c placed at copies[c]."""
        positions = [copies[c] * self.k + j for c in range(other.m) for j in range(self.k)]
        return embed(f, positions, self.nvars)


class IdealHandle:
    """Ideal of k[sigma^m] given by generators; bases are computed lazily per order."""

    def __init__(self, ambient: Ambient, gens: Sequence[dict], **budgets):
        self.ambient = ambient
        F = ambient.field
        self.gens = [g for g in (convert(g, F) for g in gens) if g]
        self.budgets = budgets
        self._gb: dict = {}
        self._tracked: dict = {}

    @property
    def field(self):
        return self.ambient.field

    def all_generators(self) -> list[dict]:
        return self.gens + self.ambient.relations

    def gb(self, order: Optional[MonomialOrder] = None) -> list[dict]:
        order = order or _GREVLEX
        if order.name not in self._gb:
            self._gb[order.name] = groebner(self.all_generators(), self.ambient.nvars,
                                            self.field, order, **self.budgets)
        return self._gb[order.name]

    def normal_form(self, f: dict) -> dict:
        return normal_form(f, self.gb(), _GREVLEX, self.field)

    def contains(self, f: dict) -> bool:
        return not self.normal_form(f)

    def is_unit_ideal(self) -> bool:
        return any(len(g) == 1 and not any(next(iter(g))) for g in self.gb())

    def member_certify(self, f: dict) -> Optional[list[dict]]:
        """Cofactors h with f = sum h_i gens_i modulo the presentation, or None."""
        if "grevlex" not in self._tracked:
            self._tracked["grevlex"] = groebner(self.all_generators(), self.ambient.nvars,
                                                self.field, _GREVLEX, track=True,
                                                **self.budgets)
        G, C = self._tracked["grevlex"]
        r, h = divide_tracked(f, G, C, _GREVLEX, self.field)
        if r:
            return None
        return h[:len(self.gens)]

    def __add__(self, other: "IdealHandle") -> "IdealHandle":
        _same(self, other)
        return IdealHandle(self.ambient, self.gens + other.gens, **self.budgets)

    def permuted(self, perm: Sequence[int]) -> "IdealHandle":
        return IdealHandle(self.ambient, [self.ambient.permute_copies(g, perm)
                                          for g in self.gens], **self.budgets)


_GREVLEX = grevlex()


def _same(I: IdealHandle, J: IdealHandle):
    if I.ambient != J.ambient:
        raise InvalidInput("ideals live in different ambient rings")


def buchberger(gens: Sequence[dict], nvars: int, order: Optional[MonomialOrder] = None,
               field=QQ, **kw) -> list[dict]:
    return groebner(gens, nvars, field, order, **kw)


def member_certify(f: dict, I: IdealHandle) -> Optional[list[dict]]:
    return I.member_certify(f)


def ideal_compare(I: IdealHandle, J: IdealHandle, mode: str = "equal") -> bool:
    """mode 'contains': J ⊆ I.  mode 'equal': both containments."""
    _same(I, J)
    if mode == "contains":
        return all(I.contains(g) for g in J.gens)
    if mode == "equal":
        return ideal_compare(I, J, "contains") and ideal_compare(J, I, "contains")
    raise ValueError(f"unknown mode {mode!r}")


def is_binomial(f: dict) -> bool:
    return len(f) <= 2


def colon_monomial(I: IdealHandle, mono: tuple) -> IdealHandle:
    """(I : z^mono) via (I + P) ∩ (z^mono) = elim_t(t(I + P) + (1 - t) z^mono)."""
    amb, F = I.ambient, I.field
    n = amb.nvars
    if not any(mono):
        return IdealHandle(amb, I.gens, **I.budgets)
    n1 = n + 1
    t = tuple([0] * n + [1])
    lifted = [mul_term(embed(g, range(n), n1), t, F.one, F) for g in I.all_generators()]
    m1 = tuple(mono) + (0,)
    lifted.append({m1: F.one, vadd(m1, t): F(-1)})
    inter = eliminate(lifted, n1, [n], F, **I.budgets)
    out = []
    for g in inter:
        q = {}
        for e, c in g.items():
            e = e[:n]
            if not divides(mono, e):
                raise BinomialityViolated("intersection element not divisible by the monomial")
            q[exp_sub(e, mono)] = c
        out.append(q)
    J = IdealHandle(amb, out, **I.budgets)
    if all(is_binomial(g) for g in I.all_generators()):
        if not all(is_binomial(g) for g in J.gb()):
            raise BinomialityViolated("colon of a binomial ideal is not binomial")
    return J


def graded_piece(I: IdealHandle, grade: Sequence[int]) -> list[dict]:
    """Basis of I in the given diagonal degree (finite components only).

    The component is spanned by monomials whose normal forms modulo P are
    standard; I's part is the kernel of reduction modulo I.
    """
    amb, F = I.ambient, I.field
    sigma = amb.sigma
    if not sigma.pointed:
        raise InvalidInput("component is infinite along unit directions; use "
                           "degree_zero_characters instead")
    grade = tuple(grade)
    ell = sigma._ell
    weights = [sum(a * b for a, b in zip(ell, g)) for g in sigma.generators] * amb.m
    target = sum(a * b for a, b in zip(ell, grade))
    P = IdealHandle(amb, [], **I.budgets)
    standard = {}
    for e in _exponents_of_weight(weights, target):
        if amb.grade(e) != grade:
            continue
        nf = P.normal_form({e: F.one})
        if len(nf) == 1:
            standard.setdefault(next(iter(nf)), True)
    monos = sorted(standard)
    if not monos:
        return []
    images = [I.normal_form({e: F.one}) for e in monos]
    return [{monos[i]: c for i, c in vec.items()}
            for vec in _kernel(images, F)]


def _exponents_of_weight(weights, target):
    n = len(weights)

    def rec(i, rem):
        if i == n:
            if rem == 0:
                yield ()
            return
        w = weights[i]
        for a in range(rem // w + 1):
            for rest in rec(i + 1, rem - a * w):
                yield (a,) + rest
    if target < 0:
        return
    yield from rec(0, target)


def _kernel(vectors: list[dict], F) -> list[dict]:
    """Kernel of the map sending basis vector i to vectors[i] (sparse dicts)."""
    rows = []  # (pivot key, vec, combination)
    kernel = []
    for i, v in enumerate(vectors):
        v = dict(v)
        comb = {i: F.one}
        for key, rv, rc in rows:
            c = v.get(key)
            if c:
                v = sub(v, scale(rv, c, F), F)
                comb = sub(comb, scale(rc, c, F), F)
        if v:
            key = max(v)
            inv = F.inv(v[key])
            rows.append((key, scale(v, inv, F), scale(comb, inv, F)))
        else:
            kernel.append(comb)
    return kernel


def finite_over_subring(I: IdealHandle, base_copies: Sequence[int] = (0,)) -> bool:
    """True iff k[sigma^m]/I is integral over the copies in ``base_copies``.

    Uses a block order with fiber variables above base variables and looks for a
    pure power of every fiber variable among the leading monomials.
    """
    amb = I.ambient
    base = [v for c in base_copies for v in amb.copy_vars(c)]
    fiber = [v for v in range(amb.nvars) if v not in base]
    order = block_order([fiber, base])
    G = I.gb(order)
    lms = [max(g, key=order.key) for g in G]
    for v in fiber:
        if not any(e[v] > 0 and all(a == 0 for i, a in enumerate(e) if i != v) for e in lms):
            return False
    return True


# -- Laurent characters ---------------------------------------------------------

def laurent_monomial(s: Sequence[int], r: int, F=QQ, coeff=None) -> dict:
    """u^s in k[u_1..u_r, v_1..v_r] with v_i standing for u_i^{-1}."""
    e = [max(a, 0) for a in s] + [max(-a, 0) for a in s]
    return {tuple(e): F.one if coeff is None else coeff}


def laurent_relations(r: int, F=QQ) -> list[dict]:
    out = []
    for i in range(r):
        e = [0] * (2 * r)
        e[i] = e[r + i] = 1
        out.append({tuple(e): F.one, tuple([0] * (2 * r)): F(-1)})
    return out


def laurent_exponent(e: tuple, r: int) -> tuple:
    return tuple(e[i] - e[r + i] for i in range(r))


def laurent_normalize(f: dict, r: int, F=QQ) -> dict:
    """Canonical form: collapse u_i v_i, collecting by exponent in Z^r."""
    out: dict = {}
    for e, c in f.items():
        s = laurent_exponent(e, r)
        key = next(iter(laurent_monomial(s, r, F)))
        out[key] = F.norm(out.get(key, F.zero) + c)
    return {e: c for e, c in out.items() if c}


def laurent_gb(gens: Sequence[dict], r: int, F=QQ, **kw) -> list[dict]:
    return groebner(list(gens) + laurent_relations(r, F), 2 * r, F, **kw)


def laurent_is_unit(gens: Sequence[dict], r: int, F=QQ, **kw) -> bool:
    G = laurent_gb(gens, r, F, **kw)
    return any(len(g) == 1 and not any(next(iter(g))) for g in G)


def exponent_lattice(gens: Sequence[dict], r: int, F=QQ, strict: bool = False, **kw):
    """L = {s : u^s - 1 in I} harvested from the reduced basis, plus a flag that
    the differences u^l - 1 (l in basis(L)) regenerate I exactly."""
    G = laurent_gb(gens, r, F, **kw)
    harvested = []
    ok = True
    for g in G:
        if len(g) != 2:
            ok = False
            continue
        (e1, c1), (e2, c2) = sorted(g.items())
        if F.norm(c1 + c2):
            ok = False
            continue
        s = tuple(a - b for a, b in zip(laurent_exponent(e1, r), laurent_exponent(e2, r)))
        if any(s):
            harvested.append(s)
    L = Lattice(r, harvested) if harvested else Lattice(r, [])
    if ok:
        regen = [_difference(b, r, F) for b in L.basis]
        H = laurent_gb(regen, r, F, **kw)
        ok = sorted(map(_key, H)) == sorted(map(_key, G))
    if strict and not ok:
        raise NotDifferenceGenerated("ideal is not generated by characters minus one")
    return L, ok


def _difference(s, r, F) -> dict:
    f = laurent_monomial(s, r, F)
    z = tuple([0] * (2 * r))
    f[z] = F.norm(f.get(z, F.zero) - F.one)
    return {e: c for e, c in f.items() if c}


def _key(g: dict):
    return tuple(sorted((e, str(c)) for e, c in g.items()))


def degree_zero_characters(I: IdealHandle, unit_basis: Sequence[Sequence[int]]) -> list[dict]:
    """Degree-0 part of a diagonally graded ideal of k[sigma^m], in unit characters.

    With (e_1..e_r) a basis of l(sigma), character u_{c,i} (c < m-1) is
    x_c^{e_i} x_{m-1}^{-e_i}.  Result lives in k[u, u^{-1}] with R = (m-1)*r
    characters, in the variable layout of :func:`laurent_monomial`.
    """
    amb, F = I.ambient, I.field
    r = len(unit_basis)
    R = (amb.m - 1) * r
    if R == 0:
        return [{(): F.one}] if I.is_unit_ideal() else []
    n = amb.nvars
    N = n + 2 * R
    zero = tuple([0] * amb.sigma.d)
    gens = [embed(g, range(n), N) for g in I.all_generators()]
    for c in range(amb.m - 1):
        for i, e in enumerate(unit_basis):
            neg = tuple(-a for a in e)
            for sign, (a, b) in ((0, (e, neg)), (1, (neg, e))):
                elems = [zero] * amb.m
                elems[c], elems[amb.m - 1] = a, b
                img = embed({amb.exponent(elems): F.one}, range(n), N)
                idx = n + sign * R + c * r + i
                u = [0] * N
                u[idx] = 1
                gens.append(sub({tuple(u): F.one}, img, F))
    elim = eliminate(gens, N, list(range(n)), F, **I.budgets)
    return [{e[n:]: c for e, c in g.items()} for g in elim]


def laurent_certify(f: dict, gens: Sequence[dict], r: int, F=QQ, **kw) -> Optional[list[dict]]:
    """Cofactors c with f = sum c_i gens_i in k[u, u^{-1}], or None."""
    allg = list(gens) + laurent_relations(r, F)
    G, C = groebner(allg, 2 * r, F, _GREVLEX, track=True, **kw)
    rem, h = divide_tracked(f, G, C, _GREVLEX, F)
    if rem:
        return None
    return [laurent_normalize(c, r, F) for c in h[:len(gens)]]


def laurent_normal_form(f: dict, gens: Sequence[dict], r: int, F=QQ, **kw) -> dict:
    return normal_form(f, laurent_gb(gens, r, F, **kw), _GREVLEX, F)


def lattice_ideal(L: Lattice, F=QQ) -> list[dict]:
    """Generators u^l - 1 (l in basis(L)) of the ideal of L in k[u, u^{-1}]."""
    return [_difference(b, L.ambient_rank, F) for b in L.basis]
