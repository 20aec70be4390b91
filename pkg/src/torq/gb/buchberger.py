"""Buchberger's algorithm with Gebauer-Moeller pair pruning and sugar selection.

Optionally tracks, for every basis element, cofactors over the input
generators, which is what ideal-membership certificates are made of.
"""
from __future__ import annotations

from typing import Optional, Sequence

from ..errors import DegreeBudgetExceeded, BudgetExceeded
from .poly import (QQ, MonomialOrder, block_order, convert, divides, embed, exp_sub,
                   grevlex, lcm_exp, mul_term, scale, sub)

DEFAULT_DEGREE_BUDGET = 40
DEFAULT_SIZE_BUDGET = 5000


class _Elem:
    __slots__ = ("poly", "lm", "lc", "sugar", "cof")

    def __init__(self, poly, order, sugar, cof=None):
        self.poly = poly
        self.lm = max(poly, key=order.key)
        self.lc = poly[self.lm]
        self.sugar = sugar
        self.cof = cof


def _reduce(f: dict, basis: list, order: MonomialOrder, F, cof=None, full=True):
    """Normal form of f modulo the leading terms of ``basis`` (list of _Elem)."""
    f = dict(f)
    rem: dict = {}
    while f:
        m = max(f, key=order.key)
        c = f[m]
        for g in basis:
            if divides(g.lm, m):
                q = F.norm(c * F.inv(g.lc))
                shift = exp_sub(m, g.lm)
                f = sub(f, mul_term(g.poly, shift, q, F), F)
                if cof is not None:
                    cof = [sub(a, mul_term(b, shift, q, F), F) for a, b in zip(cof, g.cof)]
                break
        else:
            if not full:
                rem.update(f)
                break
            rem[m] = c
            del f[m]
    return rem, cof


def normal_form(f: dict, G: Sequence[dict], order: MonomialOrder, F=QQ) -> dict:
    basis = [_Elem(g, order, 0) for g in G if g]
    return _reduce(convert(f, F), basis, order, F)[0]


def _deg(e) -> int:
    return sum(e)


def groebner(gens: Sequence[dict], nvars: int, F=QQ, order: Optional[MonomialOrder] = None,
             track: bool = False, degree_budget: int = DEFAULT_DEGREE_BUDGET,
             size_budget: int = DEFAULT_SIZE_BUDGET):
    """Reduced Groebner basis of ``gens``.

    With ``track=True`` returns ``(G, C)`` where ``G[i] = sum_j C[i][j] * gens[j]``.
    """
    order = order or grevlex()
    gens = [convert(g, F) for g in gens]
    m = len(gens)
    zero = tuple([0] * nvars)
    basis: list[_Elem] = []
    pairs: list[tuple] = []  # (sugar, lcm, i, j)

    def unit_cof(j):
        return [({zero: F.one} if t == j else {}) for t in range(m)] if track else None

    def insert(h: _Elem):
        nonlocal pairs
        k = len(basis)
        basis.append(h)
        # Gebauer-Moeller update
        new = []
        for i, g in enumerate(basis[:-1]):
            if g is None:
                continue
            L = lcm_exp(g.lm, h.lm)
            s = max(g.sugar + _deg(L) - _deg(g.lm), h.sugar + _deg(L) - _deg(h.lm))
            coprime = all(a == 0 or b == 0 for a, b in zip(g.lm, h.lm))
            new.append((s, L, i, k, coprime))
        # keep a new pair unless another pending one has an lcm dividing it
        kept, rest = [], list(new)
        while rest:
            a = rest.pop()
            if a[4] or not any(divides(b[1], a[1]) for b in rest + kept):
                kept.append(a)
        kept = [a for a in kept if not a[4]]
        survivors = []
        for (s, L, i, j) in pairs:
            if divides(h.lm, L) and lcm_exp(basis[i].lm, h.lm) != L \
                    and lcm_exp(basis[j].lm, h.lm) != L:
                continue
            survivors.append((s, L, i, j))
        pairs = survivors + [(s, L, i, j) for (s, L, i, j, _) in kept]

    initial = []
    for j, g in enumerate(gens):
        if g:
            initial.append(_Elem(g, order, max(_deg(e) for e in g), unit_cof(j)))
    initial.sort(key=lambda e: (e.sugar, order.key(e.lm)))
    for e in initial:
        p, cof = _reduce(e.poly, [b for b in basis if b is not None], order, F, e.cof)
        if p:
            insert(_Elem(p, order, e.sugar, cof))

    while pairs:
        pairs.sort(key=lambda t: (t[0], order.key(t[1])))
        s, L, i, j = pairs.pop(0)
        if _deg(L) > degree_budget:
            raise DegreeBudgetExceeded(f"S-pair degree {_deg(L)} exceeds {degree_budget}",
                                       degree_budget)
        gi, gj = basis[i], basis[j]
        si, sj = exp_sub(L, gi.lm), exp_sub(L, gj.lm)
        ci, cj = F.inv(gi.lc), F.inv(gj.lc)
        spoly = sub(mul_term(gi.poly, si, ci, F), mul_term(gj.poly, sj, cj, F), F)
        cof = None
        if track:
            cof = [sub(mul_term(a, si, ci, F), mul_term(b, sj, cj, F), F)
                   for a, b in zip(gi.cof, gj.cof)]
        p, cof = _reduce(spoly, basis, order, F, cof)
        if p:
            if len(basis) >= size_budget:
                raise BudgetExceeded(f"Groebner basis grew past {size_budget} elements",
                                     size_budget)
            insert(_Elem(p, order, s, cof))

    return _interreduce(basis, order, F, track)


def _interreduce(basis, order, F, track):
    elems = [b for b in basis if b is not None]
    # minimal: drop elements whose lm is divisible by another's
    minimal = []
    for i, g in enumerate(elems):
        dominated = False
        for j, h in enumerate(elems):
            if i != j and divides(h.lm, g.lm) and (h.lm != g.lm or j < i):
                dominated = True
                break
        if not dominated:
            minimal.append(g)
    out = []
    for i, g in enumerate(minimal):
        others = [h for j, h in enumerate(minimal) if j != i]
        # leading term is irreducible by others, so reduce the tail only
        tail = dict(g.poly)
        del tail[g.lm]
        r, cof = _reduce(tail, others, order, F, g.cof)
        r[g.lm] = g.lc
        inv = F.inv(g.lc)
        poly = scale(r, inv, F)
        if track:
            cof = [scale(a, inv, F) for a in cof]
        out.append(_Elem(poly, order, g.sugar, cof))
    out.sort(key=lambda e: order.key(e.lm))
    G = [e.poly for e in out]
    if track:
        return G, [e.cof for e in out]
    return G


def eliminate(gens: Sequence[dict], nvars: int, drop: Sequence[int], F=QQ, **kw) -> list[dict]:
    """Generators of (gens) intersected with the subring without the variables ``drop``."""
    drop = list(drop)
    keep = [i for i in range(nvars) if i not in drop]
    G = groebner(gens, nvars, F, block_order([drop, keep]), **kw)
    return [g for g in G if all(all(e[i] == 0 for i in drop) for e in g)]


def saturate_by_variables(gens: Sequence[dict], nvars: int, F=QQ,
                          variables: Optional[Sequence[int]] = None, **kw) -> list[dict]:
    """(gens) : (prod z_i)^infinity, via an auxiliary variable t with 1 - t*prod z_i."""
    variables = list(range(nvars)) if variables is None else list(variables)
    if not variables:
        return groebner(gens, nvars, F, **kw)
    n1 = nvars + 1
    lifted = [embed(g, range(nvars), n1) for g in gens]
    e = [0] * n1
    for i in variables:
        e[i] = 1
    e[nvars] = 1
    lifted.append({tuple([0] * n1): F.one, tuple(e): F(-1)})
    elim = eliminate(lifted, n1, [nvars], F, **kw)
    return groebner([{k[:nvars]: c for k, c in g.items()} for g in elim], nvars, F, **kw)


def divide_tracked(f: dict, G: Sequence[dict], C: Sequence[list], order: MonomialOrder,
                   F=QQ) -> tuple[dict, list]:
    """Reduce f by a tracked basis; returns (r, h) with f = r + sum_j h_j * gens_j."""
    m = len(C[0]) if C else 0
    basis = [_Elem(g, order, 0, c) for g, c in zip(G, C) if g]
    r, cof = _reduce(convert(f, F), basis, order, F, [{} for _ in range(m)])
    return r, [scale(a, F(-1), F) for a in cof]
