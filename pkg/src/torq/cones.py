"""Rational polyhedral cones given by integer generators.

Facets are found by exact Fourier-Motzkin elimination of the multipliers in
``x = G lam, lam >= 0`` followed by a rank test that discards redundant
inequalities.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd, lcm
from typing import Optional, Sequence

from .zlin import left_kernel, primitive, transpose


def _rank(rows) -> int:
    M = [[Fraction(a) for a in r] for r in rows]
    rank, col = 0, 0
    ncols = len(M[0]) if M else 0
    while rank < len(M) and col < ncols:
        piv = next((i for i in range(rank, len(M)) if M[i][col]), None)
        if piv is None:
            col += 1
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for i in range(rank + 1, len(M)):
            if M[i][col]:
                f = M[i][col] / M[rank][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[rank])]
        rank += 1
        col += 1
    return rank


def rank(rows) -> int:
    return _rank(rows) if rows else 0


def _int_row(coeffs) -> tuple:
    den = 1
    for c in coeffs:
        den = lcm(den, Fraction(c).denominator)
    return primitive([int(Fraction(c) * den) for c in coeffs])


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


class Cone:
    """cone(G) in Q^d with its span equations and facet inequalities.

    ``equations``: integer vectors e with e.x = 0 on the span of G.
    ``facets``: primitive integer vectors a with a.x >= 0 on the cone, one per
    facet, each normalized to lie in the span of G (so it is canonical).
    """

    def __init__(self, dim: int, generators: Sequence[Sequence[int]]):
        self.dim = dim
        self.generators = [tuple(g) for g in generators if any(g)]
        self.span_rank = rank(self.generators)
        self.equations = [tuple(e) for e in left_kernel(transpose(self.generators, dim), dim)] \
            if self.generators else [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
        self.facets = self._facets()
        self.lineality_generators = [g for g in self.generators
                                     if all(dot(a, g) == 0 for a in self.facets)]

    def contains(self, v: Sequence[int]) -> bool:
        return (all(dot(e, v) == 0 for e in self.equations)
                and all(dot(a, v) >= 0 for a in self.facets))

    def in_span(self, v) -> bool:
        return all(dot(e, v) == 0 for e in self.equations)

    def positive_functional(self) -> tuple:
        """Integer functional vanishing on the lineality space, positive elsewhere."""
        out = [0] * self.dim
        for a in self.facets:
            out = [x + y for x, y in zip(out, a)]
        return tuple(out)

    def _project(self, a) -> tuple:
        return project_to_span(self.generators, self.dim, a)

    def _facets(self) -> list[tuple]:
        gens = self.generators
        D = self.span_rank
        if D == 0:
            return []
        ineqs = fourier_motzkin(self.dim, gens)
        facets = set()
        for a in ineqs:
            if all(dot(a, g) == 0 for g in gens):
                continue
            tight = [g for g in gens if dot(a, g) == 0]
            is_facet = rank(tight) == D - 1 if tight else D == 1
            if is_facet:
                facets.add(self._project(a))
        return sorted(facets)


def project_to_span(gens, dim, a) -> tuple:
    """Orthogonal projection of a onto span(gens), scaled primitive."""
    basis = _row_basis(gens)
    if not basis:
        return tuple([0] * dim)
    # solve (B B^T) c = B a
    B = [[Fraction(x) for x in b] for b in basis]
    k = len(B)
    M = [[sum(B[i][t] * B[j][t] for t in range(dim)) for j in range(k)]
         + [sum(B[i][t] * a[t] for t in range(dim))] for i in range(k)]
    for c in range(k):
        piv = next(i for i in range(c, k) if M[i][c])
        M[c], M[piv] = M[piv], M[c]
        for i in range(k):
            if i != c and M[i][c]:
                f = M[i][c] / M[c][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    coef = [M[i][k] / M[i][i] for i in range(k)]
    proj = [sum(coef[i] * B[i][t] for i in range(k)) for t in range(dim)]
    return _int_row(proj)


def _row_basis(rows):
    basis = []
    for r in rows:
        if rank(basis + [list(r)]) > len(basis):
            basis.append(list(r))
    return basis


def fourier_motzkin(dim: int, gens: Sequence[Sequence[int]]) -> list[tuple]:
    """Inequalities a.x >= 0 (in x only) valid on cone(gens), by elimination.

    Returns a (possibly redundant) list whose intersection with the span of
    the generators equals the cone.
    """
    k = len(gens)
    # rows: coefficients over (x_1..x_dim, lam_1..lam_k); equalities x - G lam = 0
    eqs = []
    for i in range(dim):
        row = [Fraction(0)] * (dim + k)
        row[i] = Fraction(1)
        for j, g in enumerate(gens):
            row[dim + j] = Fraction(-g[i])
        eqs.append(row)
    # solve equalities for as many multipliers as possible
    pivots = {}
    used = set()
    for j in range(k):
        col = dim + j
        piv = next((i for i in range(len(eqs)) if i not in used and eqs[i][col]), None)
        if piv is None:
            continue
        used.add(piv)
        prow = [a / eqs[piv][col] for a in eqs[piv]]
        eqs[piv] = prow
        for i in range(len(eqs)):
            if i != piv and eqs[i][col]:
                f = eqs[i][col]
                eqs[i] = [a - f * b for a, b in zip(eqs[i], prow)]
        pivots[j] = piv
    # lam_j = -(rest of row) for pivot j ; constraint lam_j >= 0
    ineqs = []
    for j in range(k):
        if j in pivots:
            row = eqs[pivots[j]]
            ineqs.append([-a if t != dim + j else Fraction(0) for t, a in enumerate(row)])
        else:
            row = [Fraction(0)] * (dim + k)
            row[dim + j] = Fraction(1)
            ineqs.append(row)
    free = [j for j in range(k) if j not in pivots]
    for j in free:
        col = dim + j
        pos = [r for r in ineqs if r[col] > 0]
        neg = [r for r in ineqs if r[col] < 0]
        zero = [r for r in ineqs if r[col] == 0]
        new = zero
        for p in pos:
            for n in neg:
                new.append([a * (-n[col]) + b * p[col] for a, b in zip(p, n)])
        seen, ineqs = set(), []
        for r in new:
            key = _int_row(r)
            if any(key) and key not in seen:
                seen.add(key)
                ineqs.append([Fraction(a) for a in key])
    return [_int_row(r[:dim]) for r in ineqs if any(r[:dim])]


def facets_bruteforce(dim: int, gens: Sequence[Sequence[int]]) -> list[tuple]:
    """Independent facet enumeration by hyperplanes through generator subsets."""
    gens = [tuple(g) for g in gens if any(g)]
    D = rank(gens)
    out = set()
    if D == 0:
        return []
    for sub in combinations(gens, D - 1):
        if rank(list(sub)) != D - 1:
            continue
        normals = left_kernel(transpose(list(sub), dim), dim)
        for nvec in normals:
            a = project_to_span(gens, dim, nvec)
            if not any(a):
                continue
            vals = [dot(a, g) for g in gens]
            if all(v >= 0 for v in vals) and any(v > 0 for v in vals):
                out.add(a)
            elif all(v <= 0 for v in vals) and any(v < 0 for v in vals):
                out.add(tuple(-x for x in a))
    return sorted(out)


def nonneg_combination(gens: Sequence[Sequence[int]], v: Sequence[int]) -> Optional[list[Fraction]]:
    """Exact nonnegative rational lam with sum lam_j g_j = v, via basic solutions."""
    gens = [tuple(g) for g in gens]
    k = len(gens)
    if not any(v):
        return [Fraction(0)] * k
    D = rank(gens)
    for size in range(1, D + 1):
        for sub in combinations(range(k), size):
            cols = [gens[j] for j in sub]
            if rank(cols) != size:
                continue
            sol = _solve_rational(cols, v)
            if sol is not None and all(x >= 0 for x in sol):
                lam = [Fraction(0)] * k
                for j, x in zip(sub, sol):
                    lam[j] = x
                return lam
    return None


def _solve_rational(cols, v) -> Optional[list[Fraction]]:
    # sum_j c_j cols[j] = v ; cols independent
    n = len(cols)
    d = len(v)
    M = [[Fraction(cols[j][i]) for j in range(n)] + [Fraction(v[i])] for i in range(d)]
    r = 0
    where = []
    for c in range(n):
        piv = next((i for i in range(r, d) if M[i][c]), None)
        if piv is None:
            return None
        M[r], M[piv] = M[piv], M[r]
        M[r] = [a / M[r][c] for a in M[r]]
        for i in range(d):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        where.append(r)
        r += 1
    if any(M[i][n] for i in range(r, d)):
        return None
    return [M[where[c]][n] for c in range(n)]


def gcd_all(v) -> int:
    g = 0
    for a in v:
        g = gcd(g, a)
    return g
