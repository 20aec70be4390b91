"""Truncated Amitsur complex of a monoid ring map k[tau] -> k[sigma].

Level n holds B^{⊗n} (cochains C^{n-1}); everything is graded by the total
sigma-degree, so each degree is a finite complex of vector spaces spanned by
congruence classes of n-tuples. Only pointed sigma is supported.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import (FiberBudgetExceeded, InternalInvariantViolated, NonPointedUnsupported,
                     NotACocycle)
from .gb.poly import QQ
from .linalg import kernel, matmul, matvec, rank, solve
from .monoid import MonoidHom, vsub
from .tensor import DEFAULT_FIBER_BUDGET, TensorPower


@dataclass
class AmitsurFiber:
    n: int
    degree: tuple
    basis: list            # canonical normalized representatives, sorted
    index: dict            # any tuple in the fiber -> basis position

    def __len__(self):
        return len(self.basis)


@dataclass
class CohomologyTable:
    field: object
    n_max: int
    # degree -> {i: h^i}
    h: dict = field(default_factory=dict)
    # degree -> {i: matrix of d_i (rows: level i+2 classes, cols: level i+1 classes)}
    differentials: dict = field(default_factory=dict)
    untested: list = field(default_factory=list)

    def nonzero(self) -> list:
        return [(d, i, v) for d, row in self.h.items() for i, v in row.items() if v]


class AmitsurComplex:
    """Fibers and differentials for a fixed hom, cached per (level, degree)."""

    def __init__(self, hom: MonoidHom, fiber_budget: int = DEFAULT_FIBER_BUDGET, F=QQ):
        sigma = hom.target
        if not sigma.pointed:
            raise NonPointedUnsupported("Amitsur fibers need a pointed sigma")
        self.hom = hom
        self.sigma = sigma
        self.field = F
        self.fiber_budget = fiber_budget
        self._powers: dict = {}
        self._fibers: dict = {}
        self._diffs: dict = {}

    def power(self, n: int) -> TensorPower:
        T = self._powers.get(n)
        if T is None:
            T = TensorPower(self.sigma, self.hom.images, n, self.fiber_budget)
            self._powers[n] = T
        return T

    def _below(self, d: tuple) -> list[tuple]:
        """All a in sigma with d - a in sigma."""
        zero = tuple([0] * self.sigma.d)
        if self.sigma.contains(d) is None:
            return []
        seen = {zero}
        queue = deque([zero])
        while queue:
            b = queue.popleft()
            for g in self.sigma.generators:
                c = tuple(x + y for x, y in zip(b, g))
                if c not in seen and self.sigma.contains(vsub(d, c)) is not None:
                    seen.add(c)
                    queue.append(c)
        return sorted(seen)

    def _tuples(self, n: int, d: tuple):
        below = self._below(d)
        count = 0

        def rec(k, rem):
            nonlocal count
            if k == 1:
                count += 1
                if count > self.fiber_budget:
                    raise FiberBudgetExceeded(f"fiber exceeded {self.fiber_budget} tuples",
                                              self.fiber_budget)
                yield (rem,)
                return
            for a in below:
                rest = vsub(rem, a)
                if self.sigma.contains(rest) is not None:
                    for tail in rec(k - 1, rest):
                        yield (a,) + tail
        if below:
            yield from rec(n, d)

    def fiber(self, n: int, d) -> AmitsurFiber:
        d = self.sigma._zero if d is None else tuple(d) if not isinstance(d, int) else (d,)
        key = (n, d)
        if key in self._fibers:
            return self._fibers[key]
        T = self.power(n)
        reps: dict = {}
        index: dict = {}
        for t in self._tuples(n, d):
            if t in index:
                continue
            nodes = T._component(t).nodes
            rep = T.normalize(t)
            for v in nodes:
                index[v] = rep
            reps[rep] = True
        basis = sorted(reps, key=lambda m: tuple(T._slot_key(s, ()) for s in m))
        pos = {m: i for i, m in enumerate(basis)}
        fib = AmitsurFiber(n, d, basis, {t: pos[r] for t, r in index.items()})
        self._fibers[key] = fib
        return fib

    def differential(self, n: int, d) -> list[list]:
        """Matrix of d_{n-1}: level n -> level n+1, column per level-n class."""
        src, dst = self.fiber(n, d), self.fiber(n + 1, d)
        key = (n, src.degree)
        if key in self._diffs:
            return self._diffs[key]
        F = self.field
        T = self.power(n)
        M = [[F.zero] * len(src) for _ in range(len(dst))]
        for j, m in enumerate(src.basis):
            for i in range(1, n + 2):
                row = dst.index[T.xi(i, m)]
                M[row][j] = F.norm(M[row][j] + (F.one if i % 2 == 0 else -F.one))
        self._diffs[key] = M
        return M

    def apply_d(self, n: int, d, vec: Sequence) -> list:
        return matvec(self.differential(n, d), vec, self.field)

    def vector(self, n: int, d, f: dict) -> list:
        """Coefficient vector of f = {n-tuple: coeff} in the fiber basis."""
        fib = self.fiber(n, d)
        F = self.field
        v = [F.zero] * len(fib)
        T = self.power(n)
        for m, c in f.items():
            m = tuple(T._elt(s) for s in m)
            if m not in fib.index:
                raise NotACocycle(f"{m} does not lie in the degree-{fib.degree} fiber")
            i = fib.index[m]
            v[i] = F.norm(v[i] + F(c))
        return v

    def cohomology(self, i: int, d) -> int:
        """h^i(d) = dim ker d_i - rank d_{i-1} (d_i acts on level i+1)."""
        F = self.field
        Di = self.differential(i + 1, d)
        ncols = len(self.fiber(i + 1, d))
        ker = ncols - rank(Di, F) if Di else ncols
        im = rank(self.differential(i, d), F) if i >= 1 else 0
        return ker - im


def fiber_basis(hom: MonoidHom, n: int, d, **kw) -> AmitsurFiber:
    return AmitsurComplex(hom, **kw).fiber(n, d)


def differential(hom: MonoidHom, n: int, d, **kw) -> list[list]:
    return AmitsurComplex(hom, **kw).differential(n, d)


def cohomology_table(hom: MonoidHom, n_max: int, degree_list, F=QQ,
                     fiber_budget: int = DEFAULT_FIBER_BUDGET,
                     complex_: Optional[AmitsurComplex] = None) -> CohomologyTable:
    """h^i for 1 <= i <= n_max - 1 on each listed degree; composition d∘d = 0 asserted."""
    C = complex_ or AmitsurComplex(hom, fiber_budget, F)
    table = CohomologyTable(F, n_max)
    for d in degree_list:
        d = (d,) if isinstance(d, int) else tuple(d)
        if C.sigma.contains(d) is None:
            table.untested.append(d)
            continue
        mats = {}
        for lvl in range(1, n_max + 1):
            mats[lvl - 1] = C.differential(lvl, d)
        for lvl in range(1, n_max):
            prod = matmul(mats[lvl], mats[lvl - 1], F)
            if any(any(x for x in row) for row in prod):
                raise InternalInvariantViolated(f"d∘d != 0 at level {lvl}, degree {d}")
        table.h[d] = {i: C.cohomology(i, d) for i in range(1, n_max)}
        table.differentials[d] = mats
    return table


def _mask_key(m, zero) -> tuple:
    return tuple(s != zero for s in m)


def cocycle_reduce(hom: MonoidHom, n: int, f: dict, d=None, F=QQ,
                   complex_: Optional[AmitsurComplex] = None,
                   max_steps: Optional[int] = None) -> dict:
    """A preimage g (level n-1) with d(g) = f for a cocycle f at level n >= 2.

    Follows the dominant-term induction: the dominant monomial s ends in an
    identity slot; with p the monomial obtained by dropping that slot, d(p)
    hits the class of s with a nonzero coefficient, and f - c d(p) has
    strictly fewer dominant terms of the top type.
    """
    C = complex_ or AmitsurComplex(hom, F=F)
    F = C.field
    if n < 2:
        raise NotACocycle("cocycle reduction needs level n >= 2")
    T = C.power(n)
    zero = C.sigma._zero
    if d is None:
        if not f:
            return {}
        d = T.deg(next(iter(f)))
    d = (d,) if isinstance(d, int) else tuple(d)
    vec = C.vector(n, d, f)
    if any(C.apply_d(n, d, vec)):
        raise NotACocycle("d(f) != 0")
    fib = C.fiber(n, d)
    low = C.fiber(n - 1, d)
    D = C.differential(n - 1, d)
    g = [F.zero] * len(low)
    cur = list(vec)
    steps = 0
    limit = max_steps or 4 * (len(fib) + 1) ** 2
    while any(cur):
        steps += 1
        if steps > limit:
            raise InternalInvariantViolated("cocycle reduction did not terminate")
        j = max((i for i, c in enumerate(cur) if c),
                key=lambda i: (_mask_key(fib.basis[i], zero), -i))
        s = fib.basis[j]
        if s[-1] != zero:
            raise NotACocycle(f"dominant monomial {s} has no trailing identity")
        p = s[:-1]
        col = low.index[p]
        e = D[j][col]
        if not e:
            raise InternalInvariantViolated(f"d({p}) misses the class of {s}")
        c = F.norm(cur[j] * F.inv(e))
        g[col] = F.norm(g[col] + c)
        cur = [F.norm(a - c * D[i][col]) for i, a in enumerate(cur)]
    if C.apply_d(n - 1, d, g) != vec:
        raise InternalInvariantViolated("d(g) != f after reduction")
    return {low.basis[i]: c for i, c in enumerate(g) if c}


def solve_coboundary(C: AmitsurComplex, n: int, d, f: dict) -> Optional[list]:
    """Oracle: any g with d(g) = f by plain linear algebra."""
    vec = C.vector(n, d, f)
    D = C.differential(n - 1, d)
    return solve(D, vec, len(C.fiber(n - 1, d)), C.field)


def ker_d0_witnesses(hom: MonoidHom, elements: Sequence) -> list[tuple]:
    """Elements b of sigma with b⊗1 = 1⊗b that are not in the image of tau.

    Works for any sigma (units allowed) since it only uses tensor equality.
    """
    sigma = hom.target
    T = TensorPower(sigma, hom.images, 2)
    tau_img = _image_monoid(hom)
    zero = sigma._zero
    out = []
    for b in elements:
        b = (b,) if isinstance(b, int) else tuple(b)
        if T.equals((b, zero), (zero, b)) and tau_img.contains(b) is None:
            out.append(b)
    return out


def _image_monoid(hom: MonoidHom):
    from .monoid import AffineMonoid
    gens = [g for g in hom.images if any(g)] or [hom.target._zero]
    if not any(map(any, gens)):
        return _Trivial(hom.target.d)
    return AffineMonoid(hom.target.d, gens)


class _Trivial:
    def __init__(self, d):
        self.zero = tuple([0] * d)

    def contains(self, v):
        return () if tuple(v) == self.zero else None


def kernel_basis(M, ncols, F=QQ):
    return kernel(M, ncols, F)
