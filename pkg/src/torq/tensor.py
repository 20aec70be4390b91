"""Tensor powers of an affine monoid over a submonoid, and their word problem.

A monomial of the n-th tensor power is written as an n-tuple of sigma
elements. Each slot splits as ``class + offset`` with the class taken modulo
the unit group l(sigma) and the offset in l(sigma). Transfers of tau images
between slots only look at classes, so the move graph lives on tuples of
classes with edges labelled by offset changes; an abelian group-labelled
graph is solved exactly by spanning-tree potentials plus the lattice of cycle
labels.
"""
from __future__ import annotations

import threading
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

from .errors import DimensionMismatch, FiberBudgetExceeded, InvalidInput, NotASubmonoid
from .monoid import AffineMonoid, QuotientMonoid, vadd, vsub
from .zlin import Lattice, solve_integer

DEFAULT_FIBER_BUDGET = 10 ** 5


@dataclass
class _Component:
    nodes: dict          # node -> potential (offset coords, length n*r)
    cycles: Lattice      # lattice of cycle labels


class TensorPower:
    """sigma^{⊗_tau n}, with tau given by its images in sigma."""

    def __init__(self, sigma: AffineMonoid, tau_images: Sequence[Sequence[int]], n: int,
                 fiber_budget: int = DEFAULT_FIBER_BUDGET):
        if n < 1:
            raise InvalidInput("tensor power needs n >= 1")
        self.sigma = sigma
        self.n = n
        imgs = []
        for w in tau_images:
            w = self._elt(w)
            if sigma.contains(w) is None:
                raise NotASubmonoid(f"tau image {w} is not in sigma")
            if any(w) and w not in imgs:
                imgs.append(w)
        self.tau_images = tuple(imgs)
        self.fiber_budget = fiber_budget
        self.qm = QuotientMonoid(sigma)
        self.units = sigma.units
        self.r = self.units.rank
        self._zero = tuple([0] * sigma.d)
        self._components: dict = {}
        self._lock = threading.Lock()

    def power(self, n: int) -> "TensorPower":
        return TensorPower(self.sigma, self.tau_images, n, self.fiber_budget)

    def _elt(self, v) -> tuple:
        if isinstance(v, int):
            v = (v,)
        v = tuple(int(a) for a in v)
        if len(v) != self.sigma.d:
            raise DimensionMismatch(f"{v} is not in Z^{self.sigma.d}")
        return v

    def monomial(self, slots) -> tuple:
        """Validated tuple of slots."""
        slots = tuple(self._elt(s) for s in slots)
        if len(slots) != self.n:
            raise DimensionMismatch(f"expected {self.n} slots, got {len(slots)}")
        for s in slots:
            if self.sigma.contains(s) is None:
                raise NotASubmonoid(f"slot {s} is not in sigma")
        return slots

    # -- class / offset split -------------------------------------------------

    def _split(self, m) -> tuple[tuple, tuple]:
        node, off = [], []
        for s in m:
            c = self.sigma.cls(s)
            node.append(c)
            off.extend(self._ucoords(vsub(s, c)))
        return tuple(node), tuple(off)

    def _ucoords(self, u) -> tuple:
        return self.units.member(u) if self.r else ()

    def _join(self, node, off) -> tuple:
        out = []
        for i, c in enumerate(node):
            t = off[i * self.r:(i + 1) * self.r]
            out.append(vadd(c, self.units.combine(t)) if self.r else c)
        return tuple(out)

    def _moves(self, node):
        """Yield (new node, offset delta) for every single transfer."""
        r = self.r
        for i, ci in enumerate(node):
            for w in self.tau_images:
                a = vsub(ci, w)
                if self.sigma.contains(a) is None:
                    continue
                ca = self.sigma.cls(a)
                da = self._ucoords(vsub(a, ca))
                for j, cj in enumerate(node):
                    if j == i:
                        continue
                    b = vadd(cj, w)
                    cb = self.sigma.cls(b)
                    db = self._ucoords(vsub(b, cb))
                    new = list(node)
                    new[i], new[j] = ca, cb
                    delta = [0] * (len(node) * r)
                    delta[i * r:(i + 1) * r] = da
                    delta[j * r:(j + 1) * r] = db
                    yield tuple(new), tuple(delta)

    def _component(self, node) -> _Component:
        with self._lock:
            comp = self._components.get(node)
            if comp is not None:
                return comp
            dim = len(node) * self.r
            zero = tuple([0] * dim)
            pot = {node: zero}
            cycles = Lattice(dim, [])
            queue = deque([node])
            while queue:
                cur = queue.popleft()
                pc = pot[cur]
                for nxt, delta in self._moves(cur):
                    p = tuple(a + b for a, b in zip(pc, delta))
                    if nxt not in pot:
                        if len(pot) >= self.fiber_budget:
                            raise FiberBudgetExceeded(
                                f"fiber exceeded {self.fiber_budget} class tuples",
                                self.fiber_budget)
                        pot[nxt] = p
                        queue.append(nxt)
                    elif dim:
                        cyc = tuple(a - b for a, b in zip(p, pot[nxt]))
                        if any(cyc) and cyc not in cycles:
                            cycles = cycles + Lattice(dim, [cyc])
            comp = _Component(pot, cycles)
            for v in pot:
                self._components[v] = comp
            return comp

    # -- structure maps ---------------------------------------------------------

    def mu(self, i: int, j: int, m) -> tuple:
        """mu^i_j (1-based): slot i becomes s_i + s_j, slot j is deleted."""
        m = tuple(self._elt(s) for s in m)
        n = len(m)
        if i == j or not (1 <= i <= n and 1 <= j <= n):
            raise IndexError(f"bad indices ({i}, {j}) for {n} slots")
        out = list(m)
        out[i - 1] = vadd(m[i - 1], m[j - 1])
        del out[j - 1]
        return tuple(out)

    def xi(self, i: int, m) -> tuple:
        """xi_i (1-based): insert the identity at position i."""
        m = tuple(self._elt(s) for s in m)
        if not 1 <= i <= len(m) + 1:
            raise IndexError(f"bad index {i} for {len(m)} slots")
        return m[:i - 1] + (self._zero,) + m[i - 1:]

    def deg(self, m) -> tuple:
        out = self._zero
        for s in m:
            out = vadd(out, self._elt(s))
        return out

    # -- word problem -----------------------------------------------------------

    def equals(self, m1, m2) -> bool:
        m1 = tuple(self._elt(s) for s in m1)
        m2 = tuple(self._elt(s) for s in m2)
        if len(m1) != len(m2):
            raise DimensionMismatch("monomials of different tensor powers")
        if self.deg(m1) != self.deg(m2):
            return False
        n1, t1 = self._split(m1)
        n2, t2 = self._split(m2)
        comp = self._component(n1)
        if n2 not in comp.nodes:
            return False
        v = tuple(b - a - (q - p) for a, b, p, q in
                  zip(t1, t2, comp.nodes[n1], comp.nodes[n2]))
        return v in comp.cycles if v else True

    def unit_twist_solve(self, m1, m2, slots: tuple[int, int] = (0, 1)):
        """All s in l(sigma) with m1 ~ m2 + s in slot a - s in slot b.

        Returns ``(s0, L)`` (a vector and a sublattice of l(sigma)) or None.
        Slots are 0-based here.
        """
        m1 = tuple(self._elt(s) for s in m1)
        m2 = tuple(self._elt(s) for s in m2)
        if self.deg(m1) != self.deg(m2):
            return None
        n1, t1 = self._split(m1)
        n2, t2 = self._split(m2)
        comp = self._component(n1)
        if n2 not in comp.nodes:
            return None
        d, r = self.sigma.d, self.r
        if r == 0:
            return self._zero, Lattice(d, [])
        # s.E - c.C = t1 - t2 + (phi2 - phi1)
        a, b = slots
        dim = len(m1) * r
        rows = []
        for k in range(r):
            row = [0] * dim
            row[a * r + k] = 1
            row[b * r + k] = -1
            rows.append(row)
        rows.extend(list(c) for c in comp.cycles.basis)
        rhs = tuple(x - y + q - p for x, y, p, q in
                    zip(t1, t2, comp.nodes[n1], comp.nodes[n2]))
        sol = solve_integer(rows, rhs, dim)
        if sol is None:
            return None
        x0, ker = sol
        s0 = self.units.combine(x0[:r])
        L = Lattice(d, [self.units.combine(k[:r]) for k in ker])
        return s0, L

    # -- normalized representatives ---------------------------------------------

    def normalize(self, m) -> tuple:
        """Representative with the most identity slots, then the canonical pick."""
        m = tuple(self._elt(s) for s in m)
        n = len(m)
        node0, t0 = self._split(m)
        comp = self._component(node0)
        r = self.r
        best = None
        for node, phi in comp.nodes.items():
            base = tuple(a + q - p for a, p, q in zip(t0, comp.nodes[node0], phi))
            zeros = [i for i, c in enumerate(node) if c == self._zero]
            for size in range(len(zeros), -1, -1):
                if best is not None and size < best[0]:
                    break
                found = False
                for S in combinations(zeros, size):
                    t = self._offset_with_zeros(base, comp.cycles, S, n)
                    if t is None:
                        continue
                    found = True
                    slots = self._join(node, t)
                    key = (-size, tuple(i in S for i in range(n)),
                           tuple(self._slot_key(node[i], t[i * r:(i + 1) * r])
                                 for i in range(n)))
                    if best is None or key < best[1]:
                        best = (size, key, slots)
                if found:
                    break
        return best[2]

    def _slot_key(self, c, t):
        return (self.qm.order_key(c), c, t)

    def _offset_with_zeros(self, base, C: Lattice, S, n) -> Optional[tuple]:
        """Canonical t in base + C with t vanishing on the slots S, or None."""
        r = self.r
        if r == 0:
            return ()
        idx = [i * r + k for i in S for k in range(r)]
        if not idx:
            return C.reduce(base)
        # find c in C with (base + c)_idx = 0
        rows = [[row[j] for j in idx] for row in C.basis]
        target = tuple(-base[j] for j in idx)
        if not rows:
            return base if not any(target) else None
        sol = solve_integer(rows, target, len(idx))
        if sol is None:
            return None
        x0, ker = sol
        t = list(base)
        for coef, row in zip(x0, C.basis):
            t = [a + coef * b for a, b in zip(t, row)]
        sub = [tuple(sum(k[q] * C.basis[q][j] for q in range(len(k)))
                     for j in range(len(base))) for k in ker]
        sub_lat = Lattice(len(base), [v for v in sub if any(v)])
        return sub_lat.reduce(t)

    def is_normalized(self, m) -> bool:
        """True when no representative has more identity slots."""
        m = tuple(self._elt(s) for s in m)
        have = sum(1 for s in m if s == self._zero)
        best = self.normalize(m)
        return have == sum(1 for s in best if s == self._zero)

    def fiber_classes(self, m) -> list[tuple]:
        """Class tuples reachable from m (the sigma-bar level fiber component)."""
        node, _ = self._split(tuple(self._elt(s) for s in m))
        return sorted(self._component(node).nodes)


def mu(T: TensorPower, i: int, j: int, m) -> tuple:
    return T.mu(i, j, m)


def xi(T: TensorPower, i: int, m) -> tuple:
    return T.xi(i, m)


def deg(T: TensorPower, m) -> tuple:
    return T.deg(m)


def tensor_equals(T: TensorPower, m1, m2) -> bool:
    return T.equals(m1, m2)


def unit_twist_solve(T: TensorPower, m1, m2, slots=(0, 1)):
    return T.unit_twist_solve(m1, m2, slots)


def normalize(T: TensorPower, m) -> tuple:
    return T.normalize(m)
