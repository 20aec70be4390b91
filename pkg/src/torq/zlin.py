"""Exact integer linear algebra: Hermite and Smith normal forms, lattices.

Matrices are plain lists of lists of Python ints (row-major). All routines
are pure and never mutate their arguments.
"""
from __future__ import annotations

from math import gcd, inf
from typing import Optional, Sequence

from .errors import DimensionMismatch, NotASublattice

Vector = tuple
Matrix = list


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    cols = len(B[0]) if B else 0
    return [[sum(a * B[k][j] for k, a in enumerate(row) if a) for j in range(cols)]
            for row in A]


def vecmat(v: Sequence[int], A: Matrix, ncols: Optional[int] = None) -> tuple:
    if ncols is None:
        ncols = len(A[0]) if A else 0
    out = [0] * ncols
    for c, row in zip(v, A):
        if c:
            for j, a in enumerate(row):
                if a:
                    out[j] += c * a
    return tuple(out)


def transpose(A: Matrix, ncols: int = 0) -> Matrix:
    if not A:
        return [[] for _ in range(ncols)]
    return [list(col) for col in zip(*A)]


def det(A: Matrix) -> int:
    """Determinant via fraction-free (Bareiss) elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def _row_sub(M, i, r, q):
    # row_i -= q * row_r
    Mi, Mr = M[i], M[r]
    for j, a in enumerate(Mr):
        if a:
            Mi[j] -= q * a


def hnf(M: Matrix, ncols: Optional[int] = None) -> tuple[Matrix, Matrix]:
    """Row Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``H = U * M``. ``H`` is in
    echelon form with positive pivots, entries above each pivot reduced into
    ``[0, pivot)`` and zero rows collected at the bottom.
    """
    m = len(M)
    n = len(M[0]) if m else (ncols or 0)
    H = [list(r) for r in M]
    U = identity(m)
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if H[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(H[i][c]))
            if piv != r:
                H[r], H[piv] = H[piv], H[r]
                U[r], U[piv] = U[piv], U[r]
            clean = True
            for i in range(r + 1, m):
                if H[i][c]:
                    q = H[i][c] // H[r][c]
                    _row_sub(H, i, r, q)
                    _row_sub(U, i, r, q)
                    if H[i][c]:
                        clean = False
            if clean:
                break
        if r >= m or H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-a for a in H[r]]
            U[r] = [-a for a in U[r]]
        for i in range(r):
            q = H[i][c] // H[r][c]
            if q:
                _row_sub(H, i, r, q)
                _row_sub(U, i, r, q)
        r += 1
    return H, U


def snf(M: Matrix, ncols: Optional[int] = None, with_inverses: bool = False):
    """Smith normal form ``D = U * M * V`` with ``d1 | d2 | ...``.

    With ``with_inverses`` the inverses of ``U`` and ``V`` are returned too,
    as ``(D, U, V, Uinv, Vinv)``.
    """
    m = len(M)
    n = len(M[0]) if m else (ncols or 0)
    D = [list(r) for r in M]
    U, V = identity(m), identity(n)
    Ui, Vi = identity(m), identity(n)

    def row_op(i, r, q):  # row_i -= q row_r
        _row_sub(D, i, r, q)
        _row_sub(U, i, r, q)
        # inverse: col_r += q col_i
        for row in Ui:
            row[r] += q * row[i]

    def row_swap(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]
        for row in Ui:
            row[i], row[j] = row[j], row[i]

    def row_neg(i):
        D[i] = [-a for a in D[i]]
        U[i] = [-a for a in U[i]]
        for row in Ui:
            row[i] = -row[i]

    def col_op(j, c, q):  # col_j -= q col_c
        for row in D:
            row[j] -= q * row[c]
        for row in V:
            row[j] -= q * row[c]
        # inverse: row_c += q row_j
        Vi[c] = [a + q * b for a, b in zip(Vi[c], Vi[j])]

    def col_swap(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    t = 0
    while t < min(m, n):
        entries = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        if pi != t:
            row_swap(t, pi)
        if pj != t:
            col_swap(t, pj)
        done = False
        while not done:
            done = True
            for i in range(t + 1, m):
                if D[i][t]:
                    row_op(i, t, D[i][t] // D[t][t])
                    if D[i][t]:
                        row_swap(t, i)
                        done = False
            for j in range(t + 1, n):
                if D[t][j]:
                    col_op(j, t, D[t][j] // D[t][t])
                    if D[t][j]:
                        col_swap(t, j)
                        done = False
            if done:
                p = D[t][t]
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if D[i][j] % p), None)
                if bad is not None:
                    # fold the offending row into the pivot row
                    row_op(t, bad[0], -1)
                    done = False
        if D[t][t] < 0:
            row_neg(t)
        t += 1
    if with_inverses:
        return D, U, V, Ui, Vi
    return D, U, V


def invariant_factors(M: Matrix) -> list[int]:
    D, _, _ = snf(M)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i]]


def primitive(v: Sequence[int]) -> tuple:
    g = 0
    for a in v:
        g = gcd(g, a)
    if g <= 1:
        return tuple(v)
    return tuple(a // g for a in v)


def solve_integer(A: Matrix, b: Sequence[int], ncols: Optional[int] = None):
    """All integer row vectors ``x`` with ``x * A = b``.

    Returns ``(x0, kernel_basis)`` or ``None`` if no solution exists; the
    solution set is ``x0 + span_Z(kernel_basis)``.
    """
    m = len(A)
    n = len(A[0]) if m else (ncols if ncols is not None else len(b))
    if len(b) != n:
        raise DimensionMismatch(f"right-hand side has {len(b)} entries, expected {n}")
    H, U = hnf(A, n)
    rank = sum(1 for row in H if any(row))
    coords = _echelon_solve(H[:rank], b)
    if coords is None:
        return None
    x0 = vecmat(coords, U[:rank], m) if rank else tuple([0] * m)
    return x0, [tuple(r) for r in U[rank:]]


def _echelon_solve(rows: Matrix, v: Sequence[int]) -> Optional[tuple]:
    res = list(v)
    coords = []
    for row in rows:
        p = next(j for j, a in enumerate(row) if a)
        if any(res[j] for j in range(p)):
            return None
        if res[p] % row[p]:
            return None
        c = res[p] // row[p]
        coords.append(c)
        if c:
            for j in range(p, len(row)):
                res[j] -= c * row[j]
    if any(res):
        return None
    return tuple(coords)


def left_kernel(A: Matrix, nrows: Optional[int] = None) -> list[tuple]:
    """Basis of the integer row vectors x with x * A = 0."""
    if not A:
        return [tuple(r) for r in identity(nrows or 0)]
    H, U = hnf(A)
    rank = sum(1 for row in H if any(row))
    return [tuple(r) for r in U[rank:]]


class Lattice:
    """A sublattice of Z^n stored by its row-HNF basis (canonical)."""

    __slots__ = ("ambient_rank", "basis", "_pivots")

    def __init__(self, ambient_rank: int, generators: Sequence[Sequence[int]] = ()):
        gens = [tuple(int(a) for a in g) for g in generators]
        for g in gens:
            if len(g) != ambient_rank:
                raise DimensionMismatch(f"vector {g} not in Z^{ambient_rank}")
        self.ambient_rank = ambient_rank
        if gens:
            H, _ = hnf([list(g) for g in gens], ambient_rank)
            self.basis = tuple(tuple(r) for r in H if any(r))
        else:
            self.basis = ()
        self._pivots = tuple(next(j for j, a in enumerate(r) if a) for r in self.basis)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __eq__(self, other):
        return (isinstance(other, Lattice) and self.ambient_rank == other.ambient_rank
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.ambient_rank, self.basis))

    def __repr__(self):
        return f"Lattice({self.ambient_rank}, {list(self.basis)})"

    def member(self, v: Sequence[int]) -> Optional[tuple]:
        return lattice_member(self, v)

    def __contains__(self, v) -> bool:
        return lattice_member(self, v) is not None

    def combine(self, coords: Sequence[int]) -> tuple:
        return vecmat(coords, [list(r) for r in self.basis], self.ambient_rank)

    def reduce(self, v: Sequence[int]) -> tuple:
        """Canonical representative of the coset v + L."""
        res = list(v)
        for row, p in zip(self.basis, self._pivots):
            q = res[p] // row[p]
            if q:
                for j in range(p, len(row)):
                    res[j] -= q * row[j]
        return tuple(res)

    def contains_lattice(self, other: "Lattice") -> bool:
        return all(b in self for b in other.basis)

    def saturation(self, within: Optional["Lattice"] = None) -> "Lattice":
        return saturate(self, within)

    def __add__(self, other: "Lattice") -> "Lattice":
        return Lattice(self.ambient_rank, self.basis + other.basis)


def full_lattice(n: int) -> Lattice:
    return Lattice(n, identity(n))


def lattice_member(L: Lattice, v: Sequence[int]) -> Optional[tuple]:
    if len(v) != L.ambient_rank:
        raise DimensionMismatch(f"vector of length {len(v)} in Z^{L.ambient_rank}")
    return _echelon_solve([list(r) for r in L.basis], v)


def _coords_in(L1: Lattice, L2: Lattice) -> Matrix:
    rows = []
    for b in L1.basis:
        c = L2.member(b)
        if c is None:
            raise NotASublattice(f"{b} is not in the larger lattice")
        rows.append(list(c))
    return rows


def lattice_quotient(L1: Lattice, L2: Lattice) -> dict:
    """Structure of L2 / L1 for L1 contained in L2."""
    if L1.ambient_rank != L2.ambient_rank:
        raise DimensionMismatch("lattices live in different ambient groups")
    A = _coords_in(L1, L2)
    if not A:
        return {"index": 1 if L2.rank == 0 else inf, "torsion_invariants": [],
                "free_rank": L2.rank}
    D, _, _ = snf(A, L2.rank)
    diag = [D[i][i] for i in range(min(len(D), L2.rank)) if D[i][i]]
    index = inf
    if len(diag) == L2.rank:
        index = 1
        for d in diag:
            index *= d
    return {"index": index, "torsion_invariants": [d for d in diag if d > 1],
            "free_rank": L2.rank - len(diag)}


def saturate(L: Lattice, within: Optional[Lattice] = None) -> Lattice:
    """(L tensor Q) intersected with ``within`` (default Z^n), via SNF."""
    n = L.ambient_rank
    if within is None:
        within = full_lattice(n)
    if L.rank == 0:
        return Lattice(n)
    A = _coords_in(L, within)
    D, _, _, _, Vi = snf(A, within.rank, with_inverses=True)
    r = sum(1 for i in range(min(len(D), within.rank)) if D[i][i])
    basis = [within.combine(Vi[i]) for i in range(r)]
    return Lattice(n, basis)


def quotient_map(sub: Lattice, within: Lattice):
    """Integer matrix P with x -> coords_within(x) * P, kernel exactly sat(sub).

    Returns ``(P, free_rank)``; the image is Z^free_rank.
    """
    R = within.rank
    if sub.rank == 0:
        return identity(R), R
    A = _coords_in(sub, within)
    D, _, V = snf(A, R)
    r = sum(1 for i in range(min(len(D), R)) if D[i][i])
    P = [row[r:] for row in V]
    return P, R - r
