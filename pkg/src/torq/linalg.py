"""Dense exact linear algebra over a coefficient field (QQ or GF(p))."""
from __future__ import annotations

from typing import Optional, Sequence

from .gb.poly import QQ


def _echelon(M: list[list], F) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and pivot columns."""
    M = [list(r) for r in M]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.inv(M[r][c])
        M[r] = [F.norm(a * inv) for a in M[r]]
        for i in range(rows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [F.norm(a - f * b) for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return M, pivots


def rank(M: Sequence[Sequence], F=QQ) -> int:
    if not M or not M[0]:
        return 0
    return len(_echelon([[F(a) for a in r] for r in M], F)[1])


def kernel(M: Sequence[Sequence], ncols: int, F=QQ) -> list[list]:
    """Basis of {x : M x = 0}."""
    if not M:
        return [[F.one if i == j else F.zero for j in range(ncols)] for i in range(ncols)]
    E, piv = _echelon([[F(a) for a in r] for r in M], F)
    free = [c for c in range(ncols) if c not in piv]
    out = []
    for f in free:
        x = [F.zero] * ncols
        x[f] = F.one
        for i, c in enumerate(piv):
            x[c] = F.norm(-E[i][f])
        out.append(x)
    return out


def solve(M: Sequence[Sequence], b: Sequence, ncols: int, F=QQ) -> Optional[list]:
    """Some x with M x = b, or None."""
    rows = len(M)
    if rows == 0:
        return [F.zero] * ncols
    aug = [[F(a) for a in M[i]] + [F(b[i])] for i in range(rows)]
    E, piv = _echelon(aug, F)
    if ncols in piv:
        return None
    x = [F.zero] * ncols
    for i, c in enumerate(piv):
        x[c] = E[i][ncols]
    return x


def matmul(A: Sequence[Sequence], B: Sequence[Sequence], F=QQ) -> list[list]:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[F.norm(sum((A[i][t] * B[t][j] for t in range(inner)), F.zero))
             for j in range(cols)] for i in range(len(A))]


def matvec(A: Sequence[Sequence], x: Sequence, F=QQ) -> list:
    return [F.norm(sum((a * b for a, b in zip(row, x)), F.zero)) for row in A]
