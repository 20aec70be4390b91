import itertools

import pytest
from hypothesis import given, settings, strategies as st

from conftest import PROPERTY_CASES
from torq.errors import DimensionMismatch
from torq.zlin import (Lattice, det, hnf, lattice_member, lattice_quotient, left_kernel,
                       matmul, saturate, snf, solve_integer, vecmat)

small = st.integers(-5, 5)


def matrices(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


@st.composite
def unimodular(draw, n):
    """Random product of elementary row operations."""
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(draw(st.integers(0, 6))):
        i, j = draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))
        if i != j:
            q = draw(st.integers(-3, 3))
            U[i] = [a + q * b for a, b in zip(U[i], U[j])]
        else:
            U[i] = [-a for a in U[i]]
    return U


def test_hnf_small():
    H, U = hnf([[2, 4], [3, 5]])
    assert H == [[1, 1], [0, 2]]
    assert matmul(U, [[2, 4], [3, 5]]) == H
    assert abs(det(U)) == 1


def test_snf_divisibility_and_det():
    D, U, V = snf([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    diag = [D[i][i] for i in range(3)]
    assert diag == [2, 6, 12]
    assert abs(det([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])) == 2 * 6 * 12


@settings(max_examples=PROPERTY_CASES)
@given(matrices(3, 3), unimodular(3))
def test_hnf_canonical(M, U):
    H, _ = hnf(M)
    assert hnf(H)[0] == H
    assert hnf(matmul(U, M))[0] == H


@settings(max_examples=200)
@given(matrices(3, 3))
def test_snf_chain(M):
    D, U, V = snf(M)
    assert matmul(matmul(U, M), V) == D
    diag = [D[i][i] for i in range(3)]
    nz = [d for d in diag if d]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert abs(det(M)) == (0 if len(nz) < 3 else abs(nz[0] * nz[1] * nz[2]))


@settings(max_examples=200)
@given(st.sampled_from([2, 3]), st.data())
def test_member_bruteforce(n, data):
    M = data.draw(matrices(n, n))
    v = tuple(data.draw(st.lists(st.integers(-6, 6), min_size=n, max_size=n)))
    L = Lattice(n, M)
    hit = any(tuple(sum(c * r[j] for c, r in zip(cs, M)) for j in range(n)) == v
              for cs in itertools.product(range(-6, 7), repeat=n))
    got = lattice_member(L, v)
    if hit:
        assert got is not None
    if got is not None:
        assert L.combine(got) == v


def test_solve_integer_and_kernel():
    x0, ker = solve_integer([[2, 0], [0, 3]], (4, 9))
    assert vecmat(x0, [[2, 0], [0, 3]]) == (4, 9)
    assert ker == [] or all(not any(vecmat(k, [[2, 0], [0, 3]])) for k in ker)
    assert solve_integer([[2, 0], [0, 2]], (1, 0)) is None
    K = left_kernel([[1, 1], [2, 2], [0, 1]])
    assert all(not any(vecmat(k, [[1, 1], [2, 2], [0, 1]])) for k in K)
    assert len(K) == 1


def test_lattice_quotient_and_saturate():
    q = lattice_quotient(Lattice(2, [[2, 0], [0, 3]]), Lattice(2, [[1, 0], [0, 1]]))
    assert q["index"] == 6 and q["torsion_invariants"] == [6]
    q = lattice_quotient(Lattice(2, [[2, 0]]), Lattice(2, [[1, 0], [0, 1]]))
    assert q["index"] == float("inf") and q["free_rank"] == 1
    assert saturate(Lattice(2, [[2, 4]])) == Lattice(2, [[1, 2]])


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        Lattice(2, [[1, 2, 3]])
