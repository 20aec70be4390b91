import itertools
from collections import deque

import pytest
from hypothesis import given, settings, strategies as st

from conftest import PROPERTY_CASES
from torq.errors import FiberBudgetExceeded, NotASubmonoid
from torq.monoid import AffineMonoid, vadd, vsub
from torq.tensor import TensorPower

N = AffineMonoid(1, [[1]])
N2 = AffineMonoid(2, [[1, 0], [0, 1]])
CONE = AffineMonoid(2, [[1, 0], [1, 1], [1, 2]])
Z = AffineMonoid(1, [[1], [-1]])
NZ = AffineMonoid(2, [[1, 0], [0, 1], [0, -1]])

# (sigma, tau images) pairs; pointed ones admit an exact raw BFS oracle
POINTED = [(N, [[2], [3]]), (N, [[2]]), (N2, [[1, 1]]), (N2, [[2, 0], [0, 1]]),
           (CONE, [[1, 1]]), (CONE, [[2, 0], [1, 2]])]
WITH_UNITS = [(Z, [[2], [-2]]), (NZ, [[1, 1]]), (NZ, [[2, 0], [0, 1], [0, -1]])]


def bfs_class(sigma, taus, m, limit=2000):
    """Naive closure of m under single tau transfers between slots."""
    seen = {m}
    queue = deque([m])
    while queue:
        cur = queue.popleft()
        for i, j in itertools.permutations(range(len(cur)), 2):
            for w in taus:
                a = vsub(cur[i], w)
                if sigma.contains(a) is None:
                    continue
                nxt = list(cur)
                nxt[i], nxt[j] = a, vadd(cur[j], w)
                nxt = tuple(nxt)
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
                    if len(seen) > limit:
                        return seen, False
    return seen, True


@st.composite
def monomials(draw, cases, n_range=(2, 3), size=3):
    sigma, taus = draw(st.sampled_from(cases))
    n = draw(st.integers(*n_range))
    elems = sigma.elements_up_to(size)
    m = tuple(draw(st.sampled_from(elems)) for _ in range(n))
    return sigma, taus, m


def test_reference_equalities():
    T = TensorPower(N, [[2], [3]], 2)
    assert T.equals((2, 0), (0, 2))
    assert not T.equals((1, 1), (2, 0))
    assert T.equals((4, 1), (4, 1))
    T3 = TensorPower(N, [[2], [3]], 3)
    assert T3.normalize((2, 3, 0)) == ((5,), (0,), (0,))
    assert TensorPower(N, [[2]], 2).normalize((0, 2)) == ((2,), (0,))


def test_structure_maps():
    T = TensorPower(N, [[2]], 3)
    assert T.mu(1, 2, (1, 2, 3)) == ((3,), (3,))
    assert T.mu(2, 3, (1, 2, 3)) == ((1,), (5,))
    assert T.xi(2, (1, 2)) == ((1,), (0,), (2,))
    assert T.xi(1, (0, 0)) == ((0,), (0,), (0,))
    assert T.deg((2, 3)) == (5,)
    with pytest.raises(IndexError):
        T.mu(1, 1, (1, 2, 3))
    with pytest.raises(IndexError):
        T.xi(5, (1, 2))


def test_unit_twist_coset():
    T = TensorPower(Z, [[2], [-2]], 2)
    s0, L = T.unit_twist_solve((3, 0), (0, 3))
    assert L.basis == ((2,),) and s0[0] % 2 == 1
    Tp = TensorPower(N, [[2], [3]], 2)
    s0, L = Tp.unit_twist_solve((2, 0), (0, 2))
    assert s0 == (0,) and L.rank == 0
    assert Tp.unit_twist_solve((1, 1), (2, 0)) is None


def test_bad_tau_and_budget():
    with pytest.raises(NotASubmonoid):
        TensorPower(N, [[-1]], 2)
    T = TensorPower(N, [[1]], 4, fiber_budget=10)
    with pytest.raises(FiberBudgetExceeded):
        T.equals((6, 0, 0, 0), (0, 0, 0, 6))


@settings(max_examples=PROPERTY_CASES)
@given(monomials(POINTED), st.data())
def test_equals_matches_bfs_oracle(case, data):
    sigma, taus, m = case
    T = TensorPower(sigma, taus, len(m))
    cls, complete = bfs_class(sigma, taus, m)
    assert complete
    for other in cls:
        assert T.equals(m, other)
        assert T.deg(other) == T.deg(m)
    elems = sigma.elements_up_to(3)
    probe = tuple(data.draw(st.sampled_from(elems)) for _ in m)
    assert T.equals(m, probe) == (probe in cls)


@settings(max_examples=PROPERTY_CASES)
@given(monomials(WITH_UNITS, size=2))
def test_equals_sound_with_units(case):
    sigma, taus, m = case
    T = TensorPower(sigma, taus, len(m))
    cls, _ = bfs_class(sigma, taus, m, limit=300)
    assert all(T.equals(m, other) for other in cls)


@settings(max_examples=PROPERTY_CASES)
@given(monomials(POINTED + WITH_UNITS, size=2), st.data())
def test_maps_descend_to_classes(case, data):
    sigma, taus, m = case
    n = len(m)
    T = TensorPower(sigma, taus, n)
    cls, _ = bfs_class(sigma, taus, m, limit=50)
    other = data.draw(st.sampled_from(sorted(cls)))
    i, j = data.draw(st.sampled_from(list(itertools.permutations(range(1, n + 1), 2))))
    assert T.power(n - 1).equals(T.mu(i, j, m), T.mu(i, j, other))
    k = data.draw(st.integers(1, n + 1))
    assert T.power(n + 1).equals(T.xi(k, m), T.xi(k, other))
    # section identity
    if k <= n:
        assert T.power(n + 1).mu(k, k + 1, T.xi(k, m)) == m


@settings(max_examples=PROPERTY_CASES)
@given(monomials(POINTED + WITH_UNITS, n_range=(2, 4), size=2), st.data())
def test_simplicial_identities(case, data):
    sigma, taus, m = case
    T = TensorPower(sigma, taus, len(m))
    n = len(m)
    i = data.draw(st.integers(1, n + 1))
    j = data.draw(st.integers(i + 1, n + 2))
    # xi_j xi_i = xi_i xi_{j-1} for i < j
    assert T.xi(j, T.xi(i, m)) == T.xi(i, T.xi(j - 1, m))
    # merging the inserted identity into a neighbour gives m back
    lifted = T.xi(i, m)
    nb = i + 1 if i <= n else i - 1
    assert T.mu(nb, i, lifted) == m
    assert T.deg(T.mu(1, 2, m)) == T.deg(m)


@settings(max_examples=PROPERTY_CASES)
@given(monomials(POINTED, n_range=(2, 3)), st.data())
def test_normalized_stable_under_xi(case, data):
    """m is normalized iff xi_i(m) is normalized."""
    sigma, taus, m = case
    T = TensorPower(sigma, taus, len(m))
    i = data.draw(st.integers(1, len(m) + 1))
    assert T.is_normalized(m) == T.power(len(m) + 1).is_normalized(T.xi(i, m))


@settings(max_examples=PROPERTY_CASES)
@given(monomials(POINTED, n_range=(2, 3)))
def test_equal_normalized_pairs(case):
    """Equal normalized monomials: one non-identity slot carrying the degree, or same identity pattern."""
    sigma, taus, m = case
    T = TensorPower(sigma, taus, len(m))
    zero = tuple([0] * sigma.d)
    cls, _ = bfs_class(sigma, taus, m)
    normed = [x for x in cls if T.is_normalized(x)]
    for a, b in itertools.combinations(normed, 2):
        pa = [s == zero for s in a]
        pb = [s == zero for s in b]
        single = all(sum(not z for z in p) == 1 for p in (pa, pb))
        if single:
            assert T.deg(a) in a and T.deg(b) in b
        else:
            assert pa == pb


@settings(max_examples=200)
@given(monomials(POINTED + WITH_UNITS, size=2))
def test_normalize_idempotent(case):
    sigma, taus, m = case
    T = TensorPower(sigma, taus, len(m))
    r = T.normalize(m)
    assert T.equals(r, m)
    assert T.normalize(r) == r
