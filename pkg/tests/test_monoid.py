import itertools

import pytest
from hypothesis import given, settings, strategies as st

from torq.errors import EmptyGenerators, ImageNotInTarget, RelationsNotRespected
from torq.monoid import AffineMonoid, QuotientMonoid, hom_new, presentation, vadd

MONOIDS = [
    AffineMonoid(1, [[2], [3]]),
    AffineMonoid(2, [[1, 0], [1, 1], [1, 2]]),
    AffineMonoid(2, [[1, 0], [0, 1], [0, -1]]),
    AffineMonoid(2, [[2, 0], [-2, 0], [0, 1], [1, 1]]),
    AffineMonoid(3, [[1, 0, 0], [0, 1, 0], [1, 1, 2]]),
]


def combos(sigma, bound):
    for m in itertools.product(range(bound + 1), repeat=sigma.ngens):
        v = tuple([0] * sigma.d)
        for c, g in zip(m, sigma.generators):
            v = vadd(v, tuple(c * a for a in g))
        yield m, v


def test_numerical_semigroup_gaps():
    S = AffineMonoid(1, [[2], [3]])
    assert S.contains((1,)) is None
    assert all(S.contains((n,)) is not None for n in (0, 2, 3, 4, 5, 7))
    assert S.pointed and S.units.rank == 0


def test_units_of_torsion_example():
    S = AffineMonoid(2, [[2, 0], [-2, 0], [0, 1], [1, 1]])
    assert S.units.rank == 1 and (2, 0) in S.units
    assert S.is_unit((-2, 0)) and not S.is_unit((1, 1))
    assert S.contains((-1, 1)) is not None
    q = QuotientMonoid(S)
    assert q.torsion == [2]


@pytest.mark.parametrize("sigma", MONOIDS, ids=str)
def test_witness_recombines(sigma):
    for _, v in combos(sigma, 2):
        w = sigma.contains(v)
        assert w is not None
        assert sigma.combine(w) == v


@pytest.mark.parametrize("sigma", [m for m in MONOIDS if not m.pointed], ids=str)
def test_units_form_a_group(sigma):
    B = sigma.units.basis
    for a, b in itertools.product(B, repeat=2):
        s = vadd(a, b)
        neg = tuple(-x for x in a)
        assert sigma.is_unit(s) and sigma.is_unit(neg)
        assert sigma.contains(neg) is not None


@settings(max_examples=200)
@given(st.sampled_from(MONOIDS), st.data())
def test_order_is_compatible_with_addition(sigma, data):
    q = QuotientMonoid(sigma)
    mult = lambda: data.draw(st.lists(st.integers(0, 3), min_size=sigma.ngens,
                                      max_size=sigma.ngens))
    u, v = sigma.combine(mult()), sigma.combine(mult())
    w = vadd(u, v)
    assert q.compare(u, w) in ("lt", "eq")
    assert q.compare(v, w) in ("lt", "eq")
    if not sigma.is_unit(u) and not sigma.is_unit(v):
        assert q.compare(u, w) == "lt" and q.compare(v, w) == "lt"
    # the key lives in a well-ordered set: first coordinate is a nonnegative integer
    assert q.order_key(w)[0][0] >= 0


@pytest.mark.parametrize("sigma", MONOIDS, ids=str)
def test_presentation_is_homogeneous(sigma):
    for b in presentation(sigma).binomials():
        degs = {sigma.combine(e) for e in b}
        assert len(degs) == 1


def test_cusp_presentation():
    b = presentation(AffineMonoid(1, [[2], [3]])).binomials()
    assert len(b) == 1 and set(b[0]) == {(3, 0), (0, 2)}


def test_hom_checks():
    tau = AffineMonoid(1, [[2], [3]])
    N = AffineMonoid(1, [[1]])
    assert hom_new(tau, N, [[2], [3]]).apply((5,)) == (5,)
    with pytest.raises(RelationsNotRespected):
        hom_new(tau, N, [[1], [1]])
    with pytest.raises(ImageNotInTarget):
        hom_new(tau, N, [[-2], [-3]])
    with pytest.raises(EmptyGenerators):
        AffineMonoid(1, [])
