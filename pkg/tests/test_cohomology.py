import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gci.ambient import Ambient, LineBundle
from gci.cohomology import (
    bott_dims,
    cohomology_dims,
    h0_basis,
    h1_cech_basis,
    h1_group,
)
from gci.errors import BasisUnavailableError, DegreeError


def test_bott_p1_degree_3():
    assert bott_dims(1, 3) == (4, 0)


def test_bott_p1_no_cohomology():
    assert bott_dims(1, -1) == (0, 0)


def test_bott_p1_degree_minus_4():
    assert bott_dims(1, -4) == (0, 3)


def test_bott_p4_trivial():
    assert bott_dims(4, 0) == (1, 0, 0, 0, 0)


def test_dims_worked_cases(cy_ambient):
    assert cohomology_dims(LineBundle(cy_ambient, (2, 3)))[0] == 60
    assert cohomology_dims(LineBundle(cy_ambient, (1, -4)))[1] == 15


def test_dims_reducible_cases(reducible_ambient):
    assert cohomology_dims(LineBundle(reducible_ambient, (3, 0, 0, -6)))[1] == 50
    assert cohomology_dims(LineBundle(reducible_ambient, (3, 1, 1, -2)))[1] == 40


def test_dims_vanishing_line():
    amb = Ambient.product([1])
    assert cohomology_dims(LineBundle(amb, (-1,))) == (0, 0)


def test_h0_basis_p1_cubics():
    amb = Ambient.product([1], names=[["z0", "z1"]])
    basis = h0_basis(LineBundle(amb, (3,)))
    assert [str(b) for b in basis] == ["z0^3", "z0^2*z1", "z0*z1^2", "z1^3"]


def test_h0_basis_p4_linear(cy_ambient):
    basis = h0_basis(LineBundle(cy_ambient, (1, 0)))
    assert [str(b) for b in basis] == ["y0", "y1", "y2", "y3", "y4"]


def test_h0_basis_degree_zero(cy_ambient):
    basis = h0_basis(LineBundle(cy_ambient, (0, 0)))
    assert len(basis) == 1 and str(basis[0]) == "1"


def test_h0_basis_rejects_negative_degree(cy_ambient):
    with pytest.raises(DegreeError):
        h0_basis(LineBundle(cy_ambient, (1, -4)))


def test_h1_basis_worked_case(cy_ambient):
    group = h1_cech_basis(LineBundle(cy_ambient, (1, -4)), 1)
    assert group.dimension == 15
    assert group.concentration == (0, 1)
    names = [str(b) for b in group.basis]
    assert names[:3] == ["y0*z0^-1*z1^-3", "y0*z0^-2*z1^-2", "y0*z0^-3*z1^-1"]
    assert names[-1] == "y4*z0^-3*z1^-1"


def test_h1_basis_single_element():
    amb = Ambient.product([1], names=[["z0", "z1"]])
    group = h1_cech_basis(LineBundle(amb, (-2,)), 0)
    assert [str(b) for b in group.basis] == ["z0^-1*z1^-1"]


def test_h1_basis_rejects_degree_minus_one():
    amb = Ambient.product([1], names=[["z0", "z1"]])
    with pytest.raises(BasisUnavailableError):
        h1_cech_basis(LineBundle(amb, (-1,)), 0)


def test_h1_basis_rejects_mixed_summands():
    amb = Ambient.product([1, 1], distinguished=1)
    with pytest.raises(BasisUnavailableError):
        h1_cech_basis(LineBundle(amb, (-2, -4)), 1)


def test_h1_basis_rejects_non_p1_factor():
    amb = Ambient.product([2, 1], distinguished=1)
    with pytest.raises(BasisUnavailableError):
        h1_cech_basis(LineBundle(amb, (-3, 1)), 0)


def test_h1_group_zero_dimensional(cy_ambient):
    group = h1_group(LineBundle(cy_ambient, (3, -1)), 1)
    assert group.dimension == 0
    assert group.basis == ()


@pytest.mark.parametrize("n", range(1, 5))
def test_serre_duality(n):
    for k in range(-12, 13):
        forward = bott_dims(n, k)
        backward = bott_dims(n, -k - n - 1)
        for q in range(n + 1):
            assert forward[q] == backward[n - q]


def test_euler_characteristic_p1():
    for k in range(-12, 13):
        h0, h1 = bott_dims(1, k)
        assert h0 - h1 == k + 1


def test_h0_basis_length_matches_dims():
    rng = random.Random(5)
    for _ in range(100):
        dims = [rng.randint(1, 3) for _ in range(rng.randint(1, 3))]
        amb = Ambient.product(dims)
        bundle = LineBundle(amb, tuple(rng.randint(0, 3) for _ in dims))
        assert len(h0_basis(bundle)) == cohomology_dims(bundle)[0]


@given(st.integers(0, 4), st.integers(-8, -2))
def test_h1_basis_length_matches_dims(base_degree, twist):
    amb = Ambient.product([2, 1], distinguished=1)
    bundle = LineBundle(amb, (base_degree, twist))
    group = h1_cech_basis(bundle, 1)
    assert group.dimension == cohomology_dims(bundle)[1]


def test_dims_are_kunneth_convolutions():
    rng = random.Random(17)
    for _ in range(200):
        dims = [rng.randint(1, 3) for _ in range(rng.randint(1, 3))]
        amb = Ambient.product(dims)
        degrees = tuple(rng.randint(-6, 6) for _ in dims)
        got = cohomology_dims(LineBundle(amb, degrees))
        # direct Kunneth sum over all per-factor degree splittings
        total_dim = sum(dims)
        expected = [0] * (total_dim + 1)
        per_factor = [bott_dims(n, k) for n, k in zip(dims, degrees)]

        def accumulate(i, r, product):
            if product == 0:
                return
            if i == len(per_factor):
                expected[r] += product
                return
            for qd, h in enumerate(per_factor[i]):
                accumulate(i + 1, r + qd, product * h)

        accumulate(0, 0, 1)
        assert list(got) == expected
