import pytest
from hypothesis import assume, given, strategies as st

from quadselmer.errors import DomainError
from quadselmer.field import (
    RATIONAL,
    QuadField,
    is_square,
    is_square_mod4,
    make_field,
    mod4_coords,
    mod4_data,
    signature,
    sqrt_element,
)

FIELDS = [-5, -3, -2, -1, 2, 3, 5, 10, 13, 34]
coords = st.integers(-40, 40)


def test_make_field_shapes():
    F = make_field(5)
    assert (F.disc, F.r, F.s, F.n, F.omega_trace, F.omega_norm) == (5, 2, 0, 2, 1, -1)
    G = make_field(-1)
    assert (G.disc, G.r, G.s, G.n) == (-4, 0, 1, 2)
    assert make_field(RATIONAL) == QuadField.rational()
    assert QuadField.rational().label == "Q"


@pytest.mark.parametrize("d", [0, 1, 4, 12, -8])
def test_make_field_rejects(d):
    with pytest.raises(DomainError):
        make_field(d)


def test_omega_squared_relation():
    for d in FIELDS:
        F = make_field(d)
        w = F.omega
        assert w * w == w * F.omega_trace - F.one * F.omega_norm


@pytest.mark.parametrize("d", FIELDS)
@given(x1=coords, y1=coords, x2=coords, y2=coords)
def test_norm_is_multiplicative(d, x1, y1, x2, y2):
    F = make_field(d)
    a, b = F.element(x1, y1), F.element(x2, y2)
    assert (a * b).norm() == a.norm() * b.norm()
    assert a * a.conj() == F.element(a.norm())


def test_element_text():
    F = make_field(34)
    assert str(F.element(35, 6)) == "35+6√34"
    G = make_field(5)
    assert str(G.omega) == "(1+√5)/2"
    assert str(-G.one) == "-1"


def test_signature_examples(field10, field34):
    eps = field10.element(3, 1)
    assert signature(field10, eps) == (0, 1)
    assert signature(field10, -field10.one) == (1, 1)
    assert signature(field34, field34.element(35, 6)) == (0, 0)
    assert signature(make_field(-5), make_field(-5).element(1, 1)) == ()
    assert signature(QuadField.rational(), QuadField.rational().element(-3)) == (1,)


@pytest.mark.parametrize("d", [2, 3, 5, 10, 13, 34])
@given(x1=coords, y1=coords, x2=coords, y2=coords)
def test_signature_is_a_homomorphism(d, x1, y1, x2, y2):
    F = make_field(d)
    a, b = F.element(x1, y1), F.element(x2, y2)
    assume(not a.is_zero() and not b.is_zero())
    sa, sb = signature(F, a), signature(F, b)
    assert signature(F, a * b) == tuple(u ^ v for u, v in zip(sa, sb))


@pytest.mark.parametrize("d", FIELDS)
@given(x=coords, y=coords)
def test_square_roots_are_exact(d, x, y):
    F = make_field(d)
    a = F.element(x, y)
    assume(not a.is_zero())
    root = sqrt_element(F, a * a)
    assert root is not None
    assert root * root == a * a


def test_non_squares(field10):
    assert not is_square(field10, field10.element(5))
    assert is_square(field10, field10.element(10))  # (√10)²
    assert not is_square(field10, -field10.one)
    assert is_square(field10, field10.element(19, 6))  # (3+√10)²
    with pytest.raises(DomainError):
        is_square(field10, field10.element(0))


@pytest.mark.parametrize("d", FIELDS)
def test_mod4_quotient_has_dimension_n(d):
    F = make_field(d)
    assert mod4_data(F).dim == F.n


def test_mod4_on_rational_field(rational):
    assert is_square_mod4(rational, rational.element(5))
    assert not is_square_mod4(rational, rational.element(3))
    assert mod4_data(rational).dim == 1


def test_minus_one_mod4(field3, field34):
    assert is_square_mod4(field3, -field3.one)
    assert not is_square_mod4(field34, -field34.one)
    assert is_square_mod4(field34, field34.element(35, 6))
    with pytest.raises(DomainError):
        is_square_mod4(field34, field34.element(2))


@pytest.mark.parametrize("d", FIELDS)
def test_mod4_coords_homomorphism_over_all_residues(d):
    F = make_field(d)
    units = mod4_data(F).unit_residues
    for u in units:
        for v in units:
            a, b = F.element(*u), F.element(*v)
            ca, cb = mod4_coords(F, a), mod4_coords(F, b)
            assert mod4_coords(F, a * b) == tuple(x ^ y for x, y in zip(ca, cb))
