import pytest
from hypothesis import assume, given, settings, strategies as st

from quadselmer.errors import DomainError, InconclusiveError, UsageError
from quadselmer.field import QuadField, is_square, make_field
from quadselmer.ideals import principal_ideal
from quadselmer.selmer import (
    BaseChange,
    Modulus,
    SelmerKind,
    conductor_class,
    coprime_representative,
    expected_dims,
    is_singular,
    ray_2ranks,
    same_class,
    selmer_base_change,
    selmer_coordinates,
    selmer_space,
    selmer_subspace,
)


def _dims(F):
    return tuple(selmer_subspace(F, k).dim for k in SelmerKind)


def test_q_sqrt10_selmer_groups(field10):
    assert _dims(field10) == (3, 1, 1, 1)
    five = field10.element(5)
    for kind in (SelmerKind.PLUS, SelmerKind.FOUR, SelmerKind.FOUR_PLUS):
        assert selmer_coordinates(selmer_subspace(field10, kind), five) == (1,)
    # 2 y 5 definen la misma clase: 10 = (√10)²
    assert same_class(field10, five, field10.element(2))


def test_rational_selmer_group(rational):
    S = selmer_space(rational)
    assert S.dim == 1
    assert same_class(rational, S.basis[0], -rational.one)
    assert selmer_subspace(rational, SelmerKind.FOUR_PLUS).dim == 0


@pytest.mark.parametrize(
    "d,ranks",
    [(3, (1, 2)), (-1, (1, 1)), (10, (1, 3)), (34, (1, 3))],
)
def test_ray_ranks(d, ranks):
    r = ray_2ranks(make_field(d))
    assert (r.rho_4, r.rho_4_plus) == ranks


@pytest.mark.parametrize("d", [-21, -14, -5, -1, -3, 2, 3, 5, 6, 10, 15, 34, 39, 79, 105])
def test_dimensions_match_closed_forms(d):
    F = make_field(d)
    want = expected_dims(F)
    for kind in SelmerKind:
        assert selmer_subspace(F, kind).dim == want[kind]


@pytest.mark.parametrize("d", [-21, -5, 10, 15, 34])
def test_basis_is_singular_and_independent(d):
    F = make_field(d)
    S = selmer_space(F)
    for a in S.basis:
        assert is_singular(F, a)
    for a, b in zip(S.basis, S.basis[1:]):
        assert not same_class(F, a, b)


def test_is_singular(field10):
    assert is_singular(field10, field10.element(5))
    assert is_singular(field10, field10.element(2))
    assert not is_singular(field10, field10.element(3))


@pytest.mark.parametrize("d", [-5, 10, 15, 34])
def test_coprime_representative(d):
    F = make_field(d)
    for a in selmer_space(F).basis:
        rep = coprime_representative(F, a, Modulus.FOUR, avoid=3 * 5 * 7)
        assert same_class(F, a, rep)
        assert rep.norm() % 2 and rep.norm() % 3 and rep.norm() % 5 and rep.norm() % 7
        assert is_singular(F, rep)


@pytest.mark.parametrize("xy", [(3, 0), (7, 0), (1, 2), (3, 2)])
@pytest.mark.parametrize("modulus", list(Modulus))
def test_coprime_representative_rejects_non_singular(field10, xy, modulus):
    # normas impares: ya coprimos con 4, pero (α) no es un cuadrado
    a = field10.element(*xy)
    assert a.norm() % 2
    with pytest.raises(DomainError):
        coprime_representative(field10, a, modulus)
    with pytest.raises(DomainError):
        coprime_representative(field10, a, modulus, avoid=3)


def test_coprime_representative_rejects_zero(field10):
    with pytest.raises(DomainError):
        coprime_representative(field10, field10.element(0))


def test_larger_bound_settles_coprime_representative(field10):
    # 𝔭₂ no es principal; 𝔭₂𝔭₃ sí, y 𝔭₃ no cabe en cota 2
    two = field10.element(2)
    with pytest.raises(InconclusiveError) as exc:
        coprime_representative(field10, two, Modulus.FOUR, bound=2)
    assert exc.value.bound == 2
    rep = coprime_representative(field10, two, Modulus.FOUR, bound=3)
    assert rep.norm() % 2
    assert same_class(field10, rep, two)
    assert is_singular(field10, rep)


def test_selmer_space_recovers_with_larger_bound(clean_cache, field10):
    with pytest.raises(InconclusiveError):
        selmer_space(field10, bound=2)
    assert selmer_space(field10, bound=3).dim == 3
    assert selmer_subspace(field10, SelmerKind.FOUR, bound=3).dim == 1
    assert ray_2ranks(field10, bound=3).rho_4_plus == 3


def test_conductor_classes(field10, rational):
    assert conductor_class(field10, field10.element(5)) is Modulus.ONE
    assert conductor_class(field10, -field10.one) is Modulus.FOUR_INF
    assert conductor_class(rational, -rational.one) is Modulus.FOUR_INF
    assert conductor_class(make_field(3), -make_field(3).one) is Modulus.INF


def test_modulus_divides():
    assert Modulus.ONE.divides(Modulus.FOUR_INF)
    assert Modulus.INF.divides(Modulus.FOUR_INF)
    assert not Modulus.FOUR.divides(Modulus.INF)
    assert not Modulus.FOUR_INF.divides(Modulus.FOUR)


def test_base_change(field10):
    Q = QuadField.rational()
    assert selmer_base_change("lift", -1, field10) == -field10.one
    assert selmer_base_change(BaseChange.NORM, field10.element(5), field10) == Q.element(1)
    eps = field10.element(3, 1)
    assert selmer_base_change(BaseChange.NORM, eps, field10) == Q.element(-1)
    with pytest.raises(UsageError):
        selmer_base_change("sideways", 2, field10)


@pytest.mark.parametrize("d", [-5, 2, 10, 34])
@settings(max_examples=30)
@given(a=st.integers(-500, 500).filter(lambda n: n != 0))
def test_norm_of_lift_is_trivial(d, a):
    F = make_field(d)
    back = selmer_base_change(BaseChange.NORM, selmer_base_change(BaseChange.LIFT, a, F), F)
    assert back.x == 1


@pytest.mark.parametrize("d", [10, 34])
@settings(max_examples=30)
@given(x=st.integers(-20, 20), y=st.integers(-20, 20))
def test_squares_have_trivial_coordinates(d, x, y):
    F = make_field(d)
    g = F.element(x, y)
    assume(not g.is_zero())
    S = selmer_space(F)
    assert selmer_coordinates(S, g * g) == (0,) * S.dim
    assert is_square(F, g * g)
    assert principal_ideal(F, g * g).norm == g.norm() ** 2
