import pytest
from hypothesis import assume, given, settings, strategies as st

from quadselmer.errors import DomainError
from quadselmer.field import make_field, signature
from quadselmer.ideals import UNIT_IDEAL, Ideal, principal_ideal, split_prime
from quadselmer.reduction import (
    form_to_ideal,
    fundamental_unit,
    principal_generator,
    reduce_definite,
    strict_generator,
    walk,
)

# (d, (x, y)) en la base {1, ω}
KNOWN_UNITS = [
    (2, (1, 1)),
    (3, (2, 1)),
    (5, (0, 1)),
    (6, (5, 2)),
    (7, (8, 3)),
    (10, (3, 1)),
    (13, (1, 1)),
    (19, (170, 39)),
    (31, (1520, 273)),
    (34, (35, 6)),
    (94, (2143295, 221064)),
]


@pytest.mark.parametrize("d,xy", KNOWN_UNITS)
def test_fundamental_unit(d, xy):
    F = make_field(d)
    assert fundamental_unit(F) == F.element(*xy)


def test_fundamental_unit_only_for_real_fields():
    with pytest.raises(DomainError):
        fundamental_unit(make_field(-5))


def test_reduce_definite_principal_and_not():
    F = make_field(-5)
    p2 = split_prime(F, 2).primes[0]
    red = reduce_definite(F, p2)
    assert red.a == 2
    assert form_to_ideal(F, red.a, red.B) == p2
    unit = reduce_definite(F, UNIT_IDEAL)
    assert (unit.a, unit.B, unit.C) == (1, 0, 5)


def test_walk_of_q_sqrt34_reaches_unit(field34):
    path, start = walk(field34, UNIT_IDEAL)
    assert start == 0
    assert path[0].ideal == UNIT_IDEAL
    # ciclo principal de longitud par con normas 1, 9, 2, 9
    assert [st.ideal.a for st in path] == [1, 9, 2, 9]


def test_generator_of_ramified_prime_over_2(field34):
    p2 = split_prime(field34, 2).primes[0]
    gamma = principal_generator(field34, p2)
    assert gamma is not None
    assert principal_ideal(field34, gamma) == p2
    assert abs(gamma.norm()) == 2
    # 6 − √34 ≫ 0
    strict = strict_generator(field34, p2)
    assert strict is not None
    assert signature(field34, strict) == (0, 0)


def test_non_principal_prime(field10):
    p3 = split_prime(field10, 3).primes[0]
    assert principal_generator(field10, p3) is None
    assert strict_generator(field10, p3) is None


def test_rational_generators(rational):
    assert principal_generator(rational, Ideal(1, 7, 0)) == rational.element(7)
    assert strict_generator(rational, Ideal(1, 7, 0)) == rational.element(7)


@pytest.mark.parametrize("d", [-23, -5, -1, 2, 3, 10, 15, 34, 79])
@settings(max_examples=40)
@given(x=st.integers(-25, 25), y=st.integers(-25, 25))
def test_principal_ideals_have_generators(d, x, y):
    F = make_field(d)
    a = F.element(x, y)
    assume(not a.is_zero())
    I = principal_ideal(F, a)
    gamma = principal_generator(F, I)
    assert gamma is not None
    assert principal_ideal(F, gamma) == I


@pytest.mark.parametrize("d", [2, 3, 10, 15, 34])
@settings(max_examples=40)
@given(x=st.integers(-25, 25), y=st.integers(-25, 25))
def test_strict_generator_of_totally_positive_square(d, x, y):
    F = make_field(d)
    a = F.element(x, y)
    assume(not a.is_zero())
    sq = a * a
    gamma = strict_generator(F, principal_ideal(F, sq))
    assert gamma is not None
    assert not any(signature(F, gamma))
