from fractions import Fraction

import pytest

from hypothesis import given, settings
from hypothesis import strategies as st

from drmonoid.common import CapExceededError, PreconditionError
from drmonoid.field_core import (
    UNIT_IDEAL,
    FieldElement,
    FieldError,
    FieldKind,
    IdealHNF,
    SplittingType,
    make_field,
)
from drmonoid.limits import init_limits


DISCRIMINANTS = [-3, -4, -7, -8, -15, -20, -23]


@pytest.mark.parametrize(
    "descriptor, kind, unit_order",
    [
        ("Q", FieldKind.RATIONAL, 2),
        (1, FieldKind.RATIONAL, 2),
        (-4, FieldKind.IMAGINARY_QUADRATIC, 4),
        ("-3", FieldKind.IMAGINARY_QUADRATIC, 6),
        (-7, FieldKind.IMAGINARY_QUADRATIC, 2),
        (-8, FieldKind.IMAGINARY_QUADRATIC, 2),
    ],
)
def test_make_field(descriptor, kind, unit_order):
    field = make_field(descriptor)
    assert field.kind is kind
    assert field.unit_order == unit_order
    assert len(field.units()) == unit_order


@pytest.mark.parametrize("descriptor", [5, -1, -2, -12, -16, "x", "Q(i)"])
def test_make_field_rejects(descriptor):
    with pytest.raises(FieldError):
        make_field(descriptor)


def test_descriptor():
    assert make_field("Q").descriptor == "Q"
    assert make_field(-4).descriptor == "-4"
    assert str(make_field(-4)) == "Q(sqrt(-1))"
    assert str(make_field(-7)) == "Q(sqrt(-7))"


@pytest.mark.parametrize(
    "p, expected",
    [(5, SplittingType.SPLIT), (3, SplittingType.INERT), (2, SplittingType.RAMIFIED)],
)
def test_splitting_gaussian(gaussian, p, expected):
    assert gaussian.splitting_type(p) is expected


def test_splitting_needs_prime(gaussian):
    with pytest.raises(PreconditionError):
        gaussian.splitting_type(9)


def test_primes_above_gaussian(gaussian):
    above5 = gaussian.primes_above(5)
    assert [(P.norm, f) for P, f in above5] == [(5, 1), (5, 1)]
    assert gaussian.primes_above(3) == [(gaussian.rational_ideal(3), 2)]
    (P2, f2), = gaussian.primes_above(2)
    assert f2 == 1 and gaussian.ideal_mul(P2, P2) == gaussian.rational_ideal(2)


def test_primes_above_rational(Q):
    assert Q.primes_above(7) == [(IdealHNF(7, 0, 1), 1)]


@pytest.mark.parametrize("D", DISCRIMINANTS)
def test_primes_match_splitting(D):
    field = make_field(D)
    expected_count = {SplittingType.SPLIT: 2, SplittingType.INERT: 1, SplittingType.RAMIFIED: 1}
    for p in [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]:
        kind = field.splitting_type(p)
        primes = field.primes_above(p)
        assert len(primes) == expected_count[kind]
        for P, f in primes:
            assert P.norm == p**f
            assert field.ideal_contains(P, FieldElement(p, 0))
        if kind is SplittingType.RAMIFIED:
            (P, _), = primes
            assert field.ideal_mul(P, P) == field.rational_ideal(p)
        if kind is SplittingType.SPLIT:
            (P, _), (P_bar, _) = primes
            assert field.ideal_mul(P, P_bar) == field.rational_ideal(p)


def test_ideal_mul_gaussian(gaussian):
    (P, _), (P_bar, _) = gaussian.primes_above(5)
    assert gaussian.ideal_mul(P, UNIT_IDEAL) == P
    assert gaussian.ideal_mul(P, P_bar) == gaussian.rational_ideal(5)
    six = gaussian.ideal_mul(gaussian.rational_ideal(2), gaussian.rational_ideal(3))
    assert gaussian.ideal_norm(six) == 36
    assert six == gaussian.rational_ideal(6)


@pytest.mark.parametrize("D", ["Q", -4, -3, -23])
def test_factor_round_trip(D):
    field = make_field(D)
    for n in range(1, 61):
        for A in field.ideals_of_norm(n):
            assert A.norm == n
            factorization = field.ideal_factor(A)
            assert field.ideal_from_factorization(factorization) == A
            for B in field.ideals_of_norm(6):
                assert field.ideal_mul(A, B).norm == n * 6


def test_ideals_of_norm(Q, gaussian):
    assert Q.ideals_of_norm(25) == [IdealHNF(25, 0, 1)]
    assert len(gaussian.ideals_of_norm(25)) == 3
    assert gaussian.ideals_of_norm(3) == []
    assert len(gaussian.ideals_of_norm(9)) == 1


def test_conductor_from_norm(gaussian):
    assert gaussian.conductor_from_norm(25) == gaussian.rational_ideal(5)
    with pytest.raises(PreconditionError):
        gaussian.conductor_from_norm(3)


def test_conductor_norm_cap(gaussian):
    init_limits(conductor_norm_cap=100)
    with pytest.raises(CapExceededError):
        gaussian.conductor_from_norm(101)


def test_principal_generator(gaussian):
    assert gaussian.principal_ideal(gaussian.principal_generator(gaussian.rational_ideal(5))) == gaussian.rational_ideal(5)
    for P, _ in gaussian.primes_above(5):
        gen = gaussian.principal_generator(P)
        assert gaussian.norm(gen) == 5
        assert gaussian.principal_ideal(gen) == P


def test_non_principal():
    field = make_field(-20)
    (P2, _), = field.primes_above(2)
    assert field.principal_generator(P2) is None
    assert field.principal_generator(field.ideal_mul(P2, P2)) is not None


def test_valuations(gaussian):
    (P2, _), = gaussian.primes_above(2)
    assert gaussian.element_valuation(P2, FieldElement(2, 0)) == 2
    assert gaussian.element_valuation(P2, FieldElement(Fraction(1, 4), 0)) == -4
    for P, _ in gaussian.primes_above(5):
        assert gaussian.element_valuation(P, FieldElement(5, 0)) == 1
        assert gaussian.element_valuation(P, FieldElement(Fraction(3, 5), 0)) == -1
    with pytest.raises(PreconditionError):
        gaussian.element_valuation(P2, gaussian.zero)


def test_element_factor(Q):
    assert Q.element_factor(FieldElement(Fraction(12, 5), 0)) == {
        IdealHNF(2, 0, 1): 2,
        IdealHNF(3, 0, 1): 1,
        IdealHNF(5, 0, 1): -1,
    }


def test_elements_of_norm(gaussian, Q):
    assert len(gaussian.elements_of_norm(5)) == 8
    assert gaussian.elements_of_norm(3) == []
    assert Q.elements_of_norm(7) == [FieldElement(-7, 0), FieldElement(7, 0)]


def test_rational_rejects_omega(Q):
    with pytest.raises(PreconditionError):
        Q.element(1, 1)


def test_roots_of_unity(eisenstein):
    zeta = eisenstein.root_of_unity()
    assert eisenstein.element_order(zeta) == 6
    assert eisenstein.power(zeta, 6) == eisenstein.one


def test_str():
    assert str(FieldElement(3, 0)) == "3"
    assert str(FieldElement(1, -2)) == "1-2w"
    assert str(FieldElement(1, 2)) == "1+2w"
    assert str(IdealHNF(5, 2, 1)) == "[5,2,1]"


coordinates = st.integers(min_value=-30, max_value=30)
elements = st.builds(FieldElement, coordinates, coordinates)


@settings(deadline=None, max_examples=50)
@given(D=st.sampled_from(DISCRIMINANTS), u=elements, v=elements, w=elements)
def test_ring_axioms(D, u, v, w):
    field = make_field(D)
    assert field.mul(u, v) == field.mul(v, u)
    assert field.mul(field.mul(u, v), w) == field.mul(u, field.mul(v, w))
    assert field.mul(u, field.add(v, w)) == field.add(field.mul(u, v), field.mul(u, w))
    assert field.norm(field.mul(u, v)) == field.norm(u) * field.norm(v)


@settings(deadline=None, max_examples=50)
@given(D=st.sampled_from(DISCRIMINANTS), u=elements)
def test_inverse(D, u):
    field = make_field(D)
    if u == field.zero:
        return
    assert field.norm(u) > 0
    assert field.mul(u, field.inverse(u)) == field.one
    gamma, d = field.integral_parts(field.inverse(u))
    assert field.is_integral(gamma)
    assert field.mul(gamma, u) == FieldElement(d, 0)


@settings(deadline=None, max_examples=30)
@given(D=st.sampled_from(DISCRIMINANTS), u=elements)
def test_principality_is_unit_invariant(D, u):
    field = make_field(D)
    if u == field.zero:
        return
    A = field.principal_ideal(u)
    assert A.norm == field.norm(u)
    for zeta in field.units():
        assert field.principal_ideal(field.mul(zeta, u)) == A
    assert field.principal_generator(A) is not None
