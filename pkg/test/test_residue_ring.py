from fractions import Fraction

import pytest

from drmonoid.common import CapExceededError, PreconditionError
from drmonoid.field_core import FieldElement, IdealHNF, make_field
from drmonoid.limits import init_limits
from drmonoid.residue_ring import LocalFactor, build_residue_ring


def residues(ring, *values):
    return [ring.from_field(FieldElement(v, 0)) for v in values]


@pytest.mark.parametrize(
    "D, n, size, factor_sizes, unit_count, invariants",
    [
        ("Q", 4, 4, [4], 2, (2,)),
        ("Q", 12, 12, [4, 3], 4, (2, 2)),
        ("Q", 45, 45, [9, 5], 24, (2, 12)),
        (-4, 5, 25, [5, 5], 16, (4, 4)),
        (-4, 2, 4, [4], 2, (2,)),
        (-4, 3, 9, [9], 8, (8,)),
        (-3, 2, 4, [4], 3, (3,)),
    ],
)
def test_build(D, n, size, factor_sizes, unit_count, invariants):
    field = make_field(D)
    ring = build_residue_ring(field, field.rational_ideal(n))
    assert ring.size == size == len(ring.elements())
    assert [f.size for f in ring.factors] == factor_sizes
    assert ring.unit_count == unit_count == len(ring.unit_elements())
    assert ring.unit_group.invariants == invariants
    assert ring.unit_group.order == unit_count


def test_ramified_two(gaussian):
    ring = build_residue_ring(gaussian, gaussian.rational_ideal(2))
    (factor,) = ring.factors
    assert factor.exponent == 2
    assert factor.prime.norm == 2


def test_crt(Q):
    ring = build_residue_ring(Q, Q.rational_ideal(12))
    for x in ring.elements():
        assert ring.from_field(ring.lift(x)) == x
    assert ring.lift(ring.indicator([IdealHNF(3, 0, 1)])) == FieldElement(4, 0)
    assert ring.idempotent_lift(IdealHNF(2, 0, 1)) == FieldElement(9, 0)
    with pytest.raises(PreconditionError):
        ring.indicator([IdealHNF(5, 0, 1)])


def test_multiplication(Q):
    ring = build_residue_ring(Q, Q.rational_ideal(12))
    five, seven, eleven = residues(ring, 5, 7, 11)
    assert ring.mul(five, seven) == eleven
    assert ring.inverse(seven) == seven
    assert ring.power(five, 2) == ring.one
    assert ring.mul(ring.zero, five) == ring.zero
    assert ring.is_unit(five) and not ring.is_unit(ring.from_field(FieldElement(6, 0)))


def test_from_fraction(Q):
    ring = build_residue_ring(Q, Q.rational_ideal(5))
    assert ring.from_fraction(FieldElement(Fraction(1, 2), 0)) == ring.from_field(FieldElement(3, 0))
    with pytest.raises(PreconditionError):
        ring.from_fraction(FieldElement(Fraction(1, 5), 0))


@pytest.mark.parametrize("value, expected", [(0, 3), (4, 2), (6, 1), (3, 0), (8, 3)])
def test_truncated_valuation(Q, value, expected):
    ring = build_residue_ring(Q, Q.rational_ideal(8))
    P = IdealHNF(2, 0, 1)
    assert ring.truncated_valuation(ring.from_field(FieldElement(value, 0)), P) == expected


def test_truncated_valuation_gaussian(gaussian):
    ring = build_residue_ring(gaussian, gaussian.rational_ideal(10))
    (P2, _), = gaussian.primes_above(2)
    two = ring.from_field(FieldElement(2, 0))
    assert ring.truncated_valuation(two, P2) == 2
    for P, _ in gaussian.primes_above(5):
        assert ring.truncated_valuation(two, P) == 0
    with pytest.raises(PreconditionError):
        ring.truncated_valuation(two, IdealHNF(3, 0, 3))


def test_reduce_to(Q):
    big = build_residue_ring(Q, Q.rational_ideal(24))
    small = build_residue_ring(Q, Q.rational_ideal(8))
    assert big.reduce_to(big.from_field(FieldElement(19, 0)), small) == small.from_field(FieldElement(3, 0))
    with pytest.raises(PreconditionError):
        small.reduce_to(small.one, big)


def test_u1_rational():
    Q = make_field("Q")
    factor = LocalFactor(Q, IdealHNF(3, 0, 1), 2)
    local = factor.unit_group
    squares = {FieldElement(v, 0) for v in (1, 4, 7)}
    assert local.u1_subgroup() == squares
    assert local.reduction_kernel() == squares
    assert local.group.invariants == (6,)


def test_u1_ramified(gaussian):
    (P2, _), = gaussian.primes_above(2)
    factor = LocalFactor(gaussian, P2, 4)
    local = factor.unit_group
    assert factor.unit_count == 8
    assert local.u1_subgroup() == local.reduction_kernel() == frozenset(factor.units())


@pytest.mark.parametrize("D", ["Q", -4, -3, -7])
def test_u1_index(D):
    field = make_field(D)
    for p in (2, 3, 5, 7):
        for P, _ in field.primes_above(p):
            for e in (1, 2, 3):
                if P.norm**e > 400:
                    continue
                factor = LocalFactor(field, P, e)
                local = factor.unit_group
                kernel = local.reduction_kernel()
                assert local.u1_subgroup() == kernel
                assert len(kernel) * (P.norm - 1) == factor.unit_count


def test_conductor_cap(Q):
    init_limits(conductor_norm_cap=10)
    with pytest.raises(CapExceededError):
        build_residue_ring(Q, Q.rational_ideal(12))
