#
# Copyright (c) 2020,2021 Jim Ramsay <i.am@jimramsay.com>
# Copyright (c) 2020,2021 Hans Ulrich Niedermann <hun@n-dimensional.de>
#
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in all
# copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.


"""\
Exact arithmetic in K = Q or an imaginary quadratic field

Elements are coordinate pairs (x, y) standing for x + y*omega, where
omega = (D + sqrt(D))/2 and D is the fundamental discriminant. The
rationals use the sentinel D = 1 and always have y = 0.

Nonzero integral ideals are kept in Hermite normal form: the lattice
a*Z + (b + c*omega)*Z with a, c > 0, 0 <= b < a, c | a and c | b, whose
norm is a*c. For Q the form degenerates to (a, 0, 1).
"""


import enum
import functools
import math

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import NamedTuple

from sympy import Matrix, factorint, isprime, legendre_symbol, sqrt_mod
from sympy.matrices.normalforms import hermite_normal_form

import drmonoid.constants as const
from drmonoid.common import DRMonoidError, PreconditionError, debug
from drmonoid.limits import get_limits


class FieldError(DRMonoidError):
    pass  # class FieldError


class NonFundamentalError(FieldError):
    def __init__(self, discriminant, reason):
        super().__init__(
            f"unsupported discriminant {discriminant}: {reason} (use {const.RATIONAL_FIELD} or a negative fundamental discriminant)"
        )


class FieldKind(enum.Enum):
    RATIONAL = "rational"
    IMAGINARY_QUADRATIC = "imaginary-quadratic"


class SplittingType(enum.Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"
    # p stays prime of degree one because K = Q
    RATIONAL = "rational"


def _coord(value):
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value.numerator)
    return value


class FieldElement(NamedTuple):
    """The element x + y*omega; coordinates are ints or Fractions"""

    x: object
    y: object = 0

    def __str__(self):
        if self.y == 0:
            return str(self.x)
        sign = "-" if self.y < 0 else "+"
        return f"{self.x}{sign}{abs(self.y)}w"


@dataclass(frozen=True, order=True)
class IdealHNF:
    """Integral ideal a*Z + (b + c*omega)*Z"""

    a: int
    b: int
    c: int

    @property
    def norm(self):
        return self.a * self.c

    @property
    def matrix(self):
        return ((self.a, self.b), (0, self.c))

    @property
    def basis(self):
        """The two lattice generators, as field elements"""
        return (FieldElement(self.a, 0), FieldElement(self.b, self.c))

    def as_list(self):
        return [self.a, self.b, self.c]

    def __str__(self):
        return f"[{self.a},{self.b},{self.c}]"


UNIT_IDEAL = IdealHNF(1, 0, 1)


@dataclass(frozen=True)
class FieldData:
    kind: FieldKind
    discriminant: int
    unit_order: int

    @property
    def is_rational(self):
        return self.kind is FieldKind.RATIONAL

    @property
    def trace(self):
        """Trace of omega"""
        return 0 if self.is_rational else self.discriminant

    @property
    def omega_norm(self):
        """Norm of omega, (D^2 - D)/4"""
        if self.is_rational:
            return 0
        D = self.discriminant
        return (D * D - D) // 4

    @property
    def descriptor(self):
        if self.is_rational:
            return const.RATIONAL_FIELD
        return str(self.discriminant)

    def __str__(self):
        if self.is_rational:
            return "Q"
        D = self.discriminant
        m = D // 4 if D % 4 == 0 else D
        return f"Q(sqrt({m}))"

    def as_dict(self):
        return {
            "kind": self.kind.value,
            "discriminant": self.discriminant,
            "descriptor": self.descriptor,
            "unit_order": self.unit_order,
        }

    ####################################################################
    # Elements

    @property
    def one(self):
        return FieldElement(1, 0)

    @property
    def zero(self):
        return FieldElement(0, 0)

    @property
    def omega(self):
        if self.is_rational:
            raise PreconditionError("Q has no quadratic generator")
        return FieldElement(0, 1)

    def element(self, x, y=0):
        if self.is_rational and y != 0:
            raise PreconditionError(f"{x}+{y}w is not an element of Q")
        return FieldElement(_coord(x), _coord(y))

    def add(self, u, v):
        return FieldElement(_coord(u.x + v.x), _coord(u.y + v.y))

    def sub(self, u, v):
        return FieldElement(_coord(u.x - v.x), _coord(u.y - v.y))

    def neg(self, u):
        return FieldElement(-u.x, -u.y)

    def mul(self, u, v):
        if self.is_rational:
            return FieldElement(_coord(u.x * v.x), 0)
        bd = u.y * v.y
        x = u.x * v.x - bd * self.omega_norm
        y = u.x * v.y + u.y * v.x + bd * self.trace
        return FieldElement(_coord(x), _coord(y))

    def scale(self, k, u):
        return FieldElement(_coord(k * u.x), _coord(k * u.y))

    def norm(self, u):
        """Absolute norm; the absolute value for Q"""
        if self.is_rational:
            return _coord(abs(u.x))
        return _coord(
            u.x * u.x + self.trace * u.x * u.y + self.omega_norm * u.y * u.y
        )

    def conjugate(self, u):
        if self.is_rational:
            return u
        return FieldElement(_coord(u.x + self.trace * u.y), -u.y)

    def inverse(self, u):
        if u.x == 0 and u.y == 0:
            raise ZeroDivisionError("zero has no inverse")
        if self.is_rational:
            return FieldElement(_coord(Fraction(1) / Fraction(u.x)), 0)
        c = self.conjugate(u)
        # the product u * conj(u) is the signed norm, positive here
        n = Fraction(self.norm(u))
        return FieldElement(_coord(c.x / n), _coord(c.y / n))

    def div(self, u, v):
        return self.mul(u, self.inverse(v))

    def power(self, u, k):
        if k < 0:
            return self.power(self.inverse(u), -k)
        result = self.one
        while k:
            if k & 1:
                result = self.mul(result, u)
            u = self.mul(u, u)
            k >>= 1
        return result

    def is_integral(self, u):
        return Fraction(u.x).denominator == 1 and Fraction(u.y).denominator == 1

    def integral_parts(self, u):
        """Write u = gamma/d with gamma integral and d a positive integer"""
        d = math.lcm(Fraction(u.x).denominator, Fraction(u.y).denominator)
        return self.scale(d, u), d

    def units(self):
        """The roots of unity of K, sorted"""
        return self.elements_of_norm(1)

    def element_order(self, u):
        k, x = 1, u
        while x != self.one:
            x = self.mul(x, u)
            k += 1
            if k > self.unit_order:
                raise PreconditionError(f"{u} is not a root of unity")
        return k

    def root_of_unity(self):
        """A generator of the roots of unity of K"""
        for u in self.units():
            if self.element_order(u) == self.unit_order:
                return u
        raise AssertionError(f"no root of unity of order {self.unit_order}")

    def elements_of_norm(self, norm):
        """All integral elements of the given norm, sorted"""
        if norm <= 0:
            raise PreconditionError(f"norm must be positive, not {norm}")
        if self.is_rational:
            return [FieldElement(-norm, 0), FieldElement(norm, 0)]
        D = self.discriminant
        # 4N = (2x + Dy)^2 + |D| y^2
        result = set()
        y_max = math.isqrt(4 * norm // -D)
        for y in range(-y_max, y_max + 1):
            r = 4 * norm + D * y * y
            if r < 0:
                continue
            t = math.isqrt(r)
            if t * t != r:
                continue
            for s in {t, -t}:
                if (s - D * y) % 2 == 0:
                    result.add(FieldElement((s - D * y) // 2, y))
        return sorted(result)

    ####################################################################
    # Ideals

    def _hnf(self, elements):
        if self.is_rational:
            g = 0
            for u in elements:
                g = math.gcd(g, int(u.x))
            if g == 0:
                raise PreconditionError("the zero ideal is not supported")
            return IdealHNF(g, 0, 1)
        columns = [[int(u.x) for u in elements], [int(u.y) for u in elements]]
        W = hermite_normal_form(Matrix(columns))
        if W.shape != (2, 2):
            raise PreconditionError("the zero ideal is not supported")
        a, b, c = int(W[0, 0]), int(W[0, 1]), int(W[1, 1])
        return IdealHNF(a, b % a, c)

    def ideal_from_elements(self, elements):
        """The smallest ideal containing the given integral elements"""
        elements = list(elements)
        for u in elements:
            if not self.is_integral(u):
                raise PreconditionError(f"{u} is not integral")
        if self.is_rational:
            return self._hnf(elements)
        gens = []
        for u in elements:
            gens.append(u)
            gens.append(self.mul(u, self.omega))
        return self._hnf(gens)

    def ideal_basis(self, A):
        """Z-basis of an ideal as field elements"""
        if self.is_rational:
            return (FieldElement(A.a, 0),)
        return A.basis

    def principal_ideal(self, u):
        return self.ideal_from_elements([u])

    def ideal_contains(self, ideal, u):
        if not self.is_integral(u):
            return False
        x, y = int(u.x), int(u.y)
        if y % ideal.c:
            return False
        return (x - (y // ideal.c) * ideal.b) % ideal.a == 0

    def ideal_divides(self, A, B):
        """True iff A divides B, i.e. B is contained in A"""
        return all(self.ideal_contains(A, u) for u in B.basis)

    def ideal_add(self, A, B):
        return self.ideal_from_elements(A.basis + B.basis)

    def is_coprime(self, A, B):
        return self.ideal_add(A, B) == UNIT_IDEAL

    @functools.lru_cache(maxsize=None)
    def ideal_mul(self, A, B):
        return self.ideal_from_elements(self.mul(u, v) for u in A.basis for v in B.basis)

    def ideal_norm(self, A):
        return A.norm

    @functools.lru_cache(maxsize=None)
    def ideal_power(self, A, k):
        result = UNIT_IDEAL
        for _ in range(k):
            result = self.ideal_mul(result, A)
        return result

    def ideal_from_factorization(self, factorization):
        result = UNIT_IDEAL
        for P, k in factorization.items():
            result = self.ideal_mul(result, self.ideal_power(P, k))
        return result

    def splitting_type(self, p):
        """Kronecker symbol classification of the rational prime p"""
        if not isprime(p):
            raise PreconditionError(f"{p} is not prime")
        if self.is_rational:
            return SplittingType.RATIONAL
        D = self.discriminant
        if p == 2:
            if D % 2 == 0:
                return SplittingType.RAMIFIED
            return SplittingType.SPLIT if D % 8 == 1 else SplittingType.INERT
        if D % p == 0:
            return SplittingType.RAMIFIED
        if legendre_symbol(D % p, p) == 1:
            return SplittingType.SPLIT
        return SplittingType.INERT

    def _omega_roots(self, p):
        # b with b^2 + D*b + n = 0 mod p, so that (p, b + omega) is an ideal
        D, n = self.discriminant, self.omega_norm
        if p == 2:
            return sorted(b for b in range(2) if (b * b + D * b + n) % 2 == 0)
        half = pow(2, -1, p)
        # (2b + D)^2 = D mod p
        return sorted({((s - D) * half) % p for s in sqrt_mod(D % p, p, all_roots=True)})

    def primes_above(self, p):
        """The primes above p as (ideal, residue degree) pairs, sorted"""
        kind = self.splitting_type(p)
        if kind is SplittingType.RATIONAL:
            return [(IdealHNF(p, 0, 1), 1)]
        if kind is SplittingType.INERT:
            return [(IdealHNF(p, 0, p), 2)]
        return [(IdealHNF(p, b, 1), 1) for b in self._omega_roots(p)]

    def prime_norm(self, P):
        """The rational prime below P and the residue degree of P"""
        if P.c == 1:
            return P.a, 1
        return P.a, 2

    def ideal_factor(self, A):
        """Prime factorisation as {prime ideal: exponent}, sorted by norm"""
        get_limits().check_factor_norm(A.norm)
        result = {}
        for p in sorted(factorint(A.norm)):
            for P, _ in self.primes_above(int(p)):
                k, Pk = 0, P
                while self.ideal_divides(Pk, A):
                    k += 1
                    Pk = self.ideal_mul(Pk, P)
                if k:
                    result[P] = k
        assert self.ideal_from_factorization(result) == A, f"factorisation of {A} does not reassemble"
        return result

    def principal_generator(self, A):
        """A generator of A (positive for Q), or None if A is not principal"""
        get_limits().check_principal_norm(A.norm)
        if self.is_rational:
            return FieldElement(A.a, 0)
        candidates = [u for u in self.elements_of_norm(A.norm) if self.ideal_contains(A, u)]
        if not candidates:
            return None
        return min(candidates)

    def element_valuation(self, P, u):
        """v_P(u) for nonzero u in K"""
        if u.x == 0 and u.y == 0:
            raise PreconditionError("the valuation of zero is infinite")
        gamma, d = self.integral_parts(u)
        return self._integral_valuation(P, gamma) - self._integral_valuation(
            P, FieldElement(d, 0)
        )

    def _integral_valuation(self, P, u):
        k, Pk = 0, P
        while self.ideal_contains(Pk, u):
            k += 1
            Pk = self.ideal_mul(Pk, P)
        return k

    def element_factor(self, u):
        """{prime: valuation} over the primes where u is not a unit"""
        gamma, d = self.integral_parts(u)
        result = dict(self.ideal_factor(self.principal_ideal(gamma)))
        for P, k in self.ideal_factor(self.rational_ideal(d)).items():
            result[P] = result.get(P, 0) - k
        return {P: k for P, k in sorted(result.items()) if k}

    def _ideals_of_prime_power_norm(self, p, k):
        primes = self.primes_above(p)
        result = []
        for exps in product(range(k + 1), repeat=len(primes)):
            if sum(e * f for e, (_, f) in zip(exps, primes)) != k:
                continue
            ideal = UNIT_IDEAL
            for e, (P, _) in zip(exps, primes):
                ideal = self.ideal_mul(ideal, self.ideal_power(P, e))
            result.append(ideal)
        return result

    def ideals_of_norm(self, norm):
        """All ideals of the given norm, sorted"""
        result = [UNIT_IDEAL]
        for p, k in sorted(factorint(norm).items()):
            local = self._ideals_of_prime_power_norm(int(p), int(k))
            result = [self.ideal_mul(A, B) for A in result for B in local]
        return sorted(set(result))

    def conductor_from_norm(self, norm):
        """The lexicographically least ideal of the given norm"""
        get_limits().check("conductor_norm_cap", norm)
        ideals = self.ideals_of_norm(norm)
        if not ideals:
            raise PreconditionError(f"{self} has no ideal of norm {norm}")
        return ideals[0]

    def rational_ideal(self, n):
        """The ideal generated by the rational integer n"""
        return self.principal_ideal(FieldElement(abs(n), 0))


def _is_squarefree(n):
    return all(e == 1 for e in factorint(abs(n)).values())


def make_field(discriminant):
    """Build the field of the given fundamental discriminant (1 or 'Q' for Q)"""
    if discriminant in (const.RATIONAL_DISCRIMINANT, const.RATIONAL_FIELD):
        field = FieldData(FieldKind.RATIONAL, const.RATIONAL_DISCRIMINANT, 2)
        debug("make_field", field)
        return field
    try:
        D = int(discriminant)
    except (TypeError, ValueError):
        raise NonFundamentalError(discriminant, "not an integer")
    if D >= 0:
        raise NonFundamentalError(D, "only imaginary quadratic fields are supported")
    if D % 4 == 1:
        m = D
    elif D % 4 == 0:
        m = D // 4
        if m % 4 not in (2, 3):
            raise NonFundamentalError(D, "D/4 must be 2 or 3 mod 4")
    else:
        raise NonFundamentalError(D, "D must be 0 or 1 mod 4")
    if not _is_squarefree(m):
        raise NonFundamentalError(D, "not squarefree away from 4")
    unit_order = {-3: 6, -4: 4}.get(D, 2)
    field = FieldData(FieldKind.IMAGINARY_QUADRATIC, D, unit_order)
    debug("make_field", field)
    return field
