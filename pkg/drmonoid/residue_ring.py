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
The finite ring O_K/f as a product of local rings O_K/P^e

Elements of O_K/f are tuples with one canonical residue per prime power
factor of f. A canonical residue is the point (x, y) of the box
0 <= x < a, 0 <= y < c spanned by the Hermite normal form of P^e, so
tuples compare lexicographically and serialise deterministically.
"""


from math import prod

from drmonoid.abelian import FiniteAbelianGroup
from drmonoid.common import PreconditionError, debug
from drmonoid.field_core import UNIT_IDEAL, FieldElement
from drmonoid.limits import get_limits


class LocalFactor:
    """The local ring O_K/P^e"""

    def __init__(self, field, prime, exponent):
        super(LocalFactor, self).__init__()
        self.field = field
        self.prime = prime
        self.exponent = exponent
        self.powers = [UNIT_IDEAL]
        for _ in range(exponent):
            self.powers.append(field.ideal_mul(self.powers[-1], prime))
        self.modulus = self.powers[-1]
        self._unit_group = None

    def __repr__(self):
        return f"{self.__class__.__name__}({self.prime}^{self.exponent})"

    @property
    def prime_norm(self):
        return self.prime.norm

    @property
    def size(self):
        return self.modulus.norm

    @property
    def unit_count(self):
        """N(P)^(e-1) * (N(P) - 1)"""
        return self.prime_norm ** (self.exponent - 1) * (self.prime_norm - 1)

    @property
    def one(self):
        return self.reduce(FieldElement(1, 0))

    @property
    def zero(self):
        return FieldElement(0, 0)

    def reduce(self, u):
        """Canonical residue of an integral element"""
        a, b, c = self.modulus.a, self.modulus.b, self.modulus.c
        x, y = int(u.x), int(u.y)
        q = y // c
        return FieldElement((x - q * b) % a, y - q * c)

    def elements(self):
        a, c = self.modulus.a, self.modulus.c
        return sorted(FieldElement(x, y) for x in range(a) for y in range(c))

    def mul(self, u, v):
        return self.reduce(self.field.mul(u, v))

    def power(self, u, k):
        result = self.one
        while k:
            if k & 1:
                result = self.mul(result, u)
            u = self.mul(u, u)
            k >>= 1
        return result

    def valuation(self, u):
        """Largest k <= e with u in P^k"""
        for k in range(self.exponent, 0, -1):
            if self.field.ideal_contains(self.powers[k], u):
                return k
        return 0

    def is_unit(self, u):
        return not self.field.ideal_contains(self.prime, u)

    def inverse(self, u):
        if not self.is_unit(u):
            raise PreconditionError(f"{u} is not a unit modulo {self.prime}^{self.exponent}")
        return self.power(u, self.unit_count - 1)

    def units(self):
        return [u for u in self.elements() if self.is_unit(u)]

    @property
    def unit_group(self):
        if self._unit_group is None:
            self._unit_group = LocalUnitGroup(self)
        return self._unit_group


class LocalUnitGroup:
    """(O_K/P^e)^x together with U1, the image of 1 + P"""

    def __init__(self, factor):
        super(LocalUnitGroup, self).__init__()
        self.factor = factor
        self._group = None

    @property
    def group(self):
        if self._group is None:
            self._group = FiniteAbelianGroup.from_generators(
                self.factor.units(), self.factor.mul, self.factor.one
            )
            assert self._group.order == self.factor.unit_count
            debug("LocalUnitGroup", self.factor, self._group)
        return self._group

    def u1_subgroup(self):
        """The (N(P) - 1)-th powers"""
        k = self.factor.prime_norm - 1
        return frozenset(self.factor.power(u, k) for u in self.factor.units())

    def reduction_kernel(self):
        """Units congruent to 1 modulo P"""
        field, one = self.factor.field, self.factor.one
        return frozenset(
            u
            for u in self.factor.units()
            if field.ideal_contains(self.factor.prime, field.sub(u, one))
        )


class ResidueRing:
    def __init__(self, field, modulus):
        super(ResidueRing, self).__init__()
        get_limits().check("conductor_norm_cap", modulus.norm)
        self.field = field
        self.modulus = modulus
        self.factorization = field.ideal_factor(modulus)
        self.factors = [LocalFactor(field, P, e) for P, e in self.factorization.items()]
        self.primes = [f.prime for f in self.factors]
        self._unit_group = None

        # The global box, which doubles as the CRT bijection check
        self._to_global = {}
        for x in range(modulus.a):
            for y in range(modulus.c):
                g = FieldElement(x, y)
                self._to_global[self.from_field(g)] = g
        if len(self._to_global) != self.size or self.size != modulus.norm:
            raise AssertionError(f"CRT is not a bijection modulo {modulus}")
        debug("ResidueRing", modulus, "=", " * ".join(repr(f) for f in self.factors))

    def __repr__(self):
        return f"{self.__class__.__name__}({self.field}, {self.modulus})"

    @property
    def size(self):
        return prod(f.size for f in self.factors)

    @property
    def one(self):
        return tuple(f.one for f in self.factors)

    @property
    def zero(self):
        return tuple(f.zero for f in self.factors)

    def elements(self):
        return sorted(self._to_global)

    def index_of(self, prime):
        try:
            return self.primes.index(prime)
        except ValueError:
            raise PreconditionError(f"{prime} does not divide {self.modulus}")

    def factor_at(self, prime):
        return self.factors[self.index_of(prime)]

    def exponent_at(self, prime):
        return self.factor_at(prime).exponent

    def from_field(self, u):
        """Residue of an integral element"""
        return tuple(f.reduce(u) for f in self.factors)

    def from_fraction(self, u):
        """Residue of an element whose denominator is prime to the modulus"""
        gamma, d = self.field.integral_parts(u)
        parts = []
        for f in self.factors:
            parts.append(f.mul(f.reduce(gamma), f.inverse(f.reduce(FieldElement(d, 0)))))
        return tuple(parts)

    def lift(self, x):
        """The representative of x in the box of the modulus"""
        return self._to_global[x]

    def mul(self, x, y):
        return tuple(f.mul(u, v) for f, u, v in zip(self.factors, x, y))

    def power(self, x, k):
        return tuple(f.power(u, k) for f, u in zip(self.factors, x))

    def is_unit(self, x):
        return all(f.is_unit(u) for f, u in zip(self.factors, x))

    def inverse(self, x):
        return tuple(f.inverse(u) for f, u in zip(self.factors, x))

    def truncated_valuation(self, x, prime):
        """min(v_P(x), e_P) for a prime P dividing the modulus"""
        i = self.index_of(prime)
        return self.factors[i].valuation(x[i])

    def indicator(self, subset):
        """The residue 1_S: one at the primes of S, zero elsewhere"""
        subset = set(subset)
        for P in subset:
            self.index_of(P)
        return tuple(f.one if f.prime in subset else f.zero for f in self.factors)

    def idempotent_lift(self, prime):
        """Global element = 1 mod P^e and = 0 modulo the other factors"""
        return self.lift(self.indicator([prime]))

    def unit_elements(self):
        """(O_K/f)^x by enumeration"""
        return [x for x in self.elements() if self.is_unit(x)]

    @property
    def unit_count(self):
        return prod(f.unit_count for f in self.factors)

    @property
    def unit_group(self):
        """(O_K/f)^x, spanned by the embedded local generators"""
        if self._unit_group is None:
            candidates = []
            for i, f in enumerate(self.factors):
                for g in f.unit_group.group.generators:
                    embedded = list(self.one)
                    embedded[i] = g
                    candidates.append(tuple(embedded))
            self._unit_group = FiniteAbelianGroup.from_generators(
                candidates, self.mul, self.one
            )
            assert self._unit_group.order == self.unit_count
            debug("unit group of", self, ":", self._unit_group)
        return self._unit_group

    def local_unit_group(self, prime):
        return self.factor_at(prime).unit_group

    def reduce_to(self, x, target):
        """Image of x in the residue ring of a divisor of the modulus"""
        if not self.field.ideal_divides(target.modulus, self.modulus):
            raise PreconditionError(f"{target.modulus} does not divide {self.modulus}")
        return tuple(f.reduce(x[self.index_of(f.prime)]) for f in target.factors)

    def as_dict(self):
        return {
            "modulus": self.modulus.as_list(),
            "size": self.size,
            "factors": [
                {"prime": f.prime.as_list(), "exponent": f.exponent, "size": f.size}
                for f in self.factors
            ],
        }


def build_residue_ring(field, modulus):
    return ResidueRing(field, modulus)
