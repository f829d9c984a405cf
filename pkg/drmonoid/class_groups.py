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
Class groups, ray class groups and the finite reciprocity map

Cl(K) is computed from reduced binary quadratic forms under Gaussian
composition. The ray class group Cl_f(K) is presented on the generators
of (O_K/f)^x followed by least-norm lifts of the generators of Cl(K),
with the relations

  * d_i * e_i for the cyclic orders d_i of (O_K/f)^x,
  * log(zeta mod f) for a generator zeta of the roots of unity
    (imaginary quadratic K only; Q keeps the real place in the modulus),
  * h_j * e_j - log(gamma_j mod f) where g_j^h_j = (gamma_j),

and reduced through Smith normal form. The unit generator e_i stands
for iota(u_i), the class of (lambda) with lambda = u_i mod f and
lambda > 0 for Q. The reciprocity map on units is rec(u) = iota(u)^-1.
"""


from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import NamedTuple

from sympy.core.intfunc import igcdex

from drmonoid.abelian import FiniteAbelianGroup, Presentation
from drmonoid.common import DRMonoidError, PreconditionError, debug
from drmonoid.field_core import UNIT_IDEAL, FieldElement, IdealHNF
from drmonoid.limits import get_limits
from drmonoid.residue_ring import ResidueRing


class ApproximationError(DRMonoidError):
    def __init__(self, prime, tries):
        super().__init__(f"no uniformiser approximation at {prime} within {tries} tries")


########################################################################
# Binary quadratic forms


class BinaryQuadraticForm(NamedTuple):
    a: int
    b: int
    c: int

    @property
    def discriminant(self):
        return self.b * self.b - 4 * self.a * self.c

    def __str__(self):
        return f"({self.a},{self.b},{self.c})"


def _solve_linmod(a, b, m):
    # solve a*x = b (mod m); the solutions are u + v*n
    x, _, g = igcdex(a, m)
    q, r = divmod(b, g)
    if r != 0:
        raise ValueError("no solution")
    return (q * x) % m, m // g


def principal_form(D):
    k = D % 2
    return BinaryQuadraticForm(1, k, (k * k - D) // 4)


def normalize(form):
    a, b, c = form
    r = (a - b) // (2 * a)
    return BinaryQuadraticForm(a, b + 2 * r * a, a * r * r + b * r + c)


def reduce_form(form):
    a, b, c = normalize(form)
    while a > c or (a == c and b < 0):
        s = (c + b) // (2 * c)
        a, b, c = c, -b + 2 * s * c, c * s * s - b * s + a
    return normalize(BinaryQuadraticForm(a, b, c))


def compose(f1, f2):
    """Gaussian composition of two primitive forms of one discriminant"""
    a, b, c = f1
    alpha, beta, _ = f2
    g = (b + beta) // 2
    h = -(b - beta) // 2
    w = gcd(gcd(a, alpha), g)
    j = w
    s = a // w
    t = alpha // w
    u = g // w
    mu, nu = _solve_linmod(t * u, h * u + s * c, s * t)
    lam = _solve_linmod(t * nu, h - t * mu, s)[0]
    k = mu + nu * lam
    l = (k * t - h) // s
    m = (t * u * k - h * u - c * s) // (s * t)
    return BinaryQuadraticForm(s * t, j * u - (k * t + l * s), k * l - j * m)


def reduced_forms(D):
    """All reduced primitive forms of discriminant D < 0"""
    result = []
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a or (a == c and b < 0):
                continue
            if gcd(gcd(a, b), c) == 1:
                result.append(BinaryQuadraticForm(a, b, c))
        a += 1
    return sorted(result)


def form_to_ideal(field, form):
    """The ideal a*Z + ((-b + sqrt(D))/2)*Z"""
    a, b, _ = form
    return IdealHNF(a, ((-b - field.discriminant) // 2) % a, 1)


def ideal_to_form(field, ideal):
    """Reduced form of the class of an ideal"""
    D = field.discriminant
    A, B = ideal.a // ideal.c, ideal.b // ideal.c
    b = -2 * B - D
    return reduce_form(BinaryQuadraticForm(A, b, (b * b - D) // (4 * A)))


def class_group(field):
    """Cl(K) with reduced forms as concrete elements (the class of O_K for Q)"""
    if field.is_rational:
        return FiniteAbelianGroup([], log={UNIT_IDEAL: ()})
    D = field.discriminant
    forms = reduced_forms(D)
    group = FiniteAbelianGroup.from_generators(
        forms, lambda f1, f2: reduce_form(compose(f1, f2)), principal_form(D)
    )
    debug("class group of", field, ":", group, f"({len(forms)} reduced forms)")
    return group


def class_group_log(field, cl, ideal):
    """Exponent vector of the class of an ideal in Cl(K)"""
    if field.is_rational:
        return ()
    return cl.log(ideal_to_form(field, ideal))


########################################################################
# Finite ideles


@dataclass(frozen=True)
class FinIdele:
    """A finite idele given by global components

    ``components`` maps primes to elements of K^x; every other finite
    prime carries ``default`` (1 when None). Principal ideles have no
    components and the element itself as default.
    """

    components: tuple = ()
    default: object = None

    @classmethod
    def from_dict(cls, components, default=None):
        for P, alpha in components.items():
            if alpha.x == 0 and alpha.y == 0:
                raise PreconditionError(f"idele component at {P} is zero")
        return cls(tuple(sorted(components.items())), default)

    @classmethod
    def principal(cls, alpha):
        if alpha.x == 0 and alpha.y == 0:
            raise PreconditionError("zero has no principal idele")
        return cls((), alpha)

    def component(self, prime):
        for P, alpha in self.components:
            if P == prime:
                return alpha
        if self.default is None:
            return FieldElement(1, 0)
        return self.default

    @property
    def support(self):
        return [P for P, _ in self.components]

    def valuations_away_from(self, field, primes):
        """{P: v_P} at the primes outside ``primes`` where v_P != 0"""
        excluded = set(primes)
        result = {}
        for P, alpha in self.components:
            if P in excluded:
                continue
            k = field.element_valuation(P, alpha)
            if k:
                result[P] = k
        if self.default is not None:
            own = set(self.support)
            for P, k in field.element_factor(self.default).items():
                if P not in excluded and P not in own:
                    result[P] = k
        return result

    def as_dict(self):
        return {
            "components": [[P.as_list(), [str(alpha.x), str(alpha.y)]] for P, alpha in self.components],
            "default": None if self.default is None else [str(self.default.x), str(self.default.y)],
        }


########################################################################
# Ray class groups


class Approximation:
    """Uniformisers at the primes dividing the modulus

    For each P | f the element pi_P has v_P(pi_P) = 1 and pi_P = 1
    modulo the other prime power factors of f (pi_P > 0 for Q). The
    cofactor c_P = (pi_P) P^-1 is prime to f.
    """

    def __init__(self, ray, rng=None):
        super(Approximation, self).__init__()
        self.ray = ray
        field, ring = ray.field, ray.ring
        self.uniformizers = {}
        self.cofactors = {}
        self.cofactor_classes = {}
        for P in ring.primes:
            pi = self._uniformizer(P, rng)
            factorization = field.element_factor(pi)
            assert factorization.get(P) == 1
            factorization.pop(P)
            cofactor = field.ideal_from_factorization(factorization)
            self.uniformizers[P] = pi
            self.cofactors[P] = cofactor
            self.cofactor_classes[P] = ray.ideal_class(cofactor)
        self._unit_part_powers = {}

    def _candidates(self, base, rng):
        field = self.ray.field
        basis = field.ideal_basis(self.ray.modulus)
        if rng is None:
            yield base
            for u in basis:
                yield field.add(base, u)
            if len(basis) > 1:
                yield reduce(field.add, basis, base)
            return
        low = 0 if field.is_rational else -4
        for _ in range(get_limits().approximation_tries):
            shifted = base
            for u in basis:
                shifted = field.add(shifted, field.scale(rng.randint(low, 4), u))
            yield shifted

    def _uniformizer(self, P, rng):
        field, ring = self.ray.field, self.ray.ring
        eps = ring.idempotent_lift(P)
        P2 = field.ideal_mul(P, P)
        varpi = next(u for u in field.ideal_basis(P) if not field.ideal_contains(P2, u))
        base = field.add(field.mul(eps, varpi), field.sub(field.one, eps))
        for pi in self._candidates(base, rng):
            if field.is_rational and pi.x <= 0:
                continue
            if field.ideal_contains(P, pi) and not field.ideal_contains(P2, pi):
                return pi
        raise ApproximationError(P, get_limits().approximation_tries)

    def unit_part(self, P, gamma, k):
        """The local unit u with gamma = pi_P^k * u modulo P^(e+k)"""
        factor = self.ray.ring.factor_at(P)
        if k == 0:
            return factor.reduce(gamma)
        field = self.ray.field
        if k not in self._unit_part_powers.setdefault(P, {}):
            bound = field.ideal_power(P, factor.exponent + k)
            self._unit_part_powers[P][k] = (field.power(self.uniformizers[P], k), bound)
        pi_k, bound = self._unit_part_powers[P][k]
        for u in factor.units():
            if field.ideal_contains(bound, field.sub(gamma, field.mul(pi_k, u))):
                return u
        raise AssertionError(f"{gamma} has no unit part at {P}")

    def as_dict(self):
        return {
            str(P): {
                "uniformizer": [str(pi.x), str(pi.y)],
                "cofactor": self.cofactors[P].as_list(),
                "cofactor_class": list(self.cofactor_classes[P]),
            }
            for P, pi in self.uniformizers.items()
        }


class RayClassGroup:
    def __init__(self, field, modulus, ring=None, cl=None):
        super(RayClassGroup, self).__init__()
        self.field = field
        self.modulus = modulus
        self.ring = ring if ring is not None else ResidueRing(field, modulus)
        self.real_place = field.is_rational
        self.units = self.ring.unit_group
        self.cl = cl if cl is not None else class_group(field)
        self._ideal_classes = {}
        self._section = None
        self._approximation = None
        self._push_rows = {}

        # least-norm lifts of the Cl(K) generators and their powers
        self.lifts = []
        self.lift_generators = []
        for j, h in enumerate(self.cl.orders):
            target = tuple(1 if i == j else 0 for i in range(self.cl.rank))
            lift = self._least_ideal_in_class(target)
            gamma = field.principal_generator(field.ideal_power(lift, h))
            assert gamma is not None, f"{lift}^{h} is not principal"
            self.lifts.append(lift)
            self.lift_generators.append(gamma)

        k_u, k_cl = self.units.rank, self.cl.rank
        relations = []
        for i, d in enumerate(self.units.orders):
            relations.append([d if m == i else 0 for m in range(k_u + k_cl)])
        if not self.real_place:
            zeta = self.ring.from_field(field.root_of_unity())
            relations.append(list(self.units.log(zeta)) + [0] * k_cl)
        for j, (h, gamma) in enumerate(zip(self.cl.orders, self.lift_generators)):
            row = [-x for x in self.units.log(self.ring.from_field(gamma))]
            row += [h if m == j else 0 for m in range(k_cl)]
            relations.append(row)
        self.presentation = Presentation(k_u + k_cl, relations)
        self.group = self.presentation.group

        self._iota = {
            u: self.presentation.project(list(self.units.log(u)) + [0] * k_cl)
            for u in self.units.concrete_elements()
        }
        debug("ray class group of", field, "modulo", modulus, ":", self.group)

    def __repr__(self):
        return f"{self.__class__.__name__}({self.field}, {self.modulus})"

    @property
    def order(self):
        return self.group.order

    def _least_ideal_in_class(self, target):
        norm = 1
        while True:
            get_limits().check_principal_norm(norm)
            for ideal in self.field.ideals_of_norm(norm):
                if not self.field.is_coprime(ideal, self.modulus):
                    continue
                if class_group_log(self.field, self.cl, ideal) == target:
                    return ideal
            norm += 1

    def iota(self, u):
        """Class of (lambda) with lambda = u mod f (lambda > 0 for Q)"""
        try:
            return self._iota[u]
        except KeyError:
            raise PreconditionError(f"{u} is not a unit modulo {self.modulus}")

    def rec(self, u):
        """The reciprocity map on (O_K/f)^x: rec(u) = iota(u)^-1"""
        return self.group.neg(self.iota(u))

    def iota_image(self):
        return frozenset(self._iota.values())

    def ideal_class(self, ideal):
        """Ray class of an ideal prime to f"""
        if ideal in self._ideal_classes:
            return self._ideal_classes[ideal]
        field = self.field
        if not field.is_coprime(ideal, self.modulus):
            raise PreconditionError(f"{ideal} is not coprime to {self.modulus}")
        c = class_group_log(field, self.cl, ideal)
        exponents = [(-x) % h for x, h in zip(c, self.cl.orders)]
        principal = ideal
        for lift, e in zip(self.lifts, exponents):
            principal = field.ideal_mul(principal, field.ideal_power(lift, e))
        beta = field.principal_generator(principal)
        assert beta is not None, f"{principal} is not principal"
        free = list(self.units.log(self.ring.from_field(beta))) + [-e for e in exponents]
        result = self.presentation.project(free)
        self._ideal_classes[ideal] = result
        return result

    def expected_order(self):
        """|Cl(K)| * |(O_K/f)^x| / |image of the roots of unity|"""
        if self.real_place:
            return self.ring.unit_count
        field = self.field
        zeta = field.root_of_unity()
        image = {self.ring.from_field(field.power(zeta, k)) for k in range(field.unit_order)}
        return self.cl.order * self.ring.unit_count // len(image)

    def section(self):
        """{ray class: least-norm, then lexicographically least, ideal prime to f}"""
        if self._section is None:
            section = {}
            norm = 1
            while len(section) < self.order:
                get_limits().check_principal_norm(norm)
                for ideal in self.field.ideals_of_norm(norm):
                    if self.field.is_coprime(ideal, self.modulus):
                        section.setdefault(self.ideal_class(ideal), ideal)
                norm += 1
            self._section = section
        return self._section

    @property
    def approximation(self):
        if self._approximation is None:
            self._approximation = Approximation(self)
        return self._approximation

    def randomized_approximation(self, rng):
        return Approximation(self, rng=rng)

    def push(self, s, target):
        """Image of a class under Cl_f' -> Cl_f for a divisor f of f'"""
        if target.field != self.field:
            raise PreconditionError(f"{target.field} is not {self.field}")
        if target.modulus not in self._push_rows:
            if not self.field.ideal_divides(target.modulus, self.modulus):
                raise PreconditionError(f"{target.modulus} does not divide {self.modulus}")
            images = [target.iota(self.ring.reduce_to(g, target.ring)) for g in self.units.generators]
            images += [target.ideal_class(J) for J in self.lifts]
            rows = []
            for k in range(self.group.rank):
                vec = [1 if i == k else 0 for i in range(self.group.rank)]
                free = self.presentation.lift(vec)
                rows.append(target.group.sum(target.group.scale(x, img) for x, img in zip(free, images)))
            self._push_rows[target.modulus] = rows
        rows = self._push_rows[target.modulus]
        return target.group.sum(target.group.scale(x, row) for x, row in zip(s, rows))

    def as_dict(self):
        return {
            "modulus": self.modulus.as_list(),
            "real_place": self.real_place,
            "group": self.group.as_dict(),
            "unit_group": self.units.as_dict(),
            "class_group": self.cl.as_dict(),
            "lifts": [J.as_list() for J in self.lifts],
        }


def ray_class_group(field, modulus, ring=None):
    return RayClassGroup(field, modulus, ring=ring)


def ideal_class(ideal, ray):
    return ray.ideal_class(ideal)


def idele_class(idele, ray, approximation=None):
    """Ray class of a finite idele under the reciprocity map

    With alpha_P = pi_P^k_P * u_P at the primes P | f, the class is
    sum k_Q [Q] over Q prime to f, minus sum k_P [c_P], minus iota(u).
    """
    field, ring, G = ray.field, ray.ring, ray.group
    approx = approximation if approximation is not None else ray.approximation
    total = G.identity
    parts = []
    for P in ring.primes:
        factor = ring.factor_at(P)
        gamma, d = field.integral_parts(idele.component(P))
        k_gamma = field._integral_valuation(P, gamma)
        k_d = field._integral_valuation(P, FieldElement(d, 0))
        u = factor.mul(
            approx.unit_part(P, gamma, k_gamma),
            factor.inverse(approx.unit_part(P, FieldElement(d, 0), k_d)),
        )
        parts.append(u)
        total = G.sub(total, G.scale(k_gamma - k_d, approx.cofactor_classes[P]))
    total = G.sub(total, ray.iota(tuple(parts)))
    for Q, k in idele.valuations_away_from(field, ring.primes).items():
        total = G.add(total, G.scale(k, ray.ideal_class(Q)))
    return total
