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
Recovering the field data of K from its Deligne-Ribet monoid

Everything here works on finite levels. The local monoids O_P, O_P^x
and O_P^* are cut out of a level by idempotent equations, sigma_P is
found by exhaustive search over DR^x, and K^x is seen as the kernel of
the finite reciprocity map tested along a tower of levels. Each
semigroup-theoretic test has a coordinate oracle next to it.
"""


from dataclasses import dataclass, field as dc_field

from sympy import nextprime

import drmonoid.constants as const
from drmonoid.abelian import FiniteAbelianGroup
from drmonoid.class_groups import FinIdele, idele_class
from drmonoid.common import CapExceededError, PreconditionError, debug
from drmonoid.field_core import FieldElement
from drmonoid.residue_ring import LocalFactor


def _check_prime(level, prime):
    if prime not in level.supp:
        raise PreconditionError(f"{prime} does not divide {level.modulus}")


########################################################################
# Local monoids


def in_ohat(level, x):
    """x * e_empty = e_empty"""
    return level.mul(x, level.e_empty) == level.e_empty


def in_ohat_oracle(level, x):
    """Some representative of x has trivial ray class"""
    return x.cls in level.ray.iota_image()


def in_Op(level, x, prime):
    """x is in Ohat and fixes e_{Q} for every other Q in supp(f) at once

    The equations x * e_{Q} = e_{Q} are imposed jointly through the
    maximal idempotent labelled P, x * e_{supp(f) - P} = e_{supp(f) - P}.
    This implies each single equation, and unlike the single equations
    it is solved by one unit for all Q together.
    """
    _check_prime(level, prime)
    if not in_ohat(level, x):
        return False
    e = local_zero(level, prime)
    return level.mul(x, e) == e


def in_Op_separately(level, x, prime):
    """x is in Ohat and x * e_{Q} = e_{Q} for each other Q on its own"""
    _check_prime(level, prime)
    if not in_ohat(level, x):
        return False
    for Q in level.supp:
        if Q != prime:
            e_Q = level.e_S([Q])
            if level.mul(x, e_Q) != e_Q:
                return False
    return True


def _trivial_class_units(level, x):
    G = level.ray.group
    target = G.neg(x.cls)
    return [u for u in level.ring.unit_elements() if level.ray.iota(u) == target]


def in_Op_coordinate(level, x, prime):
    """One representative [rho, 1] of x has rho = 1 away from P"""
    _check_prime(level, prime)
    ring = level.ring
    others = [i for i, Q in enumerate(ring.primes) if Q != prime]
    for u in _trivial_class_units(level, x):
        rho = ring.mul(u, x.rho)
        if all(rho[i] == ring.factors[i].one for i in others):
            return True
    return False


def _root_of_unity_residues(level):
    # roots of unity with trivial ray class: all of them for K imaginary
    # quadratic, only 1 for Q once -1 is not 1 modulo f
    field, ring, ray = level.field, level.ring, level.ray
    zeta = field.root_of_unity()
    powers = [field.power(zeta, k) for k in range(field.unit_order)]
    trivial = [z for z in powers if ray.iota(ring.from_field(z)) == ray.group.identity]
    return [frozenset(f.reduce(z) for z in trivial) for f in ring.factors]


def in_Op_relaxed(level, x, prime):
    """Like in_Op_coordinate, up to a root of unity at each other prime

    This is what in_Op_separately sees: each e_{Q} is fixed by a
    separate unit, and two such units differ by a root of unity.
    """
    _check_prime(level, prime)
    ring = level.ring
    others = [i for i, Q in enumerate(ring.primes) if Q != prime]
    roots = _root_of_unity_residues(level)
    for u in _trivial_class_units(level, x):
        rho = ring.mul(u, x.rho)
        if all(rho[i] in roots[i] for i in others):
            return True
    return False


def local_zero(level, prime):
    """0_P = e_{supp(f) - P}"""
    _check_prime(level, prime)
    return level.e_S([Q for Q in level.supp if Q != prime])


def in_Op_units(level, x, prime):
    return in_Op(level, x, prime) and level.is_unit(x)


def in_Op_star(level, x, prime):
    return in_Op(level, x, prime) and x != local_zero(level, prime)


def local_zero_candidates(level, prime, image=None):
    """Elements of the O_P image that absorb all of it"""
    if image is None:
        image = [x for x in level.elements if in_Op(level, x, prime)]
    return [z for z in image if all(level.mul(y, z) == z for y in image)]


@dataclass
class LocalEmbeddingView:
    prime: object
    op: frozenset
    op_units: frozenset
    op_star: frozenset
    zero: object
    zero_candidates: list

    @property
    def zero_unique(self):
        return self.zero_candidates == [self.zero]

    def as_dict(self):
        return {
            "prime": self.prime.as_list(),
            "op": len(self.op),
            "op_units": len(self.op_units),
            "op_star": len(self.op_star),
            "zero": self.zero.as_list(),
            "zero_unique": self.zero_unique,
        }


def local_view(level, prime):
    _check_prime(level, prime)
    op = [x for x in level.elements if in_Op(level, x, prime)]
    zero = local_zero(level, prime)
    view = LocalEmbeddingView(
        prime,
        frozenset(op),
        frozenset(x for x in op if level.is_unit(x)),
        frozenset(x for x in op if x != zero),
        zero,
        local_zero_candidates(level, prime, op),
    )
    debug("local view at", prime, "of", level, ":", view.as_dict())
    return view


########################################################################
# sigma_P


@dataclass
class SigmaCertificate:
    """All sigma in DR^x with x * sigma in the image of the ideals over supp(f)

    A finite level only pins sigma down up to the stabiliser of x in
    DR^x, which is trivial for units and usually not for elements of
    positive valuation. ``unique`` is the plain candidate count; when it
    fails, ``stabiliser_coset`` tells whether the candidates are still a
    single coset of the stabiliser with one common product x * sigma.
    """

    element: object
    prime: object
    candidates: list
    products: list
    stabiliser: list
    full_image_count: int

    @property
    def sigma(self):
        return self.candidates[0] if self.candidates else None

    @property
    def candidate_count(self):
        return len(self.candidates)

    @property
    def unique(self):
        return self.candidate_count == 1

    @property
    def stabiliser_coset(self):
        return (
            len(self.products) == 1
            and self.candidate_count == len(self.stabiliser)
        )

    def as_dict(self):
        return {
            "element": self.element.as_list(),
            "prime": self.prime.as_list(),
            "candidate_count": self.candidate_count,
            "candidates": [s.as_list() for s in self.candidates],
            "products": [p.as_list() for p in self.products],
            "stabiliser_count": len(self.stabiliser),
            "full_image_count": self.full_image_count,
            "unique": self.unique,
        }


def sigma_of(level, x, prime):
    if not in_Op_star(level, x, prime):
        raise PreconditionError(f"{x} is not in the O_P^* image at {prime}")
    support_image = level.ik_support_image()
    full_image = level.ik_image()
    candidates = []
    stabiliser = []
    products = set()
    full_count = 0
    for sigma in level.units():
        y = level.mul(x, sigma)
        if y == x:
            stabiliser.append(sigma)
        if y in full_image:
            full_count += 1
        if y in support_image:
            candidates.append(sigma)
            products.add(y)
    certificate = SigmaCertificate(x, prime, candidates, sorted(products), stabiliser, full_count)
    if not certificate.unique:
        debug("sigma at", prime, "of", x, "has", certificate.candidate_count, "candidates")
    return certificate


def sigma_oracle(level, x, prime):
    """[1, class(rho)^-1] for a trivial-class representative [rho, 1] of x"""
    ring, ray = level.ring, level.ray
    units = _trivial_class_units(level, x)
    if not units:
        raise PreconditionError(f"{x} has no representative with trivial class")
    rho = ring.mul(units[0], x.rho)
    components = {}
    for P, f, r in zip(ring.primes, ring.factors, rho):
        if r != f.one:
            components[P] = FieldElement(r.x, r.y)
    cls = idele_class(FinIdele.from_dict(components), ray)
    return level.canonical(ring.one, ray.group.neg(cls))


########################################################################
# Reciprocity and K^x


@dataclass
class ReciprocityReport:
    label: str
    classes: dict = dc_field(default_factory=dict)
    trivial: dict = dc_field(default_factory=dict)
    global_element: object = None

    @property
    def in_kernel(self):
        return all(self.trivial.values())

    @property
    def rejected(self):
        return not self.in_kernel

    def as_dict(self):
        return {
            "label": self.label,
            "levels": [
                {"conductor": f.as_list(), "class": list(c), "trivial": self.trivial[f]}
                for f, c in self.classes.items()
            ],
            "in_kernel": self.in_kernel,
            "global_element": None
            if self.global_element is None
            else [str(self.global_element.x), str(self.global_element.y)],
        }


def reciprocity_image(idele, rays, label=None, approximations=None):
    """Ray class of an idele at each level, with kernel verdicts"""
    report = ReciprocityReport(label or str(idele.as_dict()))
    for ray in rays:
        approx = None if approximations is None else approximations[ray.modulus]
        cls = idele_class(idele, ray, approx)
        report.classes[ray.modulus] = cls
        report.trivial[ray.modulus] = cls == ray.group.identity
    if idele.default is not None and not idele.components:
        report.global_element = idele.default
    return report


def uniformiser(field, prime):
    P2 = field.ideal_mul(prime, prime)
    return next(u for u in field.ideal_basis(prime) if not field.ideal_contains(P2, u))


def designated_nonglobal_ideles(field, rays, count=5, prime_bound=const.NONGLOBAL_PRIME_BOUND):
    """Uniformiser ideles at primes prime to every conductor, rejected at some level

    Primes are drawn in order of their norm. A uniformiser whose ray
    class is trivial at every level of the tower is skipped, as the
    tower cannot tell it from a global element. Returns (P, idele,
    report) triples.
    """
    moduli = [ray.modulus for ray in rays]
    found = []
    p = 2
    # primes above p have norm at least p
    while len(found) < count or p <= sorted(P.norm for P, _, _ in found)[count - 1]:
        if p > prime_bound:
            if len(found) >= count:
                break
            raise CapExceededError("non-global idele search", p, prime_bound)
        for P, _ in sorted(field.primes_above(p), key=lambda pe: (pe[0].norm, pe[0])):
            if not all(field.is_coprime(P, f) for f in moduli):
                continue
            idele = FinIdele.from_dict({P: uniformiser(field, P)})
            report = reciprocity_image(idele, rays, label=f"uniformiser at {P}")
            if report.rejected:
                found.append((P, idele, report))
            else:
                debug("uniformiser at", P, "is trivial at every level, skipped")
        p = int(nextprime(p))
    found.sort(key=lambda item: (item[0].norm, item[0]))
    return found[:count]


def recover_global(field, box, rays, count=5):
    """Box elements whose principal ideles are trivial at every level

    Returns the passing elements together with reports for the
    designated non-global ideles.
    """
    passing = []
    for alpha in box:
        report = reciprocity_image(FinIdele.principal(alpha), rays, label=str(alpha))
        if report.in_kernel:
            passing.append(alpha)
    contrast = [report for _, _, report in designated_nonglobal_ideles(field, rays, count)]
    return passing, contrast


def integral_box(field, radius):
    """Nonzero integral elements x + y*omega with |x|, |y| <= radius"""
    if field.is_rational:
        return [FieldElement(x, 0) for x in range(-radius, radius + 1) if x]
    return [
        FieldElement(x, y)
        for x in range(-radius, radius + 1)
        for y in range(-radius, radius + 1)
        if x or y
    ]


def norm_box(field, bound):
    """Nonzero integral elements of norm at most ``bound``"""
    result = []
    for n in range(1, bound + 1):
        result.extend(field.elements_of_norm(n))
    return result


def fraction_box(field, radius):
    """alpha / b for alpha in the integral box and 1 <= b <= radius"""
    result = set()
    for alpha in integral_box(field, radius):
        for b in range(1, radius + 1):
            result.add(field.div(alpha, FieldElement(b, 0)))
    return sorted(result)


########################################################################
# Local rings of K


def local_ring_intersection(field, alpha, prime):
    """alpha lies in O_{K,P}, i.e. v_P(alpha) >= 0"""
    return field.element_valuation(prime, alpha) >= 0


def _local_element(level, u, prime):
    # [u at P, 1 elsewhere] with trivial class
    i = level.ring.index_of(prime)
    rho = list(level.ring.one)
    rho[i] = level.ring.factors[i].reduce(u)
    return level.canonical(rho, level.ray.group.identity)


def local_ring_monoid_test(level, alpha, prime, view=None):
    """alpha = gamma/d lies in O_P iff d divides gamma inside the O_P image

    Valid while both valuations stay below the exponent of P in f.
    """
    _check_prime(level, prime)
    field = level.field
    gamma, d = field.integral_parts(alpha)
    d = FieldElement(d, 0)
    e = level.ring.exponent_at(prime)
    if max(field.element_valuation(prime, gamma), field.element_valuation(prime, d)) >= e:
        raise PreconditionError(f"valuation of {alpha} at {prime} reaches the level exponent {e}")
    if view is None:
        op = [x for x in level.elements if in_Op(level, x, prime)]
    else:
        op = view.op
    x_gamma = _local_element(level, gamma, prime)
    x_d = _local_element(level, d, prime)
    return any(level.mul(y, x_d) == x_gamma for y in op)


def _denominator_primes(field, box):
    primes = set()
    for alpha in box:
        _, d = field.integral_parts(alpha)
        primes |= set(field.ideal_factor(field.rational_ideal(d)))
    return sorted(primes)


def integral_intersection(field, box, primes=None):
    """The box elements lying in every O_{K,P}, next to the integral ones"""
    if primes is None:
        primes = _denominator_primes(field, box)
    intersection = [
        alpha for alpha in box
        if all(local_ring_intersection(field, alpha, P) for P in primes)
    ]
    integral = [alpha for alpha in box if field.is_integral(alpha)]
    return intersection, integral


@dataclass
class U1Report:
    prime: object
    exponent: int
    powers: int
    kernel: int
    identity_holds: bool
    box_checked: int = 0
    box_agree: bool = True

    @property
    def passed(self):
        return self.identity_holds and self.box_agree

    def as_dict(self):
        return {
            "prime": self.prime.as_list(),
            "exponent": self.exponent,
            "powers": self.powers,
            "kernel": self.kernel,
            "identity_holds": self.identity_holds,
            "box_checked": self.box_checked,
            "box_agree": self.box_agree,
        }


def verify_u1_identity(field, prime, exponent, box=()):
    """(N(P) - 1)-th powers of (O/P^e)^x against the reduction kernel

    For integral box elements prime to P, membership in the powers must
    agree with alpha in 1 + P.
    """
    factor = LocalFactor(field, prime, exponent)
    local = factor.unit_group
    powers, kernel = local.u1_subgroup(), local.reduction_kernel()
    report = U1Report(prime, exponent, len(powers), len(kernel), powers == kernel)
    for alpha in box:
        if not field.is_integral(alpha) or field.ideal_contains(prime, alpha):
            continue
        report.box_checked += 1
        one_unit = field.ideal_contains(prime, field.sub(alpha, field.one))
        if (factor.reduce(alpha) in powers) != one_unit:
            report.box_agree = False
    return report


########################################################################
# Field invariants


def level_invariants(level):
    """Monoid invariants of one level"""
    local_units = []
    for record in level.maximal_idempotents():
        units = [x for x in level.elements if in_Op_units(level, x, record.label)]
        group = FiniteAbelianGroup.from_generators(units, level.mul, level.identity)
        local_units.append(list(group.invariants))
    return {
        "conductor_norm": level.modulus.norm,
        "elements": len(level),
        "idempotents": len(level.all_idempotents()),
        "maximal_idempotents": len(level.maximal_idempotents()),
        "unit_group": list(level.unit_subgroup().invariants),
        "local_unit_groups": sorted(local_units),
        "ik_image": len(level.ik_image()),
    }


@dataclass
class ComparisonReport:
    first: str
    second: str
    levels: list = dc_field(default_factory=list)

    @property
    def differences(self):
        result = []
        for a, b in self.levels:
            for key in sorted(a):
                if a[key] != b[key]:
                    result.append({"conductor_norm": a["conductor_norm"], "invariant": key})
        return result

    @property
    def verdict(self):
        if self.differences:
            return "distinguished"
        return "indistinguishable at tested levels"

    def as_dict(self):
        return {
            "fields": [self.first, self.second],
            "levels": [{"first": a, "second": b} for a, b in self.levels],
            "differences": self.differences,
            "verdict": self.verdict,
        }


def compare_fields(tower_k, tower_l):
    """Compare two towers level by level; never claims isomorphism"""
    if len(tower_k) != len(tower_l):
        raise PreconditionError("towers must have the same number of levels")
    report = ComparisonReport(str(tower_k[0].field), str(tower_l[0].field))
    for a, b in zip(tower_k, tower_l):
        if a.modulus.norm != b.modulus.norm:
            raise PreconditionError(f"conductor norms differ: {a.modulus.norm} != {b.modulus.norm}")
        report.levels.append((level_invariants(a), level_invariants(b)))
    debug("compare", report.first, report.second, ":", report.verdict)
    return report


def in_one_units(field, alpha, prime):
    """alpha lies in 1 + P O_{K,P}"""
    beta = field.sub(alpha, field.one)
    return beta == field.zero or field.element_valuation(prime, beta) >= 1


def _element_str(alpha):
    return [str(alpha.x), str(alpha.y)]


def multiplicative_data_report(tower, box):
    """The multiplicative data the additive reconstruction starts from"""
    field = tower[0].field
    primes = sorted({P for level in tower for P in level.supp})
    local = {}
    for P in primes:
        local[str(P)] = {
            "local_ring": [
                _element_str(alpha) for alpha in box if local_ring_intersection(field, alpha, P)
            ],
            "one_units": [_element_str(alpha) for alpha in box if in_one_units(field, alpha, P)],
        }
    intersection, integral = integral_intersection(field, box)
    return {
        "field": field.as_dict(),
        "levels": [
            {
                "conductor": level.modulus.as_list(),
                "maximal_labels": [r.label.as_list() for r in level.maximal_idempotents()],
            }
            for level in tower
        ],
        "local": local,
        "integers": [_element_str(alpha) for alpha in intersection],
        "integers_match": intersection == integral,
    }
