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
The Deligne-Ribet monoid at a finite level

At conductor f the monoid is the orbit space of (O_K/f) x Cl_f(K)
under u . (rho, s) = (u rho, s + iota(u)) for u in (O_K/f)^x, with
componentwise multiplication. Every orbit is represented by its
lexicographically least raw pair, so elements compare, hash and
serialise exactly.

Levels are built with ``build_dr()``; a list of levels along a chain of
conductors is a tower, built with ``build_tower()``.
"""


from collections import deque
from dataclasses import dataclass
from itertools import combinations
from math import ceil, prod

from drmonoid.abelian import FiniteAbelianGroup
from drmonoid.class_groups import RayClassGroup, reduced_forms
from drmonoid.common import DRMonoidError, PreconditionError, debug
from drmonoid.limits import get_limits
from drmonoid.residue_ring import ResidueRing


class LevelMismatchError(DRMonoidError):
    def __init__(self, x, level):
        super().__init__(f"{x} does not belong to the level {level}")


class NotIdempotentError(DRMonoidError):
    def __init__(self, x):
        super().__init__(f"{x} is not idempotent")


@dataclass(frozen=True, order=True)
class DRElement:
    level: tuple
    rho: tuple
    cls: tuple

    def __str__(self):
        rho = ",".join(f"{u.x}+{u.y}w" if u.y else str(u.x) for u in self.rho)
        return f"[({rho}),{list(self.cls)}]"

    def as_list(self):
        return [[[int(u.x), int(u.y)] for u in self.rho], list(self.cls)]


@dataclass(frozen=True)
class IdempotentRecord:
    element: DRElement
    subset: tuple
    maximal: bool = False
    label: object = None

    def as_dict(self):
        return {
            "element": self.element.as_list(),
            "subset": [P.as_list() for P in self.subset],
            "maximal": self.maximal,
            "label": None if self.label is None else self.label.as_list(),
        }


class DRMonoidLevel:
    def __init__(self, field, modulus, ring=None, ray=None):
        super(DRMonoidLevel, self).__init__()
        self.field = field
        self.modulus = modulus
        if ring is None:
            get_limits().check("orbit_cap", estimate_raw_pairs(field, modulus))
        self.ring = ring if ring is not None else ResidueRing(field, modulus)
        self.ray = ray if ray is not None else RayClassGroup(field, modulus, ring=self.ring)
        self.key = (field.descriptor, modulus)
        self.supp = list(self.ring.primes)

        raw_count = self.ring.size * self.ray.order
        get_limits().check("orbit_cap", raw_count)

        G = self.ray.group
        shifts = [(u, self.ray.iota(u)) for u in self.ring.unit_elements()]
        self._canonical = {}
        self.elements = []
        for rho in self.ring.elements():
            for s in G.elements():
                if (rho, s) in self._canonical:
                    continue
                x = DRElement(self.key, rho, s)
                self.elements.append(x)
                for u, t in shifts:
                    self._canonical[(self.ring.mul(u, rho), G.add(s, t))] = x
        assert len(self._canonical) == raw_count

        self.identity = self.canonical(self.ring.one, G.identity)
        self.e_empty = self.canonical(self.ring.zero, G.identity)
        self._omega = {}
        self._idempotents = None
        self._ik_image = None
        self._ik_support_image = None
        self._unit_subgroup = None
        self._ideal_images = {}
        debug(
            "DR level", field, "modulo", modulus, ":",
            f"{raw_count} raw pairs in {len(self.elements)} orbits",
        )

    def __repr__(self):
        return f"{self.__class__.__name__}({self.field}, {self.modulus})"

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def canonical(self, rho, s):
        """The representative of the orbit of the raw pair (rho, s)"""
        return self._canonical[(tuple(rho), tuple(s))]

    def _check(self, x):
        if x.level != self.key:
            raise LevelMismatchError(x, self)

    def mul(self, x, y):
        self._check(x)
        self._check(y)
        return self._canonical[(self.ring.mul(x.rho, y.rho), self.ray.group.add(x.cls, y.cls))]

    def power(self, x, k):
        if k < 0:
            return self.power(self.inverse(x), -k)
        result = self.identity
        while k:
            if k & 1:
                result = self.mul(result, x)
            x = self.mul(x, x)
            k >>= 1
        return result

    def _cycle(self, x):
        # x, x^2, ..., x^(i+p-1) with x^(i+p) = x^i
        seen = {}
        powers = []
        y = x
        while y not in seen:
            seen[y] = len(powers) + 1
            powers.append(y)
            y = self.mul(y, x)
        index = seen[y]
        return powers, index, len(powers) + 1 - index

    def omega(self, x):
        """The idempotent power of x"""
        if x not in self._omega:
            powers, index, period = self._cycle(x)
            m = period * ceil(index / period)
            self._omega[x] = powers[m - 1]
        return self._omega[x]

    def is_unit(self, x):
        return self.omega(x) == self.identity

    def inverse(self, x):
        """The inverse of a unit; anything with omega(x) != 1 is refused"""
        self._check(x)
        if not self.is_unit(x):
            raise PreconditionError(f"{x} is not invertible")
        powers, index, period = self._cycle(x)
        return self.identity if period == 1 else powers[period - 2]

    def e_S(self, subset):
        """[1_S, 1] for a subset S of supp(f)"""
        return self.canonical(self.ring.indicator(subset), self.ray.group.identity)

    def classify_idempotent(self, e):
        """S_e: the primes of supp(f) where rho_e is a unit"""
        self._check(e)
        if self.mul(e, e) != e:
            raise NotIdempotentError(e)
        return tuple(P for P in self.supp if self.ring.truncated_valuation(e.rho, P) == 0)

    def all_idempotents(self):
        """Exhaustive scan for e*e = e, with the maximal ones labelled"""
        if self._idempotents is None:
            found = [x for x in self.elements if self.mul(x, x) == x]
            maximal = set(self._maximal(found))
            records = []
            for e in found:
                subset = self.classify_idempotent(e)
                missing = [P for P in self.supp if P not in subset]
                label = missing[0] if e in maximal and len(missing) == 1 else None
                records.append(IdempotentRecord(e, subset, e in maximal, label))
            self._idempotents = records
            debug("idempotents of", self, ":", len(records))
        return self._idempotents

    def _maximal(self, idempotents):
        result = []
        for e in idempotents:
            if e == self.identity:
                continue
            if any(
                f not in (e, self.identity) and self.idempotent_leq(e, f)
                for f in idempotents
            ):
                continue
            result.append(e)
        return result

    def idempotent_leq(self, e, f):
        return self.mul(e, f) == e

    def maximal_idempotents(self):
        return [r for r in self.all_idempotents() if r.maximal]

    def subsets(self):
        """Every subset of supp(f), in size then supp order"""
        return [
            tuple(S)
            for k in range(len(self.supp) + 1)
            for S in combinations(self.supp, k)
        ]

    def ideal_to_dr(self, ideal):
        """[rho, rho^-1] for the integral idele of uniformiser powers of an ideal"""
        if ideal in self._ideal_images:
            return self._ideal_images[ideal]
        approx = self.ray.approximation
        G = self.ray.group
        rho = self.ring.one
        s = G.identity
        for P, k in self.field.ideal_factor(ideal).items():
            if P in approx.uniformizers:
                pi = self.ring.from_field(approx.uniformizers[P])
                rho = self.ring.mul(rho, self.ring.power(pi, k))
                s = G.add(s, G.scale(k, approx.cofactor_classes[P]))
            else:
                s = G.sub(s, G.scale(k, self.ray.ideal_class(P)))
        result = self.canonical(rho, s)
        self._ideal_images[ideal] = result
        return result

    def _closure(self, generators):
        image = {self.identity}
        queue = deque([self.identity])
        while queue:
            x = queue.popleft()
            for g in generators:
                y = self.mul(x, g)
                if y not in image:
                    image.add(y)
                    queue.append(y)
        return frozenset(image)

    def ik_image(self):
        """Image of the integral ideals, closed under multiplication"""
        if self._ik_image is None:
            generators = {self.ideal_to_dr(P) for P in self.supp}
            generators |= {self.ideal_to_dr(A) for A in self.ray.section().values()}
            self._ik_image = self._closure(sorted(generators))
            debug("I_K image of", self, ":", len(self._ik_image), "elements")
        return self._ik_image

    def ik_support_image(self):
        """Image of the ideals built from the primes of supp(f)"""
        if self._ik_support_image is None:
            self._ik_support_image = self._closure([self.ideal_to_dr(P) for P in self.supp])
        return self._ik_support_image

    def is_in_IK(self, x):
        self._check(x)
        return x in self.ik_image()

    def units(self):
        return [x for x in self.elements if self.is_unit(x)]

    def unit_subgroup(self):
        """DR^x as an abstract group over its elements"""
        if self._unit_subgroup is None:
            self._unit_subgroup = FiniteAbelianGroup.from_generators(
                self.units(), self.mul, self.identity
            )
        return self._unit_subgroup

    def in_ohat_units(self, x):
        return self.mul(x, self.e_empty) == self.e_empty and self.is_unit(x)

    def transition(self, x, target):
        """Image of x in a level whose conductor divides this one"""
        self._check(x)
        if target.field != self.field:
            raise PreconditionError(f"{target.field} is not {self.field}")
        rho = self.ring.reduce_to(x.rho, target.ring)
        return target.canonical(rho, self.ray.push(x.cls, target.ray))

    def to_json(self):
        index = {x: i for i, x in enumerate(self.elements)}
        return {
            "field": self.field.as_dict(),
            "conductor": self.modulus.as_list(),
            "supp": [P.as_list() for P in self.supp],
            "residue_ring": self.ring.as_dict(),
            "ray_class_group": self.ray.as_dict(),
            "element_count": len(self.elements),
            "elements": [x.as_list() for x in self.elements],
            "identity": index[self.identity],
            "e_empty": index[self.e_empty],
            "unit_subgroup": sorted(index[x] for x in self.units()),
            "ik_image": sorted(index[x] for x in self.ik_image()),
            "idempotents": [r.as_dict() for r in self.all_idempotents()],
        }


def build_dr(field, modulus):
    return DRMonoidLevel(field, modulus)


def build_tower(field, moduli):
    """Levels for a list of conductors, sorted by norm"""
    return [build_dr(field, f) for f in sorted(moduli, key=lambda f: (f.norm, f))]


def mul(x, y, level):
    return level.mul(x, y)


def omega(x, level):
    return level.omega(x)


def transition(x, source, target):
    return source.transition(x, target)


def divisor_chain(field, modulus):
    """f, f/P_1, f/(P_1 P_2), ..., (1), removing the smallest prime each time"""
    chain = [modulus]
    factorization = dict(field.ideal_factor(modulus))
    while factorization:
        P = min(factorization, key=lambda P: (P.norm, P))
        factorization[P] -= 1
        if not factorization[P]:
            del factorization[P]
        chain.append(field.ideal_from_factorization(factorization))
    return chain


def estimate_raw_pairs(field, modulus):
    """N(f) * |Cl(K)| * |(O_K/f)^x| / w, at most the raw pair count"""
    factorization = field.ideal_factor(modulus)
    units = prod(P.norm ** (e - 1) * (P.norm - 1) for P, e in factorization.items())
    if field.is_rational:
        return modulus.norm * units
    h = len(reduced_forms(field.discriminant))
    return modulus.norm * h * units // field.unit_order
