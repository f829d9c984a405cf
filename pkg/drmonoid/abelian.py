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
Finite abelian groups in Smith normal form

A group is a product of cyclic groups Z/d_1 x ... x Z/d_k (each d_i > 1)
whose elements are exponent vectors. Groups arise either as quotients
of Z^n by a relation lattice (``Presentation``) or as the span of
concrete objects under some multiplication
(``FiniteAbelianGroup.from_generators``); the latter keeps a discrete
log dictionary between the concrete objects and the exponent vectors.
"""


from collections import defaultdict
from itertools import product
from math import gcd, lcm, prod

from sympy import factorint
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import smith_normal_decomp

from drmonoid.common import PreconditionError, debug


def invariant_factors(orders):
    """Invariant factors d_1 | d_2 | ... of a product of cyclic groups

    >>> invariant_factors([2, 4, 8, 3, 9, 5])
    (2, 12, 360)
    """
    prime_exponents = defaultdict(list)
    for d in orders:
        for p, e in factorint(d).items():
            prime_exponents[int(p)].append(int(e))
    length = max((len(e_list) for e_list in prime_exponents.values()), default=0)
    factors = [1] * length
    for p, e_list in prime_exponents.items():
        for i, e in enumerate(sorted(e_list, reverse=True)):
            factors[length - 1 - i] *= p**e
    return tuple(factors)


class FiniteAbelianGroup:
    def __init__(self, orders, log=None):
        super(FiniteAbelianGroup, self).__init__()
        self._orders = tuple(int(d) for d in orders)
        if any(d <= 1 for d in self._orders):
            raise PreconditionError(f"cyclic orders must exceed 1: {self._orders}")
        self._log = log
        self._exp = None
        if log is not None:
            self._exp = {vec: obj for obj, vec in log.items()}
            assert len(self._exp) == len(log) == self.order

    def __str__(self):
        if not self._orders:
            return "trivial"
        return " x ".join(f"C{d}" for d in self._orders)

    def __repr__(self):
        return f"{self.__class__.__name__}({list(self._orders)})"

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(self.elements())

    def __contains__(self, vec):
        return (
            isinstance(vec, tuple)
            and len(vec) == self.rank
            and all(0 <= x < d for x, d in zip(vec, self._orders))
        )

    @property
    def orders(self):
        """The cyclic orders, in coordinate order"""
        return self._orders

    @property
    def invariants(self):
        """The invariant factors d_1 | d_2 | ..., the isomorphism type"""
        return invariant_factors(self._orders)

    @property
    def order(self):
        return prod(self._orders)

    @property
    def rank(self):
        return len(self._orders)

    @property
    def identity(self):
        return (0,) * self.rank

    def elements(self):
        return list(product(*(range(d) for d in self._orders)))

    def reduce(self, vec):
        return tuple(int(x) % d for x, d in zip(vec, self._orders))

    def add(self, u, v):
        return tuple((x + y) % d for x, y, d in zip(u, v, self._orders))

    def neg(self, u):
        return tuple((-x) % d for x, d in zip(u, self._orders))

    def sub(self, u, v):
        return self.add(u, self.neg(v))

    def scale(self, k, u):
        return tuple((k * x) % d for x, d in zip(u, self._orders))

    def sum(self, vectors):
        result = self.identity
        for vec in vectors:
            result = self.add(result, vec)
        return result

    def element_order(self, u):
        return lcm(*(d // gcd(x, d) for x, d in zip(u, self._orders)))

    @property
    def has_log(self):
        return self._log is not None

    def log(self, obj):
        """Exponent vector of a concrete group element"""
        try:
            return self._log[obj]
        except (KeyError, TypeError):
            raise PreconditionError(f"{obj!r} is not an element of the group {self}")

    def exp(self, vec):
        """Concrete group element of an exponent vector"""
        return self._exp[self.reduce(vec)]

    @property
    def generators(self):
        """Concrete elements for the unit vectors"""
        basis = []
        for i in range(self.rank):
            vec = [0] * self.rank
            vec[i] = 1
            basis.append(self.exp(vec))
        return basis

    def concrete_elements(self):
        return sorted(self._log)

    def as_dict(self):
        return {
            "order": self.order,
            "orders": list(self._orders),
            "invariants": list(self.invariants),
        }

    @classmethod
    def from_generators(cls, candidates, op, identity):
        """The group spanned by concrete objects under ``op``

        Candidates already in the span are skipped. A new candidate g
        with g^m the first power in the span, equal to the element of
        vector v, contributes the relation m*e_g - v.
        """
        table = {identity: ()}
        relations = []
        n = 0
        for g in candidates:
            if g in table:
                continue
            m, x = 1, g
            while x not in table:
                x = op(x, g)
                m += 1
            v = table[x]
            relations = [r + (0,) for r in relations]
            relations.append(tuple(-vi for vi in v) + (m,))
            n += 1
            extended = {}
            for h, vec in table.items():
                y = h
                for j in range(m):
                    extended[y] = vec + (j,)
                    y = op(y, g)
            table = extended
        presentation = Presentation(n, relations)
        log = {obj: presentation.project(vec) for obj, vec in table.items()}
        group = cls(presentation.group.orders, log=log)
        debug("FiniteAbelianGroup.from_generators:", group, f"from {n} generators")
        return group


class Presentation:
    """The quotient of Z^n by the row span of a relation matrix

    With S*R*T the Smith normal form of the relation matrix R, a free
    row vector x maps to the coordinates (x*T)_i mod d_i, keeping the
    diagonal entries d_i > 1. The rows of T^-1 are free vectors of the
    resulting generators.
    """

    def __init__(self, n, relations):
        super(Presentation, self).__init__()
        relations = [[int(x) for x in r] for r in relations]
        self.n = n
        if n == 0:
            self._t = []
            self._keep = []
            self._generators = []
            self.group = FiniteAbelianGroup([])
            return
        if len(relations) < n:
            raise PreconditionError(f"{len(relations)} relations on {n} generators leave an infinite quotient")
        m = DomainMatrix([[ZZ(x) for x in r] for r in relations], (len(relations), n), ZZ)
        smf, _, t = smith_normal_decomp(m)
        smf = smf.to_Matrix()
        diagonal = [abs(int(smf[i, i])) for i in range(n)]
        if 0 in diagonal:
            raise PreconditionError("relation matrix is rank deficient: infinite quotient")
        tm = t.to_Matrix()
        t_inv = tm.inv()
        self._t = [[int(tm[i, j]) for j in range(n)] for i in range(n)]
        self._keep = [i for i, d in enumerate(diagonal) if d != 1]
        self._generators = [[int(t_inv[i, j]) for j in range(n)] for i in self._keep]
        self.group = FiniteAbelianGroup([diagonal[i] for i in self._keep])

    def project(self, free):
        """Group coordinates of a free vector"""
        free = list(free)
        assert len(free) == self.n
        return self.group.reduce(
            sum(free[i] * self._t[i][j] for i in range(self.n)) for j in self._keep
        )

    def lift(self, vec):
        """A free vector projecting onto the given group element"""
        free = [0] * self.n
        for k, x in enumerate(vec):
            for i in range(self.n):
                free[i] += x * self._generators[k][i]
        return free
