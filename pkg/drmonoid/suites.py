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
Verification suites run by ``drmonoid-ctl verify``

Each suite adds named checks with a pass/fail flag and, on failure, a
witness to a ``SuiteReport``. The report serialises to JSON; the
human-readable table is rendered from that JSON only.
"""


import random

from dataclasses import dataclass
from itertools import product

from sympy import nextprime

import drmonoid.constants as const
from drmonoid.class_groups import FinIdele, idele_class, reduced_forms
from drmonoid.common import CapExceededError, debug
from drmonoid.dr_monoid import build_dr, divisor_chain
from drmonoid.field_core import FieldElement
from drmonoid.limits import get_limits
from drmonoid.reconstruction import (
    designated_nonglobal_ideles,
    fraction_box,
    in_ohat,
    in_ohat_oracle,
    in_Op,
    in_Op_coordinate,
    in_Op_relaxed,
    in_Op_separately,
    in_Op_star,
    in_Op_units,
    integral_box,
    integral_intersection,
    local_ring_intersection,
    local_ring_monoid_test,
    local_view,
    norm_box,
    recover_global,
    sigma_of,
    sigma_oracle,
    uniformiser,
    verify_u1_identity,
)


@dataclass
class Check:
    suite: str
    level: str
    name: str
    passed: bool
    witness: object = None

    def as_dict(self):
        return {
            "suite": self.suite,
            "level": self.level,
            "name": self.name,
            "passed": self.passed,
            "witness": None if self.passed else self.witness,
        }


@dataclass
class Observation:
    """Recorded data that is reported but does not fail the run"""

    suite: str
    level: str
    kind: str
    text: str
    data: object = None

    def as_dict(self):
        return {
            "suite": self.suite,
            "level": self.level,
            "kind": self.kind,
            "text": self.text,
            "data": self.data,
        }


class SuiteReport:
    def __init__(self, suites):
        super(SuiteReport, self).__init__()
        self.suites = list(suites)
        self.checks = []
        self.observations = []

    def add(self, suite, level, name, passed, witness=None):
        check = Check(suite, level, name, bool(passed), witness)
        debug(f"[{suite}] {level} {name}:", "OK" if check.passed else "ERROR")
        self.checks.append(check)
        return check

    def observe(self, suite, level, kind, text, data=None):
        observation = Observation(suite, level, kind, text, data)
        debug(f"[{suite}] {level} {kind}:", text)
        self.observations.append(observation)
        return observation

    def falsifications(self):
        return [o for o in self.observations if o.kind == "falsification"]

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def as_dict(self):
        return {
            "suites": self.suites,
            "checks": [c.as_dict() for c in self.checks],
            "observations": [o.as_dict() for o in self.observations],
            "passed": self.passed,
        }


class SuiteContext:
    def __init__(self, field, tower, seed=const.DEFAULT_SEED):
        super(SuiteContext, self).__init__()
        self.field = field
        self.tower = tower
        self.rng = random.Random(seed)
        self._chain = None

    def sample(self, population, k=const.SAMPLE_SIZE):
        population = list(population)
        if len(population) <= k:
            return population
        return self.rng.sample(population, k)

    def pairs(self, population):
        population = list(population)
        if len(population) ** 2 <= const.SAMPLE_SIZE:
            return list(product(population, repeat=2))
        return [
            (self.rng.choice(population), self.rng.choice(population))
            for _ in range(const.SAMPLE_SIZE)
        ]

    @property
    def chain(self):
        """The tower if it has a divisibility pair, else the divisor chain of its top"""
        if self._chain is None:
            if divisibility_pairs(self.tower):
                self._chain = self.tower
            else:
                top = self.tower[-1]
                levels = {top.modulus: top}
                for f in divisor_chain(self.field, top.modulus)[1:]:
                    levels[f] = build_dr(self.field, f)
                self._chain = list(levels.values())
        return self._chain

    def ideals(self, bound=const.IDEAL_NORM_BOUND):
        return [A for n in range(1, bound + 1) for A in self.field.ideals_of_norm(n)]


def tag(level):
    return f"{level.field} mod {level.modulus}"


def _first(items, k=5):
    return [str(x) for x in list(items)[:k]]


def divisibility_pairs(tower):
    """(source, target) with the target conductor a proper divisor"""
    return [
        (src, dst)
        for src in tower
        for dst in tower
        if src is not dst and src.field.ideal_divides(dst.modulus, src.modulus)
    ]


########################################################################
# Suites


def suite_idempotents(ctx, report):
    for level in ctx.tower:
        t = tag(level)
        records = level.all_idempotents()
        expected = 2 ** len(level.supp)
        report.add("idempotents", t, "count", len(records) == expected,
                   {"found": len(records), "expected": expected})

        bad = [r.element for r in records if level.e_S(r.subset) != r.element]
        report.add("idempotents", t, "every idempotent is some e_S", not bad, _first(bad))

        subsets = level.subsets()
        bad = [S for S in subsets if level.classify_idempotent(level.e_S(S)) != S]
        report.add("idempotents", t, "classify round trip", not bad, [[str(P) for P in S] for S in bad])

        product_bad, order_bad = [], []
        for S, T in product(subsets, repeat=2):
            e, f = level.e_S(S), level.e_S(T)
            meet = tuple(P for P in level.supp if P in S and P in T)
            if level.mul(e, f) != level.e_S(meet):
                product_bad.append([str(e), str(f)])
            if level.idempotent_leq(e, f) != set(S).issubset(T):
                order_bad.append([str(e), str(f)])
        report.add("idempotents", t, "e_S e_T = e_(S & T)", not product_bad, product_bad[:5])
        report.add("idempotents", t, "order matches inclusion", not order_bad, order_bad[:5])

        maximal = level.maximal_idempotents()
        labels = sorted(r.label for r in maximal)
        report.add("idempotents", t, "maximal idempotents label supp(f)",
                   labels == sorted(level.supp), [str(P) for P in labels])


def suite_omega(ctx, report):
    for level in ctx.tower:
        t = tag(level)
        elements = level.elements

        bad = []
        for x in elements:
            o = level.omega(x)
            if level.mul(o, o) != o or level.omega(o) != o:
                bad.append(x)
        report.add("omega", t, "omega is idempotent and fixed", not bad, _first(bad))

        if len(elements) <= const.EXHAUSTIVE_PAIR_LIMIT:
            candidates = elements
        else:
            candidates = ctx.sample(elements)
        bad = []
        for x in candidates:
            invertible = any(level.mul(x, y) == level.identity for y in elements)
            if invertible != level.is_unit(x):
                bad.append(x)
        report.add("omega", t, "omega(x) = 1 iff x is invertible", not bad, _first(bad))

        if len(elements) <= const.EXHAUSTIVE_TRIPLE_LIMIT:
            triples = list(product(elements, repeat=3))
        else:
            triples = [tuple(ctx.rng.choice(elements) for _ in range(3)) for _ in range(const.SAMPLE_SIZE)]
        bad = [
            (x, y, z) for x, y, z in triples
            if level.mul(level.mul(x, y), z) != level.mul(x, level.mul(y, z))
            or level.mul(x, y) != level.mul(y, x)
        ]
        report.add("omega", t, "associative and commutative", not bad, [_first(w) for w in bad[:5]])

        units = level.unit_subgroup()
        report.add("omega", t, "DR^x is Cl_f",
                   units.invariants == level.ray.group.invariants,
                   {"units": list(units.invariants), "ray": list(level.ray.group.invariants)})

        ideals = ctx.ideals(const.IDEAL_NORM_BOUND // 3)
        bad = []
        for A, B in product(ideals, repeat=2):
            AB = level.field.ideal_mul(A, B)
            if level.ideal_to_dr(AB) != level.mul(level.ideal_to_dr(A), level.ideal_to_dr(B)):
                bad.append([str(A), str(B)])
        report.add("omega", t, "ideal_to_dr is multiplicative", not bad, bad[:5])


def suite_local(ctx, report):
    field = ctx.field
    fractions = fraction_box(field, const.LOCAL_BOX_RADIUS)
    for level in ctx.tower:
        t = tag(level)
        bad = [x for x in level.elements if in_ohat(level, x) != in_ohat_oracle(level, x)]
        report.add("local", t, "in_ohat matches trivial-class representatives", not bad, _first(bad))
        for P in level.supp:
            view = local_view(level, P)
            incoherent, mismatch, separate_bad, wider = [], [], [], []
            for x in level.elements:
                chain = [
                    in_Op_units(level, x, P),
                    in_Op_star(level, x, P),
                    in_Op(level, x, P),
                    in_Op_separately(level, x, P),
                    in_ohat(level, x),
                ]
                if any(a and not b for a, b in zip(chain, chain[1:])):
                    incoherent.append(x)
                if chain[2] != in_Op_coordinate(level, x, P):
                    mismatch.append(x)
                if chain[3] != in_Op_relaxed(level, x, P):
                    separate_bad.append(x)
                if chain[3] and not chain[2]:
                    wider.append(x)
            report.add("local", t, f"{P} units => star => O_P => separate equations => Ohat",
                       not incoherent, _first(incoherent))
            report.add("local", t, f"{P} idempotent test matches coordinates", not mismatch, _first(mismatch))
            report.add("local", t, f"{P} separate equations match coordinates up to roots of unity",
                       not separate_bad, _first(separate_bad))
            if wider:
                report.observe("local", t, "note",
                               f"{P} separate equations admit {len(wider)} elements outside the O_P image",
                               _first(wider))
            report.add("local", t, f"{P} local zero is unique", view.zero_unique,
                       _first(view.zero_candidates))

            e = level.ring.exponent_at(P)
            bad = []
            for alpha in fractions:
                gamma, d = field.integral_parts(alpha)
                if max(field.element_valuation(P, gamma), field.element_valuation(P, FieldElement(d, 0))) >= e:
                    continue
                if local_ring_monoid_test(level, alpha, P, view) != local_ring_intersection(field, alpha, P):
                    bad.append(alpha)
            report.add("local", t, f"{P} divisibility in O_P matches valuations", not bad, _first(bad))

    intersection, integral = integral_intersection(field, fractions)
    report.add("local", str(field), "O_K is the intersection of the local rings",
               intersection == integral, _first(sorted(set(intersection) ^ set(integral))))


def suite_sigma(ctx, report):
    for level in ctx.tower:
        t = tag(level)
        for P in level.supp:
            view = local_view(level, P)
            stars = sorted(view.op_star)
            certificates = {x: sigma_of(level, x, P) for x in stars}
            for x, c in certificates.items():
                if not c.unique:
                    report.observe("sigma", t, "falsification",
                                   f"{P} sigma of {x} has {c.candidate_count} candidates", c.as_dict())

            bad = [x for x, c in certificates.items() if not c.candidates]
            report.add("sigma", t, f"{P} sigma exists", not bad, _first(bad))

            bad = [x for x, c in certificates.items() if c.candidates and not c.stabiliser_coset]
            report.add("sigma", t, f"{P} sigma is unique up to the stabiliser of x", not bad,
                       [certificates[x].as_dict() for x in bad[:3]])

            bad = [x for x in view.op_units if not certificates[x].unique]
            report.add("sigma", t, f"{P} sigma of a unit is unique", not bad, _first(bad))

            bad = [x for x, c in certificates.items() if sigma_oracle(level, x, P) not in c.candidates]
            report.add("sigma", t, f"{P} sigma matches [1, class^-1]", not bad, _first(bad))

            bad = []
            for x, y in ctx.pairs(stars):
                xy = level.mul(x, y)
                if xy not in view.op_star:
                    continue
                targets = certificates[xy].candidates
                if any(
                    level.mul(a, b) not in targets
                    for a in certificates[x].candidates
                    for b in certificates[y].candidates
                ):
                    bad.append([str(x), str(y)])
            report.add("sigma", t, f"{P} sigma is multiplicative", not bad, bad[:5])


def _ideal_idele(field, ideal):
    components = {}
    for Q, k in field.ideal_factor(ideal).items():
        components[Q] = field.power(uniformiser(field, Q), k)
    return FinIdele.from_dict(components)


def suite_reciprocity(ctx, report):
    field = ctx.field
    rays = [level.ray for level in ctx.tower]
    t = str(field)

    if not field.is_rational:
        forms = reduced_forms(field.discriminant)
        cl = ctx.tower[0].ray.cl
        report.add("reciprocity", t, "class number matches reduced forms",
                   cl.order == len(forms), {"forms": len(forms), "group": cl.order})
    for level in ctx.tower:
        ray = level.ray
        report.add("reciprocity", tag(level), "ray class order formula",
                   ray.order == ray.expected_order(),
                   {"order": ray.order, "expected": ray.expected_order()})

    box = sorted(set(norm_box(field, get_limits().norm_bound)) | set(field.units()))
    try:
        passing, contrast = recover_global(field, box, rays, const.NONGLOBAL_IDELE_COUNT)
    except CapExceededError as exc:
        report.add("reciprocity", t, "designated non-global ideles are rejected", False, str(exc))
        return
    # finite ideles of negative rationals are not trivial modulo f * infinity once f > 2
    if field.is_rational and any(ray.modulus.norm > 2 for ray in rays):
        expected = [alpha for alpha in box if alpha.x > 0]
        negatives = [alpha for alpha in box if alpha.x < 0]
        report.observe("reciprocity", t, "note",
                       f"{len(negatives)} negative rationals are outside the kernel: the ray class "
                       "groups of Q are taken modulo f times the real place",
                       _first(negatives))
    else:
        expected = box
    report.add("reciprocity", t, "global elements lie in the kernel", passing == expected,
               _first(sorted(set(passing) ^ set(expected))))
    rejected = [r for r in contrast if r.rejected]
    report.add("reciprocity", t, "designated non-global ideles are rejected",
               len(rejected) == len(contrast) == const.NONGLOBAL_IDELE_COUNT,
               [r.label for r in contrast if not r.rejected])

    pairs = divisibility_pairs(ctx.tower)
    bad = []
    for r in contrast:
        for src, dst in pairs:
            if r.trivial[src.modulus] and not r.trivial[dst.modulus]:
                bad.append(r.label)
    report.add("reciprocity", t, "verdicts are monotone in the level", not bad, bad[:5])

    ideles = [idele for _, idele, _ in designated_nonglobal_ideles(field, rays, 3)]
    ideles += [FinIdele.principal(alpha) for alpha in ctx.sample(box, 5)]
    for level in ctx.tower:
        ray = level.ray
        randomized = ray.randomized_approximation(ctx.rng)
        bad = [
            idele.as_dict() for idele in ideles
            if idele_class(idele, ray) != idele_class(idele, ray, randomized)
        ]
        report.add("reciprocity", tag(level), "idele class is independent of the approximation",
                   not bad, bad[:3])

        bad = []
        for A in ctx.ideals():
            if not field.is_coprime(A, ray.modulus):
                continue
            if idele_class(_ideal_idele(field, A), ray) != ray.ideal_class(A):
                bad.append(str(A))
        report.add("reciprocity", tag(level), "ideles of ideals match ideal classes", not bad, bad[:5])

    for src, dst in pairs:
        bad = []
        for A in ctx.ideals():
            if not field.is_coprime(A, src.modulus):
                continue
            if src.ray.push(src.ray.ideal_class(A), dst.ray) != dst.ray.ideal_class(A):
                bad.append(str(A))
        report.add("reciprocity", f"{tag(src)} -> {dst.modulus}", "push commutes with ideal classes",
                   not bad, bad[:5])


def prime_powers(field, bound):
    """(P, e) with N(P^e) <= bound"""
    result = []
    p = 2
    while p <= bound:
        for P, _ in field.primes_above(p):
            e = 1
            while P.norm**e <= bound:
                result.append((P, e))
                e += 1
        p = int(nextprime(p))
    return sorted(result, key=lambda pe: (pe[0].norm**pe[1], pe))


def suite_u1(ctx, report):
    field = ctx.field
    box = integral_box(field, get_limits().search_box)
    bad, box_bad = [], []
    checked = 0
    for P, e in prime_powers(field, const.U1_NORM_BOUND):
        result = verify_u1_identity(field, P, e, box)
        checked += 1
        if not result.identity_holds:
            bad.append(result.as_dict())
        if not result.box_agree:
            box_bad.append(result.as_dict())
    report.add("u1", str(field), f"(N(P)-1)-th powers are the reduction kernel ({checked} prime powers)",
               not bad, bad[:3])
    report.add("u1", str(field), "box elements in 1 + P match the powers", not box_bad, box_bad[:3])


def suite_transitions(ctx, report):
    chain = ctx.chain
    pairs = divisibility_pairs(chain)
    report.add("transitions", str(ctx.field), "divisibility pairs", bool(pairs), len(pairs))
    ideals = ctx.ideals()
    for src, dst in pairs:
        t = f"{tag(src)} -> {dst.modulus}"
        report.add("transitions", t, "identity", src.transition(src.identity, dst) == dst.identity)

        bad = []
        for S in src.subsets():
            restricted = tuple(P for P in S if P in dst.supp)
            image = src.transition(src.e_S(S), dst)
            if image != dst.e_S(restricted) or dst.classify_idempotent(image) != restricted:
                bad.append([str(P) for P in S])
        report.add("transitions", t, "e_S maps to e_(S & supp)", not bad, bad[:5])

        bad = []
        for x, y in ctx.pairs(src.elements):
            if src.transition(src.mul(x, y), dst) != dst.mul(src.transition(x, dst), src.transition(y, dst)):
                bad.append([str(x), str(y)])
        report.add("transitions", t, "multiplicative", not bad, bad[:5])

        bad = [
            x for x in ctx.sample(src.elements)
            if src.transition(src.omega(x), dst) != dst.omega(src.transition(x, dst))
        ]
        report.add("transitions", t, "commutes with omega", not bad, _first(bad))

        bad = [
            str(A) for A in ideals
            if src.transition(src.ideal_to_dr(A), dst) != dst.ideal_to_dr(A)
        ]
        report.add("transitions", t, "commutes with ideal_to_dr", not bad, bad[:5])


SUITE_FUNCTIONS = {
    "idempotents": suite_idempotents,
    "omega": suite_omega,
    "local": suite_local,
    "sigma": suite_sigma,
    "reciprocity": suite_reciprocity,
    "u1": suite_u1,
    "transitions": suite_transitions,
}


def run_suites(field, tower, names, seed=const.DEFAULT_SEED):
    if const.SUITE_ALL in names:
        names = list(const.SUITES)
    report = SuiteReport(names)
    ctx = SuiteContext(field, tower, seed)
    for name in names:
        SUITE_FUNCTIONS[name](ctx, report)
    return report


def print_step(tag, details, **printopts):
    print(f"  [{tag}] {details}", **printopts)


def print_report(doc):
    """Render a suite report document as a table"""
    print("Suites:", ", ".join(doc["suites"]))
    for check in doc["checks"]:
        print_step(check["suite"], f"{check['level']} {check['name']}", end=": ")
        if check["passed"]:
            print("OK")
        else:
            print("ERROR")
            print("Witness:", check["witness"])
    for observation in doc.get("observations", []):
        print_step(observation["suite"], f"{observation['level']} {observation['kind']}", end=": ")
        print(observation["text"])
    print("Result:", "PASS" if doc["passed"] else "FAIL")
