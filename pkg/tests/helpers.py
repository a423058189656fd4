"""Shared test utilities: fixtures, seeded RNG and independent oracles."""

from __future__ import annotations

import os
import random
from fractions import Fraction
from itertools import product

from toric_dmod.fan_cox import Fan, GradingData, grading_data
from toric_dmod.groebner import Poly, PolyRing
from toric_dmod.weyl import WeylElement


def rng(salt: int = 0) -> random.Random:
    seed = int(os.environ.get("TORIC_DMOD_SEED", "20240718"))
    return random.Random(seed + salt)


def fan_p1() -> Fan:
    return Fan(1, [[1], [-1]], [[0], [1]])


def fan_p2() -> Fan:
    return Fan(2, [[1, 0], [0, 1], [-1, -1]], [[0, 1], [1, 2], [0, 2]])


def fan_p1p1() -> Fan:
    return Fan(2, [[1, 0], [-1, 0], [0, 1], [0, -1]],
               [[0, 2], [0, 3], [1, 2], [1, 3]])


def fan_hirzebruch1() -> Fan:
    return Fan(2, [[1, 0], [0, 1], [-1, 1], [0, -1]],
               [[0, 1], [1, 2], [2, 3], [3, 0]])


def fan_torsion() -> Fan:
    # two rays, no top cone: the class group is Z/2
    return Fan(2, [[1, 1], [1, -1]], [])


def all_fixture_fans():
    return [("p1", fan_p1()), ("p2", fan_p2()), ("p1p1", fan_p1p1()),
            ("hirzebruch1", fan_hirzebruch1())]


def grading(fan: Fan) -> GradingData:
    return grading_data(fan)


# Macaulay-matrix linear-algebra membership oracle (independent of Buchberger)


def _monomials_up_to(nvars: int, degree: int):
    def rec(pos, remaining):
        if pos == nvars - 1:
            for k in range(remaining + 1):
                yield (k,)
            return
        for k in range(remaining + 1):
            for rest in rec(pos + 1, remaining - k):
                yield (k,) + rest
    if nvars == 0:
        yield ()
        return
    yield from rec(0, degree)


def _echelon_reduce(row: dict, echelon: dict) -> dict:
    row = dict(row)
    while row:
        lead = max(row)
        if lead not in echelon:
            return row
        c = row[lead]
        for e, v in echelon[lead].items():
            nv = row.get(e, Fraction(0)) - c * v
            if nv:
                row[e] = nv
            else:
                row.pop(e, None)
    return row


class MacaulayOracle:
    """Span of {x^m g : total degree <= cap} via exact Gaussian elimination.

    A desk-scale membership decision procedure independent of Buchberger;
    the echelon basis is built once and reused across membership queries.
    """

    def __init__(self, gens: list[Poly], ring: PolyRing, degree_cap: int):
        self.cap = degree_cap
        self.echelon: dict = {}
        for g in gens:
            if g.is_zero():
                continue
            gdeg = g.total_degree()
            for m in _monomials_up_to(ring.nvars, max(degree_cap - gdeg, 0)):
                shifted = {tuple(x + y for x, y in zip(e, m)): c
                           for e, c in g.terms.items()}
                row = _echelon_reduce(shifted, self.echelon)
                if row:
                    lead = max(row)
                    c = row[lead]
                    self.echelon[lead] = {e: v / c for e, v in row.items()}

    def member(self, f: Poly) -> bool:
        return not _echelon_reduce(dict(f.terms), self.echelon)


def macaulay_membership(f: Poly, gens: list[Poly], degree_cap: int) -> bool:
    return MacaulayOracle(gens, f.ring, degree_cap).member(f)


def macaulay_membership_stable(f: Poly, gens: list[Poly], extra: int = 4) -> bool:
    """Membership with the multiplier degree window widened until stable."""
    base = max([f.total_degree()] + [g.total_degree() for g in gens])
    return any(macaulay_membership(f, gens, base + k) for k in range(extra + 1))


def random_poly(r: random.Random, ring: PolyRing, degree: int, nterms: int) -> Poly:
    terms = {}
    for _ in range(nterms):
        total = r.randint(0, degree)
        e = [0] * ring.nvars
        for _ in range(total):
            e[r.randrange(ring.nvars)] += 1
        c = Fraction(r.randint(-5, 5))
        if c:
            terms[tuple(e)] = terms.get(tuple(e), Fraction(0)) + c
    return Poly(ring, terms)


def random_weyl(r: random.Random, d: int, degree: int = 2, nterms: int = 3) -> WeylElement:
    terms = {}
    for _ in range(nterms):
        a = tuple(r.randint(0, degree) for _ in range(d))
        b = tuple(r.randint(0, degree) for _ in range(d))
        c = Fraction(r.randint(-4, 4), r.randint(1, 3))
        if c:
            terms[(a, b)] = terms.get((a, b), Fraction(0)) + c
    return WeylElement(d, terms)


def random_homogeneous_weyl(r: random.Random, gd: GradingData, total: int = 2,
                            nterms: int = 2) -> WeylElement:
    """Nonzero homogeneous element of bounded total degree: monomials sharing
    a class-group degree, with random coefficients."""
    d = gd.d
    group = gd.class_group
    buckets: dict = {}
    for a in product(range(total + 1), repeat=d):
        if sum(a) > total:
            continue
        for b in product(range(total + 1 - sum(a)), repeat=d):
            cls = group.add(group.project(a), group.neg(group.project(b)))
            buckets.setdefault(cls, []).append((a, b))
    cls = r.choice(sorted(buckets))
    pool = buckets[cls]
    terms = {}
    for _ in range(nterms):
        a, b = pool[r.randrange(len(pool))]
        c = Fraction(r.randint(-3, 3))
        if c:
            terms[(a, b)] = terms.get((a, b), Fraction(0)) + c
    terms = {k: c for k, c in terms.items() if c}
    if not terms:
        a, b = pool[0]
        terms[(a, b)] = Fraction(1)
    return WeylElement(d, terms)
