"""Groebner engines over Q: commutative ideals/submodules and filtered
Weyl-algebra submodules for the order filtration.

Commutative polynomials are dicts {exponent tuple: Fraction} attached to a
PolyRing; free-module elements are dicts {(component, exponent): Fraction}.
All reduced bases are canonical (monic, auto-reduced, sorted), so outputs
are reproducible byte-for-byte.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import comb, perm

from .parsing import format_terms
from .weyl import WeylElement

EMPTY_DIM = "empty"


@dataclass(frozen=True)
class PolyRing:
    """Commutative polynomial ring descriptor with optional class grading."""

    names: tuple[str, ...]
    degrees: tuple[tuple[int, ...], ...] | None = None
    group: object | None = field(default=None, compare=False)

    @property
    def nvars(self) -> int:
        return len(self.names)

    def term_degree(self, exp):
        """Class-group degree of a monomial (requires degrees + group)."""
        cls = self.group.zero()
        for e, dg in zip(exp, self.degrees):
            if e:
                cls = self.group.add(cls, self.group.scale(e, dg))
        return cls


class Poly:
    """Commutative polynomial with rational coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms=None):
        self.ring = ring
        clean = {}
        for e, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def zero(cls, ring):
        return cls(ring)

    @classmethod
    def constant(cls, ring, c):
        return cls(ring, {(0,) * ring.nvars: Fraction(c)})

    @classmethod
    def variable(cls, ring, i, exp=1):
        e = tuple(exp if j == i else 0 for j in range(ring.nvars))
        return cls(ring, {e: Fraction(1)})

    @classmethod
    def monomial(cls, ring, e, c=1):
        return cls(ring, {tuple(e): Fraction(c)})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, Poly) and self.ring.names == other.ring.names \
            and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring.names, tuple(sorted(self.terms.items()))))

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            nc = out.get(e, Fraction(0)) + c
            if nc:
                out[e] = nc
            else:
                out.pop(e, None)
        return Poly(self.ring, out)

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                nc = out.get(e, Fraction(0)) + c1 * c2
                if nc:
                    out[e] = nc
                else:
                    out.pop(e, None)
        return Poly(self.ring, out)

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return Poly(self.ring)
        return Poly(self.ring, {e: v * c for e, v in self.terms.items()})

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"


def format_poly(p: Poly) -> str:
    if p.is_zero():
        return "0"
    items = sorted(p.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)
    return format_terms([(c, [(p.ring.names[i], k) for i, k in enumerate(e) if k])
                         for e, c in items])


# term orders; key functions produce tuples whose max is the leading term


class TermOrder:
    def __init__(self, keyfn, name):
        self.key = keyfn
        self.name = name

    def __repr__(self):
        return f"TermOrder({self.name})"


def lex_order() -> TermOrder:
    return TermOrder(lambda e: tuple(e), "lex")


def degrevlex_order() -> TermOrder:
    return TermOrder(lambda e: (sum(e), tuple(-x for x in reversed(e))), "degrevlex")


def weight_order(weights, tiebreak: TermOrder | None = None) -> TermOrder:
    tiebreak = tiebreak or degrevlex_order()
    w = tuple(weights)

    def key(e):
        return (sum(wi * xi for wi, xi in zip(w, e)), tiebreak.key(e))

    return TermOrder(key, f"weight{w}")


def block_order(front: int, first: TermOrder | None = None,
                second: TermOrder | None = None) -> TermOrder:
    """Eliminates the first `front` variables."""
    first = first or degrevlex_order()
    second = second or degrevlex_order()

    def key(e):
        return (first.key(e[:front]), second.key(e[front:]))

    return TermOrder(key, f"block({front})")


class ModuleOrder:
    """Position-over-term order; priority lists components from highest down."""

    def __init__(self, order: TermOrder, rank: int, priority=None):
        self.order = order
        self.rank = rank
        priority = tuple(priority) if priority is not None else tuple(range(rank))
        self._pos = {comp: i for i, comp in enumerate(priority)}
        self._cache: dict = {}

    def key(self, ce):
        cached = self._cache.get(ce)
        if cached is None:
            comp, e = ce
            cached = (-self._pos[comp], self.order.key(e))
            self._cache[ce] = cached
        return cached


# the engine works on vecs: dict {(component, exponent tuple): Fraction}


def poly_to_vec(p: Poly, comp: int = 0) -> dict:
    return {(comp, e): c for e, c in p.terms.items()}

def vec_to_polys(vec: dict, ring: PolyRing, rank: int) -> tuple[Poly, ...]:
    split = [dict() for _ in range(rank)]
    for (comp, e), c in vec.items():
        split[comp][e] = c
    return tuple(Poly(ring, t) for t in split)


def _vec_lt(vec: dict, morder: ModuleOrder):
    key = max(vec, key=morder.key)
    return key, vec[key]


def _vec_sub_scaled(f: dict, g: dict, c: Fraction, shift) -> dict:
    """f - c * x^shift * g, in place on a copy of f."""
    out = dict(f)
    for (comp, e), cg in g.items():
        key = (comp, tuple(x + s for x, s in zip(e, shift)))
        nc = out.get(key, Fraction(0)) - c * cg
        if nc:
            out[key] = nc
        else:
            out.pop(key, None)
    return out


def vec_normal_form(f: dict, basis: list[dict], morder: ModuleOrder) -> dict:
    """Full normal form; terms not reducible by any basis leading term remain."""
    lts = [_vec_lt(g, morder) for g in basis]
    work = dict(f)
    remainder: dict = {}
    while work:
        (comp, e), c = _vec_lt(work, morder)
        hit = None
        for idx, ((gcomp, ge), gc) in enumerate(lts):
            if gcomp == comp and all(x >= y for x, y in zip(e, ge)):
                hit = (idx, gc, tuple(x - y for x, y in zip(e, ge)))
                break
        if hit is None:
            remainder[(comp, e)] = c
            del work[(comp, e)]
        else:
            idx, gc, shift = hit
            work = _vec_sub_scaled(work, basis[idx], c / gc, shift)
    return remainder


def _vec_monic(f: dict, morder: ModuleOrder) -> dict:
    _, c = _vec_lt(f, morder)
    if c == 1:
        return f
    return {k: v / c for k, v in f.items()}


def buchberger_vec(gens: list[dict], morder: ModuleOrder) -> list[dict]:
    """Reduced Groebner basis of the submodule generated by gens."""
    import heapq

    basis = [_vec_monic(g, morder) for g in gens if g]
    basis.sort(key=lambda g: morder.key(_vec_lt(g, morder)[0]))
    # drop duplicates
    seen = set()
    uniq = []
    for g in basis:
        key = tuple(sorted(g.items()))
        if key not in seen:
            seen.add(key)
            uniq.append(g)
    basis = uniq
    lms = [_vec_lt(g, morder)[0] for g in basis]

    heap: list = []

    def push_pair(i, j):
        (comp, ei), (_, ej) = lms[i], lms[j]
        lcm = tuple(max(x, y) for x, y in zip(ei, ej))
        heapq.heappush(heap, (morder.key((comp, lcm)), i, j))

    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if lms[i][0] == lms[j][0]:
                push_pair(i, j)

    while heap:
        _, i, j = heapq.heappop(heap)
        (comp, ei), (_, ej) = lms[i], lms[j]
        if all(x == 0 or y == 0 for x, y in zip(ei, ej)):
            continue  # coprime leading terms reduce to zero (same component)
        lcm = tuple(max(x, y) for x, y in zip(ei, ej))
        fi = _vec_sub_scaled({}, basis[i], Fraction(-1), tuple(a - b for a, b in zip(lcm, ei)))
        s = _vec_sub_scaled(fi, basis[j], Fraction(1), tuple(a - b for a, b in zip(lcm, ej)))
        s = vec_normal_form(s, basis, morder)
        if s:
            s = _vec_monic(s, morder)
            incoming = len(basis)
            basis.append(s)
            lms.append(_vec_lt(s, morder)[0])
            for k in range(incoming):
                if lms[k][0] == lms[incoming][0]:
                    push_pair(k, incoming)
    # minimalize: drop elements whose LM is divisible by another LM
    keep = []
    lms = [_vec_lt(g, morder)[0] for g in basis]
    for i, g in enumerate(basis):
        (ci, ei) = lms[i]
        divisible = False
        for j in range(len(basis)):
            if i == j:
                continue
            (cj, ej) = lms[j]
            if ci == cj and all(x >= y for x, y in zip(ei, ej)):
                if (all(x == y for x, y in zip(ei, ej)) and j > i):
                    continue  # identical LM: keep the earlier one
                divisible = True
                break
        if not divisible:
            keep.append(g)
    # inter-reduce tails
    reduced = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        h = vec_normal_form(g, others, morder) if others else g
        reduced.append(_vec_monic(h, morder))
    reduced.sort(key=lambda g: morder.key(_vec_lt(g, morder)[0]))
    return reduced


# ideal-level API


def groebner_basis(gens: list[Poly], ring: PolyRing,
                   order: TermOrder | None = None) -> list[Poly]:
    order = order or degrevlex_order()
    vecs = [poly_to_vec(g) for g in gens if not g.is_zero()]
    if not vecs:
        return []
    gb = buchberger_vec(vecs, ModuleOrder(order, 1))
    return [vec_to_polys(v, ring, 1)[0] for v in gb]


def normal_form(f: Poly, gb: list[Poly], order: TermOrder | None = None) -> Poly:
    order = order or degrevlex_order()
    basis = [poly_to_vec(g) for g in gb if not g.is_zero()]
    if not basis or f.is_zero():
        return f
    nf = vec_normal_form(poly_to_vec(f), basis, ModuleOrder(order, 1))
    return vec_to_polys(nf, f.ring, 1)[0]


def in_ideal(f: Poly, gb: list[Poly], order: TermOrder | None = None) -> bool:
    return normal_form(f, gb, order).is_zero()


def is_unit_ideal(gb: list[Poly]) -> bool:
    return any(not g.is_zero() and g.total_degree() == 0 for g in gb)


def ring_with_front_var(ring: PolyRing, name: str) -> PolyRing:
    return PolyRing((name,) + ring.names)


def _lift_front(p: Poly, big: PolyRing) -> Poly:
    return Poly(big, {(0,) + e: c for e, c in p.terms.items()})


def _drop_front(p: Poly, small: PolyRing) -> Poly:
    return Poly(small, {e[1:]: c for e, c in p.terms.items()})


def eliminate_front(gens: list[Poly], big: PolyRing, small: PolyRing) -> list[Poly]:
    """Reduced GB of (gens) intersected with the subring missing the front var."""
    gb = groebner_basis(gens, big, block_order(1))
    out = [_drop_front(g, small) for g in gb if all(e[0] == 0 for e in g.terms)]
    return groebner_basis(out, small)


def saturation(gens: list[Poly], f: Poly, ring: PolyRing) -> list[Poly]:
    """(I : f^infinity) computed by eliminating t from I + (1 - t f)."""
    big = ring_with_front_var(ring, "t#")
    lifted = [_lift_front(g, big) for g in gens]
    t = Poly.variable(big, 0)
    lifted.append(Poly.constant(big, 1) - t * _lift_front(f, big))
    return eliminate_front(lifted, big, ring)


def intersect_ideals(i_gens: list[Poly], j_gens: list[Poly], ring: PolyRing) -> list[Poly]:
    big = ring_with_front_var(ring, "t#")
    t = Poly.variable(big, 0)
    one_minus_t = Poly.constant(big, 1) - t
    lifted = [t * _lift_front(g, big) for g in i_gens]
    lifted += [one_minus_t * _lift_front(g, big) for g in j_gens]
    return eliminate_front(lifted, big, ring)


def saturation_by_monomials(gens: list[Poly], monomials, ring: PolyRing) -> list[Poly]:
    """(I : b^infinity) for the monomial ideal with the given exponent vectors."""
    result = None
    for mono in sorted(monomials):
        sat = saturation(gens, Poly.monomial(ring, mono), ring)
        result = sat if result is None else intersect_ideals(result, sat, ring)
    if result is None:
        return groebner_basis(gens, ring)
    return result


def radical_membership(f: Poly, gens: list[Poly], ring: PolyRing) -> bool:
    """f in the radical of (gens), by the trick with an inverse variable."""
    big = ring_with_front_var(ring, "t#")
    lifted = [_lift_front(g, big) for g in gens]
    t = Poly.variable(big, 0)
    lifted.append(Poly.constant(big, 1) - t * _lift_front(f, big))
    gb = groebner_basis(lifted, big)
    return is_unit_ideal(gb)


def krull_dimension(gens: list[Poly], ring: PolyRing,
                    order: TermOrder | None = None):
    """Dimension of V(gens): the largest variable set independent modulo the
    initial ideal. Returns EMPTY_DIM for the unit ideal."""
    gb = groebner_basis(gens, ring, order)
    if is_unit_ideal(gb):
        return EMPTY_DIM
    supports = []
    for g in gb:
        lm = max(g.terms, key=(order or degrevlex_order()).key)
        supports.append(frozenset(i for i, e in enumerate(lm) if e))
    nv = ring.nvars
    for size in range(nv, -1, -1):
        for subset in combinations(range(nv), size):
            s = set(subset)
            if not any(sup <= s for sup in supports):
                return size
    return 0


# Weyl-side engine: free left modules with the order-filtration weight.
# Internally elements are flat dicts {(component, a, b): coefficient}; the
# public API speaks tuples of WeylElement.


class WeylModuleOrder:
    """POT over (weight = total d-degree, then degrevlex on x,d jointly)."""

    def __init__(self, rank: int, priority=None):
        self.rank = rank
        priority = tuple(priority) if priority is not None else tuple(range(rank))
        self._pos = {comp: i for i, comp in enumerate(priority)}
        self._cache: dict = {}

    def key(self, cab):
        cached = self._cache.get(cab)
        if cached is None:
            comp, a, b = cab
            joint = a + b
            cached = (-self._pos[comp], sum(b),
                      sum(joint), tuple(-x for x in reversed(joint)))
            self._cache[cab] = cached
        return cached


def _rows_to_wdict(vec) -> dict:
    out = {}
    for comp, elt in enumerate(vec):
        for (a, b), c in elt.terms.items():
            out[(comp, a, b)] = c
    return out


def _wdict_to_rows(w: dict, rank: int, d: int):
    split = [dict() for _ in range(rank)]
    for (comp, a, b), c in w.items():
        split[comp][(a, b)] = c
    return tuple(WeylElement(d, t) for t in split)


def _wdict_lt(w: dict, worder: WeylModuleOrder):
    key = max(w, key=worder.key)
    return key, w[key]


def _wdict_sub_mono_mul(f: dict, g: dict, coeff: Fraction, da, db, d: int) -> dict:
    """f - coeff * x^da d^db * g with the normal-ordering corrections."""
    out = dict(f)
    for (comp, a, b), cg in g.items():
        ranges = [range(min(db[i], a[i]) + 1) for i in range(d)]
        for k in product(*ranges):
            c = coeff * cg
            for i in range(d):
                if k[i]:
                    c *= comb(db[i], k[i]) * perm(a[i], k[i])
            if not c:
                continue
            key = (comp,
                   tuple(da[i] + a[i] - k[i] for i in range(d)),
                   tuple(db[i] + b[i] - k[i] for i in range(d)))
            nc = out.get(key, Fraction(0)) - c
            if nc:
                out[key] = nc
            else:
                out.pop(key, None)
    return out


def _wdict_normal_form(f: dict, basis: list[dict], lts: list, d: int,
                       worder: WeylModuleOrder) -> dict:
    work = dict(f)
    remainder: dict = {}
    while work:
        (comp, a, b), c = _wdict_lt(work, worder)
        hit = None
        for idx, ((gcomp, ga, gb), gc) in enumerate(lts):
            if gcomp == comp and all(x >= y for x, y in zip(a, ga)) \
                    and all(x >= y for x, y in zip(b, gb)):
                hit = (idx, gc,
                       tuple(x - y for x, y in zip(a, ga)),
                       tuple(x - y for x, y in zip(b, gb)))
                break
        if hit is None:
            remainder[(comp, a, b)] = c
            del work[(comp, a, b)]
        else:
            idx, gc, da, db = hit
            work = _wdict_sub_mono_mul(work, basis[idx], c / gc, da, db, d)
    return remainder


def _wdict_monic(w: dict, worder: WeylModuleOrder) -> dict:
    _, c = _wdict_lt(w, worder)
    if c == 1:
        return w
    return {k: v / c for k, v in w.items()}


def weyl_normal_form(f, basis, worder: WeylModuleOrder):
    """Left normal form of a module element against a list of module elements."""
    d = f[0].d
    rank = len(f)
    wb = [_rows_to_wdict(g) for g in basis]
    lts = [_wdict_lt(g, worder) for g in wb]
    nf = _wdict_normal_form(_rows_to_wdict(f), wb, lts, d, worder)
    return _wdict_to_rows(nf, rank, d)


def weyl_buchberger(gens, rank: int, d: int, priority=None) -> list:
    """Reduced filtered GB of the left submodule of A^rank generated by gens.

    The order refines the order-filtration weight (0 on x, 1 on d) with a
    graded tiebreak, so Buchberger terminates without homogenization.
    """
    import heapq

    worder = WeylModuleOrder(rank, priority)
    basis = []
    for g in gens:
        w = _rows_to_wdict(g)
        if w:
            basis.append(_wdict_monic(w, worder))
    basis.sort(key=lambda g: worder.key(_wdict_lt(g, worder)[0]))
    seen = set()
    uniq = []
    for g in basis:
        key = tuple(sorted(g.items()))
        if key not in seen:
            seen.add(key)
            uniq.append(g)
    basis = uniq
    lms = [_wdict_lt(g, worder)[0] for g in basis]
    lts = [(lm, basis[i][lm]) for i, lm in enumerate(lms)]

    heap: list = []

    def push_pair(i, j):
        (comp, ai, bi), (_, aj, bj) = lms[i], lms[j]
        la = tuple(max(x, y) for x, y in zip(ai, aj))
        lb = tuple(max(x, y) for x, y in zip(bi, bj))
        heapq.heappush(heap, (worder.key((comp, la, lb)), i, j))

    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if lms[i][0] == lms[j][0]:
                push_pair(i, j)

    zero = (0,) * d
    while heap:
        _, i, j = heapq.heappop(heap)
        (comp, ai, bi), (_, aj, bj) = lms[i], lms[j]
        la = tuple(max(x, y) for x, y in zip(ai, aj))
        lb = tuple(max(x, y) for x, y in zip(bi, bj))
        s = _wdict_sub_mono_mul({}, basis[i], Fraction(-1),
                                tuple(x - y for x, y in zip(la, ai)),
                                tuple(x - y for x, y in zip(lb, bi)), d)
        s = _wdict_sub_mono_mul(s, basis[j], Fraction(1),
                                tuple(x - y for x, y in zip(la, aj)),
                                tuple(x - y for x, y in zip(lb, bj)), d)
        s = _wdict_normal_form(s, basis, lts, d, worder)
        if s:
            s = _wdict_monic(s, worder)
            incoming = len(basis)
            basis.append(s)
            lm = _wdict_lt(s, worder)[0]
            lms.append(lm)
            lts.append((lm, s[lm]))
            for k in range(incoming):
                if lms[k][0] == lm[0]:
                    push_pair(k, incoming)
    # minimalize
    keep = []
    for i, g in enumerate(basis):
        ci, ai, bi = lms[i]
        divisible = False
        for j in range(len(basis)):
            if i == j:
                continue
            cj, aj, bj = lms[j]
            if ci == cj and all(x >= y for x, y in zip(ai, aj)) \
                    and all(x >= y for x, y in zip(bi, bj)):
                if ai == aj and bi == bj and j > i:
                    continue
                divisible = True
                break
        if not divisible:
            keep.append(g)
    reduced = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        if others:
            olts = [_wdict_lt(o, worder) for o in others]
            h = _wdict_normal_form(g, others, olts, d, worder)
        else:
            h = g
        reduced.append(_wdict_monic(h, worder))
    reduced.sort(key=lambda g: worder.key(_wdict_lt(g, worder)[0]))
    return [_wdict_to_rows(g, rank, d) for g in reduced]


def initial_forms(gb, sprime: PolyRing, rank: int = 1) -> list[dict]:
    """Top-weight parts of filtered GB elements as commutative vecs over S'.

    Exponents are laid out x_1..x_d then xi_1..xi_d.
    """
    out = []
    for vec in gb:
        flat = _rows_to_wdict(vec)
        weight = max(sum(b) for (_, _, b) in flat)
        comm: dict = {}
        for (comp, a, b), c in flat.items():
            if sum(b) == weight:
                comm[(comp, a + b)] = c
        out.append(comm)
    return out


def annihilator_of_graded_quotient(init_vecs: list[dict], sprime: PolyRing,
                                   rank: int) -> list[Poly]:
    """Ann_{S'}(S'^rank / <init_vecs>) as a reduced GB.

    Rank one is the ideal itself; otherwise intersect the component colons,
    each computed by module elimination.
    """
    if rank == 1:
        gens = [vec_to_polys(v, sprime, 1)[0] for v in init_vecs]
        return groebner_basis(gens, sprime)
    ann: list[Poly] | None = None
    for i in range(rank):
        priority = [j for j in range(rank) if j != i] + [i]
        gb = buchberger_vec(list(init_vecs), ModuleOrder(degrevlex_order(), rank, priority))
        colon = []
        for v in gb:
            comps = {comp for (comp, _) in v}
            if comps == {i}:
                colon.append(vec_to_polys(v, sprime, rank)[i])
        colon = groebner_basis(colon, sprime)
        ann = colon if ann is None else intersect_ideals(ann, colon, sprime)
    return ann if ann is not None else []


def toric_ideal(exponent_vectors: list[tuple[int, ...]], ring: PolyRing) -> list[Poly]:
    """Kernel of the monomial map y_j -> z^(E_j) (z exponents may be negative).

    Computed as the lattice ideal of the integer kernel of E, saturated at the
    product of the y variables.
    """
    from .lattice import IntMatrix, smith_normal_form

    m = len(exponent_vectors)
    if m != ring.nvars:
        raise ValueError("one ring variable per monomial expected")
    if m == 0:
        return []
    width = len(exponent_vectors[0])
    # integer kernel of the (width x m) matrix with columns E_j
    mat = IntMatrix.from_rows([[exponent_vectors[j][i] for j in range(m)]
                               for i in range(width)])
    snf = smith_normal_form(mat)
    rank = len(snf.invariant_factors)
    kernel = [tuple(snf.V[i, j] for i in range(m)) for j in range(rank, m)]
    if not kernel:
        return []
    gens = []
    for u in kernel:
        plus = tuple(max(x, 0) for x in u)
        minus = tuple(max(-x, 0) for x in u)
        gens.append(Poly.monomial(ring, plus) - Poly.monomial(ring, minus))
    product_all = Poly.monomial(ring, (1,) * m)
    return saturation(gens, product_all, ring)
