"""Weyl algebra arithmetic with rational coefficients.

Elements are stored in normal order: finitely many terms x^a d^b -> coeff
with a, b in N^d. The module also provides the torus-eigenspace (theta)
form, the action on Laurent polynomials, and the order-reversing involution.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import comb, perm

from .errors import InhomogeneousInput, ParseError
from .parsing import format_terms, parse_terms

# plain dict polynomials in the commuting theta variables: exps tuple -> Fraction
ThetaDict = dict


def tp_zero() -> ThetaDict:
    return {}


def tp_const(d: int, c) -> ThetaDict:
    c = Fraction(c)
    return {(0,) * d: c} if c else {}


def tp_add(p: ThetaDict, q: ThetaDict) -> ThetaDict:
    out = dict(p)
    for e, c in q.items():
        nc = out.get(e, Fraction(0)) + c
        if nc:
            out[e] = nc
        else:
            out.pop(e, None)
    return out


def tp_scale(p: ThetaDict, c) -> ThetaDict:
    c = Fraction(c)
    if not c:
        return {}
    return {e: v * c for e, v in p.items()}


def tp_mul(p: ThetaDict, q: ThetaDict) -> ThetaDict:
    out: ThetaDict = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            nc = out.get(e, Fraction(0)) + c1 * c2
            if nc:
                out[e] = nc
            else:
                out.pop(e, None)
    return out


def tp_linear(d: int, i: int, shift) -> ThetaDict:
    """The polynomial theta_i + shift."""
    e = tuple(1 if j == i else 0 for j in range(d))
    out = {e: Fraction(1)}
    shift = Fraction(shift)
    if shift:
        out[(0,) * d] = shift
    return out


def tp_eval(p: ThetaDict, point) -> Fraction:
    if not p:
        return Fraction(0)
    nvars = len(next(iter(p)))
    maxdeg = [0] * nvars
    for e in p:
        for i, k in enumerate(e):
            if k > maxdeg[i]:
                maxdeg[i] = k
    powers = []
    for i in range(nvars):
        row = [Fraction(1)]
        for _ in range(maxdeg[i]):
            row.append(row[-1] * point[i])
        powers.append(row)
    total = Fraction(0)
    for e, c in p.items():
        v = c
        for i, k in enumerate(e):
            if k:
                v *= powers[i][k]
        total += v
    return total


def tp_subst(p: ThetaDict, images: list[ThetaDict], d_out: int) -> ThetaDict:
    """Substitute variable i -> images[i]; images live in a d_out-variable ring."""
    out = tp_const(d_out, 0)
    for e, c in p.items():
        term = tp_const(d_out, c)
        for i, k in enumerate(e):
            for _ in range(k):
                term = tp_mul(term, images[i])
        out = tp_add(out, term)
    return out


def tp_divide_linear(p: ThetaDict, i: int, root) -> tuple[ThetaDict, ThetaDict]:
    """Divide by (theta_i - root); returns (quotient, remainder).

    The remainder is p with theta_i evaluated at root, so it has no theta_i.
    """
    root = Fraction(root)
    if not p:
        return {}, {}
    # collect coefficients of theta_i^k (polynomials in the other variables)
    by_deg: dict[int, ThetaDict] = {}
    for e, c in p.items():
        k = e[i]
        rest = e[:i] + (0,) + e[i + 1:]
        slot = by_deg.setdefault(k, {})
        slot[rest] = slot.get(rest, Fraction(0)) + c
    maxdeg = max(by_deg)
    quot: ThetaDict = {}
    carry: ThetaDict = {}
    for k in range(maxdeg, 0, -1):
        coeff = tp_add(by_deg.get(k, {}), carry)
        for rest, c in coeff.items():
            e = rest[:i] + (k - 1,) + rest[i + 1:]
            if c:
                quot[e] = quot.get(e, Fraction(0)) + c
        carry = tp_scale(coeff, root)
    rem = tp_add(by_deg.get(0, {}), carry)
    quot = {e: c for e, c in quot.items() if c}
    rem = {e: c for e, c in rem.items() if c}
    return quot, rem


def tp_format(p: ThetaDict, names) -> str:
    if not p:
        return "0"
    items = sorted(p.items(), key=lambda kv: kv[0], reverse=True)
    return format_terms([(c, [(names[i], k) for i, k in enumerate(e) if k])
                         for e, c in items])


def _ff(c: int, k: int) -> int:
    """Falling factorial c (c-1) ... (c-k+1); c may be negative."""
    out = 1
    for j in range(k):
        out *= c - j
    return out


class WeylElement:
    """Normal-ordered element of the d-th Weyl algebra over Q."""

    __slots__ = ("d", "terms")

    def __init__(self, d: int, terms=None):
        self.d = d
        clean = {}
        for (a, b), c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[(tuple(a), tuple(b))] = c
        self.terms = clean

    # constructors

    @classmethod
    def zero(cls, d: int) -> "WeylElement":
        return cls(d)

    @classmethod
    def monomial(cls, d: int, a, b, coeff=1) -> "WeylElement":
        return cls(d, {(tuple(a), tuple(b)): Fraction(coeff)})

    @classmethod
    def one(cls, d: int) -> "WeylElement":
        return cls.monomial(d, (0,) * d, (0,) * d)

    @classmethod
    def x_var(cls, d: int, i: int) -> "WeylElement":
        e = tuple(1 if j == i else 0 for j in range(d))
        return cls.monomial(d, e, (0,) * d)

    @classmethod
    def d_var(cls, d: int, i: int) -> "WeylElement":
        e = tuple(1 if j == i else 0 for j in range(d))
        return cls.monomial(d, (0,) * d, e)

    @classmethod
    def theta(cls, d: int, i: int) -> "WeylElement":
        e = tuple(1 if j == i else 0 for j in range(d))
        return cls.monomial(d, e, e)

    # predicates and canonical form

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return sorted(self.terms.items())

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.d == other.d and self.terms == other.terms

    def __hash__(self):
        return hash((self.d, tuple(self.items())))

    def __repr__(self):
        return f"WeylElement({format_weyl(self)!r})"

    # arithmetic

    def __add__(self, other: "WeylElement") -> "WeylElement":
        if self.d != other.d:
            raise ValueError("rank mismatch")
        out = dict(self.terms)
        for k, c in other.terms.items():
            nc = out.get(k, Fraction(0)) + c
            if nc:
                out[k] = nc
            else:
                out.pop(k, None)
        return WeylElement(self.d, out)

    def __neg__(self) -> "WeylElement":
        return WeylElement(self.d, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "WeylElement") -> "WeylElement":
        return self + (-other)

    def scale(self, c) -> "WeylElement":
        c = Fraction(c)
        if not c:
            return WeylElement.zero(self.d)
        return WeylElement(self.d, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return weyl_mul(self, other)

    def order(self) -> int:
        """Maximal total derivative order among the terms."""
        return max((sum(b) for (_, b) in self.terms), default=0)


def weyl_mul(f: WeylElement, g: WeylElement) -> WeylElement:
    """Normal-ordered product, from d^b x^a = sum_k C(b,k) a!/(a-k)! x^(a-k) d^(b-k)."""
    if f.d != g.d:
        raise ValueError("rank mismatch")
    d = f.d
    out: dict = {}
    for (a1, b1), c1 in f.terms.items():
        for (a2, b2), c2 in g.terms.items():
            ranges = [range(min(b1[i], a2[i]) + 1) for i in range(d)]
            for k in product(*ranges):
                coeff = c1 * c2
                for i in range(d):
                    if k[i]:
                        coeff *= comb(b1[i], k[i]) * perm(a2[i], k[i])
                if not coeff:
                    continue
                key = (tuple(a1[i] + a2[i] - k[i] for i in range(d)),
                       tuple(b1[i] + b2[i] - k[i] for i in range(d)))
                nc = out.get(key, Fraction(0)) + coeff
                if nc:
                    out[key] = nc
                else:
                    out.pop(key, None)
    return WeylElement(d, out)


def weyl_degree(grading, f: WeylElement):
    """Class-group degree of a homogeneous element; InhomogeneousInput otherwise."""
    if f.is_zero():
        return None
    group = grading.class_group
    deg = None
    for (a, b) in f.terms:
        cls = group.add(group.project(a), group.neg(group.project(b)))
        if deg is None:
            deg = cls
        elif deg != cls:
            raise InhomogeneousInput("element is not graded-homogeneous")
    return deg


def graded_components(grading, f: WeylElement) -> dict:
    """Split into homogeneous pieces, keyed by their class-group degree."""
    group = grading.class_group
    comps: dict = {}
    for (a, b), c in f.terms.items():
        cls = group.add(group.project(a), group.neg(group.project(b)))
        comps.setdefault(cls, {})[(a, b)] = c
    return {cls: WeylElement(f.d, terms) for cls, terms in sorted(comps.items())}


class ThetaFormElement:
    """Eigenspace form: entries c in Z^d -> polynomial w(theta), meaning
    the element sum_c x^(c+) d^(c-) w(theta)."""

    __slots__ = ("d", "entries")

    def __init__(self, d: int, entries=None):
        self.d = d
        self.entries = {tuple(c): dict(w) for c, w in (entries or {}).items() if w}

    def __eq__(self, other):
        return (isinstance(other, ThetaFormElement) and self.d == other.d
                and self.entries == other.entries)

    def __repr__(self):
        names = [f"th{i + 1}" for i in range(self.d)]
        bits = [f"{c}: {tp_format(w, names)}" for c, w in sorted(self.entries.items())]
        return "ThetaFormElement({" + ", ".join(bits) + "})"


def _theta_piece(alpha: int, beta: int) -> list[Fraction]:
    """Univariate w with x^alpha d^beta = x^(c+) d^(c-) w(theta), c = alpha - beta.

    Returned as a coefficient list in the single variable theta.
    """
    if alpha >= beta:
        roots = [j - 1 for j in range(1, beta + 1)]
    else:
        gamma = beta - alpha
        roots = [gamma + j - 1 for j in range(1, alpha + 1)]
    poly = [Fraction(1)]
    for r in roots:
        poly = [Fraction(0)] + poly
        for k in range(len(poly) - 1):
            poly[k] -= Fraction(r) * poly[k + 1]
    return poly


def to_theta_form(f: WeylElement) -> ThetaFormElement:
    d = f.d
    entries: dict = {}
    for (a, b), coeff in f.terms.items():
        c = tuple(x - y for x, y in zip(a, b))
        w = tp_const(d, coeff)
        for i in range(d):
            piece = _theta_piece(a[i], b[i])
            lifted = {}
            for k, cf in enumerate(piece):
                if cf:
                    e = tuple(k if j == i else 0 for j in range(d))
                    lifted[e] = cf
            w = tp_mul(w, lifted)
        entries[c] = tp_add(entries.get(c, {}), w)
    return ThetaFormElement(d, {c: w for c, w in entries.items() if w})


_theta_power_cache: dict = {}


def _theta_power(d: int, i: int, k: int) -> WeylElement:
    key = (d, i, k)
    if key not in _theta_power_cache:
        if k == 0:
            out = WeylElement.one(d)
        else:
            out = weyl_mul(_theta_power(d, i, k - 1), WeylElement.theta(d, i))
        _theta_power_cache[key] = out
    return _theta_power_cache[key]


def theta_dict_to_weyl(d: int, w: ThetaDict) -> WeylElement:
    out = WeylElement.zero(d)
    for e, c in sorted(w.items()):
        piece = WeylElement.one(d).scale(c)
        for i, k in enumerate(e):
            if k:
                piece = weyl_mul(piece, _theta_power(d, i, k))
        out = out + piece
    return out


def from_theta_form(tf: ThetaFormElement) -> WeylElement:
    d = tf.d
    out = WeylElement.zero(d)
    for c, w in sorted(tf.entries.items()):
        cp = tuple(max(x, 0) for x in c)
        cm = tuple(max(-x, 0) for x in c)
        out = out + weyl_mul(WeylElement.monomial(d, cp, cm), theta_dict_to_weyl(d, w))
    return out


class LaurentPoly:
    """Laurent polynomial with a per-variable mask of allowed negativity."""

    __slots__ = ("d", "mask", "terms")

    def __init__(self, d: int, mask, terms=None):
        self.d = d
        self.mask = tuple(bool(m) for m in mask)
        if len(self.mask) != d:
            raise ValueError("mask length mismatch")
        clean = {}
        for e, c in (terms or {}).items():
            c = Fraction(c)
            if not c:
                continue
            e = tuple(e)
            for x, allowed in zip(e, self.mask):
                if x < 0 and not allowed:
                    raise ValueError("negative exponent outside the mask")
            clean[e] = c
        self.terms = clean

    @classmethod
    def monomial(cls, d: int, mask, e, coeff=1) -> "LaurentPoly":
        return cls(d, mask, {tuple(e): Fraction(coeff)})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, LaurentPoly) and self.d == other.d
                and self.mask == other.mask and self.terms == other.terms)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if (self.d, self.mask) != (other.d, other.mask):
            raise ValueError("incompatible Laurent rings")
        out = dict(self.terms)
        for e, c in other.terms.items():
            nc = out.get(e, Fraction(0)) + c
            if nc:
                out[e] = nc
            else:
                out.pop(e, None)
        return LaurentPoly(self.d, self.mask, out)

    def scale(self, c) -> "LaurentPoly":
        return LaurentPoly(self.d, self.mask, {e: v * Fraction(c) for e, v in self.terms.items()})

    def __repr__(self):
        names = [f"x{i + 1}" for i in range(self.d)]
        items = sorted(self.terms.items(), reverse=True)
        return "LaurentPoly(" + format_terms(
            [(c, [(names[i], k) for i, k in enumerate(e) if k]) for e, c in items]) + ")"


def act(f: WeylElement, g: LaurentPoly) -> LaurentPoly:
    """Natural action: x_i multiplies, d_i differentiates."""
    if f.d != g.d:
        raise ValueError("rank mismatch")
    out: dict = {}
    for (a, b), cf in f.terms.items():
        for e, cg in g.terms.items():
            coeff = cf * cg
            for i in range(f.d):
                if b[i]:
                    coeff *= _ff(e[i], b[i])
            if not coeff:
                continue
            ne = tuple(e[i] - b[i] + a[i] for i in range(f.d))
            nc = out.get(ne, Fraction(0)) + coeff
            if nc:
                out[ne] = nc
            else:
                out.pop(ne, None)
    return LaurentPoly(g.d, g.mask, out)


def tau(f: WeylElement) -> WeylElement:
    """The involution x^a d^b -> (-d)^b x^a, re-expressed in normal order."""
    d = f.d
    out = WeylElement.zero(d)
    for (a, b), c in f.terms.items():
        sign = -1 if sum(b) % 2 else 1
        prod = weyl_mul(WeylElement.monomial(d, (0,) * d, b),
                        WeylElement.monomial(d, a, (0,) * d))
        out = out + prod.scale(c * sign)
    return out


def parse_weyl(text: str, d: int) -> WeylElement:
    """Parse expressions like ``3*x1^2*d1 - 1/2*x2*d2^3``."""
    terms: dict = {}
    for coeff, vars_ in parse_terms(text):
        a = [0] * d
        b = [0] * d
        for prefix, idx, exp in vars_:
            if not 1 <= idx <= d:
                raise ParseError(f"index {idx} out of range 1..{d}")
            if prefix == "x":
                a[idx - 1] += exp
            elif prefix == "d":
                b[idx - 1] += exp
            else:
                raise ParseError(f"unknown variable prefix {prefix!r}")
        key = (tuple(a), tuple(b))
        terms[key] = terms.get(key, Fraction(0)) + coeff
    return WeylElement(d, terms)


def format_weyl(f: WeylElement) -> str:
    if f.is_zero():
        return "0"
    items = sorted(f.terms.items(), reverse=True)
    rendered = []
    for (a, b), c in items:
        vars_ = [(f"x{i + 1}", e) for i, e in enumerate(a) if e]
        vars_ += [(f"d{i + 1}", e) for i, e in enumerate(b) if e]
        rendered.append((c, vars_))
    return format_terms(rendered)


def parse_theta_poly(text: str, d: int, prefix: str = "th") -> ThetaDict:
    """Parse a commutative polynomial in ``th1 .. th<d>`` (or another prefix)."""
    out: ThetaDict = {}
    for coeff, vars_ in parse_terms(text):
        e = [0] * d
        for pfx, idx, exp in vars_:
            if pfx != prefix:
                raise ParseError(f"unknown variable prefix {pfx!r}")
            if not 1 <= idx <= d:
                raise ParseError(f"index {idx} out of range 1..{d}")
            e[idx - 1] += exp
        key = tuple(e)
        nc = out.get(key, Fraction(0)) + coeff
        if nc:
            out[key] = nc
        else:
            out.pop(key, None)
    return out
