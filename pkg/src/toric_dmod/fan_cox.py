"""Fans of smooth cones, Cox grading data and the irrelevant ideal."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import gcd

from .errors import (FanValidationError, NonSimplicialCone, NonSmoothCone,
                     PreconditionViolated, RaysDoNotSpan, UnknownCone)
from .lattice import (FinitelyGeneratedAbelianGroup, IntMatrix, cokernel,
                      dual_lattice_basis)
from .weyl import WeylElement


class Fan:
    """A fan given by its rays and maximal cones (all faces are synthesized).

    Rays are primitive vectors in Z^n; cones are sorted tuples of 0-based ray
    indices. Every listed ray is a cone, and the zero cone is always present.
    """

    def __init__(self, n: int, rays, max_cones):
        self.n = int(n)
        self.rays = tuple(tuple(int(x) for x in r) for r in rays)
        if any(len(r) != self.n for r in self.rays):
            raise FanValidationError("ray length does not match ambient rank")
        listed = [tuple(sorted(set(int(i) for i in cone))) for cone in max_cones]
        for cone in listed:
            if cone and not (0 <= cone[0] and cone[-1] < len(self.rays)):
                raise FanValidationError(f"cone {cone} has a ray index out of range")
        listed += [(i,) for i in range(len(self.rays))]
        cones = {()}
        for cone in listed:
            for k in range(1, len(cone) + 1):
                cones.update(combinations(cone, k))
        self.cones = tuple(sorted(cones, key=lambda c: (len(c), c)))
        self._coneset = frozenset(self.cones)
        self.max_cones = tuple(c for c in self.cones
                               if c and not any(set(c) < set(o) for o in self._coneset))

    @property
    def d(self) -> int:
        return len(self.rays)

    def has_cone(self, cone) -> bool:
        return tuple(sorted(cone)) in self._coneset

    def ray_matrix(self, cone) -> IntMatrix:
        return IntMatrix.from_rows([self.rays[i] for i in cone])


def _fm_feasible(eqs, ineqs, nvars: int) -> bool:
    """Exact feasibility of {z : eq . z + c = 0, ineq . z + c >= 0} over Q.

    Fourier-Motzkin after Gaussian elimination of the equalities.
    """
    rows = [[Fraction(x) for x in co] + [Fraction(c)] for co, c in eqs]
    # Gaussian elimination on equalities
    pivots = []
    r = 0
    for col in range(nvars):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][col]
        rows[r] = [x / inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append((r, col))
        r += 1
    for i in range(r, len(rows)):
        if rows[i][nvars] != 0:
            return False
    work = [[Fraction(x) for x in co] + [Fraction(c)] for co, c in ineqs]
    # substitute pivot variables out of the inequalities
    for prow, col in pivots:
        for w in work:
            if w[col] != 0:
                f = w[col]
                for j in range(nvars + 1):
                    w[j] -= f * rows[prow][j]
    # Fourier-Motzkin on the remaining free variables
    for col in range(nvars):
        pos = [w for w in work if w[col] > 0]
        neg = [w for w in work if w[col] < 0]
        rest = [w for w in work if w[col] == 0]
        new = []
        for p in pos:
            for q in neg:
                combo = [p[col] * qv - q[col] * pv for pv, qv in zip(p, q)]
                new.append(combo)
        seen = set()
        work = []
        for w in rest + new:
            den = 1
            for x in w:
                den = den * x.denominator // gcd(den, x.denominator)
            ints = [int(x * den) for x in w]
            g = 0
            for v in ints:
                g = gcd(g, v)
            if g > 1:
                ints = [v // g for v in ints]
            key = tuple(ints)
            if key not in seen:
                seen.add(key)
                work.append([Fraction(v) for v in ints])
    return all(w[nvars] >= 0 for w in work)


def _cone_intersections_ok(fan: Fan) -> bool:
    """Check cone(S1) intersect cone(S2) == cone(S1 & S2) for maximal pairs."""
    for s1, s2 in combinations(fan.max_cones, 2):
        for base, other in ((s1, s2), (s2, s1)):
            extra = [j for j in other if j not in base]
            for j0 in extra:
                # mu over `other`, lam over `base`; sum mu v = sum lam v, mu_j0 >= 1
                nvars = len(other) + len(base)
                eqs = []
                for coord in range(fan.n):
                    co = ([fan.rays[j][coord] for j in other]
                          + [-fan.rays[i][coord] for i in base])
                    eqs.append((co, 0))
                ineqs = [(tuple(1 if t == k else 0 for t in range(nvars)), 0)
                         for k in range(nvars)]
                j0pos = other.index(j0)
                ineqs.append((tuple(1 if t == j0pos else 0 for t in range(nvars)), -1))
                if _fm_feasible(eqs, ineqs, nvars):
                    return False
    return True


def validate_smooth_fan(fan: Fan) -> dict:
    """Validate rays, simpliciality and smoothness; raises typed errors.

    Returns a small report dict on success.
    """
    for idx, ray in enumerate(fan.rays):
        if all(x == 0 for x in ray):
            raise FanValidationError(f"ray {idx + 1} is zero")
        if gcd(*(abs(x) for x in ray)) != 1:
            raise FanValidationError(f"ray {idx + 1} is not primitive")
    if len(set(fan.rays)) != len(fan.rays):
        raise FanValidationError("rays are not pairwise distinct")
    if IntMatrix.from_rows(fan.rays).rank() != fan.n:
        raise RaysDoNotSpan("rays do not span the ambient space")
    for cone in fan.cones:
        if not cone:
            continue
        m = fan.ray_matrix(cone)
        if m.rank() != len(cone):
            raise NonSimplicialCone(f"cone {tuple(i + 1 for i in cone)} is not simplicial")
        k = len(cone)
        g = 0
        for cols in combinations(range(fan.n), k):
            sub = IntMatrix.from_rows([[m[i, j] for j in cols] for i in range(k)])
            g = gcd(g, sub.det())
        if abs(g) != 1:
            raise NonSmoothCone(f"cone {tuple(i + 1 for i in cone)} is not smooth")
    if not _cone_intersections_ok(fan):
        raise FanValidationError("two cones intersect in more than a common face")
    return {"n": fan.n, "d": fan.d, "max_cones": fan.max_cones, "smooth": True}


def sigma_hat_monomial(fan: Fan, cone) -> tuple[int, ...]:
    """Exponent vector of the squarefree monomial over the rays outside the cone."""
    cone = tuple(sorted(cone))
    if not fan.has_cone(cone):
        raise UnknownCone(f"cone {tuple(i + 1 for i in cone)} is not in the fan")
    inside = set(cone)
    return tuple(0 if i in inside else 1 for i in range(fan.d))


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal given by pairwise incomparable exponent vectors."""

    generators: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        gens = self.generators
        for a, b in combinations(gens, 2):
            if all(x <= y for x, y in zip(a, b)) or all(x >= y for x, y in zip(a, b)):
                raise ValueError("generators must be pairwise incomparable")


def irrelevant_ideal(fan: Fan) -> MonomialIdeal:
    mons = {sigma_hat_monomial(fan, cone) for cone in fan.max_cones}
    minimal = [m for m in mons
               if not any(o != m and all(x <= y for x, y in zip(o, m)) for o in mons)]
    return MonomialIdeal(tuple(sorted(minimal)))


class GradingData:
    """The lattice exact sequence in computable form.

    iota is the d x n matrix with row i the ray v_i; the class group is its
    cokernel; dual_basis spans the integer functionals vanishing on the image.
    """

    def __init__(self, fan: Fan):
        self.fan = fan
        self.iota = IntMatrix.from_rows(fan.rays)
        self.class_group: FinitelyGeneratedAbelianGroup = cokernel(self.iota)
        self.dual_basis = tuple(tuple(u) for u in dual_lattice_basis(self.class_group))
        self.e_bar = self.class_group.project((1,) * fan.d)

    @property
    def d(self) -> int:
        return self.fan.d

    @property
    def n(self) -> int:
        return self.fan.n

    def degree(self, a) -> tuple[int, ...]:
        """Class of a monomial exponent vector."""
        return self.class_group.project(a)

    def degree_x(self, i: int) -> tuple[int, ...]:
        return self.degree(tuple(1 if j == i else 0 for j in range(self.d)))

    def iota_of(self, p) -> tuple[int, ...]:
        return self.iota.mul_vec(p)

    def pair(self, u, cls) -> int:
        """Pairing of a functional on Z^d (killing torsion) with a class."""
        rep = self.class_group.section(cls)
        return sum(x * y for x, y in zip(u, rep))

    def in_dual_span(self, u) -> bool:
        """Whether u is an integer combination of the dual basis."""
        return self.dual_coordinates(u) is not None

    def dual_coordinates(self, u):
        basis = self.dual_basis
        if not basis:
            return () if all(x == 0 for x in u) else None
        rows = [[Fraction(basis[j][i]) for j in range(len(basis))] + [Fraction(u[i])]
                for i in range(self.d)]
        ncols = len(basis)
        r = 0
        pivots = []
        for col in range(ncols):
            piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            inv = rows[r][col]
            rows[r] = [x / inv for x in rows[r]]
            for i in range(len(rows)):
                if i != r and rows[i][col] != 0:
                    f = rows[i][col]
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
            pivots.append(col)
            r += 1
        for i in range(r, len(rows)):
            if rows[i][ncols] != 0:
                return None
        coords = [Fraction(0)] * ncols
        for row_idx, col in enumerate(pivots):
            coords[col] = rows[row_idx][ncols]
        if any(c.denominator != 1 for c in coords):
            return None
        return tuple(int(c) for c in coords)


def grading_data(fan: Fan) -> GradingData:
    validate_smooth_fan(fan)
    return GradingData(fan)


def euler_operator(grading: GradingData, u) -> WeylElement:
    """theta_u = sum_i <u, e_i> x_i d_i for u in the span of the dual basis."""
    u = tuple(int(x) for x in u)
    if len(u) != grading.d:
        raise ValueError("functional length mismatch")
    if not grading.in_dual_span(u):
        raise PreconditionViolated("functional is not in the span of the dual basis")
    out = WeylElement.zero(grading.d)
    for i, c in enumerate(u):
        if c:
            out = out + WeylElement.theta(grading.d, i).scale(c)
    return out


def euler_operators(grading: GradingData) -> list[WeylElement]:
    return [euler_operator(grading, u) for u in grading.dual_basis]


def degree_component_basis(grading: GradingData, cls, cap: int) -> list[tuple[int, ...]]:
    """All exponent vectors in [0, cap]^d whose class equals cls."""
    if cap < 0:
        raise ValueError("cap must be nonnegative")
    cls = grading.class_group.reduce(cls)
    out = [a for a in product(range(cap + 1), repeat=grading.d)
           if grading.degree(a) == cls]
    return sorted(out)
