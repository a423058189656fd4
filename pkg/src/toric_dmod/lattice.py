"""Exact integer linear algebra: Smith normal form, cokernels, dual bases.

Everything works with arbitrary-precision Python ints; no floats anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


@dataclass(frozen=True)
class IntMatrix:
    """Immutable rectangular integer matrix."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.entries:
            width = len(self.entries[0])
            if any(len(row) != width for row in self.entries):
                raise ValueError("ragged matrix")

    @staticmethod
    def from_rows(rows) -> "IntMatrix":
        return IntMatrix(tuple(tuple(int(x) for x in row) for row in rows))

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        return IntMatrix(tuple(
            tuple(sum(self.entries[i][k] * other.entries[k][j] for k in range(self.cols))
                  for j in range(other.cols))
            for i in range(self.rows)))

    def mul_vec(self, v) -> tuple[int, ...]:
        if len(v) != self.cols:
            raise ValueError("shape mismatch")
        return tuple(sum(row[k] * v[k] for k in range(self.cols)) for row in self.entries)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(tuple(self.entries[i][j] for i in range(self.rows))
                               for j in range(self.cols)))

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("det of non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = [list(row) for row in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                pivot = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if pivot is None:
                    return 0
                a[k], a[pivot] = a[pivot], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def rank(self) -> int:
        """Rank over Q, by exact Gaussian elimination."""
        a = [[Fraction(x) for x in row] for row in self.entries]
        rank = 0
        for col in range(self.cols):
            pivot = next((i for i in range(rank, self.rows) if a[i][col] != 0), None)
            if pivot is None:
                continue
            a[rank], a[pivot] = a[pivot], a[rank]
            inv = a[rank][col]
            a[rank] = [x / inv for x in a[rank]]
            for i in range(self.rows):
                if i != rank and a[i][col] != 0:
                    c = a[i][col]
                    a[i] = [x - c * y for x, y in zip(a[i], a[rank])]
            rank += 1
        return rank


@dataclass(frozen=True)
class SmithDecomposition:
    """U * M * V = D with U, V unimodular and D diagonal (invariant factors)."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    U_inv: IntMatrix
    invariant_factors: tuple[int, ...]


def smith_normal_form(m: IntMatrix) -> SmithDecomposition:
    """Smith normal form by elementary row/column operations.

    Pivot selection is deterministic (smallest |entry|, ties by position) so
    repeated runs produce identical decompositions.
    """
    rows, cols = m.rows, m.cols
    a = [list(row) for row in m.entries]
    u = [list(row) for row in IntMatrix.identity(rows).entries]
    uinv = [list(row) for row in IntMatrix.identity(rows).entries]
    v = [list(row) for row in IntMatrix.identity(cols).entries]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]
        for r in uinv:
            r[i], r[j] = r[j], r[i]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]
        for r in uinv:
            r[i] = -r[i]

    def add_row(i, j, c):
        # row i += c * row j; U_inv column j -= c * column i
        a[i] = [x + c * y for x, y in zip(a[i], a[j])]
        u[i] = [x + c * y for x, y in zip(u[i], u[j])]
        for r in uinv:
            r[j] -= c * r[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_col(i, j, c):
        # col i += c * col j
        for r in a:
            r[i] += c * r[j]
        for r in v:
            r[i] += c * r[j]

    def pivot_search(k):
        best = None
        for i in range(k, rows):
            for j in range(k, cols):
                x = abs(a[i][j])
                if x != 0 and (best is None or x < best[0]):
                    best = (x, i, j)
        return best

    k = 0
    while k < min(rows, cols):
        found = pivot_search(k)
        if found is None:
            break
        _, pi, pj = found
        if pi != k:
            swap_rows(k, pi)
        if pj != k:
            swap_cols(k, pj)
        if a[k][k] < 0:
            negate_row(k)
        # clear row and column k; remainders can reappear, so loop
        while True:
            dirty = False
            for i in range(k + 1, rows):
                if a[i][k] != 0:
                    q = a[i][k] // a[k][k]
                    add_row(i, k, -q)
                    if a[i][k] != 0:
                        swap_rows(k, i)
                        if a[k][k] < 0:
                            negate_row(k)
                        dirty = True
            for j in range(k + 1, cols):
                if a[k][j] != 0:
                    q = a[k][j] // a[k][k]
                    add_col(j, k, -q)
                    if a[k][j] != 0:
                        swap_cols(k, j)
                        if a[k][k] < 0:
                            negate_row(k)
                        dirty = True
            if not dirty:
                break
        # enforce divisibility of the trailing block by the pivot
        bad = None
        for i in range(k + 1, rows):
            for j in range(k + 1, cols):
                if a[i][j] % a[k][k] != 0:
                    bad = (i, j)
                    break
            if bad:
                break
        if bad is not None:
            add_row(k, bad[0], 1)
            continue
        k += 1

    d = IntMatrix.from_rows(a)
    factors = tuple(a[i][i] for i in range(min(rows, cols)) if a[i][i] != 0)
    return SmithDecomposition(IntMatrix.from_rows(u), d, IntMatrix.from_rows(v),
                              IntMatrix.from_rows(uinv), factors)


class FinitelyGeneratedAbelianGroup:
    """Cokernel of an integer matrix, with projection and section maps.

    Elements are canonical coordinate tuples: free coordinates first (in the
    Smith basis, signs normalized), then torsion residues reduced modulo their
    orders.
    """

    def __init__(self, snf: SmithDecomposition, ambient_rank: int):
        self._snf = snf
        self.ambient_rank = ambient_rank
        diag = [snf.D[i, i] if i < min(snf.D.rows, snf.D.cols) else 0
                for i in range(ambient_rank)]
        self._torsion_slots = tuple(i for i, x in enumerate(diag) if abs(x) >= 2)
        self._free_slots = tuple(i for i, x in enumerate(diag) if x == 0)
        self.torsion_orders = tuple(abs(diag[i]) for i in self._torsion_slots)
        self.free_rank = len(self._free_slots)
        u = [list(row) for row in snf.U.entries]
        uinv = [list(row) for row in snf.U_inv.entries]
        # sign-normalize the free rows of U so projections are reproducible
        for slot in self._free_slots:
            lead = next((x for x in u[slot] if x != 0), 0)
            if lead < 0:
                u[slot] = [-x for x in u[slot]]
                for r in uinv:
                    r[slot] = -r[slot]
        self._u = IntMatrix.from_rows(u)
        self._u_inv = IntMatrix.from_rows(uinv)

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion_orders

    def zero(self) -> tuple[int, ...]:
        return (0,) * (self.free_rank + len(self.torsion_orders))

    def project(self, a) -> tuple[int, ...]:
        """Image of a lattice vector in the cokernel, canonically reduced."""
        if len(a) != self.ambient_rank:
            raise ValueError("vector length mismatch")
        y = self._u.mul_vec(a)
        free = tuple(y[i] for i in self._free_slots)
        tors = tuple(y[s] % o for s, o in zip(self._torsion_slots, self.torsion_orders))
        return free + tors

    def section(self, cls) -> tuple[int, ...]:
        """A lattice representative of a group element (right inverse of project)."""
        cls = self.reduce(cls)
        y = [0] * self.ambient_rank
        for c, slot in zip(cls[:self.free_rank], self._free_slots):
            y[slot] = c
        for c, slot in zip(cls[self.free_rank:], self._torsion_slots):
            y[slot] = c
        return self._u_inv.mul_vec(y)

    def reduce(self, cls) -> tuple[int, ...]:
        if len(cls) != self.free_rank + len(self.torsion_orders):
            raise ValueError("class coordinate length mismatch")
        free = tuple(int(c) for c in cls[:self.free_rank])
        tors = tuple(int(c) % o for c, o in zip(cls[self.free_rank:], self.torsion_orders))
        return free + tors

    def add(self, c1, c2) -> tuple[int, ...]:
        return self.reduce(tuple(x + y for x, y in zip(self.reduce(c1), self.reduce(c2))))

    def neg(self, c) -> tuple[int, ...]:
        return self.reduce(tuple(-x for x in self.reduce(c)))

    def scale(self, k: int, c) -> tuple[int, ...]:
        return self.reduce(tuple(k * x for x in self.reduce(c)))


def cokernel(m: IntMatrix) -> FinitelyGeneratedAbelianGroup:
    """Cokernel of Z^cols -> Z^rows given by the matrix."""
    return FinitelyGeneratedAbelianGroup(smith_normal_form(m), m.rows)


def dual_lattice_basis(group: FinitelyGeneratedAbelianGroup) -> list[tuple[int, ...]]:
    """Integer functionals on the ambient lattice spanning Hom(coker, Z).

    The j-th functional evaluates a lattice vector to the j-th free coordinate
    of its class, so torsion is annihilated by construction.
    """
    u = group._u
    return [tuple(u.entries[slot]) for slot in group._free_slots]


def invariant_factor_oracle(m: IntMatrix) -> tuple[int, ...]:
    """Invariant factors via gcds of k x k minors (determinantal divisors).

    Independent of the elimination-based Smith routine; intended for tests.
    """
    from itertools import combinations

    def minor_gcd(k: int) -> int:
        g = 0
        for rows in combinations(range(m.rows), k):
            for cols in combinations(range(m.cols), k):
                sub = IntMatrix.from_rows([[m[i, j] for j in cols] for i in rows])
                g = gcd(g, sub.det())
        return abs(g)

    factors = []
    prev = 1
    for k in range(1, min(m.rows, m.cols) + 1):
        dk = minor_gcd(k)
        if dk == 0:
            break
        factors.append(dk // prev)
        prev = dk
    return tuple(factors)
