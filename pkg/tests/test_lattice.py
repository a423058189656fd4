"""Smith normal form, cokernels and dual bases against independent oracles."""

from fractions import Fraction

import pytest

from helpers import rng
from toric_dmod.lattice import (IntMatrix, cokernel, dual_lattice_basis,
                                invariant_factor_oracle, smith_normal_form)


def reconstruct(snf, m):
    assert snf.U.mul(m).mul(snf.V).entries == snf.D.entries


def test_column_vector_hand_reduction():
    # row-reduce [[1], [-1]] by hand: add row 1 to row 2
    m = IntMatrix.from_rows([[1], [-1]])
    s = smith_normal_form(m)
    assert s.D.entries == ((1,), (0,))
    assert s.invariant_factors == (1,)
    reconstruct(s, m)


def test_identity_is_fixed():
    m = IntMatrix.identity(2)
    s = smith_normal_form(m)
    assert s.D.entries == m.entries
    assert s.invariant_factors == (1, 1)


def test_diag_2_3_gives_1_6():
    m = IntMatrix.from_rows([[2, 0], [0, 3]])
    s = smith_normal_form(m)
    assert s.invariant_factors == (1, 6)
    assert invariant_factor_oracle(m) == (1, 6)
    reconstruct(s, m)


def test_randomized_against_minor_gcd_oracle():
    r = rng(1)
    for _ in range(40):
        rows = r.randint(1, 4)
        cols = r.randint(1, 4)
        m = IntMatrix.from_rows([[r.randint(-6, 6) for _ in range(cols)]
                                 for _ in range(rows)])
        s = smith_normal_form(m)
        reconstruct(s, m)
        assert abs(s.U.det()) == 1
        assert abs(s.V.det()) == 1
        assert s.U.mul(s.U_inv).entries == IntMatrix.identity(rows).entries
        assert s.invariant_factors == invariant_factor_oracle(m)
        for a, b in zip(s.invariant_factors, s.invariant_factors[1:]):
            assert b % a == 0


def test_cokernel_p1_is_z():
    g = cokernel(IntMatrix.from_rows([[1], [-1]]))
    assert g.free_rank == 1
    assert g.torsion_orders == ()
    assert g.project((1, 0)) == g.project((0, 1)) == (1,)


def test_cokernel_p1p1_is_z2():
    g = cokernel(IntMatrix.from_rows([[1, 0], [-1, 0], [0, 1], [0, -1]]))
    assert g.free_rank == 2
    assert g.torsion_orders == ()


def test_cokernel_unimodular_is_trivial():
    g = cokernel(IntMatrix.from_rows([[2, 1], [1, 1]]))
    assert g.is_trivial
    assert g.project((5, -3)) == ()


def test_cokernel_exactness_and_section():
    r = rng(2)
    for _ in range(30):
        rows = r.randint(1, 4)
        cols = r.randint(1, 4)
        m = IntMatrix.from_rows([[r.randint(-5, 5) for _ in range(cols)]
                                 for _ in range(rows)])
        g = cokernel(m)
        for _ in range(5):
            p = tuple(r.randint(-4, 4) for _ in range(cols))
            assert g.project(m.mul_vec(p)) == g.zero()
        for _ in range(5):
            a = tuple(r.randint(-4, 4) for _ in range(rows))
            cls = g.project(a)
            assert g.project(g.section(cls)) == cls


def test_dual_basis_p1():
    g = cokernel(IntMatrix.from_rows([[1], [-1]]))
    (u,) = dual_lattice_basis(g)
    assert u == (1, 1)


def test_dual_basis_trivial_group_empty():
    g = cokernel(IntMatrix.identity(3))
    assert dual_lattice_basis(g) == []


def test_dual_basis_p1p1_up_to_basis_change():
    g = cokernel(IntMatrix.from_rows([[1, 0], [-1, 0], [0, 1], [0, -1]]))
    basis = dual_lattice_basis(g)
    assert len(basis) == 2
    # each functional is constant on {e1,e2} and on {e3,e4}
    for u in basis:
        assert u[0] == u[1] and u[2] == u[3]
    mat = IntMatrix.from_rows([[u[0], u[2]] for u in basis])
    assert abs(mat.det()) == 1


def test_dual_basis_sign_normalization_and_independence():
    r = rng(3)
    for _ in range(25):
        rows = r.randint(1, 4)
        cols = r.randint(1, rows)
        m = IntMatrix.from_rows([[r.randint(-5, 5) for _ in range(cols)]
                                 for _ in range(rows)])
        g = cokernel(m)
        basis = dual_lattice_basis(g)
        assert len(basis) == g.free_rank
        for u in basis:
            lead = next((x for x in u if x != 0), 0)
            assert lead > 0
            for j in range(cols):
                col = [m[i, j] for i in range(rows)]
                assert sum(x * y for x, y in zip(u, col)) == 0
        if basis:
            assert IntMatrix.from_rows(basis).rank() == len(basis)


def test_dual_basis_annihilates_torsion():
    m = IntMatrix.from_rows([[2, 0], [0, 1], [0, 0]])
    g = cokernel(m)
    assert g.torsion_orders == (2,)
    assert g.free_rank == 1
    for u in dual_lattice_basis(g):
        # the torsion class 2a has the same functional value as the zero class
        for a in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]:
            doubled = tuple(2 * x for x in a)
            v1 = sum(x * y for x, y in zip(u, a))
            assert 2 * v1 == sum(x * y for x, y in zip(u, doubled))


def test_rectangular_entry_validation():
    with pytest.raises(ValueError):
        IntMatrix(((1, 2), (3,)))
