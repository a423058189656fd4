"""Groebner engines: commutative ideals, saturation, dimension, Weyl side."""

from fractions import Fraction

from helpers import (fan_p1, fan_p1p1, fan_p2, grading, macaulay_membership,
                     macaulay_membership_stable, random_poly, rng)
from toric_dmod.groebner import (EMPTY_DIM, Poly, PolyRing, degrevlex_order,
                                 format_poly, groebner_basis, in_ideal,
                                 initial_forms, intersect_ideals, is_unit_ideal,
                                 krull_dimension, lex_order, normal_form,
                                 radical_membership, saturation,
                                 saturation_by_monomials, toric_ideal,
                                 weyl_buchberger, weyl_normal_form,
                                 WeylModuleOrder)
from toric_dmod.weyl import WeylElement, format_weyl, parse_weyl


def ring2():
    return PolyRing(("x", "y"))


def sprime_p1():
    return PolyRing(("x1", "x2", "xi1", "xi2"))


def test_single_generator_already_reduced():
    ring = sprime_p1()
    p = Poly(ring, {(1, 0, 1, 0): 1, (0, 1, 0, 1): 1})
    assert groebner_basis([p], ring) == [p]


def test_unit_ideal_from_x_and_one_minus_x():
    ring = ring2()
    x = Poly.variable(ring, 0)
    gb = groebner_basis([x, Poly.constant(ring, 1) - x], ring)
    assert [format_poly(g) for g in gb] == ["1"]


def test_x2_xy_minus_y_against_macaulay_oracle():
    ring = ring2()
    x, y = Poly.variable(ring, 0), Poly.variable(ring, 1)
    gens = [x * x, x * y - y]
    gb = groebner_basis(gens, ring, lex_order())
    r = rng(20)
    for _ in range(40):
        f = random_poly(r, ring, 4, 3)
        assert in_ideal(f, gb, lex_order()) == macaulay_membership_stable(f, gens)
    assert in_ideal(y, gb, lex_order())
    assert macaulay_membership(y, gens, 4)


def test_normal_form_properties():
    ring = sprime_p1()
    x1 = Poly.variable(ring, 0)
    x2 = Poly.variable(ring, 1)
    xi1 = Poly.variable(ring, 2)
    xi2 = Poly.variable(ring, 3)
    p = x1 * xi1 + x2 * xi2
    gb = groebner_basis([p], ring)
    assert normal_form(p, gb).is_zero()
    assert normal_form(x1, gb) == x1
    one_gb = groebner_basis([Poly.constant(ring, 1)], ring)
    assert normal_form(Poly.constant(ring, 1), one_gb).is_zero()
    r = rng(21)
    for _ in range(15):
        f = random_poly(r, ring, 3, 3)
        nf = normal_form(f, gb)
        assert normal_form(nf, gb) == nf


def test_membership_soundness_random_combinations():
    ring = ring2()
    x, y = Poly.variable(ring, 0), Poly.variable(ring, 1)
    gens = [x * x * y - y, x * y * y - x]
    gb = groebner_basis(gens, ring)
    r = rng(22)
    for _ in range(20):
        combo = Poly.zero(ring)
        for g in gens:
            combo = combo + random_poly(r, ring, 2, 2) * g
        assert in_ideal(combo, gb)


def test_saturation_examples():
    ring = sprime_p1()
    x1, x2, xi1, xi2 = [Poly.variable(ring, i) for i in range(4)]
    p = x1 * xi1 + x2 * xi2
    sat = saturation_by_monomials([p], [(1, 0, 0, 0), (0, 1, 0, 0)], ring)
    assert sat == groebner_basis([p], ring)
    sat2 = saturation_by_monomials([x1, x2], [(1, 0, 0, 0), (0, 1, 0, 0)], ring)
    assert is_unit_ideal(sat2)
    sat3 = saturation([p], Poly.constant(ring, 1), ring)
    assert sat3 == groebner_basis([p], ring)


def test_saturation_idempotent_and_contains():
    ring = ring2()
    x, y = Poly.variable(ring, 0), Poly.variable(ring, 1)
    gens = [x * x * y, x * y * y]
    sat1 = saturation(gens, x, ring)
    sat2 = saturation(sat1, x, ring)
    assert sat1 == sat2
    for g in gens:
        assert in_ideal(g, sat1)


def test_radical_membership_examples():
    ring = ring2()
    x, y = Poly.variable(ring, 0), Poly.variable(ring, 1)
    assert radical_membership(x, [x * x], ring)
    assert not radical_membership(x, [y], ring)
    assert radical_membership(x, [Poly.constant(ring, 1)], ring)


def test_krull_dimension_examples():
    ring = sprime_p1()
    x1, x2, xi1, xi2 = [Poly.variable(ring, i) for i in range(4)]
    p = x1 * xi1 + x2 * xi2
    assert krull_dimension([p], ring) == 3
    assert krull_dimension([], ring) == 4
    assert krull_dimension([xi1, xi2], ring) == 2
    assert krull_dimension([Poly.constant(ring, 1)], ring) == EMPTY_DIM


def test_krull_dimension_order_invariance():
    ring = sprime_p1()
    r = rng(23)
    for _ in range(8):
        gens = [random_poly(r, ring, 2, 2) for _ in range(2)]
        assert krull_dimension(gens, ring, degrevlex_order()) == \
            krull_dimension(gens, ring, lex_order())


def test_intersection():
    ring = ring2()
    x, y = Poly.variable(ring, 0), Poly.variable(ring, 1)
    inter = intersect_ideals([x], [y], ring)
    assert inter == groebner_basis([x * y], ring)


def test_weyl_buchberger_examples():
    th = parse_weyl("x1*d1 + x2*d2", 2)
    gb = weyl_buchberger([(th,)], 1, 2)
    assert gb == [(th,)]
    ring = sprime_p1()
    init = initial_forms(gb, ring, 1)
    p = Poly(ring, {(1, 0, 1, 0): 1, (0, 1, 0, 1): 1})
    assert init == [{(0, (1, 0, 1, 0)): Fraction(1), (0, (0, 1, 0, 1)): Fraction(1)}]
    gb2 = weyl_buchberger([(parse_weyl("d1", 2),), (parse_weyl("d2", 2),)], 1, 2)
    assert [(format_weyl(v[0]),) for v in gb2] == [("d2",), ("d1",)]
    gb3 = weyl_buchberger([(WeylElement.one(2),)], 1, 2)
    assert gb3 == [(WeylElement.one(2),)]


def test_initial_forms_examples():
    ring = sprime_p1()
    const_shift = parse_weyl("x1*d1 + x2*d2 + 5", 2)
    init = initial_forms([(const_shift,)], ring, 1)[0]
    assert init == {(0, (1, 0, 1, 0)): Fraction(1), (0, (0, 1, 0, 1)): Fraction(1)}
    init2 = initial_forms([(parse_weyl("x1", 2),)], ring, 1)[0]
    assert init2 == {(0, (1, 0, 0, 0)): Fraction(1)}
    init3 = initial_forms([(parse_weyl("x1*d1^2 + d1", 2),)], ring, 1)[0]
    assert init3 == {(0, (1, 0, 2, 0)): Fraction(1)}


def test_weyl_normal_form_membership():
    # membership of a left multiple
    th = parse_weyl("x1*d1 + x2*d2 + 1", 2)
    gb = weyl_buchberger([(th,)], 1, 2)
    r = rng(24)
    from helpers import random_weyl
    from toric_dmod.weyl import weyl_mul
    for _ in range(15):
        f = random_weyl(r, 2, 2, 2)
        prod = weyl_mul(f, th)
        nf = weyl_normal_form((prod,), gb, WeylModuleOrder(1))
        assert all(e.is_zero() for e in nf)


def test_initial_forms_generate_associated_graded():
    # the top-weight part of any element of the submodule must reduce to
    # zero against the initial forms of the filtered basis
    from toric_dmod.charvar import s_prime_ring
    from toric_dmod.dmod import d_module_left
    from toric_dmod.groebner import vec_to_polys, ModuleOrder
    from toric_dmod.weyl import weyl_mul
    from helpers import random_weyl
    r = rng(25)
    for fan in (fan_p1(), fan_p2()):
        gd = grading(fan)
        ring = s_prime_ring(gd)
        pres = d_module_left(gd, gd.class_group.zero())
        gb = pres.relation_gb()
        init = [vec_to_polys(v, ring, 1)[0]
                for v in initial_forms(gb, ring, 1)]
        init_gb = groebner_basis(init, ring)
        for _ in range(12):
            combo = None
            for row in pres.relations:
                term = weyl_mul(random_weyl(r, gd.d, 1, 2), row[0])
                combo = term if combo is None else combo + term
            if combo.is_zero():
                continue
            weight = max(sum(b) for (_, b) in combo.terms)
            top = {a + b: c for (a, b), c in combo.terms.items()
                   if sum(b) == weight}
            assert in_ideal(Poly(ring, top), init_gb)


def test_filtered_gb_initial_ideal_matches_z_for_twists():
    # gr(D_L(b)) is cut out by the degree-zero quadrics, exactly
    from toric_dmod.charvar import s_prime_ring, z_ideal
    from toric_dmod.dmod import d_module_left
    from toric_dmod.charvar import characteristic_ideal
    from itertools import product as iproduct
    for fan in (fan_p1(), fan_p2(), fan_p1p1()):
        gd = grading(fan)
        ring = s_prime_ring(gd)
        zred = groebner_basis(list(z_ideal(gd).generators), ring)
        width = gd.class_group.free_rank
        for coords in iproduct((-2, 0, 1), repeat=width):
            pres = d_module_left(gd, coords)
            assert characteristic_ideal(gd, pres) == zred


def test_toric_ideal_twisted_cubic_and_segre():
    ring = PolyRing(("y1", "y2", "y3", "y4"))
    cubic = toric_ideal([(3, 0), (2, 1), (1, 2), (0, 3)], ring)
    y = [Poly.variable(ring, i) for i in range(4)]
    for rel in (y[1] * y[1] - y[0] * y[2], y[2] * y[2] - y[1] * y[3],
                y[1] * y[2] - y[0] * y[3]):
        assert in_ideal(rel, cubic)
    assert krull_dimension(cubic, ring) == 2
    segre = toric_ideal([(1, 0, 1, 0), (1, 0, 0, 1), (0, 1, 1, 0), (0, 1, 0, 1)],
                        ring)
    assert segre == groebner_basis([y[1] * y[2] - y[0] * y[3]], ring)


def test_weyl_engine_matches_commutative_on_x_only_input():
    # polynomials without derivative factors generate commutative ideals;
    # both engines must produce the same reduced basis
    from toric_dmod.groebner import initial_forms as iforms
    ring = PolyRing(("x1", "x2"))
    sprime = PolyRing(("x1", "x2", "xi1", "xi2"))
    r = rng(26)
    for _ in range(8):
        polys = [random_poly(r, ring, 2, 2) for _ in range(2)]
        polys = [p for p in polys if not p.is_zero()]
        if not polys:
            continue
        comm = groebner_basis(polys, ring)
        rows = []
        for p in polys:
            elt = WeylElement(2, {(e, (0, 0)): c for e, c in p.terms.items()})
            rows.append((elt,))
        wgb = weyl_buchberger(rows, 1, 2)
        back = [Poly(ring, {a: c for (a, b), c in v[0].terms.items()})
                for v in wgb]
        assert sorted(map(format_poly, back)) == sorted(map(format_poly, comm))


def test_saturation_known_value():
    ring = PolyRing(("x", "y", "z"))
    x, y, z = [Poly.variable(ring, i) for i in range(3)]
    sat = saturation([x * x * y, x * z], x, ring)
    assert sat == groebner_basis([y, z], ring)


def test_reduced_basis_independent_of_generator_order():
    ring = PolyRing(("x", "y", "z"))
    r = rng(27)
    for _ in range(6):
        gens = [random_poly(r, ring, 2, 3) for _ in range(3)]
        gens = [g for g in gens if not g.is_zero()]
        forward = groebner_basis(gens, ring)
        backward = groebner_basis(list(reversed(gens)), ring)
        assert forward == backward
    th1 = parse_weyl("x1*d1 + x2*d2 + 1", 2)
    extra = parse_weyl("x1*x2*d1*d2 - 2", 2)
    a = weyl_buchberger([(th1,), (extra,)], 1, 2)
    b = weyl_buchberger([(extra,), (th1,)], 1, 2)
    assert a == b


def test_module_annihilator_exactness():
    # Ann of k[x,y]^2 / <x e1, y e2> is (x) intersect (y) = (xy)
    from toric_dmod.groebner import annihilator_of_graded_quotient, poly_to_vec
    ring = ring2()
    x, y = Poly.variable(ring, 0), Poly.variable(ring, 1)
    vecs = [poly_to_vec(x, 0), poly_to_vec(y, 1)]
    ann = annihilator_of_graded_quotient(vecs, ring, 2)
    assert ann == groebner_basis([x * y], ring)


def test_weight_order_picks_weighted_leading_terms():
    from toric_dmod.groebner import weight_order
    ring = PolyRing(("x", "xi"))
    order = weight_order((0, 1))
    f = Poly(ring, {(3, 0): 1, (1, 1): 1})
    assert max(f.terms, key=order.key) == (1, 1)
    # tiebreak within a weight level falls back to degrevlex
    g = Poly(ring, {(2, 1): 1, (0, 1): 1})
    assert max(g.terms, key=order.key) == (2, 1)


def test_toric_ideal_with_laurent_monomials():
    # z, z^-1 satisfy y1 y2 = 1
    ring = PolyRing(("y1", "y2"))
    ideal = toric_ideal([(1,), (-1,)], ring)
    y1, y2 = Poly.variable(ring, 0), Poly.variable(ring, 1)
    assert ideal == groebner_basis([y1 * y2 - Poly.constant(ring, 1)], ring)
