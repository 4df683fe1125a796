import random

import pytest
import sympy

from cuspidal.catalog import NEW_QUARTIC_TEXT, XYZW
from cuspidal.cyclofield import CycloElem
from cuspidal.extfield import TowerContext
from cuspidal.groebner import (
    NotZeroDimensional,
    buchberger,
    eliminant,
    extract_points,
    is_member,
    normal_form,
    radical_zero_dim,
    spoly,
    zero_dim_analyze,
)
from cuspidal.multipoly import LEX, Ring, jacobian


def rand_poly(rng, ring, deg=2, nterms=3, span=4):
    terms = []
    for _ in range(nterms):
        exp = [0] * ring.nvars
        for _ in range(rng.randint(0, deg)):
            exp[rng.randrange(ring.nvars)] += 1
        terms.append((tuple(exp), CycloElem.from_int(rng.randint(-span, span))))
    return ring.from_terms(terms)


def test_duplicate_generator():
    ring = Ring(("x",))
    x = ring.var("x")
    gb = buchberger([x, x])
    assert len(gb) == 1 and gb.polys[0] == x


def test_lex_backsubstitution():
    ring = Ring(("y", "x"), LEX)
    y, x = ring.gens()
    gb = buchberger([x - 1, y - x])
    assert set(gb.polys) == {y - 1, x - 1}


def test_zero_ideal():
    ring = Ring(("x",))
    gb = buchberger([ring.zero], ring=ring)
    assert len(gb) == 0


def test_gb_contract_random_ideals():
    # all S-polynomials of the output reduce to zero; inputs reduce to zero
    rng = random.Random(4242)
    ring = Ring(("x", "y", "z"))
    for trial in range(100):
        gens = [rand_poly(rng, ring) for _ in range(rng.randint(2, 4))]
        gens = [g for g in gens if not g.is_zero]
        if not gens:
            continue
        gb = buchberger(gens, ring=ring)
        for g in gens:
            assert normal_form(g, gb).is_zero
        polys = list(gb.polys)
        for i in range(len(polys)):
            for j in range(i + 1, len(polys)):
                assert normal_form(spoly(polys[i], polys[j]), gb).is_zero


def test_membership_order_independence():
    rng = random.Random(99)
    drl = Ring(("x", "y"))
    lex = drl.with_order(LEX)
    for _ in range(25):
        gens_d = [rand_poly(rng, drl) for _ in range(2)]
        gens_d = [g for g in gens_d if not g.is_zero]
        if not gens_d:
            continue
        gens_l = [lex.from_terms(g.terms) for g in gens_d]
        gb_d = buchberger(gens_d, ring=drl)
        gb_l = buchberger(gens_l, ring=lex)
        probe = rand_poly(rng, drl, deg=3)
        probe_l = lex.from_terms(probe.terms)
        assert is_member(probe, gb_d) == is_member(probe_l, gb_l)


def test_against_sympy_oracle():
    # rational-coefficient ideals: compare the reduced bases with sympy
    rng = random.Random(1234)
    ring = Ring(("x", "y"))
    xs, ys = sympy.symbols("x y")
    for _ in range(15):
        gens = []
        for _ in range(2):
            p = rand_poly(rng, ring, deg=2, nterms=3)
            # keep coefficients rational for the oracle
            p = ring.from_terms(
                (e, CycloElem.from_rat(c.c[0])) for e, c in p.terms
            )
            if not p.is_zero:
                gens.append(p)
        if not gens:
            continue
        gb = buchberger(gens, ring=ring)
        sgens = []
        for g in gens:
            expr = 0
            for e, c in g.terms:
                expr += sympy.Rational(str(c.c[0])) * xs ** e[0] * ys ** e[1]
            sgens.append(expr)
        sgb = sympy.groebner(sgens, xs, ys, order="grevlex")

        def monic_terms(pairs):
            pairs = dict(pairs)
            lead = max(pairs, key=lambda e: (sum(e), tuple(-x for x in reversed(e))))
            lc = pairs[lead]
            return tuple(sorted((e, sympy.Rational(c) / lc) for e, c in pairs.items()))

        want = set()
        for expr in sgb.exprs:
            poly = sympy.Poly(expr, xs, ys)
            want.add(monic_terms(poly.terms()))
        got = set()
        for g in gb.polys:
            got.add(
                monic_terms(
                    [(e, sympy.Rational(str(c.c[0]))) for e, c in g.terms]
                )
            )
        assert got == want


def test_normal_form_of_generator_is_zero():
    ring = Ring(("x", "y"))
    x, y = ring.gens()
    gens = [x**2 + y, x * y - 1]
    gb = buchberger(gens)
    for g in gens:
        assert normal_form(g, gb).is_zero
    assert normal_form(x**2, buchberger([x])).is_zero


def test_zero_dim_analyze_basic():
    ring = Ring(("x", "y"))
    x, y = ring.gens()
    gb = buchberger([x**2, y])
    s = zero_dim_analyze(gb)
    assert s.degree == 2
    assert set(s.std_monomials) == {(0, 0), (1, 0)}


def test_not_zero_dimensional_witness():
    ring = Ring(("x", "y"))
    x, y = ring.gens()
    gb = buchberger([x**2])
    with pytest.raises(NotZeroDimensional) as ei:
        zero_dim_analyze(gb)
    assert ei.value.witness_var == "y"


def test_radical_simple():
    ring = Ring(("x",))
    x = ring.var("x")
    s = zero_dim_analyze(buchberger([x**2]))
    r = radical_zero_dim(s)
    assert r.degree == 1
    assert set(r.gb.polys) == {x}
    # idempotence
    assert radical_zero_dim(r).degree == 1


def test_eliminant_is_annihilator():
    ring = Ring(("x", "y"))
    x, y = ring.gens()
    s = zero_dim_analyze(buchberger([x**2 - 2, y - x]))
    g = eliminant(s, x)
    # x satisfies t^2 - 2
    assert len(g) == 3
    assert g[0] == CycloElem.from_int(-2)
    assert g[2] == CycloElem.from_int(1)


def test_extract_points_two_rational():
    ring = Ring(("x", "y"))
    x, y = ring.gens()
    s = zero_dim_analyze(buchberger([x**2 - 2 * x, y - x]))
    pts = extract_points(s)
    assert len(pts) == 2
    got = sorted(str(p.coords[0].c[0]) for p in pts)
    assert got == ["0", "2"]
    for p in pts:
        assert p.is_rational
        assert p.coords[0] == p.coords[1]


def test_extract_points_tower_branch_unresolved():
    # x^2 = e: already in shape position; without resolution this stays a
    # degree-2 branch over the tower (t, t^2 - e)
    ring = Ring(("x",))
    x = ring.var("x")
    e = CycloElem.e_power(1)
    s = zero_dim_analyze(buchberger([x**2 - ring.from_scalar(e)]))
    pts = extract_points(s, resolve=False)
    assert len(pts) == 1
    br = pts[0]
    assert br.degree == 2
    assert isinstance(br.ctx, TowerContext)
    assert br.ctx.levels[0][1][2] == CycloElem.from_int(1)  # monic
    # same scheme with resolution: e = (e^3)^2 so the roots are rational
    pts2 = extract_points(s, resolve=True)
    assert sorted(p.degree for p in pts2) == [1, 1]
    roots = {p.coords[0] for p in pts2}
    assert CycloElem.e_power(3) in roots


def test_extract_points_known_point_peeling():
    ring = Ring(("x", "y"))
    x, y = ring.gens()
    gens = [(x - 1) * (x - 2) * (x - 3), y - x**2]
    s = zero_dim_analyze(buchberger(gens))
    pts = extract_points(
        s, known_points=[(CycloElem.from_int(1), CycloElem.from_int(1))]
    )
    assert len(pts) == 3
    assert sum(p.degree for p in pts) == 3
    assert all(p.is_rational for p in pts)


def test_dynamic_split_degree_additivity():
    # extraction over a branch that stays irrational keeps full degree
    ring = Ring(("x", "y"))
    x, y = ring.gens()
    gens = [x**2 - 2, y - x]
    s = zero_dim_analyze(buchberger(gens))
    pts = extract_points(s)
    assert sum(p.degree for p in pts) == 2
    assert len(pts) == 1 and not pts[0].is_rational


def test_quartic_jacobian_chart_zero_dimensional():
    # the published quartic has 15 nodes away from x = 0
    q = XYZW.parse(NEW_QUARTIC_TEXT)
    chart = Ring(("y", "z", "w"))
    subs = {0: chart.one}
    gens = []
    for g in jacobian(q):
        gd = g.dehomogenize("x")
        gens.append(chart.from_terms((e[1:], c) for e, c in gd.terms))
    gb = buchberger(gens, ring=chart)
    s = zero_dim_analyze(gb)
    assert s.degree == 15
    r = radical_zero_dim(s)
    assert r.degree == 15
