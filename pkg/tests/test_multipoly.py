import random

import pytest
import sympy

from cuspidal.catalog import NEW_QUARTIC_TEXT, NEW_QUINTIC_TEXT, XYZW
from cuspidal.cyclofield import ALPHA, CycloElem, ratio
from cuspidal.multipoly import (
    LEX,
    ParseError,
    ProjPoint,
    QZ5,
    Ring,
    hessian,
    jacobian,
    minors,
    print_poly,
    restrict_to_plane,
)

R = XYZW


def rand_poly(rng, ring, deg=3, nterms=5, span=6):
    terms = []
    for _ in range(nterms):
        exp = [0] * ring.nvars
        for _ in range(rng.randint(0, deg)):
            exp[rng.randrange(ring.nvars)] += 1
        coeff = CycloElem(
            [ratio(rng.randint(-span, span), rng.randint(1, 3)) for _ in range(4)]
        )
        terms.append((tuple(exp), coeff))
    return ring.from_terms(terms)


def rand_homogeneous(rng, ring, deg, nterms=6, span=6):
    terms = []
    for _ in range(nterms):
        exp = [0] * ring.nvars
        for _ in range(deg):
            exp[rng.randrange(ring.nvars)] += 1
        coeff = CycloElem(
            [ratio(rng.randint(-span, span)) for _ in range(4)]
        )
        terms.append((tuple(exp), coeff))
    return ring.from_terms(terms)


# -- parsing the catalog equations ------------------------------------------


def test_parse_published_quartic_support():
    q = R.parse(NEW_QUARTIC_TEXT)
    assert q.is_homogeneous() and q.degree() == 4
    want = {
        (4, 0, 0, 0),
        (2, 0, 1, 1),
        (1, 1, 2, 0),
        (0, 3, 1, 0),
        (0, 1, 0, 3),
        (0, 0, 2, 2),
        (1, 2, 0, 1),
    }
    assert set(q.support()) == want


def test_parse_zero():
    assert R.parse("0").is_zero


def test_parse_published_quintic_z5_coefficient():
    s = R.parse(NEW_QUINTIC_TEXT)
    assert s.is_homogeneous() and s.degree() == 5
    c = s.coeff_of((0, 0, 5, 0))
    want = CycloElem.from_rat(ratio(-136, 3)) + ratio(220, 3) * ALPHA
    assert c == want


def test_print_parse_roundtrip_catalog():
    for text in (NEW_QUARTIC_TEXT, NEW_QUINTIC_TEXT):
        p = R.parse(text)
        assert R.parse(print_poly(p)) == p


def test_print_parse_roundtrip_random():
    rng = random.Random(13)
    for _ in range(200):
        p = rand_poly(rng, R)
        assert R.parse(print_poly(p)) == p


def test_parse_errors_are_positioned():
    with pytest.raises(ParseError) as ei:
        R.parse("x^2 + q")
    assert "unknown identifier" in str(ei.value)
    with pytest.raises(ParseError):
        R.parse("2x")  # implicit multiplication
    with pytest.raises(ParseError):
        R.parse("x^-1")
    with pytest.raises(ParseError):
        R.parse("(x + y")


# -- calculus ----------------------------------------------------------------


def test_partial_simple():
    x = R.var("x")
    assert (x**4).partial("x") == 4 * x**3


def test_euler_relation_random():
    rng = random.Random(17)
    for _ in range(60):
        d = rng.randint(1, 5)
        p = rand_homogeneous(rng, R, d)
        lhs = R.zero
        for i, v in enumerate(R.vars):
            lhs = lhs + R.var(v) * p.partial(i)
        assert lhs == p.scale(CycloElem.from_int(d))


def test_hessian_symmetric_and_commuting():
    rng = random.Random(19)
    for _ in range(30):
        p = rand_poly(rng, R, deg=4)
        h = hessian(p)
        for i in range(4):
            for j in range(4):
                assert h[i][j] == h[j][i]
                assert p.partial(i).partial(j) == p.partial(j).partial(i)


def test_quartic_partials_vanish_at_known_nodes():
    q = R.parse(NEW_QUARTIC_TEXT)
    one = CycloElem.from_int(1)
    zero = CycloElem.from_int(0)
    for pt in ([one, one, one, one], [zero, zero, one, zero]):
        for g in jacobian(q):
            assert QZ5.is_zero(g.eval(pt))


def test_hessian_annihilates_singular_point():
    # rows of the projective Hessian contract with a singular point to zero
    q = R.parse(NEW_QUARTIC_TEXT)
    h = hessian(q)
    one = CycloElem.from_int(1)
    pt = [one, one, one, one]
    for i in range(4):
        acc = QZ5.zero
        for j in range(4):
            acc = QZ5.add(acc, QZ5.mul(h[i][j].eval(pt), pt[j]))
        assert QZ5.is_zero(acc)


# -- minors -------------------------------------------------------------------


def test_minors_order_one():
    x, y = Ring(("x", "y")).gens()
    m = [[x, y], [y, x]]
    assert minors(m, 1) == [x, y, y, x]


def test_minors_against_sympy():
    rng = random.Random(23)
    ring = Ring(("x", "y"))
    xs, ys = sympy.symbols("x y")
    for _ in range(10):
        m = [[rand_poly(rng, ring, deg=2, nterms=3) for _ in range(3)] for _ in range(3)]
        got = minors(m, 3)[0]
        sm = sympy.Matrix(
            [[_to_sympy(m[i][j], (xs, ys)) for j in range(3)] for i in range(3)]
        )
        want = sympy.expand(sympy.rem(sympy.expand(sm.det()), sympy.Symbol("t")**4 + sympy.Symbol("t")**3 + sympy.Symbol("t")**2 + sympy.Symbol("t") + 1, sympy.Symbol("t")))
        assert sympy.expand(_to_sympy(got, (xs, ys)) - want) == 0


def _to_sympy(p, syms):
    """Model the element in QQ[x,...,t]/(Phi5(t)) with t standing for e."""
    t = sympy.Symbol("t")
    phi = t**4 + t**3 + t**2 + t + 1
    out = 0
    for e, c in p.terms:
        mono = 1
        for s, k in zip(syms, e):
            mono *= s**k
        coeff = sum(sympy.Rational(str(ci)) * t**i for i, ci in enumerate(c.c))
        out += coeff * mono
    return sympy.expand(sympy.rem(sympy.expand(out), phi, t))


# -- restriction / dehomogenization -------------------------------------------


def test_restrict_quartic_to_trope_plane():
    # restriction to y = 0 equals (x^2 + (1-2a)zw)^2 with a = e^3+e^2
    q = R.parse(NEW_QUARTIC_TEXT)
    y = R.var("y")
    r = restrict_to_plane(q, y)
    x, _, z, w = R.gens()
    conic = x**2 + (z * w).scale(CycloElem.from_int(1) - 2 * ALPHA)
    assert r == conic**2
    # independent oracle: expand with sympy over the cyclotomic field
    xs, ys, zs, ws = sympy.symbols("x y z w")
    lhs = _to_sympy(r, (xs, ys, zs, ws))
    want = _to_sympy(conic**2, (xs, ys, zs, ws))
    assert sympy.expand(lhs - want) == 0


def test_dehomogenize():
    x, y, z, w = R.gens()
    assert (x**4 + w**4).dehomogenize("w") == x**4 + 1
    assert restrict_to_plane(x**2 + y**2 + z**2 + w**2, x) == y**2 + z**2 + w**2


def test_restrict_degree_does_not_increase():
    rng = random.Random(29)
    x, y = R.var("x"), R.var("y")
    plane = x + y.scale(CycloElem.from_int(2))
    for _ in range(20):
        p = rand_poly(rng, R, deg=4)
        assert restrict_to_plane(p, plane).degree() <= max(p.degree(), -1)


# -- projective points ---------------------------------------------------------


def test_projpoint_normalization():
    p = ProjPoint([2, 4, 0, 2])
    assert p.coords[3] == CycloElem.from_int(1)
    assert p == ProjPoint([1, 2, 0, 1])
    q = ProjPoint([0, 0, 3, 0])
    assert q.chart() == 2
    with pytest.raises(ValueError):
        ProjPoint([0, 0, 0, 0])


def test_lex_order_backsubstitution_shape():
    ring = Ring(("y", "x"), LEX)
    y, x = ring.gens()
    p = y + x**2
    assert p.lm() == (1, 0)
