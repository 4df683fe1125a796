import pytest

from cuspidal import catalog
from cuspidal.cyclofield import ALPHA, CycloElem
from cuspidal.curvegeom import (
    CurveOnSurface,
    ResolutionError,
    SquareRootFailure,
    curve_lies_on,
    curve_singular_points,
    find_tropes,
    intersect_surfaces,
    pair_intersection_away_from,
    poly_square_root,
    resolve_cusp,
    trope_orbits,
)
from cuspidal.multipoly import ProjPoint, QZ5, restrict_to_plane
from cuspidal.zfive import ActionK

R = catalog.XYZW


def test_poly_square_root_roundtrip():
    x, y, z, w = R.gens()
    c = x**2 + (z * w).scale(CycloElem.from_int(1) - 2 * ALPHA)
    scalar, root = poly_square_root((c * c).scale(ALPHA))
    assert scalar == ALPHA * c.lc() ** 2 or (root * root).scale(scalar) == (
        c * c
    ).scale(ALPHA)
    with pytest.raises(SquareRootFailure):
        poly_square_root(x**2 + y**2)
    with pytest.raises(SquareRootFailure):
        poly_square_root(x**3)


def test_trope_census_published_quartic(node_data):
    Q = catalog.get("new_quartic").poly
    census = find_tropes(
        Q, node_data["nodes"], node_data["fixed"], action=ActionK(0)
    )
    assert len(census.tropes) == 16
    inv, through, away = census.partition()
    assert len(inv) == 1 and len(through) == 5 and len(away) == 10
    # the invariant trope through the fixed node is y = 0
    assert str(inv[0].plane) == "y"
    # every trope contains exactly 6 certified nodes
    for t in census.tropes:
        assert len(t.node_indices) == 6
    # restriction of Q to y = 0 is the published doubled conic
    x, y, z, w = R.gens()
    conic = x**2 + (z * w).scale(CycloElem.from_int(1) - 2 * ALPHA)
    restr = restrict_to_plane(Q, y)
    assert restr == conic**2
    # square certificate: conic^2 equals the restriction up to one scalar
    scalar, root = poly_square_root(restr)
    assert root.scale(root.lc()) == root  # monic
    assert (root * root).scale(scalar) == restr


def test_trope_orbits_structure(node_data):
    Q = catalog.get("new_quartic").poly
    act = ActionK(0)
    census = find_tropes(Q, node_data["nodes"], node_data["fixed"], action=act)
    _, through, away = census.partition()
    assert sorted(len(o) for o in trope_orbits(away, act)) == [5, 5]
    assert sorted(len(o) for o in trope_orbits(through, act)) == [5]


def test_no_tropes_on_smooth_quadric():
    x, y, z, w = R.gens()
    census = find_tropes(x**2 + y**2 + z**2 + w**2, [], None)
    assert census.tropes == []


def test_intersect_surfaces_clean(new_divisibility):
    # computed inside the pipeline; its report is part of the stages
    stage = [
        s
        for s in new_divisibility.stages
        if s["stage"] == "quintic_meets_quartic_at_conics"
    ][0]
    assert stage["ok"]
    assert stage["degree_expected"] == 20 == stage["degree_counted"]
    assert stage["conics_on_both"] == 10


def test_intersect_surfaces_rejects_shared_component():
    x, y, z, w = R.gens()
    F = x**2 + y * z
    c = CurveOnSurface("c", [x, y], 1, 0)
    with pytest.raises(ValueError):
        # F and F*(w) share the component F: every plane slice is
        # one-dimensional, violating the precondition
        intersect_surfaces(F, F * w, [c])


def test_resolve_cusp_split_tangent_cone_model():
    # S = x*y*w + z^3 has an A2 point at (0:0:0:1) with tangent cone x*y;
    # the line x = z = 0 lies on S and meets the first exceptional line
    # once, the second not at all (hand-computed oracle)
    x, y, z, w = R.gens()
    S = x * y * w + z**3
    line = CurveOnSurface("L", [x, z], 1, 0)
    assert curve_lies_on(line, S)
    res = resolve_cusp(S, ProjPoint([0, 0, 0, 1]), [line])
    assert res.smooth_verified
    assert res.curve_rows["L"] == (1, 0)
    # correction coefficients (a, b) = (2/3, 1/3) scale the Q-divisor
    from cuspidal.cyclofield import ratio

    assert res.correction("L") == (ratio(2, 3), ratio(1, 3))


def test_resolve_cusp_curve_missing_the_point():
    x, y, z, w = R.gens()
    S = x * y * w + z**3
    far = CurveOnSurface("far", [x - w, z], 1, 0)
    res = resolve_cusp(S, ProjPoint([0, 0, 0, 1]), [far])
    assert res.curve_rows["far"] == (0, 0)


def test_resolve_cusp_rejects_a1():
    x, y, z, w = R.gens()
    cone = x**2 + y * z  # rank-3 quadric cone: A1, not A2
    with pytest.raises(ResolutionError):
        resolve_cusp(cone * w + z**3 * y - z**3 * y + cone * w, ProjPoint([0, 0, 0, 1]), [])
    with pytest.raises(ResolutionError):
        resolve_cusp(x**2 * w + y**2 * w + z**2 * w + x**3, ProjPoint([0, 0, 0, 1]), [])


def test_resolve_cusp_needs_field_extension():
    # tangent cone x^2 + y^2 splits only over Q(zeta5)(i)
    x, y, z, w = R.gens()
    S = x**2 * w + y**2 * w + z**3
    with pytest.raises(ResolutionError) as ei:
        resolve_cusp(S, ProjPoint([0, 0, 0, 1]), [])
    assert "quadratic extension" in str(ei.value)


def test_pair_intersection_away_from():
    x, y, z, w = R.gens()
    c1 = CurveOnSurface("a", [x, y], 1, 0)
    c2 = CurveOnSurface("b", [x, z], 1, 0)
    meet = ProjPoint([0, 0, 0, 1])
    assert pair_intersection_away_from(c1, c2, []) == 1
    assert pair_intersection_away_from(c1, c2, [meet]) == 0


def test_t3_member_has_five_double_points(new_divisibility):
    fam3 = new_divisibility.families[2]
    sing = curve_singular_points(fam3[0])
    assert sum(r.degree for _, r in sing) == 5


def test_resolution_rows_published_consistency(new_divisibility):
    # each conic passes through 6 cusps in total, each T3 member has five
    # double points: the (m1 + m2) totals over the three orbit
    # representatives, scaled by the 5 cusps per orbit, must agree
    fams = new_divisibility.families
    resolutions = new_divisibility.resolutions
    for fam, expected in zip(fams, (6, 6, 10)):
        total = 0
        for res in resolutions:
            for c in fam:
                m1, m2 = res.curve_rows[c.name]
                total += m1 + m2
        assert total == expected


def test_adjunction_values():
    # line / conic / plane quintic on a quintic surface
    line = CurveOnSurface("l", [], 1, 0)
    conic = CurveOnSurface("c", [], 2, 0)
    quintic_section = CurveOnSurface("q", [], 5, 6, double_points=5)
    assert line.resolved_self_intersection() == -3
    assert conic.resolved_self_intersection() == -4
    assert quintic_section.resolved_self_intersection() == -5


def test_exceptional_lines_meet_once(new_divisibility):
    # the two lines of each resolution intersect in exactly one point of
    # the exceptional plane (the A2 dual graph edge)
    from cuspidal import linalg

    for res in new_divisibility.resolutions:
        l1, l2 = res.lines
        rows = [list(l1), list(l2)]
        assert linalg.rank(rows, QZ5) == 2
