import pytest

from cuspidal import catalog
from cuspidal.cyclofield import ALPHA, CycloElem
from cuspidal.linsys import (
    check_double_points,
    conditioned_system,
    impose_cusps,
    kummer_nonexistence_check,
    proportional,
    verify_sc_membership,
)
from cuspidal.multipoly import ProjPoint, QZ5
from cuspidal.singcert import classify_all
from cuspidal.zfive import ActionK, invariant_basis

R = catalog.XYZW


@pytest.fixture(scope="module")
def loci15(new_quartic_cert):
    wchart = new_quartic_cert.report.charts[3]
    assert wchart.piece_radical.degree == 15
    return [(3, wchart.piece_radical)]


def test_trivial_system_single_point():
    # degree-1 system through (1:0:0:0): the three other coordinates
    sys1 = conditioned_system(1, None, points=[(ProjPoint([1, 0, 0, 0]), 1)])
    assert sys1.dimension == 3
    names = set()
    for b in sys1.basis:
        assert len(b.terms) == 1
        names.add(R.vars[b.lm().index(1)])
    assert names == {"y", "z", "w"}


def test_invariant_quintic_system_two_generators(loci15):
    sys5 = conditioned_system(5, 0, loci=loci15)
    assert sys5.dimension == 2
    assert check_double_points(sys5.basis, loci15, R)


def test_unconstrained_quintic_system_dimension(loci15):
    sys5 = conditioned_system(5, None, loci=loci15)
    assert sys5.projective_dimension == 4
    assert check_double_points(sys5.basis, loci15, R)


def test_kernel_dimension_action_invariance(loci15, node_data):
    # imposing via explicit points (restriction of scalars) gives the same
    # kernel dimension as the locus route
    pts = [(p, 2) for p in node_data["cusps"]]
    sys_pts = conditioned_system(5, 0, points=pts)
    assert sys_pts.dimension == 2
    # permuting condition points does not change the kernel
    sys_perm = conditioned_system(5, 0, points=list(reversed(pts)))
    assert sys_perm.dimension == 2


def test_impose_cusps_recovers_published_quintic(loci15):
    sys5 = conditioned_system(5, 0, loci=loci15)
    L1, L2 = sys5.basis
    rep = impose_cusps(L1, L2, loci15)
    assert len(rep.roots) == 1
    assert rep.residual_degree == 0
    F = L1 + L2.scale(rep.roots[0])
    assert proportional(F, catalog.get("new_quintic").poly)


def test_impose_cusps_synthetic_cases():
    from cuspidal import unipoly

    # gcd({b^2 - 1, b - 1}) = b - 1 -> root 1
    g = unipoly.gcd_monic(
        [CycloElem.from_int(-1), QZ5.zero, QZ5.one],
        [CycloElem.from_int(-1), QZ5.one],
        QZ5,
    )
    assert g == [CycloElem.from_int(-1), QZ5.one]


def test_impose_cusps_already_cuspidal(loci15):
    # constraints from (S, S) pencil: minors of S + b*S vanish for b = 0
    s = catalog.get("new_quintic").poly
    zero = R.zero
    rep = impose_cusps(s, zero, loci15)
    # every condition is identically satisfied: gcd is trivial, no roots
    assert rep.residual_degree == 0


def test_linear_system_contains():
    sys1 = conditioned_system(1, None, points=[(ProjPoint([1, 0, 0, 0]), 1)])
    y = R.var("y")
    x = R.var("x")
    assert sys1.contains(y)
    assert not sys1.contains(x)


def test_proportionality():
    x, y = R.var("x"), R.var("y")
    p = x + y
    assert proportional(p, p.scale(ALPHA))
    assert not proportional(p, x - y)


def test_sc_membership_published_solution(node_data):
    q = catalog.get("new_quartic").poly
    smons = invariant_basis(4, 0)
    coeffs = [q.coeff_of(m) for m in smons]
    # representatives of the two other orbits: pick cusps outside the
    # orbit of (1:1:1:1)
    from cuspidal.pipeline import group_into_orbits

    orbits = group_into_orbits(node_data["cusps"], ActionK(0))
    others = [o for o in orbits if catalog.CHOSEN_NODE not in o]
    assert len(others) == 2
    verdict = verify_sc_membership(coeffs, others[0][0], others[1][0])
    assert verdict.passed, verdict.to_json()


def test_sc_membership_zero_assignment_fails():
    verdict = verify_sc_membership(
        [0] * 7, ProjPoint([1, 2, 3, 1]), ProjPoint([1, 3, 2, 1])
    )
    assert verdict.groups["ordinariness"] == "fail"


def test_sc_membership_same_orbit_fails(node_data):
    q = catalog.get("new_quartic").poly
    smons = invariant_basis(4, 0)
    coeffs = [q.coeff_of(m) for m in smons]
    act = ActionK(0)
    image = act.on_point(catalog.CHOSEN_NODE)
    from cuspidal.pipeline import group_into_orbits

    orbits = group_into_orbits(node_data["cusps"], act)
    others = [o for o in orbits if catalog.CHOSEN_NODE not in o]
    verdict = verify_sc_membership(coeffs, image, others[0][0])
    assert verdict.groups["orbit_separation"] == "fail"


def test_kummer_nonexistence(vdgz_quintic_cert):
    loci = []
    for chart in vdgz_quintic_cert.report.charts:
        if chart is not None and chart.piece_radical.degree > 0:
            loci.append((chart.chart_index, chart.piece_radical))
    vq = catalog.get("vdgz_quartic").poly

    def certifier(F):
        c = classify_all(F, "member")
        return c.n_points, c.verdict

    sys4, rep = kummer_nonexistence_check(loci, vq, certifier)
    assert sys4.dimension == 1
    assert rep.contains_quartic
    assert rep.member_points == 15
    assert rep.verdict is False
