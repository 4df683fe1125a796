import pytest

from cuspidal import catalog
from cuspidal.multipoly import ProjPoint, QZ5, jacobian
from cuspidal.singcert import (
    classify_all,
    classify_at_point,
    same_singular_locus,
    singular_scheme,
)

R = catalog.XYZW


def test_smooth_quadric_empty_scheme():
    x, y, z, w = R.gens()
    rep = singular_scheme(x**2 + y**2 + z**2 + w**2, "quadric")
    assert rep.n_points == 0 and rep.tau_total == 0
    cert = classify_all(x**2 + y**2 + z**2 + w**2)
    assert cert.verdict == "smooth"


def test_positive_dimensional_reported():
    x, y, z, w = R.gens()
    # x^2 y^2: singular along two planes
    rep = singular_scheme(x**2 * y**2, "nonreduced")
    assert rep.positive_dimensional is not None
    with pytest.raises(ValueError):
        classify_all(x**2 * y**2)


def test_new_quartic_certificate(new_quartic_cert):
    cert = new_quartic_cert
    assert cert.verdict == "all_A1"
    assert cert.n_points == 16
    assert cert.tau_total == 16
    assert cert.strata == {"rank_le1": "empty", "degenerate": "empty"}
    sizes = sorted(o["size"] for o in cert.orbits)
    assert sizes == [1, 5, 5, 5]
    fixed = [o for o in cert.orbits if o["size"] == 1]
    assert fixed[0]["representative"] == "(0 : 0 : 1 : 0)"


def test_new_quintic_certificate(new_quintic_cert):
    cert = new_quintic_cert
    assert cert.verdict == "all_A2"
    assert cert.n_points == 15
    assert cert.tau_total == 30
    assert cert.strata["rank_le1"] == "empty"
    assert cert.strata["degenerate"] == "all"
    assert sorted(o["size"] for o in cert.orbits) == [5, 5, 5]


def test_vdgz_pair(vdgz_quartic_cert, vdgz_quintic_cert):
    assert vdgz_quartic_cert.verdict == "all_A1"
    assert vdgz_quartic_cert.n_points == 15
    assert vdgz_quintic_cert.verdict == "all_A2"
    assert vdgz_quintic_cert.n_points == 15
    assert vdgz_quintic_cert.tau_total == 30
    assert same_singular_locus(
        vdgz_quartic_cert.report, vdgz_quintic_cert.report
    )


def test_tau_additivity_chart_independent(new_quartic_cert, new_quintic_cert):
    # disjoint pieces sum to the global invariants
    for cert, tau, n in ((new_quartic_cert, 16, 16), (new_quintic_cert, 30, 15)):
        assert sum(p["tau"] for p in cert.report.pieces) == tau
        assert sum(p["npoints"] for p in cert.report.pieces) == n


def test_classify_at_point_local_models():
    # u^2 + v^2 + t^2 at the origin of the w = 1 chart: A1
    x, y, z, w = R.gens()
    F1 = x**2 * w + y**2 * w + z**2 * w  # cubic with A1 at (0:0:0:1)
    assert classify_at_point(F1, ProjPoint([0, 0, 0, 1])) == "A1"
    # u^2 + v^2 + t^3: A2
    F2 = x**2 * w + y**2 * w + z**3
    assert classify_at_point(F2, ProjPoint([0, 0, 0, 1])) == "A2"
    # u^2 + v^2 + t^4: needs a higher jet (A3)
    F3 = x**2 * w**2 + y**2 * w**2 + z**4
    assert classify_at_point(F3, ProjPoint([0, 0, 0, 1])).startswith("other")


def test_classify_at_point_published_quartic():
    q = catalog.get("new_quartic").poly
    assert classify_at_point(q, ProjPoint([1, 1, 1, 1])) == "A1"
    assert classify_at_point(q, ProjPoint([0, 0, 1, 0])) == "A1"


def test_classify_at_point_matches_scheme_verdict(node_data):
    # pointwise classification agrees with the scheme-level verdict
    s = catalog.get("new_quintic").poly
    for p in node_data["cusps"][:5]:
        assert classify_at_point(s, p) == "A2"


def test_singular_points_closed_under_action(node_data):
    # a_k-image of every extracted singular point is singular again
    from cuspidal.zfive import ActionK

    q = catalog.get("new_quartic").poly
    parts = jacobian(q)
    act = ActionK(0)
    for p in node_data["nodes"]:
        img = act.on_point(p)
        for g in parts:
            assert QZ5.is_zero(g.eval(list(img.coords)))


def test_certificate_json_schema(new_quintic_cert):
    import jsonschema

    from cuspidal.schemas import SINGULARITY_CERTIFICATE_SCHEMA

    jsonschema.validate(new_quintic_cert.to_json(), SINGULARITY_CERTIFICATE_SCHEMA)
