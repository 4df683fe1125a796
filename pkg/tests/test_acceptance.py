"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

All tolerances are exact (integer / field equality); randomized property
suites run under fixed seeds.
"""

import json
import random

import pytest

from cuspidal import catalog
from cuspidal.cli import main as cli_main
from cuspidal.cyclofield import ALPHA, CycloElem, ratio
from cuspidal.lattice import PUBLISHED_MATRIX, PUBLISHED_NULLSPACE
from cuspidal.multipoly import Ring, restrict_to_plane
from cuspidal.zfive import ActionK, invariant_basis


def _line(n, name, ok):
    print("ACCEPTANCE %d %-28s %s" % (n, name, "PASS" if ok else "FAIL"))
    return ok


def test_criterion_1_new_quintic_certification(capsys):
    code = cli_main(["--json", "surface-report", "new_quintic"])
    out = capsys.readouterr().out
    rep = json.loads(out)
    ok = (
        code == 0
        and rep["n_points"] == 15
        and rep["verdict"] == "all_A2"
        and rep["tau_total"] == 30
        and rep["strata"] == {"rank_le1": "empty", "degenerate": "all"}
        and sorted(o["size"] for o in rep["orbits"]) == [5, 5, 5]
        and rep["free_action"]["free"] is True
    )
    with capsys.disabled():
        _line(1, "new quintic: 15 free A2", ok)
    assert ok, rep


def test_criterion_2_new_quartic_certification(new_quartic_cert, capsys):
    cert = new_quartic_cert
    fixed = [o for o in cert.orbits if o["size"] == 1]
    ok = (
        cert.verdict == "all_A1"
        and cert.n_points == 16
        and cert.tau_total == 16
        and sorted(o["size"] for o in cert.orbits) == [1, 5, 5, 5]
        and fixed[0]["representative"] == "(0 : 0 : 1 : 0)"
    )
    with capsys.disabled():
        _line(2, "new quartic: 16 A1 nodes", ok)
    assert ok


def test_criterion_3_invariant_basis(capsys):
    got = set(invariant_basis(4, 0))
    want = {
        (4, 0, 0, 0),
        (0, 3, 1, 0),
        (0, 1, 0, 3),
        (0, 0, 2, 2),
        (1, 2, 0, 1),
        (1, 1, 2, 0),
        (2, 0, 1, 1),
    }
    support = set(catalog.get("new_quartic").poly.support())
    ok = got == want == support and len(got) == 7
    with capsys.disabled():
        _line(3, "invariant quartic basis = 7", ok)
    assert ok


@pytest.fixture(scope="module")
def loci15(new_quartic_cert):
    wchart = new_quartic_cert.report.charts[3]
    return [(3, wchart.piece_radical)]


def test_criterion_4_linear_system_dimensions(loci15, capsys):
    from cuspidal.linsys import conditioned_system

    inv5 = conditioned_system(5, 0, loci=loci15)
    full5 = conditioned_system(5, None, loci=loci15)
    ok = inv5.dimension == 2 and full5.projective_dimension == 4
    with capsys.disabled():
        _line(4, "system dims 2 and P^4", ok)
    assert ok, (inv5.dimension, full5.projective_dimension)


def test_criterion_5_construction_replay(loci15, capsys):
    from cuspidal.linsys import conditioned_system, impose_cusps, proportional

    L1, L2 = conditioned_system(5, 0, loci=loci15).basis
    rep = impose_cusps(L1, L2, loci15)
    ok = len(rep.roots) == 1 and rep.residual_degree == 0
    if ok:
        F = L1 + L2.scale(rep.roots[0])
        ok = proportional(F, catalog.get("new_quintic").poly)
    with capsys.disabled():
        _line(5, "impose_cusps replay", ok)
    assert ok


def test_criterion_6_vdgz_replay(
    vdgz_quartic_cert, vdgz_quintic_cert, capsys
):
    from cuspidal.linsys import kummer_nonexistence_check
    from cuspidal.singcert import classify_all, same_singular_locus

    ok = (
        vdgz_quintic_cert.verdict == "all_A2"
        and vdgz_quintic_cert.n_points == 15
        and vdgz_quartic_cert.verdict == "all_A1"
        and vdgz_quartic_cert.n_points == 15
        and same_singular_locus(
            vdgz_quartic_cert.report, vdgz_quintic_cert.report
        )
    )
    if ok:
        loci = [
            (c.chart_index, c.piece_radical)
            for c in vdgz_quintic_cert.report.charts
            if c is not None and c.piece_radical.degree > 0
        ]

        def certifier(F):
            c = classify_all(F, "member")
            return c.n_points, c.verdict

        sys4, rep = kummer_nonexistence_check(
            loci, catalog.get("vdgz_quartic").poly, certifier
        )
        ok = (
            sys4.dimension == 1
            and rep.contains_quartic
            and rep.member_points == 15
            and rep.verdict is False
        )
    with capsys.disabled():
        _line(6, "VdGZ replay + no Kummer", ok)
    assert ok


def test_criterion_7_trope_census(node_data, capsys):
    from cuspidal.curvegeom import find_tropes

    Q = catalog.get("new_quartic").poly
    census = find_tropes(
        Q, node_data["nodes"], node_data["fixed"], action=ActionK(0)
    )
    inv, through, away = census.partition()
    x, y, z, w = catalog.XYZW.gens()
    conic = x**2 + (z * w).scale(CycloElem.from_int(1) - 2 * ALPHA)
    ok = (
        len(census.tropes) == 16
        and len(inv) == 1
        and str(inv[0].plane) == "y"
        and len(through) == 5
        and len(away) == 10
        and restrict_to_plane(Q, y) == conic**2
    )
    with capsys.disabled():
        _line(7, "trope census 1 + 5 + 10", ok)
    assert ok


def test_criterion_8_lattice_reproduction(new_divisibility, capsys):
    res = new_divisibility
    lat = res.lattice
    det_ok = lat.determinant() == 0
    vec_ok = list(res.vector) in (
        list(PUBLISHED_NULLSPACE),
        [-x for x in PUBLISHED_NULLSPACE],
    )
    cert = res.certificate
    relation_ok = (
        cert.relation_text() == "2*A1 + A1' + 2*A2 + A2' + A3 + 2*A3' == 3*L"
        and sum(cert.swaps) == 1
    )
    matrix_ok = lat.matrix == PUBLISHED_MATRIX
    ok = det_ok and vec_ok and relation_ok and matrix_ok
    with capsys.disabled():
        _line(8, "lattice reproduction", ok)
        if not matrix_ok:
            mism = [
                (i, j, lat.matrix[i][j], PUBLISHED_MATRIX[i][j])
                for i in range(9)
                for j in range(9)
                if lat.matrix[i][j] != PUBLISHED_MATRIX[i][j]
            ]
            print(
                "  criterion 8 matrix mismatches (computed vs published):",
                mism,
            )
            print(
                "  det==0: %s; nullspace vector == +/-published: %s; "
                "relation + single swap: %s" % (det_ok, vec_ok, relation_ok)
            )
            print(
                "  note: the published (T3,T3) diagonal is inconsistent with"
                " the published T3 row itself; the projection formula applied"
                " to the published row forces the computed value (see"
                " decisions ledger)."
            )
    assert det_ok and vec_ok and relation_ok
    assert matrix_ok, (
        "assembled matrix differs from the published display exactly at the "
        "(T3,T3) diagonal entry: computed %d vs published %d; all other 80 "
        "entries agree after the recorded relabelling %s"
        % (lat.matrix[8][8], PUBLISHED_MATRIX[8][8], res.match)
    )


def test_criterion_9_property_suites(capsys):
    ok = True

    # field axioms, >= 10^4 randomized cases, fixed seed
    rng = random.Random(20240501)

    def rand_elem(span=6):
        return CycloElem(
            [ratio(rng.randint(-span, span), rng.randint(1, 5)) for _ in range(4)]
        )

    for _ in range(10_000):
        a, b, c = rand_elem(), rand_elem(), rand_elem()
        if (a + b) + c != a + (b + c) or a * (b + c) != a * b + a * c:
            ok = False
            break
    for _ in range(300):
        a = rand_elem()
        if not a.is_zero and a * a.inverse() != CycloElem.from_int(1):
            ok = False
            break

    # GB contract on >= 100 random small ideals
    from cuspidal.groebner import buchberger, normal_form, spoly

    ring = Ring(("x", "y", "z"))
    for _ in range(100):
        gens = []
        for _ in range(rng.randint(2, 3)):
            terms = []
            for _ in range(3):
                e = [0, 0, 0]
                for _ in range(rng.randint(0, 2)):
                    e[rng.randrange(3)] += 1
                terms.append((tuple(e), CycloElem.from_int(rng.randint(-3, 3))))
            gens.append(ring.from_terms(terms))
        gens = [g for g in gens if not g.is_zero]
        if not gens:
            continue
        gb = buchberger(gens, ring=ring)
        for g in gens:
            if not normal_form(g, gb).is_zero:
                ok = False
        polys = list(gb.polys)
        for i in range(len(polys)):
            for j in range(i + 1, len(polys)):
                if not normal_form(spoly(polys[i], polys[j]), gb).is_zero:
                    ok = False

    # Euler and Hessian identities on random homogeneous polynomials
    from cuspidal.multipoly import hessian

    R4 = catalog.XYZW
    for _ in range(40):
        d = rng.randint(1, 4)
        terms = []
        for _ in range(5):
            e = [0, 0, 0, 0]
            for _ in range(d):
                e[rng.randrange(4)] += 1
            terms.append((tuple(e), CycloElem.from_int(rng.randint(-4, 4))))
        p = R4.from_terms(terms)
        lhs = R4.zero
        for i, v in enumerate(R4.vars):
            lhs = lhs + R4.var(v) * p.partial(i)
        if lhs != p.scale(CycloElem.from_int(d)):
            ok = False
        h = hessian(p)
        for i in range(4):
            for j in range(4):
                if h[i][j] != h[j][i]:
                    ok = False

    # radical idempotence
    from cuspidal.groebner import radical_zero_dim, zero_dim_analyze

    ring2 = Ring(("x", "y"))
    x, y = ring2.gens()
    s = zero_dim_analyze(buchberger([x**3, (y - 1) ** 2 * (y + 2)]))
    r1 = radical_zero_dim(s)
    r2 = radical_zero_dim(r1)
    if s.degree != 9 or r1.degree != 2 or r2.degree != 2:
        ok = False

    # dynamic-split degree additivity
    from cuspidal.extfield import BASE_TOWER, SplitEvent, ext_invert_or_split

    tower = BASE_TOWER.adjoin(
        "b", [BASE_TOWER.zero, BASE_TOWER.coerce(-1), BASE_TOWER.one]
    )
    evt = ext_invert_or_split(tower, tower.sub(tower.gen(), tower.one))
    if not isinstance(evt, SplitEvent) or sum(
        b.degree() for b in evt.branches
    ) != tower.degree():
        ok = False

    # certificate replay soundness
    from cuspidal.lattice import IntersectionLattice, divisibility_certificate

    lat = IntersectionLattice(PUBLISHED_MATRIX)
    cert = divisibility_certificate(lat, list(PUBLISHED_NULLSPACE))
    pattern = [2, 1, 2, 1, 2, 1, 0, 0, 0]
    if [p + 3 * m for p, m in zip(pattern, cert.M)] != list(cert.vector):
        ok = False

    with capsys.disabled():
        _line(9, "property suites", ok)
    assert ok
