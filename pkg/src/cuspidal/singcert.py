"""Scheme-level singularity certificates (all-A1 / all-A2 verdicts).

The singular locus of a surface F = 0 in P^3 is processed per affine
chart; the four charts are sliced into disjoint pieces matching the
projective normalization (last nonzero coordinate = 1), so every
singular point is counted exactly once.  Tjurina degrees come from the
piece scheme degrees, distinct-point counts from their radicals.

Classification is by Hessian rank stratification plus Tjurina
accounting and never needs point coordinates:

* rank(projective Hessian) <= 3 at singular points (Euler), and the
  rank-3 locus is exactly the A1 stratum (tau = 1);
* corank-2-or-worse points (rank <= 1) are excluded by an empty-stratum
  check, so a degenerate point has rank exactly 2, hence is of type A_k
  with k >= 2 and tau = k; tau_total = 2n then forces k = 2 everywhere.
"""

from __future__ import annotations

from . import linalg
from .groebner import (
    NotZeroDimensional,
    ZeroDimScheme,
    buchberger,
    normal_form,
    radical_zero_dim,
    zero_dim_analyze,
)
from .multipoly import Poly, ProjPoint, Ring, hessian, jacobian, minors


class ChartData:
    """Everything computed inside one affine chart."""

    def __init__(self, chart_index, ring, var_map, scheme, radical):
        self.chart_index = chart_index
        self.ring = ring
        self.var_map = var_map  # chart ring var position -> ambient position
        self.scheme = scheme
        self.radical = radical
        self.piece_radical = None  # radical of the disjoint slice (set later)
        self.piece_tau = None


class SingularSchemeReport:
    def __init__(self, surface_name, charts, pieces, positive_dimensional):
        self.surface_name = surface_name
        self.charts = charts  # list of ChartData or None (empty chart)
        self.pieces = pieces  # list of dicts with tau / npoints per piece
        self.positive_dimensional = positive_dimensional  # None or witness

    @property
    def tau_total(self):
        return sum(p["tau"] for p in self.pieces)

    @property
    def n_points(self):
        return sum(p["npoints"] for p in self.pieces)

    def to_json(self):
        return {
            "surface": self.surface_name,
            "positive_dimensional": self.positive_dimensional,
            "pieces": self.pieces,
            "tau_total": self.tau_total,
            "n_points": self.n_points,
        }


def chart_ring(ring: Ring, chart_index: int) -> Ring:
    names = tuple(v for i, v in enumerate(ring.vars) if i != chart_index)
    return Ring(names, ring.order, ring.field)


def to_chart(p: Poly, chart_index: int, cring: Ring) -> Poly:
    """Dehomogenize at the chart variable and drop it from the ring."""
    terms = []
    for e, c in p.terms:
        e2 = tuple(x for i, x in enumerate(e) if i != chart_index)
        terms.append((e2, c))
    return cring.from_terms(terms)


def singular_scheme(F: Poly, surface_name="surface") -> SingularSchemeReport:
    """Jacobian scheme per chart with disjoint-piece degree accounting."""
    if not F.is_homogeneous():
        raise ValueError("surface polynomial must be homogeneous")
    ring = F.ring
    n = ring.nvars
    parts = jacobian(F)
    charts = []
    pieces = []
    positive = None
    for ci in range(n):
        cring = chart_ring(ring, ci)
        var_map = [i for i in range(n) if i != ci]
        gens = [to_chart(g, ci, cring) for g in parts]
        gens = [g for g in gens if not g.is_zero]
        gb = buchberger(gens, ring=cring)
        try:
            scheme = zero_dim_analyze(gb)
        except NotZeroDimensional as ev:
            positive = {"chart": ring.vars[ci], "witness_var": ev.witness_var}
            charts.append(None)
            continue
        radical = radical_zero_dim(scheme)
        data = ChartData(ci, cring, var_map, scheme, radical)
        # piece: points whose LAST nonzero ambient coordinate is x_ci,
        # i.e. all later coordinates vanish
        later = [j for j in range(n) if j > ci]
        piece_tau, piece_rad = _piece_slice(scheme, radical, cring, var_map, later)
        data.piece_tau = piece_tau
        data.piece_radical = piece_rad
        charts.append(data)
        pieces.append(
            {
                "chart": ring.vars[ci],
                "chart_degree": scheme.degree,
                "chart_points": radical.degree,
                "tau": piece_tau,
                "npoints": piece_rad.degree,
            }
        )
    return SingularSchemeReport(surface_name, charts, pieces, positive)


def _piece_slice(scheme, radical, cring, var_map, later_ambient):
    """Subscheme supported on {x_j = 0 for all later ambient j}: its local
    (Tjurina) degree and the radical slice itself."""
    if not later_ambient:
        return scheme.degree, radical
    if scheme.degree == 0:
        return 0, radical
    positions = [var_map.index(j) for j in later_ambient]
    # tau: slice by high powers (N = chart degree bounds local multiplicity)
    N = scheme.degree
    extra = [cring.var(cring.vars[pos]) ** N for pos in positions]
    gb = buchberger(list(scheme.gb.polys) + extra, ring=cring)
    tau = zero_dim_analyze(gb).degree
    # distinct points: slice the radical by the linear forms (exact on a
    # reduced scheme)
    extra_lin = [cring.var(cring.vars[pos]) for pos in positions]
    gb2 = buchberger(list(radical.gb.polys) + extra_lin, ring=cring)
    piece = zero_dim_analyze(gb2)
    piece = ZeroDimScheme(piece.gb, piece.std_monomials, is_radical=True)
    return tau, piece


class SingularityCertificate:
    def __init__(
        self,
        surface_name,
        report,
        verdict,
        n1,
        n2,
        strata,
        orbits=None,
        assumptions=None,
    ):
        self.surface_name = surface_name
        self.report = report
        self.verdict = verdict  # "all_A1" | "all_A2" | "smooth" | "mixed_or_worse"
        self.n1 = n1
        self.n2 = n2
        self.strata = strata
        self.orbits = orbits or []

    @property
    def n_points(self):
        return self.report.n_points

    @property
    def tau_total(self):
        return self.report.tau_total

    def to_json(self):
        return {
            "surface": self.surface_name,
            "n_points": self.n_points,
            "tau_total": self.tau_total,
            "n_A1": self.n1,
            "n_A2": self.n2,
            "verdict": self.verdict,
            "strata": self.strata,
            "orbits": self.orbits,
            "pieces": self.report.pieces,
        }


def _stratum_is_empty(chart: ChartData, minor_polys, chart_index):
    """Is Z intersect V(minors) empty in this chart?"""
    cring = chart.ring
    gens = list(chart.scheme.gb.polys) + [
        to_chart(m, chart_index, cring) for m in minor_polys
    ]
    gb = buchberger([g for g in gens if not g.is_zero], ring=cring)
    return gb.is_trivial()


def _minors_vanish_on_radical(chart: ChartData, minor_polys, chart_index):
    for m in minor_polys:
        mc = to_chart(m, chart_index, chart.ring)
        if not normal_form(mc, chart.radical.gb).is_zero:
            return False
    return True


def classify_all(F: Poly, surface_name="surface", action=None):
    """Full scheme-level certificate for the singular locus of F."""
    report = singular_scheme(F, surface_name)
    if report.positive_dimensional is not None:
        raise ValueError(
            "singular in codimension one (chart %s, variable %s)"
            % (
                report.positive_dimensional["chart"],
                report.positive_dimensional["witness_var"],
            )
        )
    n = report.n_points
    tau = report.tau_total
    if n == 0:
        cert = SingularityCertificate(
            surface_name,
            report,
            "smooth",
            0,
            0,
            {"rank_le1": "empty", "degenerate": "empty"},
        )
        return cert

    H = hessian(F)
    minors2 = [m for m in minors(H, 2) if not m.is_zero]
    minors3 = [m for m in minors(H, 3) if not m.is_zero]

    rank_le1_empty = True
    degenerate_empty = True
    degenerate_all = True
    for chart in report.charts:
        if chart is None or chart.scheme.degree == 0:
            continue
        ci = chart.chart_index
        if not _stratum_is_empty(chart, minors2, ci):
            rank_le1_empty = False
        if not _stratum_is_empty(chart, minors3, ci):
            degenerate_empty = False
        if not _minors_vanish_on_radical(chart, minors3, ci):
            degenerate_all = False

    strata = {
        "rank_le1": "empty" if rank_le1_empty else "nonempty",
        "degenerate": "empty"
        if degenerate_empty
        else ("all" if degenerate_all else "mixed"),
    }

    if degenerate_empty and tau == n:
        verdict, n1, n2 = "all_A1", n, 0
    elif rank_le1_empty and degenerate_all and tau == 2 * n:
        verdict, n1, n2 = "all_A2", 0, n
    else:
        verdict, n1, n2 = "mixed_or_worse", None, None

    orbits = None
    if action is not None:
        orbits = _orbit_analysis(F, report, action)

    return SingularityCertificate(
        surface_name, report, verdict, n1, n2, strata, orbits=orbits
    )


def _orbit_analysis(F: Poly, report, action):
    """Scheme-level orbit decomposition of the singular points.

    The action's full projective fixed locus is finite and known; every
    non-fixed singular point lies in a free orbit of size 5.
    """
    n = report.n_points
    fixed_sing = []
    for p in action.fixed_points():
        vals = [g.eval(list(p.coords), field=p.field) for g in jacobian(F)]
        if all(p.field.is_zero(v) for v in vals):
            fixed_sing.append(p)
    free_count = n - len(fixed_sing)
    if free_count % 5 != 0:
        raise AssertionError(
            "non-fixed singular points not partitioned into 5-orbits"
        )
    orbits = [{"size": 1, "representative": repr(p)} for p in fixed_sing]
    orbits += [{"size": 5} for _ in range(free_count // 5)]
    return orbits


def classify_at_point(F: Poly, point: ProjPoint):
    """Local classification at one singular point: 'A1', 'A2' or 'other'."""
    ring = F.ring
    field = point.field
    ci = point.chart()
    cring = chart_ring(ring, ci).with_field(field)
    fc_ambient = to_chart(F, ci, chart_ring(ring, ci))
    f = fc_ambient.map_coeffs(field.coerce, cring)
    aff = point.affine()
    shift = {i: cring.var(cring.vars[i]) + cring.from_scalar(aff[i]) for i in range(3)}
    local = f.subs(shift)
    # order-by-order pieces
    quad = _degree_part(local, 2)
    cubic = _degree_part(local, 3)
    if not _degree_part(local, 0).is_zero or not _degree_part(local, 1).is_zero:
        raise ValueError("point is not singular on the surface")
    qmat = _quadratic_matrix(quad, cring)
    rank = linalg.rank(qmat, field)
    if rank == 3:
        return "A1"
    if rank == 2:
        kern = linalg.kernel_basis(qmat, field)
        if len(kern) != 1:
            return "other: quadratic rank defect"
        v = kern[0]
        val = cubic.eval(v, field=field) if not cubic.is_zero else field.zero
        if not field.is_zero(val):
            return "A2"
        return "other: needs higher jet"
    return "other: quadratic rank <= 1"


def _degree_part(p: Poly, d: int) -> Poly:
    return p.ring.from_terms((e, c) for e, c in p.terms if sum(e) == d)


def _quadratic_matrix(quad: Poly, cring: Ring):
    field = cring.field
    n = cring.nvars
    m = [[field.zero] * n for _ in range(n)]
    two_inv = None
    for e, c in quad.terms:
        idx = [i for i, k in enumerate(e) for _ in range(k)]
        i, j = idx[0], idx[1]
        if i == j:
            m[i][i] = field.add(m[i][i], c)
        else:
            if two_inv is None:
                two_inv = field.inv(field.coerce(2))
            half = field.mul(c, two_inv)
            m[i][j] = field.add(m[i][j], half)
            m[j][i] = field.add(m[j][i], half)
    return m


def same_singular_locus(rep1: SingularSchemeReport, rep2: SingularSchemeReport):
    """Do two surfaces have identical reduced singular loci?

    Compares the reduced radical bases chart by chart (deterministic
    reduced GBs are canonical for a fixed order).
    """
    for c1, c2 in zip(rep1.charts, rep2.charts):
        if (c1 is None) != (c2 is None):
            return False
        if c1 is None:
            continue
        if c1.radical.degree != c2.radical.degree:
            return False
        b1 = {str(p) for p in c1.radical.gb.polys}
        b2 = {str(p) for p in c2.radical.gb.polys}
        if b1 != b2:
            return False
    return True
