"""Curves on the quartic/quintic pair and exact intersection data.

* tropes of the 16-node quartic: planes through six nodes whose
  restriction is a doubled conic (candidates from coplanar 6-subsets,
  prefiltered at a split prime, every survivor certified exactly);
* strict-transform intersection numbers at a cusp from one point
  blow-up: an A2 point has a rank-2 tangent cone; the exceptional curve
  of the blow-up is the corresponding pair of lines, which realize the
  two (-2)-curves of the A2 chain (they meet once; the strict transform
  of the surface is verified smooth along them);
* intersections of two curves away from and over the cusps, as exact
  scheme lengths inside partitioned charts;
* self-intersections on the resolved quintic by adjunction with
  K = O(1) (crepancy of rational double point resolutions):
  C~^2 = 2 p_a(C~) - 2 - deg C.
"""

from __future__ import annotations

import itertools

from . import linalg
from .cyclofield import cyclo_sqrt, ratio
from .groebner import (
    NotZeroDimensional,
    buchberger,
    normal_form,
    zero_dim_analyze,
)
from .modp import CycloModP, split_primes
from .multipoly import Poly, ProjPoint, QZ5, Ring, minors, restrict_to_plane
from .singcert import chart_ring, to_chart


class SquareRootFailure(Exception):
    pass


def poly_square_root(F: Poly):
    """Write F = scalar * c^2 with monic c, or raise SquareRootFailure."""
    if F.is_zero:
        raise SquareRootFailure("zero polynomial")
    field = F.ring.field
    lc = F.lc()
    Fm = F.scale(field.inv(lc))
    lm = F.lm()
    if any(k % 2 for k in lm):
        raise SquareRootFailure("leading monomial is not a square")
    half = tuple(k // 2 for k in lm)
    ring = F.ring
    r = ring.from_terms([(half, field.one)])
    R = Fm - r * r
    two_inv = field.inv(field.coerce(2))
    guard = 0
    while not R.is_zero:
        guard += 1
        if guard > 4 * len(F.terms) + 16:
            raise SquareRootFailure("iteration did not terminate")
        lmR, lcR = R.lt()
        if any(a < b for a, b in zip(lmR, half)):
            raise SquareRootFailure("not a perfect square")
        te = tuple(a - b for a, b in zip(lmR, half))
        r = r + ring.from_terms([(te, field.mul(lcR, two_inv))])
        R = Fm - r * r
    return lc, r


def poly_map(p: Poly, target: Ring, images):
    """Ring map: substitute images[i] (a target Poly) for variable i."""
    out = target.zero
    cache = {}
    for e, c in p.terms:
        term = target.from_scalar(c)
        for i, k in enumerate(e):
            if not k:
                continue
            key = (i, k)
            if key not in cache:
                cache[key] = images[i] ** k
            term = term * cache[key]
        out = out + term
    return out


# ---------------------------------------------------------------------------
# tropes


class Trope:
    """A plane meeting the quartic in a doubled conic."""

    def __init__(self, plane, conic, scalar, node_indices, through_fixed):
        self.plane = plane
        self.conic = conic  # monic; does not involve the solved variable
        self.scalar = scalar
        self.node_indices = tuple(node_indices)
        self.through_fixed = through_fixed
        self.invariant = False

    def __repr__(self):
        return "Trope(%s; nodes %s%s)" % (
            self.plane,
            list(self.node_indices),
            "; through fixed node" if self.through_fixed else "",
        )


class TropeCensus:
    def __init__(self, tropes, fixed_index):
        self.tropes = tropes
        self.fixed_index = fixed_index

    def partition(self):
        """(invariant tropes through the fixed node, other tropes through
        it, tropes away from it)."""
        inv = [t for t in self.tropes if t.through_fixed and t.invariant]
        through = [t for t in self.tropes if t.through_fixed and not t.invariant]
        away = [t for t in self.tropes if not t.through_fixed]
        return inv, through, away


def find_tropes(Q: Poly, nodes, fixed_node: ProjPoint, action=None) -> TropeCensus:
    """All tropes of the nodal quartic Q, from its full rational node list.

    Candidate planes come from coplanar 6-subsets of nodes (exact rank 3
    on the 6x4 coordinate matrix), prefiltered at a split prime; each
    surviving plane is kept iff Q restricts to a perfect square up to one
    scalar.
    """
    n = len(nodes)
    emb = None
    nodes_p = None
    for p in split_primes():
        try:
            emb = CycloModP(p)
            nodes_p = [emb.reduce_vector(nd.coords) for nd in nodes]
            break
        except ZeroDivisionError:
            continue
    candidates = [
        sub
        for sub in itertools.combinations(range(n), 6)
        if emb.matrix_rank([nodes_p[i] for i in sub]) <= 3
    ]
    ring = Q.ring
    planes = []
    seen = set()
    for sub in candidates:
        rows = [list(nodes[i].coords) for i in sub]
        kern = linalg.kernel_basis(rows, QZ5)
        if len(kern) != 1:
            continue
        terms = []
        for j, c in enumerate(kern[0]):
            if not QZ5.is_zero(c):
                e = [0] * ring.nvars
                e[j] = 1
                terms.append((tuple(e), c))
        hpoly = ring.from_terms(terms).monic()
        key = str(hpoly)
        if key not in seen:
            seen.add(key)
            planes.append(hpoly)
    fixed_index = None
    for i, nd in enumerate(nodes):
        if nd == fixed_node:
            fixed_index = i
            break
    tropes = []
    for hpoly in planes:
        incident = [
            i
            for i, nd in enumerate(nodes)
            if QZ5.is_zero(hpoly.eval(list(nd.coords)))
        ]
        if len(incident) != 6:
            continue
        try:
            scalar, conic = poly_square_root(restrict_to_plane(Q, hpoly))
        except SquareRootFailure:
            continue
        tropes.append(
            Trope(hpoly, conic, scalar, incident, fixed_index in incident)
        )
    census = TropeCensus(tropes, fixed_index)
    if action is not None:
        for t in census.tropes:
            moved = action.on_poly(t.plane)
            t.invariant = moved.scale(t.plane.lc()) == t.plane.scale(moved.lc())
    return census


def trope_orbits(tropes, action):
    """Group tropes into orbits of the (order-5) action on planes."""
    remaining = list(tropes)
    orbits = []
    while remaining:
        t = remaining.pop(0)
        orb = [t]
        moved = action.on_poly(t.plane).monic()
        while str(moved) != str(t.plane):
            hit = None
            for s in remaining:
                if str(s.plane) == str(moved):
                    hit = s
                    break
            if hit is None:
                break
            orb.append(hit)
            remaining.remove(hit)
            moved = action.on_poly(hit.plane).monic()
        orbits.append(orb)
    return orbits


# ---------------------------------------------------------------------------
# surface-surface intersection report


class IntersectionReport:
    def __init__(self, conic_containments, degree_expected, degree_counted, excess):
        self.conic_containments = conic_containments
        self.degree_expected = degree_expected
        self.degree_counted = degree_counted
        self.excess = excess

    @property
    def clean(self):
        return (
            all(self.conic_containments)
            and self.degree_expected == self.degree_counted
            and not self.excess
        )

    def to_json(self):
        return {
            "conics_on_both": sum(1 for x in self.conic_containments if x),
            "degree_expected": self.degree_expected,
            "degree_counted": self.degree_counted,
            "excess_components": self.excess,
            "clean": self.clean,
        }


def intersect_surfaces(S: Poly, Q: Poly, conic_curves, seed=20240501):
    """Verify S meets Q exactly at the given conics.

    Checks (i) every conic lies on both surfaces, (ii) degree bookkeeping
    deg S * deg Q = sum of conic degrees, and (iii) a generic plane section
    of V(S, Q) lies on the union of the conic planes (any curve component
    of V(S, Q) meets every plane, so an excess component would be seen).
    """
    import random as _random

    ring = S.ring
    containments = []
    for c in conic_curves:
        gb = buchberger(c.gens, ring=ring)
        containments.append(
            normal_form(S, gb).is_zero and normal_form(Q, gb).is_zero
        )
    expected = S.degree() * Q.degree()
    counted = sum(c.degree for c in conic_curves)
    # generic plane slice
    rng = _random.Random(seed)
    excess = []
    degenerate_slices = 0
    for _ in range(4):
        coeffs = [rng.randint(-7, 7) for _ in range(4)]
        plane = ring.from_terms(
            (
                tuple(1 if j == i else 0 for j in range(4)),
                QZ5.coerce(c),
            )
            for i, c in enumerate(coeffs)
            if c
        )
        if plane.is_zero:
            continue
        gens = [S, Q, plane]
        prod = ring.one
        for c in conic_curves:
            prod = prod * c.gens[0]
        # section scheme in the w-chart partition pieces
        sect_ok = True
        total = 0
        for ci in range(4):
            cring = chart_ring(ring, ci)
            g2 = [to_chart(g, ci, cring) for g in gens]
            var_map = [j for j in range(4) if j != ci]
            for j in range(4):
                if j > ci:
                    g2.append(cring.var(cring.vars[var_map.index(j)]))
            g2 = [g for g in g2 if not g.is_zero]
            gb = buchberger(g2, ring=cring)
            if gb.is_trivial():
                continue
            try:
                scheme = zero_dim_analyze(gb)
            except NotZeroDimensional:
                sect_ok = False
                degenerate_slices += 1
                break
            total += scheme.degree
            from .groebner import radical_zero_dim

            rad = radical_zero_dim(scheme)
            pc = to_chart(prod, ci, cring)
            if not normal_form(pc, rad.gb).is_zero:
                excess.append(
                    {"chart": ring.vars[ci], "witness": "plane-product not in radical"}
                )
        if sect_ok and total == expected:
            break
    if degenerate_slices == 4:
        raise ValueError(
            "surfaces share a component (every plane section is positive-"
            "dimensional): precondition violated"
        )
    return IntersectionReport(containments, expected, counted, excess)


# ---------------------------------------------------------------------------
# curves


class CurveOnSurface:
    """A curve on the quintic given by ambient ideal generators."""

    def __init__(self, name, gens, degree, pa_embedded, double_points=0):
        self.name = name
        self.gens = list(gens)
        self.degree = degree
        self.pa_embedded = pa_embedded
        self.double_points = double_points  # delta = 1 points resolved at cusps

    def transformed(self, action, times=1):
        gens = list(self.gens)
        for _ in range(times % 5):
            gens = [action.on_poly(g) for g in gens]
        return CurveOnSurface(
            "%s.a%d" % (self.name, times % 5),
            gens,
            self.degree,
            self.pa_embedded,
            self.double_points,
        )

    def strict_pa(self):
        return self.pa_embedded - self.double_points

    def resolved_self_intersection(self):
        """C~^2 on the resolved quintic (adjunction, K = O(1) pullback)."""
        return 2 * self.strict_pa() - 2 - self.degree

    def __repr__(self):
        return "CurveOnSurface(%s, deg %d)" % (self.name, self.degree)


def curve_contains_point(curve: CurveOnSurface, p: ProjPoint) -> bool:
    f = p.field
    return all(f.is_zero(g.eval(list(p.coords), field=f)) for g in curve.gens)


def curve_lies_on(curve: CurveOnSurface, F: Poly) -> bool:
    gb = buchberger(curve.gens, ring=F.ring)
    return normal_form(F, gb).is_zero


# ---------------------------------------------------------------------------
# scheme-length helpers


def supported_degree(gens, ring, point_affine, bound):
    """Length of the part of V(gens) supported at one affine point."""
    extra = []
    for i, q in enumerate(point_affine):
        v = ring.var(ring.vars[i]) - ring.from_scalar(q)
        extra.append(v**bound)
    gb = buchberger(list(gens) + extra, ring=ring)
    if gb.is_trivial():
        return 0
    return zero_dim_analyze(gb).degree


def pair_intersection_away_from(curveC, curveD, excluded_points):
    """Total intersection length of two distinct curves outside the
    excluded points (exact; the ambient lengths equal surface intersection
    multiplicities at smooth surface points)."""
    ring = curveC.gens[0].ring
    n = ring.nvars
    total = 0
    for ci in range(n):
        cring = chart_ring(ring, ci)
        gens = [to_chart(g, ci, cring) for g in curveC.gens + curveD.gens]
        var_map = [j for j in range(n) if j != ci]
        for j in range(n):
            if j > ci:
                gens.append(cring.var(cring.vars[var_map.index(j)]))
        gens = [g for g in gens if not g.is_zero]
        gb = buchberger(gens, ring=cring)
        if gb.is_trivial():
            continue
        scheme = zero_dim_analyze(gb)
        deg = scheme.degree
        if deg == 0:
            continue
        for p in excluded_points:
            if p.chart() != ci:
                continue
            aff = list(p.affine())
            if not all(QZ5.is_zero(g.eval(aff)) for g in gb.polys):
                continue
            deg -= supported_degree(gb.polys, cring, aff, scheme.degree)
        total += deg
    return total


# ---------------------------------------------------------------------------
# cusp resolution


class ResolutionError(Exception):
    pass


class CuspResolution:
    """One point blow-up at an A2 cusp, with curve intersection data.

    The exceptional curve is the pair of lines {l1 = 0}, {l2 = 0} in the
    exceptional plane (the factored rank-2 tangent cone); these are the
    two (-2)-curves of the A2 chain, meeting once, and the blown-up
    surface is verified smooth along them.  For each registered curve the
    row (m1, m2) holds the intersection numbers of its strict transform
    with the two lines.
    """

    def __init__(self, cusp, chart_index, lines, transcripts):
        self.cusp = cusp
        self.chart_index = chart_index
        self.lines = lines
        self.transcripts = transcripts
        self.curve_rows = {}
        self.pair_over_cusp = {}
        self.curve_smooth = {}
        self.smooth_verified = False

    def correction(self, name):
        """(a, b) with pi* C = C~ + a A + b A' as Q-divisors."""
        m1, m2 = self.curve_rows[name]
        return (ratio(2 * m1 + m2, 3), ratio(m1 + 2 * m2, 3))

    def swap_labels(self):
        """Exchange the two exceptional lines (used by the lattice search)."""
        self.lines = (self.lines[1], self.lines[0])
        self.curve_rows = {k: (b, a) for k, (a, b) in self.curve_rows.items()}


def _degree_part(p: Poly, d: int) -> Poly:
    return p.ring.from_terms((e, c) for e, c in p.terms if sum(e) == d)


def _local_surface(S: Poly, cusp: ProjPoint):
    ring = S.ring
    ci = cusp.chart()
    cring = chart_ring(ring, ci)
    f = to_chart(S, ci, cring)
    aff = cusp.affine()
    shift = {
        i: cring.var(cring.vars[i]) + cring.from_scalar(aff[i]) for i in range(3)
    }
    return f.subs(shift), cring, ci, shift


def _quadratic_matrix(quad: Poly, cring: Ring):
    field = cring.field
    m = [[field.zero] * 3 for _ in range(3)]
    two_inv = field.inv(field.coerce(2))
    for e, c in quad.terms:
        idx = [i for i, k in enumerate(e) for _ in range(k)]
        i, j = idx
        if i == j:
            m[i][i] = field.add(m[i][i], c)
        else:
            half = field.mul(c, two_inv)
            m[i][j] = field.add(m[i][j], half)
            m[j][i] = field.add(m[j][i], half)
    return m


def _field_sqrt(x, field):
    if not hasattr(field, "levels"):
        return cyclo_sqrt(x)
    flat = field.flatten(x)
    if any(not c.is_zero for c in flat[1:]):
        return None
    r = cyclo_sqrt(flat[0])
    return None if r is None else field.coerce(r)


def _matrix_inverse(m, field):
    n = len(m)
    aug = [
        list(m[i]) + [field.one if j == i else field.zero for j in range(n)]
        for i in range(n)
    ]
    red, piv = linalg.rref(aug, field)
    if piv != list(range(n)):
        raise ValueError("matrix not invertible")
    return [row[n:] for row in red]


def tangent_cone_lines(flocal: Poly, cring: Ring):
    """Factor the rank-2 quadratic part into two monic linear forms.

    Returns (l1, l2, kernel_vector); deterministic labelling (sorted by
    string form); raises ResolutionError when the rank is not 2 or the
    splitting needs a square root outside the working field.
    """
    field = cring.field
    if _degree_part(flocal, 0).terms or _degree_part(flocal, 1).terms:
        raise ResolutionError("point is not singular on the surface")
    quad = _degree_part(flocal, 2)
    m = _quadratic_matrix(quad, cring)
    if linalg.rank(m, field) != 2:
        raise ResolutionError("tangent cone rank is not 2 (not an A2 datum)")
    kern = linalg.kernel_basis(m, field)[0]
    comp = []
    for i in range(3):
        v = [field.zero] * 3
        v[i] = field.one
        trial = [list(u) for u in comp] + [v, list(kern)]
        if linalg.rank(trial, field) == len(trial):
            comp.append(v)
        if len(comp) == 2:
            break
    v1, v2 = comp

    def q_bilin(u, v):
        out = field.zero
        for i in range(3):
            for j in range(3):
                out = field.add(out, field.mul(field.mul(u[i], m[i][j]), v[j]))
        return out

    a = q_bilin(v1, v1)
    b = field.mul(field.coerce(2), q_bilin(v1, v2))
    c = q_bilin(v2, v2)
    Minv = _matrix_inverse([[v1[i], v2[i], kern[i]] for i in range(3)], field)

    def linear_poly(coeffs):
        return cring.from_terms(
            (tuple(1 if j == i else 0 for j in range(3)), cc)
            for i, cc in enumerate(coeffs)
            if not field.is_zero(cc)
        )

    s_poly = linear_poly(Minv[0])
    t_poly = linear_poly(Minv[1])
    if field.is_zero(a) and field.is_zero(c):
        l1 = s_poly.scale(b)
        l2 = t_poly
    elif field.is_zero(a):
        l1 = t_poly
        l2 = s_poly.scale(b) + t_poly.scale(c)
    else:
        disc = field.sub(field.mul(b, b), field.mul(field.coerce(4), field.mul(a, c)))
        delta = _field_sqrt(disc, field)
        if delta is None:
            raise ResolutionError(
                "tangent cone splits only over a quadratic extension"
            )
        inv2a = field.inv(field.mul(field.coerce(2), a))
        r1 = field.mul(field.sub(field.neg(b), delta), inv2a)
        r2 = field.mul(field.add(field.neg(b), delta), inv2a)
        l1 = (s_poly - t_poly.scale(r1)).scale(a)
        l2 = s_poly - t_poly.scale(r2)
    if l1 * l2 != quad:
        raise ResolutionError("tangent cone factorization failed verification")
    l1, l2 = sorted((l1.monic(), l2.monic()), key=str)
    return l1, l2, kern


def blow_up_charts(cring: Ring):
    """Point blow-up substitutions: chart m maps u_m -> w, u_i -> w v_i.

    Chart ring variables: (v_* for the kept directions, in order) + (w_,).
    """
    out = []
    for mchart in range(3):
        names = tuple(
            "v_%s" % cring.vars[j] for j in range(3) if j != mchart
        ) + ("w_",)
        bring = Ring(names, cring.order, cring.field)
        vs = bring.gens()
        w = vs[-1]
        images = []
        vi = 0
        for j in range(3):
            if j == mchart:
                images.append(w)
            else:
                images.append(w * vs[vi])
                vi += 1
        out.append((mchart, bring, images))
    return out


def strict_transform(p: Poly, bring: Ring, images):
    """Pull p through the blow-up and divide by the largest power of w."""
    q = poly_map(p, bring, images)
    if q.is_zero:
        return q, 0
    widx = bring.nvars - 1
    mult = min(e[widx] for e, _ in q.terms)
    if mult:
        q = bring.from_terms(
            (e[:widx] + (e[widx] - mult,), c) for e, c in q.terms
        )
    return q, mult


def _partition_extras(bring: Ring, mchart: int):
    """Slice variables so each exceptional point is counted in one chart:
    chart 2 takes all its points, chart 1 those with V_2 = 0, chart 0 those
    with V_1 = V_2 = 0."""
    if mchart == 2:
        return []
    if mchart == 1:
        return [bring.var(bring.vars[1])]  # v for the ambient direction 2
    return [bring.var(bring.vars[0]), bring.var(bring.vars[1])]


def _line_in_chart(line_coeffs, mchart, bring, field):
    terms = []
    const = field.zero
    vi = 0
    for j in range(3):
        if j == mchart:
            const = line_coeffs[j]
        else:
            if not field.is_zero(line_coeffs[j]):
                e = [0, 0, 0]
                e[vi] = 1
                terms.append((tuple(e), line_coeffs[j]))
            vi += 1
    p = bring.from_terms(terms)
    if not field.is_zero(const):
        p = p + bring.from_scalar(const)
    return p


def _exceptional_supported_length(gens, bring, mchart):
    """Length of V(gens) supported on the w = 0 partition slice."""
    gens = [g for g in gens if not g.is_zero]
    gb0 = buchberger(gens, ring=bring)
    if gb0.is_trivial():
        return 0
    try:
        total = zero_dim_analyze(gb0).degree
    except NotZeroDimensional:
        raise ResolutionError("strict transforms share a component over the cusp")
    if total == 0:
        return 0
    N = total
    slice_gens = [bring.var("w_") ** N] + [
        e**N for e in _partition_extras(bring, mchart)
    ]
    gb = buchberger(gens + slice_gens, ring=bring)
    if gb.is_trivial():
        return 0
    return zero_dim_analyze(gb).degree


def resolve_cusp(S: Poly, cusp: ProjPoint, curves) -> CuspResolution:
    """Blow up one certified A2 cusp and record all curve data there."""
    flocal, cring, ci, _shift = _local_surface(S, cusp)
    field = cring.field
    l1, l2, kern = tangent_cone_lines(flocal, cring)
    cubic = _degree_part(flocal, 3)
    if field.is_zero(cubic.eval(list(kern), field=field)):
        raise ResolutionError(
            "not resolved by the point blow-up (cubic vanishes on the kernel "
            "line); contradicts the A2 certificate"
        )
    unit_exp = lambda i: tuple(1 if j == i else 0 for j in range(3))
    l1c = [l1.coeff_of(unit_exp(i)) for i in range(3)]
    l2c = [l2.coeff_of(unit_exp(i)) for i in range(3)]

    charts = blow_up_charts(cring)
    strict_by_chart = []
    transcripts = []
    for mchart, bring, images in charts:
        fs, mult = strict_transform(flocal, bring, images)
        if mult != 2:
            raise ResolutionError("surface multiplicity at the cusp is not 2")
        strict_by_chart.append((mchart, bring, images, fs))
        transcripts.append(
            {
                "chart": mchart,
                "substitution": {
                    cring.vars[j]: str(images[j]) for j in range(3)
                },
                "strict_transform": str(fs),
            }
        )

    # smoothness of the blown-up surface along the exceptional fiber
    for mchart, bring, images, fs in strict_by_chart:
        gens = [fs] + [fs.partial(i) for i in range(bring.nvars)]
        gens.append(bring.var("w_"))
        gb = buchberger([g for g in gens if not g.is_zero], ring=bring)
        if not gb.is_trivial():
            raise ResolutionError(
                "strict transform singular along the exceptional locus"
            )

    res = CuspResolution(cusp, ci, (l1c, l2c), transcripts)
    res.smooth_verified = True

    aff = cusp.affine()
    shift = {
        i: cring.var(cring.vars[i]) + cring.from_scalar(aff[i]) for i in range(3)
    }

    strict_gens = {}
    incident = []
    for curve in curves:
        loc = [to_chart(g, ci, cring).subs(shift) for g in curve.gens]
        loc = [g for g in loc if not g.is_zero]
        if any(not field.is_zero(g.constant_value()) for g in loc):
            res.curve_rows[curve.name] = (0, 0)
            continue
        incident.append(curve)
        per_chart = []
        for mchart, bring, images, fs in strict_by_chart:
            sg = []
            for g in loc:
                gs, _ = strict_transform(g, bring, images)
                if not gs.is_zero:
                    sg.append(gs)
            per_chart.append((mchart, bring, sg))
        strict_gens[curve.name] = per_chart

    for curve in incident:
        row = []
        for line_coeffs in res.lines:
            total = 0
            for mchart, bring, sg in strict_gens[curve.name]:
                lpoly = _line_in_chart(line_coeffs, mchart, bring, field)
                gens = list(sg) + [bring.var("w_"), lpoly]
                gens += _partition_extras(bring, mchart)
                gens = [g for g in gens if not g.is_zero]
                gb = buchberger(gens, ring=bring)
                if gb.is_trivial():
                    continue
                total += zero_dim_analyze(gb).degree
            row.append(total)
        res.curve_rows[curve.name] = tuple(row)
        res.curve_smooth[curve.name] = _curve_smooth_over_exceptional(
            strict_gens[curve.name]
        )

    for a in range(len(incident)):
        for b in range(a + 1, len(incident)):
            cu, cv = incident[a], incident[b]
            length = 0
            for pos in range(3):
                mchart, bring, sg_u = strict_gens[cu.name][pos]
                _, _, sg_v = strict_gens[cv.name][pos]
                length += _exceptional_supported_length(
                    list(sg_u) + list(sg_v), bring, mchart
                )
            res.pair_over_cusp[(cu.name, cv.name)] = length
            res.pair_over_cusp[(cv.name, cu.name)] = length
    return res


def _curve_smooth_over_exceptional(per_chart):
    """Jacobian criterion for the strict-transform curve on the w = 0 fiber."""
    for mchart, bring, sg in per_chart:
        gens = [g for g in sg if not g.is_zero]
        if len(gens) < 2:
            continue
        jac = [[g.partial(i) for i in range(bring.nvars)] for g in gens]
        mins = [m for m in minors(jac, 2) if not m.is_zero]
        probe = gens + mins + [bring.var("w_")] + _partition_extras(bring, mchart)
        gb = buchberger([g for g in probe if not g.is_zero], ring=bring)
        if not gb.is_trivial():
            return False
    return True


def curve_singular_points(curve: CurveOnSurface):
    """Singular points of the curve (rank-deficiency of the Jacobian),
    returned as a per-chart-piece degree count with the radical loci."""
    ring = curve.gens[0].ring
    n = ring.nvars
    jac = [[g.partial(i) for i in range(n)] for g in curve.gens]
    mins = [m for m in minors(jac, min(len(curve.gens), n - 2)) if not m.is_zero]
    out = []
    for ci in range(n):
        cring = chart_ring(ring, ci)
        gens = [to_chart(g, ci, cring) for g in curve.gens + mins]
        var_map = [j for j in range(n) if j != ci]
        for j in range(n):
            if j > ci:
                gens.append(cring.var(cring.vars[var_map.index(j)]))
        gens = [g for g in gens if not g.is_zero]
        gb = buchberger(gens, ring=cring)
        if gb.is_trivial():
            continue
        scheme = zero_dim_analyze(gb)
        from .groebner import radical_zero_dim

        rad = radical_zero_dim(scheme)
        if rad.degree:
            out.append((ci, rad))
    return out
