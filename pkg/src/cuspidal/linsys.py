"""Linear systems of surfaces with imposed (double) points.

Conditions are imposed in two interchangeable ways:

* against a point locus given by radical Groebner bases (one per affine
  chart piece): a double point condition means every partial derivative
  of the unknown surface reduces to zero against the locus -- linear in
  the unknown coefficients and entirely over Q(zeta5), whatever field the
  individual points live in;

* against explicit points (possibly with dynamic-tower coordinates): each
  evaluated condition is expanded over the tower's Q(zeta5)-basis
  (restriction of scalars), one matrix row per basis coordinate.

Also here: the one-parameter cusp-imposing solve (roots b of the gcd of
all order-3 Hessian minor conditions of L1 + b*L2), membership checking
for the published solution of the quartic search scheme, and the
Kummer-type non-existence check on the Van der Geer-Zagier cusps.
"""

from __future__ import annotations

from itertools import combinations_with_replacement

from . import linalg, unipoly
from .extfield import TowerContext
from .groebner import QuotientAlgebra, normal_form
from .modp import roots_in_qz5
from .multipoly import Poly, ProjPoint, QZ5, Ring, minors
from .singcert import to_chart
from .zfive import invariant_basis


def degree_monomials(d, k=None):
    """Column monomials: all degree-d exponents, or the a_k-invariant ones.

    Descending degrevlex, matching invariant_basis ordering.
    """
    if k is not None:
        return invariant_basis(d, k)
    expos = set()
    for combo in combinations_with_replacement(range(4), d):
        e = [0, 0, 0, 0]
        for i in combo:
            e[i] += 1
        expos.add(tuple(e))
    return sorted(
        expos, key=lambda e: (sum(e), tuple(-x for x in reversed(e))), reverse=True
    )


class LinearSystem:
    """Kernel basis of the imposed linear conditions."""

    def __init__(self, degree, action_k, columns, basis, nconditions):
        self.degree = degree
        self.action_k = action_k
        self.columns = tuple(columns)
        self.basis = list(basis)
        self.nconditions = nconditions

    @property
    def dimension(self):
        """Vector-space dimension of the system."""
        return len(self.basis)

    @property
    def projective_dimension(self):
        return len(self.basis) - 1

    def __repr__(self):
        return "LinearSystem(deg=%d, dim=%d)" % (self.degree, self.dimension)

    def to_json(self):
        from .multipoly import print_poly

        return {
            "degree": self.degree,
            "action": self.action_k,
            "dimension": self.dimension,
            "projective_dimension": self.projective_dimension,
            "conditions": self.nconditions,
            "basis": [print_poly(b) for b in self.basis],
        }

    def contains(self, f: Poly) -> bool:
        """Is f a Q(zeta5)-combination of the basis?"""
        if not self.basis:
            return f.is_zero
        ring = self.basis[0].ring
        cols = {m: j for j, m in enumerate(self.columns)}
        mat = []
        rhs = []
        for m in self.columns:
            row = [b.coeff_of(m) for b in self.basis]
            mat.append(row)
            rhs.append(f.coeff_of(m))
        # any monomial of f outside the column span rules membership out
        for e, c in f.terms:
            if e not in cols and not QZ5.is_zero(c):
                return False
        return linalg.solve(mat, rhs, QZ5) is not None


def conditioned_system(d, action_k, loci=(), points=(), ring=None) -> LinearSystem:
    """Degree-d system with double points imposed along loci and/or points.

    loci: iterable of (chart_index, radical ZeroDimScheme) pairs; points:
    iterable of (ProjPoint, order) with order 1 (containment) or 2 (double
    point; F(p) = 0 then follows from Euler's relation).
    """
    if ring is None:
        from .catalog import XYZW as ring
    columns = degree_monomials(d, action_k)
    colindex = {m: j for j, m in enumerate(columns)}
    field = QZ5
    rows = []

    for chart_index, scheme in loci:
        cring = scheme.ring
        alg = QuotientAlgebra(scheme)
        for v in range(ring.nvars):
            vecs = []
            for m in columns:
                if m[v] == 0:
                    vecs.append(None)
                    continue
                mono = Poly(ring, ((m, field.one),)).partial(v)
                mc = to_chart(mono, chart_index, cring)
                vecs.append(alg.nf_coeffs(mc))
            for pos in range(scheme.degree):
                row = []
                for j, vec in enumerate(vecs):
                    row.append(field.zero if vec is None else vec[pos])
                rows.append(row)

    for point, order in points:
        pfield = point.field
        coords = list(point.coords)
        if order == 1:
            vals = [
                Poly(ring, ((m, field.one),)).eval(coords, field=pfield)
                for m in columns
            ]
            rows.extend(_expand_rows(vals, pfield))
        elif order == 2:
            for v in range(ring.nvars):
                vals = []
                for m in columns:
                    mono = Poly(ring, ((m, field.one),)).partial(v)
                    vals.append(mono.eval(coords, field=pfield))
                rows.extend(_expand_rows(vals, pfield))
        else:
            raise ValueError("condition order must be 1 or 2")

    kernel = linalg.kernel_basis(rows, field) if rows else []
    if not rows:
        kernel = [
            [field.one if i == j else field.zero for j in range(len(columns))]
            for i in range(len(columns))
        ]
    basis = []
    for v in kernel:
        basis.append(
            ring.from_terms(
                (m, c) for m, c in zip(columns, v) if not field.is_zero(c)
            )
        )
    return LinearSystem(d, action_k, columns, basis, len(rows))


def _expand_rows(vals, pfield):
    """Restriction of scalars: one Q(zeta5) row per tower basis coordinate."""
    if not isinstance(pfield, TowerContext) or pfield.depth == 0:
        return [list(vals)]
    flat = [pfield.flatten(v) for v in vals]
    n = pfield.degree()
    return [[flat[j][i] for j in range(len(vals))] for i in range(n)]


def check_double_points(basis, loci, ring):
    """Post-hoc check: every basis member has vanishing partials on the loci."""
    for f in basis:
        for chart_index, scheme in loci:
            cring = scheme.ring
            for v in range(ring.nvars):
                g = to_chart(f.partial(v), chart_index, cring)
                if not normal_form(g, scheme.gb).is_zero:
                    return False
    return True


# ---------------------------------------------------------------------------
# cusp imposition: F_b = L1 + b L2


class CuspSolveReport:
    def __init__(self, gcd_coeffs, roots, residual_degree):
        self.gcd_coeffs = gcd_coeffs
        self.roots = roots
        self.residual_degree = residual_degree

    def __repr__(self):
        return "CuspSolveReport(roots=%s, residual_degree=%d)" % (
            [str(QZ5.to_str(r)) for r in self.roots],
            self.residual_degree,
        )


def impose_cusps(L1: Poly, L2: Poly, loci) -> CuspSolveReport:
    """Solve for b making every order-3 Hessian minor of L1 + b L2 vanish
    on the given loci (the double points being already imposed).

    Returns the gcd of all induced univariate conditions in b, its roots in
    Q(zeta5) (linear factors peeled by exact gcd arithmetic; remaining
    rational roots recovered by verified lifting), and the degree of the
    unsolved residual factor (0 when everything is accounted for).
    """
    ring = L1.ring
    ext = Ring(ring.vars + ("b",), ring.order, ring.field)

    def lift(p):
        return ext.from_terms(((e + (0,)), c) for e, c in p.terms)

    b = ext.var("b")
    Fb = lift(L1) + lift(L2) * b
    H = [[Fb.partial(i).partial(j) for j in range(4)] for i in range(4)]
    conds = []  # univariate polynomials in b over Q(zeta5)
    for m in minors(H, 3):
        if m.is_zero:
            continue
        by_power = {}
        for e, c in m.terms:
            by_power.setdefault(e[4], []).append((e[:4], c))
        max_pow = max(by_power)
        coeff_polys = {
            j: ring.from_terms(terms) for j, terms in by_power.items()
        }
        for chart_index, scheme in loci:
            cring = scheme.ring
            alg = QuotientAlgebra(scheme)
            vec_by_pow = {}
            for j, cp in coeff_polys.items():
                vec_by_pow[j] = alg.nf_coeffs(to_chart(cp, chart_index, cring))
            for pos in range(scheme.degree):
                poly_b = [QZ5.zero] * (max_pow + 1)
                for j, vec in vec_by_pow.items():
                    poly_b[j] = vec[pos]
                poly_b = unipoly.trim(poly_b, QZ5)
                if poly_b:
                    conds.append(poly_b)

    if not conds:
        return CuspSolveReport([QZ5.one], [], 0)
    g = conds[0]
    for c in conds[1:]:
        if unipoly.deg(g, QZ5) == 0:
            break
        g = unipoly.gcd_monic(g, c, QZ5)
    g = unipoly.monic(g, QZ5) if g else []
    roots = []
    if unipoly.deg(g, QZ5) == 1:
        roots.append(QZ5.neg(g[0]))
        g = [QZ5.one]
    elif unipoly.deg(g, QZ5) > 1:
        for r in roots_in_qz5(list(g)):
            g2 = unipoly.peel_root(g, r, QZ5)
            if g2 is not None:
                roots.append(r)
                g = g2
    residual = max(unipoly.deg(g, QZ5), 0)
    return CuspSolveReport(g, roots, residual)


def proportional(p: Poly, q: Poly) -> bool:
    """Projective equality of two nonzero polynomials."""
    if p.is_zero or q.is_zero:
        return p.is_zero and q.is_zero
    return p.scale(q.lc()) == q.scale(p.lc())


# ---------------------------------------------------------------------------
# the quartic search scheme: membership verification


class SCMembershipVerdict:
    def __init__(self, groups):
        self.groups = groups

    @property
    def passed(self):
        return all(v == "pass" for v in self.groups.values())

    def to_json(self):
        return dict(self.groups)


def verify_sc_membership(coefficients, rep2: ProjPoint, rep3: ProjPoint, ring=None):
    """Check a proposed solution of the quartic search.

    coefficients: the 7 scalars of F = sum a_i s_i over the degree-4
    invariant monomial basis (descending degrevlex order); rep2 and rep3:
    representatives of the two node orbits besides the orbit of (1:1:1:1).
    """
    if ring is None:
        from .catalog import XYZW as ring
    from .zfive import ActionK

    smons = invariant_basis(4, 0)
    if len(coefficients) != len(smons):
        raise ValueError("need exactly %d coefficients" % len(smons))
    F = ring.from_terms(
        (m, QZ5.coerce(a)) for m, a in zip(smons, coefficients)
    )
    groups = {}
    fixed = ProjPoint([1, 1, 1, 1])

    def partials_vanish(point):
        f = point.field
        return all(
            f.is_zero(F.partial(v).eval(list(point.coords), field=f))
            for v in range(4)
        )

    groups["partials_at_fixed_choice"] = (
        "pass" if partials_vanish(fixed) else "fail"
    )
    groups["partials_at_second_orbit"] = "pass" if partials_vanish(rep2) else "fail"
    groups["partials_at_third_orbit"] = "pass" if partials_vanish(rep3) else "fail"

    # ordinariness at (1:1:1:1): some order-3 Hessian minor is nonzero
    from .multipoly import hessian

    H = hessian(F)
    coords = list(fixed.coords)
    vals = [m.eval(coords) for m in minors(H, 3)]
    groups["ordinariness"] = (
        "pass" if any(not QZ5.is_zero(v) for v in vals) else "fail"
    )

    # orbit separation: the three representatives in pairwise distinct orbits
    act = ActionK(0)
    sep = True
    for a, bpt in ((fixed, rep2), (fixed, rep3), (rep2, rep3)):
        q = bpt
        for _ in range(5):
            if _points_possibly_equal(a, q):
                sep = False
            q = act.on_point(q)
    groups["orbit_separation"] = "pass" if sep else "fail"
    return SCMembershipVerdict(groups)


def _points_possibly_equal(p: ProjPoint, q: ProjPoint) -> bool:
    """Projective equality test across possibly different fields.

    Uses the 2x2 minors of the coordinate matrix; fields must embed into a
    common tower, otherwise points are compared through their Q(zeta5)
    coordinates when both are rational.
    """
    fp, fq = p.field, q.field
    if fp is fq or (not isinstance(fp, TowerContext) and not isinstance(fq, TowerContext)):
        f = fp
        cp, cq = p.coords, q.coords
    elif isinstance(fq, TowerContext) and not isinstance(fp, TowerContext):
        f = fq
        cp = [f.coerce(c) for c in p.coords]
        cq = q.coords
    elif isinstance(fp, TowerContext) and not isinstance(fq, TowerContext):
        f = fp
        cp = p.coords
        cq = [f.coerce(c) for c in q.coords]
    else:
        f = fp
        cp = p.coords
        cq = [f.transport(c) for c in q.coords]
    for i in range(4):
        for j in range(i + 1, 4):
            m = f.sub(f.mul(cp[i], cq[j]), f.mul(cp[j], cq[i]))
            if not f.is_zero(m):
                return False
    return True


# ---------------------------------------------------------------------------
# Kummer-type non-existence on the Van der Geer-Zagier cusps


class KummerReport:
    def __init__(self, dimension, contains_quartic, member_points, verdict):
        self.dimension = dimension
        self.contains_quartic = contains_quartic
        self.member_points = member_points
        self.verdict = verdict

    def to_json(self):
        return {
            "system_dimension": self.dimension,
            "contains_vdgz_quartic": self.contains_quartic,
            "member_singular_points": self.member_points,
            "kummer_member_exists": self.verdict,
        }


def kummer_nonexistence_check(loci, vdgz_quartic: Poly, certifier):
    """Degree-4 system with double points at the 15 VdGZ cusps.

    certifier: callable Poly -> (n_points, verdict) used on the member(s)
    when the system is one-dimensional; a 16-node (Kummer-type) member
    would need n_points == 16.
    """
    sys4 = conditioned_system(4, None, loci=loci)
    contains = sys4.contains(vdgz_quartic)
    member_points = None
    exists = None
    if sys4.dimension == 1:
        n_points, _verdict = certifier(sys4.basis[0])
        member_points = n_points
        exists = n_points == 16
    return sys4, KummerReport(sys4.dimension, contains, member_points, exists)
