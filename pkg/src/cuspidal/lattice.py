"""Intersection lattice on the Godeaux quotient and the 3-divisibility
certificate.

The nine classes are A1, A1', A2, A2', A3, A3' (exceptional (-2)-curves
over the three cusp orbits) and T1, T2, T3 (curve-orbit classes).  The
quotient intersection numbers are orbit sums divided by 5 (the action is
free); the A-block is three disjoint [[-2,1],[1,-2]] blocks by
construction from certified A2 resolutions.

The certificate searches the 2^3 per-cusp label swaps (and the T1/T2
swap) for a labelling in which the primitive nullspace generator reduces
mod 3 to the pattern (2,1) on every cusp pair and 0 on the T classes;
with the recorded five-torsion assumption t = 6t this rewrites the
numerically trivial combination as Sum(2 A_i + A_i') = 3L with
L = 2t - M for an explicit integral divisor M.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product

LABELS = ("A1", "A1'", "A2", "A2'", "A3", "A3'", "T1", "T2", "T3")

# recorded classification inputs, never recomputed here
ASSUMPTIONS = {
    "b2_of_quotient": 9,
    "q_of_quotient": 0,
    "torsion_group": "Z/5",
}

PUBLISHED_MATRIX = [
    [-2, 1, 0, 0, 0, 0, 1, 1, 2],
    [1, -2, 0, 0, 0, 0, 0, 2, 2],
    [0, 0, -2, 1, 0, 0, 0, 2, 1],
    [0, 0, 1, -2, 0, 0, 2, 0, 1],
    [0, 0, 0, 0, -2, 1, 1, 1, 2],
    [0, 0, 0, 0, 1, -2, 2, 0, 2],
    [1, 0, 0, 2, 1, 2, -4, 0, 0],
    [1, 2, 2, 0, 1, 0, 0, -4, 0],
    [2, 2, 1, 1, 2, 2, 0, 0, -1],
]

PUBLISHED_NULLSPACE = (2, 4, 2, -2, -2, -4, -3, 3, 0)


class IntersectionLattice:
    def __init__(self, matrix, labels=LABELS, assumptions=None):
        self.labels = tuple(labels)
        self.matrix = [list(map(int, row)) for row in matrix]
        self.assumptions = dict(assumptions or ASSUMPTIONS)
        n = len(self.matrix)
        for row in self.matrix:
            if len(row) != n:
                raise ValueError("matrix must be square")
        for i in range(n):
            for j in range(n):
                if self.matrix[i][j] != self.matrix[j][i]:
                    raise ValueError("matrix must be symmetric")

    def determinant(self):
        return det_int(self.matrix)

    def to_json(self):
        return {
            "labels": list(self.labels),
            "matrix": self.matrix,
            "determinant": self.determinant(),
            "assumptions": self.assumptions,
        }

    def relabelled(self, cusp_permutation, per_cusp_swaps, t_swap):
        """The same lattice presented with cusps permuted/swapped."""
        idx = []
        for bi in range(3):
            src = cusp_permutation[bi]
            pair = [2 * src, 2 * src + 1]
            if per_cusp_swaps[bi]:
                pair.reverse()
            idx.extend(pair)
        tpair = [6, 7]
        if t_swap:
            tpair.reverse()
        idx.extend(tpair)
        idx.append(8)
        m = [[self.matrix[idx[i]][idx[j]] for j in range(9)] for i in range(9)]
        return IntersectionLattice(m, self.labels, self.assumptions)


def det_int(m):
    """Exact determinant of an integer matrix (fraction-free Bareiss)."""
    n = len(m)
    a = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][k]), None)
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


def nullspace_int(m):
    """Primitive integer basis of the right nullspace, deterministic.

    Gaussian elimination over Q followed by denominator clearing and
    content removal; sign convention: first nonzero entry positive.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [[Fraction(x) for x in row] for row in m]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][c]
        a[r] = [x / inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    basis = []
    free = [c for c in range(cols) if c not in pivots]
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -a[i][fc]
        den = 1
        for x in v:
            den = den * x.denominator // _gcd(den, x.denominator)
        w = [int(x * den) for x in v]
        g = 0
        for x in w:
            g = _gcd(g, abs(x))
        if g > 1:
            w = [x // g for x in w]
        lead = next((x for x in w if x), 1)
        if lead < 0:
            w = [-x for x in w]
        basis.append(w)
    return basis


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


class DivisibilityCertificate:
    """The 3-divisibility relation extracted from the nullspace vector."""

    def __init__(self, vector, swaps, t_swap, mod3, M, assumptions):
        self.vector = tuple(vector)
        self.swaps = tuple(swaps)  # per-cusp label swaps applied
        self.t_swap = t_swap
        self.mod3 = tuple(mod3)
        self.M = tuple(M)  # integral divisor coefficients: L = 2t - M
        self.assumptions = dict(assumptions)

    def relation_text(self):
        """The divisibility relation in the lattice's own labels (the mod-3
        pattern is (2,1) per cusp after the recorded swaps)."""
        parts = []
        for i in range(3):
            a, ap = "A%d" % (i + 1), "A%d'" % (i + 1)
            if self.swaps[i]:
                parts.append("%s + 2*%s" % (a, ap))
            else:
                parts.append("2*%s + %s" % (a, ap))
        return " + ".join(parts) + " == 3*L"

    def transcript(self):
        labels = _swapped_labels(self.swaps, self.t_swap)
        terms = " + ".join(
            "%d*%s" % (c, l) for c, l in zip(self.vector, labels) if c
        ).replace("+ -", "- ")
        lines = [
            "nullspace relation (numerically trivial combination):",
            "  D := %s" % terms,
            "assumptions: b2 = %(b2_of_quotient)d, q = %(q_of_quotient)d,"
            " torsion = %(torsion_group)s" % self.assumptions,
            "q = 0 makes numerical triviality a torsion relation: D == t,"
            " a 5-torsion class",
            "mod 3, after the label swaps %s, D reduces to the cusp pattern"
            " (2,1) on every A-pair and 0 on T-classes" % (self.swaps,),
            "with P := sum(2*A_i + A_i') and M := (D - P)/3 integral:",
            "  P == D - 3*M == t - 3*M == 6*t - 3*M == 3*(2*t - M)",
            "hence P == 3*L with L := 2*t - M:",
            "  " + self.relation_text(),
        ]
        return "\n".join(lines)

    def to_json(self):
        return {
            "nullspace_vector": list(self.vector),
            "per_cusp_swaps": list(self.swaps),
            "t1_t2_swap": self.t_swap,
            "mod3_pattern": list(self.mod3),
            "integral_divisor_M": list(self.M),
            "relation": self.relation_text(),
            "assumptions": self.assumptions,
        }


def _swapped_labels(swaps, t_swap):
    labels = list(LABELS)
    for i, s in enumerate(swaps):
        if s:
            labels[2 * i], labels[2 * i + 1] = labels[2 * i + 1], labels[2 * i]
    if t_swap:
        labels[6], labels[7] = labels[7], labels[6]
    return labels


class NoDivisibilityPattern(Exception):
    pass


def divisibility_certificate(lattice: IntersectionLattice, v) -> DivisibilityCertificate:
    """Search label swaps making v mod 3 match the (2,1)-per-cusp pattern."""
    v = list(v)
    if any(x for x in mat_vec(lattice.matrix, v)):
        raise ValueError("vector is not in the nullspace")
    if lattice.determinant() != 0:
        raise ValueError("lattice determinant is nonzero")
    for t_swap in (False, True):
        for swaps in product((0, 1), repeat=3):
            w = _apply_swaps(v, swaps, t_swap)
            mod3 = [x % 3 for x in w]
            if all(mod3[2 * i] == 2 and mod3[2 * i + 1] == 1 for i in range(3)) and all(
                mod3[j] == 0 for j in (6, 7, 8)
            ):
                pattern = [2, 1, 2, 1, 2, 1, 0, 0, 0]
                M = [(a - b) // 3 for a, b in zip(w, pattern)]
                return DivisibilityCertificate(
                    w, swaps, t_swap, mod3, M, lattice.assumptions
                )
    raise NoDivisibilityPattern(
        "no mod-3 labelling produces the (2,1) cusp pattern"
    )


def find_divisibility_vector(lat: IntersectionLattice, basis):
    """A primitive nullspace vector admitting the mod-3 pattern.

    Scans small integer combinations of the basis (content-reduced, sign
    normalized, minimal L1 norm first) and returns (vector, certificate).
    """
    if not basis:
        raise NoDivisibilityPattern("nullspace is trivial")
    cands = []
    seen = set()
    rng = range(-2, 3)
    for coeffs in product(rng, repeat=len(basis)):
        if not any(coeffs):
            continue
        v = [0] * len(basis[0])
        for c, b in zip(coeffs, basis):
            if c:
                for i, x in enumerate(b):
                    v[i] += c * x
        g = 0
        for x in v:
            g = _gcd(g, abs(x))
        if g == 0:
            continue
        if g > 1:
            v = [x // g for x in v]
        lead = next((x for x in v if x), 1)
        if lead < 0:
            v = [-x for x in v]
        key = tuple(v)
        if key in seen:
            continue
        seen.add(key)
        cands.append(v)
    cands.sort(key=lambda v: (sum(abs(x) for x in v), v))
    for v in cands:
        try:
            cert = divisibility_certificate(lat, v)
            return v, cert
        except NoDivisibilityPattern:
            continue
        except ValueError:
            continue
    raise NoDivisibilityPattern(
        "no nullspace combination matches the (2,1) cusp pattern"
    )


def _apply_swaps(v, swaps, t_swap):
    w = list(v)
    for i, s in enumerate(swaps):
        if s:
            w[2 * i], w[2 * i + 1] = w[2 * i + 1], w[2 * i]
    if t_swap:
        w[6], w[7] = w[7], w[6]
    return w


def mat_vec(m, v):
    return [sum(a * b for a, b in zip(row, v)) for row in m]


def match_published(matrix, published=PUBLISHED_MATRIX, skip_entries=()):
    """Find a relabelling carrying matrix onto the published display.

    Searched: permutations of the three cusp blocks, per-cusp swaps, and
    the T1/T2 exchange.  skip_entries: positions (i, j) of the published
    display excluded from the comparison.  Returns a dict with the
    relabelling and the list of mismatches at skipped positions, or None.
    """
    n = 9
    skip = set(skip_entries)
    for perm in permutations(range(3)):
        for swaps in product((0, 1), repeat=3):
            for t_swap in (False, True):
                idx = []
                for bi in range(3):
                    src = perm[bi]
                    pair = [2 * src, 2 * src + 1]
                    if swaps[bi]:
                        pair.reverse()
                    idx.extend(pair)
                tpair = [6, 7]
                if t_swap:
                    tpair.reverse()
                idx.extend(tpair)
                idx.append(8)
                ok = True
                for i in range(n):
                    for j in range(n):
                        if (i, j) in skip:
                            continue
                        if matrix[idx[i]][idx[j]] != published[i][j]:
                            ok = False
                            break
                    if not ok:
                        break
                if ok:
                    mismatches = [
                        {
                            "position": [i, j],
                            "computed": matrix[idx[i]][idx[j]],
                            "published": published[i][j],
                        }
                        for (i, j) in sorted(skip)
                        if matrix[idx[i]][idx[j]] != published[i][j]
                    ]
                    return {
                        "cusp_permutation": list(perm),
                        "per_cusp_swaps": list(swaps),
                        "t1_t2_swap": t_swap,
                        "skipped_mismatches": mismatches,
                    }
    return None


def assemble(a_rows, t_pair_totals, t_self, labels=LABELS) -> IntersectionLattice:
    """Build the 9x9 quotient lattice.

    a_rows: per cusp orbit i (0..2), per T family j (0..2), the pair
    (m1_sum, m2_sum) of exceptional-line intersections summed over the
    T-family members; t_pair_totals: dict (i, j) -> integer for i < j;
    t_self: list of the three T self-intersections on the quotient.
    """
    m = [[0] * 9 for _ in range(9)]
    for i in range(3):
        m[2 * i][2 * i] = -2
        m[2 * i + 1][2 * i + 1] = -2
        m[2 * i][2 * i + 1] = 1
        m[2 * i + 1][2 * i] = 1
    for i in range(3):
        for j in range(3):
            m1, m2 = a_rows[i][j]
            m[2 * i][6 + j] = m1
            m[6 + j][2 * i] = m1
            m[2 * i + 1][6 + j] = m2
            m[6 + j][2 * i + 1] = m2
    for (i, j), val in t_pair_totals.items():
        m[6 + i][6 + j] = val
        m[6 + j][6 + i] = val
    for j in range(3):
        m[6 + j][6 + j] = t_self[j]
    return IntersectionLattice(m, labels)
