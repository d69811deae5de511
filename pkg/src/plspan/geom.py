"""Exact rational geometry kernel.

Everything downstream (projections, surface builds, embeddedness
verification) makes combinatorial decisions from signs and containment
tests computed here.  No floating point enters any decision path: all
coordinates are rationals with arbitrary-precision integer numerator and
denominator, and all predicates are exact.

The scalar type is gmpy2.mpq when available (about 5x faster on the big
denominators that accumulate through the pipeline), falling back to
fractions.Fraction.  Both are normalized, hashable and interoperate with
Python ints.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

try:
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    Rat = Fraction

RatLike = Union[int, str, Fraction]

ZERO = Rat(0)
ONE = Rat(1)


def rat(x: RatLike) -> Rat:
    """Coerce ints, Fractions, 'p/q' strings and exact decimal strings.

    Decimal strings are converted exactly ('0.25' -> 1/4), never through
    a float.  Fractions go through the two-argument constructor: a
    Fraction built from a foreign Rational can carry non-int components,
    which the one-argument gmpy2 conversion rejects.
    """
    if isinstance(x, str):
        x = Fraction(x)
    if isinstance(x, Fraction):
        return Rat(x.numerator, x.denominator)
    return Rat(x)


def rat_str(x) -> str:
    """Canonical text form: 'p/q', or just 'p' for integers."""
    return str(rat(x))


def sign(x) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


class Point:
    """Immutable point of R^d with exact rational coordinates."""

    __slots__ = ("coords",)

    def __init__(self, coords: Iterable):
        self.coords = tuple(rat(c) for c in coords)

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __getitem__(self, i: int):
        return self.coords[i]

    def __iter__(self):
        return iter(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __eq__(self, other) -> bool:
        return isinstance(other, Point) and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __add__(self, other: "Point") -> "Point":
        return Point(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other: "Point") -> "Point":
        return Point(a - b for a, b in zip(self.coords, other.coords))

    def scale(self, k) -> "Point":
        k = rat(k)
        return Point(k * a for a in self.coords)

    def __repr__(self) -> str:
        return "Point(%s)" % (", ".join(rat_str(c) for c in self.coords))


def lex_less(a: Point, b: Point) -> bool:
    """Lexicographic coordinate order; used for deterministic tie-breaks."""
    return a.coords < b.coords


class AffineMap:
    """x -> M x + t with an exactly invertible rational matrix M."""

    __slots__ = ("matrix", "shift")

    def __init__(self, matrix: Sequence[Sequence], shift: Iterable):
        self.matrix = tuple(tuple(rat(e) for e in row) for row in matrix)
        self.shift = tuple(rat(e) for e in shift)
        n = len(self.matrix)
        if any(len(row) != n for row in self.matrix) or len(self.shift) != n:
            raise ValueError("affine map must be square with matching shift")

    @property
    def dim(self) -> int:
        return len(self.shift)

    @staticmethod
    def identity(dim: int) -> "AffineMap":
        return AffineMap([[ONE if i == j else ZERO for j in range(dim)]
                          for i in range(dim)], [ZERO] * dim)

    @staticmethod
    def shear_last_into(dim: int, slopes: Sequence) -> "AffineMap":
        """Add slopes[i] * x_last to each earlier coordinate.

        Unit determinant, so always invertible; this is how projection
        directions are made generic without leaving the rationals.
        """
        if len(slopes) != dim - 1:
            raise ValueError("need dim-1 slopes")
        m = [[ONE if i == j else ZERO for j in range(dim)] for i in range(dim)]
        for i, s in enumerate(slopes):
            m[i][dim - 1] = rat(s)
        return AffineMap(m, [ZERO] * dim)

    @staticmethod
    def translation(shift: Iterable) -> "AffineMap":
        shift = tuple(shift)
        return AffineMap(AffineMap.identity(len(shift)).matrix, shift)

    def apply(self, p: Point) -> Point:
        if p.dim != self.dim:
            raise ValueError("dimension mismatch")
        return Point(sum(row[j] * p.coords[j] for j in range(self.dim)) + s
                     for row, s in zip(self.matrix, self.shift))

    def compose(self, inner: "AffineMap") -> "AffineMap":
        """self after inner: x -> self(inner(x))."""
        n = self.dim
        m = [[sum(self.matrix[i][k] * inner.matrix[k][j] for k in range(n))
              for j in range(n)] for i in range(n)]
        t = [sum(self.matrix[i][k] * inner.shift[k] for k in range(n))
             + self.shift[i] for i in range(n)]
        return AffineMap(m, t)

    def inverse(self) -> "AffineMap":
        n = self.dim
        aug = [list(self.matrix[i]) + [ONE if j == i else ZERO
                                       for j in range(n)]
               for i in range(n)]
        red, pivots = rref(aug)
        if len(pivots) != n or pivots != list(range(n)):
            raise ValueError("matrix is singular")
        inv = [row[n:] for row in red]
        t = [-sum(inv[i][k] * self.shift[k] for k in range(n))
             for i in range(n)]
        return AffineMap(inv, t)


def apply_affine(m: AffineMap, p: Point) -> Point:
    return m.apply(p)


# ---------------------------------------------------------------------------
# exact linear algebra

def rref(rows: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form over the rationals.

    Returns (reduced rows, pivot column indices).  Input is not mutated.
    """
    mat = [list(map(rat, row)) for row in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(mat)):
            if mat[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = ONE / mat[r][c]
        mat[r] = [e * inv for e in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat, pivots


def solve_unique(a: Sequence[Sequence], b: Sequence) -> Optional[list]:
    """Solve A x = b when the solution is unique; None if inconsistent
    or underdetermined."""
    rows = [list(row) + [bv] for row, bv in zip(a, b)]
    ncols = len(a[0]) if a else 0
    red, pivots = rref(rows)
    if ncols in pivots:
        return None  # inconsistent: pivot in augmented column
    if len(pivots) != ncols:
        return None
    x = [ZERO] * ncols
    for i, c in enumerate(pivots):
        x[c] = red[i][ncols]
    return x


def matrix_rank(rows: Sequence[Sequence]) -> int:
    _, pivots = rref(rows)
    return len(pivots)


def affine_rank(points: Sequence[Point]) -> int:
    """Dimension of the affine hull spanned by the points."""
    if not points:
        return -1
    base = points[0]
    dirs = [list((p - base).coords) for p in points[1:]]
    return matrix_rank(dirs)


def nullspace(rows: Sequence[Sequence]) -> list[list]:
    """Basis of {x : A x = 0} over the rationals."""
    if not rows:
        return []
    ncols = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for i, c in enumerate(pivots):
            v[c] = -red[i][f]
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# planar predicates

def orient2d(a: Point, b: Point, c: Point) -> int:
    """Sign of the signed area of triangle abc: +1 ccw, -1 cw, 0 collinear."""
    return sign((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))


def orient3d(a: Point, b: Point, c: Point, d: Point) -> int:
    """Sign of det[b-a; c-a; d-a]; 0 iff the four points are coplanar."""
    u = b - a
    v = c - a
    w = d - a
    det = (u[0] * (v[1] * w[2] - v[2] * w[1])
           - u[1] * (v[0] * w[2] - v[2] * w[0])
           + u[2] * (v[0] * w[1] - v[1] * w[0]))
    return sign(det)


class SegIntersection:
    """Classification of the meet of two closed segments in the plane.

    kind is 'empty', 'point' or 'overlap'.  For 'point', point is the
    exact location and contact tells whether it is interior to both
    segments ('interior-interior') or touches an endpoint of at least
    one ('endpoint-touch').  For 'overlap' the segments share a
    positive-length collinear piece.
    """

    __slots__ = ("kind", "point", "contact", "params")

    def __init__(self, kind, point=None, contact=None, params=None):
        self.kind = kind
        self.point = point
        self.contact = contact
        self.params = params  # (s, t) along each segment for 'point'

    def __repr__(self):
        if self.kind == "point":
            return "SegIntersection(point, %r, %s)" % (self.point, self.contact)
        return "SegIntersection(%s)" % self.kind


def seg_intersect_2d(a: Point, b: Point, c: Point, d: Point) -> SegIntersection:
    """Exact intersection classification of closed segments [a,b], [c,d]."""
    if a.dim != 2 or b.dim != 2 or c.dim != 2 or d.dim != 2:
        raise ValueError("seg_intersect_2d expects planar points")
    r = b - a
    s = d - c
    denom = r[0] * s[1] - r[1] * s[0]
    acx, acy = c[0] - a[0], c[1] - a[1]
    if denom != 0:
        t = (acx * s[1] - acy * s[0]) / denom
        u = (acx * r[1] - acy * r[0]) / denom
        if 0 <= t <= 1 and 0 <= u <= 1:
            p = Point((a[0] + t * r[0], a[1] + t * r[1]))
            interior = 0 < t < 1 and 0 < u < 1
            return SegIntersection(
                "point", p,
                "interior-interior" if interior else "endpoint-touch",
                (t, u))
        return SegIntersection("empty")
    # denom == 0: parallel directions, or a degenerate segment
    r_zero = r[0] == 0 and r[1] == 0
    s_zero = s[0] == 0 and s[1] == 0
    if r_zero and s_zero:
        if a == c:
            return SegIntersection("point", a, "endpoint-touch", (ZERO, ZERO))
        return SegIntersection("empty")
    if r_zero:
        if point_on_segment(a, c, d):
            return SegIntersection("point", a, "endpoint-touch")
        return SegIntersection("empty")
    if s_zero:
        if point_on_segment(c, a, b):
            return SegIntersection("point", c, "endpoint-touch")
        return SegIntersection("empty")
    if acx * r[1] - acy * r[0] != 0:
        return SegIntersection("empty")  # parallel, different lines
    # collinear: interval overlap along a coordinate where r is nonzero
    axis = 0 if r[0] != 0 else 1
    a0, b0, c0, d0 = a[axis], b[axis], c[axis], d[axis]
    lo1, hi1 = (a0, b0) if a0 <= b0 else (b0, a0)
    lo2, hi2 = (c0, d0) if c0 <= d0 else (d0, c0)
    lo, hi = max(lo1, lo2), min(hi1, hi2)
    if lo > hi:
        return SegIntersection("empty")
    if lo == hi:
        pt = a if a[axis] == lo else b
        if pt[axis] != lo:  # degenerate [a,b]: take from [c,d]
            pt = c if c[axis] == lo else d
        return SegIntersection("point", pt, "endpoint-touch")
    return SegIntersection("overlap")


def point_on_segment(p: Point, a: Point, b: Point) -> bool:
    """Exact test: does p lie on the closed segment [a, b] (any dim)?"""
    d = b - a
    w = p - a
    # collinearity: w x d = 0 in every coordinate pair
    t = None
    for i in range(p.dim):
        if d[i] != 0:
            t = w[i] / d[i]
            break
    if t is None:
        return p == a
    if t < 0 or t > 1:
        return False
    return all(w[i] == t * d[i] for i in range(p.dim))


def segment_param(p: Point, a: Point, b: Point):
    """Parameter t with p = a + t(b-a), or None if p is off the segment."""
    d = b - a
    w = p - a
    t = None
    for i in range(p.dim):
        if d[i] != 0:
            t = w[i] / d[i]
            break
    if t is None:
        return ZERO if p == a else None
    if t < 0 or t > 1:
        return None
    if all(w[i] == t * d[i] for i in range(p.dim)):
        return t
    return None


# ---------------------------------------------------------------------------
# convex simplex intersection via exact feasibility

def _vertex_enumerate_lp(cols: list[list], b: list, obj: list):
    """Maximize obj . x over {x >= 0 : A x = b} with A given by columns.

    The feasible set here is always a polytope (our instances embed
    convex-combination rows, which bound every variable by 1), so the
    maximum is attained at a vertex and vertices have linearly
    independent support columns.  Enumerating column subsets is exact
    and, at <= 6 columns, cheap.

    Returns (best_value, best_x) or (None, None) if infeasible.
    """
    n = len(cols)
    m = len(b)
    best = None
    best_x = None
    for mask in range(1, 1 << n):
        support = [i for i in range(n) if mask & (1 << i)]
        if len(support) > m:
            continue
        a_rows = [[cols[i][r] for i in support] for r in range(m)]
        x = solve_unique(a_rows, b)
        if x is None or any(v < 0 for v in x):
            continue
        full = [ZERO] * n
        for i, v in zip(support, x):
            full[i] = v
        val = sum(o * v for o, v in zip(obj, full))
        if best is None or val > best:
            best = val
            best_x = full
    return best, best_x


def simplex_intersect(simplex_a: Sequence[Point], simplex_b: Sequence[Point],
                      allowed: Sequence[Point] = ()) -> Optional[Point]:
    """Do two closed simplices meet outside their shared face?

    simplex_a, simplex_b: vertex lists (2 for a segment, 3 for a
    triangle) of nondegenerate simplices in a common R^d.  allowed lists
    vertices shared by both simplices whose spanned face is permitted
    contact (a shared endpoint, or a shared edge).

    Returns an exact witness Point of a forbidden intersection, or None
    when the simplices are disjoint away from the allowed face.  The
    test is symmetric in the two simplices.
    """
    pts_a = list(simplex_a)
    pts_b = list(simplex_b)
    if not pts_a or not pts_b:
        raise ValueError("empty simplex")
    dim = pts_a[0].dim
    if any(p.dim != dim for p in pts_a + pts_b):
        raise ValueError("dimension mismatch")
    if affine_rank(pts_a) != len(pts_a) - 1:
        raise ValueError("degenerate simplex a")
    if affine_rank(pts_b) != len(pts_b) - 1:
        raise ValueError("degenerate simplex b")
    allowed = list(allowed)
    for p in allowed:
        if p not in pts_a or p not in pts_b:
            raise ValueError("allowed vertex is not shared by both simplices")

    # Feasibility system: sum lam_i a_i = sum mu_j b_j, sum lam = 1,
    # sum mu = 1, lam, mu >= 0.  A common point lies in the allowed face
    # iff its barycentric weight off the allowed vertices is zero (in
    # either simplex; they agree on common points), so we maximize the
    # off-face weight of simplex a and report a violation iff it can be
    # made positive -- or, with no allowed face, iff the system is
    # feasible at all.
    na, nb = len(pts_a), len(pts_b)
    cols = []
    for p in pts_a:
        cols.append(list(p.coords) + [ONE, ZERO])
    for p in pts_b:
        cols.append([-c for c in p.coords] + [ZERO, ONE])
    b = [ZERO] * dim + [ONE, ONE]
    obj = [ZERO if pts_a[i] in allowed else ONE for i in range(na)]
    obj += [ZERO] * nb
    if not allowed:
        obj = [ONE] * na + [ZERO] * nb  # any common point is a violation
    best, x = _vertex_enumerate_lp(cols, b, obj)
    if best is None or best == 0:
        return None
    lam = x[:na]
    return Point(sum(l * p.coords[k] for l, p in zip(lam, pts_a))
                 for k in range(dim))


def convex_meet(pts_a: Sequence[Point], pts_b: Sequence[Point]):
    """A point of conv(pts_a) & conv(pts_b), or None if they are disjoint.

    Unlike simplex_intersect this accepts arbitrary finite point sets
    (affinely dependent is fine).  A handful of candidate separating
    functionals is tried first; the exact feasibility enumeration only
    runs when none of them certifies disjointness.
    """
    pts_a = list(pts_a)
    pts_b = list(pts_b)
    if not pts_a or not pts_b:
        raise ValueError("empty point set")
    dim = pts_a[0].dim
    if any(p.dim != dim for p in pts_a + pts_b):
        raise ValueError("dimension mismatch")
    ca = [sum(p[i] for p in pts_a) / len(pts_a) for i in range(dim)]
    cb = [sum(p[i] for p in pts_b) / len(pts_b) for i in range(dim)]
    candidates = [[ca[i] - cb[i] for i in range(dim)]]
    for i in range(dim):
        w = [ZERO] * dim
        w[i] = ONE
        candidates.append(w)
    for w in candidates:
        if all(c == 0 for c in w):
            continue
        va = [sum(wc * pc for wc, pc in zip(w, p.coords)) for p in pts_a]
        vb = [sum(wc * pc for wc, pc in zip(w, p.coords)) for p in pts_b]
        if min(va) > max(vb) or min(vb) > max(va):
            return None
    cols = []
    for p in pts_a:
        cols.append(list(p.coords) + [ONE, ZERO])
    for p in pts_b:
        cols.append([-c for c in p.coords] + [ZERO, ONE])
    b = [ZERO] * dim + [ONE, ONE]
    n = len(cols)
    m = len(b)
    for mask in range(1, 1 << n):
        support = [i for i in range(n) if mask & (1 << i)]
        if len(support) > m:
            continue
        a_rows = [[cols[i][r] for i in support] for r in range(m)]
        x = solve_unique(a_rows, b)
        if x is None or any(v < 0 for v in x):
            continue
        lam = [ZERO] * len(pts_a)
        for i, v in zip(support, x):
            if i < len(pts_a):
                lam[i] = v
        return Point(sum(l * p.coords[k] for l, p in zip(lam, pts_a))
                     for k in range(dim))
    return None


def segment_simplex_meet(a: Point, b: Point, simplex: Sequence[Point]):
    """Exact intersection of closed segment [a,b] with a closed simplex.

    Returns ('empty', None), ('point', t) or ('segment', (t0, t1)) where
    the t values parametrize [a, b].
    """
    pts = list(simplex)
    dim = a.dim
    k = len(pts)
    # unknowns: barycentric weights lam_1..lam_k, parameter t
    # equations: sum lam_i p_i - (a + t (b-a)) = 0, sum lam = 1
    d = b - a
    rows = []
    rhs = []
    for c in range(dim):
        rows.append([p[c] for p in pts] + [-d[c]])
        rhs.append(a[c])
    rows.append([ONE] * k + [ZERO])
    rhs.append(ONE)
    aug = [row + [rv] for row, rv in zip(rows, rhs)]
    red, pivots = rref(aug)
    ncols = k + 1
    if ncols in pivots:
        return ("empty", None)
    free = [c for c in range(ncols) if c not in pivots]
    if not free:
        x = [ZERO] * ncols
        for i, c in enumerate(pivots):
            x[c] = red[i][ncols]
        lam, t = x[:k], x[k]
        if all(v >= 0 for v in lam) and 0 <= t <= 1:
            return ("point", t)
        return ("empty", None)
    if len(free) > 1:
        # solution space of dim >= 2 cannot occur for a nondegenerate
        # simplex and a nondegenerate segment unless the segment is a
        # point inside the simplex's hull; handle by sampling endpoints
        t_candidates = []
        for t, pt in ((ZERO, a), (ONE, b)):
            if point_in_simplex(pt, pts):
                t_candidates.append(t)
        if len(t_candidates) == 2:
            return ("segment", (ZERO, ONE))
        if t_candidates:
            return ("point", t_candidates[0])
        return ("empty", None)
    # one free variable: the meet of the segment's line with the
    # simplex's hull plane is a line; restrict by lam >= 0, 0 <= t <= 1
    f = free[0]
    base = [ZERO] * ncols
    for i, c in enumerate(pivots):
        base[c] = red[i][ncols]
    dirv = [ZERO] * ncols
    dirv[f] = ONE
    for i, c in enumerate(pivots):
        dirv[c] = -red[i][f]
    # feasible s-interval: base + s*dirv must satisfy lam >= 0, t in [0,1]
    lo, hi = None, None  # None = unbounded
    feasible = True
    constraints = []
    for i in range(k):
        constraints.append((dirv[i], -base[i]))          # lam_i >= 0
    constraints.append((dirv[k], -base[k]))              # t >= 0
    constraints.append((-dirv[k], base[k] - ONE))        # -t >= -1
    for coef, bound in constraints:
        # coef*s >= bound
        if coef == 0:
            if bound > 0:
                feasible = False
                break
        elif coef > 0:
            v = bound / coef
            if lo is None or v > lo:
                lo = v
        else:
            v = bound / coef
            if hi is None or v < hi:
                hi = v
    if not feasible or (lo is not None and hi is not None and lo > hi):
        return ("empty", None)
    if dirv[k] == 0:
        # t is constant along the solution family: the segment touches
        # the simplex in exactly one of its points
        return ("point", base[k])
    # t in [0,1] bounds s from both sides whenever dirv[k] != 0
    t_lo = base[k] + lo * dirv[k]
    t_hi = base[k] + hi * dirv[k]
    if t_lo > t_hi:
        t_lo, t_hi = t_hi, t_lo
    if t_lo == t_hi:
        return ("point", t_lo)
    return ("segment", (t_lo, t_hi))


def earclip_2d(points: Sequence[Point]) -> list[tuple[int, int, int]]:
    """Triangulate a simple planar polygon without new vertices.

    Returns len(points)-2 index triples.  The ear test is exact and
    deliberately strict: a corner is clipped only when it turns the
    polygon's way, no other active vertex lies in the closed candidate
    triangle, and the cut diagonal crosses no active edge.  The last
    condition matters: an edge can dip through the candidate triangle
    without putting either of its endpoints inside it.
    """
    n = len(points)
    if n < 3:
        raise ValueError("need at least 3 points")
    if any(p.dim != 2 for p in points):
        raise ValueError("earclip works on planar points")
    area2 = ZERO
    for i in range(n):
        a, b = points[i], points[(i + 1) % n]
        area2 += a[0] * b[1] - b[0] * a[1]
    turn = sign(area2)
    if turn == 0:
        raise ValueError("polygon has zero area")
    ring = list(range(n))
    tris: list[tuple[int, int, int]] = []
    scan_from = 0
    while len(ring) > 3:
        m = len(ring)
        clipped = False
        for off in range(m):
            i = (scan_from + off) % m
            ia, ib, ic = ring[(i - 1) % m], ring[i], ring[(i + 1) % m]
            pa, pb, pc = points[ia], points[ib], points[ic]
            if orient2d(pa, pb, pc) != turn:
                continue
            if any(_in_closed_tri(points[j], pa, pb, pc, turn)
                   for j in ring if j not in (ia, ib, ic)):
                continue
            if not _diagonal_clear(points, ring, i, ia, ic):
                continue
            tris.append((ia, ib, ic))
            ring.pop(i)
            scan_from = (i - 1) % len(ring)
            clipped = True
            break
        if not clipped:
            raise ValueError("no ear found; polygon is not simple")
    a, b, c = ring
    if orient2d(points[a], points[b], points[c]) != turn:
        raise ValueError("final triangle degenerate; polygon is not simple")
    tris.append((a, b, c))
    return tris


def _in_closed_tri(p, a, b, c, turn) -> bool:
    return (sign(orient2d(a, b, p)) * turn >= 0
            and sign(orient2d(b, c, p)) * turn >= 0
            and sign(orient2d(c, a, p)) * turn >= 0)


def _diagonal_clear(points, ring, i, ia, ic) -> bool:
    # the cut (ia, ic) may touch ring edges only at shared endpoints
    pa, pc = points[ia], points[ic]
    m = len(ring)
    for k in range(m):
        u, v = ring[k], ring[(k + 1) % m]
        hit = seg_intersect_2d(pa, pc, points[u], points[v])
        if hit.kind == "empty":
            continue
        if hit.kind == "overlap":
            return False
        if u in (ia, ic) or v in (ia, ic):
            shared = points[u] if u in (ia, ic) else points[v]
            if hit.point == shared:
                continue
        return False
    return True


def point_in_simplex(p: Point, simplex: Sequence[Point]) -> bool:
    """Exact closed-containment test for any nondegenerate simplex."""
    pts = list(simplex)
    k = len(pts)
    rows = [[q[c] for q in pts] for c in range(p.dim)]
    rows.append([ONE] * k)
    rhs = list(p.coords) + [ONE]
    aug = [row + [rv] for row, rv in zip(rows, rhs)]
    red, pivots = rref(aug)
    if k in pivots:
        return False
    if len(pivots) != k:
        # degenerate simplex; fall back to exhaustive face check
        raise ValueError("degenerate simplex")
    lam = [ZERO] * k
    for i, c in enumerate(pivots):
        lam[c] = red[i][k]
    return all(v >= 0 for v in lam)
