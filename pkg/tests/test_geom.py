import random
from fractions import Fraction

import pytest

from plspan.geom import (
    AffineMap,
    Point,
    Rat,
    affine_rank,
    matrix_rank,
    nullspace,
    orient2d,
    orient3d,
    point_in_simplex,
    point_on_segment,
    rat,
    rat_str,
    rref,
    seg_intersect_2d,
    segment_param,
    segment_simplex_meet,
    simplex_intersect,
    solve_unique,
)


def rnd_frac(rng, lim=8, den=4):
    return Fraction(rng.randint(-lim, lim), rng.randint(1, den))


def rnd_point(rng, dim, lim=8, den=4):
    return Point([rnd_frac(rng, lim, den) for _ in range(dim)])


# ---------------------------------------------------------------------------
# scalar plumbing

def test_rat_parses_fractions_and_decimals_exactly():
    assert rat("3/7") == Rat(3, 7)
    assert rat("0.25") == Rat(1, 4)
    assert rat("-1.1") == Rat(-11, 10)
    assert rat(5) == Rat(5)
    assert rat_str(rat("4/8")) == "1/2"
    assert rat_str(rat("3")) == "3"


def test_point_arithmetic_and_hash():
    p = Point([1, 2, 3])
    q = Point(["1/2", "0.5", 0])
    assert (p - p) == Point([0, 0, 0])
    assert (p + q)[0] == rat("3/2")
    assert hash(Point([2, 4])) == hash(Point(["2", "4"]))
    assert p.scale(2) == Point([2, 4, 6])


# ---------------------------------------------------------------------------
# linear algebra

def test_rref_identity_and_rank():
    red, piv = rref([[1, 0], [0, 1]])
    assert piv == [0, 1]
    assert matrix_rank([[1, 2], [2, 4]]) == 1
    assert matrix_rank([[1, 2], [3, 4]]) == 2


def test_solve_unique_basic():
    x = solve_unique([[2, 0], [0, 4]], [6, 8])
    assert x == [3, 2]
    assert solve_unique([[1, 1], [2, 2]], [1, 3]) is None  # inconsistent
    assert solve_unique([[1, 1], [2, 2]], [1, 2]) is None  # underdetermined


def test_nullspace_annihilates():
    rng = random.Random(7)
    for _ in range(50):
        rows = [[rnd_frac(rng) for _ in range(4)] for _ in range(2)]
        for v in nullspace(rows):
            for row in rows:
                assert sum(a * b for a, b in zip(row, v)) == 0


def test_affine_rank_of_triangle():
    tri = [Point([0, 0, 0]), Point([1, 0, 0]), Point([0, 1, 0])]
    assert affine_rank(tri) == 2
    assert affine_rank([Point([0, 0]), Point([1, 1]), Point([2, 2])]) == 1


def test_affine_inverse_is_identity_on_random_points():
    # invertible map, then its inverse, on 1000 random rational points
    rng = random.Random(2024)
    maps = []
    for dim in (2, 3, 4):
        while True:
            m = [[rnd_frac(rng, 5, 3) for _ in range(dim)] for _ in range(dim)]
            t = [rnd_frac(rng, 5, 3) for _ in range(dim)]
            try:
                am = AffineMap(m, t)
                inv = am.inverse()
            except ValueError:
                continue
            maps.append((am, inv, dim))
            break
    count = 0
    while count < 1000:
        am, inv, dim = maps[count % len(maps)]
        p = rnd_point(rng, dim, 50, 17)
        assert inv.apply(am.apply(p)) == p
        assert am.apply(inv.apply(p)) == p
        count += 1


def test_affine_compose_and_shear():
    sh = AffineMap.shear_last_into(3, ["1/2", -2])
    p = Point([1, 1, 4])
    assert sh.apply(p) == Point([3, -7, 4])
    comp = sh.compose(sh.inverse())
    for _ in range(5):
        assert comp.apply(p) == p


# ---------------------------------------------------------------------------
# orientation predicates

def test_orient2d_signs():
    a, b, c = Point([0, 0]), Point([1, 0]), Point([0, 1])
    assert orient2d(a, b, c) == 1
    assert orient2d(a, c, b) == -1
    assert orient2d(a, b, Point([2, 0])) == 0


def test_orient3d_signs():
    a = Point([0, 0, 0])
    b = Point([1, 0, 0])
    c = Point([0, 1, 0])
    d = Point([0, 0, 1])
    assert orient3d(a, b, c, d) == 1
    assert orient3d(a, c, b, d) == -1
    assert orient3d(a, b, c, Point([3, -2, 0])) == 0


# ---------------------------------------------------------------------------
# segment intersection vs a brute-force parametric oracle

def oracle_seg(a, b, c, d):
    """Independent classification of [a,b] cap [c,d].

    Works entirely in Fraction: Cramer for the transversal case, interval
    overlap of projection parameters for the collinear case.
    """
    ax, ay = Fraction(a[0]), Fraction(a[1])
    bx, by = Fraction(b[0]), Fraction(b[1])
    cx, cy = Fraction(c[0]), Fraction(c[1])
    dx, dy = Fraction(d[0]), Fraction(d[1])
    rx, ry = bx - ax, by - ay
    sx, sy = dx - cx, dy - cy
    den = rx * sy - ry * sx
    cross_ac = (cx - ax) * ry - (cy - ay) * rx
    if den != 0:
        t = ((cx - ax) * sy - (cy - ay) * sx) / den
        u = cross_ac / den
        if 0 <= t <= 1 and 0 <= u <= 1:
            interior = 0 < t < 1 and 0 < u < 1
            return ("point", (ax + t * rx, ay + t * ry), interior)
        return ("empty", None, None)
    if cross_ac != 0 and (rx, ry) != (0, 0):
        return ("empty", None, None)
    if (rx, ry) == (0, 0) and (sx, sy) == (0, 0):
        if (ax, ay) == (cx, cy):
            return ("point", (ax, ay), False)
        return ("empty", None, None)
    if (rx, ry) == (0, 0):
        # degenerate first segment: a on [c,d]?
        if (ax - cx) * sy - (ay - cy) * sx != 0:
            return ("empty", None, None)
        dot = (ax - cx) * sx + (ay - cy) * sy
        if 0 <= dot <= sx * sx + sy * sy:
            return ("point", (ax, ay), False)
        return ("empty", None, None)
    # collinear with [a,b] nondegenerate: parameters of c and d along it
    rr = rx * rx + ry * ry
    tc = ((cx - ax) * rx + (cy - ay) * ry) / rr
    td = ((dx - ax) * rx + (dy - ay) * ry) / rr
    lo, hi = min(tc, td), max(tc, td)
    lo, hi = max(lo, Fraction(0)), min(hi, Fraction(1))
    if lo > hi:
        return ("empty", None, None)
    if lo == hi:
        return ("point", (ax + lo * rx, ay + lo * ry), False)
    return ("overlap", None, None)


def seg_cases(rng, n):
    """Random segment pairs with the degenerate families over-sampled."""
    for _ in range(n):
        mode = rng.randrange(6)
        a = rnd_point(rng, 2, 5, 3)
        b = rnd_point(rng, 2, 5, 3)
        if mode == 0:
            c, d = rnd_point(rng, 2, 5, 3), rnd_point(rng, 2, 5, 3)
        elif mode == 1:
            # parallel copy
            off = rnd_point(rng, 2, 3, 2)
            c, d = a + off, b + off
        elif mode == 2:
            # collinear pieces
            t0, t1 = rnd_frac(rng, 3, 2), rnd_frac(rng, 3, 2)
            dvec = b - a
            c = a + dvec.scale(t0)
            d = a + dvec.scale(t1)
        elif mode == 3:
            # shared endpoint
            c = b
            d = rnd_point(rng, 2, 5, 3)
        elif mode == 4:
            # endpoint of one interior to the other
            t = rnd_frac(rng, 2, 3)
            c = a + (b - a).scale(t)
            d = rnd_point(rng, 2, 5, 3)
        else:
            # degenerate segment
            c = d = rnd_point(rng, 2, 5, 3)
        yield a, b, c, d


def test_seg_intersect_matches_parametric_oracle():
    rng = random.Random(31337)
    checked = 0
    for a, b, c, d in seg_cases(rng, 3000):
        got = seg_intersect_2d(a, b, c, d)
        kind, pt, interior = oracle_seg(a.coords, b.coords, c.coords, d.coords)
        assert got.kind == kind, (a, b, c, d, got.kind, kind)
        if kind == "point":
            assert got.point == Point(pt)
            want = "interior-interior" if interior else "endpoint-touch"
            assert got.contact == want, (a, b, c, d)
        checked += 1
    assert checked == 3000


def test_seg_intersect_is_symmetric():
    rng = random.Random(99)
    for a, b, c, d in seg_cases(rng, 500):
        r1 = seg_intersect_2d(a, b, c, d)
        r2 = seg_intersect_2d(c, d, a, b)
        assert r1.kind == r2.kind
        if r1.kind == "point":
            assert r1.point == r2.point
            assert r1.contact == r2.contact


def test_seg_intersect_handpicked():
    a, b = Point([0, 0]), Point([4, 4])
    c, d = Point([0, 4]), Point([4, 0])
    r = seg_intersect_2d(a, b, c, d)
    assert r.kind == "point" and r.point == Point([2, 2])
    assert r.contact == "interior-interior"
    # touch at endpoint
    r = seg_intersect_2d(a, b, b, Point([9, 0]))
    assert r.kind == "point" and r.contact == "endpoint-touch"
    # collinear overlap
    r = seg_intersect_2d(Point([0, 0]), Point([3, 0]),
                         Point([1, 0]), Point([5, 0]))
    assert r.kind == "overlap"
    # collinear disjoint
    r = seg_intersect_2d(Point([0, 0]), Point([1, 0]),
                         Point([2, 0]), Point([5, 0]))
    assert r.kind == "empty"


def test_point_on_segment_and_param():
    a, b = Point([0, 0, 0]), Point([2, 4, 6])
    m = Point([1, 2, 3])
    assert point_on_segment(m, a, b)
    assert segment_param(m, a, b) == rat("1/2")
    assert not point_on_segment(Point([1, 2, 4]), a, b)
    assert segment_param(Point([3, 6, 9]), a, b) is None


# ---------------------------------------------------------------------------
# simplex intersection: 2D cross-check against the segment kernel

def test_simplex_intersect_agrees_with_seg_kernel_2d():
    rng = random.Random(424242)
    done = 0
    for a, b, c, d in seg_cases(rng, 800):
        if a == b or c == d:
            continue  # simplex_intersect requires nondegenerate input
        ref = seg_intersect_2d(a, b, c, d)
        got = simplex_intersect([a, b], [c, d])
        if ref.kind == "empty":
            assert got is None
        else:
            assert got is not None
            # witness must actually lie on both segments
            assert point_on_segment(got, a, b)
            assert point_on_segment(got, c, d)
        done += 1
    assert done > 500


def test_simplex_intersect_allowed_shared_endpoint():
    a, b, c = Point([0, 0]), Point([4, 0]), Point([4, 3])
    # sharing vertex b only: fine once b is allowed
    assert simplex_intersect([a, b], [b, c]) is not None
    assert simplex_intersect([a, b], [b, c], allowed=[b]) is None
    # collinear extension through b is still only touching at b
    d = Point([8, 0])
    assert simplex_intersect([a, b], [b, d], allowed=[b]) is None
    # overlapping collinear segments violate even with shared endpoint
    e = Point([2, 0])
    assert simplex_intersect([a, b], [e, d], allowed=[]) is not None


# ---------------------------------------------------------------------------
# simplex intersection: 3D cross-check against an independent
# edge-versus-triangle oracle

def _oracle_seg_tri_3d(p, q, tri):
    """Does closed segment [p,q] meet closed triangle tri in R^3?

    Solves p + s(q-p) = t0 + u(t1-t0) + v(t2-t0) by Cramer; the parallel
    and coplanar cases reduce to 2D tests in the triangle's plane.
    """
    t0, t1, t2 = tri
    e1 = [Fraction(t1[i]) - Fraction(t0[i]) for i in range(3)]
    e2 = [Fraction(t2[i]) - Fraction(t0[i]) for i in range(3)]
    dvec = [Fraction(q[i]) - Fraction(p[i]) for i in range(3)]
    rhs = [Fraction(p[i]) - Fraction(t0[i]) for i in range(3)]

    def det3(c0, c1, c2):
        # determinant with c0, c1, c2 as columns
        return (c0[0] * (c1[1] * c2[2] - c1[2] * c2[1])
                - c1[0] * (c0[1] * c2[2] - c0[2] * c2[1])
                + c2[0] * (c0[1] * c1[2] - c0[2] * c1[1]))

    # columns: e1, e2, -d ; unknowns u, v, s
    den = det3(e1, e2, [-x for x in dvec])
    if den != 0:
        u = det3(rhs, e2, [-x for x in dvec]) / den
        v = det3(e1, rhs, [-x for x in dvec]) / den
        s = det3(e1, e2, rhs) / den
        return u >= 0 and v >= 0 and u + v <= 1 and 0 <= s <= 1
    # segment parallel to the plane (or degenerate): coplanar?
    normal = [e1[1] * e2[2] - e1[2] * e2[1],
              e1[2] * e2[0] - e1[0] * e2[2],
              e1[0] * e2[1] - e1[1] * e2[0]]
    if sum(n * r for n, r in zip(normal, rhs)) != 0:
        return False
    # coplanar: drop the dominant coordinate of the normal
    drop = max(range(3), key=lambda i: abs(normal[i]))
    keep = [i for i in range(3) if i != drop]

    def flat(pt):
        return Point([Fraction(pt[i]) for i in keep])

    fp, fq = flat(p), flat(q)
    ftri = [flat(t) for t in tri]
    # meet iff an edge of the triangle crosses [p,q], or an endpoint of
    # [p,q] is inside the triangle
    for i in range(3):
        r = seg_intersect_2d(fp, fq, ftri[i], ftri[(i + 1) % 3])
        if r.kind != "empty":
            return True
    for pt in (fp, fq):
        s1 = orient2d(ftri[0], ftri[1], pt)
        s2 = orient2d(ftri[1], ftri[2], pt)
        s3 = orient2d(ftri[2], ftri[0], pt)
        if (s1 >= 0 and s2 >= 0 and s3 >= 0) or (s1 <= 0 and s2 <= 0 and s3 <= 0):
            return True
    return False


def _oracle_tri_tri_3d(t1, t2):
    """Triangles meet iff some closed edge of one meets the other."""
    for i in range(3):
        if _oracle_seg_tri_3d(t1[i], t1[(i + 1) % 3], t2):
            return True
        if _oracle_seg_tri_3d(t2[i], t2[(i + 1) % 3], t1):
            return True
    return False


def _rnd_triangle(rng, lim=4):
    while True:
        tri = [rnd_point(rng, 3, lim, 2) for _ in range(3)]
        if affine_rank(tri) == 2:
            return tri


def test_simplex_intersect_agrees_with_tri_tri_oracle():
    rng = random.Random(555)
    agree = 0
    hits = 0
    for _ in range(250):
        t1 = _rnd_triangle(rng)
        if rng.random() < 0.5:
            t2 = _rnd_triangle(rng)
        else:
            # nearby copy: forces plenty of genuine intersections
            off = rnd_point(rng, 3, 1, 2)
            t2 = [v + off for v in t1]
        want = _oracle_tri_tri_3d([v.coords for v in t1],
                                  [v.coords for v in t2])
        got = simplex_intersect(t1, t2)
        assert (got is not None) == want, (t1, t2)
        if got is not None:
            hits += 1
            # witness lies in both triangles
            assert point_in_simplex(got, t1)
            assert point_in_simplex(got, t2)
        agree += 1
    assert agree == 250 and hits > 25


def test_simplex_intersect_shared_edge_3d():
    # two triangles folded along a common edge meet only on that edge
    p, q = Point([0, 0, 0]), Point([4, 0, 0])
    r1 = Point([2, 3, 1])
    r2 = Point([2, 3, -1])
    assert simplex_intersect([p, q, r1], [p, q, r2], allowed=[p, q]) is None
    # fold onto the same plane (z = y/3): overlapping interiors
    r3 = Point([2, 3, 1])
    r4 = Point([2, "3/2", "1/2"])
    w = simplex_intersect([p, q, r3], [p, q, r4], allowed=[p, q])
    assert w is not None
    assert point_in_simplex(w, [p, q, r3])
    assert point_in_simplex(w, [p, q, r4])


def test_simplex_intersect_is_symmetric():
    rng = random.Random(808)
    for _ in range(60):
        t1 = _rnd_triangle(rng)
        t2 = _rnd_triangle(rng)
        r12 = simplex_intersect(t1, t2)
        r21 = simplex_intersect(t2, t1)
        assert (r12 is None) == (r21 is None)


def test_simplex_intersect_4d():
    # segment through a triangle in R^4
    tri = [Point([0, 0, 0, 0]), Point([4, 0, 0, 0]), Point([0, 4, 0, 0])]
    seg = [Point([1, 1, -1, 0]), Point([1, 1, 5, 0])]
    w = simplex_intersect(seg, tri)
    assert w == Point([1, 1, 0, 0])
    # same segment shifted off the triangle's 2-flat in the last axis
    seg2 = [Point([1, 1, -1, 1]), Point([1, 1, 5, 1])]
    assert simplex_intersect(seg2, tri) is None


def test_segment_simplex_meet_cases():
    tri = [Point([0, 0, 0]), Point([4, 0, 0]), Point([0, 4, 0])]
    kind, t = segment_simplex_meet(Point([1, 1, -2]), Point([1, 1, 2]), tri)
    assert kind == "point" and t == rat("1/2")
    kind, _ = segment_simplex_meet(Point([9, 9, -2]), Point([9, 9, 2]), tri)
    assert kind == "empty"
    kind, (t0, t1) = segment_simplex_meet(Point([-2, 1, 0]), Point([6, 1, 0]), tri)
    assert kind == "segment" and t0 == rat("1/4") and t1 < 1
    assert point_in_simplex(Point([1, 1, 0]), tri)
    assert not point_in_simplex(Point([3, 3, 0]), tri)
