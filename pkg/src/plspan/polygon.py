"""Closed polygons in R^d and the built-in example generators.

A closed polygon is a cyclic list of rational points; edge i joins
vertex i to vertex i+1 (mod n).  Embeddedness means any two edges meet
only in a shared endpoint.  The generators return polygons that are
re-verified exactly before being handed out, so downstream code may
assume embedded input.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Optional, Sequence

from .geom import (
    ONE,
    Point,
    ZERO,
    affine_rank,
    rat,
    rat_str,
    simplex_intersect,
)


class ClosedPolygon:
    def __init__(self, vertices: Sequence[Point]):
        verts = list(vertices)
        if len(verts) < 3:
            raise ValueError("a closed polygon needs at least 3 vertices")
        dim = verts[0].dim
        if any(v.dim != dim for v in verts):
            raise ValueError("mixed vertex dimensions")
        if dim < 2:
            raise ValueError("polygon dimension must be at least 2")
        for i, v in enumerate(verts):
            if v == verts[(i + 1) % len(verts)]:
                raise ValueError("repeated consecutive vertex %d" % i)
        self.vertices = verts
        self.dim = dim

    def __len__(self) -> int:
        return len(self.vertices)

    def edge(self, i: int) -> tuple[Point, Point]:
        n = len(self.vertices)
        return self.vertices[i % n], self.vertices[(i + 1) % n]

    def edges(self):
        for i in range(len(self.vertices)):
            yield self.edge(i)

    def zero_turns(self) -> list[int]:
        """Vertices where the two incident edges are parallel."""
        n = len(self.vertices)
        out = []
        for i in range(n):
            prev = self.vertices[(i - 1) % n]
            cur = self.vertices[i]
            nxt = self.vertices[(i + 1) % n]
            if affine_rank([prev, cur, nxt]) < 2:
                out.append(i)
        return out

    def translate(self, offset: Point) -> "ClosedPolygon":
        return ClosedPolygon([v + offset for v in self.vertices])

    def __repr__(self):
        return "ClosedPolygon(n=%d, dim=%d)" % (len(self.vertices), self.dim)


class PolygonViolation:
    """Two edges meeting away from a shared endpoint."""

    __slots__ = ("edge_a", "edge_b", "point")

    def __init__(self, edge_a: int, edge_b: int, point: Point):
        self.edge_a = edge_a
        self.edge_b = edge_b
        self.point = point

    def __repr__(self):
        return "PolygonViolation(%d, %d, %r)" % (self.edge_a, self.edge_b,
                                                 self.point)


def validate_embedded(poly: ClosedPolygon) -> Optional[PolygonViolation]:
    """Exact pairwise edge check; None when the polygon is embedded."""
    n = len(poly.vertices)
    segs = [poly.edge(i) for i in range(n)]
    boxes = []
    for a, b in segs:
        boxes.append(tuple((min(a[i], b[i]), max(a[i], b[i]))
                           for i in range(poly.dim)))
    for i in range(n):
        ai, bi = segs[i]
        for j in range(i + 1, n):
            if any(boxes[j][k][0] > boxes[i][k][1]
                   or boxes[i][k][0] > boxes[j][k][1]
                   for k in range(poly.dim)):
                continue
            aj, bj = segs[j]
            shared = []
            if j == i + 1:
                shared = [bi]
            elif i == 0 and j == n - 1:
                shared = [ai]
            w = simplex_intersect([ai, bi], [aj, bj], shared)
            if w is not None:
                return PolygonViolation(i, j, w)
    return None


# ---------------------------------------------------------------------------
# file format

def polygon_text(poly: ClosedPolygon) -> str:
    lines = ["pl-polygon %d %d" % (poly.dim, len(poly.vertices))]
    for v in poly.vertices:
        lines.append(" ".join(rat_str(c) for c in v.coords))
    return "\n".join(lines) + "\n"


def write_polygon(poly: ClosedPolygon, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(polygon_text(poly))


def read_polygon(path: str) -> ClosedPolygon:
    with open(path) as fh:
        raw = [ln.strip() for ln in fh]
    lines = [ln for ln in raw if ln and not ln.startswith("#")]
    head = lines[0].split()
    if len(head) != 3 or head[0] != "pl-polygon":
        raise ValueError("not a pl-polygon file")
    dim, n = int(head[1]), int(head[2])
    if len(lines) != 1 + n:
        raise ValueError("vertex count does not match header")
    verts = []
    for ln in lines[1:]:
        toks = ln.split()
        if len(toks) != dim:
            raise ValueError("bad vertex line: %r" % ln)
        verts.append(Point([rat(t) for t in toks]))
    return ClosedPolygon(verts)


# ---------------------------------------------------------------------------
# exact points on a circle

def _circle_points(angles_rad, radius, denom=1 << 14):
    """Rational points exactly on the circle of the given rational radius.

    Each requested angle (radians, float guidance only) is snapped to a
    nearby rational tangent-half-angle t, giving the exact point
    (r(1-t^2)/(1+t^2), 2rt/(1+t^2)).  Angles equal to pi get the exact
    point (-r, 0).
    """
    radius = rat(radius)
    pts = []
    for theta in angles_rad:
        theta = theta % (2 * math.pi)
        if abs(theta - math.pi) < 1e-12:
            pts.append((-radius, ZERO))
            continue
        t = rat(Fraction(round(math.tan(theta / 2) * denom), denom))
        one_pt2 = 1 + t * t
        pts.append((radius * (1 - t * t) / one_pt2,
                    radius * 2 * t / one_pt2))
    return pts


def gen_planar_ngon(n: int, dim: int = 2, radius=1) -> ClosedPolygon:
    """Strictly convex n-gon with vertices exactly on a rational circle.

    dim 2 gives planar points; dim 3 embeds them at height zero.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    if dim not in (2, 3):
        raise ValueError("planar generator supports dim 2 or 3")
    angles = [2 * math.pi * k / n for k in range(n)]
    pts = _circle_points(angles, radius)
    if len({p for p in pts}) != n:
        raise ValueError("angle snapping collided; raise the denominator")
    verts = []
    for x, y in pts:
        verts.append(Point([x, y] if dim == 2 else [x, y, ZERO]))
    poly = ClosedPolygon(verts)
    if validate_embedded(poly) is not None:
        raise AssertionError("convex circle polygon failed embedding check")
    if poly.zero_turns():
        raise AssertionError("convex circle polygon has a zero turn")
    return poly


# ---------------------------------------------------------------------------
# knotted examples

def gen_torus_stick(m: int, verify: bool = True) -> ClosedPolygon:
    """Stick realization of the (m, m-1) torus knot with 2m edges.

    2m vertices zig-zag between an outer circle at height +1 and an
    inner circle at height -1 while the angle advances pi*(m-1)/m per
    step, closing up after m-1 turns around the axis.  Placing the
    bottom vertices slightly off the angular midpoint breaks a
    reflective symmetry that would otherwise make half the crossings
    degenerate, and picks the resolution with uniform crossing handedness:
    the shadow's writhe comes out to exactly m*(m-2), the minimal
    crossing number of this knot, with any surplus crossings in
    cancelling pairs.  m=3 is the trefoil with a 3-crossing shadow.
    """
    if m < 3:
        raise ValueError("need m >= 3")
    want_writhe = m * (m - 2)
    delta = math.pi * (m - 1) / m
    last_error = "no attempt"
    for bias, denom in ((Fraction(-1, 10), 1 << 14),
                        (Fraction(1, 10), 1 << 14),
                        (Fraction(-1, 12), 1 << 15),
                        (Fraction(1, 12), 1 << 15),
                        (Fraction(-1, 8), 1 << 15),
                        (Fraction(1, 8), 1 << 15)):
        verts = []
        for j in range(m):
            a = 2 * delta * j
            xt, yt = _circle_points([a], 2, denom)[0]
            xb, yb = _circle_points([a + delta * (1 + bias)], 1, denom)[0]
            verts.append(Point([xt, yt, ONE]))
            verts.append(Point([xb, yb, -ONE]))
        try:
            poly = ClosedPolygon(verts)
        except ValueError:
            last_error = "degenerate vertices"
            continue
        if validate_embedded(poly) is not None or poly.zero_turns():
            last_error = "self-intersecting layout"
            continue
        if not verify:
            return poly
        from .diagram import project_polygon
        try:
            dia = project_polygon(poly, seed=0)
        except AssertionError as exc:
            last_error = str(exc)
            continue
        w = dia.writhe
        surplus = len(dia.crossings) - abs(w)
        if abs(w) == want_writhe and surplus % 2 == 0:
            return poly
        last_error = "writhe %d with %d crossings" % (w, len(dia.crossings))
    raise AssertionError("no working stick layout for m=%d (%s)"
                         % (m, last_error))


def gen_twist_writhe(m: int, verify: bool = True) -> ClosedPolygon:
    """Grid weave with m+1 straight over-strands crossing m under-strands.

    All m*(m+1) crossings have the same sign, so the projection's writhe
    is m*(m+1), while the vertex count is exactly 6m+3.  Coordinates are
    halves of integers; the two strand layers live at heights +1 and -1
    with connector waypoints at height 0.
    """
    if m < 1:
        raise ValueError("need m >= 1")
    big = m + 1  # right end of every over-strand
    half = rat("1/2")
    verts: list[Point] = []

    def add(x, y, z):
        verts.append(Point([rat(x), rat(y), rat(z)]))

    for i in range(1, m + 1):
        # over-strand i at height +1
        add(0, i, 1)
        add(big, i, 1)
        col = m + 1 - i
        if i == 1:
            pass  # single-segment drop to the first under-strand
        else:
            add(big + 1 + i, -i, 0)  # lower hook waypoint
        # under-strand i at height -1
        add(col, half, -1)
        add(col, m + 1 + half, -1)
        add(-(m - i) - half, m + 2 + (m - i), 0)  # upper hook waypoint
    # last over-strand
    add(0, m + 1, 1)
    add(big, m + 1, 1)
    # return run, well below and around everything
    add(big + m + 3, -m - 2, 0)
    add(-2, -m - 2, 0)

    poly = ClosedPolygon(verts)
    assert len(verts) == 6 * m + 3
    bad = validate_embedded(poly)
    if bad is not None:
        raise AssertionError("twist layout self-intersects: %r" % bad)
    if verify:
        from .diagram import project_polygon
        dia = project_polygon(poly, seed=0)
        want = m * (m + 1)
        if len(dia.crossings) != want:
            raise AssertionError("twist layout crossing count %d, wanted %d"
                                 % (len(dia.crossings), want))
        if any(c.sign != 1 for c in dia.crossings):
            raise AssertionError("twist layout produced a negative crossing")
    return poly


# ---------------------------------------------------------------------------
# random polygons

def gen_random(n: int, dim: int, seed: int = 0) -> ClosedPolygon:
    """Seed-deterministic embedded polygon with n vertices in R^dim."""
    if n < 3:
        raise ValueError("need n >= 3")
    if dim < 2:
        raise ValueError("need dim >= 2")
    rng = random.Random(seed)
    for attempt in range(400):
        if dim == 2:
            poly = _random_star(n, rng)
        else:
            verts = []
            for _ in range(n):
                verts.append(Point([Fraction(rng.randint(-4 * n, 4 * n), 4)
                                    for _ in range(dim)]))
            try:
                poly = ClosedPolygon(verts)
            except ValueError:
                continue
        if poly is not None and validate_embedded(poly) is None \
                and not poly.zero_turns():
            return poly
    raise AssertionError("random polygon sampling kept self-intersecting")


def _random_star(n: int, rng: random.Random) -> Optional[ClosedPolygon]:
    # distinct sorted direction angles with random radii: simple by
    # construction, but re-verified exactly by the caller anyway
    angles = sorted(rng.uniform(0, 2 * math.pi) for _ in range(n))
    for a, b in zip(angles, angles[1:]):
        if b - a < 1e-3:
            return None
    verts = []
    for theta in angles:
        r = Fraction(rng.randint(8, 32), 8)
        x = rat(Fraction(round(math.cos(theta) * 4096), 4096)) * r
        y = rat(Fraction(round(math.sin(theta) * 4096), 4096)) * r
        verts.append(Point([x, y]))
    try:
        return ClosedPolygon(verts)
    except ValueError:
        return None
