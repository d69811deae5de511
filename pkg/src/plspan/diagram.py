"""Generic projection of an embedded polygon in R^3 to the plane.

The projection drops z after an invertible shear (x,y) += s*z chosen so
that the shadow is a proper diagram: edges never overlap, all contacts
between non-adjacent edges are transverse interior crossings, crossing
points are pairwise distinct and avoid every projected vertex.  The
shear keeps all coordinates rational, so every test below is exact.

A Diagram carries the sheared polygon (z translated to be >= 1), the
crossing list with over/under resolution and signs, and the walk: the
cyclic node sequence encountered while traversing the polygon, with
each crossing visited exactly twice.
"""

from __future__ import annotations

import random
from typing import Optional

from .geom import AffineMap, ONE, Point, ZERO, rat, seg_intersect_2d, sign
from .polygon import ClosedPolygon


class Crossing:
    __slots__ = ("index", "over_edge", "under_edge", "over_param",
                 "under_param", "pos", "sign", "z_over", "z_under")

    def __init__(self, index, over_edge, under_edge, over_param, under_param,
                 pos, sgn, z_over, z_under):
        self.index = index
        self.over_edge = over_edge
        self.under_edge = under_edge
        self.over_param = over_param
        self.under_param = under_param
        self.pos = pos          # exact 2D point
        self.sign = sgn
        self.z_over = z_over
        self.z_under = z_under

    def __repr__(self):
        return "Crossing(%d, over=e%d, under=e%d, sign=%+d)" % (
            self.index, self.over_edge, self.under_edge, self.sign)


class WalkNode:
    """One stop along the traversal of the projected polygon.

    kind 'vertex' marks an original corner; kind 'cross' marks the
    passage of this strand through a crossing, with role 'over' or
    'under'.  pos is the exact planar position, z the exact height of
    the strand there, param the position along the current edge.
    """

    __slots__ = ("kind", "ref", "role", "edge", "param", "pos", "z")

    def __init__(self, kind, ref, role, edge, param, pos, z):
        self.kind = kind
        self.ref = ref
        self.role = role
        self.edge = edge
        self.param = param
        self.pos = pos
        self.z = z

    def __repr__(self):
        if self.kind == "vertex":
            return "WalkNode(v%d)" % self.ref
        return "WalkNode(x%d %s on e%d)" % (self.ref, self.role, self.edge)


class Diagram:
    def __init__(self, polygon, sheared, to_sheared, crossings, walk):
        self.polygon = polygon        # the polygon as given
        self.sheared = sheared        # after shear + z normalization
        self.to_sheared = to_sheared  # AffineMap original -> sheared
        self.crossings = crossings
        self.walk = walk              # list of WalkNode, cyclic order

    @property
    def writhe(self) -> int:
        return sum(c.sign for c in self.crossings)

    def __repr__(self):
        return "Diagram(n=%d, crossings=%d, writhe=%d)" % (
            len(self.sheared.vertices), len(self.crossings), self.writhe)


def _shadow(poly: ClosedPolygon) -> list[Point]:
    return [Point([v[0], v[1]]) for v in poly.vertices]


def _projection_problems(pts: list[Point]) -> Optional[str]:
    """First violated general-position condition, or None if clean."""
    n = len(pts)
    crossings = []
    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        if a == b:
            return "edge %d projects to a point" % i
    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        for j in range(i + 1, n):
            c, d = pts[j], pts[(j + 1) % n]
            adjacent = (j == i + 1) or (i == 0 and j == n - 1)
            hit = seg_intersect_2d(a, b, c, d)
            if hit.kind == "overlap":
                return "edges %d,%d overlap in projection" % (i, j)
            if hit.kind == "empty":
                continue
            if adjacent:
                shared = pts[j] if j == i + 1 else pts[i]
                if hit.point != shared:
                    return "adjacent edges %d,%d meet away from corner" % (i, j)
                continue
            if hit.contact != "interior-interior":
                return "edges %d,%d touch at an endpoint" % (i, j)
            crossings.append(hit.point)
    seen = set()
    for p in crossings:
        if p.coords in seen:
            return "two crossings coincide"
        seen.add(p.coords)
    for v in pts:
        if v.coords in seen:
            return "a crossing hits a projected vertex"
    return None


def find_general_position(poly: ClosedPolygon, seed: int = 0,
                          budget: int = 1000) -> AffineMap:
    """Shear (x,y) += s*z making the vertical shadow a proper diagram.

    The identity is tried first; afterwards slopes are drawn uniformly
    from the grid {k/1024 : |k| <= 1024}.  Raises if the budget runs out,
    which for an embedded polygon means the budget was simply too small:
    bad slope pairs lie on finitely many curves.
    """
    if poly.dim != 3:
        raise ValueError("projection needs a polygon in R^3")
    rng = random.Random(seed)
    den = 1024
    tried = set()
    for k in range(budget):
        if k == 0:
            s1 = s2 = ZERO
        else:
            s1 = rat(str(rng.randint(-den, den)) + "/" + str(den))
            s2 = rat(str(rng.randint(-den, den)) + "/" + str(den))
        if (s1, s2) in tried:
            continue
        tried.add((s1, s2))
        shear = AffineMap.shear_last_into(3, [s1, s2])
        image = ClosedPolygon([shear.apply(v) for v in poly.vertices])
        if _projection_problems(_shadow(image)) is None:
            return shear
    raise AssertionError("no generic projection found within budget")


def project_polygon(poly: ClosedPolygon, seed: int = 0,
                    budget: int = 1000) -> Diagram:
    """Diagram of the polygon after a generic shear.

    The sheared copy is translated so its lowest vertex sits at height 1;
    the projection plane z=0 therefore lies strictly below the polygon.
    """
    shear = find_general_position(poly, seed=seed, budget=budget)
    lift = min(shear.apply(v)[2] for v in poly.vertices)
    move = AffineMap.translation([ZERO, ZERO, ONE - lift])
    to_sheared = move.compose(shear)
    sheared = ClosedPolygon([to_sheared.apply(v) for v in poly.vertices])
    pts = _shadow(sheared)
    n = len(pts)
    verts3 = sheared.vertices

    def z_at(edge, t):
        za = verts3[edge][2]
        zb = verts3[(edge + 1) % n][2]
        return za + t * (zb - za)

    crossings = []
    per_edge: dict[int, list] = {i: [] for i in range(n)}
    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        for j in range(i + 1, n):
            adjacent = (j == i + 1) or (i == 0 and j == n - 1)
            if adjacent:
                continue
            c, d = pts[j], pts[(j + 1) % n]
            hit = seg_intersect_2d(a, b, c, d)
            if hit.kind == "empty":
                continue
            if hit.kind != "point" or hit.contact != "interior-interior":
                raise AssertionError("projection lost general position")
            t, u = hit.params
            zi, zj = z_at(i, t), z_at(j, u)
            if zi == zj:
                raise AssertionError("strands meet in space; polygon "
                                     "was not embedded")
            if zi > zj:
                over_edge, under_edge, tp, up = i, j, t, u
                z_over, z_under = zi, zj
            else:
                over_edge, under_edge, tp, up = j, i, u, t
                z_over, z_under = zj, zi
            odir = pts[(over_edge + 1) % n] - pts[over_edge]
            udir = pts[(under_edge + 1) % n] - pts[under_edge]
            sgn = sign(odir[0] * udir[1] - odir[1] * udir[0])
            if sgn == 0:
                raise AssertionError("parallel strands cannot cross")
            idx = len(crossings)
            crossings.append(Crossing(idx, over_edge, under_edge, tp, up,
                                      hit.point, sgn, z_over, z_under))
            per_edge[over_edge].append((tp, idx, "over"))
            per_edge[under_edge].append((up, idx, "under"))

    if len(crossings) > n * (n - 3) // 2:
        raise AssertionError("more crossings than non-adjacent edge pairs")

    walk = []
    for i in range(n):
        walk.append(WalkNode("vertex", i, None, i, ZERO, pts[i],
                             verts3[i][2]))
        for t, idx, role in sorted(per_edge[i], key=lambda e: e[0]):
            walk.append(WalkNode("cross", idx, role, i, t,
                                 crossings[idx].pos, z_at(i, t)))
    return Diagram(poly, sheared, to_sheared, crossings, walk)
