"""Spanning constructions away from R^3.

Planar polygons triangulate directly with no extra vertices.  In five
or more dimensions a generic cone apex spans with n triangles.  In four
dimensions two routes exist: a 3n-triangle disk whose interior misses
the polygon (it may cross itself, so it is only immersed), and an
embedded surface built by dropping the polygon into a hyperplane,
spanning there, and walling the two copies together.
"""

from __future__ import annotations

import math
import random

from .geom import (
    AffineMap,
    ONE,
    Point,
    Rat,
    ZERO,
    affine_rank,
    convex_meet,
    earclip_2d as _earclip_indices,
    orient2d,
    point_on_segment,
    rref,
    segment_param,
    segment_simplex_meet,
    sign,
)
from .mesh import TriMesh, boundary_matches, check_embedded
from .polygon import ClosedPolygon, _circle_points, validate_embedded


# ---------------------------------------------------------------------------
# d = 2

def earclip_2d(poly: ClosedPolygon):
    """Triangulate a planar polygon: exactly n - 2 triangles, no new
    vertices."""
    if poly.dim != 2:
        raise ValueError("earclip_2d expects a planar polygon")
    bad = validate_embedded(poly)
    if bad is not None:
        raise ValueError("polygon is not embedded: %r" % bad)
    pts = poly.vertices
    mesh = TriMesh(2)
    for a, b, c in _earclip_indices(pts):
        mesh.add_triangle(pts[a], pts[b], pts[c], tag="ear")
    n = len(pts)
    assert len(mesh.triangles) == n - 2
    assert len(mesh.vertices) == n
    if check_embedded(mesh) is not None:
        raise AssertionError("triangulation self-intersects")
    if not boundary_matches(mesh, poly):
        raise AssertionError("triangulation boundary mismatch")
    report = {"n": n, "dim": 2, "triangles": n - 2, "euler": 1,
              "strategy": "earclip"}
    return mesh, report


# ---------------------------------------------------------------------------
# d >= 5

def cone_highdim(poly: ClosedPolygon, seed: int = 0, budget: int = 200):
    """Span with the n-triangle fan from a generic apex.

    Apexes are sampled from a seeded rational grid around the polygon
    and accepted only when the fan passes the exact embeddedness check.
    """
    if poly.dim < 5:
        raise ValueError("cone construction needs dimension >= 5")
    verts = poly.vertices
    n = len(verts)
    d = poly.dim
    lo = [min(v[i] for v in verts) for i in range(d)]
    hi = [max(v[i] for v in verts) for i in range(d)]
    span = [max(hi[i] - lo[i], ONE) for i in range(d)]
    rng = random.Random(seed)
    for attempt in range(budget):
        coords = [lo[i] - span[i]
                  + Rat(rng.randint(0, 12 * int(span[i] * 4)), 4)
                  for i in range(d)]
        apex = Point(coords)
        if any(affine_rank([verts[i], verts[(i + 1) % n], apex]) != 2
               for i in range(n)):
            continue
        mesh = TriMesh(d)
        for i in range(n):
            mesh.add_triangle(verts[i], verts[(i + 1) % n], apex,
                              tag="cone %d" % i)
        if check_embedded(mesh) is not None:
            continue
        if not boundary_matches(mesh, poly):
            continue
        assert len(mesh.triangles) == n
        report = {"n": n, "dim": d, "triangles": n, "euler": 1,
                  "strategy": "cone", "seed": seed, "attempt": attempt,
                  "apex": apex.coords}
        return mesh, report
    raise AssertionError("no clean cone apex in %d attempts (seed %d)"
                         % (budget, seed))


# ---------------------------------------------------------------------------
# d = 4, immersed

class BadSet:
    """Join sets spanned by pairs of extended edge lines of the polygon.

    lines holds (origin, direction) per edge; cells holds one entry per
    unordered pair i <= j with the affine span rank of the two lines
    (1, 2 or 3) and points spanning that flat.  Any line meeting two
    edge lines lies inside one of these flats, so a region avoiding all
    cells sees the polygon in general position.
    """

    __slots__ = ("lines", "cells")

    def __init__(self, poly: ClosedPolygon):
        verts = poly.vertices
        n = len(verts)
        self.lines = [(verts[i], verts[(i + 1) % n] - verts[i])
                      for i in range(n)]
        self.cells = []
        for i in range(n):
            oi, di = self.lines[i]
            for j in range(i, n):
                oj, dj = self.lines[j]
                pts = [oi, oi + di, oj, oj + dj]
                rank = affine_rank(pts)
                self.cells.append((i, j, rank, pts))


class FlatPlacement:
    """A verified 2-flat and small convex polygon for the immersed disk.

    F is (origin, dir1, dir2); Q lists the polygon's 4D vertices; center
    is the fan apex; clearances records, per bad-set cell, how the flat
    met it ('empty', 'point' or 'line') and that Q's hull missed it.
    """

    __slots__ = ("origin", "dir1", "dir2", "q_points", "center",
                 "clearances")

    def __init__(self, origin, dir1, dir2, q_points, center, clearances):
        self.origin = origin
        self.dir1 = dir1
        self.dir2 = dir2
        self.q_points = q_points
        self.center = center
        self.clearances = clearances


def _flat_meet(origin, dir1, dir2, cell_pts):
    """Trace of an affine flat inside the plane (origin, dir1, dir2).

    Returns ('empty', None), ('point', (a, b)), ('line', ((a, b),
    (da, db))) or ('all', None) in the plane's own coordinates.
    """
    base = cell_pts[0]
    gens = []
    rows_for_rank = [list((p - base).coords) for p in cell_pts[1:]]
    red, pivots = rref(rows_for_rank)
    for r in range(len(pivots)):
        gens.append(red[r])
    # unknowns: a, b (plane coords), then one coefficient per generator
    dim = origin.dim
    cols = 2 + len(gens)
    aug = []
    for c in range(dim):
        row = [dir1[c], dir2[c]] + [-g[c] for g in gens]
        row.append(base[c] - origin[c])
        aug.append(row)
    red, pivots = rref(aug)
    if cols in pivots:
        return ("empty", None)
    part = [ZERO] * cols
    for r, c in enumerate(pivots):
        part[c] = red[r][cols]
    free = [c for c in range(cols) if c not in pivots]
    dirs_ab = []
    for f in free:
        vec = [ZERO] * cols
        vec[f] = ONE
        for r, c in enumerate(pivots):
            vec[c] = -red[r][f]
        if vec[0] != 0 or vec[1] != 0:
            dirs_ab.append((vec[0], vec[1]))
    if not dirs_ab:
        return ("point", (part[0], part[1]))
    d0 = dirs_ab[0]
    for da, db in dirs_ab[1:]:
        if d0[0] * db - d0[1] * da != 0:
            return ("all", None)
    return ("line", ((part[0], part[1]), d0))


def _point_in_convex_2d(p, hull) -> bool:
    m = len(hull)
    s = sign(orient2d(hull[0], hull[1], hull[2]))
    return all(sign(orient2d(hull[i], hull[(i + 1) % m], p)) * s >= 0
               for i in range(m))


def _line_misses_convex_2d(pt, direction, hull) -> bool:
    px, py = pt
    dx, dy = direction
    sides = [sign(dx * (q[1] - py) - dy * (q[0] - px)) for q in hull]
    return all(s > 0 for s in sides) or all(s < 0 for s in sides)


def immersed_disk_4d(poly: ClosedPolygon, seed: int = 0, budget: int = 60):
    """Span in R^4 with 3n triangles whose interiors miss the polygon.

    A generic 2-flat F avoids containing any join flat of the edge
    lines, so it meets each in at most a line.  A convex n-gon Q is
    placed in F around a point clear of those traces and outside the
    polygon's hull, then joined to P by an annulus of 2n triangles plus
    an n-triangle fan over Q.  The surface may cross itself; what is
    verified is that it is a disk, that its boundary is exactly P, and
    that nothing but that boundary touches P.
    """
    if poly.dim != 4:
        raise ValueError("immersed disk construction needs dimension 4")
    verts = poly.vertices
    n = len(verts)
    bad = BadSet(poly)
    rng = random.Random(seed)
    last = "no attempt ran"
    for attempt in range(budget):
        origin = Point([Rat(rng.randint(-64, 64), 8) for _ in range(4)])
        dir1 = Point([Rat(rng.randint(-8, 8)) for _ in range(4)])
        dir2 = Point([Rat(rng.randint(-8, 8)) for _ in range(4)])
        if affine_rank([origin, origin + dir1, origin + dir2]) != 2:
            continue
        traces = []
        degenerate = False
        for i, j, rank, pts in bad.cells:
            kind, data = _flat_meet(origin, dir1, dir2, pts)
            if kind == "all":
                degenerate = True
                break
            traces.append((i, j, rank, kind, data))
        if degenerate:
            continue
        placement = _place_disk(poly, origin, dir1, dir2, traces, rng)
        if placement is None:
            continue
        result = _assemble_disk(poly, placement)
        if result is None:
            last = "assembly verification failed (attempt %d)" % attempt
            continue
        mesh, report = result
        report.update({"seed": seed, "attempt": attempt})
        return mesh, report
    raise AssertionError("no valid flat placement in %d attempts (seed %d): %s"
                         % (budget, seed, last))


def _place_disk(poly, origin, dir1, dir2, traces, rng):
    verts = poly.vertices
    n = len(verts)

    def to4(a, b):
        return origin + dir1.scale(a) + dir2.scale(b)

    for _ in range(40):
        za = Rat(rng.randint(-64, 64), 8)
        zb = Rat(rng.randint(-64, 64), 8)
        clear2 = None
        ok = True
        for i, j, rank, kind, data in traces:
            if kind == "empty":
                continue
            if kind == "point":
                dx, dy = za - data[0], zb - data[1]
                d2 = dx * dx + dy * dy
            else:
                (px, py), (dx, dy) = data
                cr = dx * (zb - py) - dy * (za - px)
                d2 = cr * cr / (dx * dx + dy * dy)
            if d2 == 0:
                ok = False
                break
            if clear2 is None or d2 < clear2:
                clear2 = d2
        if not ok:
            continue
        center4 = to4(za, zb)
        if convex_meet([center4], verts) is not None:
            continue
        if clear2 is None:
            clear2 = ONE
        radius = ONE
        while 4 * radius * radius > clear2:
            radius = radius / 2
        for _ in range(4):
            angles = [2 * math.pi * k / n for k in range(n)]
            ring = _circle_points(angles, radius)
            hull2 = [Point((q[0] + za, q[1] + zb)) for q in ring]
            if not _hull_clear(hull2, traces):
                radius = radius / 2
                continue
            q4 = [to4(q[0], q[1]) for q in hull2]
            if convex_meet(q4, verts) is not None:
                radius = radius / 2
                continue
            clearances = [(i, j, rank, kind) for i, j, rank, kind, _
                          in traces]
            return FlatPlacement(origin, dir1, dir2, q4, center4,
                                 clearances)
    return None


def _hull_clear(hull2, traces) -> bool:
    m = len(hull2)
    s = sign(orient2d(hull2[0], hull2[1], hull2[2]))
    if s == 0:
        return False
    for i in range(m):
        if sign(orient2d(hull2[i], hull2[(i + 1) % m],
                         hull2[(i + 2) % m])) != s:
            return False
    for i, j, rank, kind, data in traces:
        if kind == "empty":
            continue
        if kind == "point":
            if _point_in_convex_2d(Point(data), hull2):
                return False
        else:
            if not _line_misses_convex_2d(*data, hull2):
                return False
    return True


def polygon_contact_clean(mesh: TriMesh, poly: ClosedPolygon):
    """Witness that a mesh touches the polygon beyond shared boundary.

    Allowed contacts: a polygon edge that is itself a triangle side, or
    a polygon corner that is a vertex of the triangle it meets.  Returns
    None when every contact is of that form, else a description string.
    """
    verts = poly.vertices
    n = len(verts)
    tri_pts = [mesh.triangle_points(t) for t in range(len(mesh.triangles))]
    for e in range(n):
        a, b = verts[e], verts[(e + 1) % n]
        for ti, pts in enumerate(tri_pts):
            kind, data = segment_simplex_meet(a, b, pts)
            if kind == "empty":
                continue
            if kind == "point":
                hit = a + (b - a).scale(data)
                if (hit == a or hit == b) and hit in pts:
                    continue
                return ("edge %d pierces triangle %d at %s"
                        % (e, ti, tuple(hit.coords)))
            t0, t1 = data
            if t0 == 0 and t1 == 1 and a in pts and b in pts:
                continue
            return "edge %d overlaps triangle %d" % (e, ti)
    return None


def _assemble_disk(poly, placement):
    verts = poly.vertices
    n = len(verts)
    q4 = placement.q_points
    center = placement.center
    for j in range(n):
        tris = ([verts[j], verts[(j + 1) % n], q4[(j + 1) % n]],
                [verts[j], q4[j], q4[(j + 1) % n]],
                [q4[j], q4[(j + 1) % n], center])
        if any(affine_rank(t) != 2 for t in tris):
            return None
    mesh = TriMesh(4)
    for j in range(n):
        mesh.add_triangle(verts[j], verts[(j + 1) % n], q4[(j + 1) % n],
                          tag="annulus %d" % j)
        mesh.add_triangle(verts[j], q4[j], q4[(j + 1) % n],
                          tag="annulus %d" % j)
        mesh.add_triangle(q4[j], q4[(j + 1) % n], center, tag="fan %d" % j)
    if polygon_contact_clean(mesh, poly) is not None:
        return None
    if mesh.validate_manifold():
        return None
    if not boundary_matches(mesh, poly):
        return None
    assert len(mesh.triangles) == 3 * n
    assert len(mesh.vertices) == 2 * n + 1
    assert len(mesh.edge_census()) == 5 * n
    assert mesh.euler_characteristic() == 1
    assert mesh.boundary_components() == 1
    report = {"n": n, "dim": 4, "triangles": 3 * n, "euler": 1,
              "boundary_cycles": 1, "strategy": "immersed4",
              "annulus": 2 * n, "fan": n,
              "interior_clear": True}
    return mesh, report


# ---------------------------------------------------------------------------
# d = 4, embedded

def embedded_4d(poly: ClosedPolygon, seed: int = 0, budget: int = 30,
                rule: str = "orientation"):
    """Embedded spanning surface in R^4 with at most 21 n^2 triangles.

    After a seeded shear, dropping the last coordinate lands the polygon
    on an embedded copy P* in a hyperplane; the R^3 pipeline spans P*
    there, and a vertical wall of two triangles per boundary edge joins
    the spanning surface back up to the polygon.  A polygon already
    parallel to the hyperplane skips the wall.
    """
    if poly.dim != 4:
        raise ValueError("embedded construction needs dimension 4")
    from .seifert import spanning_surface_r3

    verts = poly.vertices
    n = len(verts)
    heights = [v[3] for v in verts]
    if len(set(heights)) == 1:
        p3 = ClosedPolygon([Point((v[0], v[1], v[2])) for v in verts])
        m3, rep3 = spanning_surface_r3(p3, seed=seed, rule=rule)
        mesh = TriMesh(4)
        h = heights[0]
        for t in range(len(m3.triangles)):
            pa, pb, pc = m3.triangle_points(t)
            mesh.add_triangle(Point((pa[0], pa[1], pa[2], h)),
                              Point((pb[0], pb[1], pb[2], h)),
                              Point((pc[0], pc[1], pc[2], h)),
                              tag=m3.provenance[t])
        if not boundary_matches(mesh, poly):
            raise AssertionError("lifted boundary mismatch")
        report = _embedded_report(mesh, rep3, n, 0, seed, 0)
        return mesh, report
    rng = random.Random(seed)
    last: Exception | None = None
    for attempt in range(budget):
        if attempt == 0:
            slopes = [ZERO, ZERO, ZERO]
        else:
            slopes = [Rat(rng.randint(-32, 32), 16) for _ in range(3)]
        try:
            mesh, report = _embedded_attempt(poly, slopes, seed, attempt,
                                             rule)
            return mesh, report
        except (ValueError, AssertionError) as exc:
            last = exc
    raise AssertionError("no clean projection in %d attempts (seed %d): %s"
                         % (budget, seed, last))


def _embedded_attempt(poly, slopes, seed, attempt, rule="orientation"):
    from .seifert import spanning_surface_r3

    verts = poly.vertices
    n = len(verts)
    shear = AffineMap.shear_last_into(4, slopes)
    sheared = [shear.apply(v) for v in verts]
    minh = min(v[3] for v in sheared)
    lift = AffineMap.translation((ZERO, ZERO, ZERO, ONE - minh))
    frame = lift.compose(shear)
    pv = [frame.apply(v) for v in verts]
    p_prime = ClosedPolygon(pv)
    p3 = ClosedPolygon([Point((v[0], v[1], v[2])) for v in pv])
    if validate_embedded(p3) is not None:
        raise ValueError("projection not embedded")
    m3, rep3 = spanning_surface_r3(p3, seed=seed, rule=rule)
    mesh = TriMesh(4)
    for t in range(len(m3.triangles)):
        pa, pb, pc = m3.triangle_points(t)
        mesh.add_triangle(Point((pa[0], pa[1], pa[2], ZERO)),
                          Point((pb[0], pb[1], pb[2], ZERO)),
                          Point((pc[0], pc[1], pc[2], ZERO)),
                          tag=m3.provenance[t])
    p3v = p3.vertices
    walls = 0
    for ia, ib in m3.boundary_edges():
        wa, wb = m3.vertices[ia], m3.vertices[ib]
        hosts = [i for i in range(n)
                 if point_on_segment(wa, p3v[i], p3v[(i + 1) % n])
                 and point_on_segment(wb, p3v[i], p3v[(i + 1) % n])]
        assert len(hosts) == 1
        host = hosts[0]
        ea, eb = pv[host], pv[(host + 1) % n]
        ta = segment_param(wa, p3v[host], p3v[(host + 1) % n])
        tb = segment_param(wb, p3v[host], p3v[(host + 1) % n])
        ua = ea + (eb - ea).scale(ta)
        ub = ea + (eb - ea).scale(tb)
        wa4 = Point((wa[0], wa[1], wa[2], ZERO))
        wb4 = Point((wb[0], wb[1], wb[2], ZERO))
        tag = "wall4 %d" % host
        if ua.coords <= ub.coords:
            mesh.add_triangle(wa4, wb4, ua, tag=tag)
            mesh.add_triangle(wb4, ub, ua, tag=tag)
        else:
            mesh.add_triangle(wa4, wb4, ub, tag=tag)
            mesh.add_triangle(wa4, ub, ua, tag=tag)
        walls += 2
    assert walls == 2 * len(m3.boundary_edges())
    problems = mesh.validate_manifold()
    if problems:
        raise AssertionError("wall assembly not manifold: %s" % problems[0])
    assert mesh.euler_characteristic() == rep3["euler"]
    if not boundary_matches(mesh, p_prime):
        raise AssertionError("walled boundary mismatch")
    if check_embedded(mesh) is not None:
        raise AssertionError("walled surface self-intersects")
    final = mesh.transform(frame.inverse())
    if not boundary_matches(final, poly):
        raise AssertionError("pulled-back boundary mismatch")
    report = _embedded_report(final, rep3, n, walls, seed, attempt)
    return final, report


def _embedded_report(mesh, rep3, n, walls, seed, attempt):
    t = len(mesh.triangles)
    assert t <= 21 * n * n
    orientable, _ = mesh.orientation_propagate()
    return {
        "n": n,
        "dim": 4,
        "triangles": t,
        "wall_triangles": walls,
        "base_triangles": rep3["triangles"],
        "crossings": rep3["crossings"],
        "circuits": rep3["circuits"],
        "euler": mesh.euler_characteristic(),
        "boundary_cycles": mesh.boundary_components(),
        "orientable": orientable,
        "genus": mesh.genus() if orientable else None,
        "embedded": True,
        "strategy": "embedded4",
        "seed": seed,
        "attempt": attempt,
    }
