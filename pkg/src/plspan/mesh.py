"""Triangle meshes with exact coordinates.

A TriMesh is a vertex pool plus index triples.  Vertices are pooled by
exact coordinates, so two triangles touch in the mesh sense iff they
share pool indices.  Validation, Euler characteristic, orientability,
boundary extraction and the embeddedness check all live here; the
surface builders only ever append triangles.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .geom import (
    Point,
    affine_rank,
    nullspace,
    orient2d,
    rat,
    rat_str,
    seg_intersect_2d,
    sign,
    simplex_intersect,
)


class TriMesh:
    def __init__(self, dim: int):
        if dim < 2:
            raise ValueError("mesh dimension must be at least 2")
        self.dim = dim
        self.vertices: list[Point] = []
        self.triangles: list[tuple[int, int, int]] = []
        self.provenance: list[str] = []
        self._pool: dict[tuple, int] = {}
        # maintained incrementally; validate_manifold recomputes from
        # scratch and cross-checks
        self._edge_count: dict[tuple[int, int], int] = {}

    # -- construction -----------------------------------------------------

    def add_vertex(self, p: Point) -> int:
        if p.dim != self.dim:
            raise ValueError("vertex dimension mismatch")
        idx = self._pool.get(p.coords)
        if idx is None:
            idx = len(self.vertices)
            self.vertices.append(p)
            self._pool[p.coords] = idx
        return idx

    def add_triangle(self, a: Point, b: Point, c: Point, tag: str = "") -> int:
        i, j, k = self.add_vertex(a), self.add_vertex(b), self.add_vertex(c)
        return self.add_triangle_indices(i, j, k, tag)

    def add_triangle_indices(self, i: int, j: int, k: int, tag: str = "") -> int:
        n = len(self.vertices)
        if not (0 <= i < n and 0 <= j < n and 0 <= k < n):
            raise ValueError("triangle references missing vertex")
        self.triangles.append((i, j, k))
        self.provenance.append(tag)
        for e in ((i, j), (j, k), (k, i)):
            key = (min(e), max(e))
            self._edge_count[key] = self._edge_count.get(key, 0) + 1
        return len(self.triangles) - 1

    def triangle_points(self, t: int) -> tuple[Point, Point, Point]:
        i, j, k = self.triangles[t]
        return self.vertices[i], self.vertices[j], self.vertices[k]

    def transform(self, affine) -> "TriMesh":
        """Image mesh under an affine map; indices and tags carry over."""
        out = TriMesh(self.dim)
        for p in self.vertices:
            out.add_vertex(affine.apply(p))
        if len(out.vertices) != len(self.vertices):
            raise ValueError("map identified distinct vertices")
        for (i, j, k), tag in zip(self.triangles, self.provenance):
            out.add_triangle_indices(i, j, k, tag)
        return out

    # -- census -----------------------------------------------------------

    def edge_census(self) -> dict[tuple[int, int], int]:
        census: dict[tuple[int, int], int] = {}
        for i, j, k in self.triangles:
            for e in ((i, j), (j, k), (k, i)):
                key = (min(e), max(e))
                census[key] = census.get(key, 0) + 1
        return census

    def boundary_edges(self) -> list[tuple[int, int]]:
        return sorted(e for e, c in self.edge_census().items() if c == 1)

    def euler_characteristic(self) -> int:
        used = set()
        for tri in self.triangles:
            used.update(tri)
        return len(used) - len(self.edge_census()) + len(self.triangles)

    def validate_manifold(self) -> list[str]:
        """Structural checks; returns a list of problems (empty = good).

        Conditions: all indices valid, every triangle affinely
        nondegenerate, no repeated vertex inside a triangle, no duplicate
        triangles, every edge in one or two triangles, and the
        incremental edge census matches a recount.
        """
        problems = []
        nv = len(self.vertices)
        seen = set()
        for t, (i, j, k) in enumerate(self.triangles):
            if not all(0 <= x < nv for x in (i, j, k)):
                problems.append("triangle %d references a missing vertex" % t)
                continue
            if len({i, j, k}) < 3:
                problems.append("triangle %d repeats a vertex" % t)
                continue
            key = frozenset((i, j, k))
            if key in seen:
                problems.append("triangle %d duplicates another" % t)
            seen.add(key)
            if affine_rank(self.triangle_points(t)) != 2:
                problems.append("triangle %d is degenerate" % t)
        census = self.edge_census()
        for e, c in census.items():
            if c > 2:
                problems.append("edge %s lies in %d triangles" % (e, c))
        if census != self._edge_count:
            problems.append("incremental edge census out of sync")
        return problems

    # -- topology ---------------------------------------------------------

    def connected_components(self) -> int:
        """Components of the triangle adjacency graph (shared edges)."""
        nt = len(self.triangles)
        parent = list(range(nt))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        by_edge: dict[tuple[int, int], list[int]] = {}
        for t, (i, j, k) in enumerate(self.triangles):
            for e in ((i, j), (j, k), (k, i)):
                by_edge.setdefault((min(e), max(e)), []).append(t)
        for tris in by_edge.values():
            for other in tris[1:]:
                ra, rb = find(tris[0]), find(other)
                if ra != rb:
                    parent[ra] = rb
        return len({find(t) for t in range(nt)})

    def boundary_components(self) -> int:
        """Count cycles formed by the multiplicity-1 edges."""
        edges = self.boundary_edges()
        if not edges:
            return 0
        parent: dict[int, int] = {}

        def find(x):
            parent.setdefault(x, x)
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in edges:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
        return len({find(u) for e in edges for u in e})

    def orientation_propagate(self):
        """Try to orient all triangles consistently.

        Returns (True, orientations) with orientations[t] in {+1, -1}
        meaning keep or flip the stored vertex order, or (False, cycle)
        where cycle is a list of triangle indices forming a closed chain
        that cannot be oriented.
        """
        nt = len(self.triangles)
        adj: dict[int, list[tuple[int, int]]] = {t: [] for t in range(nt)}
        by_edge: dict[tuple[int, int], list[tuple[int, int]]] = {}
        for t, (i, j, k) in enumerate(self.triangles):
            for a, b in ((i, j), (j, k), (k, i)):
                key = (min(a, b), max(a, b))
                # +1 when the triangle traverses the edge as (min, max)
                direction = 1 if a < b else -1
                by_edge.setdefault(key, []).append((t, direction))
        for key, lst in by_edge.items():
            if len(lst) == 2:
                (t1, d1), (t2, d2) = lst
                # consistent orientation wants opposite traversal
                rel = -d1 * d2  # +1 when already opposite
                adj[t1].append((t2, rel))
                adj[t2].append((t1, rel))
        orient = [0] * nt
        parent_edge: dict[int, int] = {}
        for start in range(nt):
            if orient[start] != 0:
                continue
            orient[start] = 1
            stack = [start]
            while stack:
                t = stack.pop()
                for u, rel in adj[t]:
                    want = orient[t] * rel
                    if orient[u] == 0:
                        orient[u] = want
                        parent_edge[u] = t
                        stack.append(u)
                    elif orient[u] != want:
                        # conflict: walk both tree paths to the root
                        def path_to_root(x):
                            out = [x]
                            while x in parent_edge:
                                x = parent_edge[x]
                                out.append(x)
                            return out
                        pa = path_to_root(t)
                        pb = path_to_root(u)
                        sa, sb = set(pa), set(pb)
                        meet = next(x for x in pa if x in sb)
                        cyc = pa[:pa.index(meet) + 1]
                        cyc += list(reversed(pb[:pb.index(meet)]))
                        return (False, cyc)
        return (True, orient)

    def genus(self) -> int:
        """Genus of a connected orientable mesh, boundary allowed."""
        if not self.triangles:
            raise ValueError("empty mesh has no genus")
        if self.connected_components() != 1:
            raise ValueError("genus needs a connected mesh")
        ok, _ = self.orientation_propagate()
        if not ok:
            raise ValueError("mesh is not orientable")
        chi = self.euler_characteristic()
        b = self.boundary_components()
        g2 = 2 - chi - b
        if g2 < 0 or g2 % 2 != 0:
            raise ValueError("inconsistent genus data (chi=%d, b=%d)" % (chi, b))
        return g2 // 2


# ---------------------------------------------------------------------------
# embeddedness

class EmbeddingViolation:
    """Two triangles meeting away from their shared face."""

    __slots__ = ("tri_a", "tri_b", "point")

    def __init__(self, tri_a: int, tri_b: int, point: Point):
        self.tri_a = tri_a
        self.tri_b = tri_b
        self.point = point

    def __repr__(self):
        return "EmbeddingViolation(%d, %d, %r)" % (self.tri_a, self.tri_b,
                                                   self.point)


def _tri_data(mesh: TriMesh, t: int):
    pts = mesh.triangle_points(t)
    lo = tuple(min(p[i] for p in pts) for i in range(mesh.dim))
    hi = tuple(max(p[i] for p in pts) for i in range(mesh.dim))
    base = pts[0]
    dirs = [list((pts[1] - base).coords), list((pts[2] - base).coords)]
    annih = nullspace(dirs)  # dim-2 functionals vanishing on the plane
    return pts, set(mesh.triangles[t]), lo, hi, base, annih


def _functional_values(annih, base, other_pts):
    """Rows of exact values of each plane functional at other_pts."""
    return [[sum(wc * (qc - bc) for wc, qc, bc
                 in zip(w, q.coords, base.coords)) for q in other_pts]
            for w in annih]


def _row_separates(rows) -> bool:
    return any(all(v > 0 for v in row) or all(v < 0 for v in row)
               for row in rows)


def _plane_axes(pts):
    """Two coordinate axes onto which the triangle's plane projects
    injectively."""
    d0 = pts[1] - pts[0]
    d1 = pts[2] - pts[0]
    d = pts[0].dim
    for i in range(d):
        for j in range(i + 1, d):
            if d0[i] * d1[j] - d0[j] * d1[i] != 0:
                return i, j
    raise AssertionError("degenerate triangle")


def _in_closed_tri_2d(p, a, b, c) -> bool:
    s = orient2d(a, b, c)
    return (orient2d(a, b, p) * s >= 0 and orient2d(b, c, p) * s >= 0
            and orient2d(c, a, p) * s >= 0)


def _coplanar_contact_clean(pts_a, pts_b, shared_pts) -> bool:
    """Exact contact classification for a coplanar triangle pair.

    True when the triangles meet in nothing beyond the face spanned by
    their shared vertices."""
    i, j = _plane_axes(pts_a)
    a2 = [Point((p[i], p[j])) for p in pts_a]
    b2 = [Point((p[i], p[j])) for p in pts_b]
    sh2 = [Point((p[i], p[j])) for p in shared_pts]
    if len(sh2) == 2:
        # triangles on strictly opposite sides of the shared edge meet
        # exactly in that edge
        u, v = sh2
        oa = next(p for p in a2 if p != u and p != v)
        ob = next(p for p in b2 if p != u and p != v)
        return sign(orient2d(u, v, oa)) * sign(orient2d(u, v, ob)) < 0
    w = sh2[0] if sh2 else None
    for ea in range(3):
        pa, qa = a2[ea], a2[(ea + 1) % 3]
        for eb in range(3):
            pb, qb = b2[eb], b2[(eb + 1) % 3]
            hit = seg_intersect_2d(pa, qa, pb, qb)
            if hit.kind == "empty":
                continue
            if hit.kind == "point" and w is not None and hit.point == w:
                continue
            return False
    for p in a2:
        if (w is None or p != w) and _in_closed_tri_2d(p, *b2):
            return False
    for p in b2:
        if (w is None or p != w) and _in_closed_tri_2d(p, *a2):
            return False
    return True


def _plane_meet_points(pts, vals):
    """Where a triangle meets a plane, given the plane functional's
    values at its vertices (not all of one strict sign)."""
    meets = []
    for i in range(3):
        if vals[i] == 0:
            meets.append(pts[i])
    for i in range(3):
        j = (i + 1) % 3
        vi, vj = vals[i], vals[j]
        if (vi > 0 and vj < 0) or (vi < 0 and vj > 0):
            t = vi / (vi - vj)
            meets.append(pts[i] + (pts[j] - pts[i]).scale(t))
    return meets


def _crossing_planes_contact_3d(pts_a, pts_b, vals_ab, vals_ba, shared_pts):
    """Contact classification for 3D triangles in distinct crossing
    planes: 'clean' when they meet in at most the shared face, else
    'dirty'.  Both triangles are known to straddle or touch the other's
    plane, so each meets the common line in a nonempty interval."""
    meets_a = _plane_meet_points(pts_a, vals_ba)
    meets_b = _plane_meet_points(pts_b, vals_ab)
    axis = None
    for i in range(3):
        if any(p[i] != meets_a[0][i] for p in meets_a[1:]) \
                or any(p[i] != meets_a[0][i] for p in meets_b):
            axis = i
            break
    if axis is None:
        # both intervals degenerate to the same single point
        touch = meets_a[0]
        return "clean" if (len(shared_pts) == 1
                           and touch == shared_pts[0]) else "dirty"
    pa = [p[axis] for p in meets_a]
    pb = [p[axis] for p in meets_b]
    lo = max(min(pa), min(pb))
    hi = min(max(pa), max(pb))
    if lo > hi:
        return "clean"
    if lo == hi and len(shared_pts) == 1 and lo == shared_pts[0][axis]:
        return "clean"
    return "dirty"


def check_embedded(mesh: TriMesh) -> Optional[EmbeddingViolation]:
    """Exact pairwise embeddedness of all triangles.

    Triangles may meet only in the face spanned by their shared pool
    vertices: nothing, one vertex, or one edge.  Returns None when the
    mesh is embedded, otherwise a violation with an exact witness point.

    Pairs are pruned by a sweep over the first axis, then exact bounding
    boxes, then plane-separation functionals; only survivors reach the
    full simplex intersection.
    """
    nt = len(mesh.triangles)
    data = [_tri_data(mesh, t) for t in range(nt)]
    order = sorted(range(nt), key=lambda t: data[t][2][0])
    dim = mesh.dim
    for pos, a in enumerate(order):
        pts_a, vs_a, lo_a, hi_a, base_a, ann_a = data[a]
        for b in order[pos + 1:]:
            pts_b, vs_b, lo_b, hi_b, base_b, ann_b = data[b]
            if lo_b[0] > hi_a[0]:
                break  # sweep axis: no later triangle can overlap
            if any(lo_b[i] > hi_a[i] or lo_a[i] > hi_b[i]
                   for i in range(1, dim)):
                continue
            shared = vs_a & vs_b
            if len(shared) >= 3:
                cen = Point(sum(p[i] for p in pts_a) / 3 for i in range(dim))
                return EmbeddingViolation(a, b, cen)
            vals_ab = _functional_values(ann_a, base_a, pts_b)
            if _row_separates(vals_ab):
                continue
            vals_ba = _functional_values(ann_b, base_b, pts_a)
            if _row_separates(vals_ba):
                continue
            allowed = [mesh.vertices[v] for v in shared]
            coplanar = all(v == 0 for row in vals_ab for v in row)
            if coplanar:
                if _coplanar_contact_clean(pts_a, pts_b, allowed):
                    continue
            elif len(shared) == 2:
                # distinct planes through a common edge meet exactly in
                # the line of that edge, and each triangle meets that
                # line exactly in the edge itself
                continue
            elif dim == 3:
                verdict = _crossing_planes_contact_3d(
                    pts_a, pts_b, vals_ab[0], vals_ba[0], allowed)
                if verdict == "clean":
                    continue
            elif len(shared) == 1:
                # plane of one triangle pinning the other to the shared
                # vertex: contact is that vertex alone
                apex = allowed[0]
                others_b = [v for v in pts_b if v != apex]
                others_a = [v for v in pts_a if v != apex]
                if _row_separates(_functional_values(ann_a, base_a,
                                                     others_b)):
                    continue
                if _row_separates(_functional_values(ann_b, base_b,
                                                     others_a)):
                    continue
            witness = simplex_intersect(pts_a, pts_b, allowed)
            if witness is not None:
                return EmbeddingViolation(a, b, witness)
    return None


# ---------------------------------------------------------------------------
# boundary against a closed polygon

def boundary_matches(mesh: TriMesh, polygon) -> bool:
    """Does the mesh boundary trace the polygon exactly once?

    The multiplicity-1 edges must form a single closed cycle; every
    boundary vertex must lie on the polygon; each polygon edge must be
    covered, in order, by consecutive boundary vertices from corner to
    corner.  Either traversal direction is accepted.
    """
    from .geom import segment_param

    edges = mesh.boundary_edges()
    if not edges:
        return False
    deg: dict[int, int] = {}
    for u, v in edges:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    if any(d != 2 for d in deg.values()):
        return False
    if mesh.boundary_components() != 1:
        return False

    pverts = polygon.vertices
    n = len(pverts)
    # classify boundary vertices: corner index, or (edge, param) strictly
    # inside an edge
    corner_of: dict[int, int] = {}
    interior_of: dict[int, tuple[int, object]] = {}
    corner_pool = {p.coords: i for i, p in enumerate(pverts)}
    for bv in deg:
        p = mesh.vertices[bv]
        ci = corner_pool.get(p.coords)
        if ci is not None:
            corner_of[bv] = ci
            continue
        hit = None
        for e in range(n):
            t = segment_param(p, pverts[e], pverts[(e + 1) % n])
            if t is not None and 0 < t < 1:
                hit = (e, t)
                break
        if hit is None:
            return False  # boundary vertex off the polygon
        interior_of[bv] = hit
    if len(corner_of) != n or set(corner_of.values()) != set(range(n)):
        return False

    # expected consecutive pairs along each polygon edge
    vert_at_corner = {ci: bv for bv, ci in corner_of.items()}
    expected = set()
    count = 0
    for e in range(n):
        inner = sorted(((t, bv) for bv, (ei, t) in interior_of.items()
                        if ei == e), key=lambda x: x[0])
        chain = [vert_at_corner[e]] + [bv for _, bv in inner] \
            + [vert_at_corner[(e + 1) % n]]
        for u, v in zip(chain, chain[1:]):
            if u == v:
                return False
            expected.add((min(u, v), max(u, v)))
            count += 1
    if count != len(edges):
        return False
    return expected == set(edges)


# ---------------------------------------------------------------------------
# serialization

def write_off(mesh: TriMesh, path: str) -> None:
    """Exact mesh format: rational coordinates, provenance in comments."""
    lines = ["pl-off %d" % mesh.dim,
             "%d %d 0" % (len(mesh.vertices), len(mesh.triangles))]
    for p in mesh.vertices:
        lines.append(" ".join(rat_str(c) for c in p.coords))
    for (i, j, k), tag in zip(mesh.triangles, mesh.provenance):
        face = "3 %d %d %d" % (i, j, k)
        if tag:
            face += " # " + tag
        lines.append(face)
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_off(path: str) -> TriMesh:
    with open(path) as fh:
        raw = [ln.strip() for ln in fh]
    lines = [ln for ln in raw if ln and not ln.startswith("#")]
    head = lines[0].split()
    if len(head) != 2 or head[0] != "pl-off":
        raise ValueError("not a pl-off file")
    dim = int(head[1])
    nv, nf, _ = (int(x) for x in lines[1].split())
    if len(lines) != 2 + nv + nf:
        raise ValueError("truncated pl-off file")
    mesh = TriMesh(dim)
    for ln in lines[2:2 + nv]:
        toks = ln.split()
        if len(toks) != dim:
            raise ValueError("bad vertex line: %r" % ln)
        mesh.add_vertex(Point([rat(t) for t in toks]))
    if len(mesh.vertices) != nv:
        raise ValueError("pl-off repeats a vertex")
    for ln in lines[2 + nv:]:
        body, _, tag = ln.partition("#")
        toks = body.split()
        if len(toks) != 4 or toks[0] != "3":
            raise ValueError("bad face line: %r" % ln)
        i, j, k = (int(t) for t in toks[1:])
        mesh.add_triangle_indices(i, j, k, tag.strip())
    return mesh


def export_obj(mesh: TriMesh, path: str) -> None:
    """Viewer convenience, 3D only.  Coordinates degrade to floats."""
    if mesh.dim != 3:
        raise ValueError("OBJ export is only defined for meshes in R^3")
    lines = []
    for p in mesh.vertices:
        lines.append("v %.17g %.17g %.17g" % tuple(float(c) for c in p.coords))
    for i, j, k in mesh.triangles:
        lines.append("f %d %d %d" % (i + 1, j + 1, k + 1))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def import_obj(path: str) -> TriMesh:
    raise ValueError("OBJ floats cannot round-trip exact coordinates; "
                     "use read_off")
