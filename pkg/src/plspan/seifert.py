"""Spanning surface construction in R^3 via circuit smoothing.

Pipeline: project the polygon to a proper diagram, split every crossing
open by placing four vertices around it, reconnect the strands so the
shadow falls apart into disjoint simple circuits, rank the circuits by
containment depth, then span: one triangulated disk per circuit pushed
below the projection plane, two vertical wall triangles from each
circuit edge up to the lifted polygon, and two bridge triangles per
crossing joining the strands where they swap.  All geometry is exact;
every structural claim the construction relies on is re-verified on the
finished mesh.
"""

from __future__ import annotations

from .geom import ONE, Point, Rat, ZERO, earclip_2d, rat, seg_intersect_2d
from .mesh import TriMesh, boundary_matches, check_embedded
from .polygon import ClosedPolygon

SIDES = ("in_over", "out_over", "in_under", "out_under")


class SmoothingError(RuntimeError):
    """Smoothing produced a degenerate circuit; retry with smaller offsets."""


class MarkNode:
    """Vertex of the planar graph refined from the diagram walk.

    kind 'corner' is an original polygon vertex (ref = vertex index),
    'passage' is a strand passing through a crossing (ref = crossing
    index, side 'over'/'under'), 'mark' is one of the four vertices
    inserted around a crossing (ref = crossing index, side names the
    strand end).  pos is the exact planar position, z the exact height
    of the lifted polygon there.
    """

    __slots__ = ("kind", "ref", "side", "edge", "param", "pos", "z")

    def __init__(self, kind, ref, side, edge, param, pos, z):
        self.kind = kind
        self.ref = ref
        self.side = side
        self.edge = edge
        self.param = param
        self.pos = pos
        self.z = z

    def __repr__(self):
        if self.kind == "corner":
            return "MarkNode(v%d)" % self.ref
        return "MarkNode(x%d %s)" % (self.ref, self.side or self.kind)


class MarkedDiagram:
    """Diagram refined with four extra vertices around every crossing.

    nodes lists the cyclic walk order including passages; quads maps
    each crossing to its four mark node indices by side.  factor is the
    offset fraction that validated: each mark sits at factor times the
    parameter distance from its crossing to the nearest other stop on
    the same edge.
    """

    __slots__ = ("diagram", "nodes", "quads", "factor")

    def __init__(self, diagram, nodes, quads, factor):
        self.diagram = diagram
        self.nodes = nodes
        self.quads = quads
        self.factor = factor

    def quad_edges(self, x: int) -> list[tuple[int, int]]:
        """The four mixed-strand vertex pairs around crossing x, in
        cyclic order; these are the sides of a convex quadrilateral."""
        q = self.quads[x]
        return [(q["in_over"], q["in_under"]),
                (q["in_under"], q["out_over"]),
                (q["out_over"], q["out_under"]),
                (q["out_under"], q["in_over"])]

    def __repr__(self):
        return "MarkedDiagram(nodes=%d, crossings=%d, factor=%s)" % (
            len(self.nodes), len(self.quads), self.factor)


def _edge_point(sheared: ClosedPolygon, e: int, t):
    verts = sheared.vertices
    a, b = verts[e], verts[(e + 1) % len(verts)]
    x = a[0] + t * (b[0] - a[0])
    y = a[1] + t * (b[1] - a[1])
    z = a[2] + t * (b[2] - a[2])
    return Point((x, y)), z


def insert_interior_vertices(diagram, shrink_budget: int = 40,
                             start_factor=None) -> MarkedDiagram:
    """Place four vertices around every crossing of the diagram.

    The marks cut each strand just before and just after its passage.
    A placement is accepted only if each side of every crossing
    quadrilateral touches the refined walk exactly at its own two
    endpoints and meets no other quadrilateral; the offset fraction is
    halved until that holds.
    """
    factor = rat(start_factor) if start_factor is not None else Rat(1, 4)
    if not (ZERO < factor < ONE):
        raise ValueError("start_factor must be in (0, 1)")
    for _ in range(shrink_budget):
        nodes, quads = _place_marks(diagram, factor)
        if _marks_valid(nodes, quads):
            return MarkedDiagram(diagram, nodes, quads, factor)
        factor = factor / 2
    raise AssertionError(
        "could not isolate crossings within %d shrink steps" % shrink_budget)


def _place_marks(diagram, factor):
    walk = diagram.walk
    sheared = diagram.sheared
    n_walk = len(walk)
    nodes: list[MarkNode] = []
    quads: list[dict] = [dict() for _ in diagram.crossings]
    for w, stop in enumerate(walk):
        if stop.kind == "vertex":
            nodes.append(MarkNode("corner", stop.ref, None, stop.edge,
                                  stop.param, stop.pos, stop.z))
            continue
        prev, nxt = walk[w - 1], walk[(w + 1) % n_walk]
        # the walk opens each edge with its corner at param 0, so the
        # previous stop always sits on the same edge
        assert prev.edge == stop.edge
        t_prev = prev.param
        t_next = nxt.param if nxt.edge == stop.edge else ONE
        t_in = stop.param - factor * (stop.param - t_prev)
        t_out = stop.param + factor * (t_next - stop.param)
        for t, side in ((t_in, "in_" + stop.role),
                        (None, None),
                        (t_out, "out_" + stop.role)):
            if side is None:
                nodes.append(MarkNode("passage", stop.ref, stop.role,
                                      stop.edge, stop.param, stop.pos,
                                      stop.z))
                continue
            pos, z = _edge_point(sheared, stop.edge, t)
            quads[stop.ref][side] = len(nodes)
            nodes.append(MarkNode("mark", stop.ref, side, stop.edge, t,
                                  pos, z))
    return nodes, quads


def _bbox(pa: Point, pb: Point):
    ax, ay = pa[0], pa[1]
    bx, by = pb[0], pb[1]
    return (min(ax, bx), max(ax, bx), min(ay, by), max(ay, by))


def _bbox_apart(u, v) -> bool:
    return u[1] < v[0] or v[1] < u[0] or u[3] < v[2] or v[3] < u[2]


def _marks_valid(nodes, quads) -> bool:
    n_nodes = len(nodes)
    segs = []
    for i in range(n_nodes):
        j = (i + 1) % n_nodes
        pa, pb = nodes[i].pos, nodes[j].pos
        segs.append((i, j, pa, pb, _bbox(pa, pb)))
    qedges = []
    for x, q in enumerate(quads):
        ring = (q["in_over"], q["in_under"], q["out_over"], q["out_under"],
                q["in_over"])
        pts = {nodes[idx].pos.coords for idx in ring}
        if len(pts) != 4:
            return False
        for a, b in zip(ring, ring[1:]):
            qedges.append((x, a, b, nodes[a].pos, nodes[b].pos,
                           _bbox(nodes[a].pos, nodes[b].pos)))
    for x, a, b, pa, pb, box in qedges:
        for u, v, pu, pv, sbox in segs:
            if _bbox_apart(box, sbox):
                continue
            hit = seg_intersect_2d(pa, pb, pu, pv)
            if hit.kind == "empty":
                continue
            if hit.kind == "overlap":
                return False
            if a in (u, v) and hit.point == pa:
                continue
            if b in (u, v) and hit.point == pb:
                continue
            return False
    for i in range(len(qedges)):
        xi, a, b, pa, pb, bi = qedges[i]
        for j in range(i + 1, len(qedges)):
            xj, c, d, pc, pd, bj = qedges[j]
            if _bbox_apart(bi, bj):
                continue
            hit = seg_intersect_2d(pa, pb, pc, pd)
            if hit.kind == "empty":
                continue
            shared = {a, b} & {c, d}
            if (xi == xj and shared and hit.kind == "point"
                    and hit.point == nodes[shared.pop()].pos):
                continue
            return False
    return True


class SmoothedGraph:
    """Result of cutting the crossings open and reconnecting strands.

    circuits are vertex-disjoint simple cycles (node index lists in
    cyclic order) that together visit every corner and every mark.
    whites maps each crossing to the two vertex pairs joined there;
    edge_src maps each circuit edge to the polygon edge it lies in, or
    to the crossing it was created at.
    """

    __slots__ = ("marked", "rule", "circuits", "whites", "edge_src")

    def __init__(self, marked, rule, circuits, whites, edge_src):
        self.marked = marked
        self.rule = rule
        self.circuits = circuits
        self.whites = whites
        self.edge_src = edge_src

    def __repr__(self):
        return "SmoothedGraph(rule=%s, circuits=%s)" % (
            self.rule, [len(c) for c in self.circuits])


def _ray_parity(p: Point, segs) -> int:
    """Parity of crossings of a generic ray from p with the segments.

    The direction is retried deterministically until the ray meets no
    segment endpoint and overlaps no segment.  Raises if p itself lies
    on a segment.
    """
    budget = 2 * len(segs) + 5
    for attempt in range(budget):
        k = (attempt + 1) // 2 if attempt % 2 else -(attempt // 2)
        dx, dy = ONE, rat(k)
        count = 0
        bad = False
        for pu, pv in segs:
            rx, ry = pv[0] - pu[0], pv[1] - pu[1]
            wx, wy = pu[0] - p[0], pu[1] - p[1]
            den = rx * dy - ry * dx
            if den == 0:
                if wx * dy - wy * dx == 0:
                    # segment collinear with the ray line
                    vx, vy = pv[0] - p[0], pv[1] - p[1]
                    if wx * dx + wy * dy >= 0 or vx * dx + vy * dy >= 0:
                        bad = True
                        break
                continue
            t = (rx * wy - ry * wx) / den
            s = (dx * wy - dy * wx) / den
            if t == 0 and 0 <= s <= 1:
                raise ValueError("ray origin lies on a segment")
            if t > 0:
                if s == 0 or s == 1:
                    bad = True
                    break
                if 0 < s < 1:
                    count += 1
        if not bad:
            return count % 2
    raise AssertionError("no clean ray direction found")


def quad_edge_colors(marked: MarkedDiagram, x: int) -> list[int]:
    """Checkerboard color of the face each quad side of crossing x lies
    in: 0 for white (the unbounded face's color), 1 for black.  Colors
    alternate around the quadrilateral."""
    shadow = [Point((v[0], v[1])) for v in marked.diagram.sheared.vertices]
    n = len(shadow)
    segs = [(shadow[i], shadow[(i + 1) % n]) for i in range(n)]
    colors = []
    for a, b in marked.quad_edges(x):
        pa, pb = marked.nodes[a].pos, marked.nodes[b].pos
        mid = Point(((pa[0] + pb[0]) / 2, (pa[1] + pb[1]) / 2))
        colors.append(_ray_parity(mid, segs))
    if colors[0] != colors[2] or colors[1] != colors[3] \
            or colors[0] == colors[1]:
        raise AssertionError("face colors fail to alternate at crossing %d"
                             % x)
    return colors


def smooth(marked: MarkedDiagram, rule: str = "orientation") -> SmoothedGraph:
    """Delete the passages and reconnect the four marks at each crossing.

    rule 'orientation' joins each incoming strand end to the outgoing
    end of the other strand, which keeps every circuit coherently
    directed.  rule 'white-edge' instead joins the two quadrilateral
    sides lying in white faces of the checkerboard coloring; the two
    rules agree at a crossing exactly when those sides are the
    direction-respecting ones.  Circuits are verified to be disjoint
    simple cycles of length at least 3 that never touch one another.
    """
    if rule not in ("orientation", "white-edge"):
        raise ValueError("unknown smoothing rule %r" % rule)
    nodes = marked.nodes
    n_nodes = len(nodes)
    adj: dict[int, list[int]] = {i: [] for i in range(n_nodes)
                                 if nodes[i].kind != "passage"}
    edge_src: dict[tuple[int, int], tuple] = {}
    for i in range(n_nodes):
        j = (i + 1) % n_nodes
        if nodes[i].kind == "passage" or nodes[j].kind == "passage":
            continue
        adj[i].append(j)
        adj[j].append(i)
        edge_src[(min(i, j), max(i, j))] = ("edge", nodes[i].edge)
    whites: list[tuple[tuple[int, int], tuple[int, int]]] = []
    for x, q in enumerate(marked.quads):
        if rule == "orientation":
            pair = ((q["in_over"], q["out_under"]),
                    (q["in_under"], q["out_over"]))
        else:
            sides = marked.quad_edges(x)
            colors = quad_edge_colors(marked, x)
            pair = tuple(sides[i] for i in range(4) if colors[i] == 0)
        for a, b in pair:
            adj[a].append(b)
            adj[b].append(a)
            edge_src[(min(a, b), max(a, b))] = ("white", x)
        whites.append(pair)
    for i, nbrs in adj.items():
        if len(nbrs) != 2:
            raise AssertionError("node %d has degree %d" % (i, len(nbrs)))
    circuits = []
    seen = set()
    for start in adj:
        if start in seen:
            continue
        circ = [start]
        seen.add(start)
        prev, cur = start, adj[start][0]
        while cur != start:
            circ.append(cur)
            seen.add(cur)
            a, b = adj[cur]
            prev, cur = cur, (b if a == prev else a)
        if len(circ) < 3:
            raise SmoothingError("circuit of length %d" % len(circ))
        circuits.append(circ)
    g = SmoothedGraph(marked, rule, circuits, whites, edge_src)
    _check_circuits_disjoint(g)
    return g


def _check_circuits_disjoint(g: SmoothedGraph) -> None:
    nodes = g.marked.nodes
    edges = []
    for circ in g.circuits:
        m = len(circ)
        for e in range(m):
            a, b = circ[e], circ[(e + 1) % m]
            edges.append((a, b, nodes[a].pos, nodes[b].pos,
                          _bbox(nodes[a].pos, nodes[b].pos)))
    for i in range(len(edges)):
        a, b, pa, pb, bi = edges[i]
        for j in range(i + 1, len(edges)):
            c, d, pc, pd, bj = edges[j]
            if _bbox_apart(bi, bj):
                continue
            hit = seg_intersect_2d(pa, pb, pc, pd)
            if hit.kind == "empty":
                continue
            shared = {a, b} & {c, d}
            if (hit.kind == "point" and shared
                    and hit.point == nodes[shared.pop()].pos):
                continue
            raise AssertionError(
                "circuit edges (%d,%d) and (%d,%d) collide" % (a, b, c, d))


def assign_levels(g: SmoothedGraph) -> list[int]:
    """Containment depth per circuit: 1 for circuits enclosing no other
    circuit, else one more than the deepest circuit inside."""
    nodes = g.marked.nodes
    s = len(g.circuits)
    polys = []
    for circ in g.circuits:
        pts = [nodes[i].pos for i in circ]
        polys.append([(pts[i], pts[(i + 1) % len(pts)])
                      for i in range(len(pts))])
    reps = [nodes[circ[0]].pos for circ in g.circuits]
    inside = [[False] * s for _ in range(s)]
    for outer in range(s):
        for inner in range(s):
            if inner == outer:
                continue
            inside[outer][inner] = _ray_parity(reps[inner],
                                               polys[outer]) == 1
    levels = [0] * s
    order = sorted(range(s), key=lambda c: sum(inside[c]))
    for c in order:
        deepest = 0
        for d in range(s):
            if inside[c][d]:
                assert levels[d] > 0
                deepest = max(deepest, levels[d])
        levels[c] = deepest + 1
    n = len(g.marked.diagram.sheared.vertices)
    assert max(levels) <= n
    return levels


def build_surface(g: SmoothedGraph, levels: list[int]):
    """Assemble the spanning mesh over the sheared frame.

    Per circuit at depth k: its disk triangulated in the plane z = -k,
    and two wall triangles per circuit edge up to the lifted polygon
    (the diagonal runs from the lexicographically smaller top vertex to
    the opposite bottom vertex).  Per crossing: two bridge triangles
    joining the lifted reconnection segments across the strand swap.
    Returns (mesh, trace) where trace records the piece counts.
    """
    marked = g.marked
    nodes = marked.nodes
    mesh = TriMesh(3)

    def lifted(i: int) -> Point:
        nd = nodes[i]
        return Point((nd.pos[0], nd.pos[1], nd.z))

    def bottom(i: int, k) -> Point:
        nd = nodes[i]
        return Point((nd.pos[0], nd.pos[1], -k))

    bowls = walls = 0
    for ci, circ in enumerate(g.circuits):
        k = rat(levels[ci])
        pts2 = [nodes[i].pos for i in circ]
        for a, b, c in earclip_2d(pts2):
            mesh.add_triangle(bottom(circ[a], k), bottom(circ[b], k),
                              bottom(circ[c], k), tag="bowl %d" % ci)
            bowls += 1
        m = len(circ)
        for e in range(m):
            a, b = circ[e], circ[(e + 1) % m]
            lo_a, lo_b = bottom(a, k), bottom(b, k)
            top_a, top_b = lifted(a), lifted(b)
            tag = "wall %d %d" % (ci, e)
            if top_a.coords <= top_b.coords:
                mesh.add_triangle(lo_a, lo_b, top_a, tag=tag)
                mesh.add_triangle(lo_b, top_b, top_a, tag=tag)
            else:
                mesh.add_triangle(lo_a, lo_b, top_b, tag=tag)
                mesh.add_triangle(lo_a, top_b, top_a, tag=tag)
            walls += 2
    bowties = 0
    for x, q in enumerate(marked.quads):
        partner = {}
        for a, b in g.whites[x]:
            partner[a] = b
            partner[b] = a
        x1 = lifted(q["in_over"])
        y1 = lifted(q["out_over"])
        x2 = lifted(partner[q["in_over"]])
        y2 = lifted(partner[q["out_over"]])
        mesh.add_triangle(x1, x2, y1, tag="bowtie %d" % x)
        mesh.add_triangle(x2, y1, y2, tag="bowtie %d" % x)
        bowties += 2
    s = len(g.circuits)
    c = len(marked.quads)
    total_len = sum(len(circ) for circ in g.circuits)
    t = len(mesh.triangles)
    assert bowls == total_len - 2 * s
    assert walls == 2 * total_len
    assert bowties == 2 * c
    assert t == bowls + walls + bowties
    n = len(marked.diagram.sheared.vertices)
    assert total_len == n + 4 * c
    assert t <= 3 * n + 14 * c <= 7 * n * n
    chi = mesh.euler_characteristic()
    assert chi == s - c
    trace = {
        "circuits": s,
        "circuit_sizes": [len(circ) for circ in g.circuits],
        "levels": list(levels),
        "crossings": c,
        "bowls": bowls,
        "walls": walls,
        "bowties": bowties,
        "triangles": t,
        "euler": chi,
    }
    return mesh, trace


def spanning_surface_r3(poly: ClosedPolygon, seed: int = 0,
                        rule: str = "orientation"):
    """Build and fully verify a triangulated surface spanning poly.

    poly must live in R^3 (planar input is lifted to z = 0 first).  The
    mesh is assembled over a sheared frame and pulled back through the
    inverse shear, so its boundary is a subdivision of poly itself.
    Returns (mesh, report).  Raises if any verification fails.
    """
    from .diagram import project_polygon

    if poly.dim == 2:
        poly = ClosedPolygon([Point((v[0], v[1], ZERO))
                              for v in poly.vertices])
    dia = project_polygon(poly, seed=seed)
    g = None
    factor = Rat(1, 4)
    for _ in range(6):
        try:
            marked = insert_interior_vertices(dia, start_factor=factor)
            g = smooth(marked, rule)
            break
        except SmoothingError:
            factor = factor / 2
    if g is None:
        raise AssertionError("smoothing kept degenerating")
    levels = assign_levels(g)
    raw, trace = build_surface(g, levels)
    problems = raw.validate_manifold()
    if problems:
        raise AssertionError("surface not manifold: %s" % problems[0])
    orientable, _ = raw.orientation_propagate()
    if rule == "orientation" and not orientable:
        raise AssertionError("orientation-smoothed surface not orientable")
    if not boundary_matches(raw, dia.sheared):
        raise AssertionError("boundary does not subdivide the lifted polygon")
    violation = check_embedded(raw)
    if violation is not None:
        raise AssertionError("self-intersection: %r" % violation)
    # the pullback is an affine bijection, so embeddedness, manifoldness
    # and the boundary property survive it exactly
    mesh = raw.transform(dia.to_sheared.inverse())
    if not boundary_matches(mesh, poly):
        raise AssertionError("pulled-back boundary mismatch")
    report = dict(trace)
    report.update({
        "n": len(poly.vertices),
        "writhe": dia.writhe,
        "rule": rule,
        "seed": seed,
        "orientable": orientable,
        "connected": mesh.connected_components() == 1,
        "boundary_cycles": mesh.boundary_components(),
        "embedded": True,
        "genus": mesh.genus() if orientable else None,
    })
    return mesh, report
