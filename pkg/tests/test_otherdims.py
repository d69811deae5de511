import pytest

from plspan.geom import Point
from plspan.mesh import boundary_matches, check_embedded
from plspan.otherdims import (
    cone_highdim,
    earclip_2d,
    embedded_4d,
    immersed_disk_4d,
)
from plspan.polygon import (
    ClosedPolygon,
    gen_planar_ngon,
    gen_random,
    gen_torus_stick,
)


def lshape():
    return ClosedPolygon([Point((0, 0)), Point((4, 0)), Point((4, 2)),
                          Point((2, 2)), Point((2, 4)), Point((0, 4))])


# -- planar ------------------------------------------------------------


def test_earclip_triangle():
    mesh, rep = earclip_2d(gen_planar_ngon(3))
    assert rep["triangles"] == 1
    assert len(mesh.vertices) == 3


def test_earclip_convex_sevengon():
    mesh, rep = earclip_2d(gen_planar_ngon(7))
    assert rep["triangles"] == 5
    assert mesh.euler_characteristic() == 1


def test_earclip_nonconvex():
    p = lshape()
    mesh, rep = earclip_2d(p)
    assert rep["triangles"] == 4
    assert len(mesh.vertices) == 6
    assert check_embedded(mesh) is None
    assert boundary_matches(mesh, p)


def test_earclip_rejects_bowtie():
    bow = ClosedPolygon([Point((0, 0)), Point((4, 4)), Point((4, 0)),
                         Point((0, 4))])
    with pytest.raises(ValueError):
        earclip_2d(bow)


def test_earclip_rejects_wrong_dimension():
    with pytest.raises(ValueError):
        earclip_2d(gen_random(5, 3, seed=0))


# -- high dimension ----------------------------------------------------


def test_cone_triangle_r5():
    tri = ClosedPolygon([Point((0, 0, 0, 0, 0)), Point((4, 0, 0, 0, 0)),
                         Point((0, 4, 0, 0, 0))])
    mesh, rep = cone_highdim(tri, seed=0)
    assert rep["triangles"] == 3
    apex = Point(rep["apex"])
    for t in range(3):
        assert apex in mesh.triangle_points(t)
    assert check_embedded(mesh) is None


def test_cone_random_octagon_r5():
    p = gen_random(8, 5, seed=2)
    mesh, rep = cone_highdim(p, seed=0)
    assert rep["triangles"] == 8
    assert mesh.euler_characteristic() == 1
    assert mesh.boundary_components() == 1
    assert boundary_matches(mesh, p)
    assert all(tag.startswith("cone") for tag in mesh.provenance)


def test_cone_rejects_low_dimension():
    with pytest.raises(ValueError):
        cone_highdim(gen_random(5, 4, seed=0))


def test_cone_determinism():
    p = gen_random(7, 6, seed=5)
    m1, r1 = cone_highdim(p, seed=3)
    m2, r2 = cone_highdim(p, seed=3)
    assert r1 == r2
    assert [m1.triangle_points(t) for t in range(len(m1.triangles))] == \
        [m2.triangle_points(t) for t in range(len(m2.triangles))]


# -- immersed disk in R^4 ----------------------------------------------


def test_immersed_triangle():
    tri = ClosedPolygon([Point((0, 0, 0, 0)), Point((4, 0, 0, 0)),
                         Point((0, 4, 0, 0))])
    mesh, rep = immersed_disk_4d(tri, seed=0)
    assert rep["triangles"] == 9
    assert rep["euler"] == 1
    assert len(mesh.vertices) == 7
    assert len(mesh.edge_census()) == 15
    assert boundary_matches(mesh, tri)


def test_immersed_tags_and_counts():
    p = gen_random(6, 4, seed=1)
    mesh, rep = immersed_disk_4d(p, seed=0)
    n = 6
    assert rep["triangles"] == 3 * n
    tags = [tag.split()[0] for tag in mesh.provenance]
    assert tags.count("annulus") == 2 * n
    assert tags.count("fan") == n
    assert len(mesh.vertices) == 2 * n + 1
    assert mesh.boundary_components() == 1
    assert mesh.validate_manifold() == []


def test_immersed_rejects_wrong_dimension():
    with pytest.raises(ValueError):
        immersed_disk_4d(gen_random(5, 3, seed=0))


def test_immersed_determinism():
    p = gen_random(7, 4, seed=4)
    m1, r1 = immersed_disk_4d(p, seed=2)
    m2, r2 = immersed_disk_4d(p, seed=2)
    assert r1 == r2
    assert [m1.triangle_points(t) for t in range(len(m1.triangles))] == \
        [m2.triangle_points(t) for t in range(len(m2.triangles))]


# -- embedded surface in R^4 -------------------------------------------


def test_embedded_flat_triangle_skips_walls():
    tri = ClosedPolygon([Point((0, 0, 0, 2)), Point((4, 0, 0, 2)),
                         Point((0, 4, 0, 2))])
    mesh, rep = embedded_4d(tri, seed=0)
    assert rep["triangles"] == 7
    assert rep["wall_triangles"] == 0
    assert rep["euler"] == 1
    assert boundary_matches(mesh, tri)


def test_embedded_lifted_trefoil():
    tre = gen_torus_stick(3)
    p = ClosedPolygon([Point((v[0], v[1], v[2], v[0]))
                       for v in tre.vertices])
    mesh, rep = embedded_4d(p, seed=0)
    n = rep["n"]
    assert rep["triangles"] <= 21 * n * n
    assert rep["crossings"] == 3
    assert rep["genus"] == 1
    assert rep["embedded"]
    assert rep["wall_triangles"] == rep["triangles"] - rep["base_triangles"]
    assert boundary_matches(mesh, p)
    assert check_embedded(mesh) is None


def test_embedded_retries_degenerate_projection():
    # two vertices collide when the last coordinate is dropped, so the
    # unsheared attempt must be rejected
    p = ClosedPolygon([Point((0, 0, 0, 0)), Point((4, 0, 0, 1)),
                       Point((0, 0, 0, 4)), Point((0, 4, 0, 1))])
    mesh, rep = embedded_4d(p, seed=0)
    assert rep["attempt"] >= 1
    assert rep["euler"] == 1
    assert boundary_matches(mesh, p)


def test_embedded_wall_count_matches_boundary():
    p = gen_random(5, 4, seed=7)
    mesh, rep = embedded_4d(p, seed=0)
    walls = sum(1 for tag in mesh.provenance if tag.startswith("wall4"))
    assert walls == rep["wall_triangles"]
    # two wall triangles per edge of the spanned projection boundary
    assert walls == 2 * (rep["n"] + 4 * rep["crossings"])


def test_embedded_determinism():
    p = gen_random(5, 4, seed=9)
    m1, r1 = embedded_4d(p, seed=1)
    m2, r2 = embedded_4d(p, seed=1)
    assert r1 == r2
    assert [m1.triangle_points(t) for t in range(len(m1.triangles))] == \
        [m2.triangle_points(t) for t in range(len(m2.triangles))]


def test_embedded_rejects_wrong_dimension():
    with pytest.raises(ValueError):
        embedded_4d(gen_random(5, 3, seed=0))
