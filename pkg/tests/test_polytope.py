from itertools import product

import pytest

from semimv.errors import InputError
from semimv.polytope import (
    PointSet,
    convex_hull,
    enumerate_faces,
    lattice_points,
    lattice_volume,
    minkowski_sum,
    polytopes_intersect,
    support_face,
)


def test_hull_of_square(square):
    H = convex_hull(square)
    assert len(H.vertices) == 4
    assert len(H.facets) == 4


def test_hull_drops_edge_midpoint():
    H = convex_hull(PointSet.of([(0, 0), (2, 0), (0, 2), (1, 1)]))
    assert H.vertex_points == ((0, 0), (2, 0), (0, 2))


def test_hull_of_point():
    H = convex_hull(PointSet.of([(3, 3)]))
    assert H.dim == 0 and H.facets == []
    assert len(H.faces) == 1


def test_hull_empty():
    with pytest.raises(InputError):
        convex_hull([])


def test_facets_are_valid_inequalities():
    pts = [(0, 0, 0), (3, 0, 1), (0, 2, 0), (1, 1, 3), (2, 2, 2), (1, 0, 0)]
    H = convex_hull(pts)
    for (a, b), on in zip(H.facets, H.facet_sets):
        vals = [sum(x * y for x, y in zip(a, p)) for p in pts]
        assert max(vals) == b
        assert on == frozenset(i for i, v in enumerate(vals) if v == b)


def test_support_faces(square):
    H = convex_hull(square)
    F, h = support_face(H, (1, 0))
    assert F.indices == (1, 3) and h == 1
    F, h = support_face(H, (0, 0))
    assert F.indices == (0, 1, 2, 3) and F.dim == 2
    F, h = support_face(H, (1, 1))
    assert F.indices == (3,) and h == 2


@pytest.mark.parametrize("pts, count", [
    ([(0,), (1,)], 3),
    ([(0, 0), (1, 0), (0, 1), (1, 1)], 9),
    ([(0, 0), (2, 0), (0, 2)], 7),
    (list(product((0, 1), repeat=3)), 27),
    ([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)], 15),
])
def test_face_counts(pts, count):
    assert len(enumerate_faces(convex_hull(pts))) == count


def test_faces_ordered_and_witnessed():
    pts = [(0, 0, 0), (2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 1)]
    H = convex_hull(pts)
    faces = enumerate_faces(H)
    assert [F.key() for F in faces] == sorted(F.key() for F in faces)
    for F in faces:
        G, _ = support_face(H, F.witness)
        assert G.indices == F.indices


@pytest.mark.parametrize("pts, vol", [
    ([(0, 0), (1, 0), (0, 1)], 1),
    ([(0, 0), (1, 0), (0, 1), (1, 1)], 2),
    ([(0, 0), (2, 0), (0, 2), (1, 1)], 4),
    (list(product((0, 1), repeat=3)), 6),
    ([(0, 0), (2, 2)], 2),
    ([(1, 1, 1)], 1),
])
def test_lattice_volume(pts, vol):
    assert lattice_volume(pts) == vol


def test_lattice_volume_requested_dim():
    assert lattice_volume([(0, 0), (1, 0)], dim=2) == 0
    assert lattice_volume([(4, 4)], dim=1) == 0


def test_minkowski_sum():
    assert set(minkowski_sum([(0, 0)], [(1, 2), (3, 4)])) == {(1, 2), (3, 4)}
    assert set(minkowski_sum([(0, 0), (1, 0)], [(0, 0), (0, 1)])) == {(0, 0), (1, 0), (0, 1), (1, 1)}
    assert set(minkowski_sum([(0, 0), (1, 1)], [(1, 0), (0, 1)])) == {(1, 0), (0, 1), (2, 1), (1, 2)}


def test_lattice_points():
    H = convex_hull([(0, 0), (2, 0), (0, 2)])
    assert len(lattice_points(H)) == 6


def test_intersections():
    assert polytopes_intersect([(0, 0), (2, 2)], [(0, 2), (2, 0)])
    assert not polytopes_intersect([(0, 0), (1, 0)], [(0, 1), (1, 1)])
    assert polytopes_intersect([(0, 0, 0), (2, 0, 0), (0, 2, 0)], [(3, 3, -1), (3, 3, 1)]) is False
    assert polytopes_intersect([(0, 0, 0), (2, 0, 0), (0, 2, 0)], [(0, 0, -1), (1, 1, 1)])
