import pytest

from semimv.applications import (
    CayleyInput,
    ConeSpec,
    cayley,
    detect_stretched_bk,
    distance_support,
    ed_degree,
    is_smooth,
    ml_degree,
    multiplicities,
    newton_number,
    off_coordinate_daughters,
    off_coordinate_family,
    orbit_multiplicity,
    polar_degree,
    smooth_by_generated_lattice,
    untouched_facets,
    v_faces,
    voff,
)
from semimv.errors import InputError
from semimv.mixed import mixed_volume, mv_zero_witness
from semimv.polytope import PointSet, convex_hull, lattice_points
from semimv.semi import classify_faces

LINE = [(0, 0), (1, 0), (0, 1)]
CONIC = [(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (0, 2)]
B1_TRIANGLE = [(0, 0), (1, 0), (2, 0), (3, 0), (0, 1)]


def simplex_points(d, n=2):
    return lattice_points(convex_hull([(0,) * n] + [tuple(d * int(i == j) for j in range(n)) for i in range(n)]))


def hyperplane_points(d):
    return [(a, b, d - a - b) for a in range(d + 1) for b in range(d + 1 - a)]


class TestCone:
    def test_orthant(self):
        C = ConeSpec.orthant(3, 2)
        assert C.functionals == ((1, 0, 0), (0, 1, 0))
        assert C.m == 2

    def test_not_primitive(self):
        with pytest.raises(InputError):
            ConeSpec(2, ((2, 0),))

    def test_dependent(self):
        with pytest.raises(InputError):
            ConeSpec(2, ((1, 1), (-1, -1)))


class TestOffCoordinate:
    def test_worked_daughters(self, W):
        assert off_coordinate_daughters(W, ConeSpec.orthant(2)) == [(1, 2), (3, 4)]

    def test_free_directions_keep_everything(self, W):
        assert off_coordinate_daughters(W, ConeSpec.orthant(2, 1)) == [(1, 2), (0, 1, 2, 3, 4)]

    def test_outside_cone(self):
        with pytest.raises(InputError):
            off_coordinate_daughters([(0, 0), (-1, 2), (1, 1)], ConeSpec.orthant(2))

    def test_empty_daughter(self):
        with pytest.raises(InputError):
            off_coordinate_daughters([(0, 0), (0, 1)], ConeSpec.orthant(2))

    def test_untouched_facet(self):
        P = [(1, 0), (2, 0), (1, 1)]
        assert untouched_facets(P, ConeSpec.orthant(2)) == (0,)
        fam = off_coordinate_family(P, ConeSpec.orthant(2))
        assert fam.daughters[0] == (0, 1, 2)

    def test_sutures_are_v_faces(self, W):
        fam = off_coordinate_family(W, ConeSpec.orthant(2))
        C = ConeSpec.orthant(2)
        assert [F.indices for F in classify_faces(fam).sutures] == [F.indices for F in v_faces(W, C)]

    def test_voff_worked(self, W):
        assert voff(W, check=True) == 1
        assert voff(W, method="oracle") == 1

    def test_voff_zero_not_stretched(self, voff_zero_set):
        fam = off_coordinate_family(voff_zero_set, ConeSpec.orthant(4))
        assert mv_zero_witness([fam.points_of(D) for D in fam.daughters]) == (0, 1, 2)
        assert voff(voff_zero_set, check=True) == 0
        assert detect_stretched_bk(voff_zero_set) is None

    def test_voff_flat_input(self):
        assert voff([(1, 0, 0), (0, 1, 0), (0, 0, 1)], check=True) == 0

    def test_bad_method(self, W):
        with pytest.raises(InputError):
            voff(W, method="guess")


class TestNewton:
    def test_two_simplex(self):
        assert newton_number(simplex_points(2), check=True) == 1

    def test_three_simplex(self):
        assert newton_number(simplex_points(3), check=True) == 4

    def test_b1_triangle(self):
        assert newton_number(B1_TRIANGLE, check=True) == 0

    def test_not_convenient(self):
        with pytest.raises(InputError):
            newton_number([(0, 0), (1, 0), (1, 1)])

    def test_milnor_number_of_quasi_homogeneous(self):
        # x^a + y^b has Milnor number (a-1)(b-1)
        P = lattice_points(convex_hull([(0, 0), (4, 0), (0, 3)]))
        assert newton_number(P, check=True) == 3 * 2


class TestStretched:
    def test_b1_triangle(self):
        hit = detect_stretched_bk(B1_TRIANGLE)
        assert hit.k == 1 and hit.coords == (1,)
        assert hit.blocks == (((0,), (1,), (2,), (3,)), ((0,),))
        assert hit.stretch == (1,)

    def test_two_simplex(self):
        assert detect_stretched_bk(simplex_points(2)) is None

    def test_stretch_factor(self):
        P = [(0, 0), (1, 0), (2, 0), (0, 2)]
        hit = detect_stretched_bk(P)
        assert hit.coords == (1,) and hit.stretch == (2,)
        assert voff(P) == 0


class TestMultiplicity:
    def test_line(self):
        assert orbit_multiplicity([(0,), (1,)], [0]) == 1

    def test_cusp(self):
        assert orbit_multiplicity([(0,), (2,), (3,)], [0]) == 2
        assert not is_smooth([(0,), (2,), (3,)])

    def test_conic_parametrization(self):
        assert orbit_multiplicity([(0,), (2,)], [0]) == 1

    def test_not_a_face(self):
        with pytest.raises(InputError):
            orbit_multiplicity([(0,), (2,), (3,)], [1])

    def test_square_is_smooth(self, square):
        rows = multiplicities(square)
        assert all(m == 1 for _, m in rows)
        assert is_smooth(square) and smooth_by_generated_lattice(square)

    def test_weighted_projective_plane(self):
        # P(1,1,2): the cone at the apex (0,2) is singular
        P = PointSet.of([(0, 0), (1, 0), (2, 0), (0, 1), (1, 1)])
        Q = PointSet.of([(0, 0), (2, 0), (0, 1), (1, 0)])
        assert is_smooth(P)
        assert not is_smooth(Q)
        assert smooth_by_generated_lattice(Q) is False


class TestCayley:
    def test_levels(self):
        C = cayley([[(5,)], [(0,), (1,)]], 1)
        assert set(C.points) == {(0, 5), (1, 0), (1, 1)}

    def test_input_shape(self):
        inp = CayleyInput.of([LINE])
        assert inp.block_dim == 2 and inp.m == 1
        with pytest.raises(InputError):
            CayleyInput.of([LINE, []])


class TestDegrees:
    def test_ml_line(self):
        assert ml_degree([LINE], (3, 5), check=True) == 1

    def test_ml_conic(self):
        assert ml_degree([CONIC], (3, 5), check=True) == 4

    def test_ml_vertical_line(self):
        assert ml_degree([[(0, 0), (1, 0)]], (3, 5), check=True) == 0

    def test_ed_line(self):
        assert ed_degree([LINE], check=True) == 1

    def test_ed_conic(self):
        assert ed_degree([CONIC], check=True) == 4

    def test_ed_point(self):
        assert ed_degree([[(0,), (1,)]], check=True) == 1

    def test_ed_needs_origin(self):
        with pytest.raises(InputError):
            ed_degree([[(1, 0), (0, 1)]])

    def test_distance_support(self):
        assert set(distance_support(2)) == {(0, 0), (1, 0), (0, 1), (2, 0), (0, 2)}

    def test_polar_linear(self):
        assert polar_degree(hyperplane_points(1), 1, check=True) == 0

    def test_polar_conic(self):
        assert polar_degree(hyperplane_points(2), 2, check=True) == 1

    def test_polar_cubic(self):
        assert polar_degree(hyperplane_points(3), 3, check=True) == 4

    def test_polar_off_hyperplane(self):
        with pytest.raises(InputError):
            polar_degree([(1, 1, 1), (2, 0, 0)], 2)

    def test_oracle_route_agrees(self):
        assert ml_degree([CONIC], (3, 5), method="oracle") == 4
        assert mixed_volume([CONIC, CONIC]) == 4
