import random
from itertools import product

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from semimv.applications import ConeSpec, off_coordinate_family, v_faces
from semimv.generators import random_disjoint_family, random_off_family
from semimv.lattice import affine_dim, det
from semimv.mixed import Lift, khovanskii_mv, mixed_volume, mv_zero_witness
from semimv.polytope import convex_hull, lattice_points, lattice_volume, minkowski_sum
from semimv.semi import classify_faces, sign_pattern_applies, suture_system

FEW = settings(max_examples=40, deadline=None)


def point_sets(n, lo=1, hi=4, top=3):
    pt = st.tuples(*[st.integers(0, top)] * n)
    return st.lists(pt, min_size=lo, max_size=hi, unique=True)


def full_sets(n, hi=5):
    return point_sets(n, n + 1, hi).filter(lambda s: affine_dim(s) == n)


@FEW
@given(st.lists(point_sets(2), min_size=2, max_size=2), st.randoms())
def test_symmetry_2d(sets, rnd):
    perm = sets[:]
    rnd.shuffle(perm)
    assert mixed_volume(sets) == mixed_volume(perm)


@FEW
@given(st.lists(point_sets(3, hi=3, top=2), min_size=3, max_size=3), st.permutations(range(3)))
def test_symmetry_3d(sets, perm):
    assert mixed_volume(sets) == mixed_volume([sets[i] for i in perm])


@FEW
@given(point_sets(2, hi=3), point_sets(2, hi=3), point_sets(2))
def test_multilinearity(P, Q, R):
    assert mixed_volume([minkowski_sum(P, Q), R]) == mixed_volume([P, R]) + mixed_volume([Q, R])


@FEW
@given(point_sets(2, hi=3), st.integers(1, 4), point_sets(2))
def test_homogeneity(P, t, R):
    tP = [tuple(t * x for x in p) for p in P]
    assert mixed_volume([tP, R]) == t * mixed_volume([P, R])


@FEW
@given(st.integers(2, 3).flatmap(lambda n: full_sets(n)))
def test_diagonal(P):
    n = len(P[0])
    assert mixed_volume([P] * n) == lattice_volume(P)


@FEW
@given(point_sets(2, hi=3), point_sets(2, hi=3), point_sets(2, hi=3))
def test_monotonicity(P, Q, extra):
    assert mixed_volume([P, Q]) <= mixed_volume([P + [p for p in extra if p not in P], Q])


@FEW
@given(st.integers(1, 3).flatmap(lambda n: st.lists(point_sets(n, hi=3, top=2), min_size=n, max_size=n)))
def test_zero_criterion_both_ways(sets):
    w = mv_zero_witness(sets)
    value = mixed_volume(sets)
    assert (w is None) == (value > 0)
    if w is not None:
        pts = [tuple(map(sum, zip(*choice))) for choice in product(*[sets[i] for i in w])]
        assert affine_dim(pts) < len(w)


@FEW
@given(st.integers(1, 2).flatmap(lambda n: st.tuples(
    st.lists(point_sets(n, top=2), min_size=n, max_size=n),
    st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=n, max_size=n),
)))
def test_khovanskii_matches_polarization(data):
    sets, heights = data
    lifts = [Lift.of(s, h[: len(s)]) for s, h in zip(sets, heights)]
    assert khovanskii_mv(lifts).value == mixed_volume(sets)


def _families(seed, count):
    rng = random.Random(seed)
    out = [random_off_family(rng, rng.choice((2, 3))) for _ in range(count)]
    while len(out) < 2 * count:
        fam = random_disjoint_family(rng, rng.choice((2, 3)))
        if fam is not None:
            out.append(fam)
    return out


def test_suture_tables_are_unimodular_and_integral():
    for fam in _families(11, 25):
        tab = suture_system(fam)
        m = len(tab.sutures)
        C, D = tab.C, tab.Dmat
        assert all(C[i][i] == 1 for i in range(m))
        assert all(C[i][j] == 0 for i in range(m) for j in range(i + 1, m))
        assert det(C) == 1
        assert all(isinstance(x, int) for row in D for x in row)
        prod = [[sum(D[i][k] * C[k][j] for k in range(m)) for j in range(m)] for i in range(m)]
        assert prod == [[int(i == j) for j in range(m)] for i in range(m)]
        assert [S.key() for S in tab.sutures] == sorted(S.key() for S in tab.sutures)


def test_sutures_closed_under_intersection():
    for fam in _families(12, 20):
        sut = classify_faces(fam).sutures
        keys = {S.indices for S in sut}
        pts = fam.mother.points
        for a in sut:
            for b in sut:
                common = sorted(set(a.indices) & set(b.indices))
                if not common:
                    continue
                da = affine_dim([pts[i] for i in a.indices])
                db = affine_dim([pts[i] for i in b.indices])
                dab = affine_dim([pts[i] for i in set(a.indices) | set(b.indices)])
                # aff(a) meets aff(b) exactly in aff(a & b)
                if affine_dim([pts[i] for i in common]) != da + db - dab:
                    continue
                assert tuple(common) in keys
                span = set(a.indices) | set(b.indices)
                flat = [pts[i] for i in span]
                on = tuple(i for i, p in enumerate(pts) if affine_dim(flat + [p]) == dab)
                assert on in keys


def test_sutures_are_v_faces_of_off_families():
    rng = random.Random(13)
    for _ in range(30):
        fam = random_off_family(rng, rng.choice((2, 3)))
        C = ConeSpec.orthant(fam.n)
        assert [S.indices for S in classify_faces(fam).sutures] == [F.indices for F in v_faces(fam.mother, C)]


def dilated_simplex(n, k):
    return lattice_points(convex_hull([(0,) * n] + [tuple(k * int(i == j) for j in range(n)) for i in range(n)]))


def test_sign_pattern_on_simplices():
    for n in (2, 3):
        for k in (1, 2, 3):
            fam = off_coordinate_family(dilated_simplex(n, k), ConeSpec.orthant(n))
            tab = suture_system(fam, check=True)
            for i, S in enumerate(tab.sutures):
                assert sign_pattern_applies(fam, S)
                for j, F in enumerate(tab.sutures):
                    if set(S.indices) <= set(F.indices):
                        assert tab.Dmat[j][i] == (-1) ** (F.dim - S.dim)
            # the Milnor number of a generic form of degree k
            assert tab.mixed_volume == (k - 1) ** n


def test_sign_pattern_detects_failure():
    # cusp-like corner: the coefficient of the vertex in the x-axis edge is 2
    P = [(0, 0), (2, 0), (3, 0), (0, 1), (1, 1)]
    fam = off_coordinate_family(P, ConeSpec.orthant(2))
    tab = suture_system(fam, check=True)
    origin = tab.sutures[tab.index([0])]
    assert not sign_pattern_applies(fam, origin)
