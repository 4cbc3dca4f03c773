import pytest

from semimv.errors import InputError
from semimv.lattice import (
    affine_chart,
    affine_dim,
    det,
    hermite_normal_form,
    invariant_factors,
    lattice_index,
    matmul,
    quotient_projection,
    smith_decompose,
)


def check_snf(M):
    U, D, V = smith_decompose(M)
    assert [list(r) for r in matmul(matmul(U, M), V)] == [list(r) for r in D]
    assert abs(det(U)) == 1 and abs(det(V)) == 1
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    return D


def test_smith_identity():
    U, D, V = smith_decompose([[1, 0], [0, 1]])
    assert U == D == V == ((1, 0), (0, 1))


def test_smith_one_by_one():
    assert smith_decompose([[2]]) == (((1,),), ((2,),), ((1,),))


def test_smith_small():
    D = check_snf([[2, 0], [1, 1]])
    assert (D[0][0], D[1][1]) == (1, 2)


@pytest.mark.parametrize("M", [
    [[4, 6], [6, 9]],
    [[0, 0, 3], [2, 4, 0]],
    [[6], [10], [15]],
    [[2, 4, 4], [-6, 6, 12], [10, -4, -16]],
])
def test_smith_general(M):
    check_snf(M)


def test_invariant_factors():
    assert invariant_factors([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]


def test_hnf_is_row_equivalent():
    H = hermite_normal_form([[2, 4], [1, 3]])
    assert abs(det(H)) == 2
    assert H[1][0] == 0


def test_det():
    assert det([[1, 2], [3, 4]]) == -2
    assert det([[2, 0, 0], [0, 3, 0], [1, 1, 1]]) == 6


@pytest.mark.parametrize("pts, expected", [
    ([(0,), (1,)], 1),
    ([(0,), (2,)], 2),
    ([(0, 0), (2, 0), (1, 1)], 2),
    ([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)], 1),
])
def test_lattice_index(pts, expected):
    assert lattice_index(pts) == expected


def test_affine_dim():
    assert affine_dim([(0, 0), (1, 1), (2, 2)]) == 1
    assert affine_dim([(3, 4)]) == 0


def test_chart_round_trip():
    pts = [(1, 1, 0), (3, 2, 0), (2, 4, 0)]
    ch = affine_chart(pts)
    assert ch.rank == 2
    for p in pts:
        assert ch.from_chart(ch.to_chart(p)) == p
    assert not ch.contains((0, 0, 1))


def test_quotient_of_edge():
    q = quotient_projection([(0, 0), (2, 0)], 2)
    assert q.target_dim == 1
    assert abs(q((5, 3))[0]) == 3
    assert q((7, 0)) == (0,)


def test_quotient_of_point_is_translation():
    q = quotient_projection([(2, 5)], 2)
    assert q.target_dim == 2
    assert q((2, 5)) == (0, 0)
    assert q((3, 7)) == (1, 2)


def test_quotient_of_diagonal():
    q = quotient_projection([(0, 0), (1, 1)])
    assert q((1, 1)) == (0,)
    assert q((1, 0)) in ((1,), (-1,))


def test_quotient_rejects_empty():
    with pytest.raises(InputError):
        quotient_projection([], 2)
