"""Off-coordinate polytopes and what they compute."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Sequence

from .errors import CheckFailed, InputError
from .lattice import (
    affine_chart,
    affine_dim,
    chart_from_directions,
    dot,
    hermite_normal_form,
    lattice_index,
    rank,
    sub,
)
from .mixed import mixed_volume, sum_dimension
from .polytope import Face, Point, PointSet, convex_hull, lattice_volume
from .semi import DaughterFamily, _c_of_face, classify_faces, suture_system


@dataclass(frozen=True)
class ConeSpec:
    """The cone ``{l_1 >= 0, ..., l_m >= 0}`` in ``R^ambient_dim``."""

    ambient_dim: int
    functionals: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = self.ambient_dim
        if n < 1:
            raise InputError("cone dimension must be positive")
        if len(self.functionals) > n:
            raise InputError(f"at most {n} facet functionals allowed")
        for f in self.functionals:
            if len(f) != n:
                raise InputError(f"functional {list(f)} does not have {n} entries")
            if gcd(*f) != 1:
                raise InputError(f"functional {list(f)} is not primitive")
        if self.functionals and rank(self.functionals) != len(self.functionals):
            raise InputError("facet functionals must be linearly independent")

    @classmethod
    def orthant(cls, n: int, m: int | None = None) -> "ConeSpec":
        """``R^m_{>=0} + R^{n-m}`` with the first ``m`` coordinates bounded."""
        m = n if m is None else m
        return cls(n, tuple(tuple(int(i == j) for j in range(n)) for i in range(m)))

    @property
    def m(self) -> int:
        return len(self.functionals)


def _pointset(P) -> PointSet:
    return P if isinstance(P, PointSet) else PointSet.of(P)


def off_coordinate_daughters(P, C: ConeSpec) -> list[tuple[int, ...]]:
    P = _pointset(P)
    if P.dim != C.ambient_dim:
        raise InputError(f"points in dimension {P.dim}, cone in dimension {C.ambient_dim}")
    for p in P.points:
        for f in C.functionals:
            if dot(f, p) < 0:
                raise InputError(f"point {list(p)} lies outside the cone")
    out = []
    for f in C.functionals:
        D = tuple(i for i, p in enumerate(P.points) if dot(f, p) > 0)
        if not D:
            raise InputError(f"every point lies on the facet {list(f)}; its daughter is empty")
        out.append(D)
    full = tuple(range(len(P)))
    out.extend(full for _ in range(P.dim - C.m))
    return out


def untouched_facets(P, C: ConeSpec) -> tuple[int, ...]:
    """Facets of the cone holding no point; their daughters are the whole set."""
    P = _pointset(P)
    return tuple(k for k, f in enumerate(C.functionals) if all(dot(f, p) for p in P.points))


def off_coordinate_family(P, C: ConeSpec) -> DaughterFamily:
    """Drop the points on each facet of the cone; the family is checked to be semi-interlaced."""
    P = _pointset(P)
    fam = DaughterFamily.build(P, off_coordinate_daughters(P, C))
    rep = classify_faces(fam)
    if not rep.semi:
        raise CheckFailed(f"off-coordinate family is not semi-interlaced at face {list(rep.violation.indices)}")
    return fam


def v_faces(P, C: ConeSpec) -> list[Face]:
    """Faces lying in a face of the cone of the same dimension."""
    P = _pointset(P)
    out = []
    for F in convex_hull(P).faces:
        pts = [P.points[i] for i in F.indices]
        tight = sum(1 for f in C.functionals if all(dot(f, p) == 0 for p in pts))
        if F.dim == P.dim - tight:
            out.append(F)
    return out


def family_mv(fam: DaughterFamily, method: str = "formula", check: bool = False) -> int:
    """Mixed volume of the daughters by the suture formula, the oracle, or both."""
    if method not in ("formula", "oracle"):
        raise InputError(f"unknown method {method!r}")
    oracle = None
    if method == "oracle" or check:
        oracle = mixed_volume([fam.points_of(D) for D in fam.daughters])
    if method == "oracle" and not check:
        return oracle
    value = suture_system(fam).mixed_volume
    if check and value != oracle:
        raise CheckFailed(f"suture formula gives {value}, polarization gives {oracle}")
    return value


def voff(P, C: ConeSpec | None = None, method: str = "formula", check: bool = False) -> int:
    """Mixed volume of the off-coordinate polytopes of ``P`` in the cone ``C``.

    A set that does not span its ambient space has Voff 0: all daughters
    then sit in one proper affine subspace.
    """
    P = _pointset(P)
    C = C or ConeSpec.orthant(P.dim)
    daughters = off_coordinate_daughters(P, C)
    if affine_dim(P.points) < P.dim:
        if check:
            mv = mixed_volume([[P.points[i] for i in D] for D in daughters])
            if mv:
                raise CheckFailed(f"degenerate set has oracle mixed volume {mv}")
        return 0
    return family_mv(off_coordinate_family(P, C), method, check)


def _is_convenient(P: PointSet) -> bool:
    n = P.dim
    if any(x < 0 for p in P.points for x in p):
        return False
    H = convex_hull(P)
    corners = [(0,) * n] + [tuple(int(i == j) for j in range(n)) for i in range(n)]
    return all(H.contains(c) for c in corners)


def newton_number(P, check: bool = False) -> int:
    """Alternating sum of coordinate-subspace volumes of a convenient polytope.

    With ``check`` the value is compared with Voff of the set whenever the
    set contains the standard simplex vertices.
    """
    P = _pointset(P)
    if not _is_convenient(P):
        raise InputError("the hull must lie in the nonnegative orthant and contain 0 and every e_i")
    n = P.dim
    nu = 0
    for k in range(n + 1):
        for E in combinations(range(n), k):
            if k == 0:
                vol = 1
            else:
                off = [i for i in range(n) if i not in E]
                sec = list(dict.fromkeys(tuple(p[i] for i in E) for p in P.points if not any(p[i] for i in off)))
                vol = lattice_volume(sec, dim=k)
            nu += (-1) ** (n - k) * vol
    if check:
        corners = [(0,) * n] + [tuple(int(i == j) for j in range(n)) for i in range(n)]
        if set(corners) <= set(P.points):
            v = voff(P, check=True)
            if v != nu:
                raise CheckFailed(f"Newton number {nu} differs from Voff {v}")
    return nu


@dataclass(frozen=True)
class StretchedBk:
    k: int
    coords: tuple[int, ...]
    blocks: tuple[tuple[Point, ...], ...]  # P_0..P_k in the remaining coordinates
    stretch: tuple[int, ...]


def detect_stretched_bk(P) -> StretchedBk | None:
    """First decomposition of ``P`` as a stretched Cayley sum with a thin top part.

    ``k`` runs upward and the chosen coordinates lexicographically.  Each
    point may be nonzero in at most one chosen coordinate, and all points of
    block ``j`` share the same value ``a_j`` there.
    """
    P = _pointset(P)
    n = P.dim
    if any(x < 0 for p in P.points for x in p):
        raise InputError("points must lie in the nonnegative orthant")
    for k in range(1, n + 1):
        for T in combinations(range(n), k):
            rest = [i for i in range(n) if i not in T]
            blocks: list[list[Point]] = [[] for _ in range(k + 1)]
            stretch: list[int | None] = [None] * k
            ok = True
            for p in P.points:
                hot = [j for j, c in enumerate(T) if p[c]]
                if len(hot) > 1:
                    ok = False
                    break
                q = tuple(p[i] for i in rest)
                if not hot:
                    blocks[0].append(q)
                    continue
                j = hot[0]
                a = p[T[j]]
                if stretch[j] is None:
                    stretch[j] = a
                elif stretch[j] != a:
                    ok = False
                    break
                blocks[j + 1].append(q)
            if not ok or any(not b for b in blocks):
                continue
            if affine_dim(list(dict.fromkeys(blocks[0]))) != n - k:
                continue
            if sum_dimension(blocks[1:]) >= k:
                continue
            return StretchedBk(k, T, tuple(tuple(dict.fromkeys(b)) for b in blocks), tuple(stretch))
    return None


def _face_points(P: PointSet, Fp) -> tuple[Point, ...]:
    H = convex_hull(P)
    if isinstance(Fp, Face):
        key = Fp.indices
    else:
        key = tuple(sorted(set(int(i) for i in Fp)))
    for F in H.faces:
        if F.indices == key:
            return tuple(P.points[i] for i in key)
    raise InputError(f"{list(key)} is not a face")


def orbit_multiplicity(P, Fp) -> int:
    """Multiplicity of the toric variety of ``P`` along the orbit of the face ``Fp``.

    ``Fp`` is a face or the sorted list of all indices on it.  Lattices are
    the saturated lattices of the affine spans.
    """
    P = _pointset(P)
    F = _face_points(P, Fp)
    num = lattice_index(F) * _c_of_face(P.points, F)
    q, r = divmod(num, lattice_index(P.points))
    if r or q < 1:
        raise CheckFailed(f"orbit multiplicity {num}/{lattice_index(P.points)} is not a positive integer")
    return q


def multiplicities(P) -> list[tuple[Face, int]]:
    P = _pointset(P)
    return [(F, orbit_multiplicity(P, F)) for F in convex_hull(P).faces]


def is_smooth(P) -> bool:
    return all(m == 1 for _, m in multiplicities(P))


def _generated_coordinates(P: PointSet) -> PointSet:
    """Coordinates of ``P`` in the lattice affinely generated by ``P``."""
    pts = P.points
    p0 = pts[0]
    diffs = [sub(p, p0) for p in pts[1:]]
    ch = chart_from_directions(p0, diffs)
    r = ch.rank
    if r == 0:
        return PointSet(((0,),), 1)
    loc = [ch.to_chart(p) for p in pts]
    B = hermite_normal_form([sub(c, loc[0]) for c in loc[1:]])
    # solve c = y B for y, B is upper echelon and square here
    out = []
    for c in loc:
        y = [Fraction(0)] * r
        rem = [Fraction(x) for x in sub(c, loc[0])]
        for i, row in enumerate(B):
            piv = next(j for j, x in enumerate(row) if x)
            y[i] = rem[piv] / row[piv]
            rem = [a - y[i] * b for a, b in zip(rem, row)]
        if any(rem) or any(v.denominator != 1 for v in y):
            raise CheckFailed("point outside its generated lattice")
        out.append(tuple(int(v) for v in y))
    return PointSet(tuple(out), r)


def smooth_by_generated_lattice(P) -> bool:
    """Smoothness read off in the lattice generated by ``P``: every coefficient and face index is 1."""
    Q = _generated_coordinates(_pointset(P))
    for F in convex_hull(Q).faces:
        pts = tuple(Q.points[i] for i in F.indices)
        if lattice_index(pts) != 1 or _c_of_face(Q.points, pts) != 1:
            return False
    return True


def cayley(blocks: Sequence[Sequence[Point]], block_dim: int) -> PointSet:
    """``P_0 * P_1 * ... * P_m`` with the level coordinates first."""
    m = len(blocks) - 1
    pts = []
    for lvl, B in enumerate(blocks):
        if not B:
            raise InputError(f"Cayley block {lvl} is empty")
        head = tuple(int(lvl == j + 1) for j in range(m))
        for p in B:
            if len(p) != block_dim:
                raise InputError(f"support point {list(p)} does not have {block_dim} coordinates")
            pts.append(head + tuple(int(x) for x in p))
    return PointSet.of(pts, m + block_dim)


@dataclass(frozen=True)
class CayleyInput:
    block_dim: int
    supports: tuple[tuple[Point, ...], ...]

    @classmethod
    def of(cls, supports, block_dim: int | None = None) -> "CayleyInput":
        sup = tuple(tuple(dict.fromkeys(tuple(int(x) for x in p) for p in s)) for s in supports)
        if not sup or any(not s for s in sup):
            raise InputError("supports must be a nonempty list of nonempty sets")
        d = block_dim if block_dim is not None else len(sup[0][0])
        if any(len(p) != d for s in sup for p in s):
            raise InputError(f"support points must have {d} coordinates")
        return cls(d, sup)

    @property
    def m(self) -> int:
        return len(self.supports)


def _cayley_voff(blocks, inp: CayleyInput, method: str, check: bool) -> int:
    P = cayley(blocks, inp.block_dim)
    return voff(P, ConeSpec.orthant(P.dim, inp.m), method, check)


def ml_degree(supports, u: Sequence[int], method: str = "formula", check: bool = False) -> int:
    """Voff of ``{u} * P_1 * ... * P_m`` over ``R^m_{>=0} + R^{n-m}``."""
    inp = supports if isinstance(supports, CayleyInput) else CayleyInput.of(supports)
    u = tuple(int(x) for x in u)
    if len(u) != inp.block_dim:
        raise InputError(f"u must have {inp.block_dim} coordinates")
    return _cayley_voff([(u,), *inp.supports], inp, method, check)


def distance_support(d: int) -> tuple[Point, ...]:
    """The origin, the unit vectors and their doubles."""
    pts = [(0,) * d]
    for s in (1, 2):
        pts.extend(tuple(s * int(i == j) for j in range(d)) for i in range(d))
    return tuple(pts)


def ed_degree(supports, method: str = "formula", check: bool = False) -> int:
    """Voff of ``rho * P_1 * ... * P_m`` over the full nonnegative orthant.

    Every coordinate is bounded: the toric partials ``x_j d/dx_j`` of the
    squared distance lose the monomials with vanishing ``x_j`` exponent.
    """
    inp = supports if isinstance(supports, CayleyInput) else CayleyInput.of(supports)
    zero = (0,) * inp.block_dim
    for k, s in enumerate(inp.supports):
        if zero not in s:
            raise InputError(f"support {k} does not contain the origin")
        if any(x < 0 for p in s for x in p):
            raise InputError(f"support {k} has a negative exponent")
    P = cayley([distance_support(inp.block_dim), *inp.supports], inp.block_dim)
    return voff(P, ConeSpec.orthant(P.dim), method, check)


def polar_degree(support, d: int, method: str = "formula", check: bool = False) -> int:
    """Polar degree of a degree-``d`` form with the given support in ``Z^{n+1}``.

    The configuration ``support * vertices(simplex)`` spans an affine
    hyperplane of ``Z^{n+2}``; it is put in lattice coordinates there and the
    daughters drop the points with ``x_i = 0``.
    """
    if d < 1:
        raise InputError("degree must be positive")
    sup = tuple(dict.fromkeys(tuple(int(x) for x in p) for p in support))
    if not sup:
        raise InputError("empty support")
    n1 = len(sup[0])
    for p in sup:
        if len(p) != n1 or any(x < 0 for x in p) or sum(p) != d:
            raise InputError(f"support point {list(p)} is not in the degree-{d} simplex")
    pts = [p + (0,) for p in sup]
    pts += [tuple(int(i == j) for j in range(n1)) + (1,) for i in range(n1)]
    pts = list(dict.fromkeys(pts))
    ch = affine_chart(pts)
    if ch.rank != n1:
        # the support misses a direction; everything lies in a lower flat
        return 0
    local = PointSet(tuple(ch.to_chart(p) for p in pts), n1)
    daughters = []
    for i in range(n1):
        D = tuple(k for k, p in enumerate(pts) if p[i] > 0)
        if not D:
            raise InputError(f"no point has a positive coordinate {i}")
        daughters.append(D)
    fam = DaughterFamily.build(local, daughters)
    return family_mv(fam, method, check)
