"""Daughter polytopes, semi-interlaced families and the suture system."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Sequence

from .errors import CheckFailed, DomainError, InputError
from .lattice import affine_dim, dot
from .mixed import Lift, mixed_volume, mixed_volume_in_span, regular_cell
from .polytope import (
    Face,
    Point,
    PointSet,
    Polytope,
    convex_hull,
    hull_vertices,
    lattice_volume,
    polytopes_intersect,
    sum_vertices,
)
from .lattice import quotient_projection


def _indices(D, size: int) -> tuple[int, ...]:
    idx = tuple(sorted(set(int(i) for i in D)))
    if not idx:
        raise InputError("a daughter must be nonempty")
    if idx[0] < 0 or idx[-1] >= size:
        raise InputError(f"daughter index out of range 0..{size - 1}")
    return idx


@dataclass(frozen=True)
class DaughterCheck:
    accepted: bool
    removed: tuple[Face, ...]
    violation: str | None = None


def daughter_family(D: Sequence[int], mother: PointSet, hull: Polytope | None = None) -> DaughterCheck:
    """Test whether ``conv(D)`` is a daughter polytope of ``mother``.

    ``removed`` lists the maximal faces of the mother hull that miss ``D``.
    A face meets ``conv(D)`` exactly when it holds one of the points of
    ``D``, since those points sit inside the mother set.
    """
    idx = _indices(D, len(mother))
    H = hull or convex_hull(mother)
    Dset = set(idx)
    missing = [F for F in H.faces if not Dset.intersection(F.indices)]
    sets = [frozenset(F.indices) for F in missing]
    removed = tuple(F for F, s in zip(missing, sets) if not any(s < t for t in sets))
    for A, B in combinations(removed, 2):
        if set(A.indices) & set(B.indices):
            return DaughterCheck(False, removed, f"removed faces {list(A.indices)} and {list(B.indices)} intersect")
    gone = set().union(*(F.indices for F in removed)) if removed else set()
    keep = [p for i, p in enumerate(mother.points) if i not in gone]
    mine = [mother.points[i] for i in idx]
    if set(hull_vertices(mine)) != set(hull_vertices(keep)):
        return DaughterCheck(False, removed, "the hull of the points outside the removed faces differs from the daughter")
    return DaughterCheck(True, removed)


@dataclass(frozen=True)
class FaceReport:
    semi: bool
    sutures: tuple[Face, ...]
    violation: Face | None
    meets: tuple[tuple[int, ...], ...]  # daughters meeting each face of the hull, in face order


@dataclass(frozen=True)
class DaughterFamily:
    """A mother set with ``n`` daughters given as index subsets."""

    mother: PointSet
    daughters: tuple[tuple[int, ...], ...]
    removed: tuple[tuple[Face, ...], ...]

    @classmethod
    def build(cls, mother, daughters, verify: bool = True) -> "DaughterFamily":
        if not isinstance(mother, PointSet):
            mother = PointSet.of(mother)
        if not len(mother):
            raise InputError("empty mother set")
        ds = tuple(_indices(D, len(mother)) for D in daughters)
        if len(ds) != mother.dim:
            raise InputError(f"need {mother.dim} daughters in dimension {mother.dim}, got {len(ds)}")
        H = convex_hull(mother)
        removed = []
        for k, D in enumerate(ds):
            chk = daughter_family(D, mother, H)
            if verify and not chk.accepted:
                raise DomainError(f"daughter {k} rejected: {chk.violation}")
            removed.append(chk.removed)
        fam = cls(mother, ds, tuple(removed))
        fam.__dict__["hull"] = H
        return fam

    @property
    def n(self) -> int:
        return self.mother.dim

    @cached_property
    def hull(self) -> Polytope:
        return convex_hull(self.mother)

    def points_of(self, idx: Sequence[int]) -> tuple[Point, ...]:
        return tuple(self.mother.points[i] for i in idx)

    def meeting(self, F: Face) -> tuple[int, ...]:
        """Daughters with a point on ``F``."""
        s = set(F.indices)
        return tuple(k for k, D in enumerate(self.daughters) if s.intersection(D))

    @cached_property
    def report(self) -> FaceReport:
        return _classify(self)


def is_interlaced(Ds: Sequence[Sequence[int]], mother: PointSet) -> bool:
    """Every proper face of ``conv(mother)`` meets at least ``dim F + 1`` of the ``D_i``.

    Pass the union of the ``D_i`` as ``mother`` to test against their own hull.
    """
    if not isinstance(mother, PointSet):
        mother = PointSet.of(mother)
    ds = [set(_indices(D, len(mother))) for D in Ds]
    H = convex_hull(mother)
    for F in H.faces:
        if F.dim == H.dim:
            continue
        hit = sum(1 for D in ds if D.intersection(F.indices))
        if hit < F.dim + 1:
            return False
    return True


def _classify(fam: DaughterFamily) -> FaceReport:
    H = fam.hull
    if H.dim != fam.n:
        raise InputError(f"the mother hull has dimension {H.dim}, expected {fam.n}")
    sutures = []
    meets = []
    violation = None
    for F in H.faces:
        m = fam.meeting(F)
        meets.append(m)
        if len(m) < F.dim and violation is None:
            violation = F
        if len(m) == F.dim:
            sutures.append(F)
    return FaceReport(violation is None, tuple(sutures), violation, tuple(meets))


def classify_faces(fam: DaughterFamily) -> FaceReport:
    """Semi-interlacedness, the sutures, and the first face meeting too few daughters."""
    return fam.report


def _is_face_of(F: Sequence[Point], Fp: Sequence[Point]) -> bool:
    if not set(Fp) <= set(F):
        return False
    if set(Fp) == set(F):
        return True
    H = convex_hull(PointSet(tuple(F), len(F[0])))
    pos = {p: i for i, p in enumerate(H.source.points)}
    want = {pos[p] for p in Fp}
    G = set(range(len(F)))
    for s in H.facet_sets:
        if want <= s:
            G &= s
    return G == want


def _c_of_face(F: Sequence[Point], Fp: Sequence[Point]) -> int:
    n = len(F[0])
    if set(F) == set(Fp):
        return 1
    pi = quotient_projection(list(Fp), n)
    k = affine_dim(F) - affine_dim(Fp)
    whole = list(dict.fromkeys(pi(p) for p in F))
    inner = set(Fp)
    rest = list(dict.fromkeys(pi(p) for p in F if p not in inner))
    if not pi.target_dim:
        return 1
    return lattice_volume(whole, dim=k) - lattice_volume(rest, dim=k)


def c_coefficient(F, Fp) -> int:
    """Combinatorial coefficient of the pair ``Fp`` inside ``F`` (0 unless ``Fp`` is a face)."""
    F = tuple(dict.fromkeys(tuple(p) for p in F))
    Fp = tuple(dict.fromkeys(tuple(p) for p in Fp))
    if not F or not Fp:
        raise InputError("combinatorial coefficient of an empty set")
    if len({len(p) for p in F + Fp}) != 1:
        raise InputError("sets live in different ambient dimensions")
    if not _is_face_of(F, Fp):
        return 0
    return _c_of_face(F, Fp)


@dataclass(frozen=True)
class SutureTable:
    """Sutures ascending by dimension, then by index list.

    ``C[i][j]`` is the coefficient of suture ``j`` inside suture ``i``, so
    ``v = C vdag`` and ``vdag = Dmat v`` with ``Dmat = C^-1``.
    """

    sutures: tuple[Face, ...]
    C: tuple[tuple[int, ...], ...]
    Dmat: tuple[tuple[int, ...], ...]
    v: tuple[int, ...]
    vdag: tuple[int, ...]
    direct: tuple[int, ...] | None = None

    @property
    def mixed_volume(self) -> int:
        return self.vdag[-1]

    def index(self, F) -> int:
        key = tuple(F.indices) if isinstance(F, Face) else tuple(sorted(F))
        for k, S in enumerate(self.sutures):
            if S.indices == key:
                return k
        raise KeyError(key)


def invert_unitriangular(C: Sequence[Sequence[int]]) -> list[list[int]]:
    """Exact inverse by Gauss-Jordan over the rationals; integrality is asserted."""
    m = len(C)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(m)] for i, row in enumerate(C)]
    for c in range(m):
        piv = next((r for r in range(c, m) if A[r][c]), None)
        if piv is None:
            raise CheckFailed("coefficient matrix is singular")
        A[c], A[piv] = A[piv], A[c]
        p = A[c][c]
        A[c] = [x / p for x in A[c]]
        for r in range(m):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    out = []
    for row in A:
        inv = row[m:]
        if any(x.denominator != 1 for x in inv):
            raise CheckFailed("inverse coefficient matrix is not integral")
        out.append([int(x) for x in inv])
    return out


def restricted_mv(fam: DaughterFamily, S: Face) -> int:
    """Mixed volume of the daughters meeting ``S``, each cut down to ``S``, inside ``aff(S)``."""
    s = set(S.indices)
    parts = [fam.points_of(sorted(s.intersection(fam.daughters[k]))) for k in fam.meeting(S)]
    if len(parts) != S.dim:
        raise CheckFailed(f"face {list(S.indices)} is met by {len(parts)} daughters, not {S.dim}")
    return mixed_volume_in_span(parts)


def suture_system(fam: DaughterFamily, check: bool = False) -> SutureTable:
    """Coefficient matrix, its inverse, and the volume vectors over the sutures.

    ``vdag`` comes from the triangular recursion; the matrix inverse is a
    cross-check.  With ``check`` every component is also compared against a
    direct mixed volume computation.
    """
    rep = classify_faces(fam)
    if not rep.semi:
        F = rep.violation
        raise DomainError(
            f"not semi-interlaced: face {list(F.indices)} of dimension {F.dim} meets fewer daughters", face=F
        )
    sut = rep.sutures
    pts = [fam.points_of(S.indices) for S in sut]
    m = len(sut)
    C = [[0] * m for _ in range(m)]
    for i in range(m):
        C[i][i] = 1
        si = set(sut[i].indices)
        for j in range(i):
            if sut[j].dim < sut[i].dim and si.issuperset(sut[j].indices):
                C[i][j] = _c_of_face(pts[i], pts[j])
    v = [1 if S.dim == 0 else lattice_volume(p) for S, p in zip(sut, pts)]
    vdag = []
    for i in range(m):
        vdag.append(v[i] - sum(C[i][j] * vdag[j] for j in range(i)))
    Dm = invert_unitriangular(C)
    via_inverse = [sum(a * b for a, b in zip(row, v)) for row in Dm]
    if via_inverse != vdag:
        raise CheckFailed("recursion and matrix inverse disagree")
    direct = None
    if check:
        direct = tuple(1 if S.dim == 0 else restricted_mv(fam, S) for S in sut)
        for S, a, b in zip(sut, vdag, direct):
            if a != b:
                raise CheckFailed(f"suture {list(S.indices)}: formula gives {a}, direct mixed volume gives {b}")
    return SutureTable(
        sutures=sut,
        C=tuple(map(tuple, C)),
        Dmat=tuple(map(tuple, Dm)),
        v=tuple(v),
        vdag=tuple(vdag),
        direct=direct,
    )


def sign_pattern_applies(fam: DaughterFamily, S: Face) -> bool:
    """Hypotheses under which the inverse entries over ``S`` alternate in sign.

    The cone spanned by the hull at ``S`` must be simplicial, every face
    through ``S`` a suture, and every coefficient of ``S`` in such a face 1.
    """
    rep = classify_faces(fam)
    keys = {F.indices for F in rep.sutures}
    if S.indices not in keys:
        return False
    s = set(S.indices)
    above = [F for F in fam.hull.faces if s <= set(F.indices)]
    rays = sum(1 for F in above if F.dim == S.dim + 1)
    if rays != fam.n - S.dim:
        return False
    for F in above:
        if F.indices not in keys:
            return False
        if F.dim > S.dim and _c_of_face(fam.points_of(F.indices), fam.points_of(S.indices)) != 1:
            return False
    return True


def find_face(fam: DaughterFamily, indices: Sequence[int]) -> Face:
    key = tuple(sorted(set(int(i) for i in indices)))
    for F in fam.hull.faces:
        if F.indices == key:
            return F
    raise InputError(f"{list(key)} is not a face of the mother hull")


@dataclass(frozen=True)
class LemmaTerm:
    xi: tuple[Fraction, ...]
    lhs: int
    rhs: int
    meeting: int
    needed: int

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs and self.meeting >= self.needed


@dataclass(frozen=True)
class LemmaReport:
    suture: Face
    local_set: tuple[Point, ...]
    terms: tuple[LemmaTerm, ...]

    @property
    def ok(self) -> bool:
        return all(t.ok for t in self.terms)


def local_set(fam: DaughterFamily, S: Face, pi=None) -> tuple[Point, ...]:
    """Projected points lying in the closure of ``pi(P)`` minus ``pi(conv(P \\ S))``."""
    pts = fam.mother.points
    pi = pi or quotient_projection(fam.points_of(S.indices), fam.n)
    k = pi.target_dim
    s = set(S.indices)
    proj = tuple(dict.fromkeys(pi(p) for p in pts))
    O = (0,) * k
    if k == 0:
        return (O,)
    rest = tuple(dict.fromkeys(pi(p) for i, p in enumerate(pts) if i not in s))
    B = convex_hull(PointSet(rest, k))
    if B.dim < k:
        return proj
    seen = [(g, c) for g, c in B.facets if dot(g, O) > c]
    return tuple(x for x in proj if x == O or any(dot(g, x) >= c for g, c in seen))


def verify_main_lemma(fam: DaughterFamily, S) -> LemmaReport:
    """Check the local volume identity at ``S`` for every relevant covector.

    For each covector from the common refinement of the lifted sets, with
    ``O_S`` the unique maximizer on the projected mother set, the mixed
    volume of the cells of the daughters missing ``S`` must equal the
    volume of the cell of the local lift.  The intersection count from the
    degenerate case is checked alongside.
    """
    rep = classify_faces(fam)
    if not rep.semi:
        raise DomainError("family is not semi-interlaced", face=rep.violation)
    if not isinstance(S, Face):
        S = find_face(fam, S)
    if S.indices not in {F.indices for F in rep.sutures}:
        raise InputError(f"{list(S.indices)} is not a suture")
    n = fam.n
    k = n - S.dim
    pi = quotient_projection(fam.points_of(S.indices), n)
    PS = local_set(fam, S, pi)
    if k == 0:
        return LemmaReport(S, PS, ())
    pts = fam.mother.points
    O = (0,) * k
    fibers: dict[Point, list[int]] = {}
    for i, p in enumerate(pts):
        fibers.setdefault(pi(p), []).append(i)
    proj = tuple(fibers)
    J = [j for j in range(n) if j not in fam.meeting(S)]

    p_lift = Lift(PointSet(PS, k), tuple(Fraction(-1 if x == O else 0) for x in PS))
    d_lifts = []
    for j in J:
        Dj = set(fam.daughters[j])
        d_lifts.append(Lift(PointSet(proj, k), tuple(Fraction(0 if Dj.intersection(fibers[x]) else -1) for x in proj)))
    A = hull_vertices(proj)
    lifted = [tuple(x + (int(h),) for x, h in zip(L.base.points, L.heights)) for L in [p_lift, *d_lifts]]
    lifted.append(tuple(x + (0,) for x in A))
    summed = sum_vertices(lifted)
    bottom = min(p[-1] for p in summed) - 1
    cloud = tuple(dict.fromkeys(summed + tuple(p[:-1] + (bottom,) for p in summed)))
    H = convex_hull(PointSet(cloud, k + 1))
    if H.dim != k + 1:
        raise CheckFailed("lifted local configuration is not full-dimensional")

    projected_daughters = [tuple(dict.fromkeys(pi(pts[i]) for i in fam.daughters[j])) for j in J]
    others = [x for x in PS if x != O]
    terms = []
    for a, _ in H.facets:
        if a[-1] <= 0:
            continue
        xi = tuple(Fraction(x, a[-1]) for x in a[:-1])
        vals = [sum(c * y for c, y in zip(xi, x)) for x in proj]
        top = max(vals)
        if [x for x, v in zip(proj, vals) if v == top] != [O]:
            continue
        cells = [regular_cell(L, xi) for L in d_lifts]
        lhs = mixed_volume(cells)
        rhs = lattice_volume(regular_cell(p_lift, xi), dim=k)
        if others:
            ov = [sum(c * y for c, y in zip(xi, x)) for x in others]
            best = max(ov)
            Y = [x for x, v in zip(others, ov) if v == best]
            need = affine_dim(Y) + 1
            hit = sum(1 for D in projected_daughters if polytopes_intersect(D, Y))
        else:
            need, hit = 0, 0
        terms.append(LemmaTerm(xi, lhs, rhs, hit, need))
    return LemmaReport(S, PS, tuple(terms))
