"""Lattice point sets, their convex hulls, faces and lattice volumes."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

from .errors import InputError
from .hull import quickhull
from .lattice import AffineChart, affine_chart, det, rank, sub

Point = tuple[int, ...]


@dataclass(frozen=True)
class PointSet:
    """Finite set of distinct integer points in ``Z^dim`` (input order kept)."""

    points: tuple[Point, ...]
    dim: int

    def __post_init__(self):
        if self.dim < 1:
            raise InputError("ambient dimension must be at least 1")
        for p in self.points:
            if len(p) != self.dim:
                raise InputError(f"point {p} does not have {self.dim} coordinates")
        if len(set(self.points)) != len(self.points):
            raise InputError("points must be distinct")

    @classmethod
    def of(cls, points: Iterable[Sequence[int]], dim: int | None = None) -> "PointSet":
        """Build a point set, dropping repeated points."""
        seen = {}
        for p in points:
            seen.setdefault(tuple(int(x) for x in p), None)
        pts = tuple(seen)
        if dim is None:
            if not pts:
                raise InputError("cannot infer the dimension of an empty point set")
            dim = len(pts[0])
        return cls(pts, dim)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def subset(self, indices: Iterable[int]) -> "PointSet":
        return PointSet(tuple(self.points[i] for i in indices), self.dim)


def as_points(P) -> tuple[Point, ...]:
    if isinstance(P, PointSet):
        return P.points
    return tuple(dict.fromkeys(tuple(int(x) for x in p) for p in P))


@dataclass(frozen=True)
class Face:
    """A face of a finite set: every source point on the face, by index."""

    indices: tuple[int, ...]
    witness: tuple[int, ...]
    dim: int

    def __contains__(self, i):
        return i in self._set

    @cached_property
    def _set(self):
        return frozenset(self.indices)

    def key(self):
        return (self.dim, self.indices)


@dataclass
class Polytope:
    """Convex hull of a point set with exact V- and H-descriptions.

    Facets and equations are ambient covectors: a source point ``x``
    satisfies ``<a, x> <= b`` for every facet ``(a, b)`` and
    ``<e, x> == c`` for every equation ``(e, c)``.  For lower-dimensional
    hulls the facets live inside the affine span and are only meaningful
    together with the equations.
    """

    source: PointSet
    chart: AffineChart
    local: tuple[Point, ...]
    _simplices: list = field(repr=False)

    @property
    def dim(self) -> int:
        return self.chart.rank

    @cached_property
    def _local_facets(self) -> list[tuple[tuple[int, ...], int, frozenset]]:
        d = self.dim
        if d == 0:
            return []
        if d == 1:
            xs = [c[0] for c in self.local]
            lo, hi = min(xs), max(xs)
            return [
                ((-1,), -lo, frozenset(i for i, x in enumerate(xs) if x == lo)),
                ((1,), hi, frozenset(i for i, x in enumerate(xs) if x == hi)),
            ]
        keys = sorted({(s.normal, s.offset) for s in self._simplices})
        out = []
        for a, b in keys:
            on = frozenset(i for i, c in enumerate(self.local) if sum(x * y for x, y in zip(a, c)) == b)
            out.append((a, b, on))
        return out

    @cached_property
    def facets(self) -> list[tuple[tuple[int, ...], int]]:
        ch = self.chart
        out = []
        for a, b, _ in self._local_facets:
            amb = ch.covector_to_ambient(a)
            out.append((amb, b + sum(x * y for x, y in zip(amb, ch.origin))))
        return out

    @cached_property
    def facet_sets(self) -> list[frozenset]:
        """Source indices lying on each facet (same order as ``facets``)."""
        return [on for _, _, on in self._local_facets]

    @cached_property
    def equations(self) -> list[tuple[tuple[int, ...], int]]:
        ch = self.chart
        return [(row, sum(x * y for x, y in zip(row, ch.origin))) for row in ch.quotient]

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        d = self.dim
        if d == 0:
            return (0,)
        lf = self._local_facets
        out = []
        for i in range(len(self.local)):
            normals = [a for a, _, on in lf if i in on]
            if len(normals) >= d and rank(normals) == d:
                out.append(i)
        return tuple(out)

    @cached_property
    def vertex_points(self) -> tuple[Point, ...]:
        return tuple(self.source.points[i] for i in self.vertices)

    @cached_property
    def volume(self) -> int:
        """Normalized volume in the saturated lattice of the affine span."""
        d = self.dim
        if d == 0:
            return 1
        if d == 1:
            xs = [c[0] for c in self.local]
            return max(xs) - min(xs)
        # fan from the lexicographically smallest vertex over the boundary
        loc = self.local
        apex_i = min(range(len(loc)), key=lambda i: self.source.points[i])
        apex = loc[apex_i]
        total = 0
        for s in self._simplices:
            if apex_i in s.verts:
                continue
            if sum(x * y for x, y in zip(s.normal, apex)) == s.offset:
                continue
            total += abs(det([sub(loc[v], apex) for v in s.verts]))
        return total

    def contains(self, x: Sequence[int]) -> bool:
        if len(x) != self.source.dim:
            return False
        ch = self.chart
        if not ch.contains(x):
            return False
        c = ch.to_chart(x)
        return all(sum(p * q for p, q in zip(a, c)) <= b for a, b, _ in self._local_facets)

    def support(self, xi: Sequence) -> tuple[tuple[int, ...], object]:
        vals = [sum(a * b for a, b in zip(xi, p)) for p in self.source.points]
        m = max(vals)
        return tuple(i for i, v in enumerate(vals) if v == m), m

    @cached_property
    def faces(self) -> list[Face]:
        return _enumerate_faces(self)


def convex_hull(P) -> Polytope:
    if not isinstance(P, PointSet):
        P = PointSet.of(P)
    if not len(P):
        raise InputError("convex hull of an empty point set")
    ch = affine_chart(P.points)
    local = tuple(ch.to_chart(p) for p in P.points)
    simplices = quickhull(local) if ch.rank >= 2 else []
    return Polytope(P, ch, local, simplices)


def support_face(P: Polytope, xi: Sequence) -> tuple[Face, object]:
    """Face of ``P`` where ``xi`` is maximal, together with the maximum."""
    idx, h = P.support(xi)
    pts = [P.source.points[i] for i in idx]
    return Face(idx, tuple(xi), _rank_of(pts)), h


def _rank_of(pts):
    p0 = pts[0]
    return rank([sub(p, p0) for p in pts[1:]])


def _enumerate_faces(P: Polytope) -> list[Face]:
    n_src = len(P.source)
    everything = frozenset(range(n_src))
    sets = P.facet_sets
    normals = [a for a, _ in P.facets]
    amb_dim = P.source.dim
    found = {everything}
    frontier = [everything]
    while frontier:
        nxt = []
        for F in frontier:
            for S in sets:
                if F <= S:
                    continue
                G = F & S
                if G and G not in found:
                    found.add(G)
                    nxt.append(G)
        frontier = nxt
    faces = []
    pts = P.source.points
    for F in found:
        w = [0] * amb_dim
        for a, S in zip(normals, sets):
            if F <= S:
                for k in range(amb_dim):
                    w[k] += a[k]
        idx = tuple(sorted(F))
        faces.append(Face(idx, tuple(w), _rank_of([pts[i] for i in idx])))
    faces.sort(key=Face.key)
    return faces


def enumerate_faces(P: Polytope) -> list[Face]:
    """All nonempty faces including ``P``, ordered by dimension then indices."""
    return P.faces


def lattice_volume(P, dim: int | None = None) -> int:
    """Lattice volume of ``conv(P)`` inside its own affine span.

    With ``dim`` given, sets whose span has smaller dimension report 0.
    """
    pts = as_points(P)
    if not pts:
        raise InputError("lattice volume of an empty set")
    if len(pts) == 1:
        return 1 if not dim else 0
    H = convex_hull(PointSet(pts, len(pts[0])))
    if dim is not None and H.dim < dim:
        return 0
    return H.volume


def minkowski_sum(A, B) -> PointSet:
    a, b = as_points(A), as_points(B)
    if a and b and len(a[0]) != len(b[0]):
        raise InputError("Minkowski sum of sets with different ambient dimensions")
    if not a or not b:
        raise InputError("Minkowski sum with an empty set")
    out = dict.fromkeys(tuple(x + y for x, y in zip(p, q)) for p in a for q in b)
    return PointSet(tuple(out), len(a[0]))


def hull_vertices(pts: Sequence[Point]) -> tuple[Point, ...]:
    pts = as_points(pts)
    if len(pts) <= 2:
        return tuple(pts)
    return convex_hull(PointSet(pts, len(pts[0]))).vertex_points


def sum_vertices(sets: Sequence[Sequence[Point]]) -> tuple[Point, ...]:
    """Vertices of the Minkowski sum, pruning to vertices after each step."""
    acc = hull_vertices(sets[0])
    for s in sets[1:]:
        s = hull_vertices(s)
        acc = hull_vertices(tuple(dict.fromkeys(tuple(x + y for x, y in zip(p, q)) for p in acc for q in s)))
    return acc


def lattice_points(P: Polytope) -> tuple[Point, ...]:
    """All integer points of ``conv(P)`` via a bounding-box filter."""
    pts = P.source.points
    n = P.source.dim
    lo = [min(p[k] for p in pts) for k in range(n)]
    hi = [max(p[k] for p in pts) for k in range(n)]
    return tuple(x for x in product(*(range(l, h + 1) for l, h in zip(lo, hi))) if P.contains(x))


def polytopes_intersect(X: Sequence[Point], Y: Sequence[Point]) -> bool:
    """Exact test whether ``conv(X)`` and ``conv(Y)`` meet."""
    X, Y = as_points(X), as_points(Y)
    if set(X) & set(Y):
        return True
    n = len(X[0])
    nx, ny = len(X), len(Y)
    rows = []
    rhs = []
    for k in range(n):
        rows.append([Fraction(p[k]) for p in X] + [Fraction(-q[k]) for q in Y])
        rhs.append(Fraction(0))
    rows.append([Fraction(1)] * nx + [Fraction(0)] * ny)
    rhs.append(Fraction(1))
    rows.append([Fraction(0)] * nx + [Fraction(1)] * ny)
    rhs.append(Fraction(1))
    return lp_feasible(rows, rhs)


def lp_feasible(A: list[list[Fraction]], b: list[Fraction]) -> bool:
    """Is ``{x >= 0 : A x = b}`` nonempty?  Phase-one simplex, Bland's rule."""
    m = len(A)
    nvar = len(A[0]) if m else 0
    T = []
    for row, rhs in zip(A, b):
        row = list(row)
        if rhs < 0:
            row = [-x for x in row]
            rhs = -rhs
        T.append(row + [Fraction(int(i == len(T))) for i in range(m)] + [rhs])
    basis = [nvar + i for i in range(m)]
    width = nvar + m
    # objective: minimize the sum of artificials, i.e. maximize -sum
    obj = [Fraction(0)] * (width + 1)
    for row in T:
        for j in range(nvar):
            obj[j] += row[j]
        obj[-1] += row[-1]
    while True:
        col = next((j for j in range(width) if obj[j] > 0), None)
        if col is None:
            break
        best = None
        for i, row in enumerate(T):
            if row[col] > 0:
                ratio = row[-1] / row[col]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            break
        r = best[1]
        pv = T[r][col]
        T[r] = [x / pv for x in T[r]]
        for i in range(m):
            if i != r and T[i][col]:
                f = T[i][col]
                T[i] = [x - f * y for x, y in zip(T[i], T[r])]
        f = obj[col]
        obj = [x - f * y for x, y in zip(obj, T[r])]
        basis[r] = col
    return obj[-1] == 0
