"""Mixed volumes: the polarization oracle and Khovanskii's subdivision formula."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial, lcm
from typing import Sequence

from .errors import CheckFailed, InputError
from .lattice import chart_from_directions, quotient_projection, rank, sub
from .polytope import Point, PointSet, as_points, convex_hull, hull_vertices, sum_vertices


def _tuple_of_sets(Ps, n: int | None = None) -> list[tuple[Point, ...]]:
    sets = [as_points(P) for P in Ps]
    if any(not s for s in sets):
        raise InputError("mixed volume arguments must be nonempty")
    n = len(sets) if n is None else n
    for P, s in zip(Ps, sets):
        d = P.dim if isinstance(P, PointSet) else len(s[0])
        if d != n:
            raise InputError(f"expected {n} sets in dimension {n}, got a set in dimension {d}")
        if any(len(p) != n for p in s):
            raise InputError("ragged point coordinates")
    return sets


def mixed_volume(Ps: Sequence) -> int:
    """``MV(P_1, ..., P_n)`` for ``n`` lattice sets in ``Z^n``.

    Computed by inclusion-exclusion over the lattice volumes of all subset
    Minkowski sums, divided by ``n!``.  The empty tuple has mixed volume 1.
    """
    sets = _tuple_of_sets(Ps)
    n = len(sets)
    if n == 0:
        return 1
    verts = [hull_vertices(s) for s in sets]
    sums: dict[int, tuple[Point, ...]] = {}
    total = 0
    for mask in range(1, 1 << n):
        low = mask & -mask
        i = low.bit_length() - 1
        rest = mask ^ low
        if rest:
            cand = tuple(dict.fromkeys(tuple(x + y for x, y in zip(p, q)) for p in sums[rest] for q in verts[i]))
        else:
            cand = verts[i]
        H = convex_hull(PointSet(cand, n))
        sums[mask] = H.vertex_points if len(cand) > 2 else cand
        if H.dim == n:
            total += (-1) ** (n - bin(mask).count("1")) * H.volume
    q, r = divmod(total, factorial(n))
    if r:
        raise CheckFailed(f"polarization sum {total} is not divisible by {n}!")
    return q


def _directions(sets):
    out = []
    for s in sets:
        p0 = s[0]
        out.extend(sub(p, p0) for p in s[1:])
    return out


def mixed_volume_in_span(Ps: Sequence) -> int:
    """Mixed volume of ``k`` sets whose difference vectors span at most ``k`` dimensions.

    The sets may live in a higher ambient space; the volume is taken in the
    saturated lattice of the common direction space.
    """
    sets = [as_points(P) for P in Ps]
    if any(not s for s in sets):
        raise InputError("mixed volume arguments must be nonempty")
    k = len(sets)
    if k == 0:
        return 1
    dirs = _directions(sets)
    n = len(sets[0][0])
    r = rank(dirs) if dirs else 0
    if r > k:
        raise InputError(f"{k} sets span a {r}-dimensional direction space")
    if r < k:
        return 0
    ch = chart_from_directions((0,) * n, dirs)
    return mixed_volume([tuple(dict.fromkeys(ch.to_linear_chart(p) for p in s)) for s in sets])


def sum_dimension(sets: Sequence[Sequence[Point]]) -> int:
    dirs = _directions(sets)
    return rank(dirs) if dirs else 0


def mv_zero_witness(Ps: Sequence) -> tuple[int, ...] | None:
    """Smallest (then lexicographically first) index subset whose Minkowski sum is too thin.

    A subset ``S`` with ``dim(sum_{i in S} P_i) < |S|`` forces the mixed
    volume to vanish, and one exists exactly when it does.
    """
    sets = _tuple_of_sets(Ps)
    n = len(sets)
    for size in range(1, n + 1):
        for S in combinations(range(n), size):
            if sum_dimension([sets[i] for i in S]) < size:
                return S
    return None


def mv_split(Ps: Sequence, k: int) -> int:
    """Mixed volume via the product formula when ``P_1..P_k`` lie in a ``k``-flat."""
    sets = _tuple_of_sets(Ps)
    n = len(sets)
    if not 0 <= k <= n:
        raise InputError(f"split index {k} out of range for {n} sets")
    if k in (0, n):
        return mixed_volume(sets)
    head = [p for s in sets[:k] for p in s]
    q = sum_dimension([head])
    if q > k:
        raise InputError(f"the first {k} sets span an affine space of dimension {q}")
    if q < k:
        return 0
    first = mixed_volume_in_span(sets[:k])
    if first == 0:
        return 0
    pi = quotient_projection(head, n)
    rest = [tuple(dict.fromkeys(pi(p) for p in s)) for s in sets[k:]]
    return first * mixed_volume(rest)


@dataclass(frozen=True)
class Lift:
    """Heights ``psi`` on a base point set; the lift is downward closed."""

    base: PointSet
    heights: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.heights) != len(self.base):
            raise InputError("one height per base point is required")

    @classmethod
    def of(cls, points, heights) -> "Lift":
        base = points if isinstance(points, PointSet) else PointSet(tuple(tuple(p) for p in points), len(points[0]))
        return cls(base, tuple(Fraction(h) for h in heights))


def regular_cell(L: Lift, xi: Sequence) -> PointSet:
    """Base points whose lifts maximize ``(xi, 1)``: one cell of the regular subdivision."""
    vals = [sum(Fraction(a) * b for a, b in zip(xi, p)) + h for p, h in zip(L.base.points, L.heights)]
    m = max(vals)
    return PointSet(tuple(p for p, v in zip(L.base.points, vals) if v == m), L.base.dim)


@dataclass(frozen=True)
class MVReport:
    value: int
    per_xi: tuple[tuple[tuple[Fraction, ...], tuple[PointSet, ...], int], ...] = ()


def lifted_normals(Ls: Sequence[Lift]) -> list[tuple[Fraction, ...]]:
    """Covectors ``xi`` where ``(xi, 1)`` supports a facet of the summed lift.

    Returns an empty list when the base sum is not full-dimensional.
    """
    n = Ls[0].base.dim
    den = lcm(*(h.denominator for L in Ls for h in L.heights))
    lifted = [
        tuple(p + (int(h * den),) for p, h in zip(L.base.points, L.heights))
        for L in Ls
    ]
    H = convex_hull(PointSet(sum_vertices(lifted), n + 1))
    if H.dim == n + 1:
        return [tuple(Fraction(x, a[-1] * den) for x in a[:-1]) for a, _ in H.facets if a[-1] > 0]
    if H.dim == n:
        (e, _), = H.equations
        if e[-1]:
            return [tuple(Fraction(x, e[-1] * den) for x in e[:-1])]
    return []


def khovanskii_mv(Ls: Sequence[Lift]) -> MVReport:
    """Mixed volume of the bases as a sum over cells of the lifted subdivisions."""
    n = len(Ls)
    if n == 0:
        return MVReport(1)
    for L in Ls:
        if L.base.dim != n:
            raise InputError(f"expected {n} lifts over Z^{n}")
        if not len(L.base):
            raise InputError("empty lift base")
    terms = []
    total = 0
    for xi in lifted_normals(Ls):
        cells = tuple(regular_cell(L, xi) for L in Ls)
        t = mixed_volume(cells)
        total += t
        terms.append((xi, cells, t))
    return MVReport(total, tuple(terms))
