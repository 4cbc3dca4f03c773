"""Exact integer linear algebra on Python ints.

Matrices are plain row-major sequences of integer rows.  Everything here
works on arbitrary precision integers, so nothing overflows silently.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod
from typing import Sequence

from .errors import InputError

IntMatrix = tuple[tuple[int, ...], ...]
Vector = tuple[int, ...]


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> list[list[int]]:
    if not A:
        return []
    cols = len(B[0]) if B else 0
    return [[sum(a * B[k][j] for k, a in enumerate(row)) for j in range(cols)] for row in A]


def transpose(A: Sequence[Sequence[int]], cols: int | None = None) -> list[list[int]]:
    if not A:
        return [[] for _ in range(cols or 0)]
    return [list(c) for c in zip(*A)]


def freeze(A: Sequence[Sequence[int]]) -> IntMatrix:
    return tuple(tuple(int(x) for x in row) for row in A)


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v))


def sub(u: Sequence[int], v: Sequence[int]) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def det(M: Sequence[Sequence[int]]) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(r) for r in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * A[n - 1][n - 1]


def rank(rows: Sequence[Sequence[int]]) -> int:
    return len(independent_rows(rows))


def independent_rows(rows: Sequence[Sequence[int]], limit: int | None = None) -> list[int]:
    """Indices of a greedy maximal linearly independent subfamily of ``rows``."""
    basis: list[tuple[int, list[int]]] = []  # (pivot column, reduced row)
    chosen: list[int] = []
    for idx, row in enumerate(rows):
        r = list(row)
        for piv, b in basis:
            if r[piv]:
                f, g = b[piv], r[piv]
                r = [f * x - g * y for x, y in zip(r, b)]
                c = gcd(*r)
                if c > 1:
                    r = [x // c for x in r]
        for piv, x in enumerate(r):
            if x:
                basis.append((piv, r))
                chosen.append(idx)
                break
        if limit is not None and len(chosen) == limit:
            break
    return chosen


def _snf(M: Sequence[Sequence[int]], m: int, n: int):
    A = [list(r) for r in M]
    U = identity(m)
    V = identity(n)
    Vi = identity(n)

    def row_add(i, t, q):  # row_i += q * row_t
        if q:
            A[i] = [a + q * b for a, b in zip(A[i], A[t])]
            U[i] = [a + q * b for a, b in zip(U[i], U[t])]

    def row_swap(i, t):
        A[i], A[t] = A[t], A[i]
        U[i], U[t] = U[t], U[i]

    def col_add(j, t, q):  # col_j += q * col_t
        if q:
            for row in A:
                row[j] += q * row[t]
            for row in V:
                row[j] += q * row[t]
            Vi[t] = [a - q * b for a, b in zip(Vi[t], Vi[j])]

    def col_swap(j, t):
        for row in A:
            row[j], row[t] = row[t], row[j]
        for row in V:
            row[j], row[t] = row[t], row[j]
        Vi[j], Vi[t] = Vi[t], Vi[j]

    for t in range(min(m, n)):
        piv = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                a = A[i][j]
                if a and (best is None or abs(a) < best):
                    piv, best = (i, j), abs(a)
        if piv is None:
            break
        row_swap(t, piv[0])
        col_swap(t, piv[1])
        while True:
            changed = False
            for i in range(t + 1, m):
                if A[i][t]:
                    row_add(i, t, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        row_swap(i, t)
                        changed = True
            for j in range(t + 1, n):
                if A[t][j]:
                    col_add(j, t, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        col_swap(j, t)
                        changed = True
            if changed:
                continue
            p = A[t][t]
            bad = next((i for i in range(t + 1, m) if any(A[i][j] % p for j in range(t + 1, n))), None)
            if bad is None:
                break
            row_add(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    return U, A, V, Vi


def smith_decompose(M: Sequence[Sequence[int]], cols: int | None = None) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form with transforms.

    Returns unimodular ``U``, ``V`` and diagonal ``D`` with ``U M V = D`` and
    ``d_1 | d_2 | ...`` on the diagonal.  ``cols`` is needed only when ``M``
    has no rows.
    """
    m = len(M)
    n = len(M[0]) if m else (cols or 0)
    U, D, V, _ = _snf(M, m, n)
    return freeze(U), freeze(D), freeze(V)


def invariant_factors(M: Sequence[Sequence[int]]) -> list[int]:
    m = len(M)
    if not m:
        return []
    _, D, _, _ = _snf(M, m, len(M[0]))
    return [D[i][i] for i in range(min(m, len(M[0]))) if D[i][i]]


def hermite_normal_form(M: Sequence[Sequence[int]]) -> IntMatrix:
    """Row-style Hermite normal form (zero rows dropped).

    Pivots are positive and the entries above each pivot are reduced into
    ``[0, pivot)``.  Two matrices with the same row lattice give the same
    result.
    """
    A = [list(r) for r in M if any(r)]
    m = len(A)
    if not m:
        return ()
    n = len(A[0])
    r = 0
    for j in range(n):
        if r == m:
            break
        for i in range(r + 1, m):
            while A[i][j]:
                q = A[r][j] // A[i][j]
                A[r] = [a - q * b for a, b in zip(A[r], A[i])]
                A[r], A[i] = A[i], A[r]
        if A[r][j] == 0:
            continue
        if A[r][j] < 0:
            A[r] = [-a for a in A[r]]
        p = A[r][j]
        for i in range(r):
            q = A[i][j] // p
            if q:
                A[i] = [a - q * b for a, b in zip(A[i], A[r])]
        r += 1
    return freeze(row for row in A if any(row))


@dataclass(frozen=True)
class AffineChart:
    """Unimodular coordinates on the saturated lattice ``Z^n ∩ aff(P)``.

    ``coords`` has ``rank`` rows; ``<coords[i], x - origin>`` are the chart
    coordinates of ``x``.  ``quotient`` has ``n - rank`` rows and realizes
    the projection that collapses ``aff(P)``.  Stacked together the two
    matrices are unimodular.
    """

    origin: Vector
    rank: int
    basis: IntMatrix
    coords: IntMatrix
    quotient: IntMatrix

    @property
    def ambient_dim(self) -> int:
        return len(self.origin)

    def to_chart(self, x: Sequence[int]) -> Vector:
        d = sub(x, self.origin)
        return tuple(dot(row, d) for row in self.coords)

    def to_linear_chart(self, v: Sequence[int]) -> Vector:
        return tuple(dot(row, v) for row in self.coords)

    def from_chart(self, c: Sequence[int]) -> Vector:
        out = list(self.origin)
        for ci, b in zip(c, self.basis):
            if ci:
                for k, bk in enumerate(b):
                    out[k] += ci * bk
        return tuple(out)

    def project(self, x: Sequence[int]) -> Vector:
        d = sub(x, self.origin)
        return tuple(dot(row, d) for row in self.quotient)

    def covector_to_ambient(self, a: Sequence[int]) -> Vector:
        """Pull a chart covector back to an ambient covector."""
        n = self.ambient_dim
        out = [0] * n
        for ai, row in zip(a, self.coords):
            if ai:
                for k in range(n):
                    out[k] += ai * row[k]
        return tuple(out)

    def contains(self, x: Sequence[int]) -> bool:
        return not any(self.project(x))


def chart_from_directions(origin: Sequence[int], directions: Sequence[Sequence[int]]) -> AffineChart:
    """Chart of ``origin + span_Q(directions)`` restricted to ``Z^n``."""
    n = len(origin)
    picked = independent_rows(directions, limit=n)
    M = [list(directions[i]) for i in picked]
    r = len(M)
    _, _, V, Vi = _snf(M, r, n)
    coords = freeze(transpose([row[:r] for row in V], r) if r else [])
    q_rows = [[V[k][j] for k in range(n)] for j in range(r, n)]
    return AffineChart(
        origin=tuple(origin),
        rank=r,
        basis=freeze(Vi[:r]),
        coords=coords,
        quotient=hermite_normal_form(q_rows) if q_rows else (),
    )


def affine_chart(points: Sequence[Sequence[int]]) -> AffineChart:
    if not points:
        raise InputError("empty point set has no affine span")
    p0 = points[0]
    return chart_from_directions(p0, [sub(p, p0) for p in points[1:]])


def affine_dim(points: Sequence[Sequence[int]]) -> int:
    if not points:
        return -1
    p0 = points[0]
    return rank([sub(p, p0) for p in points[1:]])


def lattice_index(points: Sequence[Sequence[int]]) -> int:
    """Order of ``(Z^n ∩ aff P) / <P - P>``."""
    if not points:
        raise InputError("lattice index of an empty set")
    p0 = points[0]
    diffs = [sub(p, p0) for p in points[1:]]
    H = hermite_normal_form(diffs) if diffs else ()
    return prod(invariant_factors(H)) if H else 1


@dataclass(frozen=True)
class QuotientMap:
    """Affine surjection ``Z^n -> Z^k`` collapsing ``aff(F)`` to the origin.

    ``map`` is ``target_dim x source_dim`` in Hermite normal form;
    ``kernel_basis`` is ``source_dim x (source_dim - target_dim)`` and its
    columns span the kernel lattice.
    """

    source_dim: int
    target_dim: int
    map: IntMatrix
    kernel_basis: IntMatrix
    origin: Vector

    def __call__(self, x: Sequence[int]) -> Vector:
        d = sub(x, self.origin)
        return tuple(dot(row, d) for row in self.map)

    def linear(self, v: Sequence[int]) -> Vector:
        return tuple(dot(row, v) for row in self.map)


def quotient_projection(F: Sequence[Sequence[int]], ambient_dim: int | None = None) -> QuotientMap:
    if not F:
        raise InputError("quotient by an empty set")
    n = len(F[0]) if ambient_dim is None else ambient_dim
    if any(len(p) != n for p in F):
        raise InputError("points do not match the ambient dimension")
    ch = affine_chart(F)
    return QuotientMap(
        source_dim=n,
        target_dim=n - ch.rank,
        map=ch.quotient,
        kernel_basis=freeze(transpose(ch.basis, ch.rank)) if ch.rank else tuple(() for _ in range(n)),
        origin=ch.origin,
    )
