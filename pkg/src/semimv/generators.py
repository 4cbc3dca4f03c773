"""Random instances for the property and acceptance campaigns.

Every generator takes a ``random.Random`` so runs are reproducible.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .applications import ConeSpec, cayley, off_coordinate_family
from .errors import DomainError
from .lattice import affine_dim
from .mixed import Lift
from .polytope import PointSet, convex_hull, lattice_points
from .semi import DaughterFamily, classify_faces


def random_points(rng: random.Random, n: int, size: int, top: int = 3) -> list[tuple[int, ...]]:
    size = min(size, (top + 1) ** n)
    pts = set()
    while len(pts) < size:
        pts.add(tuple(rng.randint(0, top) for _ in range(n)))
    return sorted(pts, key=lambda _: rng.random())


def random_full_set(rng: random.Random, n: int, size: int, top: int = 3) -> PointSet:
    """Random full-dimensional set in ``{0..top}^n``."""
    while True:
        pts = random_points(rng, n, size, top)
        if affine_dim(pts) == n:
            return PointSet(tuple(pts), n)


def random_mother(rng: random.Random, n: int, size: int | None = None, top: int = 3, origin: bool = False) -> PointSet:
    """Full-dimensional set in ``{0..top}^n`` touching every coordinate hyperplane.

    With ``origin`` the origin is one of the points, which produces sutures
    at the origin and along coordinate faces.
    """
    size = size or rng.randint(n + 2, n + 5)
    zero = (0,) * n
    while True:
        pts = random_points(rng, n, size, top)
        if origin and zero not in pts:
            pts[rng.randrange(len(pts))] = zero
        if affine_dim(pts) < n:
            continue
        if all(any(p[i] == 0 for p in pts) for i in range(n)):
            return PointSet(tuple(pts), n)


def random_off_family(rng: random.Random, n: int, size: int | None = None, origin: bool = False) -> DaughterFamily:
    return off_coordinate_family(random_mother(rng, n, size, origin=origin), ConeSpec.orthant(n))


def random_disjoint_family(rng: random.Random, n: int, size: int | None = None, tries: int = 200) -> DaughterFamily | None:
    """Daughters obtained by deleting random pairwise disjoint faces; kept only if semi-interlaced."""
    for _ in range(tries):
        P = random_full_set(rng, n, size or rng.randint(n + 2, n + 5))
        faces = [F for F in convex_hull(P).faces if F.dim < n]
        daughters = []
        for _ in range(n):
            chosen: list[set] = []
            for F in rng.sample(faces, k=min(len(faces), rng.randint(0, 2))):
                s = set(F.indices)
                if all(not (s & c) for c in chosen):
                    chosen.append(s)
            gone = set().union(*chosen) if chosen else set()
            D = [i for i in range(len(P)) if i not in gone]
            if not D:
                break
            daughters.append(D)
        if len(daughters) != n:
            continue
        try:
            fam = DaughterFamily.build(P, daughters)
        except DomainError:
            continue
        if classify_faces(fam).semi:
            return fam
    return None


def random_family(rng: random.Random, n: int, size: int | None = None) -> list[tuple[int, ...]]:
    """``n`` random nonempty subsets of a random full-dimensional set, plus the set."""
    P = random_full_set(rng, n, size or rng.randint(n + 1, n + 4), top=2)
    ds = []
    for _ in range(n):
        k = rng.randint(1, len(P))
        ds.append(tuple(sorted(rng.sample(range(len(P)), k))))
    return P, ds


def random_lift(rng: random.Random, P: PointSet, spread: int = 3) -> Lift:
    hs = [Fraction(rng.randint(-spread * 2, spread * 2), rng.randint(1, 2)) for _ in P.points]
    return Lift(P, tuple(hs))


def _convenient_points(rng: random.Random, d: int, top: int = 3) -> list[tuple[int, ...]]:
    """All lattice points of a random convenient polytope in ``R^d_{>=0}``."""
    if d == 0:
        return [()]
    seeds = [(0,) * d] + [tuple(int(i == j) for j in range(d)) for i in range(d)]
    seeds += random_points(rng, d, rng.randint(1, 3), top)
    return list(lattice_points(convex_hull(PointSet.of(seeds, d))))


def random_bk(rng: random.Random, n: int) -> PointSet:
    """Lattice points of a random convenient ``B_k``-polytope, coordinates shuffled."""
    k = rng.randint(1, n)
    d = n - k
    P0 = _convenient_points(rng, d)
    # the top blocks share a direction space of dimension < k
    if d and k > 1:
        v = tuple(rng.randint(0, 1) for _ in range(d))
        if not any(v):
            v = tuple(int(j == 0) for j in range(d))
    else:
        v = (0,) * d
    tops = []
    for _ in range(k):
        t = rng.randint(0, 2) if any(v) else 0
        tops.append([tuple(s * x for x in v) for s in range(t + 1)])
    pts = cayley([P0, *tops], d).points
    perm = list(range(n))
    rng.shuffle(perm)
    moved = [tuple(p[perm[i]] for i in range(n)) for p in pts]
    return PointSet.of(moved, n)


def random_stretched_bk(rng: random.Random, n: int) -> PointSet:
    """A stretched ``B_k``-set: the same construction with stretched levels and sparse blocks."""
    k = rng.randint(1, n)
    d = n - k
    while True:
        P0 = random_points(rng, d, rng.randint(d + 1, d + 3), 3) if d else [()]
        if affine_dim(P0) == d:
            break
    base = tuple(rng.randint(0, 2) for _ in range(d))
    v = tuple(rng.randint(0, 1) for _ in range(d))
    tops = []
    for _ in range(k):
        t = rng.randint(0, 2) if k > 1 else 0
        tops.append([tuple(b + s * x for b, x in zip(base, v)) for s in range(t + 1)])
    stretch = [rng.randint(1, 3) for _ in range(k)]
    pts = [tuple([0] * k) + p for p in P0]
    for j, T in enumerate(tops):
        head = [0] * k
        head[j] = stretch[j]
        pts += [tuple(head) + p for p in T]
    perm = list(range(n))
    rng.shuffle(perm)
    return PointSet.of([tuple(p[perm[i]] for i in range(n)) for p in pts], n)


def random_convenient(rng: random.Random, n: int, top: int = 3) -> PointSet:
    """Lattice points of a random convenient polytope in ``R^n_{>=0}``."""
    return PointSet.of(_convenient_points(rng, n, top), n)
