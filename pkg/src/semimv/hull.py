"""Exact Quickhull for full-dimensional integer point sets.

The boundary is kept as a triangulation: every facet record is a
``(d-1)``-simplex with a primitive outward normal.  Coplanar simplices are
merged later by grouping on ``(normal, offset)``.  Visibility is strict
(``<a, p> > b``), which keeps the algorithm correct on degenerate input.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .lattice import det, independent_rows


@dataclass
class Simplex:
    verts: tuple[int, ...]
    normal: tuple[int, ...]
    offset: int
    outside: list[int]
    alive: bool = True


def _normal(pts, verts):
    p0 = pts[verts[0]]
    rows = [[a - b for a, b in zip(pts[v], p0)] for v in verts[1:]]
    d = len(p0)
    a = []
    for j in range(d):
        minor = [r[:j] + r[j + 1:] for r in rows]
        a.append((-1) ** j * det(minor))
    g = gcd(*a)
    a = tuple(x // g for x in a)
    return a, sum(x * y for x, y in zip(a, p0))


def _initial_simplex(pts):
    d = len(pts[0])
    i0 = min(range(len(pts)), key=lambda i: pts[i])
    p0 = pts[i0]
    others = [i for i in range(len(pts)) if i != i0]
    # far points first gives a fatter start and fewer rounds
    others.sort(key=lambda i: -sum((a - b) ** 2 for a, b in zip(pts[i], p0)))
    picked = independent_rows([[a - b for a, b in zip(pts[i], p0)] for i in others], limit=d)
    if len(picked) < d:
        raise ValueError("points are not full-dimensional")
    return [i0] + [others[k] for k in picked]


def quickhull(pts: Sequence[tuple[int, ...]]) -> list[Simplex]:
    """Triangulated boundary of ``conv(pts)`` for ``d >= 2`` full-dim input."""
    d = len(pts[0])
    simplex = _initial_simplex(pts)
    ref = [sum(pts[v][k] for v in simplex) for k in range(d)]  # (d+1) * interior point
    scale = d + 1

    facets: list[Simplex] = []
    ridges: dict[frozenset, list[int]] = {}

    def make(verts):
        a, b = _normal(pts, verts)
        if sum(x * y for x, y in zip(a, ref)) > scale * b:
            a, b = tuple(-x for x in a), -b
        fid = len(facets)
        facets.append(Simplex(tuple(verts), a, b, []))
        for k in range(d):
            key = frozenset(verts[:k] + verts[k + 1:])
            ridges.setdefault(key, []).append(fid)
        return fid

    for k in range(d + 1):
        make(simplex[:k] + simplex[k + 1:])

    in_simplex = set(simplex)
    for i, p in enumerate(pts):
        if i in in_simplex:
            continue
        for f in facets:
            if sum(x * y for x, y in zip(f.normal, p)) > f.offset:
                f.outside.append(i)
                break

    stack = [fid for fid, f in enumerate(facets) if f.outside]
    while stack:
        fid = stack.pop()
        f = facets[fid]
        if not f.alive or not f.outside:
            continue
        a0, b0 = f.normal, f.offset
        q = max(f.outside, key=lambda i: sum(x * y for x, y in zip(a0, pts[i])) - b0)
        qp = pts[q]

        visible = {fid}
        seen = {fid}
        queue = [fid]
        horizon = []
        while queue:
            cur = queue.pop()
            gv = facets[cur].verts
            for k in range(d):
                key = frozenset(gv[:k] + gv[k + 1:])
                pair = ridges[key]
                nb = pair[1] if pair[0] == cur else pair[0]
                if nb in visible:
                    continue
                if nb not in seen:
                    seen.add(nb)
                    h = facets[nb]
                    if sum(x * y for x, y in zip(h.normal, qp)) > h.offset:
                        visible.add(nb)
                        queue.append(nb)
                        continue
                horizon.append(gv[:k] + gv[k + 1:])

        pool = []
        for v in visible:
            g = facets[v]
            g.alive = False
            pool.extend(i for i in g.outside if i != q)
            g.outside = []
            gv = g.verts
            for k in range(d):
                key = frozenset(gv[:k] + gv[k + 1:])
                lst = ridges[key]
                lst.remove(v)
                if not lst:
                    del ridges[key]

        new = [make(tuple(r) + (q,)) for r in horizon]
        for i in pool:
            p = pts[i]
            for nf in new:
                g = facets[nf]
                if sum(x * y for x, y in zip(g.normal, p)) > g.offset:
                    g.outside.append(i)
                    break
        stack.extend(nf for nf in new if facets[nf].outside)

    return [f for f in facets if f.alive]
