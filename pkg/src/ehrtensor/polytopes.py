"""Lattice polytopes in small dimension with exact facet and point machinery.

V-representation in, facets derived.  Facet enumeration is brute force over
vertex subsets (desk scale, d <= 4) with a fast monotone-chain special case
for polygons.  Lattice point enumeration scans the bounding box with exact
per-coordinate interval clipping, so no epsilon appears anywhere.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .linalg import (affine_rank, cross2, generalized_cross, gcd_vector,
                     primitive, rank, smith_unimodular_left, solve)
from .tensors import IntPoint, dot, vadd, vneg, vsub

# constraint modes for the point scanner
LE, LT, EQ = 0, 1, 2


class DegenerateInputError(ValueError):
    """Input points do not affinely span their ambient space."""

    def __init__(self, affine_dim: int, ambient_dim: int):
        self.affine_dim = affine_dim
        self.ambient_dim = ambient_dim
        super().__init__(
            f"points span an affine subspace of dimension {affine_dim} "
            f"inside ambient dimension {ambient_dim}")


@dataclass(frozen=True)
class FacetIneq:
    """Half-plane normal . x <= rhs with primitive integer normal."""

    normal: IntPoint
    rhs: int


@dataclass(frozen=True)
class Polytope:
    """Full-dimensional lattice polytope: irredundant vertices plus facets."""

    dim: int
    vertices: tuple[IntPoint, ...]
    facets: tuple[FacetIneq, ...]

    def facet_vertices(self, facet: FacetIneq) -> tuple[IntPoint, ...]:
        return tuple(v for v in self.vertices if dot(facet.normal, v) == facet.rhs)

    def contains(self, x: Sequence[int], n: int = 1, strict: bool = False) -> bool:
        """Membership of x in the dilate n*P (strict: relative interior)."""
        for f in self.facets:
            s = dot(f.normal, x)
            if strict and s >= n * f.rhs:
                return False
            if not strict and s > n * f.rhs:
                return False
        return True

    def translate(self, t: Sequence[int]) -> "Polytope":
        verts = tuple(sorted(vadd(v, t) for v in self.vertices))
        facets = tuple(FacetIneq(f.normal, f.rhs + dot(f.normal, t)) for f in self.facets)
        return Polytope(self.dim, verts, facets)


def _hull_2d(points: list[IntPoint]) -> list[IntPoint]:
    """Monotone chain; returns CCW vertex cycle without collinear points."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list[IntPoint] = []
    for p in pts:
        while len(lower) >= 2 and cross2(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[IntPoint] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross2(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _facets_from_cycle(cycle: Sequence[IntPoint]) -> list[FacetIneq]:
    facets = []
    k = len(cycle)
    for i in range(k):
        u, w = cycle[i], cycle[(i + 1) % k]
        dx, dy = w[0] - u[0], w[1] - u[1]
        normal = primitive((dy, -dx))
        facets.append(FacetIneq(normal, dot(normal, u)))
    return facets


def convex_hull(points: Iterable[Sequence[int]]) -> Polytope:
    """Convex hull of integer points: irredundant vertex set plus facet list.

    Raises :class:`DegenerateInputError` when the points are not
    full-dimensional in their ambient space.
    """
    pts = sorted(set(tuple(int(c) for c in p) for p in points))
    if not pts:
        raise ValueError("no input points")
    d = len(pts[0])
    if any(len(p) != d for p in pts):
        raise ValueError("points have mixed dimensions")
    ar = affine_rank(pts)
    if ar < d:
        raise DegenerateInputError(ar, d)

    if d == 1:
        lo, hi = pts[0][0], pts[-1][0]
        return Polytope(1, ((lo,), (hi,)),
                        (FacetIneq((-1,), -lo), FacetIneq((1,), hi)))

    if d == 2:
        cycle = _hull_2d(pts)
        facets = tuple(sorted(_facets_from_cycle(cycle), key=lambda f: (f.normal, f.rhs)))
        return Polytope(2, tuple(sorted(cycle)), facets)

    facet_set: set[tuple[IntPoint, int]] = set()
    for subset in combinations(pts, d):
        base = subset[0]
        vecs = [vsub(p, base) for p in subset[1:]]
        normal = generalized_cross(vecs, d)
        if gcd_vector(normal) == 0:
            continue
        normal = primitive(normal)
        rhs = dot(normal, base)
        above = below = False
        for p in pts:
            s = dot(normal, p) - rhs
            if s > 0:
                above = True
            elif s < 0:
                below = True
            if above and below:
                break
        if above and below:
            continue
        if above:
            normal, rhs = vneg(normal), -rhs
        facet_set.add((normal, rhs))

    facets = tuple(FacetIneq(n, r) for n, r in sorted(facet_set))
    vertices = []
    for p in pts:
        active = [f.normal for f in facets if dot(f.normal, p) == f.rhs]
        if len(active) >= d and rank(active) == d:
            vertices.append(p)
    return Polytope(d, tuple(vertices), facets)


# ---------------------------------------------------------------------------
# exact lattice point scanning

def _floor_div(p: int, q: int) -> int:
    return p // q


def _ceil_div(p: int, q: int) -> int:
    return -((-p) // q)


def scan_points(bounds: Sequence[tuple[int, int]],
                constraints: Sequence[tuple[IntPoint, int, int]]) -> Iterator[IntPoint]:
    """All integer points in a box satisfying linear constraints.

    ``constraints`` are ``(normal, rhs, mode)`` with mode LE (<=), LT (<) or
    EQ (=).  The box is scanned in lexicographic order; the last coordinate
    is clipped to the exact feasible interval and inner levels are pruned by
    suffix bounds, so the cost tracks the feasible region, not the box.
    """
    d = len(bounds)
    cons = [(tuple(a), int(c), mode) for a, c, mode in constraints]
    # suffix min/max of the achievable contribution of coordinates k..d-1
    minrest = []
    maxrest = []
    for a, _, _ in cons:
        mn = [0] * (d + 1)
        mx = [0] * (d + 1)
        for k in range(d - 1, -1, -1):
            lo, hi = bounds[k]
            mn[k] = mn[k + 1] + min(a[k] * lo, a[k] * hi)
            mx[k] = mx[k + 1] + max(a[k] * lo, a[k] * hi)
        minrest.append(mn)
        maxrest.append(mx)

    ncons = len(cons)
    prefix = [0] * d

    def feasible(level: int, sums: list[int]) -> bool:
        for i in range(ncons):
            _, c, mode = cons[i]
            lo_total = sums[i] + minrest[i][level]
            if mode == LE:
                if lo_total > c:
                    return False
            elif mode == LT:
                if lo_total >= c:
                    return False
            else:
                if lo_total > c or sums[i] + maxrest[i][level] < c:
                    return False
        return True

    def rec(level: int, sums: list[int]) -> Iterator[IntPoint]:
        if level == d - 1:
            lo, hi = bounds[level]
            for i in range(ncons):
                a, c, mode = cons[i]
                ak = a[level]
                t = c - sums[i]
                if ak == 0:
                    if mode == LE:
                        if 0 > t:
                            return
                    elif mode == LT:
                        if 0 >= t:
                            return
                    else:
                        if t != 0:
                            return
                elif mode == LE:
                    if ak > 0:
                        hi = min(hi, _floor_div(t, ak))
                    else:
                        lo = max(lo, _ceil_div(t, ak))
                elif mode == LT:
                    if ak > 0:
                        hi = min(hi, _ceil_div(t, ak) - 1)
                    else:
                        lo = max(lo, _floor_div(t, ak) + 1)
                else:
                    if t % ak != 0:
                        return
                    x0 = t // ak
                    lo = max(lo, x0)
                    hi = min(hi, x0)
                if lo > hi:
                    return
            for x in range(lo, hi + 1):
                prefix[level] = x
                yield tuple(prefix)
            return
        lo, hi = bounds[level]
        for x in range(lo, hi + 1):
            nsums = [sums[i] + cons[i][0][level] * x for i in range(ncons)]
            if feasible(level + 1, nsums):
                prefix[level] = x
                yield from rec(level + 1, nsums)

    if d == 0:
        if all((c >= 0 if mode == LE else c > 0 if mode == LT else c == 0)
               for _, c, mode in cons):
            yield ()
        return
    if feasible(0, [0] * ncons):
        yield from rec(0, [0] * ncons)


def dilate_bounds(p: Polytope, n: int) -> list[tuple[int, int]]:
    lo = [min(v[i] for v in p.vertices) * n for i in range(p.dim)]
    hi = [max(v[i] for v in p.vertices) * n for i in range(p.dim)]
    if n < 0:
        lo, hi = hi, lo
    return list(zip(lo, hi))


def iter_lattice_points(p: Polytope, n: int, strict: bool = False) -> Iterator[IntPoint]:
    if n < 0:
        raise ValueError("dilation factor must be nonnegative")
    mode = LT if strict else LE
    cons = [(f.normal, n * f.rhs, mode) for f in p.facets]
    return scan_points(dilate_bounds(p, n), cons)


def lattice_points(p: Polytope, n: int) -> list[IntPoint]:
    """All lattice points of the dilate n*P, in lexicographic order."""
    return list(iter_lattice_points(p, n))


def interior_lattice_points(p: Polytope, n: int) -> list[IntPoint]:
    """Lattice points strictly inside n*P (n >= 1)."""
    if n < 1:
        raise ValueError("interior enumeration needs n >= 1")
    return list(iter_lattice_points(p, n, strict=True))


def is_reflexive(p: Polytope) -> bool:
    """True iff every facet inequality is normal . x <= 1.

    Polytopes without the origin strictly inside are simply not reflexive.
    """
    if any(f.rhs < 1 for f in p.facets):
        return False
    return all(f.rhs == 1 for f in p.facets)


def random_lattice_polytope(d: int, coord_bound: int, num_gens: int,
                            seed: int, max_retries: int = 200) -> Polytope:
    """Convex hull of seeded uniform draws from the integer box.

    Generators are drawn coordinate-wise uniformly from
    ``[-coord_bound, coord_bound]`` with Python's Mersenne Twister
    (``random.Random(seed)``), so identical seeds give identical polytopes.
    Degenerate draws are retried from the same stream.
    """
    if num_gens < d + 1:
        raise ValueError("need at least d+1 generators")
    if coord_bound < 1:
        raise ValueError("coordinate bound must be positive")
    rng = random.Random(seed)
    for _ in range(max_retries):
        pts = [tuple(rng.randint(-coord_bound, coord_bound) for _ in range(d))
               for _ in range(num_gens)]
        try:
            return convex_hull(pts)
        except DegenerateInputError:
            continue
    raise RuntimeError(f"no full-dimensional polytope after {max_retries} draws")


def polygon_vertex_cycle(p: Polytope) -> list[IntPoint]:
    """Vertices of a polygon in counterclockwise cyclic order."""
    if p.dim != 2:
        raise ValueError("vertex cycle is a polygon operation")
    return _hull_2d(list(p.vertices))


# ---------------------------------------------------------------------------
# polygons embedded in a higher-dimensional ambient lattice

def project_to_plane(points: Sequence[Sequence[int]]) -> tuple[list[IntPoint], IntPoint, tuple[IntPoint, ...]]:
    """Lattice-preserving coordinates for a polygon embedded in Z^D.

    For points whose affine hull has rank 2, returns ``(coords, origin,
    basis)`` with ``basis`` two columns spanning the saturated lattice of the
    hull, so every input point is ``origin + basis @ y`` for the integer pair
    ``y`` in ``coords``.  The basis is recorded so rank-r tensors computed in
    the plane can be pushed back to the ambient space.
    """
    pts = [tuple(int(c) for c in q) for q in points]
    origin = min(pts)
    diffs = [vsub(q, origin) for q in pts]
    ar = affine_rank(pts)
    if ar != 2:
        raise DegenerateInputError(ar, len(origin))
    ncols = len(diffs)
    matrix = [[diffs[j][i] for j in range(ncols)] for i in range(len(origin))]
    u, s = smith_unimodular_left(matrix)
    basis = tuple(tuple(u[i][k] for i in range(len(origin))) for k in range(2))
    gram = [[dot(basis[a], basis[b]) for b in range(2)] for a in range(2)]
    coords = []
    for q in diffs:
        rhs = [dot(basis[a], q) for a in range(2)]
        y = solve(gram, rhs)
        if any(c.denominator != 1 for c in y):
            raise ValueError("projection basis is not lattice-spanning")
        coords.append((int(y[0]), int(y[1])))
    return coords, origin, basis


# ---------------------------------------------------------------------------
# JSON round trip: {"dim": d, "vertices": [[...], ...]}

def polytope_to_json(p: Polytope) -> dict:
    return {"dim": p.dim, "vertices": [list(v) for v in p.vertices]}


def polytope_from_json(data: dict) -> Polytope:
    if not isinstance(data, dict) or "vertices" not in data:
        raise ValueError("polytope JSON needs a 'vertices' array")
    verts = data["vertices"]
    p = convex_hull(verts)
    if "dim" in data and int(data["dim"]) != p.dim:
        raise ValueError(f"declared dim {data['dim']} != ambient dim {p.dim}")
    return p


def facet_to_json(f: FacetIneq) -> dict:
    return {"normal": list(f.normal), "rhs": f.rhs}
