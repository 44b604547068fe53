"""Shared corpus polytopes and independent brute-force oracles.

The oracles here deliberately avoid the library's facet/scan machinery:
membership goes through exact barycentric sign tests over vertex triples
(Caratheodory) and interior membership through supporting-line strictness,
so enumeration results are cross-checked by a genuinely different route.
"""
from __future__ import annotations

from itertools import combinations

import pytest

import ehrtensor as et


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def in_triangle(p, a, b, c) -> bool:
    orient = _cross(a, b, c)
    if orient == 0:
        return False
    s1 = _cross(a, b, p)
    s2 = _cross(b, c, p)
    s3 = _cross(c, a, p)
    if orient > 0:
        return s1 >= 0 and s2 >= 0 and s3 >= 0
    return s1 <= 0 and s2 <= 0 and s3 <= 0


def oracle_polygon_points(vertices, n: int) -> list[tuple[int, int]]:
    """Lattice points of n*conv(vertices), by triple membership over a box."""
    verts = [tuple(v) for v in vertices]
    scaled = [(n * x, n * y) for x, y in verts]
    if n == 0:
        return [(0, 0)]
    xs = [p[0] for p in scaled]
    ys = [p[1] for p in scaled]
    out = []
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            p = (x, y)
            if any(in_triangle(p, a, b, c) for a, b, c in combinations(scaled, 3)):
                out.append(p)
    return out


def oracle_polygon_interior_points(vertices, n: int) -> list[tuple[int, int]]:
    """Interior lattice points via strictness against every supporting line."""
    verts = [tuple(v) for v in vertices]
    scaled = [(n * x, n * y) for x, y in verts]
    support = []
    for a, b in combinations(scaled, 2):
        if a == b:
            continue
        signs = {(_cross(a, b, p) > 0) - (_cross(a, b, p) < 0) for p in scaled}
        signs.discard(0)
        if len(signs) <= 1:
            side = signs.pop() if signs else 1
            support.append((a, b, side))
    out = []
    for p in oracle_polygon_points(vertices, n):
        if all(_cross(a, b, p) * side > 0 for a, b, side in support):
            out.append(p)
    return out


def oracle_moment(points, r: int, dim: int = 2) -> et.SymTensor:
    """Moment sum computed straight from a point list."""
    acc = et.SymTensor.zero(r, dim)
    for p in points:
        acc = acc + et.outer_power(p, r, dim)
    return acc


# ---------------------------------------------------------------------------
# corpus

NAMED_POLYGONS = {
    "unit_square": [(0, 0), (1, 0), (0, 1), (1, 1)],
    "unit_triangle": [(0, 0), (1, 0), (0, 1)],
    "sym_square": [(-1, -1), (1, -1), (-1, 1), (1, 1)],
    "neg_def_triangle": [(0, 1), (-1, -7), (1, -4)],
    "indef_triangle": [(0, -4), (0, 4), (-1, 0)],
    "reflexive_triangle": [(1, 0), (0, 1), (-1, -1)],
    "dilated_reflexive_triangle": [(2, 0), (0, 2), (-1, -1)],
    "rect_3x1": [(0, 0), (3, 0), (0, 1), (3, 1)],
    "skew_quad": [(0, 0), (4, 1), (3, 4), (-1, 2)],
}


@pytest.fixture(scope="session")
def corpus_polygons() -> dict[str, et.Polytope]:
    polys = {name: et.convex_hull(v) for name, v in NAMED_POLYGONS.items()}
    for seed in range(6):
        polys[f"random_{seed}"] = et.random_lattice_polytope(2, 5, 7, seed=97 + seed)
    return polys


@pytest.fixture(scope="session")
def random_polygons() -> list[et.Polytope]:
    return [et.random_lattice_polytope(2, 6, 7, seed=500 + k) for k in range(12)]


@pytest.fixture(scope="session")
def random_3polytopes() -> list[et.Polytope]:
    return [et.random_lattice_polytope(3, 2, 6, seed=900 + k) for k in range(6)]
