"""Unimodular triangulations of lattice polygons and what they compute.

The triangulation is incremental: lattice points are inserted in a fixed
monotone (lexicographic-style) order, each new point joined to the hull
edges it sees.  Every point inserted is extreme among those seen so far, so
every created triangle has exactly its three corners as lattice points,
which makes unimodularity structural rather than repaired.

On top of the triangulation sit the edge-graph sums, the closed vector and
matrix formulas for h-vectors and dilation polynomials of polygons, exact
half-open decompositions, and sparse decompositions into pieces with three
or four lattice points.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .halfopen import HalfOpenSimplex
from .linalg import affine_rank, cross2
from .polytopes import DegenerateInputError, Polytope, convex_hull, lattice_points
from .tensors import (HrVector, IntPoint, SymTensor, TensorPolynomial, dot,
                      outer_power, vadd)

INSERTION_ORDERS: dict[str, Callable[[IntPoint], tuple]] = {
    "lex": lambda p: (p[0], p[1]),
    "lex_down": lambda p: (p[0], -p[1]),
    "colex": lambda p: (p[1], p[0]),
    "colex_down": lambda p: (p[1], -p[0]),
}


@dataclass(frozen=True)
class Triangulation:
    """Unimodular triangulation on all lattice points of a polygon."""

    polygon: Polytope
    points: tuple[IntPoint, ...]
    triangles: tuple[tuple[int, int, int], ...]

    def triangle_points(self, tri: tuple[int, int, int]) -> tuple[IntPoint, IntPoint, IntPoint]:
        return self.points[tri[0]], self.points[tri[1]], self.points[tri[2]]


def _oriented(pts: Sequence[IntPoint], a: int, b: int, c: int) -> tuple[int, int, int]:
    tri = (a, b, c) if cross2(pts[a], pts[b], pts[c]) > 0 else (a, c, b)
    k = tri.index(min(tri))
    return tri[k:] + tri[:k]


def unimodular_triangulation(p: Polytope, order: str = "lex") -> Triangulation:
    """Triangulate a lattice polygon into empty (area 1/2) triangles.

    ``order`` picks the insertion order; any listed order yields a valid
    unimodular triangulation, and different orders generally yield different
    ones (useful for cross-checking triangulation independence).
    """
    if p.dim != 2:
        raise ValueError("unimodular triangulation is a polygon operation")
    key = INSERTION_ORDERS[order]
    pts = tuple(sorted(lattice_points(p, 1), key=key))
    n = len(pts)
    triangles: list[tuple[int, int, int]] = []

    chain = [0, 1]
    k = 2
    while k < n and cross2(pts[chain[0]], pts[chain[-1]], pts[k]) == 0:
        chain.append(k)
        k += 1
    if k == n:
        raise AssertionError("polygon lattice points collinear")
    for i in range(len(chain) - 1):
        triangles.append(_oriented(pts, chain[i], chain[i + 1], k))
    if cross2(pts[chain[0]], pts[chain[-1]], pts[k]) > 0:
        cycle = chain + [k]
    else:
        cycle = list(reversed(chain)) + [k]
    k += 1

    while k < n:
        q = pts[k]
        m = len(cycle)
        vis = [cross2(pts[cycle[i]], pts[cycle[(i + 1) % m]], q) < 0 for i in range(m)]
        start = next(i for i in range(m) if vis[i] and not vis[(i - 1) % m])
        arc = []
        i = start
        while vis[i]:
            arc.append(i)
            i = (i + 1) % m
        for i in arc:
            triangles.append(_oriented(pts, cycle[i], cycle[(i + 1) % m], k))
        end = (arc[-1] + 1) % m
        new_cycle = []
        i = end
        while True:
            new_cycle.append(cycle[i])
            if i == start:
                break
            i = (i + 1) % m
        new_cycle.append(k)
        cycle = new_cycle
        k += 1

    return Triangulation(p, pts, tuple(sorted(triangles)))


# ---------------------------------------------------------------------------
# edge graph statistics

@dataclass(frozen=True)
class EdgeStats:
    """Vertex/edge classification of a triangulation plus its exact sums.

    V splits into interior and boundary lattice points; an edge is a
    boundary edge when its segment lies inside the polygon boundary
    (equivalently both endpoints share a polygon facet) and interior
    otherwise.
    """

    points: tuple[IntPoint, ...]
    edges: tuple[tuple[int, int], ...]
    interior_points: frozenset[int]
    boundary_points: frozenset[int]
    interior_edges: tuple[tuple[int, int], ...]
    boundary_edges: tuple[tuple[int, int], ...]
    sum_v: SymTensor            # sum over V of x
    sum_v_int: SymTensor        # sum over interior V
    sum_v_bd: SymTensor         # sum over boundary V
    sum_v_sq: SymTensor         # sum over V of x^2
    sum_v_int_sq: SymTensor
    sum_v_bd_sq: SymTensor
    sum_e_sq: SymTensor         # sum over E of (y+z)^2
    sum_e_int: SymTensor        # sum over interior E of (y+z)
    sum_e_int_sq: SymTensor
    sum_e_bd_sq: SymTensor
    sum_e_bd_diff_sq: SymTensor  # sum over boundary E of (y-z)^2


def edge_stats(t: Triangulation) -> EdgeStats:
    pts = t.points
    poly = t.polygon
    edges = sorted({tuple(sorted(pair)) for tri in t.triangles
                    for pair in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[0], tri[2]))})

    on_facet = []
    for x in pts:
        on_facet.append(frozenset(i for i, f in enumerate(poly.facets)
                                  if dot(f.normal, x) == f.rhs))
    boundary = frozenset(i for i in range(len(pts)) if on_facet[i])
    interior = frozenset(i for i in range(len(pts)) if not on_facet[i])

    def msum(tensors: Iterable[SymTensor], rank: int) -> SymTensor:
        acc = SymTensor.zero(rank, 2)
        for x in tensors:
            acc = acc + x
        return acc

    sum_v = msum((outer_power(pts[i], 1) for i in range(len(pts))), 1)
    sum_v_int = msum((outer_power(pts[i], 1) for i in sorted(interior)), 1)
    sum_v_sq = msum((outer_power(pts[i], 2) for i in range(len(pts))), 2)
    sum_v_int_sq = msum((outer_power(pts[i], 2) for i in sorted(interior)), 2)

    interior_edges = []
    boundary_edges = []
    for e in edges:
        if on_facet[e[0]] & on_facet[e[1]]:
            boundary_edges.append(e)
        else:
            interior_edges.append(e)

    def esum(pairs, rank, diff=False):
        acc = SymTensor.zero(rank, 2)
        for a, b in pairs:
            v = tuple(pts[a][i] - pts[b][i] for i in range(2)) if diff \
                else vadd(pts[a], pts[b])
            acc = acc + outer_power(v, rank)
        return acc

    return EdgeStats(
        points=pts,
        edges=tuple(edges),
        interior_points=interior,
        boundary_points=boundary,
        interior_edges=tuple(interior_edges),
        boundary_edges=tuple(boundary_edges),
        sum_v=sum_v,
        sum_v_int=sum_v_int,
        sum_v_bd=sum_v - sum_v_int,
        sum_v_sq=sum_v_sq,
        sum_v_int_sq=sum_v_int_sq,
        sum_v_bd_sq=sum_v_sq - sum_v_int_sq,
        sum_e_sq=esum(edges, 2),
        sum_e_int=esum(interior_edges, 1),
        sum_e_int_sq=esum(interior_edges, 2),
        sum_e_bd_sq=esum(boundary_edges, 2),
        sum_e_bd_diff_sq=esum(boundary_edges, 2, diff=True),
    )


def h1_pick(t: Triangulation) -> HrVector:
    """Rank-1 h-vector of a polygon from triangulation sums.

    ``(0, sum_V x, sum_{E int}(y+z) - 2 sum_{V int} x, sum_{V int} x)``.
    """
    s = edge_stats(t)
    return HrVector((SymTensor.zero(1, 2), s.sum_v,
                     s.sum_e_int - s.sum_v_int * 2, s.sum_v_int))


def h2_pick(t: Triangulation) -> HrVector:
    """Rank-2 h-vector of a polygon from triangulation sums.

    ``(0, sum_V x^2, sum_E (y+z)^2 - sum_V x^2,
    sum_{E int}(y+z)^2 - sum_{V int} x^2, sum_{V int} x^2)``.
    """
    s = edge_stats(t)
    return HrVector((SymTensor.zero(2, 2), s.sum_v_sq,
                     s.sum_e_sq - s.sum_v_sq,
                     s.sum_e_int_sq - s.sum_v_int_sq, s.sum_v_int_sq))


def ehrhart_vector_pick(t: Triangulation) -> TensorPolynomial:
    """Dilation polynomial of the rank-1 moment from triangulation sums."""
    s = edge_stats(t)
    sixth = Fraction(1, 6)
    c1 = (s.sum_v * 2 + s.sum_v_int * 4 - s.sum_e_int) * sixth
    c2 = s.sum_v_bd * Fraction(1, 2)
    c3 = (s.sum_v_bd + s.sum_e_int) * sixth
    return TensorPolynomial((SymTensor.zero(1, 2), c1, c2, c3))


def ehrhart_matrix_pick(t: Triangulation) -> TensorPolynomial:
    """Dilation polynomial of the rank-2 moment from triangulation sums."""
    s = edge_stats(t)
    c1 = s.sum_e_bd_diff_sq * Fraction(1, 12)
    c2 = (s.sum_v_sq * 12 + s.sum_v_int_sq * 12 - s.sum_e_sq - s.sum_e_int_sq) \
        * Fraction(1, 24)
    c3 = (s.sum_v_bd_sq * 2 + s.sum_e_bd_sq) * Fraction(1, 12)
    c4 = (s.sum_e_sq + s.sum_e_int_sq) * Fraction(1, 24)
    return TensorPolynomial((SymTensor.zero(2, 2), c1, c2, c3, c4))


# ---------------------------------------------------------------------------
# half-open decomposition

@dataclass(frozen=True)
class HalfOpenCell:
    """One triangle with the facets visible from the reference point removed.

    ``removed`` holds positions 0..2 inside the triangle; facet k is the
    edge opposite the k-th triangle vertex.
    """

    triangle: tuple[int, int, int]
    removed: frozenset[int]


_GENERIC_PRIMES = [(10007, 10009), (100003, 100019), (1000003, 1000033),
                   (10000019, 10000079), (100000007, 100000037)]


def _default_generic_point(t: Triangulation) -> tuple[Fraction, Fraction]:
    a, b, c = t.triangle_points(t.triangles[0])
    for p1, p2 in _GENERIC_PRIMES:
        q = (Fraction(a[0] + b[0] + c[0], 3) + Fraction(1, p1),
             Fraction(a[1] + b[1] + c[1], 3) + Fraction(1, p2))
        if _is_generic(t, q) and _strictly_inside(q, (a, b, c)):
            return q
    raise RuntimeError("no generic reference point found (prime budget exhausted)")


def _cross_q(y: IntPoint, z: IntPoint, q) -> Fraction:
    return (z[0] - y[0]) * (q[1] - y[1]) - (z[1] - y[1]) * (q[0] - y[0])


def _is_generic(t: Triangulation, q) -> bool:
    seen = set()
    for tri in t.triangles:
        for a, b in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[0], tri[2])):
            e = (a, b) if a < b else (b, a)
            if e in seen:
                continue
            seen.add(e)
            if _cross_q(t.points[e[0]], t.points[e[1]], q) == 0:
                return False
    return True


def _strictly_inside(q, tri_pts) -> bool:
    a, b, c = tri_pts
    s1 = _cross_q(a, b, q)
    s2 = _cross_q(b, c, q)
    s3 = _cross_q(c, a, q)
    return (s1 > 0 and s2 > 0 and s3 > 0) or (s1 < 0 and s2 < 0 and s3 < 0)


def half_open_decomposition(t: Triangulation, q=None) -> list[HalfOpenCell]:
    """Remove from each triangle the facets visible from q.

    q defaults to a perturbed centroid of the first triangle (so the union
    of the cells' lattice points partitions the polygon's lattice points);
    explicit q must be generic, i.e. on no edge line of the triangulation.
    """
    if q is None:
        q = _default_generic_point(t)
    else:
        q = (Fraction(q[0]), Fraction(q[1]))
        if not _is_generic(t, q):
            raise ValueError("reference point lies on a triangulation edge line")
    cells = []
    for tri in t.triangles:
        pts = t.triangle_points(tri)
        removed = set()
        for k in range(3):
            others = [pts[j] for j in range(3) if j != k]
            side_inner = cross2(others[0], others[1], pts[k])
            side_q = _cross_q(others[0], others[1], q)
            if (side_inner > 0) != (side_q > 0):
                removed.add(k)
        cells.append(HalfOpenCell(tri, frozenset(removed)))
    return cells


def cell_simplex(t: Triangulation, cell: HalfOpenCell) -> HalfOpenSimplex:
    return HalfOpenSimplex.make(t.triangle_points(cell.triangle), cell.removed)


def cell_lattice_points(t: Triangulation, cell: HalfOpenCell) -> list[IntPoint]:
    """Lattice points of the half-open cell (facet-strict membership)."""
    pts = t.triangle_points(cell.triangle)
    out = []
    for x in lattice_points(convex_hull(pts), 1):
        ok = True
        for k in cell.removed:
            others = [pts[j] for j in range(3) if j != k]
            inner = cross2(others[0], others[1], pts[k])
            val = cross2(others[0], others[1], x)
            if val == 0:  # on the removed facet line
                ok = False
                break
            if (val > 0) != (inner > 0):
                raise AssertionError("cell point outside its triangle")
        if ok:
            out.append(x)
    return out


# ---------------------------------------------------------------------------
# sparse decomposition: pieces with 3-4 lattice points meeting only at vertices

def _clip_polygon(cycle, facets) -> list[tuple[Fraction, Fraction]]:
    poly = [(Fraction(x), Fraction(y)) for x, y in cycle]
    for normal, rhs in facets:
        if not poly:
            return []
        out = []
        m = len(poly)
        for i in range(m):
            cur, nxt = poly[i], poly[(i + 1) % m]
            vc = normal[0] * cur[0] + normal[1] * cur[1]
            vn = normal[0] * nxt[0] + normal[1] * nxt[1]
            cin, nin = vc <= rhs, vn <= rhs
            if cin:
                out.append(cur)
            if cin != nin:
                tpar = Fraction(rhs - vc, vn - vc)
                out.append((cur[0] + tpar * (nxt[0] - cur[0]),
                            cur[1] + tpar * (nxt[1] - cur[1])))
        poly = []
        for pt in out:  # drop exact duplicates
            if pt not in poly:
                poly.append(pt)
    return poly


def _intersection_points(a: Polytope, b: Polytope) -> list[tuple[Fraction, Fraction]]:
    from .polytopes import polygon_vertex_cycle
    cycle = polygon_vertex_cycle(a)
    return _clip_polygon(cycle, [(f.normal, f.rhs) for f in b.facets])


def _pieces_compatible(a: Polytope, b: Polytope) -> bool:
    """Condition for decomposition pieces: disjoint or one common vertex."""
    pts = _intersection_points(a, b)
    if not pts:
        return True
    if len(pts) > 1:
        uniq = []
        for pt in pts:
            if pt not in uniq:
                uniq.append(pt)
        pts = uniq
    if len(pts) != 1:
        return False
    v = pts[0]
    if v[0].denominator != 1 or v[1].denominator != 1:
        return False
    vi = (int(v[0]), int(v[1]))
    return vi in a.vertices and vi in b.vertices


def _piece(points) -> Polytope | None:
    try:
        hull = convex_hull(points)
    except DegenerateInputError:
        return None
    return hull


def _count_ok(piece: Polytope, budget=(3, 4)) -> bool:
    return len(lattice_points(piece, 1)) in budget


def _pair_chain(apex: IntPoint, chain: list[IntPoint]) -> list[Polytope] | None:
    if len(chain) == 1:
        return None
    out = []
    i = 0
    n = len(chain)
    while i < n:
        rem = n - i
        if rem == 3:
            piece = _piece([apex, chain[i], chain[i + 2]])
            i += 3
        else:
            piece = _piece([apex, chain[i], chain[i + 1]])
            i += 2
        if piece is None:
            return None
        out.append(piece)
    return out


def _validate(pieces: list[Polytope], points: list[IntPoint]) -> bool:
    covered = set()
    for piece in pieces:
        pts = lattice_points(piece, 1)
        if len(pts) not in (3, 4):
            return False
        covered.update(pts)
    if covered != set(points):
        return False
    for i in range(len(pieces)):
        for j in range(i + 1, len(pieces)):
            if not _pieces_compatible(pieces[i], pieces[j]):
                return False
    return True


def _collinear_case(v1: IntPoint, v2: IntPoint, line_pts: list[IntPoint],
                    points: list[IntPoint]) -> list[Polytope] | None:
    """All remaining points on one line; v1, v2 are the two peeled points."""
    on_line = len(line_pts) >= 2 and cross2(line_pts[0], line_pts[1], v2) == 0
    candidates = []
    if on_line:
        # v2 extends the line; the unique off-line point is the only apex
        chain = [v2] + line_pts
        candidates.append((None, v1, chain))
    else:
        for p1_pts in ([v1, v2, line_pts[0]],
                       [v2, line_pts[0], line_pts[1]] if len(line_pts) >= 2 else None,
                       [v1, line_pts[0], line_pts[1]] if len(line_pts) >= 2 else None):
            if p1_pts is None:
                continue
            for apex in (v1, v2):
                rest = [w for w in line_pts if w not in p1_pts]
                candidates.append((p1_pts, apex, rest))
    for p1_pts, apex, chain in candidates:
        pieces = []
        if p1_pts is not None:
            first = _piece(p1_pts)
            if first is None or not _count_ok(first):
                continue
            pieces.append(first)
        tail = _pair_chain(apex, chain) if chain else []
        if tail is None:
            continue
        pieces = pieces + tail
        if _validate(pieces, points):
            return pieces
    return None


def _sparse_points(points: list[IntPoint]) -> list[Polytope] | None:
    if len(points) <= 4:
        piece = _piece(points)
        if piece is None:
            return None
        return [piece]
    # direction (1, N) with N exceeding the x-spread gives distinct products
    spread = max(x for x, _ in points) - min(x for x, _ in points) + 1
    a = (1, spread)
    ordered = sorted(points, key=lambda w: dot(a, w), reverse=True)
    v1, v2, rest = ordered[0], ordered[1], ordered[2:]

    if affine_rank(rest) < 2:
        return _collinear_case(v1, v2, rest, points)

    sub = _sparse_points(rest)
    if sub is None:
        return None
    for w in rest:
        if cross2(v1, v2, w) == 0:
            continue
        cap = _piece([v1, v2, w])
        if cap is None or not _count_ok(cap, budget=(3,)):
            continue
        if all(_pieces_compatible(cap, piece) for piece in sub):
            return sub + [cap]
    return None


def sparse_decomposition(p: Polytope) -> list[Polytope]:
    """Cover the polygon's lattice points by pieces with 3-4 lattice points.

    Pieces pairwise intersect in at most a common vertex and their lattice
    points cover the polygon's.  Construction peels the two largest points
    of a generic linear order and recurses, with a fan construction when the
    remainder is collinear; the result is verified exactly before returning.
    """
    if p.dim != 2:
        raise ValueError("sparse decomposition is a polygon operation")
    points = lattice_points(p, 1)
    result = _sparse_points(points)
    if result is None or not _validate(result, points):
        raise RuntimeError("sparse decomposition construction failed; "
                           f"vertices {p.vertices}")
    return result
