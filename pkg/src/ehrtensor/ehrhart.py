"""Discrete moment tensors and their dilation polynomials.

The rank-r discrete moment of a lattice polytope is the sum of r-fold
symmetric outer powers over its lattice points.  As a function of the
dilation factor n it is a polynomial of degree at most dim + r whose
coefficients are recovered here by an exact Vandermonde solve on the nodes
n = 0..dim+r; the h-tensor vector is the same data in the shifted binomial
basis, extracted by alternating binomial sums (pure integer arithmetic).
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement

from . import linalg
from .polytopes import Polytope, interior_lattice_points, iter_lattice_points, polygon_vertex_cycle
from .tensors import (HrVector, SymTensor, TensorPolynomial, multi_indices,
                      outer_power, sym_product, vsub)


def _moment_from_iter(points, r: int, dim: int) -> SymTensor:
    idx = multi_indices(dim, r)
    acc = [0] * len(idx)
    for x in points:
        for k, m in enumerate(idx):
            p = 1
            for i in m:
                p *= x[i]
            acc[k] += p
    return SymTensor.from_entries(r, dim, acc)


@lru_cache(maxsize=65536)
def discrete_moment(p: Polytope, r: int, n: int) -> SymTensor:
    """Sum of outer powers x^r over the lattice points of n*P."""
    if r < 0 or n < 0:
        raise ValueError("rank and dilation must be nonnegative")
    return _moment_from_iter(iter_lattice_points(p, n), r, p.dim)


@lru_cache(maxsize=65536)
def discrete_moment_interior(p: Polytope, r: int, n: int) -> SymTensor:
    """Sum of outer powers over lattice points strictly inside n*P (n >= 1)."""
    return _moment_from_iter(interior_lattice_points(p, n), r, p.dim)


@lru_cache(maxsize=None)
def _vandermonde_inverse(m: int):
    nodes = list(range(m + 1))
    vm = [[Fraction(node) ** k for k in range(m + 1)] for node in nodes]
    return linalg.invert(vm)


def ehrhart_tensor_polynomial(p: Polytope, r: int) -> TensorPolynomial:
    """The unique degree <= dim+r polynomial matching the moments at n = 0..dim+r.

    Solved entry-wise through the inverse Vandermonde matrix on the smallest
    valid node set; the constant term is automatically zero for r >= 1.
    """
    m = p.dim + r
    values = [discrete_moment(p, r, n) for n in range(m + 1)]
    inv = _vandermonde_inverse(m)
    coeffs = []
    for k in range(m + 1):
        acc = SymTensor.zero(r, p.dim)
        for j in range(m + 1):
            if inv[k][j] != 0:
                acc = acc + values[j] * inv[k][j]
        coeffs.append(acc)
    return TensorPolynomial(tuple(coeffs))


def to_hr_vector(p: Polytope, r: int) -> HrVector:
    """h-tensor vector of P: numerator coefficients of the moment series.

    ``h_i = sum_{j<=i} (-1)^(i-j) C(d+r+1, i-j) L^r(jP)`` for i = 0..d+r.
    The top entry equals the interior moment L^r(P°) and, for r >= 1, entry
    0 vanishes and entry 1 is L^r(P).
    """
    m = p.dim + r
    moments = [discrete_moment(p, r, j) for j in range(m + 1)]
    entries = []
    for i in range(m + 1):
        acc = SymTensor.zero(r, p.dim)
        for j in range(i + 1):
            c = (-1) ** (i - j) * math.comb(m + 1, i - j)
            if c:
                acc = acc + moments[j] * c
        entries.append(acc)
    return HrVector(tuple(entries))


@lru_cache(maxsize=None)
def _binomial_basis_poly(m: int, i: int) -> tuple[Fraction, ...]:
    """Coefficients (in n) of C(n + m - i, m) as an exact polynomial."""
    # product (n + m - i - k) for k = 0..m-1, divided by m!
    coeffs = [Fraction(1)]
    for k in range(m):
        shift = m - i - k
        new = [Fraction(0)] * (len(coeffs) + 1)
        for deg, c in enumerate(coeffs):
            new[deg] += c * shift
            new[deg + 1] += c
        coeffs = new
    fact = math.factorial(m)
    return tuple(c / fact for c in coeffs)


def hr_vector_to_polynomial(h: HrVector) -> TensorPolynomial:
    """Expand an h-tensor vector in the shifted binomial basis to powers of n."""
    m = len(h) - 1
    coeffs = [SymTensor.zero(h.rank, h.dim) for _ in range(m + 1)]
    for i, hi in enumerate(h.entries):
        if hi.is_zero:
            continue
        basis = _binomial_basis_poly(m, i)
        for deg, c in enumerate(basis):
            if c:
                coeffs[deg] = coeffs[deg] + hi * c
    return TensorPolynomial(tuple(coeffs))


def reciprocity_check(p: Polytope, r: int, n: int) -> bool:
    """Exact check that the moment polynomial at -n matches the interior sum.

    Compares L^r_P(-n) against (-1)^(dim+r) L^r(nP°), both sides computed
    independently (interpolation vs. strict enumeration).
    """
    if n < 1:
        raise ValueError("reciprocity check needs n >= 1")
    poly = ehrhart_tensor_polynomial(p, r)
    lhs = poly.evaluate(-n)
    rhs = discrete_moment_interior(p, r, n) * ((-1) ** (p.dim + r))
    return lhs == rhs


# ---------------------------------------------------------------------------
# exact volume moments

def _simplex_moment(verts: list, r: int, dim: int) -> SymTensor:
    """Integral of x^r over a d-simplex via barycentric monomial moments.

    With vertex tensors w_0..w_d this is
    ``|det| * r! / (d+r)! * sum_{|k|=r} w_0^(k_0) ... w_d^(k_d)``.
    """
    base = verts[0]
    det = abs(linalg.det([vsub(v, base) for v in verts[1:]]))
    if det == 0:
        return SymTensor.zero(r, dim)
    acc = SymTensor.zero(r, dim)
    for combo in combinations_with_replacement(range(len(verts)), r):
        term = SymTensor.scalar(dim, 1)
        for i in combo:
            term = sym_product(term, outer_power(verts[i], 1, dim))
        acc = acc + term
    scale = det * Fraction(math.factorial(r), math.factorial(dim + r))
    return acc * scale


def _facet_triangles_3d(p: Polytope) -> list[tuple]:
    """Fan triangulations of every facet polygon of a 3-polytope."""
    tris = []
    for f in p.facets:
        verts = list(p.facet_vertices(f))
        # order the facet cycle via a coordinate projection killing no area
        drop = max(range(3), key=lambda i: abs(f.normal[i]))
        keep = [i for i in range(3) if i != drop]
        flat = {(v[keep[0]], v[keep[1]]): v for v in verts}
        from .polytopes import _hull_2d
        cycle = [flat[q] for q in _hull_2d(list(flat))]
        for i in range(1, len(cycle) - 1):
            tris.append((cycle[0], cycle[i], cycle[i + 1]))
    return tris


def moment_tensor(p: Polytope, r: int) -> SymTensor:
    """Exact integral of x^r over P (r <= 2, dim <= 3).

    P is triangulated into simplices coned from the vertex centroid over
    (fan-triangulated) facets and each simplex integrated in closed form.
    """
    if r > 2:
        raise ValueError("volume moments implemented for rank <= 2 only")
    d = p.dim
    nv = len(p.vertices)
    centroid = tuple(Fraction(sum(v[i] for v in p.vertices), nv) for i in range(d))
    acc = SymTensor.zero(r, d)
    if d == 1:
        return _simplex_moment([p.vertices[0], p.vertices[1]], r, 1)
    if d == 2:
        cycle = polygon_vertex_cycle(p)
        faces = [(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))]
    elif d == 3:
        faces = _facet_triangles_3d(p)
    else:
        raise ValueError("volume moments implemented for dim <= 3 only")
    for face in faces:
        acc = acc + _simplex_moment([centroid, *face], r, d)
    return acc


def second_coefficient_facets(p: Polytope, r: int) -> SymTensor:
    """Half the facet-moment sum: the coefficient of n^(dim+r-1).

    Each polygon edge is parametrized in primitive lattice steps, so the
    facet integral is a 1D rational integral weighted by lattice length:
    ``1/2 * sum_F integral_0^g (u + s p)^r ds``.
    """
    if p.dim != 2:
        raise ValueError("facet-sum coefficient implemented for polygons only")
    if r > 2:
        raise ValueError("facet moments implemented for rank <= 2 only")
    cycle = polygon_vertex_cycle(p)
    acc = SymTensor.zero(r, 2)
    for i in range(len(cycle)):
        u, w = cycle[i], cycle[(i + 1) % len(cycle)]
        step = vsub(w, u)
        g = math.gcd(step[0], step[1])
        prim = (step[0] // g, step[1] // g)
        for j in range(r + 1):
            tensor = sym_product(outer_power(u, r - j, 2), outer_power(prim, j, 2))
            acc = acc + tensor * (math.comb(r, j) * Fraction(g ** (j + 1), j + 1))
    return acc * Fraction(1, 2)


def translation_covariance_rhs(p: Polytope, r: int, n: int, t) -> SymTensor:
    """Binomial expansion of the moment of a translated polytope.

    ``sum_j C(r, j) L^(r-j)(nP) . (n t)^j`` — the exact value the moment of
    the translate must equal (dilation scales the translation).
    """
    acc = SymTensor.zero(r, p.dim)
    nt = tuple(n * c for c in t)
    for j in range(r + 1):
        term = sym_product(discrete_moment(p, r - j, n), outer_power(nt, j, p.dim))
        acc = acc + term * math.comb(r, j)
    return acc
