"""Half-open lattice simplices and their moment generating functions.

A half-open simplex is a simplex with a subset of facets removed (facet i
is the one opposite vertex i; indices are 0-based).  Lifting the vertices to
height 1 tiles the cone over the simplex by translates of a half-open
parallelepiped; its integer points, graded by height, are the box points.
The h-tensor vector of the half-open simplex then comes out of an explicit
numerator formula whose polynomial ingredients are Eulerian polynomials, the
generating numerators of ``sum_n n^j t^n``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from . import linalg
from .polytopes import EQ, LE, LT, scan_points
from .tensors import (HrVector, IntPoint, SymTensor, dot, multi_indices,
                      outer_power, sym_product, vsub)


# ---------------------------------------------------------------------------
# integer univariate polynomials

@dataclass(frozen=True)
class UniPoly:
    """Univariate polynomial with exact integer coefficients, low degree first."""

    coeffs: tuple[int, ...]

    @staticmethod
    def _trim(cs) -> tuple[int, ...]:
        cs = list(cs)
        while cs and cs[-1] == 0:
            cs.pop()
        return tuple(cs)

    @classmethod
    def of(cls, *coeffs: int) -> "UniPoly":
        return cls(cls._trim(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else -1

    def __add__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return UniPoly(self._trim(x + y for x, y in zip(a, b)))

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        if not self.coeffs or not other.coeffs:
            return UniPoly(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(self._trim(out))

    def __pow__(self, k: int) -> "UniPoly":
        result = UniPoly((1,))
        for _ in range(k):
            result = result * self
        return result

    def __call__(self, x: int):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def coefficient(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0


ONE_MINUS_T = UniPoly((1, -1))


@lru_cache(maxsize=None)
def eulerian_polynomial(j: int) -> UniPoly:
    """Numerator of sum_{n>=0} n^j t^n over (1-t)^(j+1), with 0^0 = 1.

    ``A_j(t) = sum_{n=0..j} sum_{i=0..n} (-1)^i C(j+1, i) (n-i)^j t^n``;
    the coefficients are positive and add up to j!.
    """
    if j < 0:
        raise ValueError("index must be nonnegative")
    coeffs = []
    for n in range(j + 1):
        total = 0
        for i in range(n + 1):
            base = n - i
            power = 1 if j == 0 else base ** j
            total += (-1) ** i * math.comb(j + 1, i) * power
        coeffs.append(total)
    return UniPoly(UniPoly._trim(coeffs))


# ---------------------------------------------------------------------------
# half-open simplices

@dataclass(frozen=True)
class HalfOpenSimplex:
    """Lattice simplex with the facets opposite ``removed`` vertices deleted."""

    vertices: tuple[IntPoint, ...]
    removed: frozenset[int]

    def __post_init__(self):
        d = len(self.vertices[0])
        if len(self.vertices) != d + 1:
            raise ValueError(f"a {d}-simplex needs {d + 1} vertices")
        if self.lifted_det() == 0:
            raise ValueError("vertices are affinely dependent")
        if not all(0 <= i <= d for i in self.removed):
            raise ValueError("removed facet indices out of range")
        if len(self.removed) > d:
            # no point sees every facet; keeping one also caps the box
            # heights at d, which the h-vector degree bound relies on
            raise ValueError("at least one facet must remain")

    @classmethod
    def make(cls, vertices, removed=()) -> "HalfOpenSimplex":
        return cls(tuple(tuple(int(c) for c in v) for v in vertices),
                   frozenset(int(i) for i in removed))

    @property
    def dim(self) -> int:
        return len(self.vertices[0])

    def lifted_det(self) -> int:
        return linalg.int_det([list(v) + [1] for v in self.vertices])

    def normalized_volume(self) -> int:
        return abs(self.lifted_det())

    def facet(self, i: int) -> tuple[IntPoint, int]:
        """Inequality (normal, rhs) of facet i, polytope side normal.x <= rhs."""
        d = self.dim
        others = [self.vertices[j] for j in range(d + 1) if j != i]
        base = others[0]
        normal = linalg.generalized_cross([vsub(v, base) for v in others[1:]], d)
        normal = linalg.primitive(normal)
        rhs = dot(normal, base)
        if dot(normal, self.vertices[i]) > rhs:
            normal, rhs = tuple(-c for c in normal), -rhs
        return normal, rhs

    def constraints(self, n: int, removed_mode: int = LT) -> list[tuple[IntPoint, int, int]]:
        cons = []
        for i in range(self.dim + 1):
            normal, rhs = self.facet(i)
            mode = removed_mode if i in self.removed else LE
            cons.append((normal, n * rhs, mode))
        return cons

    def bounds(self, n: int) -> list[tuple[int, int]]:
        d = self.dim
        return [(n * min(v[i] for v in self.vertices), n * max(v[i] for v in self.vertices))
                for i in range(d)]


@dataclass(frozen=True)
class BoxSlices:
    """Integer points of the half-open parallelepiped, graded by height.

    ``slices[i]`` holds the points at last (lifted) coordinate i, projected
    back to Z^d; the total count equals the normalized volume.
    """

    slices: tuple[tuple[IntPoint, ...], ...]

    @property
    def total(self) -> int:
        return sum(len(s) for s in self.slices)


def box_slices(s: HalfOpenSimplex) -> BoxSlices:
    """Enumerate the box points of the lifted half-open parallelepiped.

    A candidate integer point z is accepted when the exact barycentric
    solution of ``z = sum lambda_i (v_i, 1)`` satisfies ``0 < lambda_i <= 1``
    for removed facets and ``0 <= lambda_i < 1`` otherwise.
    """
    d = s.dim
    lifted = [tuple(v) + (1,) for v in s.vertices]
    det = linalg.int_det([[lifted[col][row] for col in range(d + 1)] for row in range(d + 1)])
    slices: list[list[IntPoint]] = [[] for _ in range(d + 1)]

    if abs(det) == 1:
        # unimodular: the lifted vertices are a lattice basis, so the only
        # box point has coefficient 1 exactly on the removed facets
        z = [0] * (d + 1)
        for i in s.removed:
            for k in range(d + 1):
                z[k] += lifted[i][k]
        height = z[d]
        slices[height].append(tuple(z[:d]))
        return BoxSlices(tuple(tuple(sorted(sl)) for sl in slices))

    vmat = [[lifted[col][row] for col in range(d + 1)] for row in range(d + 1)]
    inv = linalg.invert(vmat)
    dabs = abs(det)
    sign = 1 if det > 0 else -1
    # integer adjugate rows: dabs * inv (exact)
    adj = [[int(inv[i][j] * det) * sign for j in range(d + 1)] for i in range(d + 1)]
    lo = [sum(min(0, lifted[i][j]) for i in range(d + 1)) for j in range(d + 1)]
    hi = [sum(max(0, lifted[i][j]) for i in range(d + 1)) for j in range(d + 1)]
    for z in product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        ok = True
        for i in range(d + 1):
            num = sum(adj[i][j] * z[j] for j in range(d + 1))
            if i in s.removed:
                if not (0 < num <= dabs):
                    ok = False
                    break
            else:
                if not (0 <= num < dabs):
                    ok = False
                    break
        if ok:
            slices[z[d]].append(tuple(z[:d]))
    return BoxSlices(tuple(tuple(sorted(sl)) for sl in slices))


def _moment_of_points(points, r: int, dim: int) -> SymTensor:
    idx = multi_indices(dim, r)
    acc = [0] * len(idx)
    for x in points:
        for k, m in enumerate(idx):
            p = 1
            for i in m:
                p *= x[i]
            acc[k] += p
    return SymTensor.from_entries(r, dim, acc)


def moment_halfopen(s: HalfOpenSimplex, r: int, n: int) -> SymTensor:
    """Rank-r moment of the dilate n*S*, by direct strict/weak enumeration."""
    if n < 0 or r < 0:
        raise ValueError("rank and dilation must be nonnegative")
    pts = scan_points(s.bounds(n), s.constraints(n, removed_mode=LT))
    return _moment_of_points(pts, r, s.dim)


def moment_halfopen_inclusion_exclusion(s: HalfOpenSimplex, r: int, n: int) -> SymTensor:
    """Same moment by inclusion-exclusion over removed-facet intersections.

    Subtracts the moment of the union of removed facets from the closed
    moment; the face ``F_J`` cut out by a subset J of removed facets is
    enumerated with equality constraints.  Must agree with the direct path.
    """
    if n < 0 or r < 0:
        raise ValueError("rank and dilation must be nonnegative")
    d = s.dim
    closed = _moment_of_points(scan_points(s.bounds(n), s.constraints(n, removed_mode=LE)),
                               r, d)
    removed = sorted(s.removed)
    acc = closed
    for mask in range(1, 1 << len(removed)):
        subset = [removed[k] for k in range(len(removed)) if mask >> k & 1]
        cons = []
        for i in range(d + 1):
            normal, rhs = s.facet(i)
            cons.append((normal, n * rhs, EQ if i in subset else LE))
        face = _moment_of_points(scan_points(s.bounds(n), cons), r, d)
        signm = (-1) ** (len(subset) + 1)
        acc = acc - face * signm
    return acc


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _multinomial(total: int, parts) -> int:
    n = math.factorial(total)
    for k in parts:
        n //= math.factorial(k)
    return n


def hr_halfopen(s: HalfOpenSimplex, r: int) -> HrVector:
    """h-tensor vector of a half-open simplex from its box points.

    Assembles the numerator of ``sum_n L^r(nS*) t^n`` over
    ``(1-t)^(d+r+1)`` as a sum over compositions ``r = k_0 + ... + k_(d+1)``
    of multinomially weighted symmetric products of vertex powers with slice
    moments, times ``(1-t)^(k_0) A_(k_1)(t) ... A_(k_(d+1))(t)`` and the
    slice height marker t^i.  Works in any dimension; rank is capped at 2
    (all closed matrix/vector forms live there).
    """
    if r < 0:
        raise ValueError("rank must be nonnegative")
    if r > 2:
        raise ValueError("half-open h-vectors implemented for rank <= 2")
    d = s.dim
    slices = box_slices(s).slices
    slice_moments = [[_moment_of_points(pts, k, d) for pts in slices]
                     for k in range(r + 1)]
    m = d + r
    out = [SymTensor.zero(r, d) for _ in range(m + 1)]
    for comp in _compositions(r, d + 2):
        k0 = comp[0]
        mult = _multinomial(r, comp)
        poly = ONE_MINUS_T ** k0
        for kj in comp[1:]:
            if kj:
                poly = poly * eulerian_polynomial(kj)
        vertex_part = SymTensor.scalar(d, 1)
        for j, kj in enumerate(comp[1:]):
            if kj:
                vertex_part = sym_product(vertex_part, outer_power(s.vertices[j], kj, d))
        for i in range(d + 1):
            base = slice_moments[k0][i]
            if base.is_zero:
                continue
            tensor = sym_product(vertex_part, base) * mult
            for deg, c in enumerate(poly.coeffs):
                if c:
                    k = i + deg
                    if k > m:
                        raise AssertionError("numerator degree exceeded d+r")
                    out[k] = out[k] + tensor * c
    return HrVector(tuple(out))


def _slice_data(s: HalfOpenSimplex, max_rank: int):
    slices = box_slices(s).slices
    return [[_moment_of_points(pts, k, s.dim) for pts in slices]
            for k in range(max_rank + 1)]


def h1_halfopen_2d(s: HalfOpenSimplex) -> HrVector:
    """Closed 2D vector form: h_i = L^1(S_i) - L^1(S_(i-1)) + L(S_(i-1)) (v1+v2+v3)."""
    if s.dim != 2:
        raise ValueError("closed form is two-dimensional")
    lk = _slice_data(s, 1)
    vsum = outer_power([sum(v[i] for v in s.vertices) for i in range(2)], 1, 2)

    def l(k, i):
        if 0 <= i < len(lk[k]):
            return lk[k][i]
        return SymTensor.zero(k, 2)

    entries = []
    for i in range(4):
        term = l(1, i) - l(1, i - 1) + vsum * l(0, i - 1).as_scalar()
        entries.append(term)
    return HrVector(tuple(entries))


def h2_halfopen_2d(s: HalfOpenSimplex) -> HrVector:
    """Closed 2D matrix form built from slice moments of rank 0..2."""
    if s.dim != 2:
        raise ValueError("closed form is two-dimensional")
    lk = _slice_data(s, 2)
    vsum_vec = outer_power([sum(v[i] for v in s.vertices) for i in range(2)], 1, 2)
    sq_sum = SymTensor.zero(2, 2)
    for v in s.vertices:
        sq_sum = sq_sum + outer_power(v, 2, 2)
    vsum_sq = outer_power([sum(v[i] for v in s.vertices) for i in range(2)], 2, 2)

    def l(k, i):
        if 0 <= i < len(lk[k]):
            return lk[k][i]
        return SymTensor.zero(k, 2)

    entries = []
    for i in range(5):
        term = l(2, i) - l(2, i - 1) * 2 + l(2, i - 2)
        term = term + sym_product(vsum_vec, l(1, i - 1) - l(1, i - 2)) * 2
        term = term + sq_sum * l(0, i - 1).as_scalar()
        term = term + vsum_sq * l(0, i - 2).as_scalar()
        entries.append(term)
    return HrVector(tuple(entries))


# ---------------------------------------------------------------------------
# JSON: {"vertices": [[...], ...], "removed": [0-based indices]}

def halfopen_to_json(s: HalfOpenSimplex) -> dict:
    return {"vertices": [list(v) for v in s.vertices],
            "removed": sorted(s.removed)}


def halfopen_from_json(data: dict) -> HalfOpenSimplex:
    if not isinstance(data, dict) or "vertices" not in data:
        raise ValueError("half-open simplex JSON needs a 'vertices' array")
    return HalfOpenSimplex.make(data["vertices"], data.get("removed", ()))
