"""Exact symmetric tensors of small rank over Q^d.

Everything here is exact: scalars are :class:`fractions.Fraction` (always
reduced, positive denominator), lattice points are plain ``tuple[int, ...]``
and a symmetric tensor of rank r is stored densely by its sorted
multi-indices ``i_1 <= ... <= i_r`` (each in ``0..d-1``), in
``itertools.combinations_with_replacement`` order.  A rank-0 tensor is a
single rational, a rank-2 tensor round-trips to a symmetric d x d matrix.

All values are immutable after construction and safe to share.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, product
from typing import Iterable, Mapping, Sequence

IntPoint = tuple[int, ...]
Scalar = int | Fraction


# ---------------------------------------------------------------------------
# small integer-vector helpers

def dot(x: Sequence, y: Sequence):
    """Scalar product; exact for int/Fraction inputs."""
    return sum(a * b for a, b in zip(x, y, strict=True))


def vadd(x: Sequence, y: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(x, y, strict=True))


def vsub(x: Sequence, y: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(x, y, strict=True))


def vneg(x: Sequence) -> tuple:
    return tuple(-a for a in x)


def vscale(c, x: Sequence) -> tuple:
    return tuple(c * a for a in x)


@lru_cache(maxsize=None)
def multi_indices(dim: int, rank: int) -> tuple[tuple[int, ...], ...]:
    """All sorted multi-indices of the given rank, in storage order."""
    return tuple(combinations_with_replacement(range(dim), rank))


@lru_cache(maxsize=None)
def _index_position(dim: int, rank: int) -> dict[tuple[int, ...], int]:
    return {m: k for k, m in enumerate(multi_indices(dim, rank))}


@lru_cache(maxsize=None)
def _perm_count(index: tuple[int, ...]) -> int:
    """Number of distinct permutations of a sorted multi-index."""
    n = math.factorial(len(index))
    for c in Counter(index).values():
        n //= math.factorial(c)
    return n


def _as_fraction(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


@dataclass(frozen=True)
class SymTensor:
    """Symmetric tensor of rank ``rank`` on Q^dim, dense sorted-index storage."""

    rank: int
    dim: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        expected = len(multi_indices(self.dim, self.rank))
        if len(self.entries) != expected:
            raise ValueError(
                f"rank-{self.rank} tensor on Q^{self.dim} needs {expected} entries, "
                f"got {len(self.entries)}")

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, rank: int, dim: int) -> "SymTensor":
        n = len(multi_indices(dim, rank))
        return cls(rank, dim, (Fraction(0),) * n)

    @classmethod
    def from_entries(cls, rank: int, dim: int, values: Iterable) -> "SymTensor":
        return cls(rank, dim, tuple(_as_fraction(v) for v in values))

    @classmethod
    def from_map(cls, rank: int, dim: int, mapping: Mapping[tuple[int, ...], Scalar]) -> "SymTensor":
        pos = _index_position(dim, rank)
        vals = [Fraction(0)] * len(pos)
        for idx, v in mapping.items():
            vals[pos[tuple(sorted(idx))]] = _as_fraction(v)
        return cls(rank, dim, tuple(vals))

    @classmethod
    def scalar(cls, dim: int, value: Scalar) -> "SymTensor":
        return cls(0, dim, (_as_fraction(value),))

    @classmethod
    def from_vector(cls, v: Sequence[Scalar]) -> "SymTensor":
        return cls.from_entries(1, len(v), v)

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence[Scalar]]) -> "SymTensor":
        d = len(rows)
        for i in range(d):
            for j in range(i + 1, d):
                if _as_fraction(rows[i][j]) != _as_fraction(rows[j][i]):
                    raise ValueError("matrix is not symmetric")
        return cls.from_entries(2, d, (rows[i][j] for i, j in multi_indices(d, 2)))

    # -- access ------------------------------------------------------------
    def get(self, index: Sequence[int]) -> Fraction:
        """Entry at an arbitrary-order multi-index (symmetry canonicalizes)."""
        key = tuple(sorted(index))
        return self.entries[_index_position(self.dim, self.rank)[key]]

    def as_scalar(self) -> Fraction:
        if self.rank != 0:
            raise ValueError("not a rank-0 tensor")
        return self.entries[0]

    def to_vector(self) -> tuple[Fraction, ...]:
        if self.rank != 1:
            raise ValueError("not a rank-1 tensor")
        return self.entries

    def to_matrix(self) -> tuple[tuple[Fraction, ...], ...]:
        if self.rank != 2:
            raise ValueError("not a rank-2 tensor")
        return tuple(tuple(self.get((i, j)) for j in range(self.dim))
                     for i in range(self.dim))

    @property
    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    # -- exact linear algebra ------------------------------------------------
    def _check_compatible(self, other: "SymTensor"):
        if self.rank != other.rank or self.dim != other.dim:
            raise ValueError(
                f"tensor mismatch: rank {self.rank} dim {self.dim} vs "
                f"rank {other.rank} dim {other.dim}")

    def __add__(self, other: "SymTensor") -> "SymTensor":
        self._check_compatible(other)
        return SymTensor(self.rank, self.dim,
                         tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "SymTensor") -> "SymTensor":
        self._check_compatible(other)
        return SymTensor(self.rank, self.dim,
                         tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "SymTensor":
        return SymTensor(self.rank, self.dim, tuple(-a for a in self.entries))

    def __mul__(self, c: Scalar) -> "SymTensor":
        c = _as_fraction(c)
        return SymTensor(self.rank, self.dim, tuple(c * a for a in self.entries))

    __rmul__ = __mul__

    def apply(self, v: Sequence[Scalar]) -> Fraction:
        """Evaluate the multilinear form on the diagonal, T(v, ..., v).

        Sums ``T_{i_1...i_r} v_{i_1} ... v_{i_r}`` over all (unsorted) index
        tuples; each stored sorted index contributes with its permutation
        multiplicity.
        """
        if len(v) != self.dim:
            raise ValueError(f"vector length {len(v)} != tensor dim {self.dim}")
        vv = [_as_fraction(x) for x in v]
        total = Fraction(0)
        for m, e in zip(multi_indices(self.dim, self.rank), self.entries):
            if e == 0:
                continue
            term = e * _perm_count(m)
            for i in m:
                term *= vv[i]
            total += term
        return total

    def __repr__(self):
        if self.rank == 0:
            return f"SymTensor({self.entries[0]})"
        if self.rank == 2:
            return f"SymTensor({[[str(x) for x in row] for row in self.to_matrix()]})"
        body = {",".join(map(str, m)): str(e)
                for m, e in zip(multi_indices(self.dim, self.rank), self.entries)}
        return f"SymTensor(rank={self.rank}, dim={self.dim}, {body})"


def outer_power(x: Sequence[int], r: int, dim: int | None = None) -> SymTensor:
    """r-fold symmetric outer power x^r; by convention x^0 = 1."""
    if r < 0:
        raise ValueError("rank must be nonnegative")
    d = len(x) if dim is None else dim
    vals = []
    for m in multi_indices(d, r):
        p = 1
        for i in m:
            p *= x[i]
        vals.append(p)
    return SymTensor.from_entries(r, d, vals)


def tensor_apply(t: SymTensor, v: Sequence[Scalar]) -> Fraction:
    """Free-function form of :meth:`SymTensor.apply`."""
    return t.apply(v)


def sym_product(a: SymTensor, b: SymTensor) -> SymTensor:
    """Symmetrized tensor product of two symmetric tensors.

    Normalized so that for vectors ``sym_product(u, u) == outer_power(u, 2)``
    and ``(u + w)^2 == u^2 + 2 u.w + w^2``.
    """
    if a.dim != b.dim:
        raise ValueError("dimension mismatch")
    d, ra, rb = a.dim, a.rank, b.rank
    if ra == 0:
        return b * a.as_scalar()
    if rb == 0:
        return a * b.as_scalar()
    r = ra + rb
    splits = list(combinations(range(r), ra))
    nsplits = len(splits)
    vals = []
    for m in multi_indices(d, r):
        acc = Fraction(0)
        for sel in splits:
            selset = set(sel)
            left = tuple(m[i] for i in sel)
            right = tuple(m[i] for i in range(r) if i not in selset)
            acc += a.get(left) * b.get(right)
        vals.append(acc / nsplits)
    return SymTensor(r, d, tuple(vals))


def apply_linear_map(t: SymTensor, matrix: Sequence[Sequence[int]]) -> SymTensor:
    """Push a tensor forward along the linear map ``x -> M x``.

    ``(M_* T)_{i_1..i_r} = sum_j M_{i_1 j_1} ... M_{i_r j_r} T_{j_1..j_r}``;
    for ``T = outer_power(x, r)`` this is ``outer_power(M x, r)``.  M may be
    rectangular (rows x t.dim); the result lives in the row dimension.
    """
    d = t.dim
    dout = len(matrix)
    if any(len(row) != d for row in matrix):
        raise ValueError("matrix column count must match tensor dimension")
    vals = []
    for m in multi_indices(dout, t.rank):
        acc = Fraction(0)
        for js in product(range(d), repeat=t.rank):
            coeff = 1
            for i, j in zip(m, js):
                coeff *= matrix[i][j]
            if coeff:
                acc += coeff * t.get(js)
        vals.append(acc)
    return SymTensor(t.rank, dout, tuple(vals))


@dataclass(frozen=True)
class TensorPolynomial:
    """Polynomial in one variable with SymTensor coefficients, degree-indexed.

    ``coeffs[k]`` multiplies ``n^k``; all coefficients share rank and dim.
    """

    coeffs: tuple[SymTensor, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("need at least one coefficient")
        r, d = self.coeffs[0].rank, self.coeffs[0].dim
        for c in self.coeffs:
            if c.rank != r or c.dim != d:
                raise ValueError("coefficient rank/dim not uniform")

    @property
    def rank(self) -> int:
        return self.coeffs[0].rank

    @property
    def dim(self) -> int:
        return self.coeffs[0].dim

    @property
    def degree(self) -> int:
        for k in range(len(self.coeffs) - 1, -1, -1):
            if not self.coeffs[k].is_zero:
                return k
        return 0

    def evaluate(self, n: Scalar) -> SymTensor:
        n = _as_fraction(n)
        acc = SymTensor.zero(self.rank, self.dim)
        power = Fraction(1)
        for c in self.coeffs:
            acc = acc + c * power
            power *= n
        return acc

    def __call__(self, n: Scalar) -> SymTensor:
        return self.evaluate(n)


@dataclass(frozen=True)
class HrVector:
    """h-tensor vector: the d+r+1 numerator coefficients of the moment series.

    ``entries[i]`` is the coefficient of t^i in the numerator of
    ``sum_n L^r(nP) t^n`` over ``(1 - t)^(d + r + 1)``.
    """

    entries: tuple[SymTensor, ...]

    def __post_init__(self):
        if not self.entries:
            raise ValueError("empty h-vector")
        r, d = self.entries[0].rank, self.entries[0].dim
        for e in self.entries:
            if e.rank != r or e.dim != d:
                raise ValueError("entry rank/dim not uniform")

    @property
    def rank(self) -> int:
        return self.entries[0].rank

    @property
    def dim(self) -> int:
        return self.entries[0].dim

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i: int) -> SymTensor:
        return self.entries[i]

    def __add__(self, other: "HrVector") -> "HrVector":
        if len(self) != len(other):
            raise ValueError("length mismatch")
        return HrVector(tuple(a + b for a, b in zip(self.entries, other.entries)))


# ---------------------------------------------------------------------------
# serialization: rationals as "p/q" (reduced, "p" when q = 1); rank-2 tensors
# as nested symmetric matrices, rank 0 as a bare string, other ranks as flat
# multi-index maps keyed by comma-joined sorted indices.

def rational_to_str(x: Scalar) -> str:
    return str(_as_fraction(x))


def rational_from_str(s: str) -> Fraction:
    return Fraction(s)


def tensor_to_json(t: SymTensor):
    if t.rank == 0:
        return rational_to_str(t.as_scalar())
    if t.rank == 2:
        return [[rational_to_str(x) for x in row] for row in t.to_matrix()]
    return {",".join(map(str, m)): rational_to_str(e)
            for m, e in zip(multi_indices(t.dim, t.rank), t.entries)}


def tensor_from_json(data, rank: int, dim: int) -> SymTensor:
    if rank == 0:
        return SymTensor.scalar(dim, rational_from_str(data))
    if rank == 2:
        return SymTensor.from_matrix([[rational_from_str(x) for x in row] for row in data])
    mapping = {tuple(int(p) for p in key.split(",")) if key else (): rational_from_str(v)
               for key, v in data.items()}
    return SymTensor.from_map(rank, dim, mapping)
