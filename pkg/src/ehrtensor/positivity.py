"""Exact definiteness classification, square certificates and scanners.

A rank-2 tensor is classified through the signs of the elementary symmetric
functions of its eigenvalues (sums of principal minors, all rational):
weakly alternating signs characterize positive semidefiniteness, strict for
definiteness.  Witness directions come from an exact congruence
diagonalization, never from eigenvalues, so everything stays in Q.
"""
from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from . import linalg
from .ehrhart import to_hr_vector
from .polytopes import (Polytope, interior_lattice_points, is_reflexive,
                        random_lattice_polytope)
from .tensors import HrVector, SymTensor, rational_to_str

PSD_CLASSES = ("zero", "positive_semidefinite", "positive_definite")


class NotPositiveSemidefiniteError(ValueError):
    def __init__(self, witness, value):
        self.witness = witness
        self.value = value
        super().__init__(f"not positive semidefinite: form value {value} at {witness}")


@dataclass(frozen=True)
class DefinitenessReport:
    classification: str
    witness: tuple[Fraction, ...] | None = None   # direction with negative form value
    witness_value: Fraction | None = None
    kernel: tuple[Fraction, ...] | None = None    # null direction when singular

    @property
    def is_psd(self) -> bool:
        return self.classification in PSD_CLASSES


@dataclass(frozen=True)
class SosCertificate:
    """Exact decomposition T = sum lambda_k u_k u_k^t with lambda_k >= 0."""

    terms: tuple[tuple[Fraction, tuple[Fraction, ...]], ...]

    def reconstruct(self, dim: int) -> SymTensor:
        acc = SymTensor.zero(2, dim)
        for lam, u in self.terms:
            acc = acc + SymTensor.from_map(
                2, dim, {(i, j): lam * u[i] * u[j]
                         for i in range(dim) for j in range(i, dim)})
        return acc


def _elementary_symmetric(matrix) -> list[Fraction]:
    """e_k of the eigenvalues = sum of k x k principal minors, k = 1..d."""
    d = len(matrix)
    out = []
    for k in range(1, d + 1):
        total = Fraction(0)
        for rows in combinations(range(d), k):
            sub = [[matrix[i][j] for j in rows] for i in rows]
            total += linalg.det(sub)
        out.append(total)
    return out


def congruence_diagonalization(matrix) -> tuple[list[Fraction], list[list[Fraction]]]:
    """Exact symmetric diagonalization C^t M C = D with C invertible.

    Returns (diag, C).  Columns of C are directions realizing the diagonal
    form values; for the zero-diagonal pivot case a column addition makes
    the pivot nonzero first.  Purely rational: no eigenvalues anywhere.
    """
    d = len(matrix)
    a = [[Fraction(x) for x in row] for row in matrix]
    c = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]

    def col_add(dst, src, f):
        # column op x_dst += f * x_src on both the form and the basis
        for i in range(d):
            a[i][dst] += f * a[i][src]
        for i in range(d):
            a[dst][i] += f * a[src][i]
        for i in range(d):
            c[i][dst] += f * c[i][src]

    def col_swap(i, j):
        for r in range(d):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        for r in range(d):
            a[i][r], a[j][r] = a[j][r], a[i][r]
        for r in range(d):
            c[r][i], c[r][j] = c[r][j], c[r][i]

    for t in range(d):
        if a[t][t] == 0:
            j = next((j for j in range(t + 1, d) if a[j][j] != 0), None)
            if j is not None:
                col_swap(t, j)
            else:
                j = next((j for j in range(t + 1, d) if a[t][j] != 0), None)
                if j is None:
                    continue  # row already clear
                col_add(t, j, Fraction(1))
        piv = a[t][t]
        for j in range(t + 1, d):
            if a[t][j] != 0:
                col_add(j, t, -a[t][j] / piv)
    return [a[i][i] for i in range(d)], c


def classify_definiteness(t: SymTensor) -> DefinitenessReport:
    """Exact definiteness class of a rank-2 tensor, with rational witnesses."""
    if t.rank != 2:
        raise ValueError("definiteness is a rank-2 notion")
    if t.is_zero:
        d = t.dim
        e0 = tuple(Fraction(int(i == 0)) for i in range(d))
        return DefinitenessReport("zero", kernel=e0)
    matrix = t.to_matrix()
    es = _elementary_symmetric(matrix)
    pos_def = all(e > 0 for e in es)
    pos_semi = all(e >= 0 for e in es)
    neg_def = all((e > 0 if k % 2 == 0 else e < 0) for k, e in enumerate(es, start=1))
    neg_semi = all((e >= 0 if k % 2 == 0 else e <= 0) for k, e in enumerate(es, start=1))

    diag, c = congruence_diagonalization(matrix)
    witness = witness_value = kernel = None
    for k, dv in enumerate(diag):
        if dv < 0 and witness is None:
            witness = tuple(c[i][k] for i in range(t.dim))
            witness_value = dv
        if dv == 0 and kernel is None:
            kernel = tuple(c[i][k] for i in range(t.dim))

    if pos_def:
        cls = "positive_definite"
    elif pos_semi:
        cls = "positive_semidefinite"
    elif neg_def:
        cls = "negative_definite"
    elif neg_semi:
        cls = "negative_semidefinite"
    else:
        cls = "indefinite"

    if witness is not None and t.apply(witness) != witness_value:
        raise AssertionError("witness value mismatch")
    return DefinitenessReport(cls, witness=witness, witness_value=witness_value,
                              kernel=kernel)


def sos_certificate(t: SymTensor) -> SosCertificate:
    """Write a PSD rank-2 tensor as an exact nonnegative sum of squares.

    Congruence diagonalization with symmetric pivoting; the functionals are
    the rows of the inverse basis, so reconstruction is exact.  Refuses
    non-PSD input and hands back the violating direction.
    """
    if t.rank != 2:
        raise ValueError("square certificates are a rank-2 notion")
    diag, c = congruence_diagonalization(t.to_matrix())
    for k, dv in enumerate(diag):
        if dv < 0:
            witness = tuple(c[i][k] for i in range(t.dim))
            raise NotPositiveSemidefiniteError(witness, dv)
    cinv = linalg.invert(c)
    terms = tuple((diag[k], tuple(cinv[k])) for k in range(t.dim) if diag[k] != 0)
    cert = SosCertificate(terms)
    if cert.reconstruct(t.dim) != t:
        raise AssertionError("certificate does not reconstruct the tensor")
    return cert


def check_h2_psd(p: Polytope) -> list[DefinitenessReport]:
    """Classify every rank-2 h-vector entry of P."""
    h = to_hr_vector(p, 2)
    return [classify_definiteness(entry) for entry in h.entries]


def check_ehrhart_psd(p: Polytope, r: int = 2) -> list[DefinitenessReport]:
    """Classify the nonconstant coefficients of the rank-r moment polynomial."""
    if r != 2:
        raise ValueError("definiteness applies to matrix coefficients (r = 2)")
    from .ehrhart import ehrhart_tensor_polynomial
    poly = ehrhart_tensor_polynomial(p, r)
    return [classify_definiteness(c) for c in poly.coeffs[1:]]


def palindromic(h: HrVector) -> bool:
    """Exact entry-wise symmetry h_i = h_(m-i)."""
    m = len(h) - 1
    return all(h[i] == h[m - i] for i in range(m + 1))


def reflexivity_palindromicity_check(p: Polytope, r: int) -> bool:
    """Whether reflexivity and even-rank h-vector palindromicity agree on P."""
    if r % 2 != 0:
        raise ValueError("palindromicity characterizes reflexivity for even rank only")
    if any(f.rhs < 1 for f in p.facets):
        raise ValueError("origin must be strictly interior")
    return is_reflexive(p) == palindromic(to_hr_vector(p, r))


# ---------------------------------------------------------------------------
# conjecture scanners

@dataclass(frozen=True)
class ScanViolation:
    trial: int
    vertices: tuple
    index: int
    classification: str
    witness: tuple[Fraction, ...] | None
    witness_value: Fraction | None

    def to_json(self) -> dict:
        return {
            "trial": self.trial,
            "vertices": [list(v) for v in self.vertices],
            "index": self.index,
            "classification": self.classification,
            "witness": None if self.witness is None
            else [rational_to_str(x) for x in self.witness],
            "witness_value": None if self.witness_value is None
            else rational_to_str(self.witness_value),
        }


@dataclass(frozen=True)
class ScanReport:
    """Deterministic record of a conjecture scan.

    Violations are findings, not failures; rerunning with the same seed
    reproduces the canonical JSON bit-exactly (wall time is kept out of it).
    """

    which: str
    dimension: int
    trials: int
    coord_bound: int
    num_gens: int
    seed: int
    completed: int
    skipped_no_interior: int
    violations: tuple[ScanViolation, ...]
    violations_last_index: tuple[ScanViolation, ...]
    runtime_seconds: float | None = field(default=None, compare=False)

    def to_json(self) -> dict:
        return {
            "which": self.which,
            "dimension": self.dimension,
            "trials": self.trials,
            "coord_bound": self.coord_bound,
            "num_gens": self.num_gens,
            "seed": self.seed,
            "completed": self.completed,
            "skipped_no_interior": self.skipped_no_interior,
            "violations": [v.to_json() for v in self.violations],
            "violations_last_index": [v.to_json() for v in self.violations_last_index],
        }


def trial_seed(seed: int, trial: int) -> int:
    """Stable per-trial stream seed (independent of platform hashing)."""
    digest = hashlib.sha256(f"{seed}:{trial}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def conjecture_scan(d: int, trials: int, coord_bound: int, num_gens: int,
                    seed: int, which: str = "psd") -> ScanReport:
    """Scan random polytopes for non-PSD h-matrix behaviour.

    ``which='psd'`` classifies every rank-2 h-vector entry; ``which='hibi'``
    classifies the differences h_i - h_1 for polytopes with an interior
    lattice point (others are skipped and counted), with the top index
    reported separately since the conjectured range stops below it.
    Any non-PSD classification is recorded with its witness direction.
    """
    if which not in ("psd", "hibi"):
        raise ValueError("scan kind must be 'psd' or 'hibi'")
    start = time.monotonic()
    violations: list[ScanViolation] = []
    last_index: list[ScanViolation] = []
    completed = 0
    skipped = 0
    for trial in range(trials):
        p = random_lattice_polytope(d, coord_bound, num_gens, trial_seed(seed, trial))
        if which == "hibi" and not interior_lattice_points(p, 1):
            skipped += 1
            continue
        h = to_hr_vector(p, 2)
        if which == "psd":
            checks = [(i, h[i]) for i in range(len(h))]
            extra = []
        else:
            base = h[1]
            checks = [(i, h[i] - base) for i in range(1, d + 2)]
            extra = [(d + 2, h[d + 2] - base)]
        for i, tensor in checks:
            rep = classify_definiteness(tensor)
            if not rep.is_psd:
                violations.append(ScanViolation(trial, p.vertices, i,
                                                rep.classification, rep.witness,
                                                rep.witness_value))
        for i, tensor in extra:
            rep = classify_definiteness(tensor)
            if not rep.is_psd:
                last_index.append(ScanViolation(trial, p.vertices, i,
                                                rep.classification, rep.witness,
                                                rep.witness_value))
        completed += 1
    return ScanReport(which=which, dimension=d, trials=trials,
                      coord_bound=coord_bound, num_gens=num_gens, seed=seed,
                      completed=completed, skipped_no_interior=skipped,
                      violations=tuple(violations),
                      violations_last_index=tuple(last_index),
                      runtime_seconds=time.monotonic() - start)
