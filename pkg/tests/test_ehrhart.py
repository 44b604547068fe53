"""Moment polynomials, h-vectors, reciprocity, coefficient identities."""
import math
from fractions import Fraction

import pytest

import ehrtensor as et
from ehrtensor.ehrhart import translation_covariance_rhs

from conftest import NAMED_POLYGONS, oracle_moment, oracle_polygon_points


def mat(rows):
    return et.SymTensor.from_matrix(rows)


def vec(entries):
    return et.SymTensor.from_vector(entries)


F = Fraction


def test_discrete_moment_unit_triangle_vector():
    p = et.convex_hull(NAMED_POLYGONS["unit_triangle"])
    assert et.discrete_moment(p, 1, 1) == vec((1, 1))


def test_discrete_moment_matches_oracle_enumeration():
    p = et.convex_hull(NAMED_POLYGONS["neg_def_triangle"])
    pts = oracle_polygon_points(p.vertices, 1)
    assert et.discrete_moment(p, 2, 1) == oracle_moment(pts, 2)
    assert et.discrete_moment(p, 2, 1) == mat([[2, 3], [3, 121]])


def test_discrete_moment_square_count():
    p = et.convex_hull(NAMED_POLYGONS["unit_square"])
    assert et.discrete_moment(p, 0, 2).as_scalar() == 9


def test_discrete_moment_dilate_zero():
    p = et.convex_hull(NAMED_POLYGONS["unit_square"])
    assert et.discrete_moment(p, 2, 0).is_zero
    assert et.discrete_moment(p, 0, 0).as_scalar() == 1


def test_interior_moment_examples():
    sq = et.convex_hull(NAMED_POLYGONS["unit_square"])
    assert et.discrete_moment_interior(sq, 2, 1).is_zero
    assert et.discrete_moment_interior(sq, 2, 2) == mat([[1, 1], [1, 1]])
    sym = et.convex_hull(NAMED_POLYGONS["sym_square"])
    assert et.discrete_moment_interior(sym, 2, 1).is_zero


def test_matrix_polynomial_negative_definite_triangle():
    p = et.convex_hull(NAMED_POLYGONS["neg_def_triangle"])
    poly = et.ehrhart_tensor_polynomial(p, 2)
    assert poly.coeffs[0].is_zero
    assert poly.coeffs[1] == mat([[F(1, 2), F(3, 4)], [F(3, 4), F(49, 6)]])
    assert poly.coeffs[2] == mat([[F(-1, 12), F(-1, 8)], [F(-1, 8), F(-23, 12)]])
    assert poly.coeffs[3] == mat([[F(1, 2), F(3, 4)], [F(3, 4), F(149, 6)]])
    assert poly.coeffs[4] == mat([[F(13, 12), F(13, 8)], [F(13, 8), F(1079, 12)]])


def test_count_polynomial_unit_square():
    p = et.convex_hull(NAMED_POLYGONS["unit_square"])
    poly = et.ehrhart_tensor_polynomial(p, 0)
    assert [c.as_scalar() for c in poly.coeffs] == [1, 2, 1]


def test_count_polynomial_unit_triangle_from_counts():
    # brute-force counts at n = 0, 1, 2 pin the quadratic exactly
    p = et.convex_hull(NAMED_POLYGONS["unit_triangle"])
    counts = [len(oracle_polygon_points(p.vertices, n)) for n in (0, 1, 2)]
    assert counts == [1, 3, 6]
    poly = et.ehrhart_tensor_polynomial(p, 0)
    assert [c.as_scalar() for c in poly.coeffs] == [1, F(3, 2), F(1, 2)]


def test_polynomial_predicts_held_out_dilations(corpus_polygons):
    for name, p in corpus_polygons.items():
        for r in (0, 1, 2):
            poly = et.ehrhart_tensor_polynomial(p, r)
            m = p.dim + r
            for n in (m + 1, m + 2):
                assert poly.evaluate(n) == et.discrete_moment(p, r, n), (name, r, n)


def test_hr_vector_unit_triangle_rank2():
    p = et.convex_hull(NAMED_POLYGONS["unit_triangle"])
    h = et.to_hr_vector(p, 2)
    assert [e for e in h.entries] == [
        et.SymTensor.zero(2, 2), mat([[1, 0], [0, 1]]), mat([[1, 1], [1, 1]]),
        et.SymTensor.zero(2, 2), et.SymTensor.zero(2, 2)]


def test_hr_vector_unit_triangle_rank0():
    p = et.convex_hull(NAMED_POLYGONS["unit_triangle"])
    h = et.to_hr_vector(p, 0)
    assert [e.as_scalar() for e in h.entries] == [1, 0, 0]


def test_hr_vector_entry0_and_entry1(corpus_polygons):
    for p in corpus_polygons.values():
        for r in (1, 2):
            h = et.to_hr_vector(p, r)
            assert h[0].is_zero
            assert h[1] == et.discrete_moment(p, r, 1)


def test_hr_vector_top_entry_is_interior_moment(corpus_polygons):
    for p in corpus_polygons.values():
        for r in (0, 1, 2):
            h = et.to_hr_vector(p, r)
            assert h[len(h) - 1] == et.discrete_moment_interior(p, r, 1)


def test_hr_vector_binomial_expansion_round_trip(corpus_polygons):
    for p in corpus_polygons.values():
        for r in (0, 1, 2):
            h = et.to_hr_vector(p, r)
            assert et.hr_vector_to_polynomial(h) == et.ehrhart_tensor_polynomial(p, r)


def test_reciprocity_examples():
    sq = et.convex_hull(NAMED_POLYGONS["unit_square"])
    assert et.reciprocity_check(sq, 0, 1)
    assert et.reciprocity_check(sq, 2, 2)
    tri = et.convex_hull(NAMED_POLYGONS["neg_def_triangle"])
    for n in (1, 2, 3):
        assert et.reciprocity_check(tri, 2, n)


def test_reciprocity_corpus(corpus_polygons, random_3polytopes):
    for p in list(corpus_polygons.values()) + random_3polytopes:
        for r in (0, 1, 2):
            for n in (1, 2, 3):
                assert et.reciprocity_check(p, r, n)


def test_moment_tensor_examples():
    sq = et.convex_hull(NAMED_POLYGONS["unit_square"])
    assert et.moment_tensor(sq, 0).as_scalar() == 1
    assert et.moment_tensor(sq, 2) == mat([[F(1, 3), F(1, 4)], [F(1, 4), F(1, 3)]])
    tri = et.convex_hull(NAMED_POLYGONS["unit_triangle"])
    assert et.moment_tensor(tri, 2) == mat([[F(1, 12), F(1, 24)], [F(1, 24), F(1, 12)]])


def test_moment_tensor_rejects_high_rank():
    sq = et.convex_hull(NAMED_POLYGONS["unit_square"])
    with pytest.raises(ValueError):
        et.moment_tensor(sq, 3)


def test_leading_coefficient_is_moment(corpus_polygons, random_3polytopes):
    for p in list(corpus_polygons.values()) + random_3polytopes:
        for r in (0, 1, 2):
            poly = et.ehrhart_tensor_polynomial(p, r)
            assert poly.coeffs[-1] == et.moment_tensor(p, r)


def test_h_sum_is_factorial_times_moment(corpus_polygons, random_3polytopes):
    for p in list(corpus_polygons.values()) + random_3polytopes:
        for r in (0, 1, 2):
            h = et.to_hr_vector(p, r)
            total = et.SymTensor.zero(r, p.dim)
            for e in h.entries:
                total = total + e
            assert total == et.moment_tensor(p, r) * math.factorial(p.dim + r)


def test_second_coefficient_unit_square():
    sq = et.convex_hull(NAMED_POLYGONS["unit_square"])
    assert et.second_coefficient_facets(sq, 0).as_scalar() == 2
    assert et.second_coefficient_facets(sq, 2) == \
        mat([[F(5, 6), F(1, 2)], [F(1, 2), F(5, 6)]])
    tri = et.convex_hull(NAMED_POLYGONS["unit_triangle"])
    assert et.second_coefficient_facets(tri, 0).as_scalar() == F(3, 2)


def test_second_coefficient_matches_interpolation(corpus_polygons):
    for p in corpus_polygons.values():
        for r in (0, 1, 2):
            poly = et.ehrhart_tensor_polynomial(p, r)
            assert poly.coeffs[p.dim + r - 1] == et.second_coefficient_facets(p, r)


def test_translation_covariance(corpus_polygons):
    shifts = [(1, 0), (0, -2), (3, 5), (-2, -1)]
    for p in list(corpus_polygons.values())[:6]:
        for t in shifts:
            q = p.translate(t)
            for r in (0, 1, 2):
                assert et.discrete_moment(q, r, 1) == translation_covariance_rhs(p, r, 1, t)


def test_h_vector_unimodular_equivariance():
    # h-entries of a transformed polygon are pushforwards of the originals
    phi = [[2, 1], [1, 1]]
    p = et.convex_hull(NAMED_POLYGONS["skew_quad"])
    q = et.convex_hull([tuple(sum(phi[i][j] * v[j] for j in range(2))
                              for i in range(2)) for v in p.vertices])
    for r in (0, 1, 2):
        hp = et.to_hr_vector(p, r)
        hq = et.to_hr_vector(q, r)
        for a, b in zip(hp.entries, hq.entries):
            assert et.apply_linear_map(a, phi) == b


def test_segment_matrix_coefficients_are_psd():
    # 1-dimensional polytopes: every matrix coefficient is PSD and the
    # linear one is a sum of squared edge differences
    seg = et.convex_hull([(-2,), (3,)])
    poly = et.ehrhart_tensor_polynomial(seg, 2)
    for c in poly.coeffs[1:]:
        rep = et.classify_definiteness(c)
        assert rep.classification in ("zero", "positive_semidefinite",
                                      "positive_definite")
