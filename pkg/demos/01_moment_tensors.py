"""Discrete moment tensors and their dilation polynomials.

The rank-r moment of a lattice polytope sums the r-fold symmetric outer
powers of its lattice points.  Dilating the polytope by n = 0, 1, 2, ...
makes that sum a polynomial in n with tensor coefficients; this script
computes one for a triangle whose quadratic coefficient turns out to be
negative definite, which cannot happen for plain point counts.
"""
from ehrtensor import (classify_definiteness, convex_hull, discrete_moment,
                       ehrhart_tensor_polynomial, lattice_points, moment_tensor)


def show(label, tensor):
    if tensor.rank == 0:
        print(f"{label}: {tensor.as_scalar()}")
        return
    rows = tensor.to_matrix() if tensor.rank == 2 else (tensor.entries,)
    print(f"{label}:")
    for row in rows:
        print("   ", "  ".join(str(x) for x in row))


triangle = convex_hull([(0, 1), (-1, -7), (1, -4)])
print("triangle vertices:", triangle.vertices)
print("lattice points:", lattice_points(triangle, 1))

print("\nrank-2 moments of the first dilates")
for n in range(4):
    show(f"L^2({n}P)", discrete_moment(triangle, 2, n))

print("\ninterpolated dilation polynomial (rank 2)")
poly = ehrhart_tensor_polynomial(triangle, 2)
for k, coeff in enumerate(poly.coeffs):
    show(f"coefficient of n^{k}", coeff)
    if not coeff.is_zero:
        print("    definiteness:", classify_definiteness(coeff).classification)

print("\nthe leading coefficient is the exact volume moment:")
show("integral of x^2 over P", moment_tensor(triangle, 2))
print("matches leading coefficient:", moment_tensor(triangle, 2) == poly.coeffs[-1])
