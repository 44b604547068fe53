"""Closed formulas for polygons from a unimodular triangulation.

Triangulating a lattice polygon on all its lattice points into empty
triangles turns h-vectors and dilation polynomials into explicit sums over
vertices and edges of the triangulation graph: no interpolation needed.
The results are triangulation-independent, which the script checks by
triangulating twice with different insertion orders.
"""
from ehrtensor import (convex_hull, edge_stats, ehrhart_matrix_pick,
                       ehrhart_tensor_polynomial, ehrhart_vector_pick, h1_pick,
                       h2_pick, to_hr_vector, unimodular_triangulation)

polygon = convex_hull([(0, 0), (4, 1), (3, 4), (-1, 2)])
tri = unimodular_triangulation(polygon)
print(f"polygon with {len(tri.points)} lattice points,",
      f"{len(tri.triangles)} unimodular triangles")

stats = edge_stats(tri)
print("interior points:", len(stats.interior_points),
      " boundary points:", len(stats.boundary_points))
print("interior edges:", len(stats.interior_edges),
      " boundary edges:", len(stats.boundary_edges))

print("\nvector h-vector from the graph sums:")
for i, e in enumerate(h1_pick(tri).entries):
    print(f"  h_{i} =", [str(x) for x in e.entries])
print("matches interpolation:", h1_pick(tri) == to_hr_vector(polygon, 1))

print("\nmatrix dilation polynomial from the graph sums:")
poly = ehrhart_matrix_pick(tri)
for k, c in enumerate(poly.coeffs):
    print(f"  n^{k}:", [[str(x) for x in row] for row in c.to_matrix()])
print("matches interpolation:", poly == ehrhart_tensor_polynomial(polygon, 2))

print("\ntriangulation independence:")
other = unimodular_triangulation(polygon, order="lex_down")
print("  different triangle count?", tri.triangles != other.triangles)
print("  same h-vectors?", h2_pick(tri) == h2_pick(other),
      ehrhart_vector_pick(tri) == ehrhart_vector_pick(other))
