"""
Orderings that certify a knot-independent dimension
===================================================
"""

# A mesh is diagonalizable when its interior l-edges can be ordered so
# that each one brings enough vertices not seen earlier.  The blocks of
# the conformality matrix then stack into a staircase with full row
# rank at every step, for any knot values, so the dimension cannot
# depend on the knots.

from tmeshdim import (
    SplineSpaceSpec,
    check_mono_vertex_condition,
    dim_general,
    extract_topology,
    is_diagonalizable,
    new_vertex_vector,
    thresholds,
)
from tmeshdim.meshes import four_ledge_mesh, small_pinwheel

spec = SplineSpaceSpec(d1=3, d2=3, alpha=2, beta=2)
n_h, n_v = thresholds(spec)
print("vertex thresholds: horizontal", n_h, "vertical", n_v)

mesh = four_ledge_mesh()
topo = extract_topology(mesh)
order = is_diagonalizable(topo, spec)
print()
print("four interior l-edges, each with 5 vertices")
print("greedy order found:", order is not None)
for ledge, fresh in zip(order, new_vertex_vector(topo, order)):
    print(f"  {ledge.orientation} line {ledge.line_index}: {fresh} new vertices")
print("dimension:", dim_general(mesh, spec).dimension)

# A simpler sufficient test counts mono-vertices, the vertices where an
# interior l-edge meets a crosscut or a ray.  It can fail while an
# ordering still exists, as it does here.
print("mono-vertex condition:", check_mono_vertex_condition(topo, spec))

# Contrast: a pinwheel of short l-edges.  Every l-edge leans on its
# neighbours for vertices, no one can go last, and no ordering exists
# for degree (3, 3) with C^1 smoothness.
ring = small_pinwheel()
ring_spec = SplineSpaceSpec(d1=3, d2=3, alpha=1, beta=1)
ring_topo = extract_topology(ring)
print()
print("pinwheel ring, spec (3,3) C^1:")
print("greedy order found:", is_diagonalizable(ring_topo, ring_spec) is not None)
report = dim_general(ring, ring_spec)
print("dimension (still exact, via the kernel):", report.dimension)
