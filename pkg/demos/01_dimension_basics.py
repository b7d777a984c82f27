"""
Dimensions of polynomial spline spaces on small meshes
======================================================

A walk through the core objects: build a mesh, pick a spline space,
read the dimension report.
"""

from tmeshdim import SplineSpaceSpec, dim_general, serialize_tmesh
from tmeshdim.meshes import tensor_mesh, two_crosscut_mesh

# A 3 x 2 grid of rectangles.  Degree (2, 2), smoothness C^1 in both
# directions: the classical bicubic-free case where the count is a
# product of two univariate counts.
grid = tensor_mesh(3, 2)
spec = SplineSpaceSpec(d1=2, d2=2, alpha=1, beta=1)
report = dim_general(grid, spec)
print("tensor grid dimension:", report.dimension)
print("crosscuts:", report.counts.h_crosscuts, "horizontal,",
      report.counts.v_crosscuts, "vertical")

# Univariate sanity check: (d + 1 + cuts * (d - alpha)) per axis.
per_x = spec.d1 + 1 + report.counts.v_crosscuts * (spec.d1 - spec.alpha)
per_y = spec.d2 + 1 + report.counts.h_crosscuts * (spec.d2 - spec.beta)
print("product formula:", per_x * per_y)

# Now a mesh with a T-junction: two full vertical cuts and one short
# horizontal segment between them.  For bicubic C^2 the short segment
# carries too few vertices to constrain anything; the reducer deletes
# it before assembling the conformality matrix.
mesh = two_crosscut_mesh()
bicubic = SplineSpaceSpec(d1=3, d2=3, alpha=2, beta=2)
report = dim_general(mesh, bicubic)
print()
print("T-junction mesh, bicubic C^2")
print("faces before reduction:", len(mesh.faces))
print("faces after reduction:", len(report.reduced_mesh.faces))
print("dimension:", report.dimension)

# The mesh file format round-trips through plain JSON.
text = serialize_tmesh(mesh)
print()
print("serialized mesh:")
print(text)
