"""
Two routes to every dimension
=============================

The conformality route computes dim S = base terms + nullity of the
l-edge constraint matrix.  The direct route writes one unknown per
polynomial coefficient per face, one equation per matched derivative
across each shared edge, and counts the solution space.  They share no
code beyond the mesh itself, so agreement on random meshes is a real
cross-check, not an echo.
"""

from tmeshdim import SplineSpaceSpec, dim_direct, dim_general, random_tmesh

specs = [
    SplineSpaceSpec(1, 1, 0, 0),
    SplineSpaceSpec(2, 2, 1, 1),
    SplineSpaceSpec(3, 3, 2, 2),
]

print("seed  faces  spec            kernel-route  direct-route")
agree = 0
total = 0
for seed in range(8):
    mesh = random_tmesh(seed, max_splits=6)
    for spec in specs:
        a = dim_general(mesh, spec).dimension
        b = dim_direct(mesh, spec)
        total += 1
        agree += a == b
        tag = f"({spec.d1},{spec.d2},{spec.alpha},{spec.beta})"
        print(f"{seed:4d}  {len(mesh.faces):5d}  {tag:14s}  {a:12d}  {b:12d}")

print()
print(f"agreement: {agree} of {total}")
assert agree == total
