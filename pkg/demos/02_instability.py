"""
Knot-dependent dimension
========================

The dimension of a spline space over a T-mesh can depend on where the
knot lines sit, not only on how they connect.  The pinwheel mesh below
is the classic witness: four interior l-edges chained into a cycle.
At equally spaced knots a hidden symmetry drops the rank of the
conformality matrix by one, so the dimension jumps up by one.
"""

from fractions import Fraction

from tmeshdim import (
    SplineSpaceSpec,
    assemble_conformality,
    dim_general,
    rank,
    stability_verdict,
    with_knot_values,
)
from tmeshdim.generate import pinwheel_counterexample

mesh = pinwheel_counterexample()
spec = SplineSpaceSpec(d1=3, d2=3, alpha=2, beta=2)

system = assemble_conformality(mesh, spec)
print("conformality matrix:", system.rows, "rows,", system.cols, "cols")
print("rank at integer knots:", rank(system.matrix()))
print("dimension:", dim_general(mesh, spec).dimension)

# Nudge a single interior knot line by 1/1000.  Exact rational
# arithmetic keeps the comparison honest: there is no tolerance hiding
# the difference.
nudged_x = list(mesh.x_knots)
nudged_x[3] += Fraction(1, 1000)
nudged = with_knot_values(mesh, nudged_x, mesh.y_knots)
print()
print("after nudging one knot by 1/1000:")
print("rank:", rank(assemble_conformality(nudged, spec).matrix()))
print("dimension:", dim_general(nudged, spec).dimension)

# The stability check automates this: it resamples knots a few times
# and compares the generic rank against the rank at the given knots.
report = stability_verdict(mesh, spec, trials=5, seed=0)
print()
print("stability verdict:", report.verdict)
print("rank at knots", report.rank_at_knots, "vs generic", report.generic_rank)
