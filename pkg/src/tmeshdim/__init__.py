"""Dimension analysis of bivariate polynomial spline spaces over T-meshes.

The package computes the exact dimension of the space of piecewise
polynomials of bidegree (d1, d2) with smoothness (alpha, beta) over a
T-mesh, decides whether that dimension is independent of where the knot
lines sit, and flags the unstable meshes where it is not.  All arithmetic
is exact over the rationals.
"""

from .analysis import (
    STABLE,
    UNSTABLE,
    DimensionReport,
    StabilityReport,
    check_mono_vertex_condition,
    dim_diagonalizable_formula,
    dim_general,
    dim_reduced_regularity,
    generic_rank,
    is_diagonalizable,
    new_vertex_vector,
    sample_knot_values,
    stability_verdict,
)
from .conformality import (
    ConformalityMatrix,
    assemble_conformality,
    ledge_block,
    ledge_nullity_formula,
)
from .errors import (
    DuplicateKnots,
    InvalidMeshError,
    MeshFormatError,
    NotAPermutation,
    NotInteriorLEdge,
    PreconditionViolated,
)
from .generate import mesh_from_segments, pinwheel_counterexample, random_tmesh
from .mesh import (
    SplineSpaceSpec,
    TMesh,
    ValidationReport,
    parse_tmesh,
    require_valid,
    serialize_tmesh,
    thresholds,
    validate,
    with_knot_values,
)
from .oracle import (
    SmoothnessSystem,
    build_smoothness_system,
    dim_direct,
    vertex_cofactors_of_solution,
)
from .rational_linalg import (
    RationalMatrix,
    dump_matrix,
    load_matrix,
    null_space_basis,
    nullity,
    rank,
)
from .topology import (
    LEdge,
    MeshCounts,
    Topology,
    extract_topology,
    is_vanished,
    mesh_counts,
    reduce_vanished,
)

__version__ = "0.1.0"

__all__ = [
    "STABLE",
    "UNSTABLE",
    "ConformalityMatrix",
    "DimensionReport",
    "DuplicateKnots",
    "InvalidMeshError",
    "LEdge",
    "MeshCounts",
    "MeshFormatError",
    "NotAPermutation",
    "NotInteriorLEdge",
    "PreconditionViolated",
    "RationalMatrix",
    "SmoothnessSystem",
    "SplineSpaceSpec",
    "StabilityReport",
    "TMesh",
    "Topology",
    "ValidationReport",
    "assemble_conformality",
    "build_smoothness_system",
    "check_mono_vertex_condition",
    "dim_diagonalizable_formula",
    "dim_direct",
    "dim_general",
    "dim_reduced_regularity",
    "dump_matrix",
    "extract_topology",
    "generic_rank",
    "is_diagonalizable",
    "is_vanished",
    "ledge_block",
    "ledge_nullity_formula",
    "load_matrix",
    "mesh_counts",
    "mesh_from_segments",
    "new_vertex_vector",
    "null_space_basis",
    "nullity",
    "parse_tmesh",
    "pinwheel_counterexample",
    "random_tmesh",
    "rank",
    "reduce_vanished",
    "require_valid",
    "sample_knot_values",
    "serialize_tmesh",
    "stability_verdict",
    "thresholds",
    "validate",
    "vertex_cofactors_of_solution",
    "with_knot_values",
]
