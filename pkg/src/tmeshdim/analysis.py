"""Spline space dimension, diagonalizability, and knot stability.

The dimension splits into a combinatorial part (faces, crosscuts, free
vertices) plus the kernel dimension of the conformality matrix, which is
the only place knot values can enter.  A mesh is called diagonalizable
when its interior l-edges admit an order in which each one brings enough
vertices not seen earlier; the matrix then has full row rank at every
knot assignment and the dimension is knot independent.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .conformality import assemble_conformality
from .errors import NotAPermutation, PreconditionViolated
from .mesh import (
    Point,
    SplineSpaceSpec,
    TMesh,
    require_valid,
    thresholds,
    with_knot_values,
)
from .rational_linalg import rank
from .topology import (
    HORIZONTAL,
    LEdge,
    MeshCounts,
    Topology,
    extract_topology,
    is_vanished,
    mesh_counts,
    reduce_vanished,
)

STABLE = "stable"
UNSTABLE = "unstable"


@dataclass(frozen=True)
class StabilityReport:
    rank_at_knots: int
    generic_rank: int
    trials: int
    seed: int

    @property
    def verdict(self) -> str:
        return UNSTABLE if self.rank_at_knots < self.generic_rank else STABLE


@dataclass(frozen=True)
class DimensionReport:
    spec: SplineSpaceSpec
    counts: MeshCounts
    rank: int
    nullity: int
    dimension: int
    diagonalizable_order: tuple[LEdge, ...] | None
    stability: StabilityReport | None
    reduced_mesh: TMesh


def dim_diagonalizable_formula(counts: MeshCounts, spec: SplineSpaceSpec) -> int:
    """Closed-form dimension, valid when the mesh is diagonalizable."""
    d1, d2, a, b = spec.d1, spec.d2, spec.alpha, spec.beta
    return (
        (d1 + 1) * (d2 + 1)
        + (counts.h_crosscuts - counts.h_interior_ledges) * (d1 + 1) * (d2 - b)
        + (counts.v_crosscuts - counts.v_interior_ledges) * (d2 + 1) * (d1 - a)
        + counts.interior_vertices * (d1 - a) * (d2 - b)
    )


def dim_reduced_regularity(counts: MeshCounts, spec: SplineSpaceSpec) -> int:
    """Inclusion-exclusion dimension count over faces, interior edges and
    interior vertices.  Only valid when the degree is large against the
    smoothness in both directions."""
    d1, d2, a, b = spec.d1, spec.d2, spec.alpha, spec.beta
    if d1 < 2 * a + 1 or d2 < 2 * b + 1:
        raise PreconditionViolated(
            "face/edge/vertex counting needs d1 >= 2*alpha + 1 and "
            f"d2 >= 2*beta + 1, got {spec}"
        )
    return (
        counts.faces * (d1 + 1) * (d2 + 1)
        - counts.interior_h_edges * (d1 + 1) * (b + 1)
        - counts.interior_v_edges * (d2 + 1) * (a + 1)
        + counts.interior_vertices * (a + 1) * (b + 1)
    )


def new_vertex_vector(topo: Topology, order) -> tuple[int, ...]:
    """How many vertices each l-edge contributes that no earlier l-edge in
    ``order`` already covers.  ``order`` must be a permutation of the
    interior l-edges."""
    order = tuple(order)
    expected = topo.interior_ledges
    if len(order) != len(expected) or set(order) != set(expected):
        raise NotAPermutation(
            "order must list every interior l-edge exactly once"
        )
    seen: set[Point] = set()
    counts = []
    for ledge in order:
        counts.append(sum(1 for v in ledge.vertices if v not in seen))
        seen.update(ledge.vertices)
    return tuple(counts)


def _required(ledge: LEdge, spec: SplineSpaceSpec) -> int:
    n_h, n_v = thresholds(spec)
    return n_h if ledge.orientation == HORIZONTAL else n_v


def is_diagonalizable(
    topo: Topology, spec: SplineSpaceSpec
) -> tuple[LEdge, ...] | None:
    """An l-edge order in which every l-edge brings at least its threshold
    of new vertices, or None when no such order exists.

    Vanished l-edges can never meet their threshold, so they must be
    reduced away first; finding one raises PreconditionViolated.

    The order is built back to front.  Whatever l-edge an order puts
    last contributes only vertices on no other l-edge, so if some valid
    order exists, at least one remaining l-edge always has enough private
    vertices and the greedy choice cannot dead-end.
    """
    for ledge in topo.interior_ledges:
        if is_vanished(ledge, spec):
            raise PreconditionViolated(
                "reduce vanished l-edges before testing diagonalizability"
            )
    remaining = set(topo.interior_ledges)
    last_first: list[LEdge] = []
    while remaining:
        choice = None
        for ledge in sorted(remaining, key=LEdge.sort_key):
            covered_elsewhere = {
                v
                for other in remaining
                if other != ledge
                for v in other.vertices
            }
            private = sum(
                1 for v in ledge.vertices if v not in covered_elsewhere
            )
            if private >= _required(ledge, spec):
                choice = ledge
                break
        if choice is None:
            return None
        last_first.append(choice)
        remaining.remove(choice)
    order = tuple(reversed(last_first))
    vector = new_vertex_vector(topo, order)
    for ledge, fresh in zip(order, vector):
        assert fresh >= _required(ledge, spec), (
            "greedy order must meet the threshold at every position"
        )
    return order


def check_mono_vertex_condition(topo: Topology, spec: SplineSpaceSpec) -> bool:
    """True when every interior l-edge has at least its threshold minus one
    mono vertices strictly between its endpoints.  A sufficient (not
    necessary) condition for diagonalizability that needs no ordering
    search."""
    for ledge in topo.interior_ledges:
        needed = _required(ledge, spec) - 1
        mono = sum(
            1 for v in ledge.vertices[1:-1] if topo.is_mono_vertex(v)
        )
        if mono < needed:
            return False
    return True


def sample_knot_values(count: int, rng: random.Random) -> list[Fraction]:
    """Sorted distinct random rationals, suitable as a knot vector."""
    values: set[Fraction] = set()
    while len(values) < count:
        values.add(Fraction(rng.randint(1, 10**6), rng.randint(1, 10**3)))
    return sorted(values)


def generic_rank(
    mesh: TMesh, spec: SplineSpaceSpec, trials: int = 5, seed: int = 0
) -> int:
    """Largest conformality rank seen at the given knots and across
    ``trials`` random re-assignments of the knot values.

    The rank can only drop on a measure-zero set of knot choices, so the
    maximum over a few random samples is the generic value with
    overwhelming probability (and it never undershoots the rank at the
    given knots).
    """
    require_valid(mesh)
    best = rank(assemble_conformality(mesh, spec).matrix())
    for trial in range(trials):
        rng = random.Random(seed + trial)
        xs = sample_knot_values(len(mesh.x_knots), rng)
        ys = sample_knot_values(len(mesh.y_knots), rng)
        resampled = with_knot_values(mesh, xs, ys)
        best = max(best, rank(assemble_conformality(resampled, spec).matrix()))
    return best


def stability_verdict(
    mesh: TMesh, spec: SplineSpaceSpec, trials: int = 5, seed: int = 0
) -> StabilityReport:
    """Compare the conformality rank at the given knots against the
    generic rank.  A strictly smaller rank means the dimension jumps up
    at this particular knot placement, so downstream code cannot treat
    the space as a stable one."""
    at_knots = rank(assemble_conformality(mesh, spec).matrix())
    generic = generic_rank(mesh, spec, trials, seed)
    return StabilityReport(at_knots, generic, trials, seed)


def dim_general(
    mesh: TMesh,
    spec: SplineSpaceSpec,
    trials: int | None = None,
    seed: int = 0,
) -> DimensionReport:
    """Dimension of the spline space on ``mesh``, with the supporting
    counts, the conformality kernel, and (when ``trials`` is given) a
    knot-stability check.

    Vanished l-edges are reduced away first; the remaining conformality
    matrix is built and its exact nullity enters the count.  When the
    reduced mesh is diagonalizable the result is cross-checked against
    the closed-form dimension.
    """
    reduced = reduce_vanished(mesh, spec)
    topo = extract_topology(reduced)
    counts = mesh_counts(topo, spec)
    system = assemble_conformality(reduced, spec)
    matrix_rank = rank(system.matrix())
    kernel = counts.cofactor_columns - matrix_rank

    d1, d2, a, b = spec.d1, spec.d2, spec.alpha, spec.beta
    dimension = (
        (d1 + 1) * (d2 + 1)
        + counts.h_crosscuts * (d1 + 1) * (d2 - b)
        + counts.v_crosscuts * (d2 + 1) * (d1 - a)
        + counts.free_vertices * (d1 - a) * (d2 - b)
        + kernel
    )

    try:
        order = is_diagonalizable(topo, spec)
    except PreconditionViolated:
        # A vanished l-edge survived reduction because deleting it would
        # not leave a rectangle tiling.  The dimension above is still
        # exact; only the ordering criterion is unavailable.
        order = None
    if order is not None:
        assert dimension == dim_diagonalizable_formula(counts, spec), (
            "diagonalizable mesh disagrees with the closed-form dimension"
        )

    stability = (
        stability_verdict(reduced, spec, trials, seed)
        if trials is not None
        else None
    )
    return DimensionReport(
        spec=spec,
        counts=counts,
        rank=matrix_rank,
        nullity=kernel,
        dimension=dimension,
        diagonalizable_order=order,
        stability=stability,
        reduced_mesh=reduced,
    )
