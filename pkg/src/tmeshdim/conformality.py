"""Assembly of the smoothing cofactor conformality system.

Crossing an edge of the mesh, a spline jumps by a polynomial multiple of
``(x - x_i)^(alpha+1)`` (vertical edges) or ``(y - y_j)^(beta+1)``
(horizontal edges).  Around each vertex of an interior l-edge those jumps
are tied together by a vertex cofactor: a polynomial of bi-degree
``(d1-alpha-1, d2-beta-1)`` written here in the basis centred at the vertex
itself.  Telescoping the edge jumps from one end of an interior l-edge to
the other gives, per horizontal l-edge,

    sum_t  cof_t(x, y) * (x - x_t)^(alpha+1)  =  0   identically,

because beyond either endpoint there is no edge left to absorb a jump.
Cross-cuts and rays impose nothing: their run reaches the domain boundary,
where the outermost jump is unconstrained.  This module expands those
telescoped identities into one exact-rational matrix whose columns are the
cofactor coefficients of the non-free interior vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import DuplicateKnots, NotInteriorLEdge
from .mesh import Point, SplineSpaceSpec, TMesh, require_valid
from .rational_linalg import RationalMatrix
from .topology import HORIZONTAL, INTERIOR, LEdge, extract_topology, mesh_counts

RowKey = tuple[int, int, int]  # (interior l-edge position, slice, power)
ColKey = tuple[Point, int, int]  # (vertex, p, q)


@dataclass(frozen=True)
class ConformalityMatrix:
    entries: tuple[tuple[Fraction, ...], ...]
    row_index: tuple[RowKey, ...]
    col_index: tuple[ColKey, ...]
    ledges: tuple[LEdge, ...]

    @property
    def rows(self) -> int:
        return len(self.row_index)

    @property
    def cols(self) -> int:
        return len(self.col_index)

    def matrix(self) -> RationalMatrix:
        return RationalMatrix(self.entries, self.rows, self.cols)


def ledge_nullity_formula(m: int, spec: SplineSpaceSpec, orientation: str) -> int:
    """Kernel dimension of a single l-edge block with ``m`` distinct knots.

    Each slice of a horizontal block is a generalized Vandermonde system
    with ``d1 + 1`` rows and ``m (d1 - alpha)`` columns of full rank, so the
    block-wide kernel is ``(d2 - beta) * max(0, m (d1 - alpha) - d1 - 1)``;
    the vertical case swaps the roles of the two axes.
    """
    if m < 2:
        raise ValueError("an l-edge has at least two vertices")
    if orientation == HORIZONTAL:
        return (spec.d2 - spec.beta) * max(0, m * (spec.d1 - spec.alpha) - spec.d1 - 1)
    return (spec.d1 - spec.alpha) * max(0, m * (spec.d2 - spec.beta) - spec.d2 - 1)


def ledge_block(ledge: LEdge, spec: SplineSpaceSpec, knots) -> list[list[Fraction]]:
    """Constraint block of one interior l-edge.

    ``knots`` is the knot array of the axis the l-edge runs along (x knots
    for a horizontal l-edge).  Columns are grouped per vertex, then by the
    cofactor powers ``(p, q)`` with q fastest.  Rows are grouped by slice
    (the cofactor power along the fixed axis), then by the monomial power
    of the telescoped identity.  Entries in slice s are nonzero only for
    columns whose fixed-axis power equals s, so the block is one univariate
    coefficient matrix repeated once per slice.
    """
    if ledge.kind != INTERIOR:
        raise NotInteriorLEdge(f"{ledge.kind} l-edge generates no constraint block")
    values = [Fraction(knots[i]) for i in ledge.span_indices]
    if len(set(values)) != len(values):
        raise DuplicateKnots(f"knot values along the l-edge repeat: {values}")

    if ledge.orientation == HORIZONTAL:
        degree, smooth = spec.d1, spec.alpha
        slices = spec.d2 - spec.beta
    else:
        degree, smooth = spec.d2, spec.beta
        slices = spec.d1 - spec.alpha
    var_powers = degree - smooth  # cofactor powers along the varying axis

    # One slice of the constraint: coefficient r of the running variable in
    # sum_t cof_t * (var - value_t)^(smooth+1).
    univariate = [
        [
            Fraction(comb(p + smooth + 1, r)) * (-value) ** (p + smooth + 1 - r)
            if r <= p + smooth + 1
            else Fraction(0)
            for value in values
            for p in range(var_powers)
        ]
        for r in range(degree + 1)
    ]

    block: list[list[Fraction]] = []
    zero = Fraction(0)
    m = len(values)
    for s in range(slices):
        for r in range(degree + 1):
            row = [zero] * (m * var_powers * slices)
            for t in range(m):
                for p in range(var_powers):
                    entry = univariate[r][t * var_powers + p]
                    if entry:
                        row[_local_col(ledge.orientation, spec, t, p, s)] = entry
            block.append(row)
    return block


def _local_col(orientation: str, spec: SplineSpaceSpec, t: int, var_power: int, s: int) -> int:
    """Column of vertex t's cofactor coefficient inside an l-edge block.

    The per-vertex layout is always ``p * (d2 - beta) + q`` where p is the
    x power and q the y power of the vertex-centred cofactor, matching the
    global column layout.  For a horizontal l-edge the varying power is p
    and the slice is q; for a vertical one the roles swap.
    """
    q_count = spec.d2 - spec.beta
    per_vertex = (spec.d1 - spec.alpha) * q_count
    if orientation == HORIZONTAL:
        p, q = var_power, s
    else:
        p, q = s, var_power
    return t * per_vertex + p * q_count + q


def assemble_conformality(mesh: TMesh, spec: SplineSpaceSpec) -> ConformalityMatrix:
    """Stack every interior l-edge's block over shared vertex columns.

    Vertices are shared between one horizontal and one vertical interior
    l-edge at most, and both blocks address the same vertex-centred
    cofactor coefficients, so stacking is a pure scatter by column.  Free
    vertices contribute no columns; cross-cuts and rays contribute no rows.
    """
    require_valid(mesh)
    topo = extract_topology(mesh)
    ledges = tuple(sorted(topo.interior_ledges, key=LEdge.sort_key))

    col_points = sorted({p for e in ledges for p in e.vertices})
    q_count = spec.d2 - spec.beta
    per_vertex = (spec.d1 - spec.alpha) * q_count
    col_base = {point: i * per_vertex for i, point in enumerate(col_points)}
    col_index = tuple(
        (point, p, q)
        for point in col_points
        for p in range(spec.d1 - spec.alpha)
        for q in range(q_count)
    )

    rows: list[tuple[Fraction, ...]] = []
    row_index: list[RowKey] = []
    total_cols = len(col_index)
    zero = Fraction(0)
    for position, ledge in enumerate(ledges):
        knots = mesh.x_knots if ledge.orientation == HORIZONTAL else mesh.y_knots
        block = ledge_block(ledge, spec, knots)
        degree = spec.d1 if ledge.orientation == HORIZONTAL else spec.d2
        slices = q_count if ledge.orientation == HORIZONTAL else spec.d1 - spec.alpha
        bases = [col_base[point] for point in ledge.vertices]
        local = 0
        for s in range(slices):
            for r in range(degree + 1):
                row = [zero] * total_cols
                block_row = block[local]
                for t, base in enumerate(bases):
                    for offset in range(per_vertex):
                        value = block_row[t * per_vertex + offset]
                        if value:
                            row[base + offset] = value
                rows.append(tuple(row))
                row_index.append((position, s, r))
                local += 1

    counts = mesh_counts(topo, spec)
    assert len(rows) == counts.conformality_rows
    assert total_cols == counts.cofactor_columns
    return ConformalityMatrix(tuple(rows), tuple(row_index), col_index, ledges)
