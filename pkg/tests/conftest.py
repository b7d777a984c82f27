"""Shared helpers for the test suite.

Plain functions rather than fixtures where possible, so individual tests
can call them with their own parameters.
"""

from __future__ import annotations

import sys
from fractions import Fraction
from itertools import combinations, permutations

from tmeshdim import (
    SplineSpaceSpec,
    TMesh,
    Topology,
    mesh_from_segments,
    new_vertex_vector,
    thresholds,
)
from tmeshdim.topology import HORIZONTAL


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Repeat the acceptance pass/fail lines where they cannot be missed."""
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


def all_specs(max_degree: int) -> list[SplineSpaceSpec]:
    """Every spline space spec with both degrees up to ``max_degree``."""
    return [
        SplineSpaceSpec(d1, d2, a, b)
        for d1 in range(1, max_degree + 1)
        for d2 in range(1, max_degree + 1)
        for a in range(d1)
        for b in range(d2)
    ]


def single_ledge_mesh(m: int, orientation: str = "h") -> TMesh:
    """Mesh with exactly one interior l-edge carrying ``m`` vertices.

    A horizontal l-edge spans between two full-height crosscuts; the
    ``m - 2`` interior vertices come from rays reaching up from the
    boundary.  The vertical variant is the transpose.
    """
    assert m >= 2
    long_axis = [Fraction(k) for k in range(m + 2)]
    short_axis = [Fraction(k) for k in range(4)]
    if orientation == HORIZONTAL:
        runs = [("v", 1, 0, 3), ("v", m, 0, 3), ("h", 1, 1, m)]
        runs += [("v", t, 0, 1) for t in range(2, m)]
        return mesh_from_segments(long_axis, short_axis, runs)
    runs = [("h", 1, 0, 3), ("h", m, 0, 3), ("v", 1, 1, m)]
    runs += [("h", t, 0, 1) for t in range(2, m)]
    return mesh_from_segments(short_axis, long_axis, runs)


def order_meets_thresholds(
    topo: Topology, spec: SplineSpaceSpec, order
) -> bool:
    n_h, n_v = thresholds(spec)
    vector = new_vertex_vector(topo, order)
    return all(
        fresh >= (n_h if ledge.orientation == HORIZONTAL else n_v)
        for ledge, fresh in zip(order, vector)
    )


def exhaustive_diagonalizable(topo: Topology, spec: SplineSpaceSpec):
    """Reference decision for diagonalizability: try every l-edge order."""
    ledges = topo.interior_ledges
    if not ledges:
        return ()
    for candidate in permutations(ledges):
        if order_meets_thresholds(topo, spec, candidate):
            return candidate
    return None


def determinant(entries) -> Fraction:
    """Cofactor-expansion determinant of a square Fraction matrix."""
    n = len(entries)
    if n == 1:
        return entries[0][0]
    total = Fraction(0)
    for j in range(n):
        if entries[0][j]:
            minor = [row[:j] + row[j + 1 :] for row in entries[1:]]
            total += (-1) ** j * entries[0][j] * determinant(minor)
    return total


def rank_by_minors(entries, rows: int, cols: int) -> int:
    """Reference rank: the largest k with some nonzero k-by-k minor."""
    for k in range(min(rows, cols), 0, -1):
        for row_pick in combinations(range(rows), k):
            for col_pick in combinations(range(cols), k):
                square = [
                    [entries[r][c] for c in col_pick] for r in row_pick
                ]
                if determinant(square) != 0:
                    return k
    return 0
