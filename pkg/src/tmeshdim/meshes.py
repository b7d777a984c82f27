"""Small named meshes used throughout the tests and demos.

Each builder returns a fresh TMesh with simple integer knots; callers that
want other knot values can rewrite them with ``with_knot_values``.
"""

from __future__ import annotations

from fractions import Fraction

from .generate import mesh_from_segments
from .mesh import TMesh


def tensor_mesh(m: int, n: int) -> TMesh:
    """Full m-by-n grid of unit cells."""
    if m < 1 or n < 1:
        raise ValueError("tensor mesh needs at least one cell per axis")
    return TMesh(
        tuple(Fraction(i) for i in range(m + 1)),
        tuple(Fraction(j) for j in range(n + 1)),
        tuple((i, i + 1, j, j + 1) for i in range(m) for j in range(n)),
    )


def two_crosscut_mesh() -> TMesh:
    """Two vertical crosscuts plus one short horizontal l-edge between
    them.  The l-edge has only its two endpoint vertices, so it is
    vanished for cubic splines at smoothness two and the mesh reduces to
    three plain vertical strips."""
    knots = [Fraction(k) for k in range(4)]
    runs = [
        ("v", 1, 0, 3),
        ("v", 2, 0, 3),
        ("h", 1, 1, 2),
    ]
    return mesh_from_segments(knots, knots, runs)


def four_ledge_mesh() -> TMesh:
    """Two horizontal and two vertical interior l-edges with five vertices
    each, framed by crosscuts and rays.  Diagonalizable for cubic splines
    at smoothness two, with dimension 47."""
    xs = [Fraction(k) for k in range(10)]
    ys = [Fraction(k) for k in range(8)]
    runs = [
        ("h", 3, 2, 6),
        ("h", 5, 4, 8),
        ("v", 3, 1, 6),
        ("v", 5, 2, 6),
        ("v", 4, 0, 7),
        ("v", 6, 0, 7),
        ("h", 2, 0, 9),
        ("h", 4, 0, 9),
        ("v", 2, 0, 6),
        ("v", 7, 4, 7),
        ("v", 8, 4, 7),
        ("h", 1, 0, 6),
        ("h", 6, 0, 6),
    ]
    return mesh_from_segments(xs, ys, runs)


def small_pinwheel() -> TMesh:
    """Four interior l-edges in a cycle, three vertices each, held up by
    four rays.  Every l-edge shares two of its three vertices, which is
    what defeats the greedy ordering and makes the mesh a compact
    non-diagonalizable example."""
    knots = [Fraction(k) for k in range(6)]
    runs = [
        ("h", 2, 1, 3),
        ("v", 3, 1, 3),
        ("h", 3, 2, 4),
        ("v", 2, 2, 4),
        ("v", 1, 0, 4),
        ("h", 1, 1, 5),
        ("v", 4, 1, 5),
        ("h", 4, 0, 4),
    ]
    return mesh_from_segments(knots, knots, runs)


def l_shaped_mesh() -> TMesh:
    """Three unit faces around a missing corner.  The domain is not a
    rectangle, the two inner edge chains are crosscuts because their far
    endpoints sit on the domain boundary, and there are no interior
    vertices at all."""
    knots = (Fraction(0), Fraction(1), Fraction(2))
    faces = ((0, 1, 0, 1), (0, 1, 1, 2), (1, 2, 0, 1))
    return TMesh(knots, knots, faces)
