"""Mesh construction helpers: segment-skeleton assembly, a seeded random
T-mesh generator for stress testing, and the pinwheel mesh whose dimension
depends on where its knots sit."""

from __future__ import annotations

import random
from fractions import Fraction

from .mesh import Face, TMesh
from .topology import HORIZONTAL, faces_from_walls

Run = tuple[str, int, int, int]  # (orientation, line index, start, end)


def mesh_from_segments(x_knots, y_knots, runs) -> TMesh:
    """Build a mesh covering the full knot rectangle from interior segment
    runs given in knot indices.

    A horizontal run ``("h", j, s, e)`` draws the segment from
    ``(x_s, y_j)`` to ``(x_e, y_j)``.  The domain border is added
    automatically.  Raises ValueError when the runs do not slice the
    rectangle into faces (dangling ends, slits, non-rectangular pieces).
    """
    nx, ny = len(x_knots), len(y_knots)
    covered = {(ix, iy) for ix in range(nx - 1) for iy in range(ny - 1)}
    hsegs = {(ix, iy) for ix in range(nx - 1) for iy in (0, ny - 1)}
    vsegs = {(ix, iy) for ix in (0, nx - 1) for iy in range(ny - 1)}
    for orientation, line, start, end in runs:
        if not 0 <= start < end:
            raise ValueError(f"bad run extent ({start}, {end})")
        if orientation == HORIZONTAL:
            if line <= 0 or line >= ny - 1 or end >= nx:
                raise ValueError(f"horizontal run off the interior: {line}")
            hsegs.update((t, line) for t in range(start, end))
        else:
            if line <= 0 or line >= nx - 1 or end >= ny:
                raise ValueError(f"vertical run off the interior: {line}")
            vsegs.update((line, t) for t in range(start, end))
    faces = faces_from_walls(covered, hsegs, vsegs)
    if faces is None:
        raise ValueError("segment runs do not form a rectangle tiling")
    return TMesh(tuple(x_knots), tuple(y_knots), tuple(faces))


def _initial_interval(rng: random.Random) -> list[Fraction]:
    while True:
        a = Fraction(rng.randint(0, 24), rng.randint(1, 3))
        b = Fraction(rng.randint(0, 24), rng.randint(1, 3))
        if a != b:
            return [min(a, b), max(a, b)]


def random_tmesh(
    seed: int,
    max_splits: int,
    partial_prob: float = 0.7,
    reuse_prob: float = 0.5,
) -> TMesh:
    """Random valid T-mesh, reproducible from the seed.

    Starts from a single rational rectangle and applies ``max_splits``
    face splits.  A split picks a face and an axis, cuts either at an
    existing knot line passing through the face or at the midpoint of a
    random knot gap, and with probability ``1 - partial_prob`` extends the
    cut across every face the line crosses.  Partial cuts are what create
    T-junctions; crossing cuts create crosscuts and keep the meshes from
    degenerating into pure checkerboards of hanging nodes.
    """
    rng = random.Random(seed)
    xs = _initial_interval(rng)
    ys = _initial_interval(rng)
    faces: list[Face] = [(0, 1, 0, 1)]

    for _ in range(max_splits):
        target = rng.randrange(len(faces))
        x0, x1, y0, y1 = faces[target]
        vertical_cut = rng.random() < 0.5
        knots = xs if vertical_cut else ys
        lo, hi = (x0, x1) if vertical_cut else (y0, y1)

        inner = list(range(lo + 1, hi))
        if inner and rng.random() < reuse_prob:
            cut = rng.choice(inner)
        else:
            gap = rng.randrange(lo, hi)
            knots.insert(gap + 1, (knots[gap] + knots[gap + 1]) / 2)
            def shifted(pair):
                return tuple(i + 1 if i > gap else i for i in pair)

            if vertical_cut:
                faces = [shifted(face[:2]) + face[2:] for face in faces]
            else:
                faces = [face[:2] + shifted(face[2:]) for face in faces]
            x0, x1, y0, y1 = faces[target]
            cut = gap + 1

        def straddles(face: Face) -> bool:
            a0, a1 = (face[0], face[1]) if vertical_cut else (face[2], face[3])
            return a0 < cut < a1

        if rng.random() < partial_prob:
            victims = {target}
        else:
            victims = {f for f, face in enumerate(faces) if straddles(face)}

        rebuilt: list[Face] = []
        for f, face in enumerate(faces):
            if f not in victims:
                rebuilt.append(face)
            elif vertical_cut:
                a0, a1, b0, b1 = face
                rebuilt.append((a0, cut, b0, b1))
                rebuilt.append((cut, a1, b0, b1))
            else:
                a0, a1, b0, b1 = face
                rebuilt.append((a0, a1, b0, cut))
                rebuilt.append((a0, a1, cut, b1))
        faces = rebuilt

    return TMesh(tuple(xs), tuple(ys), tuple(faces))


def pinwheel_counterexample() -> TMesh:
    """Mesh whose spline space dimension changes when one knot moves.

    Four interior l-edges chase each other in a cycle, each ending on the
    next, and short rays feed each l-edge exactly two extra vertices.  For
    bidegree (3, 3) at smoothness (2, 2) the conformality matrix is square
    of order 16 with every row built from three cyclically overlapping
    vertex groups; at equally spaced knots the rows are dependent (rank
    15) but a generic knot perturbation makes them independent (rank 16),
    so the dimension drops from 49 to 48.
    """
    knots = [Fraction(k) for k in range(10)]
    runs = [
        # the cycle of interior l-edges
        ("h", 2, 2, 8),
        ("v", 7, 2, 8),
        ("h", 7, 1, 7),
        ("v", 2, 1, 7),
        # crosscuts framing the cycle
        ("h", 1, 0, 9),
        ("h", 8, 0, 9),
        ("v", 1, 0, 9),
        ("v", 8, 0, 9),
        # rays feeding two mono vertices to each l-edge
        ("v", 3, 0, 2),
        ("v", 4, 0, 2),
        ("h", 3, 7, 9),
        ("h", 4, 7, 9),
        ("v", 5, 7, 9),
        ("v", 6, 7, 9),
        ("h", 5, 0, 2),
        ("h", 6, 0, 2),
        # stubs keeping the outer ring faces rectangular
        ("v", 5, 0, 1),
        ("h", 5, 8, 9),
        ("v", 4, 8, 9),
        ("h", 4, 0, 1),
    ]
    return mesh_from_segments(knots, knots, runs)
