"""T-mesh data model: exact rational knots, integer-indexed rectangular faces.

A mesh is two strictly increasing knot arrays plus a list of axis-aligned
faces given by knot indices.  Indices carry the combinatorics, values carry
the geometry; two meshes with the same faces but different knot values have
identical topology.  All coordinates are ``fractions.Fraction``, so every
downstream computation is exact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidMeshError, MeshFormatError

Point = tuple[int, int]
Face = tuple[int, int, int, int]


def parse_rational(value) -> Fraction:
    """Accept an int or a string like ``"5"`` / ``"-3/7"``; reject floats."""
    if isinstance(value, bool):
        raise MeshFormatError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise MeshFormatError(f"not a rational: {value!r}") from exc
    raise MeshFormatError(f"not a rational: {value!r}")


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class SplineSpaceSpec:
    """Bi-degree and cross-edge smoothness orders of a spline space.

    ``d1``/``d2`` are the polynomial degrees in x and y.  ``alpha`` is the
    smoothness order required across vertical edges, ``beta`` across
    horizontal edges.  Smoothness must stay strictly below the degree,
    otherwise adjacent patches are forced to coincide.
    """

    d1: int
    d2: int
    alpha: int
    beta: int

    def __post_init__(self):
        for name in ("d1", "d2", "alpha", "beta"):
            if not isinstance(getattr(self, name), int):
                raise ValueError(f"{name} must be an int")
        if self.d1 < 1 or self.d2 < 1:
            raise ValueError("degrees must be at least 1")
        if not 0 <= self.alpha < self.d1:
            raise ValueError("alpha must satisfy 0 <= alpha < d1")
        if not 0 <= self.beta < self.d2:
            raise ValueError("beta must satisfy 0 <= beta < d2")


def thresholds(spec: SplineSpaceSpec) -> tuple[int, int]:
    """Per-orientation vertex-count thresholds used by the dimension theory.

    A horizontal constraint block has ``d1 + 1`` rows per slice and each of
    its vertices contributes ``d1 - alpha`` columns per slice, so an l-edge
    needs ceil((d1+1)/(d1-alpha)) fresh vertices before its block can reach
    full row rank.  Returns ``(horizontal, vertical)``.
    """
    n_h = -(-(spec.d1 + 1) // (spec.d1 - spec.alpha))
    n_v = -(-(spec.d2 + 1) // (spec.d2 - spec.beta))
    return n_h, n_v


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    raise MeshFormatError(f"knot values must be Fraction or int, got {value!r}")


@dataclass(frozen=True)
class TMesh:
    """Axis-aligned rectangle partition allowing T-junctions.

    ``faces`` holds ``(ix0, ix1, iy0, iy1)`` index quadruples denoting
    ``[x_knots[ix0], x_knots[ix1]] x [y_knots[iy0], y_knots[iy1]]``.  Faces
    are stored sorted, so equal meshes compare equal regardless of the
    order they were built in.  Construction checks local well-formedness
    only; global structure (overlaps, holes, regularity) is ``validate``'s
    job.
    """

    x_knots: tuple[Fraction, ...]
    y_knots: tuple[Fraction, ...]
    faces: tuple[Face, ...]

    def __post_init__(self):
        xs = tuple(_as_fraction(v) for v in self.x_knots)
        ys = tuple(_as_fraction(v) for v in self.y_knots)
        if len(xs) < 2 or len(ys) < 2:
            raise MeshFormatError("need at least two knots per axis")
        for axis, values in (("x", xs), ("y", ys)):
            if any(a >= b for a, b in zip(values, values[1:])):
                raise MeshFormatError(f"{axis}_knots must be strictly increasing")
        if not self.faces:
            raise MeshFormatError("a mesh needs at least one face")
        clean = []
        for face in self.faces:
            face = tuple(face)
            if len(face) != 4 or not all(isinstance(i, int) for i in face):
                raise MeshFormatError(f"face must be four ints, got {face!r}")
            ix0, ix1, iy0, iy1 = face
            if not (0 <= ix0 < ix1 < len(xs)):
                raise MeshFormatError(f"face {face} has bad x index range")
            if not (0 <= iy0 < iy1 < len(ys)):
                raise MeshFormatError(f"face {face} has bad y index range")
            clean.append(face)
        object.__setattr__(self, "x_knots", xs)
        object.__setattr__(self, "y_knots", ys)
        object.__setattr__(self, "faces", tuple(sorted(clean)))

    @property
    def nx(self) -> int:
        return len(self.x_knots)

    @property
    def ny(self) -> int:
        return len(self.y_knots)


def with_knot_values(mesh: TMesh, x_knots, y_knots) -> TMesh:
    """Same combinatorial mesh on different knot values (counts must match)."""
    if len(x_knots) != mesh.nx or len(y_knots) != mesh.ny:
        raise MeshFormatError("replacement knot arrays must keep their lengths")
    return TMesh(tuple(x_knots), tuple(y_knots), mesh.faces)


def parse_tmesh(text: str) -> TMesh:
    """Parse the JSON mesh document (see ``serialize_tmesh`` for the shape)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MeshFormatError(f"mesh file is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise MeshFormatError("mesh document must be a JSON object")
    missing = {"x_knots", "y_knots", "faces"} - set(doc)
    if missing:
        raise MeshFormatError(f"mesh document lacks fields: {sorted(missing)}")
    for key in ("x_knots", "y_knots", "faces"):
        if not isinstance(doc[key], list):
            raise MeshFormatError(f"{key} must be an array")
    xs = tuple(parse_rational(v) for v in doc["x_knots"])
    ys = tuple(parse_rational(v) for v in doc["y_knots"])
    faces = []
    for raw in doc["faces"]:
        if not isinstance(raw, list) or len(raw) != 4 or not all(
            isinstance(i, int) and not isinstance(i, bool) for i in raw
        ):
            raise MeshFormatError(f"face must be an array of four ints, got {raw!r}")
        faces.append(tuple(raw))
    return TMesh(xs, ys, tuple(faces))


def serialize_tmesh(mesh: TMesh) -> str:
    """Canonical text form: fixed key order, sorted faces, rationals in
    lowest terms (plain integers without a ``/1`` suffix).  Byte-identical
    for equal meshes."""
    doc = {
        "x_knots": [format_rational(v) for v in mesh.x_knots],
        "y_knots": [format_rational(v) for v in mesh.y_knots],
        "faces": [list(face) for face in sorted(mesh.faces)],
    }
    return json.dumps(doc, indent=2) + "\n"


def cell_owners(mesh: TMesh) -> tuple[dict[Point, int], list[tuple[Point, int, int]]]:
    """Map each covered unit index cell ``(ix, iy)`` (meaning
    ``[x_ix, x_ix+1] x [y_iy, y_iy+1]``) to the face covering it.

    Returns ``(owners, collisions)`` where collisions lists
    ``(cell, first_face, second_face)`` for doubly covered cells.  Faces are
    identified by their position in ``mesh.faces``.
    """
    owners: dict[Point, int] = {}
    collisions: list[tuple[Point, int, int]] = []
    for index, (ix0, ix1, iy0, iy1) in enumerate(mesh.faces):
        for ix in range(ix0, ix1):
            for iy in range(iy0, iy1):
                cell = (ix, iy)
                if cell in owners:
                    collisions.append((cell, owners[cell], index))
                else:
                    owners[cell] = index
    return owners, collisions


def unit_segments(owners: dict[Point, int], nx: int, ny: int) -> tuple[set[Point], set[Point]]:
    """Unit wall segments of the subdivision induced by a cell-owner map.

    A horizontal segment ``(ix, iy)`` runs from knot point ``(ix, iy)`` to
    ``(ix+1, iy)``; it exists where the cells above and below differ in
    coverage or owner.  Vertical segments ``(ix, iy)`` run from ``(ix, iy)``
    to ``(ix, iy+1)`` with the mirrored rule.  Returns ``(hsegs, vsegs)``.
    """
    hsegs: set[Point] = set()
    vsegs: set[Point] = set()
    for ix in range(nx - 1):
        for iy in range(ny):
            if owners.get((ix, iy)) != owners.get((ix, iy - 1)):
                hsegs.add((ix, iy))
    for iy in range(ny - 1):
        for ix in range(nx):
            if owners.get((ix, iy)) != owners.get((ix - 1, iy)):
                vsegs.add((ix, iy))
    return hsegs, vsegs


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    problems: tuple[str, ...]


def validate(mesh: TMesh) -> ValidationReport:
    """Check global mesh structure.

    A mesh is accepted when face interiors are pairwise disjoint, the union
    of faces is connected, the subdivision has no holes (Euler count
    ``V - E + F = 1`` over all vertices and wall segments), and every knot
    point is regular: the faces around it cover a contiguous fan of
    quadrants.  Each failure is reported with the offending face or vertex.
    """
    problems: list[str] = []

    owners, collisions = cell_owners(mesh)
    for cell, first, second in collisions:
        problems.append(
            f"OverlappingFaces: faces {first} and {second} both cover cell {cell}"
        )

    reached = {0}
    frontier = [0]
    rects = mesh.faces
    while frontier:
        a = frontier.pop()
        ax0, ax1, ay0, ay1 = rects[a]
        for b in range(len(rects)):
            if b in reached:
                continue
            bx0, bx1, by0, by1 = rects[b]
            if max(ax0, bx0) <= min(ax1, bx1) and max(ay0, by0) <= min(ay1, by1):
                reached.add(b)
                frontier.append(b)
    for index in range(len(rects)):
        if index not in reached:
            problems.append(f"Disconnected: face {index} {rects[index]} is unreachable from face 0")
            break

    if collisions:
        # Hole and regularity analysis presupposes a partition; with doubly
        # covered cells the owner map is arbitrary, so stop here.
        return ValidationReport(False, tuple(problems))

    hsegs, vsegs = unit_segments(owners, mesh.nx, mesh.ny)
    points: set[Point] = set()
    for ix, iy in hsegs:
        points.add((ix, iy))
        points.add((ix + 1, iy))
    for ix, iy in vsegs:
        points.add((ix, iy))
        points.add((ix, iy + 1))
    euler = len(points) - (len(hsegs) + len(vsegs)) + len(mesh.faces)
    if euler != 1 and len(problems) == 0:
        problems.append(f"HasHole: subdivision Euler count is {euler}, expected 1")

    for ix in range(mesh.nx):
        for iy in range(mesh.ny):
            quadrants = (
                (ix, iy) in owners,        # NE
                (ix - 1, iy) in owners,    # NW
                (ix - 1, iy - 1) in owners,  # SW
                (ix, iy - 1) in owners,    # SE
            )
            if not any(quadrants):
                continue
            flips = sum(
                quadrants[k] != quadrants[(k + 1) % 4] for k in range(4)
            )
            if flips > 2:
                problems.append(
                    f"NotRegular: vertex at knot indices ({ix}, {iy}) "
                    "touches faces in a split pattern"
                )

    return ValidationReport(not problems, tuple(problems))


def require_valid(mesh: TMesh) -> None:
    report = validate(mesh)
    if not report.ok:
        raise InvalidMeshError("; ".join(report.problems))
