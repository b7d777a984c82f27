"""Derived mesh structure: vertices, edges, l-edges, counts, reduction.

Everything here is combinatorial.  The central construction is the l-edge:
a maximal straight run of connected interior edges.  An l-edge whose two
endpoints are both interior vertices ("interior" kind) generates smoothing
cofactor constraints; one that spans boundary to boundary is a cross-cut;
one with a single boundary endpoint is a ray.
"""

from __future__ import annotations

from dataclasses import dataclass

from .mesh import (
    Face,
    Point,
    SplineSpaceSpec,
    TMesh,
    cell_owners,
    require_valid,
    unit_segments,
    validate,
)

HORIZONTAL = "h"
VERTICAL = "v"

INTERIOR = "interior"
CROSSCUT = "crosscut"
RAY = "ray"

# An edge between two adjacent vertices: (orientation, line index, start
# index, end index along the varying axis).
EdgeSeg = tuple[str, int, int, int]


@dataclass(frozen=True)
class LEdge:
    """Maximal run of collinear connected interior edges.

    ``vertices`` lists every subdivision vertex on the run, ordered along
    the line, endpoints included (always at least two entries).
    """

    orientation: str
    vertices: tuple[Point, ...]
    kind: str

    @property
    def line_index(self) -> int:
        first = self.vertices[0]
        return first[1] if self.orientation == HORIZONTAL else first[0]

    @property
    def span_indices(self) -> tuple[int, ...]:
        axis = 0 if self.orientation == HORIZONTAL else 1
        return tuple(p[axis] for p in self.vertices)

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    def sort_key(self) -> tuple:
        return (self.orientation, self.line_index, self.span_indices[0])


@dataclass(frozen=True)
class Topology:
    """Classified subdivision structure of a validated mesh."""

    face_count: int
    vertices: tuple[Point, ...]
    interior_vertices: frozenset[Point]
    interior_edges: tuple[EdgeSeg, ...]
    boundary_edges: tuple[EdgeSeg, ...]
    ledges: tuple[LEdge, ...]
    tjunctions: frozenset[Point]
    mono_vertices: frozenset[Point]
    free_vertices: frozenset[Point]

    @property
    def interior_ledges(self) -> tuple[LEdge, ...]:
        return tuple(e for e in self.ledges if e.kind == INTERIOR)

    @property
    def crosscuts(self) -> tuple[LEdge, ...]:
        return tuple(e for e in self.ledges if e.kind == CROSSCUT)

    @property
    def rays(self) -> tuple[LEdge, ...]:
        return tuple(e for e in self.ledges if e.kind == RAY)

    def is_free_vertex(self, point: Point) -> bool:
        return point in self.free_vertices

    def is_mono_vertex(self, point: Point) -> bool:
        return point in self.mono_vertices

    def is_tjunction(self, point: Point) -> bool:
        return point in self.tjunctions


def _line_points(segments: set[Point], orientation: str) -> dict[int, set[int]]:
    """Group unit segments by line: line index -> set of start offsets."""
    lines: dict[int, set[int]] = {}
    for ix, iy in segments:
        if orientation == HORIZONTAL:
            lines.setdefault(iy, set()).add(ix)
        else:
            lines.setdefault(ix, set()).add(iy)
    return lines


def extract_topology(mesh: TMesh) -> Topology:
    require_valid(mesh)
    owners, collisions = cell_owners(mesh)
    assert not collisions
    hsegs, vsegs = unit_segments(owners, mesh.nx, mesh.ny)

    def star(point: Point) -> tuple[bool, bool, bool, bool]:
        """Incident unit segments: (left, right, down, up)."""
        ix, iy = point
        return (
            (ix - 1, iy) in hsegs,
            (ix, iy) in hsegs,
            (ix, iy - 1) in vsegs,
            (ix, iy) in vsegs,
        )

    vertices: list[Point] = []
    interior: set[Point] = set()
    degree: dict[Point, int] = {}
    for ix in range(mesh.nx):
        for iy in range(mesh.ny):
            point = (ix, iy)
            left, right, down, up = star(point)
            count = left + right + down + up
            if count == 0:
                continue
            # Collinear degree-2 points subdivide an edge but are not
            # vertices of the mesh.
            if count == 2 and (left == right):
                continue
            assert count >= 2, f"dangling segment at {point}"
            vertices.append(point)
            degree[point] = count
            if all(
                cell in owners
                for cell in ((ix, iy), (ix - 1, iy), (ix - 1, iy - 1), (ix, iy - 1))
            ):
                interior.add(point)

    vertex_set = set(vertices)

    def walk_edges(orientation: str, segments: set[Point]) -> tuple[list[EdgeSeg], list[EdgeSeg]]:
        interior_edges: list[EdgeSeg] = []
        boundary_edges: list[EdgeSeg] = []
        for line, offsets in sorted(_line_points(segments, orientation).items()):

            def is_vertex(offset: int) -> bool:
                p = (offset, line) if orientation == HORIZONTAL else (line, offset)
                return p in vertex_set

            def seg_interior(offset: int) -> bool:
                if orientation == HORIZONTAL:
                    return (offset, line) in owners and (offset, line - 1) in owners
                return (line, offset) in owners and (line - 1, offset) in owners

            start = None
            kind_interior = None
            for offset in sorted(offsets) + [None]:
                flush = False
                if offset is None:
                    flush = True
                elif start is None:
                    start = offset
                    last = offset
                    kind_interior = seg_interior(offset)
                else:
                    contiguous = offset == last + 1 and not is_vertex(offset)
                    same_kind = seg_interior(offset) == kind_interior
                    if contiguous and same_kind:
                        last = offset
                    else:
                        flush = True
                if flush and start is not None:
                    edge = (orientation, line, start, last + 1)
                    assert is_vertex(start) and is_vertex(last + 1), edge
                    (interior_edges if kind_interior else boundary_edges).append(edge)
                    if offset is not None:
                        start = offset
                        last = offset
                        kind_interior = seg_interior(offset)
            # Note: a maximal run of present segments is split exactly at
            # interior vertices of the run and wherever its side coverage
            # changes; both can only happen at subdivision vertices.
        return interior_edges, boundary_edges

    h_interior, h_boundary = walk_edges(HORIZONTAL, hsegs)
    v_interior, v_boundary = walk_edges(VERTICAL, vsegs)
    interior_edges = tuple(h_interior + v_interior)
    boundary_edges = tuple(h_boundary + v_boundary)

    def build_ledges(edges: list[EdgeSeg], orientation: str) -> list[LEdge]:
        by_line: dict[int, list[EdgeSeg]] = {}
        for edge in edges:
            by_line.setdefault(edge[1], []).append(edge)
        ledges: list[LEdge] = []
        for line, line_edges in sorted(by_line.items()):
            line_edges.sort(key=lambda e: e[2])
            chain: list[int] = []
            for edge in line_edges + [None]:
                if edge is not None and chain and edge[2] == chain[-1]:
                    chain.append(edge[3])
                    continue
                if chain:
                    span = tuple(chain)
                    if orientation == HORIZONTAL:
                        pts = tuple((i, line) for i in span)
                    else:
                        pts = tuple((line, i) for i in span)
                    ends_interior = [pts[0] in interior, pts[-1] in interior]
                    if all(ends_interior):
                        kind = INTERIOR
                    elif not any(ends_interior):
                        kind = CROSSCUT
                    else:
                        kind = RAY
                    ledges.append(LEdge(orientation, pts, kind))
                if edge is not None:
                    chain = [edge[2], edge[3]]
            # Each chain's intermediate entries are the vertices strictly
            # inside the l-edge; edge boundaries are vertices by walk_edges.
        return ledges

    ledges = tuple(
        build_ledges(h_interior, HORIZONTAL) + build_ledges(v_interior, VERTICAL)
    )

    on_interior_ledge: dict[Point, int] = {p: 0 for p in interior}
    for ledge in ledges:
        if ledge.kind != INTERIOR:
            continue
        for point in ledge.vertices:
            assert point in interior
            on_interior_ledge[point] += 1

    free = frozenset(p for p, n in on_interior_ledge.items() if n == 0)
    mono = frozenset(p for p, n in on_interior_ledge.items() if n == 1)
    tjunctions = frozenset(p for p in interior if degree[p] == 3)

    return Topology(
        face_count=len(mesh.faces),
        vertices=tuple(sorted(vertices)),
        interior_vertices=frozenset(interior),
        interior_edges=interior_edges,
        boundary_edges=boundary_edges,
        ledges=ledges,
        tjunctions=tjunctions,
        mono_vertices=mono,
        free_vertices=free,
    )


@dataclass(frozen=True)
class MeshCounts:
    """Aggregate structure counts plus the spec-dependent system sizes.

    ``cofactor_columns`` is the number of scalar cofactor unknowns carried
    by vertices that sit on interior l-edges; ``conformality_rows`` is the
    number of scalar constraint equations those l-edges impose.
    """

    faces: int
    interior_h_edges: int
    interior_v_edges: int
    interior_vertices: int
    h_crosscuts: int
    v_crosscuts: int
    h_interior_ledges: int
    v_interior_ledges: int
    free_vertices: int
    cofactor_columns: int
    conformality_rows: int

    @property
    def interior_ledges(self) -> int:
        return self.h_interior_ledges + self.v_interior_ledges


def mesh_counts(topo: Topology, spec: SplineSpaceSpec) -> MeshCounts:
    h_edges = sum(1 for e in topo.interior_edges if e[0] == HORIZONTAL)
    v_edges = sum(1 for e in topo.interior_edges if e[0] == VERTICAL)
    h_cross = sum(
        1 for e in topo.ledges if e.kind == CROSSCUT and e.orientation == HORIZONTAL
    )
    v_cross = sum(
        1 for e in topo.ledges if e.kind == CROSSCUT and e.orientation == VERTICAL
    )
    h_led = sum(
        1 for e in topo.ledges if e.kind == INTERIOR and e.orientation == HORIZONTAL
    )
    v_led = sum(
        1 for e in topo.ledges if e.kind == INTERIOR and e.orientation == VERTICAL
    )
    v_total = len(topo.interior_vertices)
    v_free = len(topo.free_vertices)
    cols = (spec.d1 - spec.alpha) * (spec.d2 - spec.beta) * (v_total - v_free)
    rows = (spec.d1 + 1) * (spec.d2 - spec.beta) * h_led + (spec.d2 + 1) * (
        spec.d1 - spec.alpha
    ) * v_led
    return MeshCounts(
        faces=topo.face_count,
        interior_h_edges=h_edges,
        interior_v_edges=v_edges,
        interior_vertices=v_total,
        h_crosscuts=h_cross,
        v_crosscuts=v_cross,
        h_interior_ledges=h_led,
        v_interior_ledges=v_led,
        free_vertices=v_free,
        cofactor_columns=cols,
        conformality_rows=rows,
    )


def is_vanished(ledge: LEdge, spec: SplineSpaceSpec) -> bool:
    """True when the l-edge's constraint block pins every cofactor to zero.

    With ``m`` vertices a horizontal l-edge supplies ``m * (d1 - alpha)``
    columns against ``d1 + 1`` independent rows per slice; at or below that
    bound the block has full column rank, so the l-edge carries no degrees
    of freedom and can be dissolved without changing the spline space.
    """
    m = ledge.vertex_count
    if ledge.orientation == HORIZONTAL:
        return m * (spec.d1 - spec.alpha) <= spec.d1 + 1
    return m * (spec.d2 - spec.beta) <= spec.d2 + 1


def faces_from_walls(
    covered: set[Point], hsegs: set[Point], vsegs: set[Point]
) -> list[Face] | None:
    """Recover rectangular faces from a wall skeleton, or None if the walls
    do not cut the covered cells into a clean rectangle tiling.

    ``covered`` is the set of unit cells inside the domain.  Cells are
    merged when the segment between them is absent.  The result is rejected
    when a merged component is not a solid rectangle, when a wall segment
    separates nothing (a slit poking into a face), or when the domain rim
    is not fully walled.
    """
    component: dict[Point, int] = {}
    count = 0
    for cell in sorted(covered):
        if cell in component:
            continue
        stack = [cell]
        component[cell] = count
        while stack:
            cx, cy = stack.pop()
            neighbours = (
                ((cx + 1, cy), vsegs, (cx + 1, cy)),
                ((cx - 1, cy), vsegs, (cx, cy)),
                ((cx, cy + 1), hsegs, (cx, cy + 1)),
                ((cx, cy - 1), hsegs, (cx, cy)),
            )
            for other, wallset, wall in neighbours:
                if other in covered and other not in component and wall not in wallset:
                    component[other] = count
                    stack.append(other)
        count += 1

    boxes: list[list[int]] = [
        [1 << 30, -(1 << 30), 1 << 30, -(1 << 30)] for _ in range(count)
    ]
    sizes = [0] * count
    for (cx, cy), comp in component.items():
        box = boxes[comp]
        box[0] = min(box[0], cx)
        box[1] = max(box[1], cx)
        box[2] = min(box[2], cy)
        box[3] = max(box[3], cy)
        sizes[comp] += 1
    for comp in range(count):
        x0, x1, y0, y1 = boxes[comp]
        if (x1 - x0 + 1) * (y1 - y0 + 1) != sizes[comp]:
            return None
        for cx in range(x0, x1 + 1):
            for cy in range(y0, y1 + 1):
                if component.get((cx, cy)) != comp:
                    return None

    for ix, iy in hsegs:
        above = component.get((ix, iy))
        below = component.get((ix, iy - 1))
        if above is None and below is None:
            return None
        if above is not None and below is not None and above == below:
            return None
    for ix, iy in vsegs:
        right = component.get((ix, iy))
        left = component.get((ix - 1, iy))
        if right is None and left is None:
            return None
        if right is not None and left is not None and right == left:
            return None

    for cx, cy in covered:
        if (cx + 1, cy) not in covered and (cx + 1, cy) not in vsegs:
            return None
        if (cx - 1, cy) not in covered and (cx, cy) not in vsegs:
            return None
        if (cx, cy + 1) not in covered and (cx, cy + 1) not in hsegs:
            return None
        if (cx, cy - 1) not in covered and (cx, cy) not in hsegs:
            return None

    return [
        (box[0], box[1] + 1, box[2], box[3] + 1) for box in boxes
    ]


def _delete_interior_ledge(mesh: TMesh, ledge: LEdge) -> TMesh | None:
    """Remove one interior l-edge's edges, retract anything left dangling,
    and rebuild the face list.  Returns None when the result is not a valid
    rectangle tiling (the l-edge is then kept)."""
    owners, _ = cell_owners(mesh)
    covered = set(owners)
    hsegs, vsegs = unit_segments(owners, mesh.nx, mesh.ny)

    span = ledge.span_indices
    line = ledge.line_index
    for offset in range(span[0], span[-1]):
        if ledge.orientation == HORIZONTAL:
            hsegs.discard((offset, line))
        else:
            vsegs.discard((line, offset))

    def on_domain_boundary(point: Point) -> bool:
        ix, iy = point
        return not all(
            cell in covered
            for cell in ((ix, iy), (ix - 1, iy), (ix - 1, iy - 1), (ix, iy - 1))
        )

    # Retract dangling chains: a ray that used to end on the deleted l-edge
    # now stops at a point of degree one, which no rectangle tiling allows.
    # Its constraint was tied to a cofactor the deleted l-edge forces to
    # zero, so peeling the segment keeps the spline space intact.
    changed = True
    while changed:
        changed = False
        incident: dict[Point, list[tuple[str, Point]]] = {}
        for seg in hsegs:
            for point in (seg, (seg[0] + 1, seg[1])):
                incident.setdefault(point, []).append(("h", seg))
        for seg in vsegs:
            for point in (seg, (seg[0], seg[1] + 1)):
                incident.setdefault(point, []).append(("v", seg))
        for point, segs in incident.items():
            if len(segs) == 1 and not on_domain_boundary(point):
                kind, seg = segs[0]
                (hsegs if kind == "h" else vsegs).discard(seg)
                changed = True

    faces = faces_from_walls(covered, hsegs, vsegs)
    if faces is None:
        return None
    candidate = TMesh(mesh.x_knots, mesh.y_knots, tuple(faces))
    if not validate(candidate).ok:
        return None
    return candidate


def reduce_vanished(mesh: TMesh, spec: SplineSpaceSpec) -> TMesh:
    """Delete vanished interior l-edges until none remain.

    Deletion is iterated because removing one l-edge can strip vertices
    from a perpendicular l-edge and push it below its threshold in turn.
    An l-edge whose removal does not leave a clean rectangle tiling is kept
    (its constraints are still honoured by the unreduced matrix, so every
    dimension result stays correct; the mesh just keeps a redundant line).
    """
    require_valid(mesh)
    current = mesh
    blocked: set[tuple] = set()
    while True:
        topo = extract_topology(current)
        target = None
        for ledge in sorted(topo.interior_ledges, key=LEdge.sort_key):
            key = (ledge.orientation, ledge.line_index, ledge.span_indices)
            if key in blocked or not is_vanished(ledge, spec):
                continue
            target = (key, ledge)
            break
        if target is None:
            return current
        key, ledge = target
        candidate = _delete_interior_ledge(current, ledge)
        if candidate is None:
            blocked.add(key)
        else:
            current = candidate
            blocked.clear()
