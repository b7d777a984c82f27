"""Brute-force spline-space dimension straight from the definition.

No l-edges, no cofactor theory: one polynomial per face, one linear
equation per matched derivative along every shared face boundary, then an
exact nullity.  The point of this module is to be an independent witness
for the conformality-based dimension count, so it must not import from
the conformality or analysis modules.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .mesh import Point, SplineSpaceSpec, TMesh, cell_owners, require_valid
from .rational_linalg import RationalMatrix, rank

UnknownKey = tuple[int, int, int]  # (face, x power, y power)


@dataclass(frozen=True)
class SmoothnessSystem:
    matrix: RationalMatrix
    unknown_index: tuple[UnknownKey, ...]

    @property
    def unknowns(self) -> int:
        return len(self.unknown_index)


def _falling(power: int, order: int) -> int:
    """power * (power-1) * ... over ``order`` factors; 0 when power < order."""
    result = 1
    for k in range(order):
        result *= power - k
    return result if power >= order else 0


def build_smoothness_system(mesh: TMesh, spec: SplineSpaceSpec) -> SmoothnessSystem:
    """Equations forcing adjacent face polynomials to agree to the required
    derivative order along their shared segment.

    Polynomials of degree at most d agreeing on a segment of positive
    length agree on the whole line, so segment equality is emitted as
    identity of the restricted univariate polynomials, coefficient by
    coefficient: for a vertical contact line ``x = v`` that is
    ``(alpha + 1)(d2 + 1)`` equations per adjacent face pair.
    """
    d1, d2 = spec.d1, spec.d2
    per_face = (d1 + 1) * (d2 + 1)
    unknown_index = tuple(
        (f, a, b)
        for f in range(len(mesh.faces))
        for a in range(d1 + 1)
        for b in range(d2 + 1)
    )

    def col(face: int, a: int, b: int) -> int:
        return face * per_face + a * (d2 + 1) + b

    rows: list[list[Fraction]] = []
    total = per_face * len(mesh.faces)

    def add_vertical_contact(left: int, right: int, value: Fraction) -> None:
        # d^j/dx^j of (P_left - P_right) at x = value must vanish in y.
        for j in range(spec.alpha + 1):
            for b in range(d2 + 1):
                row = [Fraction(0)] * total
                for a in range(j, d1 + 1):
                    coeff = Fraction(_falling(a, j)) * value ** (a - j)
                    row[col(left, a, b)] += coeff
                    row[col(right, a, b)] -= coeff
                rows.append(row)

    def add_horizontal_contact(low: int, high: int, value: Fraction) -> None:
        for j in range(spec.beta + 1):
            for a in range(d1 + 1):
                row = [Fraction(0)] * total
                for b in range(j, d2 + 1):
                    coeff = Fraction(_falling(b, j)) * value ** (b - j)
                    row[col(low, a, b)] += coeff
                    row[col(high, a, b)] -= coeff
                rows.append(row)

    faces = mesh.faces
    for ix in range(mesh.nx):
        lefts = [f for f, face in enumerate(faces) if face[1] == ix]
        rights = [f for f, face in enumerate(faces) if face[0] == ix]
        for a in lefts:
            for b in rights:
                if max(faces[a][2], faces[b][2]) < min(faces[a][3], faces[b][3]):
                    add_vertical_contact(a, b, mesh.x_knots[ix])
    for iy in range(mesh.ny):
        lows = [f for f, face in enumerate(faces) if face[3] == iy]
        highs = [f for f, face in enumerate(faces) if face[2] == iy]
        for a in lows:
            for b in highs:
                if max(faces[a][0], faces[b][0]) < min(faces[a][1], faces[b][1]):
                    add_horizontal_contact(a, b, mesh.y_knots[iy])

    matrix = RationalMatrix.from_rows(rows, cols=total)
    return SmoothnessSystem(matrix, unknown_index)


def dim_direct(mesh: TMesh, spec: SplineSpaceSpec) -> int:
    """Dimension of the spline space, computed without any reduction or
    l-edge analysis: unknowns minus the exact rank of the smoothness
    system."""
    require_valid(mesh)
    system = build_smoothness_system(mesh, spec)
    return system.unknowns - rank(system.matrix)


def shift_bivariate(coeffs, x0: Fraction, y0: Fraction) -> list[list[Fraction]]:
    """Coefficients of ``P(x + x0, y + y0)`` given those of ``P``.

    ``coeffs[a][b]`` multiplies ``x^a y^b``; the result uses the same
    layout, so entry ``[p][q]`` of the result is the coefficient of
    ``(x - x0)^p (y - y0)^q`` in the original polynomial.
    """
    na = len(coeffs)
    nb = len(coeffs[0])
    out = [[Fraction(0)] * nb for _ in range(na)]
    for a in range(na):
        for b in range(nb):
            c = coeffs[a][b]
            if not c:
                continue
            for p in range(a + 1):
                xpart = c * comb(a, p) * x0 ** (a - p)
                for q in range(b + 1):
                    out[p][q] += xpart * comb(b, q) * y0 ** (b - q)
    return out


def vertex_cofactors_of_solution(
    mesh: TMesh, spec: SplineSpaceSpec, solution
) -> dict[Point, tuple[Fraction, ...]]:
    """Vertex cofactors realised by one spline from the smoothness kernel.

    ``solution`` is a coefficient vector laid out like
    ``SmoothnessSystem.unknown_index``.  For every interior vertex the
    double difference of the four surrounding patches is divisible by
    ``(x - x_v)^(alpha+1) (y - y_v)^(beta+1)``; the quotient, expanded
    about the vertex, is the cofactor.  Coefficients are returned per
    vertex as ``(p, q)`` with q fastest, matching the conformality matrix
    column layout.
    """
    require_valid(mesh)
    d1, d2 = spec.d1, spec.d2
    per_face = (d1 + 1) * (d2 + 1)
    owners, _ = cell_owners(mesh)

    def patch(face: int) -> list[list[Fraction]]:
        base = face * per_face
        return [
            [Fraction(solution[base + a * (d2 + 1) + b]) for b in range(d2 + 1)]
            for a in range(d1 + 1)
        ]

    out: dict[Point, tuple[Fraction, ...]] = {}
    for ix in range(1, mesh.nx - 1):
        for iy in range(1, mesh.ny - 1):
            quadrants = [
                owners.get(cell)
                for cell in ((ix, iy), (ix - 1, iy), (ix - 1, iy - 1), (ix, iy - 1))
            ]
            if any(q is None for q in quadrants):
                continue
            ne, nw, sw, se = (patch(f) for f in quadrants)
            diff = [
                [
                    ne[a][b] - nw[a][b] + sw[a][b] - se[a][b]
                    for b in range(d2 + 1)
                ]
                for a in range(d1 + 1)
            ]
            shifted = shift_bivariate(diff, mesh.x_knots[ix], mesh.y_knots[iy])
            for a in range(d1 + 1):
                for b in range(d2 + 1):
                    if a < spec.alpha + 1 or b < spec.beta + 1:
                        assert shifted[a][b] == 0, (
                            "patch jumps of a smooth spline must vanish to "
                            f"the smoothness order at vertex ({ix}, {iy})"
                        )
            cof = tuple(
                shifted[p + spec.alpha + 1][q + spec.beta + 1]
                for p in range(d1 - spec.alpha)
                for q in range(d2 - spec.beta)
            )
            out[(ix, iy)] = cof
    return out
