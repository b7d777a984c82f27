"""Exact rank, nullity, and kernels of matrices over the rationals.

Rank runs on integer rows: each row is scaled by its denominator lcm, then
elimination cross-multiplies rows and strips the gcd content after every
combination.  That keeps every intermediate value an exact integer of
modest size without ever touching floating point.  Kernel extraction uses
a plain Fraction Gauss-Jordan pass; it is only called on matrices small
enough that exactness matters more than speed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import MeshFormatError


@dataclass(frozen=True)
class RationalMatrix:
    entries: tuple[tuple[Fraction, ...], ...]
    rows: int
    cols: int

    @staticmethod
    def from_rows(rows, cols: int | None = None) -> "RationalMatrix":
        data = tuple(tuple(Fraction(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(row) != width for row in data):
                raise ValueError("ragged rows")
        else:
            width = 0
        if cols is None:
            cols = width
        elif data and cols != width:
            raise ValueError(f"declared {cols} cols but rows have {width}")
        return RationalMatrix(data, len(data), cols)

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i]

    def transpose(self) -> "RationalMatrix":
        flipped = tuple(
            tuple(self.entries[r][c] for r in range(self.rows))
            for c in range(self.cols)
        )
        return RationalMatrix(flipped, self.cols, self.rows)


def _integer_rows(m: RationalMatrix) -> list[list[int]]:
    out = []
    for row in m.entries:
        scale = lcm(*(x.denominator for x in row)) if row else 1
        ints = [int(x * scale) for x in row]
        content = 0
        for v in ints:
            content = gcd(content, v)
        if content > 1:
            ints = [v // content for v in ints]
        out.append(ints)
    return out


def rank(m: RationalMatrix) -> int:
    """Exact rank by integer elimination.

    Pivot choice is the first row with a nonzero entry in the current
    column, so the result and the intermediate values are deterministic.
    """
    rows = [r for r in _integer_rows(m) if any(r)]
    if not rows:
        return 0
    cols = m.cols
    pivot_row = 0
    for col in range(cols):
        pivot = None
        for i in range(pivot_row, len(rows)):
            if rows[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        rows[pivot_row], rows[pivot] = rows[pivot], rows[pivot_row]
        base = rows[pivot_row]
        head = base[col]
        for i in range(pivot_row + 1, len(rows)):
            factor = rows[i][col]
            if not factor:
                continue
            row = rows[i]
            combined = [head * a - factor * b for a, b in zip(row, base)]
            content = 0
            for v in combined:
                content = gcd(content, v)
            if content > 1:
                combined = [v // content for v in combined]
            rows[i] = combined
        pivot_row += 1
        if pivot_row == len(rows):
            break
    return pivot_row


def nullity(m: RationalMatrix) -> int:
    return m.cols - rank(m)


def null_space_basis(m: RationalMatrix) -> list[tuple[Fraction, ...]]:
    """Kernel basis via reduced row echelon form; one vector per free
    column, each satisfying ``m @ v == 0`` exactly."""
    rows = [list(row) for row in m.entries if any(row)]
    cols = m.cols
    pivots: list[int] = []
    r = 0
    for col in range(cols):
        pivot = None
        for i in range(r, len(rows)):
            if rows[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        head = rows[r][col]
        rows[r] = [x / head for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                factor = rows[i][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    free_cols = [c for c in range(cols) if c not in pivots]
    basis = []
    for free in free_cols:
        vec = [Fraction(0)] * cols
        vec[free] = Fraction(1)
        for i, col in enumerate(pivots):
            vec[col] = -rows[i][free]
        basis.append(tuple(vec))
    return basis


def mat_vec(m: RationalMatrix, vec) -> tuple[Fraction, ...]:
    if len(vec) != m.cols:
        raise ValueError("vector length does not match column count")
    return tuple(
        sum((row[c] * vec[c] for c in range(m.cols)), Fraction(0))
        for row in m.entries
    )


def dump_matrix(m: RationalMatrix) -> str:
    """Text form: header line ``rows cols``, then one row per line with
    entries as ``p/q`` (or bare integers) separated by spaces."""

    def fmt(x: Fraction) -> str:
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    lines = [f"{m.rows} {m.cols}"]
    lines.extend(" ".join(fmt(x) for x in row) for row in m.entries)
    return "\n".join(lines) + "\n"


def load_matrix(text: str) -> RationalMatrix:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise MeshFormatError("matrix dump is empty")
    try:
        nrows, ncols = (int(part) for part in lines[0].split())
    except ValueError as exc:
        raise MeshFormatError(f"bad matrix header: {lines[0]!r}") from exc
    if len(lines) - 1 != nrows:
        raise MeshFormatError(f"expected {nrows} rows, found {len(lines) - 1}")
    rows = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != ncols:
            raise MeshFormatError(f"expected {ncols} entries per row, got {len(parts)}")
        try:
            rows.append(tuple(Fraction(p) for p in parts))
        except (ValueError, ZeroDivisionError) as exc:
            raise MeshFormatError(f"bad matrix entry in {line!r}") from exc
    return RationalMatrix(tuple(rows), nrows, ncols)
