"""Direct per-face dimension oracle and the cofactor extraction bridge.

The oracle never touches the conformality assembler: it writes one row per
matched derivative on each shared edge and counts surviving coefficients.
That independence is what makes agreement between the two routes evidence
rather than tautology.
"""

from __future__ import annotations

from fractions import Fraction

import pytest

from conftest import single_ledge_mesh
from tmeshdim import (
    InvalidMeshError,
    RationalMatrix,
    SplineSpaceSpec,
    TMesh,
    assemble_conformality,
    build_smoothness_system,
    dim_direct,
    null_space_basis,
    nullity,
    rank,
    vertex_cofactors_of_solution,
)
from tmeshdim.generate import pinwheel_counterexample
from tmeshdim.meshes import tensor_mesh
from tmeshdim.oracle import shift_bivariate
from tmeshdim.rational_linalg import mat_vec


def test_single_face_space_is_unconstrained():
    mesh = TMesh((0, 1), (0, 1), ((0, 1, 0, 1),))
    for spec in (SplineSpaceSpec(1, 1, 0, 0), SplineSpaceSpec(3, 2, 2, 1)):
        system = build_smoothness_system(mesh, spec)
        assert system.matrix.rows == 0
        assert system.unknowns == (spec.d1 + 1) * (spec.d2 + 1)
        assert dim_direct(mesh, spec) == system.unknowns


def test_bilinear_continuous_patchwork():
    mesh = tensor_mesh(2, 2)
    spec = SplineSpaceSpec(1, 1, 0, 0)
    system = build_smoothness_system(mesh, spec)
    assert system.unknowns == 16
    assert system.matrix.rows == 8
    assert dim_direct(mesh, spec) == 9


@pytest.mark.parametrize("m, n", [(1, 3), (2, 2), (3, 2)])
@pytest.mark.parametrize(
    "spec",
    [
        SplineSpaceSpec(1, 1, 0, 0),
        SplineSpaceSpec(2, 2, 1, 1),
        SplineSpaceSpec(3, 2, 1, 0),
    ],
)
def test_oracle_reproduces_tensor_product_dimension(m, n, spec):
    mesh = tensor_mesh(m, n)
    v_cross = m - 1
    h_cross = n - 1
    expected = (spec.d1 + 1 + v_cross * (spec.d1 - spec.alpha)) * (
        spec.d2 + 1 + h_cross * (spec.d2 - spec.beta)
    )
    assert dim_direct(mesh, spec) == expected


def test_oracle_requires_a_valid_mesh():
    broken = TMesh((0, 1, 2, 3), (0, 1), ((0, 1, 0, 1), (2, 3, 0, 1)))
    with pytest.raises(InvalidMeshError):
        dim_direct(broken, SplineSpaceSpec(1, 1, 0, 0))


def test_oracle_handles_the_pinwheel():
    assert dim_direct(pinwheel_counterexample(), SplineSpaceSpec(3, 3, 2, 2)) == 49


def test_shift_bivariate_expands_correctly():
    # P(x, y) = x^2 y  shifted by (1, 2):  (x+1)^2 (y+2).
    coeffs = [[Fraction(0)] * 2 for _ in range(3)]
    coeffs[2][1] = Fraction(1)
    shifted = shift_bivariate(coeffs, Fraction(1), Fraction(2))
    expect = [
        [Fraction(2), Fraction(1)],
        [Fraction(4), Fraction(2)],
        [Fraction(2), Fraction(1)],
    ]
    assert shifted == expect


def test_shift_bivariate_round_trips():
    coeffs = [
        [Fraction(3), Fraction(-1), Fraction(2)],
        [Fraction(0), Fraction(5), Fraction(7, 2)],
    ]
    there = shift_bivariate(coeffs, Fraction(4, 3), Fraction(-2))
    back = shift_bivariate(there, Fraction(-4, 3), Fraction(2))
    assert back == coeffs


def test_solution_cofactors_solve_the_conformality_system():
    mesh = single_ledge_mesh(5)
    spec = SplineSpaceSpec(3, 3, 2, 2)
    smooth = build_smoothness_system(mesh, spec)
    conf = assemble_conformality(mesh, spec)
    conf_matrix = conf.matrix()
    per_vertex = (spec.d1 - spec.alpha) * (spec.d2 - spec.beta)
    images = []
    for solution in null_space_basis(smooth.matrix):
        cofactors = vertex_cofactors_of_solution(mesh, spec, solution)
        zero = (Fraction(0),) * per_vertex
        vector = tuple(
            cofactors.get(point, zero)[p * (spec.d2 - spec.beta) + q]
            for point, p, q in conf.col_index
        )
        assert mat_vec(conf_matrix, vector) == (Fraction(0),) * conf.rows
        images.append(vector)
    image_rank = rank(RationalMatrix.from_rows(images, cols=conf.cols))
    assert image_rank == nullity(conf_matrix)


def test_non_smooth_coefficients_fail_the_divisibility_check():
    mesh = tensor_mesh(2, 2)
    spec = SplineSpaceSpec(1, 1, 0, 0)
    system = build_smoothness_system(mesh, spec)
    bogus = [Fraction(0)] * system.unknowns
    bogus[0] = Fraction(1)
    with pytest.raises(AssertionError):
        vertex_cofactors_of_solution(mesh, spec, bogus)
