import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from braidbox.algebra import (
    LinearMap, StarRepresentation, center_dimension, clifford_one, diagonal_algebra,
    full_matrix_algebra, generate_algebra, scalars, tensor_algebra, tensor_coords,
    tensor_operator, wedderburn_blocks,
)
from braidbox.tensor import max_residual

from conftest import complex_matrices

TOL = 1e-9
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SZ = np.diag([1.0, -1.0]).astype(complex)


class TestConstructors:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_full_matrix_dims(self, n):
        alg = full_matrix_algebra(n)
        assert alg.dim == n * n and alg.ambient_dim == n
        assert center_dimension(alg) == 1

    def test_diagonal_commutative(self):
        alg = diagonal_algebra(4)
        assert alg.dim == 4 and center_dimension(alg) == 4
        assert wedderburn_blocks(alg) == [1, 1, 1, 1]

    def test_scalars(self):
        alg = scalars()
        assert alg.dim == 1 and alg.is_unital

    def test_clifford_one(self):
        alg = clifford_one()
        assert alg.dim == 2 and center_dimension(alg) == 2
        assert alg.contains(SX) and not alg.contains(SZ)
        assert alg.closure_residual() < TOL

    def test_unit_coordinates(self):
        alg = clifford_one()
        assert max_residual(alg.element(alg.unit), np.eye(2)) < TOL


class TestGenerate:
    def test_pauli_generate_m2(self):
        alg = generate_algebra([SX, SZ])
        assert alg.dim == 4 and wedderburn_blocks(alg) == [2]

    def test_single_diagonal_generator(self):
        alg = generate_algebra([np.diag([1, 2, 2]).astype(complex)])
        assert alg.dim == 2 and wedderburn_blocks(alg) == [1, 1]

    def test_non_unital(self):
        p = np.diag([1, 0]).astype(complex)
        assert generate_algebra([p], unital=False).dim == 1

    def test_block_structure(self):
        gens = [np.kron(np.diag([1, 0]), SX) + np.kron(np.diag([0, 1]), np.zeros((2, 2))),
                np.kron(np.diag([1, 0]), SZ)]
        alg = generate_algebra(gens)
        assert wedderburn_blocks(alg) == [1, 2]
        assert center_dimension(alg) == 2

    def test_needs_something(self):
        with pytest.raises(ValueError):
            generate_algebra([])

    @given(complex_matrices(3))
    def test_closure_holds(self, x):
        alg = generate_algebra([x])
        assert alg.closure_residual() < 1e-8


class TestTensor:
    def test_dims_multiply(self):
        t = tensor_algebra(clifford_one(), full_matrix_algebra(2))
        assert t.dim == 8 and t.ambient_dim == 4
        assert center_dimension(t) == 2

    def test_mult_table_matches_matrices(self):
        t = tensor_algebra(clifford_one(), diagonal_algebra(2))
        b = t.basis
        want = np.einsum("iab,jbc->ijac", b, b)
        got = np.einsum("ijk,kac->ijac", t.mult, b)
        assert max_residual(want, got) < TOL

    def test_coords_roundtrip(self):
        algs = (clifford_one(), diagonal_algebra(2))
        rng = np.random.default_rng(1)
        c = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        op = tensor_operator(c, algs)
        back, resid = tensor_coords(op, algs)
        assert resid < TOL and max_residual(back, c) < TOL

    def test_coords_residual_outside(self):
        algs = (clifford_one(), diagonal_algebra(2))
        _, resid = tensor_coords(np.kron(SZ, np.eye(2)), algs)
        assert resid > 0.5


class TestMaps:
    def test_identity_map_is_star_hom(self):
        alg = full_matrix_algebra(2)
        f = LinearMap(alg, (alg,), np.eye(4))
        assert f.is_injective() and f.multiplicativity_residual() < TOL
        assert f.star_residual() < TOL

    def test_transpose_is_not_multiplicative(self):
        alg = full_matrix_algebra(2)
        coeffs, _ = tensor_coords(np.stack([b.T for b in alg.basis]), (alg,))
        f = LinearMap(alg, (alg,), coeffs)
        assert f.multiplicativity_residual() > 0.1

    def test_representation_inclusion(self):
        alg = clifford_one()
        rep = StarRepresentation(alg, alg.basis)
        assert rep.is_injective() and rep.multiplicativity_residual() < TOL
        assert rep.star_residual() < TOL

    def test_zero_rep_not_injective(self):
        alg = clifford_one()
        rep = StarRepresentation(alg, np.zeros((2, 1, 1)))
        assert not rep.is_injective()


@given(st.lists(st.integers(1, 3), min_size=1, max_size=3))
def test_block_diagonal_algebras(sizes):
    n = sum(sizes)
    gens = []
    start = 0
    for k in sizes:
        for i in range(k):
            for j in range(k):
                e = np.zeros((n, n), dtype=complex)
                e[start + i, start + j] = 1
                gens.append(e)
        start += k
    alg = generate_algebra(gens)
    assert alg.dim == sum(k * k for k in sizes)
    assert wedderburn_blocks(alg) == sorted(sizes)
    assert center_dimension(alg) == len(sizes)
