import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from braidbox.tensor import (
    OperatorSubspace, as_matrix, dagger, flip, full_matrix_space, kron, leg_permutation,
    max_residual, place_on_legs, span, subspace_equal, subspace_product, unitarity_residual,
)
from conftest import complex_matrices, haar, seeds

X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.diag([1.0, -1.0]).astype(complex)


def z2_unitary():
    # W(δ_g ⊗ δ_h) = δ_g ⊗ δ_{g+h}
    w = np.zeros((4, 4))
    for g in range(2):
        for h in range(2):
            w[2 * g + (g + h) % 2, 2 * g + h] = 1
    return w


class TestKron:
    def test_identities(self):
        assert np.array_equal(kron(np.eye(2), np.eye(3)), np.eye(6))

    def test_diagonal(self):
        assert np.array_equal(kron(Z, np.eye(2)), np.diag([1, 1, -1, -1]))

    @given(complex_matrices(2), complex_matrices(2, 3))
    def test_index_formula(self, a, b):
        k = kron(a, b)
        p, q = b.shape
        for i in range(2):
            for j in range(2):
                for r in range(p):
                    for s in range(q):
                        assert abs(k[i * p + r, j * q + s] - a[i, j] * b[r, s]) < 1e-14

    def test_empty_product_is_scalar_one(self):
        assert kron().shape == (1, 1)


class TestPlaceOnLegs:
    def test_adjacent_legs(self):
        w = z2_unitary()
        assert np.array_equal(place_on_legs(w, [2, 2, 2], [0, 1]), np.kron(w, np.eye(2)))

    def test_flip_inverse(self):
        s = flip(2, 2)
        assert np.allclose(place_on_legs(s, [2, 2], [1, 0]) @ place_on_legs(s, [2, 2], [0, 1]),
                           np.eye(4))

    def test_pentagon_z2(self):
        w = z2_unitary()
        sh = [2, 2, 2]
        w12, w13, w23 = (place_on_legs(w, sh, l) for l in ([0, 1], [0, 2], [1, 2]))
        assert max_residual(w23 @ w12, w12 @ w13 @ w23) == 0

    def test_permuted_order_is_conjugated_by_flip(self):
        a, b = X, Z @ X
        op = np.kron(a, b)
        assert np.allclose(place_on_legs(op, [2, 2], [1, 0]), np.kron(b, a))

    @pytest.mark.parametrize("legs", [[0, 0], [0, 3]])
    def test_bad_legs(self, legs):
        with pytest.raises(ValueError):
            place_on_legs(np.eye(4), [2, 2, 2], legs)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            place_on_legs(np.eye(3), [2, 2], [0])

    @given(complex_matrices(4), complex_matrices(4), st.sampled_from([[0, 2], [2, 0], [1, 2], [2, 1]]))
    def test_multiplicative(self, a, b, legs):
        sh = [2, 2, 2]
        pa, pb = place_on_legs(a, sh, legs), place_on_legs(b, sh, legs)
        assert max_residual(place_on_legs(a @ b, sh, legs), pa @ pb) < 1e-12

    @given(complex_matrices(4), complex_matrices(4))
    def test_disjoint_legs_commute(self, x, y):
        sh = [2, 2, 2, 2]
        x12, y34 = place_on_legs(x, sh, [0, 1]), place_on_legs(y, sh, [2, 3])
        assert max_residual(x12 @ y34, y34 @ x12) < 1e-12


class TestFlip:
    def test_scalar_leg(self):
        assert np.array_equal(flip(1, 3), np.eye(3))

    def test_basis(self):
        e01 = np.kron([1, 0], [0, 1])
        assert np.array_equal(flip(2, 2) @ e01, np.kron([0, 1], [1, 0]))

    def test_inverse_pair(self):
        assert np.array_equal(flip(2, 3) @ flip(3, 2), np.eye(6))

    @given(complex_matrices(2), complex_matrices(3))
    def test_conjugation_swaps(self, a, b):
        s = flip(2, 3)
        assert max_residual(s @ np.kron(a, b) @ dagger(s), np.kron(b, a)) < 1e-12

    def test_leg_permutation_rejects_non_permutation(self):
        with pytest.raises(ValueError):
            leg_permutation([2, 2], [0, 0])


class TestSpan:
    def test_duplicates_collapse(self):
        assert span([np.eye(2), np.eye(2)]).dim == 1

    def test_matrix_units(self):
        s = span(full_matrix_space(2).basis)
        assert s.dim == 4 and s.gram_residual() < 1e-12

    def test_group_algebra_z2(self):
        s = span([np.eye(2), X])
        assert s.dim == 2
        # closed and commutative
        prods = np.einsum("iab,jbc->ijac", s.basis, s.basis).reshape(-1, 2, 2)
        assert all(s.contains(p) for p in prods)
        assert max_residual(s.basis[0] @ s.basis[1], s.basis[1] @ s.basis[0]) < 1e-12

    def test_empty_needs_dimension(self):
        with pytest.raises(ValueError):
            span([])
        assert span([], 3).dim == 0

    @given(seeds, st.integers(1, 6))
    def test_idempotent(self, seed, k):
        gens = np.random.default_rng(seed).normal(size=(k, 3, 3))
        s = span(gens)
        assert subspace_equal(span(s.basis), s)[0]

    def test_no_implicit_star_closure(self):
        e12 = np.array([[0, 1], [0, 0]], dtype=complex)
        s = span([e12])
        assert s.dim == 1 and not s.contains(dagger(e12))


class TestProducts:
    def test_unit(self):
        x = span([X, Z])
        assert subspace_equal(subspace_product(x, span([np.eye(2)])), x)[0]

    def test_diag_times_offdiag(self):
        d = span([np.diag([1, 0]), np.diag([0, 1])])
        o = span([np.array([[0, 1], [0, 0]]), np.array([[0, 0], [1, 0]])])
        p = subspace_product(d, o)
        assert p.dim == 2 and subspace_equal(p, o)[0]

    def test_functions_times_group_algebra(self):
        d = span([np.diag([1, 0]), np.diag([0, 1])])
        g = span([np.eye(2), X])
        assert subspace_product(d, g).dim == 4

    def test_mismatch(self):
        with pytest.raises(ValueError):
            subspace_product(span([np.eye(2)]), span([np.eye(3)]))

    @given(seeds)
    def test_associative(self, seed):
        rng = np.random.default_rng(seed)
        x, y, z = (span(rng.normal(size=(2, 3, 3))) for _ in range(3))
        lhs = subspace_product(subspace_product(x, y), z)
        rhs = subspace_product(x, subspace_product(y, z))
        assert subspace_equal(lhs, rhs)[0]


class TestEquality:
    def test_reflexive(self):
        x = span([X, Z])
        ok, res = subspace_equal(x, x)
        assert ok and res < 1e-12

    def test_orthogonal(self):
        d = span([np.diag([1, 0]), np.diag([0, 1])])
        o = span([X, np.array([[0, 1], [-1, 0]])])
        ok, res = subspace_equal(d, o)
        assert not ok and res > 0.5

    def test_different_generators(self):
        assert subspace_equal(span([np.eye(2), X]), span([np.eye(2) + X, np.eye(2) - X]))[0]


class TestMatrices:
    def test_as_matrix_rejects_nan(self):
        with pytest.raises(ValueError):
            as_matrix([[np.nan]])

    def test_as_matrix_rejects_vectors(self):
        with pytest.raises(ValueError):
            as_matrix([1, 2])

    @given(seeds)
    def test_haar_unitarity(self, seed):
        assert unitarity_residual(haar(4, seed)) < 1e-12

    def test_subspace_basis_read_only(self):
        s = span([np.eye(2)])
        with pytest.raises(ValueError):
            s.basis[0, 0, 0] = 2

    def test_subspace_shape_checks(self):
        with pytest.raises(ValueError):
            OperatorSubspace(np.zeros((2, 2)))
