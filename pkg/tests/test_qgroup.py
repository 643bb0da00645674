import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from braidbox.qgroup import (
    NONASSOCIATIVE_LOOP, FiniteGroup, MultiplicativeUnitary, check_pentagon, cyclic_table,
    dual_quantum_group, generate_quantum_group, group_multiplicative_unitary,
    group_quantum_group, latin_square_unitary, symmetric_group_table,
)
from braidbox.tensor import dagger, flip, max_residual, span, subspace_equal

X = np.array([[0, 1], [1, 0]], dtype=complex)
TOL = 1e-9


class TestFiniteGroup:
    def test_cyclic(self):
        g = FiniteGroup(cyclic_table(4))
        assert g.identity == 0 and g.inverse(1) == 3 and g.is_abelian

    def test_symmetric_is_nonabelian(self):
        g = FiniteGroup(symmetric_group_table(3))
        assert g.order == 6 and not g.is_abelian

    def test_quasigroup_without_identity(self):
        table = [[(-x - y) % 4 for y in range(4)] for x in range(4)]
        with pytest.raises(ValueError, match="invalid group table"):
            FiniteGroup(table)

    def test_nonassociative_loop(self):
        with pytest.raises(ValueError, match="invalid group table: not associative"):
            FiniteGroup(NONASSOCIATIVE_LOOP)

    @pytest.mark.parametrize("table", [[[0, 1], [1, 2]], [[0, 1, 2], [1, 0, 2]], [[0.5]]])
    def test_malformed(self, table):
        with pytest.raises(ValueError, match="invalid group table"):
            FiniteGroup(table)

    def test_missing_identity_message(self):
        with pytest.raises(ValueError, match="no identity element"):
            FiniteGroup([[0, 2, 1], [2, 1, 0], [1, 0, 2]])

    @given(st.integers(2, 6), st.randoms(use_true_random=False))
    def test_relabelled_cyclic_group_is_valid(self, n, rnd):
        perm = list(range(n))
        rnd.shuffle(perm)
        inv = np.argsort(perm)
        base = np.array(cyclic_table(n))
        table = [[perm[base[inv[a], inv[b]]] for b in range(n)] for a in range(n)]
        g = FiniteGroup(table)
        assert g.identity == perm[0]
        w = group_multiplicative_unitary(g)
        assert w.pentagon_residual == 0


class TestMultiplicativeUnitary:
    def test_z2_is_permutation(self):
        w = group_multiplicative_unitary(cyclic_table(2)).w
        assert w.shape == (4, 4)
        assert np.array_equal(np.abs(w) ** 2 @ np.ones(4), np.ones(4))
        assert check_pentagon(w, 2) == 0

    def test_s3(self):
        w = group_multiplicative_unitary(symmetric_group_table(3)).w
        assert w.shape == (36, 36) and check_pentagon(w, 6) == 0

    def test_formula(self):
        g = FiniteGroup(symmetric_group_table(3))
        w = group_multiplicative_unitary(g).w
        for a, b in itertools.product(range(6), repeat=2):
            assert w[a * 6 + g.mul(a, b), a * 6 + b] == 1

    def test_adjoint_of_nonabelian_is_not_multiplicative(self):
        w = group_multiplicative_unitary(symmetric_group_table(3)).w
        assert check_pentagon(dagger(w), 6) > 0.5

    def test_identity(self):
        assert check_pentagon(np.eye(9), 3) == 0

    def test_size_check(self):
        with pytest.raises(ValueError):
            check_pentagon(np.eye(5), 2)

    def test_rejects_nonpentagon(self):
        with pytest.raises(ValueError, match="pentagon"):
            MultiplicativeUnitary(latin_square_unitary(NONASSOCIATIVE_LOOP))

    def test_loop_control(self):
        assert check_pentagon(latin_square_unitary(NONASSOCIATIVE_LOOP), 5) == pytest.approx(1.0)

    def test_latin_square_rows(self):
        with pytest.raises(ValueError):
            latin_square_unitary([[0, 0], [1, 1]])


class TestQuantumGroup:
    def test_z2_slices(self, groups):
        qg = groups["Z2"]
        assert qg.dim == 2 and qg.dual_algebra.dim == 2
        assert subspace_equal(qg.algebra.space, span([np.eye(2), X]))[0]
        assert subspace_equal(qg.dual_algebra.space, span([np.diag([1, 0]), np.diag([0, 1])]))[0]

    @pytest.mark.parametrize("a,b", [(1, 0), (0, 1), (2, -3), (1j, 0.5)])
    def test_z2_counit(self, groups, a, b):
        qg = groups["Z2"]
        assert qg.counit_value(a * np.eye(2) + b * X) == pytest.approx(a + b)

    def test_s3_dimensions(self, groups):
        assert groups["S3"].dim == 6 and groups["S3"].dual_algebra.dim == 6

    def test_dual_swaps_algebras(self, groups):
        qg = groups["Z2"]
        d = qg.dual
        assert d.side == "function-algebra"
        assert subspace_equal(d.algebra.space, qg.dual_algebra.space)[0]
        assert subspace_equal(d.dual_algebra.space, qg.algebra.space)[0]
        s = flip(2, 2)
        assert max_residual(d.matrix, s @ dagger(qg.matrix) @ s) == 0

    def test_double_dual(self, groups):
        qg = groups["S3"]
        w = qg.w.dual().dual().w
        assert max_residual(w, qg.matrix) == 0
        assert dual_quantum_group(dual_quantum_group(qg)) is qg

    def test_dual_characterization_z3(self, groups):
        assert groups["Z3"].characterization_residual() < TOL

    @pytest.mark.parametrize("name", ["Z2", "Z3", "Z4", "S3"])
    @pytest.mark.parametrize("dual", [False, True])
    def test_invariants(self, groups, name, dual):
        qg = groups[name]
        n = qg.h0
        tol = TOL * n**3
        assert qg.coassociativity_residual(dual) < tol
        assert max(qg.podles_residuals(dual)) < tol
        assert qg.counit_residual(dual) < tol
        comult = qg.dual_comult if dual else qg.comult
        assert comult.multiplicativity_residual() < tol
        assert comult.star_residual() < tol
        assert qg.membership_residual() < tol

    @pytest.mark.parametrize("name", ["Z3", "S3"])
    def test_counit_is_character(self, groups, name):
        qg = groups[name]
        basis = qg.algebra.basis
        for a, b in itertools.product(basis, repeat=2):
            assert qg.counit_value(a @ b) == pytest.approx(qg.counit_value(a) * qg.counit_value(b))
        assert qg.counit_value(np.eye(qg.h0)) == pytest.approx(1)
        for a in basis:
            assert qg.counit_value(dagger(a)) == pytest.approx(np.conj(qg.counit_value(a)))

    def test_comultiplication_is_group_law(self, groups):
        qg = groups["S3"]
        g = qg.group
        for a in range(6):
            lam = qg.group_element(a)
            assert max_residual(qg.comult_operator(lam), np.kron(lam, lam)) == 0

    def test_function_side_comultiplication(self, groups):
        # the dual unitary induces the opposite law: Δ(δ_z) = Σ_{yx=z} δ_x ⊗ δ_y
        qg = groups["S3"].dual
        g = qg.group
        for z in range(6):
            want = sum(np.kron(g.indicator(x), g.indicator(y))
                       for x in range(6) for y in range(6) if g.mul(y, x) == z)
            assert max_residual(qg.comult_operator(g.indicator(z)), want) < 1e-12

    def test_unknown_side(self):
        with pytest.raises(ValueError):
            group_quantum_group(cyclic_table(2), side="both")

    def test_generate_from_identity_unitary(self):
        qg = generate_quantum_group(MultiplicativeUnitary(np.eye(4), 2))
        assert qg.dim == 1 and qg.counit_residual() < TOL
