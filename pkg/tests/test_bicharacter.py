import numpy as np
import pytest
from hypothesis import given

from braidbox.algebra import clifford_one
from braidbox.bicharacter import (
    Bicharacter, bicharacter_from_pairing, bicharacter_laws, check_antisymmetric,
    check_counit_compat, check_rmatrix, check_yang_baxter, cyclic_pairing, dual_bicharacter,
    induced_coaction, koszul_rmatrix, random_unitary, right_morphism_from_bicharacter,
    trivial_bicharacter, w_bicharacter,
)
from braidbox.coaction import comultiplication_coaction, spatial_coaction
from braidbox.corep import grading_corepresentation, grading_projections
from braidbox.tensor import max_residual
from conftest import seeds

TOL = 1e-9


@pytest.fixture(scope="module")
def z4r(groups):
    return bicharacter_from_pairing(groups["Z4"], cyclic_pairing(4))


class TestPairings:
    def test_koszul(self, groups):
        r = koszul_rmatrix(groups["Z2"])
        assert np.array_equal(r.chi, np.diag([1, 1, 1, -1]))

    def test_trivial_pairing(self, groups):
        r = bicharacter_from_pairing(groups["Z2"], np.ones((2, 2)))
        assert np.array_equal(r.chi, np.eye(4))

    def test_z4(self, z4r):
        want = np.diag([1j ** (x * y) for x in range(4) for y in range(4)])
        assert max_residual(z4r.chi, want) < 1e-15

    def test_nonabelian_rejected(self, groups):
        with pytest.raises(ValueError, match="abelian"):
            bicharacter_from_pairing(groups["S3"], np.ones((6, 6)))

    def test_non_homomorphism_rejected(self, groups):
        p = np.ones((3, 3), dtype=complex)
        p[1, 1] = -1
        with pytest.raises(ValueError):
            bicharacter_from_pairing(groups["Z3"], p)

    def test_function_side_rejected(self, groups):
        with pytest.raises(ValueError):
            bicharacter_from_pairing(groups["Z2"].dual, cyclic_pairing(2))

    @pytest.mark.parametrize("n,k", [(2, 1), (3, 1), (3, 2), (4, 1), (4, 2)])
    def test_laws(self, groups, n, k):
        qg = groups[f"Z{n}"]
        r = bicharacter_from_pairing(qg, cyclic_pairing(n, k))
        assert max(bicharacter_laws(qg, qg, r.chi)) < TOL

    def test_constructor_rejects_violators(self, groups):
        qg = groups["Z2"]
        with pytest.raises(ValueError, match="not a bicharacter"):
            Bicharacter(qg, qg, np.diag([1, 1, 1, 1j]))
        with pytest.raises(ValueError):
            Bicharacter(qg, qg, np.eye(3))

    def test_w_is_bicharacter(self, groups):
        for name in ("Z3", "S3"):
            assert w_bicharacter(groups[name]).problems() == []


class TestRMatrix:
    @pytest.mark.parametrize("n,k", [(2, 1), (3, 1), (4, 1), (4, 3)])
    def test_diagonal_abelian(self, groups, n, k):
        r = bicharacter_from_pairing(groups[f"Z{n}"], cyclic_pairing(n, k))
        res = check_rmatrix(r)
        assert res["equivariance"] < TOL and res["equivalent_form"] < TOL

    def test_identity_in_function_algebra_tensor_square(self, groups):
        # R = 1 in C(S3) ⊗ C(S3): fails because σ∘Δ ≠ Δ on C(S3)
        qg = groups["S3"]
        assert qg.dual_algebra.dim == 6 and qg.side == "group-algebra"
        res = check_rmatrix(trivial_bicharacter(qg))
        assert res["equivariance"] > 0.5 and res["equivalent_form"] > 0.5

    def test_identity_in_group_algebra_tensor_square(self, groups):
        # C[S3] is cocommutative, so R = 1 is an R-matrix there
        res = check_rmatrix(trivial_bicharacter(groups["S3"].dual))
        assert res["equivariance"] < TOL and res["equivalent_form"] < TOL

    @given(seeds)
    def test_criteria_agree_on_random_unitaries(self, groups, seed):
        qg = groups["S3"]
        u = random_unitary(36, np.random.default_rng(seed))
        res = check_rmatrix(Bicharacter(qg, qg, u, validate=False))
        assert res["equivariance"] > 1e-3 and res["equivalent_form"] > 1e-3


class TestDual:
    def test_koszul_self_dual(self, groups):
        r = koszul_rmatrix(groups["Z2"])
        assert np.array_equal(dual_bicharacter(r).chi, r.chi)

    def test_involution(self, z4r):
        assert max_residual(dual_bicharacter(dual_bicharacter(z4r)).chi, z4r.chi) == 0

    def test_z4_formula(self, z4r):
        d = dual_bicharacter(z4r)
        want = np.diag([1j ** (-(y * x)) for y in range(4) for x in range(4)])
        assert max_residual(d.chi, want) < 1e-15
        res = check_rmatrix(d)
        assert max(res.values()) < TOL

    def test_dual_of_w(self, groups):
        d = dual_bicharacter(w_bicharacter(groups["S3"]))
        assert d.problems() == []


class TestYangBaxterAndCounit:
    def test_yang_baxter(self, groups, z4r):
        assert check_yang_baxter(koszul_rmatrix(groups["Z2"])) == 0
        assert check_yang_baxter(z4r) < TOL

    @given(seeds)
    def test_random_unitary_fails(self, groups, seed):
        qg = groups["Z2"]
        u = random_unitary(4, np.random.default_rng(seed))
        assert check_yang_baxter(Bicharacter(qg, qg, u, validate=False)) > 1e-6

    def test_counit(self, groups, z4r):
        for r in (koszul_rmatrix(groups["Z2"]), trivial_bicharacter(groups["Z3"]), z4r):
            a, b = check_counit_compat(r)
            assert a < TOL and b < TOL


class TestAntisymmetry:
    def test_koszul(self, groups):
        ok, res = check_antisymmetric(koszul_rmatrix(groups["Z2"]))
        assert ok and res == 0

    def test_z4(self, z4r):
        ok, res = check_antisymmetric(z4r)
        assert not ok and res > 1

    def test_identity(self, groups):
        assert check_antisymmetric(trivial_bicharacter(groups["Z3"]))[0]


class TestRightMorphism:
    def test_trivial(self, groups):
        qg = groups["Z3"]
        m = right_morphism_from_bicharacter(trivial_bicharacter(qg))
        unit = qg.dual_algebra.unit
        want = np.einsum("ij,b->ijb", np.eye(qg.dim), unit)
        assert max_residual(m.coeffs, want) < TOL

    @pytest.mark.parametrize("name", ["Z3", "S3"])
    def test_w_gives_comultiplication(self, groups, name):
        qg = groups[name]
        m = right_morphism_from_bicharacter(w_bicharacter(qg))
        assert max_residual(m.coeffs, qg.comult.coeffs) < TOL

    def test_koszul_squares_and_round_trip(self, groups):
        m = right_morphism_from_bicharacter(koszul_rmatrix(groups["Z2"]))
        assert max(m.square_residuals()) < TOL
        assert m.round_trip_residual() < TOL
        assert m.map.multiplicativity_residual() < TOL

    def test_koszul_twist(self, groups):
        # Δ_R(λ) = λ ⊗ (character of λ), the sign function on Z/2
        qg = groups["Z2"]
        m = right_morphism_from_bicharacter(koszul_rmatrix(qg))
        lam = qg.group_element(1)
        x = qg.algebra.coords(lam)
        coeffs = np.einsum("i,ijb->jb", x, m.coeffs)
        op = np.einsum("jb,jpq,bst->psqt", coeffs, qg.algebra.basis, qg.dual_algebra.basis)
        assert max_residual(op.reshape(4, 4), np.kron(lam, np.diag([1, -1]))) < TOL


class TestInducedCoaction:
    def test_trivial(self, groups):
        qg = groups["Z2"]
        cl = spatial_coaction(clifford_one(),
                              grading_corepresentation(qg, grading_projections([0, 1], 2)))
        d = induced_coaction(trivial_bicharacter(qg), cl)
        ops = d.basis_operators()
        want = np.stack([np.kron(b, np.eye(2)) for b in cl.algebra.basis])
        assert max_residual(ops, want) < TOL

    @pytest.mark.parametrize("which", ["koszul", "w"])
    def test_comultiplication_gives_right_morphism(self, groups, which):
        qg = groups["Z2"]
        chi = koszul_rmatrix(qg) if which == "koszul" else w_bicharacter(qg)
        d = induced_coaction(chi, comultiplication_coaction(qg))
        m = right_morphism_from_bicharacter(chi)
        assert max_residual(d.coeffs, m.coeffs) < TOL

    def test_clifford_koszul_is_parity_action(self, groups):
        qg = groups["Z2"]
        cl = spatial_coaction(clifford_one(),
                              grading_corepresentation(qg, grading_projections([0, 1], 2)))
        d = induced_coaction(koszul_rmatrix(qg), cl)
        assert d.report.passed(8)
        z = np.diag([1.0, -1.0])
        acting = d.qg
        assert acting.side == "function-algebra"
        want = np.stack([np.kron(b, acting.group.indicator(0)) + np.kron(z @ b @ z, acting.group.indicator(1))
                         for b in cl.algebra.basis])
        assert max_residual(d.basis_operators(), want) < TOL
