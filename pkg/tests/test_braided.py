import numpy as np
import pytest

from braidbox.algebra import clifford_one, diagonal_algebra, scalars
from braidbox.bicharacter import koszul_rmatrix
from braidbox.braided import (
    BraidedBialgebra, action_corepresentation, action_yd, check_braided_bialgebra,
    degenerate_bialgebra, group_function_bialgebra, group_law_from_comultiplication,
    partial_dual, psi_map, psi_route_residual, scalar_braided_bialgebra, semidirect,
    triple_product, trivial_yd,
)
from braidbox.coaction import spatial_coaction
from braidbox.corep import grading_corepresentation, grading_projections
from braidbox.qgroup import FiniteGroup, cyclic_table
from braidbox.tensor import max_residual
from braidbox.yd import check_yd, induce_yd_from_rmatrix

TOL = 1e-9
INVERSION = [[0, 1, 2], [0, 2, 1]]  # Z/2 acting on Z/3 by k ↦ -k


@pytest.fixture
def clifford_yd(groups):
    z2 = groups["Z2"]
    u = grading_corepresentation(z2, grading_projections([0, 1], 2))
    return induce_yd_from_rmatrix(koszul_rmatrix(z2), spatial_coaction(clifford_one(), u))


@pytest.fixture(scope="module")
def partial_duals():
    from braidbox import group_quantum_group

    z2 = group_quantum_group(cyclic_table(2), name="Z2")
    return {"group": partial_dual(z2, cyclic_table(3), INVERSION),
            "function": partial_dual(z2.dual, cyclic_table(3), INVERSION)}


class TestTripleProduct:
    def test_scalars_give_a(self, groups):
        one = trivial_yd(scalars(), groups["Z2"])
        assert triple_product(groups["Z2"], one, one).dim == 2

    def test_clifford(self, groups, clifford_yd):
        t = triple_product(groups["Z2"], clifford_yd, clifford_yd)
        assert t.dim == 8
        rep = t.coaction_report()
        for part in ("a_coaction", "dual_coaction"):
            assert rep[part]["injective"] and rep[part]["comodule"] < TOL
        assert rep["a_coaction"]["podles"] < TOL
        assert rep["compatibility"] < TOL
        assert t.z_residual < TOL and t.associator_residual() < TOL

    def test_action(self, groups):
        yd = action_yd(groups["Z2"], INVERSION)
        t = triple_product(groups["Z2"], yd, yd)
        assert t.dim == 18 and t.closure_residual() < TOL
        assert t.pair_consistency() < TOL


class TestPsi:
    @pytest.mark.parametrize("which", ["clifford", "action"])
    def test_identities(self, groups, clifford_yd, which):
        z2 = groups["Z2"]
        yd = clifford_yd if which == "clifford" else action_yd(z2, INVERSION)
        ps = psi_map(triple_product(z2, yd, yd))
        assert max(ps.identity_residuals) < TOL
        assert ps.injective and ps.escape < TOL

    def test_trivial_beta(self, groups):
        # with β trivial, Ψι_B(b) = ι_B(b) ⊗ 1
        z2 = groups["Z2"]
        yd = trivial_yd(diagonal_algebra(2), z2)
        t = triple_product(z2, yd, yd)
        ps = psi_map(t)
        assert ps.identity_residuals[1] < TOL

    @pytest.mark.parametrize("which", ["clifford", "action"])
    def test_route(self, groups, clifford_yd, which):
        z2 = groups["Z2"]
        yd = clifford_yd if which == "clifford" else action_yd(z2, INVERSION)
        assert psi_route_residual(z2, yd) < TOL


class TestBraidedBialgebra:
    def test_scalar(self, groups):
        rep = check_braided_bialgebra(scalar_braided_bialgebra(groups["Z3"]))
        assert rep.passed(TOL) and rep.bisimplifiable(TOL) and rep.unital

    def test_group_functions(self, groups):
        yd = action_yd(groups["Z2"], INVERSION)
        assert check_yd(yd) < TOL
        rep = check_braided_bialgebra(group_function_bialgebra(yd, cyclic_table(3)))
        assert rep.passed(TOL) and rep.bisimplifiable(TOL) and rep.injective

    def test_corrupted(self, groups):
        yd = action_yd(groups["Z2"], INVERSION)
        bb = group_function_bialgebra(yd, cyclic_table(3)).corrupted()
        assert check_braided_bialgebra(bb).coassociativity > 0.05

    def test_degenerate(self, groups):
        rep = check_braided_bialgebra(degenerate_bialgebra(groups["Z3"]))
        assert rep.passed(TOL)
        assert rep.podles_left > 0.5 and rep.podles_right > 0.5

    def test_size_mismatch(self, groups):
        yd = action_yd(groups["Z2"], INVERSION)
        with pytest.raises(ValueError):
            group_function_bialgebra(yd, cyclic_table(2))

    def test_comult_outside_product(self, groups):
        yd = action_yd(groups["Z2"], INVERSION)
        with pytest.raises(ValueError, match="leaves"):
            BraidedBialgebra.from_operator(yd, lambda i1, i2, x: np.ones((9, 9)))


class TestActions:
    def test_orientation_fixed_by_law(self, groups):
        u = action_corepresentation(groups["S3"].dual, [[0, 1, 2]] * 6)
        assert u.law_residual() < TOL

    def test_needs_function_side(self, groups):
        with pytest.raises(ValueError):
            action_corepresentation(groups["Z2"], INVERSION)

    def test_not_an_action(self, groups):
        # Z/3 cannot act on three points through a transposition
        with pytest.raises(ValueError):
            action_corepresentation(groups["Z3"].dual, [[0, 1, 2], [1, 0, 2], [0, 1, 2]])


class TestSemidirect:
    def test_scalar_recovers_a(self, groups):
        sd = semidirect(groups["Z3"], scalar_braided_bialgebra(groups["Z3"]))
        assert sd.dim == 3 and sd.matches_comultiplication() < TOL
        assert sd.is_compact_quantum_group()

    def test_partial_dual_group_side(self, partial_duals):
        sd = partial_duals["group"]
        assert sd.dim == 6 and sd.blocks() == [1, 1, 2]
        assert sd.coassociativity_residual() < TOL
        assert max(sd.podles_residuals()) < TOL
        assert sd.is_injective() and sd.is_compact_quantum_group()
        assert sd.intertwining_residual() < TOL

    def test_partial_dual_function_side(self, partial_duals):
        sd = partial_duals["function"]
        assert sd.dim == 6 and sd.center_dimension() == 6
        assert sd.is_compact_quantum_group()
        law = FiniteGroup(group_law_from_comultiplication(sd))
        assert law.order == 6 and not law.is_abelian

    def test_variants_differ(self, partial_duals):
        g, f = partial_duals["group"], partial_duals["function"]
        assert g.dim == f.dim == 6
        assert g.center_dimension() != f.center_dimension()

    def test_trivial_action_gives_product_group(self, groups):
        sd = partial_dual(groups["Z2"].dual, cyclic_table(3), [[0, 1, 2], [0, 1, 2]])
        law = FiniteGroup(group_law_from_comultiplication(sd))
        assert law.order == 6 and law.is_abelian

    def test_degenerate_fails_only_podles(self, groups):
        sd = semidirect(groups["Z3"], degenerate_bialgebra(groups["Z3"]))
        assert sd.coassociativity_residual() < TOL and sd.is_injective()
        assert min(sd.podles_residuals()) > 0.5
        assert not sd.is_compact_quantum_group()
        assert sd.comult_unit_residual() > 0.5

    def test_injectivity_matches(self, partial_duals):
        for sd in partial_duals.values():
            assert sd.is_injective() == sd.braided.comult.is_injective()

    def test_wrong_quantum_group(self, groups):
        with pytest.raises(ValueError):
            semidirect(groups["Z2"], scalar_braided_bialgebra(groups["Z3"]))
