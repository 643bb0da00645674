"""Corepresentations, their tensor products, and braiding unitaries.

A corepresentation of ``(A, Δ)`` on ``H`` is a unitary ``U`` in ``B(H) ⊗ A``
with ``(id ⊗ Δ)U = U12 U13``.  It corresponds to a representation ``ρ`` of
``Â`` with ``(ρ ⊗ id)W = U``.  Given an R-matrix ``R ∈ Â ⊗ Â`` the braiding
between two corepresentations is ``c = (ρ2 ⊗ ρ1)(R*) Σ``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .algebra import StarRepresentation, tensor_coords
from .config import tau
from .qgroup import QuantumGroup
from .tensor import dagger, flip, kron, max_residual, place_on_legs, unitarity_residual

__all__ = [
    "Corepresentation",
    "BraidingUnitary",
    "trivial_corep",
    "regular_corep",
    "grading_corepresentation",
    "grading_projections",
    "graded_braiding",
    "tensor_corep",
    "check_intertwiner",
    "rep_from_corep",
    "apply_rep_tensor",
    "braiding_unitary",
    "check_hexagons",
    "check_symmetry",
    "SymmetryVerdict",
]


class Corepresentation:
    """Unitary ``U ∈ B(H) ⊗ A`` satisfying the corepresentation law.

    Parameters
    ----------
    qg : QuantumGroup
    u : array_like
        Matrix on ``H ⊗ H0``.
    check : bool
        Verify unitarity, membership and the law on construction.
    """

    def __init__(self, qg: QuantumGroup, u, check: bool = True, name: str = ""):
        u = np.asarray(u, dtype=np.complex128)
        n = qg.h0
        if u.shape[0] != u.shape[1] or u.shape[0] % n:
            raise ValueError("corepresentation must act on H ⊗ H0")
        u.setflags(write=False)
        self.qg = qg
        self.u = u
        self.hilbert_dim = u.shape[0] // n
        self.name = name
        if check:
            r = self.unitarity_residual()
            if r > tau(u.shape[0]):
                raise ValueError(f"corepresentation is not unitary (residual {r:.2e})")
            r = self.membership_residual()
            if r > tau(u.shape[0]):
                raise ValueError(f"corepresentation does not lie in B(H)⊗A (residual {r:.2e})")
            r = self.law_residual()
            if r > tau(u.shape[0] * n):
                raise ValueError(f"corepresentation law fails (residual {r:.2e})")

    def __repr__(self) -> str:
        return f"Corepresentation({self.name or '?'}, H={self.hilbert_dim}, qg={self.qg.name!r})"

    @cached_property
    def _slices(self):
        from .algebra import full_matrix_algebra

        coeffs, resid = tensor_coords(self.u, (full_matrix_algebra(self.hilbert_dim),
                                               self.qg.algebra))
        h = self.hilbert_dim
        # coeffs[(p*h+q), j] -> U_j[p, q]
        blocks = coeffs.T.reshape(self.qg.dim, h, h)
        return blocks, resid

    @property
    def components(self) -> np.ndarray:
        """``U_j`` with ``U = sum_j U_j ⊗ a_j``; shape ``(dim A, h, h)``."""
        return self._slices[0]

    def membership_residual(self) -> float:
        return self._slices[1]

    def unitarity_residual(self) -> float:
        return unitarity_residual(self.u)

    def law_residual(self) -> float:
        """``(id ⊗ Δ)U - U12 U13`` in coefficients of ``B(H) ⊗ A ⊗ A``."""
        comp = self.components
        lhs = np.einsum("jpq,jkl->klpq", comp, self.qg.comult.coeffs)
        rhs = np.einsum("kpr,lrq->klpq", comp, comp)
        return max_residual(lhs, rhs)

    def law_residual_matrix(self) -> float:
        """The same law evaluated with ``Δ = Ad W`` on concrete matrices."""
        h, n = self.hilbert_dim, self.qg.h0
        shape = (h, n, n)
        lhs = self.qg.comult_on_leg(self.u, (h, n), 1)
        rhs = place_on_legs(self.u, shape, (0, 1)) @ place_on_legs(self.u, shape, (0, 2))
        return max_residual(lhs, rhs)


def trivial_corep(qg: QuantumGroup, dim: int = 1) -> Corepresentation:
    return Corepresentation(qg, np.eye(dim * qg.h0), name=f"trivial{dim}")


def regular_corep(qg: QuantumGroup) -> Corepresentation:
    """``W`` itself, viewed in ``B(H0) ⊗ A``."""
    return Corepresentation(qg, qg.matrix, name="regular")


def grading_corepresentation(qg: QuantumGroup, projections: Sequence) -> Corepresentation:
    """``U = sum_g p_g ⊗ λ_g`` for a grading by a finite abelian group.

    Parameters
    ----------
    qg : QuantumGroup
        Group-algebra side of a finite abelian group.
    projections : sequence of array_like
        ``p_g`` indexed by group elements; mutually orthogonal projections
        summing to the identity.
    """
    if qg.group is None or qg.side != "group-algebra":
        raise ValueError("gradings need the group-algebra side of a finite group")
    if not qg.group.is_abelian:
        raise ValueError("gradings are defined here for abelian groups only")
    ps = [np.asarray(p, dtype=np.complex128) for p in projections]
    if len(ps) != qg.group.order:
        raise ValueError("one projection per group element is required")
    h = ps[0].shape[0]
    eye = np.eye(h)
    total = sum(ps)
    if max_residual(total, eye) > tau(h):
        raise ValueError("projections do not resolve the identity")
    for i, p in enumerate(ps):
        if max_residual(p @ p, p) > tau(h) or max_residual(p, dagger(p)) > tau(h):
            raise ValueError(f"p[{i}] is not an orthogonal projection")
    u = sum(np.kron(p, qg.group.left_regular(g)) for g, p in enumerate(ps))
    return Corepresentation(qg, u, name="grading")


def grading_projections(degrees: Sequence[int], order: int) -> list[np.ndarray]:
    """Coordinate projections for a grading given degree labels of basis vectors."""
    h = len(degrees)
    ps = [np.zeros((h, h), dtype=np.complex128) for _ in range(order)]
    for i, d in enumerate(degrees):
        ps[int(d)][i, i] = 1.0
    return ps


def tensor_corep(u1: Corepresentation, u2: Corepresentation) -> Corepresentation:
    """``U1 ⊤ U2 = (U1)_{13} (U2)_{23}`` on ``(H1 ⊗ H2) ⊗ A``."""
    if not u1.qg.same_as(u2.qg):
        raise ValueError("corepresentations of different quantum groups")
    h1, h2, n = u1.hilbert_dim, u2.hilbert_dim, u1.qg.h0
    shape = (h1, h2, n)
    u = place_on_legs(u1.u, shape, (0, 2)) @ place_on_legs(u2.u, shape, (1, 2))
    return Corepresentation(u1.qg, u, check=False, name=f"({u1.name}⊤{u2.name})")


def check_intertwiner(t, u1: Corepresentation, u2: Corepresentation) -> float:
    """Residual of ``(t ⊗ 1)U1 = U2 (t ⊗ 1)`` for ``t: H1 → H2``."""
    t = np.asarray(t, dtype=np.complex128)
    n = u1.qg.h0
    if t.shape != (u2.hilbert_dim, u1.hilbert_dim):
        raise ValueError("intertwiner shape does not match the corepresentations")
    big = np.kron(t, np.eye(n))
    return max_residual(big @ u1.u, u2.u @ big)


def rep_from_corep(u: Corepresentation) -> StarRepresentation:
    """Representation ``ρ`` of ``Â`` with ``(ρ ⊗ id)W = U``.

    ``W = sum w[i, j] â_i ⊗ a_j`` and ``U = sum U_j ⊗ a_j`` give the linear
    system ``sum_i w[i, j] ρ(â_i) = U_j``.
    """
    qg = u.qg
    w = qg.w_coeffs
    comp = u.components
    h = u.hilbert_dim
    rhs = comp.reshape(qg.dim, -1)
    sol, *_ = np.linalg.lstsq(w.T, rhs, rcond=None)
    resid = max_residual(w.T @ sol, rhs)
    if resid > tau(h * qg.h0):
        raise ValueError(f"inconsistent extension from slices (residual {resid:.2e})")
    images = sol.reshape(qg.dual_algebra.dim, h, h)
    return StarRepresentation(qg.dual_algebra, images, name=f"rep({u.name})")


def apply_rep_tensor(coeffs: np.ndarray, reps: Sequence[StarRepresentation]) -> np.ndarray:
    """``(ρ_1 ⊗ ... ⊗ ρ_k)(x)`` for ``x`` given by tensor coefficients."""
    out = np.asarray(coeffs, dtype=np.complex128)
    # contract from the last factor; kron as we go
    op = np.tensordot(out, reps[-1].images, axes=([-1], [0]))
    for rep in reversed(reps[:-1]):
        op = np.moveaxis(op, -3, -1)
        op = np.tensordot(op, rep.images, axes=([-1], [0]))
        sh = op.shape
        op = np.moveaxis(op, [-2, -1], [-4, -3])
        op = np.swapaxes(op, -3, -2)
        op = op.reshape(sh[:-4] + (sh[-2] * sh[-4], sh[-1] * sh[-3]))
    return op


@dataclass(frozen=True)
class BraidingUnitary:
    """Braiding ``c: H1 ⊗ H2 → H2 ⊗ H1``."""

    c: np.ndarray
    dims: tuple[int, int]
    from_pair: tuple[Corepresentation, Corepresentation]

    def equivariance_residual(self) -> float:
        """``(c ⊗ 1)(U1 ⊤ U2) = (U2 ⊤ U1)(c ⊗ 1)``."""
        u1, u2 = self.from_pair
        return check_intertwiner(self.c, tensor_corep(u1, u2), tensor_corep(u2, u1))


def _rmatrix_matrix(r) -> tuple[np.ndarray, QuantumGroup]:
    chi = r.chi if hasattr(r, "chi") else np.asarray(r, dtype=np.complex128)
    qg = r.source if hasattr(r, "source") else None
    return chi, qg


def braiding_unitary(r, u1: Corepresentation, u2: Corepresentation) -> BraidingUnitary:
    """``c^{H1,H2} = (ρ2 ⊗ ρ1)(R*) Σ^{H1,H2}``."""
    chi, _ = _rmatrix_matrix(r)
    qg = u1.qg
    if not qg.same_as(u2.qg):
        raise ValueError("corepresentations of different quantum groups")
    rho1 = rep_from_corep(u1)
    rho2 = rep_from_corep(u2)
    coeffs, resid = tensor_coords(dagger(chi), (qg.dual_algebra, qg.dual_algebra))
    if resid > tau(qg.h0**2):
        raise ValueError("R does not lie in Â ⊗ Â")
    t = apply_rep_tensor(coeffs, (rho2, rho1))
    c = t @ flip(u1.hilbert_dim, u2.hilbert_dim)
    return BraidingUnitary(c, (u1.hilbert_dim, u2.hilbert_dim), (u1, u2))


def check_hexagons(r, u1: Corepresentation, u2: Corepresentation,
                   u3: Corepresentation) -> tuple[float, float, float]:
    """Residuals of the two hexagon identities and the braid relation.

    Returns
    -------
    (float, float, float)
        ``c^{1,23} - (1⊗c^{13})(c^{12}⊗1)``,
        ``c^{12,3} - (c^{13}⊗1)(1⊗c^{23})`` and
        ``c^{12}_{23} c^{13}_{12} c^{23}_{23} - c^{23}_{12} c^{13}_{23} c^{12}_{12}``.
    """
    h1, h2, h3 = u1.hilbert_dim, u2.hilbert_dim, u3.hilbert_dim
    c12 = braiding_unitary(r, u1, u2).c
    c13 = braiding_unitary(r, u1, u3).c
    c23 = braiding_unitary(r, u2, u3).c
    c1_23 = braiding_unitary(r, u1, tensor_corep(u2, u3)).c
    c12_3 = braiding_unitary(r, tensor_corep(u1, u2), u3).c
    hex1 = max_residual(c1_23, kron(np.eye(h2), c13) @ kron(c12, np.eye(h3)))
    hex2 = max_residual(c12_3, kron(c13, np.eye(h2)) @ kron(np.eye(h1), c23))
    # both sides map H1 H2 H3 -> H3 H2 H1
    lhs = kron(np.eye(h3), c12) @ kron(c13, np.eye(h2)) @ kron(np.eye(h1), c23)
    rhs = kron(c23, np.eye(h1)) @ kron(np.eye(h2), c13) @ kron(c12, np.eye(h3))
    return hex1, hex2, max_residual(lhs, rhs)


@dataclass(frozen=True)
class SymmetryVerdict:
    symmetric: bool
    operator_residual: float
    algebraic_residual: float
    dual_braiding_residual: float

    @property
    def agree(self) -> bool:
        return self.operator_residual_symmetric == self.algebraic_residual_symmetric

    @property
    def operator_residual_symmetric(self) -> bool:
        return self.operator_residual <= 1e-6

    @property
    def algebraic_residual_symmetric(self) -> bool:
        return self.algebraic_residual <= 1e-6


def check_symmetry(r, pool: Sequence[Corepresentation]) -> SymmetryVerdict:
    """Symmetry of the braiding, tested two ways.

    The operator test is ``max ||c^{H2,H1} c^{H1,H2} - 1||`` over ordered
    pairs from ``pool``; the algebraic test is ``||σ(R) R - 1||``.  Also
    checks that the braiding of the dual R-matrix ``σ(R*)`` is
    ``(c^{H2,H1})*``.
    """
    if not pool:
        raise ValueError("corepresentation pool is empty")
    chi, _ = _rmatrix_matrix(r)
    n = pool[0].qg.h0
    s = flip(n, n)
    alg = max_residual(s @ chi @ s @ chi, np.eye(n * n))
    chi_dual = s @ dagger(chi) @ s
    op = 0.0
    dual_res = 0.0
    for ua in pool:
        for ub in pool:
            cab = braiding_unitary(chi, ua, ub).c
            cba = braiding_unitary(chi, ub, ua).c
            op = max(op, max_residual(cba @ cab, np.eye(cab.shape[0])))
            dual_ab = braiding_unitary(chi_dual, ua, ub).c
            dual_res = max(dual_res, max_residual(dual_ab, dagger(cba)))
    tol = tau(n * n)
    sym = op <= max(tol, 1e-6) and alg <= max(tol, 1e-6)
    return SymmetryVerdict(sym, op, alg, dual_res)


def graded_braiding(pairing, degrees1: Sequence[int], degrees2: Sequence[int]) -> np.ndarray:
    """Expected braiding of graded spaces: ``v ⊗ w ↦ conj(p(y, x)) w ⊗ v``.

    ``v`` has degree ``x`` and ``w`` degree ``y``; basis vectors are graded
    by ``degrees1`` and ``degrees2``.  For the Koszul pairing this is the sign
    rule ``-Σ`` on odd ⊗ odd and ``+Σ`` otherwise.
    """
    p = np.asarray(pairing, dtype=np.complex128)
    h1, h2 = len(degrees1), len(degrees2)
    out = np.zeros((h2 * h1, h1 * h2), dtype=np.complex128)
    for i, x in enumerate(degrees1):
        for j, y in enumerate(degrees2):
            out[j * h1 + i, i * h2 + j] = np.conj(p[y, x])
    return out
