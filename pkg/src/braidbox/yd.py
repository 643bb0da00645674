"""The codouble bialgebra and Yetter-Drinfeld algebras.

The codouble of ``(A, Δ)`` is ``D = A ⊗ Â`` with comultiplication

    Δ_D = σ^W_23 ∘ (Δ ⊗ Δ̂),       σ^W(a ⊗ â) = W(â ⊗ a)W*.

A pair of coactions ``γ: C → C ⊗ A`` and ``δ: C → C ⊗ Â`` is Yetter-Drinfeld
when ``σ^W_23 (γ ⊗ id)δ = (δ ⊗ id)γ``; such pairs are the same thing as
coactions ``(γ ⊗ id)δ`` of the codouble.  On the Hilbert space side the
analogous objects are pairs of corepresentations ``(U, V)`` of ``A`` and
``Â`` with ``σ^W_23(U12 V13) = V12 U13``.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np

from .algebra import LinearMap, tensor_algebra, tensor_coords
from .coaction import (
    Coaction,
    bialgebra_podles,
    comultiplication_coaction,
    dual_adjoint_coaction,
)
from .config import tau
from .corep import Corepresentation
from .qgroup import QuantumGroup
from .tensor import dagger, flip, max_residual, place_on_legs

__all__ = [
    "CodoubleBialgebra",
    "YetterDrinfeldAlgebra",
    "codouble",
    "sigma_w_coeffs",
    "sigma_w_on_legs",
    "check_yd",
    "yd_to_codouble_coaction",
    "split_codouble_coaction",
    "compatible_corep_pair",
    "compatibility_residual",
    "split_codouble_corep",
    "induce_yd_from_rmatrix",
    "canonical_yd",
    "has_compatible_spatial_pair",
    "conjugation_compatible_pair",
]


def sigma_w_coeffs(qg: QuantumGroup) -> np.ndarray:
    """``s[k, l, p, q]``: ``W(â_l ⊗ a_k)W* = sum s[k, l, p, q] â_p ⊗ a_q``."""
    a, ah = qg.algebra, qg.dual_algebra
    prods = np.einsum("lab,kcd->klacbd", ah.basis, a.basis).reshape(
        a.dim, ah.dim, qg.h0**2, qg.h0**2)
    w = qg.matrix
    coeffs, resid = tensor_coords(w @ prods @ dagger(w), (ah, a))
    if resid > tau(qg.h0**2):
        raise ValueError(f"σ^W leaves Â ⊗ A (residual {resid:.2e})")
    return coeffs


def sigma_w_on_legs(qg: QuantumGroup, x, shape, legs) -> np.ndarray:
    """Apply ``σ^W`` to legs ``(i, i + 1)`` of a concrete operator.

    The legs must hold ``A ⊗ Â``; afterwards they hold ``Â ⊗ A``.
    """
    i, j = legs
    if j != i + 1:
        raise ValueError("σ^W acts on adjacent legs")
    n = qg.h0
    s = place_on_legs(flip(n, n), shape, (i, j))
    w = place_on_legs(qg.matrix, shape, (i, j))
    return w @ s @ x @ dagger(s) @ dagger(w)


class CodoubleBialgebra:
    """The codouble ``A ⊗ Â`` with its twisted comultiplication."""

    def __init__(self, qg: QuantumGroup):
        self.qg = qg
        self.algebra = tensor_algebra(qg.algebra, qg.dual_algebra,
                                      name=f"Dhat({qg.name})")
        self.name = f"codouble({qg.name})"
        self.sigma = sigma_w_coeffs(qg)
        c = qg.comult.coeffs
        ch = qg.dual_comult.coeffs
        da, dh = qg.dim, qg.dual_algebra.dim
        d = np.einsum("ikl,jmn,lmpq->ijkpqn", c, ch, self.sigma, optimize=True)
        self.comult = LinearMap(self.algebra, (self.algebra, self.algebra),
                                d.reshape(da * dh, da * dh, da * dh), name="Δ_D")
        self.counit = np.kron(qg.counit, qg.dual_counit)

    def __repr__(self) -> str:
        return f"CodoubleBialgebra({self.qg.name!r}, dim={self.dim})"

    @property
    def h0(self) -> int:
        return self.algebra.ambient_dim

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def coassociativity_residual(self) -> float:
        d = self.comult.coeffs
        return max_residual(np.einsum("ijk,jab->iabk", d, d, optimize=True),
                            np.einsum("ijk,kab->ijab", d, d, optimize=True))

    def podles_residuals(self) -> tuple[float, float]:
        return bialgebra_podles(self.algebra, self.comult)

    def multiplicativity_residual(self) -> float:
        return self.comult.multiplicativity_residual()

    def star_residual(self) -> float:
        return self.comult.star_residual()

    def counit_residual(self) -> float:
        d = self.comult.coeffs
        eye = np.eye(self.dim)
        return max(max_residual(np.einsum("j,ijk->ik", self.counit, d), eye),
                   max_residual(np.einsum("k,ijk->ij", self.counit, d), eye))

    def flip_residual(self) -> float:
        """Distance of ``σ^W`` from the plain flip (zero for abelian groups)."""
        qg = self.qg
        da, dh = qg.dim, qg.dual_algebra.dim
        plain = np.einsum("kq,lp->klpq", np.eye(da), np.eye(dh))
        return max_residual(self.sigma, plain)

    @cached_property
    def implementing_unitary(self) -> np.ndarray:
        """``X = W23 W13 Ŵ24`` on ``H0^{⊗4}``."""
        n = self.qg.h0
        sh = (n, n, n, n)
        return (place_on_legs(self.qg.matrix, sh, (1, 2))
                @ place_on_legs(self.qg.matrix, sh, (0, 2))
                @ place_on_legs(self.qg.dual_matrix, sh, (1, 3)))

    def implementing_residual(self) -> float:
        """``Δ_D(y) - X(y ⊗ 1 ⊗ 1)X*`` on the basis (dense, for small groups)."""
        x = self.implementing_unitary
        n2 = self.h0
        out = 0.0
        imgs = self.comult.basis_operators()
        for b, img in zip(self.algebra.basis, imgs):
            big = np.kron(b, np.eye(n2))
            out = max(out, max_residual(x @ big @ dagger(x), img))
        return out


def codouble(qg: QuantumGroup) -> CodoubleBialgebra:
    return CodoubleBialgebra(qg)


# --------------------------------------------------------------------------


def _yd_sides(gamma: Coaction, delta: Coaction):
    qg = gamma.qg
    if not isinstance(qg, QuantumGroup):
        raise TypeError("γ must be a coaction of a quantum group")
    if not delta.qg.same_as(qg.dual):
        raise ValueError("δ must be a coaction of the dual quantum group")
    if delta.algebra is not gamma.algebra and delta.algebra.dim != gamma.algebra.dim:
        raise ValueError("γ and δ act on different algebras")
    return qg


class YetterDrinfeldAlgebra:
    """Algebra ``C`` with coactions ``γ`` of ``A`` and ``δ`` of ``Â``."""

    def __init__(self, gamma: Coaction, delta: Coaction, name: str = ""):
        self.qg = _yd_sides(gamma, delta)
        self.algebra = gamma.algebra
        self.gamma = gamma
        self.delta = delta
        self.name = name

    def __repr__(self) -> str:
        return f"YetterDrinfeldAlgebra({self.name or self.algebra.name!r})"

    @cached_property
    def sigma(self) -> np.ndarray:
        return sigma_w_coeffs(self.qg)

    def yd_residual(self) -> float:
        return check_yd(self)

    @property
    def is_spatial(self) -> bool:
        return self.gamma.corep is not None and self.delta.corep is not None


def check_yd(c: YetterDrinfeldAlgebra) -> float:
    """Residual of ``σ^W_23 (γ ⊗ id)δ = (δ ⊗ id)γ`` in coefficients."""
    g, d = c.gamma.coeffs, c.delta.coeffs
    lhs = np.einsum("ijl,jmk,klpq->impq", d, g, c.sigma, optimize=True)
    rhs = np.einsum("ijq,jmp->impq", g, d, optimize=True)
    return max_residual(lhs, rhs)


def compatibility_residual(u: Corepresentation, v: Corepresentation) -> float:
    """``σ^W_23(U12 V13) - V12 U13``."""
    qg = u.qg
    if not v.qg.same_as(qg.dual):
        raise ValueError("V must be a corepresentation of the dual quantum group")
    if u.hilbert_dim != v.hilbert_dim:
        raise ValueError("U and V act on different spaces")
    h, n = u.hilbert_dim, qg.h0
    sh = (h, n, n)
    uv = place_on_legs(u.u, sh, (0, 1)) @ place_on_legs(v.u, sh, (0, 2))
    lhs = sigma_w_on_legs(qg, uv, sh, (1, 2))
    rhs = place_on_legs(v.u, sh, (0, 1)) @ place_on_legs(u.u, sh, (0, 2))
    return max_residual(lhs, rhs)


def compatible_corep_pair(u: Corepresentation, v: Corepresentation,
                          cod: CodoubleBialgebra | None = None) -> Corepresentation:
    """Codouble corepresentation ``X = U12 V13`` of a compatible pair."""
    r = compatibility_residual(u, v)
    h, n = u.hilbert_dim, u.qg.h0
    if r > tau(h * n * n):
        raise ValueError(f"corepresentations are not compatible (residual {r:.2e})")
    cod = cod or CodoubleBialgebra(u.qg)
    sh = (h, n, n)
    x = place_on_legs(u.u, sh, (0, 1)) @ place_on_legs(v.u, sh, (0, 2))
    return Corepresentation(cod, x, name="X")


def split_codouble_corep(x: Corepresentation) -> tuple[Corepresentation, Corepresentation]:
    """Slice ``X`` with the counits of ``Â`` and ``A`` to get ``(U, V)``."""
    cod = x.qg
    qg = cod.qg
    da, dh = qg.dim, qg.dual_algebra.dim
    comp = x.components.reshape(da, dh, x.hilbert_dim, x.hilbert_dim)
    uc = np.einsum("klpq,l->kpq", comp, qg.dual_counit)
    vc = np.einsum("klpq,k->lpq", comp, qg.counit)
    h = x.hilbert_dim
    u = np.einsum("kpq,kab->paqb", uc, qg.algebra.basis).reshape(h * qg.h0, h * qg.h0)
    v = np.einsum("lpq,lab->paqb", vc, qg.dual_algebra.basis).reshape(h * qg.h0, h * qg.h0)
    return (Corepresentation(qg, u, check=False, name="U"),
            Corepresentation(qg.dual, v, check=False, name="V"))


def yd_to_codouble_coaction(c: YetterDrinfeldAlgebra,
                            cod: CodoubleBialgebra | None = None) -> Coaction:
    """``ξ = (γ ⊗ id)δ`` as a coaction of the codouble."""
    cod = cod or CodoubleBialgebra(c.qg)
    g, d = c.gamma.coeffs, c.delta.coeffs
    xi = np.einsum("ijl,jmk->imkl", d, g, optimize=True)
    dc = c.algebra.dim
    corep = None
    if c.is_spatial:
        try:
            corep = compatible_corep_pair(c.gamma.corep, c.delta.corep, cod)
        except ValueError:
            corep = None
    return Coaction(c.algebra, cod, xi.reshape(dc, dc, cod.dim), corep=corep, name="ξ")


def split_codouble_coaction(xi: Coaction) -> tuple[np.ndarray, np.ndarray]:
    """Coefficients of ``(id ⊗ id ⊗ ê)ξ`` and ``(id ⊗ e ⊗ id)ξ``."""
    qg = xi.qg.qg
    dc = xi.algebra.dim
    x4 = xi.coeffs.reshape(dc, dc, qg.dim, qg.dual_algebra.dim)
    return (np.einsum("ijkl,l->ijk", x4, qg.dual_counit),
            np.einsum("ijkl,k->ijl", x4, qg.counit))


def induce_yd_from_rmatrix(r, gamma: Coaction) -> YetterDrinfeldAlgebra:
    """``(γ, δ)`` with ``δ`` induced from ``γ`` through the R-matrix."""
    from .bicharacter import induced_coaction

    delta = induced_coaction(r, gamma)
    yd = YetterDrinfeldAlgebra(gamma, delta, name=f"induced({gamma.algebra.name})")
    res = check_yd(yd)
    if res > tau(gamma.algebra.ambient_dim * gamma.qg.h0**2):
        raise ValueError(f"induced pair is not Yetter-Drinfeld (residual {res:.2e})")
    return yd


def conjugation_compatible_pair(qg: QuantumGroup) -> tuple[Corepresentation, Corepresentation]:
    """Compatible pair on ``l^2(G)``: the grading ``W`` and conjugation.

    ``U = sum_h e_h ⊗ λ_h`` and ``V = sum_x π_x ⊗ e_x`` with
    ``π_x δ_g = δ_{x^-1 g x}``.  Needs the group-algebra side of a finite group.
    """
    if qg.group is None or qg.side != "group-algebra":
        raise ValueError("conjugation pair needs the group-algebra side of a finite group")
    grp = qg.group
    n = grp.order
    v = np.zeros((n * n, n * n), dtype=np.complex128)
    for x in range(n):
        xinv = grp.inverse(x)
        pi = np.zeros((n, n), dtype=np.complex128)
        for g in range(n):
            pi[grp.mul(grp.mul(xinv, g), x), g] = 1.0
        v += np.kron(pi, grp.indicator(x))
    return (Corepresentation(qg, qg.matrix, name="W"),
            Corepresentation(qg.dual, v, name="conjugation"))


def canonical_yd(qg: QuantumGroup) -> YetterDrinfeldAlgebra:
    """``A`` with ``Δ`` and ``a ↦ Ŵ(a ⊗ 1)Ŵ*``."""
    return YetterDrinfeldAlgebra(comultiplication_coaction(qg), dual_adjoint_coaction(qg),
                                 name=f"A({qg.name})")


def has_compatible_spatial_pair(c: YetterDrinfeldAlgebra) -> bool:
    """Whether the implementing corepresentations of ``γ`` and ``δ`` are compatible."""
    if not c.is_spatial:
        return False
    h, n = c.algebra.ambient_dim, c.qg.h0
    return compatibility_residual(c.gamma.corep, c.delta.corep) <= tau(h * n * n)
