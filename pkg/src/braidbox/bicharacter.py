"""Bicharacters, R-matrices, right quantum group morphisms and induced coactions.

A bicharacter from ``G`` to the dual of ``H`` is a unitary ``χ ∈ Â ⊗ B̂``
(first leg in the dual algebra of ``source``, second leg in the dual algebra
of ``target``) with

    (Δ̂_A ⊗ id)χ = χ23 χ13,        (id ⊗ Δ̂_B)χ = χ12 χ13.

An R-matrix is a bicharacter with ``source == target`` which also conjugates
the flipped dual comultiplication into the dual comultiplication.  In finite
dimension the universal lift of a bicharacter is the bicharacter itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .algebra import LinearMap, StarRepresentation, tensor_coords, tensor_operator
from .coaction import Coaction
from .config import tau
from .corep import Corepresentation, apply_rep_tensor, rep_from_corep
from .qgroup import QuantumGroup, group_quantum_group
from .tensor import dagger, flip, max_residual, place_on_legs, unitarity_residual

__all__ = [
    "Bicharacter",
    "RightMorphism",
    "bicharacter_laws",
    "bicharacter_from_pairing",
    "cyclic_pairing",
    "koszul_rmatrix",
    "trivial_bicharacter",
    "w_bicharacter",
    "check_rmatrix",
    "dual_bicharacter",
    "check_yang_baxter",
    "check_counit_compat",
    "check_antisymmetric",
    "right_morphism_from_bicharacter",
    "induced_coaction",
    "random_unitary",
]


def bicharacter_laws(source: QuantumGroup, target: QuantumGroup, chi) -> tuple[float, float]:
    """Residuals of the two character laws of ``χ ∈ Â ⊗ B̂``."""
    chi = np.asarray(chi, dtype=np.complex128)
    n, m = source.h0, target.h0
    left = source.dual_comult_on_leg(chi, (n, m), 0)
    sh = (n, n, m)
    r1 = max_residual(left, place_on_legs(chi, sh, (1, 2)) @ place_on_legs(chi, sh, (0, 2)))
    right = target.dual_comult_on_leg(chi, (n, m), 1)
    sh = (n, m, m)
    r2 = max_residual(right, place_on_legs(chi, sh, (0, 1)) @ place_on_legs(chi, sh, (0, 2)))
    return r1, r2


class Bicharacter:
    """Unitary ``χ ∈ Â ⊗ B̂`` satisfying both character laws.

    Parameters
    ----------
    source, target : QuantumGroup
    chi : array_like
        Matrix on ``H0(source) ⊗ H0(target)``.
    validate : bool
        Reject non-unitary inputs, inputs outside ``Â ⊗ B̂`` and violations of
        the character laws.  Switch off to study corrupted data.
    """

    def __init__(self, source: QuantumGroup, target: QuantumGroup, chi, validate: bool = True,
                 name: str = ""):
        chi = np.asarray(chi, dtype=np.complex128)
        size = source.h0 * target.h0
        if chi.shape != (size, size):
            raise ValueError(f"bicharacter must be {size}x{size}, got {chi.shape}")
        chi.setflags(write=False)
        self.source = source
        self.target = target
        self.chi = chi
        self.name = name
        if validate:
            problems = self.problems()
            if problems:
                raise ValueError("not a bicharacter: " + "; ".join(problems))

    def __repr__(self) -> str:
        return f"Bicharacter({self.name or '?'}: {self.source.name!r} -> {self.target.name!r})"

    def problems(self) -> list[str]:
        size = self.chi.shape[0]
        out = []
        r = unitarity_residual(self.chi)
        if r > tau(size):
            out.append(f"not unitary ({r:.2e})")
        r = self.membership_residual()
        if r > tau(size):
            out.append(f"outside Â⊗B̂ ({r:.2e})")
        r1, r2 = self.law_residuals
        if max(r1, r2) > tau(size * max(self.source.h0, self.target.h0)):
            out.append(f"character laws fail ({r1:.2e}, {r2:.2e})")
        return out

    @property
    def is_rmatrix_shaped(self) -> bool:
        return self.source.same_as(self.target)

    @cached_property
    def _coords(self):
        return tensor_coords(self.chi, (self.source.dual_algebra, self.target.dual_algebra))

    @property
    def coeffs(self) -> np.ndarray:
        return self._coords[0]

    def membership_residual(self) -> float:
        return self._coords[1]

    @cached_property
    def law_residuals(self) -> tuple[float, float]:
        return bicharacter_laws(self.source, self.target, self.chi)


def _as_bicharacter(r) -> Bicharacter:
    if not isinstance(r, Bicharacter):
        raise TypeError("expected a Bicharacter")
    return r


def cyclic_pairing(n: int, k: int = 1) -> np.ndarray:
    """``ρ(x, y) = exp(2πi k x y / n)`` on ``Z/n``."""
    x = np.arange(n)
    roots = np.exp(2j * np.pi * np.arange(n) / n)
    # exact zeros for the real/imaginary parts of ±1, ±i
    roots = np.where(np.abs(roots.real) < 1e-15, 0, roots.real) + 1j * np.where(
        np.abs(roots.imag) < 1e-15, 0, roots.imag)
    return roots[(k * np.outer(x, x)) % n]


def bicharacter_from_pairing(qg: QuantumGroup, pairing) -> Bicharacter:
    """Diagonal R-matrix ``sum ρ(x, y) e_x ⊗ e_y`` on ``C(Γ) ⊗ C(Γ)``.

    Parameters
    ----------
    qg : QuantumGroup
        Group-algebra side of a finite abelian group ``Γ``, so ``Â = C(Γ)``.
    pairing : array_like
        Table ``ρ(x, y) = <ρ̂(x), y>`` of the homomorphism ``Γ → Γ̂``.
    """
    if qg.group is None or qg.side != "group-algebra":
        raise ValueError("pairings need the group-algebra side of a finite group")
    grp = qg.group
    if not grp.is_abelian:
        raise ValueError("pairing bicharacters need an abelian group")
    p = np.asarray(pairing, dtype=np.complex128)
    n = grp.order
    if p.shape != (n, n):
        raise ValueError("pairing table must be |Γ| x |Γ|")
    t = grp.table
    tol = tau(n)
    if np.max(np.abs(np.abs(p) - 1)) > tol:
        raise ValueError("pairing values must be of modulus one")
    # ρ(xy, z) = ρ(x, z)ρ(y, z): x ↦ ρ(x, ·) is a homomorphism into characters
    if np.max(np.abs(p[t] - p[:, None, :] * p[None, :, :])) > tol:
        raise ValueError("pairing is not a homomorphism into the character group")
    if np.max(np.abs(p[:, t] - p[:, :, None] * p[:, None, :])) > tol:
        raise ValueError("pairing values are not characters")
    chi = np.diag(p.reshape(-1))
    return Bicharacter(qg, qg, chi, name="pairing")


def koszul_rmatrix(qg: QuantumGroup | None = None) -> Bicharacter:
    """``diag(1, 1, 1, -1)`` on ``C(Z/2) ⊗ C(Z/2)``."""
    from .qgroup import cyclic_table

    qg = qg or group_quantum_group(cyclic_table(2), name="Z2")
    return bicharacter_from_pairing(qg, cyclic_pairing(2))


def trivial_bicharacter(source: QuantumGroup, target: QuantumGroup | None = None) -> Bicharacter:
    target = target or source
    return Bicharacter(source, target, np.eye(source.h0 * target.h0), name="trivial")


def w_bicharacter(qg: QuantumGroup) -> Bicharacter:
    """``W`` itself, a bicharacter from ``G`` to the dual of ``dual(G)``."""
    return Bicharacter(qg, qg.dual, qg.matrix, name="W")


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    z = (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


# --------------------------------------------------------------------------
# R-matrix checks


def check_rmatrix(r: Bicharacter) -> dict:
    """Equivariance ``R σ(Δ̂(â)) R* = Δ̂(â)`` and ``R12 W13 W23 = W23 W13 R12``."""
    qg = r.source
    n = qg.h0
    s = flip(n, n)
    chi = r.chi
    dual_images = qg.dual_comult.basis_operators()
    lhs = chi @ (s @ dual_images @ s) @ dagger(chi)
    equiv = max_residual(lhs, dual_images)
    sh = (n, n, n)
    w = qg.matrix
    r12 = place_on_legs(chi, sh, (0, 1))
    w13 = place_on_legs(w, sh, (0, 2))
    w23 = place_on_legs(w, sh, (1, 2))
    alt = max_residual(r12 @ w13 @ w23, w23 @ w13 @ r12)
    return {"equivariance": equiv, "equivalent_form": alt}


def dual_bicharacter(chi: Bicharacter, validate: bool = True) -> Bicharacter:
    """``σ(χ*)``, a bicharacter from ``target`` to the dual of ``source``."""
    s = flip(chi.source.h0, chi.target.h0)
    mat = s @ dagger(chi.chi) @ dagger(s)
    return Bicharacter(chi.target, chi.source, mat, validate=validate,
                       name=f"dual({chi.name})")


def check_yang_baxter(r: Bicharacter) -> float:
    """``R12 R13 R23 - R23 R13 R12``."""
    n = r.source.h0
    sh = (n, n, n)
    r12 = place_on_legs(r.chi, sh, (0, 1))
    r13 = place_on_legs(r.chi, sh, (0, 2))
    r23 = place_on_legs(r.chi, sh, (1, 2))
    return max_residual(r12 @ r13 @ r23, r23 @ r13 @ r12)


def check_counit_compat(r: Bicharacter) -> tuple[float, float]:
    """``(ê ⊗ id)R - 1`` and ``(id ⊗ ê)R - 1`` in coefficients."""
    x = r.coeffs
    e_left = r.source.dual_counit
    e_right = r.target.dual_counit
    unit_r = r.target.dual_algebra.unit
    unit_l = r.source.dual_algebra.unit
    a = max_residual(np.einsum("i,ij->j", e_left, x), unit_r)
    b = max_residual(np.einsum("ij,j->i", x, e_right), unit_l)
    return a, b


def check_antisymmetric(r: Bicharacter) -> tuple[bool, float]:
    """``R* = σ(R)`` with its residual."""
    n = r.source.h0
    s = flip(n, n)
    res = max_residual(dagger(r.chi), s @ r.chi @ s)
    return res <= tau(n * n), res


# --------------------------------------------------------------------------
# right quantum group morphisms


@dataclass
class RightMorphism:
    """``Δ_R: A → A ⊗ B̂`` with ``(id ⊗ Δ_R)W = W12 χ13``."""

    chi: Bicharacter
    map: LinearMap
    extension_residual: float

    @property
    def coeffs(self) -> np.ndarray:
        return self.map.coeffs

    def square_residuals(self) -> tuple[float, float]:
        """``(Δ ⊗ id)Δ_R = (id ⊗ Δ_R)Δ`` and ``(Δ_R ⊗ id)Δ_R = (id ⊗ Δ̂_B)Δ_R``."""
        dr = self.coeffs
        d = self.chi.source.comult.coeffs
        db = self.chi.target.dual_comult.coeffs
        s1 = max_residual(np.einsum("ikb,kpq->ipqb", dr, d, optimize=True),
                          np.einsum("ipk,kqb->ipqb", d, dr, optimize=True))
        s2 = max_residual(np.einsum("ikb,kac->iacb", dr, dr, optimize=True),
                          np.einsum("iak,kcb->iacb", dr, db, optimize=True))
        return s1, s2

    def round_trip_residual(self) -> float:
        """Recover ``χ`` as ``(id ⊗ Δ_R)(W) W12*`` and compare."""
        src, tgt = self.chi.source, self.chi.target
        n, m = src.h0, tgt.h0
        coeffs = np.einsum("ij,jab->iab", src.w_coeffs, self.coeffs)
        big = tensor_operator(coeffs, (src.dual_algebra, src.algebra, tgt.dual_algebra))
        sh = (n, n, m)
        rec = big @ dagger(place_on_legs(src.matrix, sh, (0, 1)))
        return max_residual(rec, place_on_legs(self.chi.chi, sh, (0, 2)))


def right_morphism_from_bicharacter(chi: Bicharacter) -> RightMorphism:
    """Solve ``sum_j w[i, j] Δ_R(a_j) = (ω_i ⊗ id ⊗ id)(W12 χ13)``."""
    src, tgt = chi.source, chi.target
    n, m = src.h0, tgt.h0
    sh = (n, n, m)
    target_op = place_on_legs(src.matrix, sh, (0, 1)) @ place_on_legs(chi.chi, sh, (0, 2))
    t, resid = tensor_coords(target_op, (src.dual_algebra, src.algebra, tgt.dual_algebra))
    if resid > tau(n * n * m):
        raise ValueError(f"W12 χ13 leaves Â ⊗ A ⊗ B̂ (residual {resid:.2e})")
    w = src.w_coeffs
    rhs = t.reshape(src.dual_algebra.dim, -1)
    sol, *_ = np.linalg.lstsq(w, rhs, rcond=None)
    ext = max_residual(w @ sol, rhs)
    if ext > tau(n * n * m):
        raise ValueError(f"inconsistent linear extension from slices (residual {ext:.2e})")
    coeffs = sol.reshape(src.dim, src.dim, tgt.dual_algebra.dim)
    lm = LinearMap(src.algebra, (src.algebra, tgt.dual_algebra), coeffs, name="Δ_R")
    return RightMorphism(chi, lm, ext)


def induced_coaction(chi: Bicharacter, gamma: Coaction) -> Coaction:
    """Coaction ``δ`` of ``dual(target)`` with ``(id ⊗ Δ_R)γ = (γ ⊗ id)δ``.

    When ``γ`` is implemented by a corepresentation ``U``, the result carries
    ``V = (ρ_U ⊗ id)χ`` provided it implements ``δ``.
    """
    if not gamma.qg.same_as(chi.source):
        raise ValueError("coaction and bicharacter live on different quantum groups")
    morph = right_morphism_from_bicharacter(chi)
    g = gamma.coeffs
    dc = gamma.algebra.dim
    lhs = np.einsum("ijk,kab->ijab", g, morph.coeffs, optimize=True)  # (i, j, a, b)
    nb = lhs.shape[-1]
    # (γ ⊗ id)δ: sum_j' δ[i, j', b] g[j', j, a]
    gm = g.reshape(dc, -1)  # (j', (j, a))
    rhs = np.moveaxis(lhs, -1, 1).reshape(dc * nb, -1)  # ((i, b), (j, a))
    sol, *_ = np.linalg.lstsq(gm.T, rhs.T, rcond=None)  # (j', (i, b))
    resid = max_residual(gm.T @ sol, rhs.T)
    if resid > tau(gamma.algebra.ambient_dim * chi.source.h0 * chi.target.h0):
        raise ValueError(f"commuting square has no solution (residual {resid:.2e})")
    delta = sol.T.reshape(dc, nb, dc).transpose(0, 2, 1)
    acting = chi.target.dual
    corep = None
    if gamma.corep is not None:
        rho = rep_from_corep(gamma.corep)
        inc = StarRepresentation(acting.algebra, acting.algebra.basis)
        v = apply_rep_tensor(chi.coeffs, (rho, inc))
        cand = Corepresentation(acting, v, check=False, name="V")
        trial = Coaction(gamma.algebra, acting, delta, corep=cand)
        if (cand.law_residual() <= tau(v.shape[0] * acting.h0)
                and trial.spatial_residual() <= tau(v.shape[0])):
            corep = cand
    return Coaction(gamma.algebra, acting, delta, corep=corep, name="induced")
