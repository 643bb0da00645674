"""Coactions of finite quantum groups and their covariant representations.

A coaction ``γ: C → C ⊗ A`` is stored through its structure constants
``coeffs[i, j, k]`` (``γ(c_i) = sum c_j ⊗ a_k``).  When ``γ`` is implemented
spatially by a corepresentation ``U`` on the Hilbert space of ``C``, i.e.
``γ(c) = U(c ⊗ 1)U*``, the corepresentation is carried along and used for
twisted tensor products.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .algebra import (
    LinearMap,
    StarAlgebra,
    StarRepresentation,
    tensor_coords,
    tensor_operator,
)
from .config import tau
from .corep import Corepresentation
from .tensor import dagger, max_residual, orthonormal_columns, place_on_legs

__all__ = [
    "Coaction",
    "CoactionReport",
    "CovariantRep",
    "EquivariantMorphism",
    "bialgebra_podles",
    "coaction_podles",
    "spatial_coaction",
    "comultiplication_coaction",
    "trivial_coaction",
    "dual_adjoint_coaction",
    "canonical_covariant_rep",
    "spatial_covariant_rep",
    "default_covariant_rep",
]


def _full_span_distance(vectors: np.ndarray, dim: int) -> float:
    """0 when the columns span ``C^dim``, about 1 when a direction is missing."""
    q = orthonormal_columns(vectors)
    if q.shape[1] >= dim:
        return 0.0
    # distance between projections onto span and onto the full space
    return 1.0


def coaction_podles(coeffs: np.ndarray, acting: StarAlgebra) -> float:
    """Distance of ``γ(C)·(1 ⊗ A)`` from ``C ⊗ A``.

    ``coeffs`` has shape ``(dim C, dim C, dim A)``.
    """
    prods = np.einsum("ijk,mb,kbc->imjc", coeffs, np.eye(acting.dim), acting.mult,
                      optimize=True)
    vecs = prods.reshape(-1, coeffs.shape[1] * acting.dim).T
    return _full_span_distance(vecs, coeffs.shape[1] * acting.dim)


def bialgebra_podles(alg: StarAlgebra, comult: LinearMap) -> tuple[float, float]:
    """Distances of ``Δ(X)(1⊗X)`` and ``(X⊗1)Δ(X)`` from ``X ⊗ X``."""
    d = comult.coeffs
    m = alg.mult
    k = alg.dim
    right = np.einsum("ijl,mlc->imjc", d, m, optimize=True)
    left = np.einsum("mja,ijl->imal", m, d, optimize=True)
    r1 = _full_span_distance(right.reshape(-1, k * k).T, k * k)
    r2 = _full_span_distance(left.reshape(-1, k * k).T, k * k)
    return r1, r2


@dataclass(frozen=True)
class CoactionReport:
    injective: bool
    comodule: float
    podles: float
    multiplicative: float
    star: float

    def passed(self, dim: int) -> bool:
        tol = tau(dim)
        return (self.injective and self.comodule <= tol and self.podles <= tol
                and self.multiplicative <= tol and self.star <= tol)

    def as_dict(self) -> dict:
        return {"injective": self.injective, "comodule": self.comodule,
                "podles": self.podles, "multiplicative": self.multiplicative,
                "star": self.star}


class Coaction:
    """Coaction ``γ: C → C ⊗ A`` of a quantum group (or of the codouble).

    Parameters
    ----------
    algebra : StarAlgebra
        The algebra ``C``.
    qg : object
        Anything with ``.algebra`` and ``.comult`` (a ``QuantumGroup`` or a
        ``CodoubleBialgebra``).
    coeffs : array_like
        Structure constants of shape ``(dim C, dim C, dim A)``.
    corep : Corepresentation, optional
        Unitary implementing ``γ`` on the Hilbert space of ``C``.
    """

    def __init__(self, algebra: StarAlgebra, qg, coeffs, corep: Corepresentation | None = None,
                 name: str = ""):
        self.algebra = algebra
        self.qg = qg
        self.map = LinearMap(algebra, (algebra, qg.algebra), coeffs, name=name or "γ")
        self.corep = corep
        self.name = name

    def __repr__(self) -> str:
        return f"Coaction({self.name or '?'}: {self.algebra.name or '?'} by {self.qg.name!r})"

    @property
    def coeffs(self) -> np.ndarray:
        return self.map.coeffs

    def operator(self, x) -> np.ndarray:
        """Concrete ``γ(x)`` on ``H_C ⊗ H0``."""
        return self.map.operator(x)

    def basis_operators(self) -> np.ndarray:
        return self.map.basis_operators()

    # -- the four checks -----------------------------------------------------

    def is_injective(self) -> bool:
        return self.map.is_injective()

    def comodule_residual(self) -> float:
        """``(id ⊗ Δ)γ - (γ ⊗ id)γ`` in coefficients."""
        g = self.coeffs
        lhs = np.einsum("ijk,kab->ijab", g, self.qg.comult.coeffs, optimize=True)
        rhs = np.einsum("ijk,jla->ilak", g, g, optimize=True)
        return max_residual(lhs, rhs)

    def podles_residual(self) -> float:
        return coaction_podles(self.coeffs, self.qg.algebra)

    def multiplicativity_residual(self) -> float:
        return self.map.multiplicativity_residual()

    def star_residual(self) -> float:
        return self.map.star_residual()

    @cached_property
    def report(self) -> CoactionReport:
        return CoactionReport(self.is_injective(), self.comodule_residual(),
                              self.podles_residual(), self.multiplicativity_residual(),
                              self.star_residual())

    def verify(self) -> "Coaction":
        """Raise ``ValueError`` unless all four coaction checks pass."""
        rep = self.report
        if not rep.passed(self.algebra.ambient_dim * _h0(self.qg)):
            raise ValueError(f"not a continuous coaction: {rep.as_dict()}")
        return self

    def spatial_residual(self) -> float:
        """``γ(c) - U(c ⊗ 1)U*`` on the basis (requires a corepresentation)."""
        if self.corep is None:
            raise ValueError("coaction carries no implementing corepresentation")
        u = self.corep.u
        n = _h0(self.qg)
        big = np.einsum("iab,cd->iacbd", self.algebra.basis, np.eye(n)).reshape(
            (self.algebra.dim,) + u.shape)
        return max_residual(u @ big @ dagger(u), self.basis_operators())


def _h0(qg) -> int:
    return qg.algebra.ambient_dim


def spatial_coaction(algebra: StarAlgebra, corep: Corepresentation, name: str = "") -> Coaction:
    """``γ(c) = U(c ⊗ 1)U*``; fails if the image leaves ``C ⊗ A``."""
    qg = corep.qg
    n = qg.h0
    if corep.hilbert_dim != algebra.ambient_dim:
        raise ValueError("corepresentation and algebra act on different spaces")
    u = corep.u
    big = np.einsum("iab,cd->iacbd", algebra.basis, np.eye(n)).reshape(
        (algebra.dim,) + u.shape)
    images = u @ big @ dagger(u)
    coeffs, resid = tensor_coords(images, (algebra, qg.algebra))
    if resid > tau(u.shape[0]):
        raise ValueError(f"conjugated algebra escapes C ⊗ A (residual {resid:.2e})")
    return Coaction(algebra, qg, coeffs, corep=corep, name=name)


def comultiplication_coaction(qg) -> Coaction:
    """``(A, Δ)`` as a coaction of itself, implemented by ``W``."""
    corep = Corepresentation(qg, qg.matrix, check=False, name="W")
    return Coaction(qg.algebra, qg, qg.comult.coeffs, corep=corep, name="Δ")


def dual_adjoint_coaction(qg) -> Coaction:
    """``a ↦ Ŵ(a ⊗ 1)Ŵ*``, a coaction of the dual quantum group on ``A``."""
    dual = qg.dual
    corep = Corepresentation(dual, dual.matrix, check=False, name="Ŵ")
    return spatial_coaction(qg.algebra, corep, name="AdŴ")


def trivial_coaction(algebra: StarAlgebra, qg) -> Coaction:
    """``c ↦ c ⊗ 1``."""
    unit = qg.algebra.unit
    if unit is None:
        raise ValueError("trivial coaction needs a unital quantum group algebra")
    coeffs = np.einsum("ij,k->ijk", np.eye(algebra.dim), unit)
    corep = None
    if hasattr(qg, "w"):
        corep = Corepresentation(qg, np.eye(algebra.ambient_dim * qg.h0), check=False,
                                 name="trivial")
    return Coaction(algebra, qg, coeffs, corep=corep, name="trivial")


# --------------------------------------------------------------------------
# covariant representations


class CovariantRep:
    """Pair ``(φ, U)`` with ``(φ ⊗ id)γ(c) = U(φ(c) ⊗ 1)U*``."""

    def __init__(self, coaction: Coaction, phi: StarRepresentation, u: Corepresentation):
        if phi.hilbert_dim != u.hilbert_dim:
            raise ValueError("representation and corepresentation act on different spaces")
        self.coaction = coaction
        self.phi = phi
        self.u = u

    @property
    def hilbert_dim(self) -> int:
        return self.phi.hilbert_dim

    def covariance_residual(self) -> float:
        g = self.coaction
        alg = g.qg.algebra
        n = alg.ambient_dim
        lhs = np.einsum("ijk,jab,kcd->iacbd", g.coeffs, self.phi.images, alg.basis,
                        optimize=True).reshape((g.algebra.dim,) + self.u.u.shape)
        big = np.einsum("iab,cd->iacbd", self.phi.images, np.eye(n)).reshape(lhs.shape)
        rhs = self.u.u @ big @ dagger(self.u.u)
        return max_residual(lhs, rhs)

    def is_faithful(self) -> bool:
        return self.phi.is_injective()


def canonical_covariant_rep(gamma: Coaction) -> CovariantRep:
    """``φ = γ`` on ``H_C ⊗ H0`` with ``U = W`` on the last leg and a new one."""
    qg = gamma.qg
    hc, n = gamma.algebra.ambient_dim, qg.h0
    phi = StarRepresentation(gamma.algebra, gamma.basis_operators(), name="γ")
    u = Corepresentation(qg, place_on_legs(qg.matrix, (hc, n, n), (1, 2)), check=False,
                         name="W23")
    return CovariantRep(gamma, phi, u)


def spatial_covariant_rep(gamma: Coaction) -> CovariantRep:
    """Inclusion of ``C`` with the implementing corepresentation."""
    if gamma.corep is None:
        raise ValueError("coaction carries no implementing corepresentation")
    phi = StarRepresentation(gamma.algebra, gamma.algebra.basis, name="inclusion")
    return CovariantRep(gamma, phi, gamma.corep)


def default_covariant_rep(gamma: Coaction) -> CovariantRep:
    """Spatial representation when available, canonical otherwise."""
    if gamma.corep is not None:
        return spatial_covariant_rep(gamma)
    return canonical_covariant_rep(gamma)


# --------------------------------------------------------------------------
# equivariant maps


class EquivariantMorphism:
    """Linear map ``f: C1 → C2`` between algebras carrying coactions."""

    def __init__(self, source: Coaction, target: Coaction, coeffs, name: str = ""):
        self.source = source
        self.target = target
        self.map = LinearMap(source.algebra, (target.algebra,), coeffs, name=name or "f")

    @property
    def coeffs(self) -> np.ndarray:
        return self.map.coeffs

    @classmethod
    def from_operator(cls, source: Coaction, target: Coaction, fn, name: str = ""):
        """Build from a function on concrete matrices."""
        imgs = np.stack([fn(b) for b in source.algebra.basis])
        coeffs, resid = tensor_coords(imgs, (target.algebra,))
        if resid > tau(target.algebra.ambient_dim):
            raise ValueError("map leaves the target algebra")
        return cls(source, target, coeffs, name)

    def equivariance_residual(self) -> float:
        """``(f ⊗ id)γ1 - γ2 ∘ f`` in coefficients."""
        f = self.coeffs
        lhs = np.einsum("ijk,jl->ilk", self.source.coeffs, f, optimize=True)
        rhs = np.einsum("ij,jlk->ilk", f, self.target.coeffs, optimize=True)
        return max_residual(lhs, rhs)

    def multiplicativity_residual(self) -> float:
        return self.map.multiplicativity_residual()

    def star_residual(self) -> float:
        return self.map.star_residual()

    def operator(self, x) -> np.ndarray:
        return tensor_operator(self.map(x), (self.target.algebra,))
