"""Braided bialgebras over the codouble and the semidirect product ``A ⊠ B``.

All products ``⊠`` here are taken with respect to ``W``.  A Yetter-Drinfeld
algebra ``B`` enters through its inclusion on ``L`` together with a compatible
pair ``(U, V)`` implementing ``β`` and ``β̂``.  With ``𝕍 = σ(V)*`` on
``H0 ⊗ L`` and ``Z`` the twist between ``U`` and ``V'``, the triple product
``A ⊠ B ⊠ B'`` on ``H0 ⊗ L ⊗ L'`` is generated by

    ι_A(a) = a ⊗ 1 ⊗ 1,
    ι_B(b) = 𝕍*_12 b_2 𝕍_12,
    ι_B'(b') = Z_23 𝕍'*_13 b'_3 𝕍'_13 Z*_23,

and ``Ψ(x) = 𝕎_13 U_23 𝕍'*_34 x_124 𝕍'_34 U*_23 𝕎*_13``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .algebra import (
    LinearMap,
    StarAlgebra,
    StarRepresentation,
    center_dimension,
    diagonal_algebra,
    scalars,
    tensor_coords,
    wedderburn_blocks,
)
from .bicharacter import w_bicharacter
from .coaction import (
    Coaction,
    bialgebra_podles,
    comultiplication_coaction,
    dual_adjoint_coaction,
    spatial_coaction,
    trivial_coaction,
)
from .config import tau
from .corep import Corepresentation
from .qgroup import FiniteGroup, QuantumGroup
from .tensor import dagger, flip, max_residual, orthonormal_columns, place_on_legs, span, subspace_equal
from .twisted import YDProduct, boxtimes, yd_boxtimes, z_unitary
from .yd import YetterDrinfeldAlgebra, check_yd, has_compatible_spatial_pair

__all__ = [
    "TripleProduct",
    "triple_product",
    "PsiMap",
    "psi_map",
    "BraidedBialgebra",
    "BraidedReport",
    "check_braided_bialgebra",
    "SemidirectBialgebra",
    "semidirect",
    "psi_route_residual",
    "trivial_yd",
    "action_corepresentation",
    "action_yd",
    "scalar_braided_bialgebra",
    "group_function_bialgebra",
    "degenerate_bialgebra",
    "partial_dual",
    "group_law_from_comultiplication",
]


# --------------------------------------------------------------------------
# products of generators


def _products(embs: Sequence[np.ndarray]) -> np.ndarray:
    """All ordered products ``e1[i] e2[j] ...``, flattened over the indices."""
    out = embs[0]
    for e in embs[1:]:
        out = np.einsum("iab,jbc->ijac", out, e, optimize=True)
        out = out.reshape(-1, *out.shape[-2:])
    return out


def _product_coords(carrier: StarAlgebra, embs: Sequence[np.ndarray]) -> np.ndarray:
    """``M`` with ``b_m = sum_p M[m, p] (product p)``."""
    pc = carrier.coords(_products(embs))  # (p, m)
    m, *_ = np.linalg.lstsq(pc.T, np.eye(carrier.dim), rcond=None)
    return m.T


def _from_generators(coords: np.ndarray, images: Sequence[np.ndarray]) -> np.ndarray:
    """Concrete images of the carrier basis under a map fixed on generators."""
    return np.einsum("mp,pab->mab", coords, _products(images), optimize=True)


def _coaction_images(emb: np.ndarray, coact: Coaction) -> np.ndarray:
    """``(ι ⊗ id)γ`` on a basis, as operators on ``N ⊗ H0``."""
    alg = coact.qg.algebra
    n, h0 = emb.shape[1], alg.ambient_dim
    return np.einsum("ijk,jab,kcd->iacbd", coact.coeffs, emb, alg.basis,
                     optimize=True).reshape(-1, n * h0, n * h0)


def _vhat(v: Corepresentation) -> np.ndarray:
    """``σ(V)*`` on ``H0 ⊗ L``."""
    ell, n = v.hilbert_dim, v.qg.h0
    f = flip(ell, n)
    return dagger(f @ v.u @ dagger(f))


def _require_spatial(b: YetterDrinfeldAlgebra) -> None:
    if not has_compatible_spatial_pair(b):
        raise ValueError(f"{b.name or 'B'} has no compatible spatial corepresentation pair")


# --------------------------------------------------------------------------
# A ⊠ B and A ⊠ B ⊠ B'


@dataclass
class _Pair:
    """``A ⊠ B`` on ``H0 ⊗ L``."""

    carrier: StarAlgebra
    iota_a: np.ndarray
    iota_b: np.ndarray
    coords: np.ndarray


def _pair_model(qg: QuantumGroup, b: YetterDrinfeldAlgebra) -> _Pair:
    n, ell = qg.h0, b.algebra.ambient_dim
    vh = _vhat(b.delta.corep)
    ia = np.einsum("iab,cd->iacbd", qg.algebra.basis, np.eye(ell)).reshape(-1, n * ell, n * ell)
    ib = np.einsum("ab,icd->iacbd", np.eye(n), b.algebra.basis).reshape(-1, n * ell, n * ell)
    ib = dagger(vh) @ ib @ vh
    carrier = StarAlgebra(span(_products([ia, ib]), n * ell), f"A⊠{b.algebra.name}")
    return _Pair(carrier, ia, ib, _product_coords(carrier, [ia, ib]))


class TripleProduct:
    """Concrete ``A ⊠ B ⊠ B'`` with its two-factor pieces."""

    def __init__(self, qg: QuantumGroup, b: YetterDrinfeldAlgebra, b2: YetterDrinfeldAlgebra):
        _require_spatial(b)
        _require_spatial(b2)
        self.qg, self.b, self.b2 = qg, b, b2
        n, ell, ell2 = qg.h0, b.algebra.ambient_dim, b2.algebra.ambient_dim
        self.shape = (n, ell, ell2)
        big = n * ell * ell2
        vh = _vhat(b.delta.corep)
        vh2 = _vhat(b2.delta.corep)
        self.z = z_unitary(w_bicharacter(qg), b.gamma.corep, b2.delta.corep)
        # U_12 𝕍'*_23 Z_13 = 𝕍'*_23 U_12 on L ⊗ H0 ⊗ L'
        sh = (ell, n, ell2)
        u12 = place_on_legs(b.gamma.corep.u, sh, (0, 1))
        v23 = place_on_legs(dagger(vh2), sh, (1, 2))
        z13 = place_on_legs(self.z, sh, (0, 2))
        self.z_residual = max_residual(u12 @ v23 @ z13, v23 @ u12)
        if self.z_residual > tau(ell * n * ell2):
            raise ValueError(f"twist characterization fails (residual {self.z_residual:.2e})")
        s = self.shape
        self.iota_a = np.stack([place_on_legs(a, s, (0,)) for a in qg.algebra.basis])
        v12 = place_on_legs(vh, s, (0, 1))
        self.iota_b = np.stack([dagger(v12) @ place_on_legs(x, s, (1,)) @ v12
                                for x in b.algebra.basis])
        v13 = place_on_legs(vh2, s, (0, 2))
        z23 = place_on_legs(self.z, s, (1, 2))
        self.iota_b2 = np.stack([z23 @ dagger(v13) @ place_on_legs(x, s, (2,)) @ v13 @ dagger(z23)
                                 for x in b2.algebra.basis])
        self.embeddings = (self.iota_a, self.iota_b, self.iota_b2)
        self.carrier = StarAlgebra(span(_products(self.embeddings), big),
                                   f"A⊠{b.algebra.name}⊠{b2.algebra.name}")
        self.left = _pair_model(qg, b)
        self.right = _pair_model(qg, b2)

    @property
    def dim(self) -> int:
        return self.carrier.dim

    @cached_property
    def coords(self) -> np.ndarray:
        return _product_coords(self.carrier, self.embeddings)

    def closure_residual(self) -> float:
        return self.carrier.closure_residual()

    def pair_consistency(self) -> float:
        """Distance between the explicit ``A ⊠ B`` and the generic twisted product."""
        t = boxtimes(comultiplication_coaction(self.qg), self.b.delta, w_bicharacter(self.qg))
        return max(max_residual(t.iota_c.images, self.left.iota_a),
                   max_residual(t.iota_d.images, self.left.iota_b))

    # -- coactions ---------------------------------------------------------

    def _generator_coaction(self, coacts: Sequence[Coaction], name: str) -> Coaction:
        imgs = [_coaction_images(e, c) for e, c in zip(self.embeddings, coacts)]
        images = _from_generators(self.coords, imgs)
        alg = coacts[0].qg.algebra
        coeffs, resid = tensor_coords(images, (self.carrier, alg))
        if resid > tau(images.shape[-1]):
            raise ValueError(f"{name} leaves the triple product (residual {resid:.2e})")
        return Coaction(self.carrier, coacts[0].qg, coeffs, name=name)

    @cached_property
    def a_coaction(self) -> Coaction:
        return self._generator_coaction(
            [comultiplication_coaction(self.qg), self.b.gamma, self.b2.gamma], "A-coaction")

    @cached_property
    def dual_coaction(self) -> Coaction:
        return self._generator_coaction(
            [dual_adjoint_coaction(self.qg), self.b.delta, self.b2.delta], "Â-coaction")

    def coaction_report(self) -> dict:
        a, d = self.a_coaction, self.dual_coaction
        y = YetterDrinfeldAlgebra(a, d)
        return {"a_coaction": a.report.as_dict(), "dual_coaction": d.report.as_dict(),
                "compatibility": check_yd(y)}

    # -- associativity ---------------------------------------------------------

    def associator_residual(self) -> float:
        """``A ⊠ (B ⊠ B')`` against this model, entrywise.

        ``B ⊠ B'`` carries the tensor-product pair ``(U ⊤ U', V ⊤ V')``; the
        generic twisted product of ``A`` with it acts on the same space.
        """
        bb = yd_boxtimes(self.b, self.b2)
        if not bb.yd.is_spatial:
            raise ValueError("B ⊠ B' lost its spatial pair")
        outer = boxtimes(comultiplication_coaction(self.qg), bb.yd.delta, w_bicharacter(self.qg))
        inner = bb.product
        to_outer = lambda x: np.einsum("m,mab->ab", inner.carrier.coords(x), outer.iota_d.images)
        eb = np.stack([to_outer(x) for x in inner.iota_c.images])
        eb2 = np.stack([to_outer(x) for x in inner.iota_d.images])
        return max(max_residual(outer.iota_c.images, self.iota_a),
                   max_residual(eb, self.iota_b), max_residual(eb2, self.iota_b2))


def triple_product(qg: QuantumGroup, b: YetterDrinfeldAlgebra,
                   b2: YetterDrinfeldAlgebra) -> TripleProduct:
    return TripleProduct(qg, b, b2)


# --------------------------------------------------------------------------
# Ψ


def _psi_unitary(t: TripleProduct) -> np.ndarray:
    """``𝕎_13 U_23 𝕍'*_34`` on ``H0 ⊗ L ⊗ H0 ⊗ L'``."""
    n, ell, ell2 = t.shape
    sh = (n, ell, n, ell2)
    w13 = place_on_legs(t.qg.matrix, sh, (0, 2))
    u23 = place_on_legs(t.b.gamma.corep.u, sh, (1, 2))
    v34 = place_on_legs(dagger(_vhat(t.b2.delta.corep)), sh, (2, 3))
    return w13 @ u23 @ v34


def _psi_concrete(t: TripleProduct, x: np.ndarray) -> np.ndarray:
    n, ell, ell2 = t.shape
    sh = (n, ell, n, ell2)
    u = _psi_unitary(t)
    xs = x.reshape(-1, n * ell * ell2, n * ell * ell2)
    big = np.stack([_insert_leg(y, (n, ell, ell2), 2, n) for y in xs])
    out = u @ big @ dagger(u)
    return out.reshape(x.shape[:-2] + out.shape[-2:])


def _insert_leg(x: np.ndarray, shape: Sequence[int], pos: int, dim: int) -> np.ndarray:
    """``x`` on ``shape`` placed into a space with an extra identity leg at ``pos``."""
    new_shape = list(shape[:pos]) + [dim] + list(shape[pos:])
    legs = [i if i < pos else i + 1 for i in range(len(shape))]
    return place_on_legs(x, new_shape, legs)


@dataclass
class PsiMap:
    map: LinearMap
    identity_residuals: tuple[float, float, float]
    injective: bool
    escape: float


def psi_map(t: TripleProduct) -> PsiMap:
    """``Ψ: A ⊠ B ⊠ B' → (A ⊠ B) ⊗ (A ⊠ B')`` with its three identities."""
    n, ell, ell2 = t.shape
    images = _psi_concrete(t, t.carrier.basis)
    coeffs, escape = tensor_coords(images, (t.left.carrier, t.right.carrier))
    if escape > tau(images.shape[-1]):
        raise ValueError(f"Ψ leaves (A⊠B)⊗(A⊠B') (residual {escape:.2e})")
    lm = LinearMap(t.carrier, (t.left.carrier, t.right.carrier), coeffs, name="Ψ")
    qg = t.qg
    # Ψι_A = (ι_A ⊗ ι_A)Δ_A
    lhs_a = _psi_concrete(t, t.iota_a)
    rhs_a = np.einsum("ijk,jab,kcd->iacbd", qg.comult.coeffs, t.left.iota_a, t.right.iota_a,
                      optimize=True).reshape(lhs_a.shape)
    # Ψι_B = (ι_B ⊗ ι_A)β
    lhs_b = _psi_concrete(t, t.iota_b)
    rhs_b = np.einsum("ijk,jab,kcd->iacbd", t.b.gamma.coeffs, t.left.iota_b, t.right.iota_a,
                      optimize=True).reshape(lhs_b.shape)
    # Ψι_B' = 1 ⊗ ι_B'
    lhs_c = _psi_concrete(t, t.iota_b2)
    rhs_c = np.einsum("ab,icd->iacbd", np.eye(n * ell), t.right.iota_b,
                      optimize=True).reshape(lhs_c.shape)
    res = (max_residual(lhs_a, rhs_a), max_residual(lhs_b, rhs_b), max_residual(lhs_c, rhs_c))
    return PsiMap(lm, res, lm.is_injective(), escape)


# --------------------------------------------------------------------------
# braided bialgebras


class BraidedBialgebra:
    """Yetter-Drinfeld algebra ``B`` with ``Δ_B: B → B ⊠ B``.

    ``comult`` holds coordinates in the carrier of ``B ⊠ B`` built from
    ``β`` on the left and ``β̂`` on the right.
    """

    def __init__(self, yd: YetterDrinfeldAlgebra, comult, name: str = ""):
        _require_spatial(yd)
        self.yd = yd
        self.product: YDProduct = yd_boxtimes(yd, yd)
        carrier = self.product.product.carrier
        self.comult = LinearMap(yd.algebra, (carrier,), comult, name="Δ_B")
        self.name = name or f"braided {yd.algebra.name}"

    @classmethod
    def from_operator(cls, yd: YetterDrinfeldAlgebra, fn, name: str = ""):
        """Build from ``fn(ι1, ι2, x)``: concrete ``Δ_B(x)`` on ``L ⊗ L``.

        ``ι1`` and ``ι2`` are the embeddings of ``B`` into ``B ⊠ B`` as
        callables on concrete operators.
        """
        prod = yd_boxtimes(yd, yd).product
        alg = yd.algebra
        i1 = lambda x: prod.iota_c(alg.coords(x))
        i2 = lambda x: prod.iota_d(alg.coords(x))
        images = np.stack([fn(i1, i2, x) for x in alg.basis])
        coeffs, resid = tensor_coords(images, (prod.carrier,))
        if resid > tau(images.shape[-1]):
            raise ValueError(f"Δ_B leaves B ⊠ B (residual {resid:.2e})")
        return cls(yd, coeffs, name=name)

    @property
    def qg(self) -> QuantumGroup:
        return self.yd.qg

    @property
    def algebra(self) -> StarAlgebra:
        return self.yd.algebra

    def concrete(self) -> np.ndarray:
        """``Δ_B`` on the basis, as operators on ``L ⊗ L``."""
        return self.comult.coeffs @ self.product.product.carrier.basis.reshape(
            self.product.product.carrier.dim, -1)

    def corrupted(self, index: tuple[int, int] = (0, 0), amount: float = 0.1) -> "BraidedBialgebra":
        c = self.comult.coeffs.copy()
        c[index] += amount
        return BraidedBialgebra(self.yd, c, name=self.name + " (corrupted)")


@dataclass
class BraidedReport:
    equivariance_a: float
    equivariance_dual: float
    multiplicative: float
    star: float
    associator: float
    coassociativity: float
    podles_left: float
    podles_right: float
    injective: bool
    unital: bool

    def bisimplifiable(self, tol: float) -> bool:
        return self.podles_left <= tol and self.podles_right <= tol

    def passed(self, tol: float) -> bool:
        return max(self.equivariance_a, self.equivariance_dual, self.multiplicative,
                   self.star, self.associator, self.coassociativity) <= tol

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def _podles_distance(left: np.ndarray, right: np.ndarray, target) -> float:
    """Distance between ``span(left · right)`` and ``target``."""
    n = target.ambient_dim
    prods = np.einsum("iab,jbc->ijac", left, right, optimize=True).reshape(-1, n, n)
    return subspace_equal(span(prods, n), target)[1]


def check_braided_bialgebra(bb: BraidedBialgebra) -> BraidedReport:
    """Equivariance, coassociativity (through the associator) and Podleś data."""
    prod = bb.product
    t = prod.product
    d = bb.comult.coeffs
    b = bb.yd
    eq = []
    for coact, diag in ((b.gamma, prod.yd.gamma), (b.delta, prod.yd.delta)):
        lhs = np.einsum("ijk,jm->imk", coact.coeffs, d)
        rhs = np.einsum("ip,pmk->imk", d, diag.coeffs)
        eq.append(max_residual(lhs, rhs))
    # triple products (B ⊠ B) ⊠ B and B ⊠ (B ⊠ B) on L ⊗ L ⊗ L
    lnest = yd_boxtimes(prod.yd, b).product
    rnest = yd_boxtimes(b, prod.yd).product
    emb = lambda outer_iota, inner, x: np.einsum(
        "m,mab->ab", inner.carrier.coords(x), outer_iota.images)
    l1 = np.stack([emb(lnest.iota_c, t, x) for x in t.iota_c.images])
    l2 = np.stack([emb(lnest.iota_c, t, x) for x in t.iota_d.images])
    l3 = lnest.iota_d.images
    r1 = rnest.iota_c.images
    r2 = np.stack([emb(rnest.iota_d, t, x) for x in t.iota_c.images])
    r3 = np.stack([emb(rnest.iota_d, t, x) for x in t.iota_d.images])
    assoc = max(max_residual(l1, r1), max_residual(l2, r2), max_residual(l3, r3))
    # (Δ ⊠ id) and (id ⊠ Δ) on B ⊠ B, fixed on generators
    delta_left = np.einsum("im,mab->iab", d, lnest.iota_c.images)   # Δ(b) in the first slot
    delta_right = np.einsum("im,mab->iab", d, rnest.iota_d.images)  # Δ(b) in the last slots
    coords = t.product_coords.reshape(t.dim, -1)
    f1 = _from_generators(coords, [delta_left, l3])
    f2 = _from_generators(coords, [r1, delta_right])
    lhs = np.einsum("im,mab->iab", d, f1)
    rhs = np.einsum("im,mab->iab", d, f2)
    coassoc = max_residual(lhs, rhs)
    img = bb.concrete().reshape(-1, *t.carrier.basis.shape[1:])
    pl = _podles_distance(img, t.iota_c.images, t.carrier.space)
    pr = _podles_distance(img, t.iota_d.images, t.carrier.space)
    return BraidedReport(eq[0], eq[1], bb.comult.multiplicativity_residual(),
                         bb.comult.star_residual(), assoc, coassoc, pl, pr,
                         bb.comult.is_injective(), b.algebra.is_unital)


# --------------------------------------------------------------------------
# the semidirect product


class SemidirectBialgebra:
    """``C = A ⊠ B`` with ``Δ_C = Ψ ∘ (id_A ⊠ Δ_B)``."""

    def __init__(self, qg: QuantumGroup, bb: BraidedBialgebra):
        self.qg = qg
        self.braided = bb
        self.triple = triple_product(qg, bb.yd, bb.yd)
        self.psi = psi_map(self.triple)
        pair = self.triple.left
        self.carrier = pair.carrier
        # id_A ⊠ Δ_B: ι_A(a)ι_B(b) ↦ ι_A(a) ι_{B⊠B}(Δ_B(b))
        t = bb.product.product
        bb_to_triple = _from_generators(t.product_coords.reshape(t.dim, -1),
                                        [self.triple.iota_b, self.triple.iota_b2])
        delta_b = np.einsum("im,mab->iab", bb.comult.coeffs, bb_to_triple)
        images = _from_generators(pair.coords, [self.triple.iota_a, delta_b])
        coeffs, resid = tensor_coords(images, (self.triple.carrier,))
        if resid > tau(images.shape[-1]):
            raise ValueError(f"id_A ⊠ Δ_B leaves A ⊠ B ⊠ B (residual {resid:.2e})")
        self.id_boxtimes_delta = LinearMap(self.carrier, (self.triple.carrier,), coeffs,
                                           name="id⊠Δ_B")
        dc = np.einsum("im,mjk->ijk", coeffs, self.psi.map.coeffs)
        self.comult = LinearMap(self.carrier, (self.carrier, self.carrier), dc, name="Δ_C")

    @property
    def dim(self) -> int:
        return self.carrier.dim

    def coassociativity_residual(self) -> float:
        d = self.comult.coeffs
        lhs = np.einsum("ijc,jab->iabc", d, d, optimize=True)
        rhs = np.einsum("iaj,jbc->iabc", d, d, optimize=True)
        return max_residual(lhs, rhs)

    def podles_residuals(self) -> tuple[float, float]:
        return bialgebra_podles(self.carrier, self.comult)

    def is_injective(self) -> bool:
        return self.comult.is_injective()

    @property
    def is_unital(self) -> bool:
        return self.carrier.is_unital

    def is_compact_quantum_group(self, tol: float | None = None) -> bool:
        tol = tau(self.carrier.ambient_dim**2) if tol is None else tol
        p1, p2 = self.podles_residuals()
        return (self.is_unital and self.coassociativity_residual() <= tol
                and p1 <= tol and p2 <= tol)

    def blocks(self) -> list[int]:
        return wedderburn_blocks(self.carrier)

    def center_dimension(self) -> int:
        return center_dimension(self.carrier)

    def intertwining_parts(self) -> dict:
        """``(id_A ⊠ Δ_B)ι_A = ι_A`` and ``(id_A ⊠ Δ_B)ι_B = ι_{B⊠B} Δ_B``, by name.

        Also records whether the generator-defined map is a *-homomorphism.
        ``iota_a`` can only vanish when ``Δ_B`` is unital.
        """
        m = self.id_boxtimes_delta
        pair = self.triple.left
        ia = np.einsum("im,mab->iab", self.carrier.coords(pair.iota_a),
                       m.basis_operators())
        ib = np.einsum("im,mab->iab", self.carrier.coords(pair.iota_b),
                       m.basis_operators())
        t = self.braided.product.product
        bb_to_triple = _from_generators(t.product_coords.reshape(t.dim, -1),
                                        [self.triple.iota_b, self.triple.iota_b2])
        want_b = np.einsum("im,mab->iab", self.braided.comult.coeffs, bb_to_triple)
        return {"iota_a": max_residual(ia, self.triple.iota_a), "iota_b": max_residual(ib, want_b),
                "multiplicative": m.multiplicativity_residual(), "star": m.star_residual()}

    def intertwining_residual(self) -> float:
        return max(self.intertwining_parts().values())

    def comult_unit_residual(self) -> float:
        """``‖Δ_B(1) − 1‖`` inside ``B ⊠ B``."""
        b = self.braided
        t = b.product.product
        one = b.algebra.unit
        if one is None:
            return float("inf")
        img = np.einsum("m,mab->ab", one @ b.comult.coeffs, t.carrier.basis)
        return max_residual(img, np.eye(img.shape[0]))

    def matches_comultiplication(self) -> float:
        """Concrete ``Δ_C`` against ``W (x ⊗ 1) W*`` when ``B = C`` (so ``C = A``)."""
        if self.braided.algebra.dim != 1:
            raise ValueError("only meaningful for the one-dimensional braided bialgebra")
        w = self.qg.matrix
        n = self.qg.h0
        basis = self.carrier.basis
        want = w @ np.einsum("iab,cd->iacbd", basis, np.eye(n)).reshape(-1, n * n, n * n) @ dagger(w)
        return max_residual(self.comult.basis_operators(), want)


def semidirect(qg: QuantumGroup, bb: BraidedBialgebra) -> SemidirectBialgebra:
    if not bb.qg.same_as(qg):
        raise ValueError("braided bialgebra lives over a different quantum group")
    return SemidirectBialgebra(qg, bb)


def psi_route_residual(qg: QuantumGroup, b: YetterDrinfeldAlgebra) -> float:
    """``(id_C ⊗ Ψ)Ψ' = (Ψ ⊗ id_C)Ψ''`` on the generators of ``A ⊠ B ⊠ B ⊠ B``.

    ``Ψ'`` belongs to ``A ⊠ B ⊠ (B ⊠ B)`` and ``Ψ''`` to ``A ⊠ (B ⊠ B) ⊠ B``;
    both act on ``H0 ⊗ L ⊗ L ⊗ L`` and the comparison is made on
    ``H0 ⊗ L ⊗ H0 ⊗ L ⊗ H0 ⊗ L``.
    """
    _require_spatial(b)
    bb = yd_boxtimes(b, b)
    n, ell = qg.h0, b.algebra.ambient_dim
    t1 = triple_product(qg, b, bb.yd)   # A ⊠ B ⊠ (B ⊠ B)
    t2 = triple_product(qg, bb.yd, b)   # A ⊠ (B ⊠ B) ⊠ B
    inner = bb.product
    # generators of the four factors in each model
    def split(outer_emb, x_imgs):
        return np.stack([np.einsum("m,mab->ab", inner.carrier.coords(x), outer_emb)
                         for x in x_imgs])

    g1 = [t1.iota_a, t1.iota_b, split(t1.iota_b2, inner.iota_c.images),
          split(t1.iota_b2, inner.iota_d.images)]
    g2 = [t2.iota_a, split(t2.iota_b, inner.iota_c.images),
          split(t2.iota_b, inner.iota_d.images), t2.iota_b2]
    psi = triple_product(qg, b, b)
    six = (n, ell, n, ell, n, ell)
    u = _psi_unitary(psi)  # on H0 ⊗ L ⊗ H0 ⊗ L
    u_right = place_on_legs(u, six, (2, 3, 4, 5))
    u_left = place_on_legs(u, six, (0, 1, 2, 3))
    res = 0.0
    for x1, x2 in zip(g1, g2):
        # Ψ' lands on (H0 ⊗ L) ⊗ (H0 ⊗ L ⊗ L); then Ψ on the last three legs
        y1 = _psi_concrete(t1, x1)
        y1 = np.stack([u_right @ _insert_leg(y, (n, ell, n, ell, ell), 4, n) @ dagger(u_right)
                       for y in y1])
        # Ψ'' lands on (H0 ⊗ L ⊗ L) ⊗ (H0 ⊗ L); then Ψ on the first three legs
        y2 = _psi_concrete(t2, x2)
        y2 = np.stack([u_left @ _insert_leg(y, (n, ell, ell, n, ell), 2, n) @ dagger(u_left)
                       for y in y2])
        res = max(res, max_residual(y1, y2))
    return res


# --------------------------------------------------------------------------
# constructors


def trivial_yd(algebra: StarAlgebra, qg: QuantumGroup, name: str = "") -> YetterDrinfeldAlgebra:
    """Both coactions trivial, implemented by identities."""
    return YetterDrinfeldAlgebra(trivial_coaction(algebra, qg), trivial_coaction(algebra, qg.dual),
                                 name=name or f"trivial({algebra.name})")


def action_corepresentation(qg: QuantumGroup, perms: Sequence[Sequence[int]]) -> Corepresentation:
    """``Σ_g P_g ⊗ e_g`` for a group acting on ``l^2(K)`` by permutations.

    ``qg`` must be a function-algebra side (its algebra holds the indicators
    ``e_g``).  ``perms[g][k]`` is the image of ``k`` under the action of
    ``g``; the orientation ``g ↦ P_g`` or ``g ↦ P_{g^-1}`` is fixed by the
    corepresentation law.
    """
    grp: FiniteGroup = qg.group
    if grp is None or qg.side != "function-algebra":
        raise ValueError("action corepresentation needs a function-algebra side")
    k = len(perms[0])
    mats = []
    for g in range(grp.order):
        p = np.zeros((k, k), dtype=np.complex128)
        for src, dst in enumerate(perms[g]):
            p[dst, src] = 1.0
        mats.append(p)
    last = None
    for orient in (lambda g: g, grp.inverse):
        u = sum(np.kron(mats[orient(g)], grp.indicator(g)) for g in range(grp.order))
        try:
            return Corepresentation(qg, u, name="action")
        except ValueError as exc:
            last = exc
    raise ValueError(f"permutations do not define an action: {last}")


def action_yd(qg: QuantumGroup, perms, name: str = "") -> YetterDrinfeldAlgebra:
    """``C(K)`` with a group acting by permutations and the other coaction trivial.

    On the group-algebra side the action is the ``Â``-coaction; on the
    function-algebra side it is the ``A``-coaction.
    """
    alg = diagonal_algebra(len(perms[0]))
    alg.name = "C(K)"
    if qg.side == "function-algebra":
        gamma = spatial_coaction(alg, action_corepresentation(qg, perms), name="action")
        delta = trivial_coaction(alg, qg.dual)
    else:
        gamma = trivial_coaction(alg, qg)
        delta = spatial_coaction(alg, action_corepresentation(qg.dual, perms), name="action")
    return YetterDrinfeldAlgebra(gamma, delta, name=name or "C(K)")


def scalar_braided_bialgebra(qg: QuantumGroup) -> BraidedBialgebra:
    """``B = ℂ`` with ``Δ_B(1) = 1 ⊠ 1``."""
    yd = trivial_yd(scalars(), qg, name="C")
    return BraidedBialgebra.from_operator(yd, lambda i1, i2, x: i1(x) @ i2(np.eye(1)),
                                          name="trivial")


def group_function_bialgebra(yd: YetterDrinfeldAlgebra, table) -> BraidedBialgebra:
    """``C(K)`` with ``Δ(f)(k1, k2) = f(k1 k2)`` written through ``ι1`` and ``ι2``."""
    grp = table if isinstance(table, FiniteGroup) else FiniteGroup(table)
    k = grp.order
    if yd.algebra.ambient_dim != k:
        raise ValueError("algebra and group have different sizes")
    proj = [np.diag(np.eye(k)[i]).astype(np.complex128) for i in range(k)]

    def comult(i1, i2, x):
        f = np.diag(x)
        return sum(f[grp.mul(a, b)] * (i1(proj[a]) @ i2(proj[b]))
                   for a in range(k) for b in range(k))

    return BraidedBialgebra.from_operator(yd, comult, name="C(K)")


def degenerate_bialgebra(qg: QuantumGroup) -> BraidedBialgebra:
    """``B = ℂ²`` with ``Δ(x) = x ⊠ e1``: coassociative but not bisimplifiable."""
    alg = diagonal_algebra(2)
    yd = trivial_yd(alg, qg, name="C^2")
    e1 = np.diag([1.0, 0.0]).astype(np.complex128)
    return BraidedBialgebra.from_operator(yd, lambda i1, i2, x: i1(x) @ i2(e1),
                                          name="degenerate")


def partial_dual(qg: QuantumGroup, k_table, perms) -> SemidirectBialgebra:
    """``A ⊠ C(K)`` for a group acting on ``K`` by automorphisms."""
    yd = action_yd(qg, perms)
    return semidirect(qg, group_function_bialgebra(yd, k_table))


def group_law_from_comultiplication(sd: SemidirectBialgebra) -> np.ndarray:
    """Multiplication table read off a commutative ``Δ_C``.

    The minimal projections ``p_x`` of the carrier satisfy
    ``Δ_C(p_z) = Σ_{xy=z} p_x ⊗ p_y``; the table is returned with rows and
    columns in the order of the projections.
    """
    alg = sd.carrier
    if center_dimension(alg) != alg.dim:
        raise ValueError("carrier is not commutative")
    # simultaneous diagonalization: the carrier consists of commuting normal matrices
    rng = np.random.default_rng(0)
    h = rng.normal(size=alg.dim) @ alg.basis.reshape(alg.dim, -1)
    h = h.reshape(alg.ambient_dim, alg.ambient_dim)
    h = 0.5 * (h + dagger(h))
    _, vecs = np.linalg.eigh(h)
    # characters are evaluations at joint eigenvectors
    ops = alg.basis
    vals = np.einsum("ak,iab,bk->ki", np.conj(vecs), ops, vecs)  # (vector, basis)
    chars: list[np.ndarray] = []
    for row in vals:
        if not any(np.allclose(row, c, atol=1e-6) for c in chars):
            chars.append(row)
    chars = np.array(chars)
    if chars.shape[0] != alg.dim:
        raise ArithmeticError("could not separate the characters")
    # p_x has coordinates with chars @ p_x = e_x
    proj = np.linalg.inv(chars).T
    d = sd.comult.coeffs
    n = alg.dim
    table = -np.ones((n, n), dtype=int)
    for z in range(n):
        img = np.einsum("i,ijk->jk", proj[z], d)
        # coefficient of p_x ⊗ p_y is the value of chars at (x, y)
        vals_xy = np.einsum("xj,yk,jk->xy", chars, chars, img)
        for x, y in zip(*np.nonzero(np.abs(vals_xy - 1) < 1e-6)):
            table[x, y] = z
    if (table < 0).any():
        raise ArithmeticError("comultiplication is not induced by a group law")
    return table
