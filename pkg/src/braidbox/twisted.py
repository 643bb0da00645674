"""Heisenberg pairs and twisted tensor products ``C ⊠_χ D``.

For coactions ``γ`` of ``G`` on ``C`` and ``δ`` of ``H`` on ``D`` with
faithful covariant representations ``(φ, U)`` on ``H`` and ``(ψ, U')`` on
``K``, and a bicharacter ``χ ∈ Â ⊗ B̂``,

    Z = (ρ_U ⊗ ρ_U')(χ*),   ι_C(c) = φ(c) ⊗ 1,   ι_D(d) = Z(1 ⊗ ψ(d))Z*,

and ``C ⊠_χ D`` is the span of ``ι_C(C) ι_D(D)``.  With an R-matrix the
product carries the diagonal coaction ``Ad(U ⊤ U')``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .algebra import (
    LinearMap,
    StarAlgebra,
    StarRepresentation,
    center_dimension,
    generate_algebra,
    tensor_coords,
)
from .bicharacter import Bicharacter, w_bicharacter
from .coaction import (
    Coaction,
    CovariantRep,
    EquivariantMorphism,
    comultiplication_coaction,
    default_covariant_rep,
)
from .config import tau
from .corep import Corepresentation, apply_rep_tensor, braiding_unitary, rep_from_corep, tensor_corep
from .qgroup import QuantumGroup
from .tensor import (
    OperatorSubspace,
    dagger,
    flip,
    full_matrix_space,
    kron,
    max_residual,
    place_on_legs,
    span,
    subspace_equal,
    subspace_product,
)

__all__ = [
    "HeisenbergPair",
    "TwistedTensor",
    "canonical_heisenberg_pair",
    "extend_heisenberg_pair",
    "heisenberg_pair_from_product",
    "z_unitary",
    "z_relation_residual",
    "boxtimes",
    "diagonal_coaction",
    "generator_coaction",
    "morphism_boxtimes",
    "associator",
    "braiding_crossed_iso",
    "recover_bicharacter",
    "heisenberg_double",
    "yd_boxtimes",
    "BraidingIsoResult",
    "AssociatorResult",
    "HeisenbergDouble",
]


# --------------------------------------------------------------------------
# Heisenberg pairs


def _slice_rep(qg: QuantumGroup, rep: StarRepresentation) -> np.ndarray:
    """``(id ⊗ rep)W`` on ``H0 ⊗ L``."""
    inc = StarRepresentation(qg.dual_algebra, qg.dual_algebra.basis)
    return apply_rep_tensor(qg.w_coeffs, (inc, rep))


@dataclass
class HeisenbergPair:
    """Representations ``α`` of ``A`` and ``β`` of ``B`` on a common space.

    The relation is ``W^A_{1α} W^B_{2β} = W^B_{2β} W^A_{1α} χ12`` on
    ``H0^A ⊗ H0^B ⊗ L``.
    """

    chi: Bicharacter
    alpha: StarRepresentation
    beta: StarRepresentation

    @property
    def target_dim(self) -> int:
        return self.alpha.hilbert_dim

    def _legs(self):
        src, tgt = self.chi.source, self.chi.target
        n, m, ell = src.h0, tgt.h0, self.target_dim
        sh = (n, m, ell)
        wa = place_on_legs(_slice_rep(src, self.alpha), sh, (0, 2))
        wb = place_on_legs(_slice_rep(tgt, self.beta), sh, (1, 2))
        return wa, wb, sh

    def relation_residual(self, swapped: bool = False) -> float:
        """Residual of the Heisenberg relation.

        ``swapped=True`` tests ``W^B_{2β} W^A_{1α} = W^A_{1α} W^B_{2β} χ12``
        instead, which fails for non-trivial pairs.
        """
        wa, wb, sh = self._legs()
        chi12 = place_on_legs(self.chi.chi, sh, (0, 1))
        if swapped:
            return max_residual(wb @ wa, wa @ wb @ chi12)
        return max_residual(wa @ wb, wb @ wa @ chi12)

    def recovered(self) -> np.ndarray:
        """``W^A_{1α}* W^B_{2β}* W^A_{1α} W^B_{2β}``, which should be ``χ ⊗ 1``."""
        wa, wb, sh = self._legs()
        return dagger(wa) @ dagger(wb) @ wa @ wb


def canonical_heisenberg_pair(qg: QuantumGroup) -> HeisenbergPair:
    """Inclusions of ``A`` and ``Â`` on ``H0``; a ``W``-Heisenberg pair."""
    chi = w_bicharacter(qg)
    alpha = StarRepresentation(qg.algebra, qg.algebra.basis, name="A ⊂ B(H0)")
    beta = StarRepresentation(qg.dual_algebra, qg.dual_algebra.basis, name="Â ⊂ B(H0)")
    return HeisenbergPair(chi, alpha, beta)


def extend_heisenberg_pair(p: HeisenbergPair, comult_a: np.ndarray | None = None,
                           comult_b: np.ndarray | None = None) -> HeisenbergPair:
    """``α'(a) = ((id ⊗ α)Δ_A(a))_13`` and ``β'(b) = ((id ⊗ β)Δ_B(b))_23``.

    The optional comultiplication coefficient arrays replace ``Δ_A``/``Δ_B``;
    they exist to feed corrupted data in negative controls.
    """
    src, tgt = p.chi.source, p.chi.target
    n, m, ell = src.h0, tgt.h0, p.target_dim
    sh = (n, m, ell)
    da = src.comult.coeffs if comult_a is None else comult_a
    db = tgt.comult.coeffs if comult_b is None else comult_b
    inc_a = StarRepresentation(src.algebra, src.algebra.basis)
    inc_b = StarRepresentation(tgt.algebra, tgt.algebra.basis)
    ai = apply_rep_tensor(da, (inc_a, p.alpha))
    bi = apply_rep_tensor(db, (inc_b, p.beta))
    ai = np.stack([place_on_legs(x, sh, (0, 2)) for x in ai])
    bi = np.stack([place_on_legs(x, sh, (1, 2)) for x in bi])
    return HeisenbergPair(p.chi, StarRepresentation(src.algebra, ai, name="α'"),
                          StarRepresentation(tgt.algebra, bi, name="β'"))


# --------------------------------------------------------------------------
# the Z unitary


def z_unitary(chi: Bicharacter, u_left: Corepresentation, u_right: Corepresentation) -> np.ndarray:
    """``Z = (ρ_left ⊗ ρ_right)(χ*)`` on ``H ⊗ K``."""
    if not u_left.qg.same_as(chi.source) or not u_right.qg.same_as(chi.target):
        raise ValueError("corepresentations do not match the bicharacter")
    rho_l = rep_from_corep(u_left)
    rho_r = rep_from_corep(u_right)
    coeffs, resid = tensor_coords(dagger(chi.chi),
                                  (chi.source.dual_algebra, chi.target.dual_algebra))
    if resid > tau(chi.chi.shape[0]):
        raise ValueError("χ* leaves Â ⊗ B̂")
    return apply_rep_tensor(coeffs, (rho_l, rho_r))


def z_relation_residual(z: np.ndarray, u_left: Corepresentation, u_right: Corepresentation,
                        pair: HeisenbergPair) -> float:
    """``U^H_{1α} U^K_{2β} Z12 = U^K_{2β} U^H_{1α}`` on ``H ⊗ K ⊗ L``."""
    h, k, ell = u_left.hilbert_dim, u_right.hilbert_dim, pair.target_dim
    sh = (h, k, ell)
    def rep_leg(u: Corepresentation, rep: StarRepresentation, leg: int):
        # (id ⊗ rep)U = sum_j U_j ⊗ rep(a_j)
        op = np.einsum("jab,jcd->acbd", u.components, rep.images).reshape(
            u.hilbert_dim * ell, u.hilbert_dim * ell)
        return place_on_legs(op, sh, (leg, 2))

    ua = rep_leg(u_left, pair.alpha, 0)
    ub = rep_leg(u_right, pair.beta, 1)
    z12 = place_on_legs(z, sh, (0, 1))
    return max_residual(ua @ ub @ z12, ub @ ua)


# --------------------------------------------------------------------------
# twisted tensor products


def _product_span(xs: np.ndarray, ys: np.ndarray) -> tuple[np.ndarray, OperatorSubspace]:
    prods = np.einsum("iab,jbc->ijac", xs, ys, optimize=True)
    n = xs.shape[1]
    return prods, span(prods.reshape(-1, n, n), n)


class TwistedTensor:
    """Concrete model of ``C ⊠_χ D`` on ``H ⊗ K``.

    Attributes
    ----------
    left, right : Coaction
    chi : Bicharacter
    rep_left, rep_right : CovariantRep
    z : numpy.ndarray
    carrier : StarAlgebra
    iota_c, iota_d : StarRepresentation
        Embeddings as representations of ``C`` and ``D`` on ``H ⊗ K``.
    """

    def __init__(self, left: Coaction, right: Coaction, chi: Bicharacter,
                 rep_left: CovariantRep, rep_right: CovariantRep, z: np.ndarray,
                 carrier: StarAlgebra, iota_c: StarRepresentation, iota_d: StarRepresentation,
                 products: np.ndarray):
        self.left = left
        self.right = right
        self.chi = chi
        self.rep_left = rep_left
        self.rep_right = rep_right
        self.z = z
        self.carrier = carrier
        self.iota_c = iota_c
        self.iota_d = iota_d
        self.products = products  # ι_C(c_i) ι_D(d_j), shape (dim C, dim D, N, N)

    def __repr__(self) -> str:
        return (f"TwistedTensor({self.left.algebra.name or '?'} ⊠ "
                f"{self.right.algebra.name or '?'}, dim={self.dim})")

    @property
    def dim(self) -> int:
        return self.carrier.dim

    @property
    def hilbert_dims(self) -> tuple[int, int]:
        return self.rep_left.hilbert_dim, self.rep_right.hilbert_dim

    @cached_property
    def reverse_products(self) -> np.ndarray:
        return np.einsum("jab,ibc->ijac", self.iota_d.images, self.iota_c.images, optimize=True)

    def crossed_product_residual(self) -> float:
        """Distance between ``ι_C(C)ι_D(D)`` and ``ι_D(D)ι_C(C)``."""
        n = self.carrier.ambient_dim
        rev = span(self.reverse_products.reshape(-1, n, n), n)
        return subspace_equal(self.carrier.space, rev)[1]

    def embedding_report(self) -> dict:
        out = {}
        for name, rep in (("iota_c", self.iota_c), ("iota_d", self.iota_d)):
            out[name] = {"multiplicative": rep.multiplicativity_residual(),
                         "star": rep.star_residual(),
                         "injective": rep.is_injective()}
        return out

    @cached_property
    def product_coords(self) -> np.ndarray:
        """Carrier basis expressed through the products ``ι_C(c_i) ι_D(d_j)``.

        Returns ``M`` with ``b_m = sum_ij M[m, i, j] ι_C(c_i) ι_D(d_j)``.
        """
        dc, dd = self.left.algebra.dim, self.right.algebra.dim
        pc = self.carrier.coords(self.products).reshape(dc * dd, self.dim)  # (ij, m)
        m, *_ = np.linalg.lstsq(pc.T, np.eye(self.dim), rcond=None)
        return m.T.reshape(self.dim, dc, dd)

    def iota_maps(self) -> tuple[LinearMap, LinearMap]:
        """Embeddings as coefficient maps into the carrier."""
        return (LinearMap(self.left.algebra, (self.carrier,),
                          self.carrier.coords(self.iota_c.images), name="ι_C"),
                LinearMap(self.right.algebra, (self.carrier,),
                          self.carrier.coords(self.iota_d.images), name="ι_D"))

    def center_dimension(self) -> int:
        return center_dimension(self.carrier)


def boxtimes(gamma: Coaction, delta: Coaction, chi: Bicharacter,
             rep_left: CovariantRep | None = None,
             rep_right: CovariantRep | None = None) -> TwistedTensor:
    """Twisted tensor product ``(C, γ) ⊠_χ (D, δ)``."""
    if not gamma.qg.same_as(chi.source) or not delta.qg.same_as(chi.target):
        raise ValueError("coactions do not match the bicharacter")
    rl = rep_left or default_covariant_rep(gamma)
    rr = rep_right or default_covariant_rep(delta)
    z = z_unitary(chi, rl.u, rr.u)
    h, k = rl.hilbert_dim, rr.hilbert_dim
    eye_h, eye_k = np.eye(h), np.eye(k)
    ic = np.einsum("iab,cd->iacbd", rl.phi.images, eye_k).reshape(-1, h * k, h * k)
    idd = np.einsum("ab,icd->iacbd", eye_h, rr.phi.images).reshape(-1, h * k, h * k)
    idd = z @ idd @ dagger(z)
    prods, space = _product_span(ic, idd)
    carrier = StarAlgebra(space, f"{gamma.algebra.name or 'C'}⊠{delta.algebra.name or 'D'}")
    closure = carrier.closure_residual()
    if closure > tau(h * k):
        # the product should already be closed; retry with a bounded generation
        alt = generate_algebra(list(ic) + list(idd), h * k, unital=False,
                               max_rounds=(h * k) ** 2)
        if alt.dim != carrier.dim:
            raise ValueError("carrier of the twisted tensor product is not *-closed")
        carrier = alt
    return TwistedTensor(gamma, delta, chi, rl, rr, z, carrier,
                         StarRepresentation(gamma.algebra, ic, name="ι_C"),
                         StarRepresentation(delta.algebra, idd, name="ι_D"), prods)


def generator_coaction(t: TwistedTensor, on_c: Coaction, on_d: Coaction,
                       name: str = "") -> Coaction:
    """The coaction on ``C ⊠ D`` for which ``ι_C`` and ``ι_D`` are equivariant.

    Determined on generators by
    ``ι_C(c)ι_D(d) ↦ (ι_C ⊗ id)on_c(c) · (ι_D ⊗ id)on_d(d)``.
    """
    qg = on_c.qg
    alg = qg.algebra
    n = alg.ambient_dim
    big_n = t.carrier.ambient_dim
    # (ι ⊗ id) of a coaction, as concrete operators on (H ⊗ K) ⊗ H0
    ec = np.einsum("ijk,jab,kcd->iacbd", on_c.coeffs, t.iota_c.images, alg.basis,
                   optimize=True).reshape(-1, big_n * n, big_n * n)
    ed = np.einsum("ijk,jab,kcd->iacbd", on_d.coeffs, t.iota_d.images, alg.basis,
                   optimize=True).reshape(-1, big_n * n, big_n * n)
    prods = np.einsum("iab,jbc->ijac", ec, ed, optimize=True)
    images = np.einsum("mij,ijac->mac", t.product_coords, prods, optimize=True)
    coeffs, resid = tensor_coords(images, (t.carrier, alg))
    if resid > tau(big_n * n):
        raise ValueError(f"coaction on generators leaves (C⊠D) ⊗ A (residual {resid:.2e})")
    return Coaction(t.carrier, qg, coeffs, name=name or "diagonal")


@dataclass
class DiagonalReport:
    coaction: Coaction
    iota_c_equivariance: float
    iota_d_equivariance: float
    uniqueness: float


def _equivariance_of_embedding(t: TwistedTensor, iota: StarRepresentation, coact: Coaction,
                               diag: Coaction) -> float:
    """``(ι ⊗ id)γ(x) - γ_diag(ι(x))`` on a basis."""
    qg = coact.qg
    alg = qg.algebra
    lhs = np.einsum("ijk,jm,kl->iml", coact.coeffs, t.carrier.coords(iota.images),
                    np.eye(alg.dim), optimize=True)
    rhs = np.einsum("im,mjl->ijl", t.carrier.coords(iota.images), diag.coeffs, optimize=True)
    return max_residual(lhs, rhs)


def diagonal_coaction(t: TwistedTensor) -> DiagonalReport:
    """``Ad(U ⊤ U')`` on ``C ⊠_R D`` with its equivariance and uniqueness data."""
    if not t.chi.source.same_as(t.chi.target):
        raise ValueError("diagonal coaction needs an R-matrix")
    qg = t.left.qg
    uu = tensor_corep(t.rep_left.u, t.rep_right.u)
    uu = Corepresentation(qg, uu.u, check=False, name="U⊤U'")
    from .coaction import spatial_coaction

    try:
        diag = spatial_coaction(t.carrier, uu, name="γ⋈δ")
    except ValueError as exc:
        raise ValueError(f"conjugated image escapes (C⊠D)⊗A: {exc}") from None
    ec = _equivariance_of_embedding(t, t.iota_c, t.left, diag)
    ed = _equivariance_of_embedding(t, t.iota_d, t.right, diag)
    gen = generator_coaction(t, t.left, t.right)
    return DiagonalReport(diag, ec, ed, max_residual(gen.coeffs, diag.coeffs))


# --------------------------------------------------------------------------
# functoriality


def _map_from_generators(t1: TwistedTensor, t2: TwistedTensor, fc: np.ndarray,
                         fd: np.ndarray) -> LinearMap:
    """Linear map sending ``ι_C1(c)ι_D1(d)`` to ``ι_C2(f(c))ι_D2(g(d))``.

    ``fc`` and ``fd`` are coefficient matrices of ``f`` and ``g``.
    """
    img_c = np.einsum("ij,jab->iab", fc, t2.iota_c.images)
    img_d = np.einsum("ij,jab->iab", fd, t2.iota_d.images)
    prods = np.einsum("iab,jbc->ijac", img_c, img_d, optimize=True)
    images = np.einsum("mij,ijac->mac", t1.product_coords, prods, optimize=True)
    coeffs, resid = tensor_coords(images, (t2.carrier,))
    if resid > tau(t2.carrier.ambient_dim):
        raise ValueError("generator images leave the target carrier")
    return LinearMap(t1.carrier, (t2.carrier,), coeffs, name="f⊠g")


@dataclass
class MorphismReport:
    map: LinearMap
    multiplicative: float
    star: float
    well_defined: float
    intertwines_c: float
    intertwines_d: float
    equivariance: float | None = None


def morphism_boxtimes(f: EquivariantMorphism, g: EquivariantMorphism, t1: TwistedTensor,
                      t2: TwistedTensor) -> MorphismReport:
    """``f ⊠ g`` between two twisted tensor products built with the same ``χ``."""
    for m in (f, g):
        r = m.equivariance_residual()
        if r > tau(m.source.algebra.ambient_dim * _h0(m.source.qg)):
            raise ValueError(f"morphism is not equivariant (residual {r:.2e})")
    fg = _map_from_generators(t1, t2, f.coeffs, g.coeffs)
    # well-definedness: the generator relation must be respected on all products
    pc1 = t1.carrier.coords(t1.products)
    lhs = np.einsum("ijm,mn->ijn", pc1, fg.coeffs)
    img_c = np.einsum("ij,jab->iab", f.coeffs, t2.iota_c.images)
    img_d = np.einsum("ij,jab->iab", g.coeffs, t2.iota_d.images)
    rhs = t2.carrier.coords(np.einsum("iab,jbc->ijac", img_c, img_d, optimize=True))
    well = max_residual(lhs, rhs)
    ic1, id1 = t1.iota_maps()
    ic2, id2 = t2.iota_maps()
    int_c = max_residual(ic1.coeffs @ fg.coeffs, f.coeffs @ ic2.coeffs)
    int_d = max_residual(id1.coeffs @ fg.coeffs, g.coeffs @ id2.coeffs)
    rep = MorphismReport(fg, fg.multiplicativity_residual(), fg.star_residual(), well,
                         int_c, int_d)
    if t1.chi.source.same_as(t1.chi.target):
        d1 = diagonal_coaction(t1).coaction
        d2 = diagonal_coaction(t2).coaction
        rep.equivariance = EquivariantMorphism(d1, d2, fg.coeffs).equivariance_residual()
    return rep


def _h0(qg) -> int:
    return qg.algebra.ambient_dim


# --------------------------------------------------------------------------
# associativity and braiding


@dataclass
class AssociatorResult:
    left_nested: TwistedTensor
    right_nested: TwistedTensor
    embedding_residuals: tuple[float, float, float]
    carrier_residual: float

    @property
    def residual(self) -> float:
        return max(max(self.embedding_residuals), self.carrier_residual)


def _nested_embeddings(outer: TwistedTensor, inner: TwistedTensor, inner_is_left: bool):
    """Images of the three factors inside a nested product."""
    if inner_is_left:
        # (C1 ⊠ C2) ⊠ C3: outer.iota_c acts on the inner carrier basis
        inner_basis_imgs = outer.iota_c.images
        to_outer = lambda x: np.einsum("m,mab->ab", inner.carrier.coords(x), inner_basis_imgs)
        e1 = np.stack([to_outer(x) for x in inner.iota_c.images])
        e2 = np.stack([to_outer(x) for x in inner.iota_d.images])
        e3 = outer.iota_d.images
    else:
        inner_basis_imgs = outer.iota_d.images
        to_outer = lambda x: np.einsum("m,mab->ab", inner.carrier.coords(x), inner_basis_imgs)
        e1 = outer.iota_c.images
        e2 = np.stack([to_outer(x) for x in inner.iota_c.images])
        e3 = np.stack([to_outer(x) for x in inner.iota_d.images])
    return e1, e2, e3


def associator(c1: Coaction, c2: Coaction, c3: Coaction, r: Bicharacter) -> AssociatorResult:
    """Compare ``(C1 ⊠ C2) ⊠ C3`` with ``C1 ⊠ (C2 ⊠ C3)`` on ``H1 ⊗ H2 ⊗ H3``.

    Both triple products are concrete algebras on the same space; the
    associator is the identity on generators, so the embeddings of each
    factor must coincide entrywise.
    """
    t12 = boxtimes(c1, c2, r)
    d12 = diagonal_coaction(t12).coaction
    left = boxtimes(d12, c3, r)
    t23 = boxtimes(c2, c3, r)
    d23 = diagonal_coaction(t23).coaction
    right = boxtimes(c1, d23, r)
    if left.carrier.ambient_dim != right.carrier.ambient_dim:
        raise ValueError("nested products act on different spaces")
    l_emb = _nested_embeddings(left, t12, True)
    r_emb = _nested_embeddings(right, t23, False)
    res = tuple(max_residual(a, b) for a, b in zip(l_emb, r_emb))
    return AssociatorResult(left, right, res, subspace_equal(left.carrier.space,
                                                             right.carrier.space)[1])


@dataclass
class BraidingIsoResult:
    exists: bool
    antisymmetry_residual: float
    multiplicativity_residual: float
    intertwining_residual: float
    braiding_unitary_residual: float
    map: LinearMap | None = None


def braiding_crossed_iso(c: Coaction, d: Coaction, r: Bicharacter) -> BraidingIsoResult:
    """The isomorphism ``C ⊠_R D ≅ D ⊠_R C`` exchanging the embeddings.

    It is defined on generators by ``ι_C(c)ι_D(d) ↦ ι'_C(c)ι'_D(d)``; it is
    a homomorphism exactly when ``R`` is antisymmetric.  When it exists it is
    compared with conjugation by the braiding unitary ``c^{H,K}``.
    """
    from .bicharacter import check_antisymmetric

    t = boxtimes(c, d, r)
    s = boxtimes(d, c, r)
    # in s the roles are swapped: s.iota_c embeds D and s.iota_d embeds C
    img_c = s.iota_d.images
    img_d = s.iota_c.images
    prods = np.einsum("iab,jbc->ijac", img_c, img_d, optimize=True)
    images = np.einsum("mij,ijac->mac", t.product_coords, prods, optimize=True)
    coeffs, resid = tensor_coords(images, (s.carrier,))
    theta = LinearMap(t.carrier, (s.carrier,), coeffs, name="Θ")
    mult = max(theta.multiplicativity_residual(), resid)
    ic, idd = t.iota_maps()
    sd, sc = s.iota_maps()
    inter = max(max_residual(ic.coeffs @ coeffs, sc.coeffs),
                max_residual(idd.coeffs @ coeffs, sd.coeffs))
    anti_ok, anti = check_antisymmetric(r)
    cu = braiding_unitary(r, t.rep_left.u, t.rep_right.u).c
    conj = cu @ t.carrier.basis @ dagger(cu)
    braid_res = max_residual(conj, theta.basis_operators())
    exists = mult <= tau(t.carrier.ambient_dim) and inter <= tau(t.carrier.ambient_dim)
    return BraidingIsoResult(exists, anti, mult, inter, braid_res, theta if exists else None)


# --------------------------------------------------------------------------
# Heisenberg pairs from products and bicharacter recovery


def heisenberg_pair_from_product(t: TwistedTensor) -> HeisenbergPair:
    """Restrict the identity representation of ``A ⊠_χ B`` along the embeddings."""
    return HeisenbergPair(t.chi, t.iota_c, t.iota_d)


def recover_bicharacter(t: TwistedTensor) -> tuple[np.ndarray, float]:
    """Recover ``χ`` from ``A ⊠_χ B`` built from the comultiplication coactions.

    Returns the recovered matrix and the distance of the full recovered
    operator from ``χ ⊗ 1``.
    """
    pair = heisenberg_pair_from_product(t)
    rec = pair.recovered()
    n, m, ell = t.chi.source.h0, t.chi.target.h0, pair.target_dim
    blocks = rec.reshape(n * m, ell, n * m, ell)
    chi_rec = np.einsum("aibi->ab", blocks) / ell
    resid = max_residual(rec, np.kron(chi_rec, np.eye(ell)))
    return chi_rec, resid


@dataclass
class HeisenbergDouble:
    product: TwistedTensor
    to_matrices: LinearMap
    image: OperatorSubspace
    full_residual: float
    multiplicative: float


def heisenberg_double(qg: QuantumGroup) -> HeisenbergDouble:
    """``A ⊠_W Â`` and its realization inside ``B(H0)``.

    The canonical Heisenberg pair sends ``ι_A(a)ι_Â(â)`` to ``a â``; the
    image is compared with all of ``B(H0)``.
    """
    gamma = comultiplication_coaction(qg)
    delta = comultiplication_coaction(qg.dual)
    t = boxtimes(gamma, delta, w_bicharacter(qg))
    n = qg.h0
    pair = canonical_heisenberg_pair(qg)
    prods = np.einsum("iab,jbc->ijac", pair.alpha.images, pair.beta.images, optimize=True)
    images = np.einsum("mij,ijac->mac", t.product_coords, prods, optimize=True)
    full = StarAlgebra(full_matrix_space(n), f"B(H0)")
    coeffs, _ = tensor_coords(images, (full,))
    lm = LinearMap(t.carrier, (full,), coeffs, name="A⊠Â → B(H0)")
    image = span(images, n)
    _, dist = subspace_equal(image, full_matrix_space(n))
    return HeisenbergDouble(t, lm, image, dist, lm.multiplicativity_residual())


# --------------------------------------------------------------------------
# Yetter-Drinfeld products


@dataclass
class YDProduct:
    product: TwistedTensor
    yd: "object"
    yd_residual: float


def _attach_spatial(coact: Coaction, corep: Corepresentation) -> Coaction:
    trial = Coaction(coact.algebra, coact.qg, coact.coeffs, corep=corep, name=coact.name)
    try:
        ok = (corep.law_residual() <= tau(corep.u.shape[0] * coact.qg.h0)
              and trial.spatial_residual() <= tau(corep.u.shape[0]))
    except ValueError:
        ok = False
    return trial if ok else coact


def yd_boxtimes(c1, c2) -> YDProduct:
    """``C1 ⊠_W C2`` for Yetter-Drinfeld algebras, with its YD structure.

    The product uses ``γ`` of ``C1`` and ``δ`` of ``C2``; the diagonal
    coactions of ``A`` and ``Â`` are determined on generators and carry
    ``U1 ⊤ U2`` (resp. ``V1 ⊤ V2``) when these implement them.
    """
    from .yd import YetterDrinfeldAlgebra, check_yd

    qg = c1.qg
    t = boxtimes(c1.gamma, c2.delta, w_bicharacter(qg))
    gam = generator_coaction(t, c1.gamma, c2.gamma, name="γ⊠")
    dlt = generator_coaction(t, c1.delta, c2.delta, name="δ⊠")
    if all(c is not None for c in (c1.gamma.corep, c2.gamma.corep, c1.delta.corep,
                                   c2.delta.corep)) and \
            t.rep_left.u is c1.gamma.corep and t.rep_right.u is c2.delta.corep:
        gam = _attach_spatial(gam, tensor_corep(c1.gamma.corep, c2.gamma.corep))
        dlt = _attach_spatial(dlt, tensor_corep(c1.delta.corep, c2.delta.corep))
    yd = YetterDrinfeldAlgebra(gam, dlt, name=f"{c1.algebra.name}⊠{c2.algebra.name}")
    return YDProduct(t, yd, check_yd(yd))
