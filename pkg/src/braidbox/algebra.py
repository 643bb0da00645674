"""Finite-dimensional *-algebras of matrices and maps between them.

A :class:`StarAlgebra` is an operator subspace closed under products and
adjoints.  Elements are handled either as concrete matrices or as
coefficient vectors in the orthonormal basis; elements of tensor products
``C_1 ⊗ ... ⊗ C_k`` are coefficient arrays with one axis per factor.  The
coefficient picture keeps large tensor products (such as the square of the
codouble of S3) out of dense-matrix land.
"""

from __future__ import annotations

from functools import cached_property
from typing import Sequence

import numpy as np

from .config import rank_threshold, tau
from .tensor import (
    OperatorSubspace,
    dagger,
    full_matrix_space,
    kron,
    max_residual,
    orthonormal_columns,
    span,
)

__all__ = [
    "StarAlgebra",
    "LinearMap",
    "StarRepresentation",
    "generate_algebra",
    "tensor_algebra",
    "scalars",
    "full_matrix_algebra",
    "diagonal_algebra",
    "clifford_one",
    "tensor_multiply",
    "act_on_axis",
    "tensor_operator",
    "tensor_coords",
    "center_dimension",
    "wedderburn_blocks",
]


class StarAlgebra:
    """A *-subalgebra of ``M_n`` given by an orthonormal basis.

    Parameters
    ----------
    space : OperatorSubspace
        Carrier; must be closed under products and adjoints (checked by
        :meth:`closure_residual`, not on construction).
    name : str, optional
        Label used in reports.
    mult : numpy.ndarray, optional
        Precomputed structure constants ``mult[i, j, k]`` with
        ``b_i b_j = sum_k mult[i, j, k] b_k``.
    """

    def __init__(self, space: OperatorSubspace, name: str = "", mult=None, star=None):
        self.space = space
        self.name = name
        if mult is not None:
            self.__dict__["mult"] = np.asarray(mult, dtype=np.complex128)
        if star is not None:
            self.__dict__["star"] = np.asarray(star, dtype=np.complex128)

    def __repr__(self) -> str:
        label = f"{self.name!r}, " if self.name else ""
        return f"StarAlgebra({label}dim={self.dim}, ambient_dim={self.ambient_dim})"

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def ambient_dim(self) -> int:
        return self.space.ambient_dim

    @property
    def basis(self) -> np.ndarray:
        return self.space.basis

    @cached_property
    def mult(self) -> np.ndarray:
        b = self.basis
        prods = np.einsum("iab,jbc->ijac", b, b, optimize=True)
        return self.space.coords(prods)

    @cached_property
    def star(self) -> np.ndarray:
        """``star[i, k]``: coefficients of ``b_i^*``."""
        return self.space.coords(dagger(self.basis))

    @cached_property
    def unit(self) -> np.ndarray | None:
        eye = np.eye(self.ambient_dim, dtype=np.complex128)
        c = self.space.coords(eye)
        if max_residual(self.space.element(c), eye) > tau(self.ambient_dim):
            return None
        return c

    @property
    def is_unital(self) -> bool:
        return self.unit is not None

    def coords(self, x) -> np.ndarray:
        return self.space.coords(x)

    def element(self, c) -> np.ndarray:
        return self.space.element(c)

    def multiply(self, x, y) -> np.ndarray:
        return np.einsum("i,j,ijk->k", x, y, self.mult)

    def adjoint(self, x) -> np.ndarray:
        return np.conj(x) @ self.star

    def closure_residual(self) -> float:
        """Largest escape of a product or adjoint of basis elements."""
        b = self.basis
        prods = np.einsum("iab,jbc->ijac", b, b, optimize=True)
        r1 = max_residual(prods, self.space.element(self.mult))
        r2 = max_residual(dagger(b), self.space.element(self.star))
        return max(r1, r2)

    def contains(self, x, tol: float | None = None) -> bool:
        return self.space.contains(x, tol)


def generate_algebra(generators, ambient_dim: int | None = None, name: str = "",
                     unital: bool = True, max_rounds: int | None = None) -> StarAlgebra:
    """Smallest *-algebra containing the generators (and the unit if asked)."""
    gens = [np.asarray(g, dtype=np.complex128) for g in generators]
    if not gens and ambient_dim is None:
        raise ValueError("need generators or an ambient dimension")
    n = gens[0].shape[0] if gens else int(ambient_dim)
    if unital:
        gens.append(np.eye(n, dtype=np.complex128))
    gens += [dagger(g) for g in gens]
    space = span(gens, n)
    rounds = max_rounds if max_rounds is not None else n * n + 1
    for _ in range(rounds):
        b = space.basis
        prods = np.einsum("iab,jbc->ijac", b, b, optimize=True).reshape(-1, n, n)
        new = span(np.concatenate([b, prods, dagger(b)]), n)
        if new.dim == space.dim:
            return StarAlgebra(new, name)
        space = new
    raise RuntimeError("algebra generation did not stabilize")


def tensor_algebra(*algebras: StarAlgebra, name: str = "") -> StarAlgebra:
    """Concrete tensor product with the Kronecker basis ``a_i ⊗ b_j ⊗ ...``."""
    basis = algebras[0].basis
    mult = algebras[0].mult
    star = algebras[0].star
    for alg in algebras[1:]:
        basis = np.einsum("iab,jcd->ijacbd", basis, alg.basis).reshape(
            basis.shape[0] * alg.dim,
            basis.shape[1] * alg.ambient_dim,
            basis.shape[1] * alg.ambient_dim,
        )
        mult = np.einsum("ikp,jlq->ijklpq", mult, alg.mult).reshape(
            (mult.shape[0] * alg.dim,) * 3
        )
        star = np.einsum("ip,jq->ijpq", star, alg.star).reshape((star.shape[0] * alg.dim,) * 2)
    space = OperatorSubspace(basis, basis.shape[1])
    label = name or "⊗".join(a.name or "?" for a in algebras)
    return StarAlgebra(space, label, mult=mult, star=star)


def scalars() -> StarAlgebra:
    return StarAlgebra(full_matrix_space(1), "C")


def full_matrix_algebra(n: int) -> StarAlgebra:
    return StarAlgebra(full_matrix_space(n), f"M{n}")


def diagonal_algebra(n: int) -> StarAlgebra:
    basis = np.zeros((n, n, n), dtype=np.complex128)
    for i in range(n):
        basis[i, i, i] = 1.0
    return StarAlgebra(OperatorSubspace(basis, n), f"C^{n}")


def clifford_one() -> StarAlgebra:
    """The Clifford algebra on one odd generator, ``span{1, σ_x}`` on ``C^2``.

    The generator is odd for the grading by ``diag(1, -1)``.
    """
    sx = np.array([[0, 1], [1, 0]], dtype=np.complex128)
    return StarAlgebra(span([np.eye(2), sx]), "Cl1")


# --------------------------------------------------------------------------
# coefficient-tensor helpers


def _letters(n: int, start: int = 0) -> str:
    alphabet = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
    if start + n > len(alphabet):
        raise ValueError("too many tensor legs")
    return alphabet[start:start + n]


def tensor_multiply(x: np.ndarray, y: np.ndarray, tables: Sequence[np.ndarray]) -> np.ndarray:
    """Product of two elements of a tensor product of algebras.

    ``x`` and ``y`` are coefficient arrays with one axis per factor (no batch
    axes); ``tables`` are the factor structure constants.
    """
    k = len(tables)
    xa = _letters(k, 0)
    ya = _letters(k, k)
    za = _letters(k, 2 * k)
    ops = [x, y] + list(tables)
    subs = [xa, ya] + [xa[i] + ya[i] + za[i] for i in range(k)]
    return np.einsum(",".join(subs) + "->" + za, *ops, optimize=True)


def act_on_axis(x: np.ndarray, table: np.ndarray, y: np.ndarray, axis: int,
                side: str = "right") -> np.ndarray:
    """Multiply one tensor factor of ``x`` by each element of a batch ``y``.

    Parameters
    ----------
    x : numpy.ndarray
        Coefficient array; ``axis`` selects the factor acted upon.
    table : numpy.ndarray
        Structure constants of that factor.
    y : numpy.ndarray
        Batch of coefficient vectors, shape ``(m, d)``.
    side : {"right", "left"}
        ``x·(1⊗y)`` or ``(1⊗y)·x`` on the selected factor.

    Returns
    -------
    numpy.ndarray
        Shape ``(m,) + x.shape``.
    """
    xm = np.moveaxis(x, axis, -1)
    if side == "right":
        out = np.einsum("...a,mb,abc->m...c", xm, y, table, optimize=True)
    elif side == "left":
        out = np.einsum("...a,mb,bac->m...c", xm, y, table, optimize=True)
    else:
        raise ValueError(side)
    return np.moveaxis(out, -1, axis + 1)


def tensor_operator(coeffs: np.ndarray, algebras: Sequence[StarAlgebra]) -> np.ndarray:
    """Concrete matrix ``sum c_{i..} b_i ⊗ ...`` on the tensor product space.

    Leading axes of ``coeffs`` beyond the factor axes are treated as batch
    axes.
    """
    k = len(algebras)
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    batch = coeffs.shape[: coeffs.ndim - k]
    c = coeffs.reshape((-1,) + coeffs.shape[coeffs.ndim - k:])
    out = np.tensordot(c, algebras[-1].basis, axes=([-1], [0]))
    # out: (B, d1..d_{k-1}, n_k, n_k)
    for alg in reversed(algebras[:-1]):
        # contract the last remaining factor axis with alg's basis and kron
        out = np.moveaxis(out, -3, -1)  # (B, ..., n, n, d)
        out = np.tensordot(out, alg.basis, axes=([-1], [0]))  # (B,..., n, n, m, m)
        sh = out.shape
        out = np.moveaxis(out, [-2, -1], [-4, -3])  # (B, ..., m, m, n, n)
        out = np.swapaxes(out, -3, -2)  # (B, ..., m, n, m, n)
        out = out.reshape(sh[:-4] + (sh[-2] * sh[-4], sh[-1] * sh[-3]))
    return out.reshape(batch + out.shape[-2:])


def tensor_coords(x, algebras: Sequence[StarAlgebra]):
    """Project a concrete operator onto ``C_1 ⊗ ... ⊗ C_k``.

    Returns
    -------
    (numpy.ndarray, float)
        Coefficient array (leading batch axes preserved) and the max-entry
        distance from ``x`` to its projection.
    """
    x = np.asarray(x, dtype=np.complex128)
    k = len(algebras)
    dims = [a.ambient_dim for a in algebras]
    batch = x.shape[:-2]
    t = x.reshape((-1,) + tuple(dims) * 2)
    # contract factor axes from the last one, keeping the coefficient axes at the end
    for i in reversed(range(k)):
        basis = np.conj(algebras[i].basis)
        # axes of factor i: row axis 1 + i, column axis 1 + i + (current row-count)
        nrows = i + 1
        t = np.tensordot(t, basis, axes=([nrows, 2 * nrows], [1, 2]))
        t = np.moveaxis(t, -1, 1 + 2 * i)
    coeffs = t.reshape(batch + tuple(a.dim for a in algebras))
    resid = max_residual(x, tensor_operator(coeffs, algebras))
    return coeffs, resid


# --------------------------------------------------------------------------
# linear maps and representations


class LinearMap:
    """Linear map from an algebra into a tensor product of algebras.

    ``coeffs[i, j1, ..., jk]`` is the coefficient of ``c_{j1} ⊗ ... ⊗ c_{jk}``
    in the image of the ``i``-th domain basis element.
    """

    def __init__(self, domain: StarAlgebra, codomain: Sequence[StarAlgebra], coeffs,
                 name: str = ""):
        self.domain = domain
        self.codomain = tuple(codomain)
        coeffs = np.asarray(coeffs, dtype=np.complex128)
        expected = (domain.dim,) + tuple(a.dim for a in self.codomain)
        if coeffs.shape != expected:
            raise ValueError(f"coefficient shape {coeffs.shape} != {expected}")
        self.coeffs = coeffs
        self.name = name

    def __repr__(self) -> str:
        cod = "⊗".join(a.name or "?" for a in self.codomain)
        return f"LinearMap({self.name or '?'}: {self.domain.name or '?'} -> {cod})"

    def __call__(self, x) -> np.ndarray:
        return np.tensordot(np.asarray(x, dtype=np.complex128), self.coeffs, axes=([-1], [0]))

    def operator(self, x) -> np.ndarray:
        """Concrete image of the element with coefficients ``x``."""
        return tensor_operator(self(x), self.codomain)

    def basis_operators(self) -> np.ndarray:
        return tensor_operator(self.coeffs, self.codomain)

    def rank(self) -> int:
        return orthonormal_columns(self.coeffs.reshape(self.domain.dim, -1).T).shape[1]

    def is_injective(self) -> bool:
        return self.rank() == self.domain.dim

    def multiplicativity_residual(self) -> float:
        """``max |f(b_i b_j) - f(b_i) f(b_j)|`` over basis pairs."""
        f = self.coeffs
        lhs = np.tensordot(self.domain.mult, f, axes=([2], [0]))
        tables = [a.mult for a in self.codomain]
        worst = 0.0
        for i in range(self.domain.dim):
            rows = np.stack([tensor_multiply(f[i], f[j], tables) for j in range(self.domain.dim)])
            worst = max(worst, max_residual(lhs[i], rows))
        return worst

    def star_residual(self) -> float:
        """``max |f(b_i^*) - f(b_i)^*|``."""
        f = self.coeffs
        lhs = np.tensordot(self.domain.star, f, axes=([1], [0]))
        rhs = np.conj(f)
        for axis, alg in enumerate(self.codomain):
            rhs = np.moveaxis(np.tensordot(rhs, alg.star, axes=([axis + 1], [0])), -1, axis + 1)
        return max_residual(lhs, rhs)

    def compose_after(self, inner: "LinearMap") -> "LinearMap":
        """``self ∘ inner`` for ``inner`` with a single codomain factor."""
        if len(inner.codomain) != 1:
            raise ValueError("inner map must land in a single algebra")
        return LinearMap(inner.domain, self.codomain,
                         np.tensordot(inner.coeffs, self.coeffs, axes=([1], [0])))


class StarRepresentation:
    """Linear map from an algebra to ``B(H)`` given by basis images."""

    def __init__(self, algebra: StarAlgebra, images, name: str = ""):
        images = np.asarray(images, dtype=np.complex128)
        if images.ndim != 3 or images.shape[0] != algebra.dim:
            raise ValueError("images must have shape (dim, n, n)")
        self.algebra = algebra
        self.images = images
        self.name = name

    @property
    def hilbert_dim(self) -> int:
        return self.images.shape[1]

    def __call__(self, x) -> np.ndarray:
        return np.tensordot(np.asarray(x, dtype=np.complex128), self.images, axes=([-1], [0]))

    def multiplicativity_residual(self) -> float:
        prods = np.einsum("iab,jbc->ijac", self.images, self.images, optimize=True)
        return max_residual(self(self.algebra.mult), prods)

    def star_residual(self) -> float:
        return max_residual(self(self.algebra.star), dagger(self.images))

    def is_injective(self) -> bool:
        flat = self.images.reshape(self.algebra.dim, -1).T
        return orthonormal_columns(flat).shape[1] == self.algebra.dim

    def image(self) -> OperatorSubspace:
        return span(self.images, self.hilbert_dim)


def center_dimension(alg: StarAlgebra) -> int:
    """Dimension of the center, by solving ``[x, b_j] = 0`` for all ``j``."""
    m = alg.mult
    comm = m - np.swapaxes(m, 0, 1)  # [b_i, b_j] coefficients, (i, j, c)
    system = comm.reshape(alg.dim, -1).T  # rows (j, c), columns i
    s = np.linalg.svd(system, compute_uv=False)
    rank = int(np.sum(s > rank_threshold(s[0] if s.size else 0.0))) if s.size else 0
    return alg.dim - rank


def _center_basis(alg: StarAlgebra) -> np.ndarray:
    m = alg.mult
    comm = m - np.swapaxes(m, 0, 1)
    system = comm.reshape(alg.dim, -1).T
    _, s, vh = np.linalg.svd(system, full_matrices=True)
    rank = int(np.sum(s > rank_threshold(s[0] if s.size else 0.0)))
    return np.conj(vh[rank:])


def wedderburn_blocks(alg: StarAlgebra, seed: int = 0) -> list[int]:
    """Sizes ``n_k`` of the matrix blocks in ``alg ≅ ⊕ M_{n_k}``.

    A random self-adjoint central element separates the minimal central
    projections; the multiplicity of each eigenvalue of its left-multiplication
    operator is ``n_k**2``.
    """
    zb = _center_basis(alg)
    rng = np.random.default_rng(seed)
    z = rng.normal(size=zb.shape[0]) @ zb
    z = 0.5 * (z + alg.adjoint(z))
    left = np.einsum("i,ijc->cj", z, alg.mult)
    left = 0.5 * (left + dagger(left))
    ev = np.sort(np.linalg.eigvalsh(left))
    blocks = []
    start = 0
    for i in range(1, len(ev) + 1):
        if i == len(ev) or ev[i] - ev[i - 1] > 1e-6:
            mult = i - start
            n = int(round(np.sqrt(mult)))
            if n * n != mult:
                raise ArithmeticError("eigenvalue multiplicity is not a square")
            blocks.append(n)
            start = i
    return sorted(blocks)
