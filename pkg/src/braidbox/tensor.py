"""Dense complex linear algebra with leg calculus and operator subspaces.

Operators are plain ``numpy`` arrays of dtype ``complex128``.  A *leg shape*
is the tuple of dimensions of the tensor factors of a Hilbert space; an
operator written ``X_{13}`` in leg notation is produced by
:func:`place_on_legs`.

Subspaces of matrices are stored with a basis that is orthonormal for the
trace inner product ``<X, Y> = tr(X* Y)``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .config import rank_threshold, tau

__all__ = [
    "as_matrix",
    "kron",
    "place_on_legs",
    "leg_permutation",
    "flip",
    "dagger",
    "max_residual",
    "unitarity_residual",
    "OperatorSubspace",
    "span",
    "subspace_product",
    "subspace_equal",
    "orthonormal_columns",
    "column_spaces_equal",
    "full_matrix_space",
]


def as_matrix(x, name: str = "matrix") -> np.ndarray:
    """Return ``x`` as a finite ``complex128`` 2-d array."""
    a = np.asarray(x, dtype=np.complex128)
    if a.ndim != 2:
        raise ValueError(f"{name} must be 2-dimensional, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} has non-finite entries")
    return a


def dagger(x: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(x, -1, -2))


def kron(*ops) -> np.ndarray:
    """Kronecker product of any number of operators.

    ``kron(a, b)[i*p + k, j*q + l] == a[i, j] * b[k, l]`` where ``b`` has
    shape ``(p, q)``.
    """
    if not ops:
        return np.ones((1, 1), dtype=np.complex128)
    out = np.asarray(ops[0], dtype=np.complex128)
    for op in ops[1:]:
        out = np.kron(out, np.asarray(op, dtype=np.complex128))
    return out


def _check_shape(shape: Sequence[int]) -> tuple[int, ...]:
    dims = tuple(int(d) for d in shape)
    if not dims or any(d < 1 for d in dims):
        raise ValueError(f"invalid leg shape {shape!r}")
    return dims


def leg_permutation(shape: Sequence[int], order: Sequence[int]) -> np.ndarray:
    """Permutation unitary reordering tensor legs.

    Returns ``P`` with ``P (x_0 ⊗ ... ⊗ x_{n-1}) = x_{order[0]} ⊗ ... ⊗
    x_{order[n-1]}``.  Built from index arithmetic, so ``P`` is an exact
    0/1 matrix.
    """
    dims = _check_shape(shape)
    order = list(order)
    if sorted(order) != list(range(len(dims))):
        raise ValueError(f"{order!r} is not a permutation of the legs")
    total = int(np.prod(dims))
    idx = np.arange(total).reshape(dims)
    src = idx.transpose(order).reshape(-1)
    perm = np.zeros((total, total), dtype=np.complex128)
    perm[np.arange(total), src] = 1.0
    return perm


def flip(dim_a: int, dim_b: int) -> np.ndarray:
    """Flip unitary ``Σ: H_a ⊗ H_b → H_b ⊗ H_a``."""
    return leg_permutation((dim_a, dim_b), (1, 0))


def place_on_legs(op, shape: Sequence[int], legs: Sequence[int]) -> np.ndarray:
    """Act with ``op`` on the listed legs and as the identity elsewhere.

    Parameters
    ----------
    op : array_like
        Operator on the tensor product of the selected legs, taken in the
        order given by ``legs``.
    shape : sequence of int
        Dimensions of all legs.
    legs : sequence of int
        0-based leg indices; any order is allowed, so ``legs=(1, 0)``
        realizes ``X_{21}``.

    Returns
    -------
    numpy.ndarray
        Operator on the full space.
    """
    dims = _check_shape(shape)
    legs = [int(l) for l in legs]
    if len(set(legs)) != len(legs):
        raise ValueError(f"repeated leg index in {legs!r}")
    if any(l < 0 or l >= len(dims) for l in legs):
        raise ValueError(f"leg index out of range for shape {dims!r}")
    op = np.asarray(op, dtype=np.complex128)
    sub = [dims[l] for l in legs]
    k = int(np.prod(sub))
    if op.shape != (k, k):
        raise ValueError(f"operator shape {op.shape} does not match legs {sub}")
    rest = [i for i in range(len(dims)) if i not in legs]
    rest_dim = int(np.prod([dims[i] for i in rest])) if rest else 1
    n = len(dims)
    full = np.kron(op, np.eye(rest_dim, dtype=np.complex128))
    order = legs + rest
    tensor = full.reshape([dims[i] for i in order] * 2)
    inv = list(np.argsort(order))
    tensor = tensor.transpose(inv + [n + i for i in inv])
    total = int(np.prod(dims))
    return np.ascontiguousarray(tensor.reshape(total, total))


def max_residual(a, b) -> float:
    """Largest absolute entry of ``a - b``."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - b)))


def unitarity_residual(u) -> float:
    u = np.asarray(u)
    eye = np.eye(u.shape[0])
    return max(max_residual(u @ dagger(u), eye), max_residual(dagger(u) @ u, eye))


# --------------------------------------------------------------------------
# spans of vectors


def orthonormal_columns(mat: np.ndarray) -> np.ndarray:
    """Orthonormal basis (as columns) of the column space of ``mat``.

    The rank is decided by singular-value thresholding relative to the
    largest singular value.
    """
    mat = np.asarray(mat, dtype=np.complex128)
    if mat.shape[1] == 0:
        return np.zeros((mat.shape[0], 0), dtype=np.complex128)
    u, s, _ = np.linalg.svd(mat, full_matrices=False)
    keep = s > rank_threshold(s[0] if s.size else 0.0)
    return np.ascontiguousarray(u[:, keep])


def _subspace_distance(qa: np.ndarray, qb: np.ndarray) -> float:
    """``max(||(1-P_b) P_a||, ||(1-P_a) P_b||)`` for orthonormal columns."""

    def one_way(q1, q2):
        if q1.shape[1] == 0:
            return 0.0
        if q2.shape[1] == 0:
            return 1.0
        resid = q1 - q2 @ (dagger(q2) @ q1)
        return float(np.linalg.norm(resid, 2))

    return max(one_way(qa, qb), one_way(qb, qa))


def column_spaces_equal(a: np.ndarray, b: np.ndarray, tol: float = 1e-8):
    """Compare two column spaces.

    Returns
    -------
    (bool, float)
        Verdict and the projector distance ``||P_a - P_b||``.
    """
    qa = orthonormal_columns(a)
    qb = orthonormal_columns(b)
    dist = _subspace_distance(qa, qb)
    return dist <= tol, dist


# --------------------------------------------------------------------------
# operator subspaces


class OperatorSubspace:
    """Linear subspace of ``n x n`` matrices with a trace-orthonormal basis.

    Parameters
    ----------
    basis : numpy.ndarray
        Array of shape ``(k, n, n)``; assumed orthonormal (use :func:`span`
        to build one from arbitrary generators).
    ambient_dim : int
        ``n``; needed when ``k == 0``.
    """

    __slots__ = ("_basis", "ambient_dim")

    def __init__(self, basis: np.ndarray, ambient_dim: int | None = None):
        basis = np.asarray(basis, dtype=np.complex128)
        if basis.ndim != 3:
            raise ValueError("basis must have shape (k, n, n)")
        n = basis.shape[1] if ambient_dim is None else int(ambient_dim)
        if basis.shape[1:] != (n, n):
            raise ValueError("basis matrices must be square of the ambient size")
        basis.setflags(write=False)
        self._basis = basis
        self.ambient_dim = n

    @property
    def basis(self) -> np.ndarray:
        return self._basis

    @property
    def dim(self) -> int:
        return self._basis.shape[0]

    def __len__(self) -> int:
        return self.dim

    def __repr__(self) -> str:
        return f"OperatorSubspace(dim={self.dim}, ambient_dim={self.ambient_dim})"

    @property
    def vectors(self) -> np.ndarray:
        """Basis as orthonormal columns of length ``n**2``."""
        return self._basis.reshape(self.dim, -1).T

    def gram_residual(self) -> float:
        v = self.vectors
        return max_residual(dagger(v) @ v, np.eye(self.dim))

    def coords(self, x) -> np.ndarray:
        """Coefficients of the orthogonal projection of ``x`` (or a stack)."""
        x = np.asarray(x, dtype=np.complex128)
        n2 = self.ambient_dim**2
        flat = x.reshape(-1, n2)
        c = flat @ np.conj(self._basis.reshape(self.dim, n2)).T
        return c.reshape(x.shape[:-2] + (self.dim,))

    def element(self, coeffs) -> np.ndarray:
        """Matrix with the given coefficients (leading axes are batched)."""
        coeffs = np.asarray(coeffs, dtype=np.complex128)
        return np.tensordot(coeffs, self._basis, axes=([-1], [0]))

    def project(self, x) -> np.ndarray:
        return self.element(self.coords(x))

    def membership_residual(self, x) -> float:
        x = np.asarray(x, dtype=np.complex128)
        return max_residual(x, self.project(x))

    def contains(self, x, tol: float | None = None) -> bool:
        tol = tau(self.ambient_dim) if tol is None else tol
        return self.membership_residual(x) <= tol

    def adjoint(self) -> "OperatorSubspace":
        return span(dagger(self._basis), self.ambient_dim)


def span(generators: Iterable, ambient_dim: int | None = None) -> OperatorSubspace:
    """Orthonormal basis of the linear span of a collection of matrices."""
    if isinstance(generators, np.ndarray) and generators.ndim == 3:
        gens = np.asarray(generators, dtype=np.complex128)
    else:
        gens = [np.asarray(g, dtype=np.complex128) for g in generators]
        if not gens:
            if ambient_dim is None:
                raise ValueError("empty generator list needs an ambient dimension")
            return OperatorSubspace(
                np.zeros((0, ambient_dim, ambient_dim), dtype=np.complex128), ambient_dim
            )
        gens = np.stack(gens)
    n = gens.shape[1]
    if gens.shape[1:] != (n, n):
        raise ValueError("generators must be square matrices of one size")
    if ambient_dim is not None and n != ambient_dim:
        raise ValueError("generator size differs from ambient dimension")
    if gens.shape[0] == 0:
        return OperatorSubspace(np.zeros((0, n, n), dtype=np.complex128), n)
    cols = orthonormal_columns(gens.reshape(gens.shape[0], -1).T)
    basis = cols.T.reshape(-1, n, n)
    return OperatorSubspace(basis, n)


def subspace_product(x: OperatorSubspace, y: OperatorSubspace) -> OperatorSubspace:
    """Span of all products ``x_i y_j`` of basis elements."""
    if x.ambient_dim != y.ambient_dim:
        raise ValueError("subspaces live in different ambient spaces")
    n = x.ambient_dim
    if x.dim == 0 or y.dim == 0:
        return OperatorSubspace(np.zeros((0, n, n), dtype=np.complex128), n)
    prods = np.einsum("iab,jbc->ijac", x.basis, y.basis, optimize=True)
    return span(prods.reshape(-1, n, n), n)


def subspace_equal(x: OperatorSubspace, y: OperatorSubspace, tol: float = 1e-8):
    """Whether two subspaces coincide.

    Returns
    -------
    (bool, float)
        Verdict and ``||P_x - P_y||`` (operator norm of the difference of
        the orthogonal projectors on the vectorized space).
    """
    if x.ambient_dim != y.ambient_dim:
        raise ValueError("subspaces live in different ambient spaces")
    dist = _subspace_distance(x.vectors, y.vectors)
    return dist <= tol, dist


def full_matrix_space(n: int) -> OperatorSubspace:
    """All of ``M_n`` with the matrix-unit basis."""
    basis = np.zeros((n * n, n, n), dtype=np.complex128)
    for i in range(n):
        for j in range(n):
            basis[i * n + j, i, j] = 1.0
    return OperatorSubspace(basis, n)
