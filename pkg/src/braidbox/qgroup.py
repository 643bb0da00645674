"""Multiplicative unitaries and the finite quantum groups they generate.

For a multiplicative unitary ``W`` on ``H0 ⊗ H0`` the second-leg slices
``(ω ⊗ id)W`` span an algebra ``A`` and the first-leg slices ``(id ⊗ ω)W``
span ``Â``; ``W`` lies in ``Â ⊗ A``.  The comultiplication of ``A`` is
``Δ(a) = W(a ⊗ 1)W*`` and that of ``Â`` is ``Δ̂(x) = Ŵ(x ⊗ 1)Ŵ*`` with the
dual unitary ``Ŵ = Σ W* Σ``.

For a finite group ``G`` with Cayley table ``table[g][h] = gh`` the unitary
``W(δ_g ⊗ δ_h) = δ_g ⊗ δ_{gh}`` gives ``A = C[G]`` (left regular
representation) and ``Â = C(G)`` (diagonal matrices).
"""

from __future__ import annotations

from functools import cached_property
from typing import Sequence

import numpy as np

from .algebra import LinearMap, StarAlgebra, tensor_coords, tensor_operator
from .config import tau
from .tensor import (
    column_spaces_equal,
    dagger,
    flip,
    max_residual,
    place_on_legs,
    span,
    unitarity_residual,
)

__all__ = [
    "FiniteGroup",
    "MultiplicativeUnitary",
    "QuantumGroup",
    "check_pentagon",
    "group_multiplicative_unitary",
    "generate_quantum_group",
    "dual_quantum_group",
    "group_quantum_group",
    "cyclic_table",
    "latin_square_unitary",
    "NONASSOCIATIVE_LOOP",
    "symmetric_group_table",
]


class FiniteGroup:
    """A finite group given by a validated Cayley table (0-indexed)."""

    def __init__(self, table, name: str = ""):
        t = np.asarray(table)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise ValueError("invalid group table: must be a non-empty square table")
        if not np.issubdtype(t.dtype, np.integer):
            if not np.all(np.equal(np.mod(t, 1), 0)):
                raise ValueError("invalid group table: entries must be integers")
            t = t.astype(int)
        n = t.shape[0]
        if t.min() < 0 or t.max() >= n:
            raise ValueError("invalid group table: entries out of range (closure fails)")
        ids = [e for e in range(n) if np.array_equal(t[e], np.arange(n))
               and np.array_equal(t[:, e], np.arange(n))]
        if not ids:
            raise ValueError("invalid group table: no identity element")
        # associativity: (gh)k == g(hk)
        left = t[t, :]  # left[g, h, k] = (gh)k
        right = t[:, t]  # right[g, h, k] = g(hk)
        if not np.array_equal(left, right):
            raise ValueError("invalid group table: not associative")
        self.identity = ids[0]
        for g in range(n):
            if not np.any(t[g] == self.identity) or not np.any(t[:, g] == self.identity):
                raise ValueError("invalid group table: missing inverse")
        t = t.astype(int)
        t.setflags(write=False)
        self.table = t
        self.order = n
        self.name = name or f"G{n}"

    def mul(self, g: int, h: int) -> int:
        return int(self.table[g, h])

    def inverse(self, g: int) -> int:
        return int(np.flatnonzero(self.table[g] == self.identity)[0])

    @property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def left_regular(self, g: int) -> np.ndarray:
        """Permutation matrix ``λ_g δ_h = δ_{gh}``."""
        n = self.order
        m = np.zeros((n, n), dtype=np.complex128)
        m[self.table[g], np.arange(n)] = 1.0
        return m

    def indicator(self, g: int) -> np.ndarray:
        """Diagonal projection onto ``δ_g``."""
        m = np.zeros((self.order, self.order), dtype=np.complex128)
        m[g, g] = 1.0
        return m


def cyclic_table(n: int) -> list[list[int]]:
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def symmetric_group_table(k: int = 3) -> list[list[int]]:
    """Cayley table of ``S_k`` with permutations in lexicographic order.

    The product is composition ``(pq)(i) = p(q(i))``.
    """
    from itertools import permutations

    perms = list(permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    return [[index[tuple(p[q[i]] for i in range(k))] for q in perms] for p in perms]


def check_pentagon(w, dim: int) -> float:
    """Max-entry residual of ``W23 W12 - W12 W13 W23`` on ``H0^{⊗3}``."""
    w = np.asarray(w, dtype=np.complex128)
    if w.shape != (dim * dim, dim * dim):
        raise ValueError(f"W must be of size dim**2 = {dim * dim}, got {w.shape}")
    shape = (dim, dim, dim)
    w12 = place_on_legs(w, shape, (0, 1))
    w13 = place_on_legs(w, shape, (0, 2))
    w23 = place_on_legs(w, shape, (1, 2))
    return max_residual(w23 @ w12, w12 @ w13 @ w23)


class MultiplicativeUnitary:
    """A unitary on ``H0 ⊗ H0`` satisfying the pentagon equation."""

    def __init__(self, w, dim_h0: int | None = None, check: bool = True):
        w = np.asarray(w, dtype=np.complex128)
        n = int(round(np.sqrt(w.shape[0]))) if dim_h0 is None else int(dim_h0)
        if w.shape != (n * n, n * n):
            raise ValueError("W must act on H0 ⊗ H0")
        w.setflags(write=False)
        self.w = w
        self.dim_h0 = n
        if check:
            u = unitarity_residual(w)
            if u > tau(n * n):
                raise ValueError(f"W is not unitary (residual {u:.2e})")
            p = self.pentagon_residual
            if p > tau(n**3):
                raise ValueError(f"W violates the pentagon equation (residual {p:.2e})")

    @cached_property
    def pentagon_residual(self) -> float:
        return check_pentagon(self.w, self.dim_h0)

    def dual(self) -> "MultiplicativeUnitary":
        """``Ŵ = Σ W* Σ``."""
        s = flip(self.dim_h0, self.dim_h0)
        return MultiplicativeUnitary(s @ dagger(self.w) @ s, self.dim_h0, check=False)


def group_multiplicative_unitary(cayley, name: str = "") -> MultiplicativeUnitary:
    """``W(δ_g ⊗ δ_h) = δ_g ⊗ δ_{gh}`` for a validated Cayley table."""
    group = cayley if isinstance(cayley, FiniteGroup) else FiniteGroup(cayley, name)
    n = group.order
    w = np.zeros((n * n, n * n), dtype=np.complex128)
    for g in range(n):
        for h in range(n):
            w[g * n + group.table[g, h], g * n + h] = 1.0
    return MultiplicativeUnitary(w, n)


# smallest non-associative loop (order 5); a Latin square, not a group
NONASSOCIATIVE_LOOP = [
    [0, 1, 2, 3, 4],
    [1, 0, 3, 4, 2],
    [2, 4, 0, 1, 3],
    [3, 2, 4, 0, 1],
    [4, 3, 1, 2, 0],
]


def latin_square_unitary(table) -> np.ndarray:
    """``δ_g ⊗ δ_h ↦ δ_g ⊗ δ_{g·h}`` for a Latin square ``g·h``.

    Unitary whenever every row is a permutation; satisfies the pentagon
    equation only for associative tables.
    """
    t = np.asarray(table, dtype=int)
    n = t.shape[0]
    if t.shape != (n, n) or any(sorted(row) != list(range(n)) for row in t.tolist()):
        raise ValueError("rows of a Latin square must be permutations")
    w = np.zeros((n * n, n * n), dtype=np.complex128)
    for g in range(n):
        for h in range(n):
            w[g * n + t[g, h], g * n + h] = 1.0
    return w


def _slices(w: np.ndarray, n: int):
    t = w.reshape(n, n, n, n)  # t[i, a, j, b] = <e_i ⊗ e_a| W |e_j ⊗ e_b>
    second = t.transpose(0, 2, 1, 3).reshape(n * n, n, n)  # (ω_ij ⊗ id)W
    first = t.transpose(1, 3, 0, 2).reshape(n * n, n, n)  # (id ⊗ ω_ab)W
    return second, first


class QuantumGroup:
    """Finite quantum group ``(A, Δ)`` generated by a multiplicative unitary.

    Attributes
    ----------
    w : MultiplicativeUnitary
        Reduced bicharacter, an element of ``Â ⊗ A``.
    algebra, dual_algebra : StarAlgebra
        ``A`` (second-leg slices) and ``Â`` (first-leg slices).
    comult, dual_comult : LinearMap
        ``Δ: A → A ⊗ A`` and ``Δ̂: Â → Â ⊗ Â``.
    counit, dual_counit : numpy.ndarray
        Counit functionals as coefficient rows on the respective bases.
    group, side : optional
        The finite group and ``"group-algebra"`` / ``"function-algebra"``
        when built from a Cayley table.
    """

    def __init__(self, w: MultiplicativeUnitary, algebra: StarAlgebra, dual_algebra: StarAlgebra,
                 comult: LinearMap, dual_comult: LinearMap, counit: np.ndarray,
                 dual_counit: np.ndarray, name: str = "", group: FiniteGroup | None = None,
                 side: str | None = None):
        self.w = w
        self.algebra = algebra
        self.dual_algebra = dual_algebra
        self.comult = comult
        self.dual_comult = dual_comult
        self.counit = counit
        self.dual_counit = dual_counit
        self.name = name
        self.group = group
        self.side = side
        self._dual: QuantumGroup | None = None

    def __repr__(self) -> str:
        return f"QuantumGroup({self.name!r}, dim={self.dim}, h0={self.h0})"

    @property
    def h0(self) -> int:
        return self.w.dim_h0

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def matrix(self) -> np.ndarray:
        return self.w.w

    @cached_property
    def dual_matrix(self) -> np.ndarray:
        return self.w.dual().w

    @property
    def dual(self) -> "QuantumGroup":
        """Dual quantum group, generated by ``Ŵ``; ``g.dual.dual is g``."""
        if self._dual is None:
            side = {"group-algebra": "function-algebra",
                    "function-algebra": "group-algebra"}.get(self.side)
            d = QuantumGroup(self.w.dual(), self.dual_algebra, self.algebra, self.dual_comult,
                             self.comult, self.dual_counit, self.counit,
                             name=f"dual({self.name})", group=self.group, side=side)
            d._dual = self
            self._dual = d
        return self._dual

    def same_as(self, other: "QuantumGroup") -> bool:
        if other is self:
            return True
        return (other.h0 == self.h0 and other.dim == self.dim
                and max_residual(other.matrix, self.matrix) <= tau(self.h0**2)
                and column_spaces_equal(other.algebra.space.vectors,
                                        self.algebra.space.vectors)[0])

    # -- coefficient data -------------------------------------------------

    @cached_property
    def w_coeffs(self) -> np.ndarray:
        """``W = sum w[i, j] â_i ⊗ a_j``."""
        c, _ = tensor_coords(self.matrix, (self.dual_algebra, self.algebra))
        return c

    def comult_operator(self, a) -> np.ndarray:
        """``W(a ⊗ 1)W*`` for a concrete matrix ``a``."""
        a = np.asarray(a, dtype=np.complex128)
        big = np.kron(a, np.eye(self.h0))
        return self.matrix @ big @ dagger(self.matrix)

    def comult_on_leg(self, x, shape: Sequence[int], leg: int) -> np.ndarray:
        """Apply ``Δ`` to one leg of ``x``; the new leg is inserted after it.

        Only meaningful when that leg of ``x`` lies in ``A``.
        """
        return _conj_on_new_leg(x, shape, leg, self.matrix, self.h0)

    def dual_comult_on_leg(self, x, shape: Sequence[int], leg: int) -> np.ndarray:
        """Apply ``Δ̂`` to one leg of ``x`` (leg in ``Â``)."""
        return _conj_on_new_leg(x, shape, leg, self.dual_matrix, self.h0)

    def group_element(self, g: int) -> np.ndarray:
        """``λ_g`` on the group-algebra side, ``δ_g`` on the function side."""
        if self.group is None:
            raise ValueError("quantum group was not built from a finite group")
        if self.side == "group-algebra":
            return self.group.left_regular(g)
        return self.group.indicator(g)

    # -- checks -------------------------------------------------------------

    def pentagon_residual(self) -> float:
        return self.w.pentagon_residual

    def membership_residual(self) -> float:
        """Distance of ``W`` from ``Â ⊗ A``."""
        _, r = tensor_coords(self.matrix, (self.dual_algebra, self.algebra))
        return r

    def coassociativity_residual(self, dual: bool = False) -> float:
        """``(Δ ⊗ id)Δ - (id ⊗ Δ)Δ`` on the basis, in coefficients."""
        d = (self.dual_comult if dual else self.comult).coeffs
        left = np.einsum("ijk,jab->iabk", d, d)
        right = np.einsum("ijk,kab->ijab", d, d)
        return max_residual(left, right)

    def characterization_residual(self) -> float:
        """``(id ⊗ Δ)W = W12 W13`` and ``(Δ̂ ⊗ id)W = W23 W13``."""
        n = self.h0
        shape = (n, n, n)
        wc = self.w_coeffs
        w = self.matrix
        lhs = tensor_operator(np.einsum("ij,jab->iab", wc, self.comult.coeffs),
                              (self.dual_algebra, self.algebra, self.algebra))
        rhs = place_on_legs(w, shape, (0, 1)) @ place_on_legs(w, shape, (0, 2))
        r1 = max_residual(lhs, rhs)
        lhs2 = tensor_operator(np.einsum("ij,iab->abj", wc, self.dual_comult.coeffs),
                               (self.dual_algebra, self.dual_algebra, self.algebra))
        rhs2 = place_on_legs(w, shape, (1, 2)) @ place_on_legs(w, shape, (0, 2))
        return max(r1, max_residual(lhs2, rhs2))

    def podles_residuals(self, dual: bool = False) -> tuple[float, float]:
        """Distances of ``Δ(A)(1⊗A)`` and ``(A⊗1)Δ(A)`` from ``A ⊗ A``."""
        from .coaction import bialgebra_podles

        alg = self.dual_algebra if dual else self.algebra
        comult = self.dual_comult if dual else self.comult
        return bialgebra_podles(alg, comult)

    def counit_residual(self, dual: bool = False) -> float:
        e = self.dual_counit if dual else self.counit
        d = (self.dual_comult if dual else self.comult).coeffs
        eye = np.eye(d.shape[0])
        return max(max_residual(np.einsum("j,ijk->ik", e, d), eye),
                   max_residual(np.einsum("k,ijk->ij", e, d), eye))

    def counit_value(self, a) -> complex:
        """Counit of a concrete element of ``A``."""
        return complex(self.algebra.coords(a) @ self.counit)


def _conj_on_new_leg(x, shape, leg, w, n) -> np.ndarray:
    shape = list(shape)
    x = np.asarray(x, dtype=np.complex128)
    new_shape = shape[: leg + 1] + [n] + shape[leg + 1:]
    legs = [i for i in range(len(new_shape)) if i != leg + 1]
    big = place_on_legs(x, new_shape, legs)
    wl = place_on_legs(w, new_shape, (leg, leg + 1))
    return wl @ big @ dagger(wl)


def _solve_counit(comult: LinearMap) -> tuple[np.ndarray, float]:
    d = comult.coeffs
    k = d.shape[0]
    eye = np.eye(k)
    # (e ⊗ id)Δ = id: sum_j e_j d[i, j, l] = δ_il ; (id ⊗ e)Δ = id similarly
    m1 = d.transpose(0, 2, 1).reshape(k * k, k)
    m2 = d.reshape(k * k, k)
    system = np.vstack([m1, m2])
    rhs = np.concatenate([eye.reshape(-1), eye.reshape(-1)])
    e, *_ = np.linalg.lstsq(system, rhs, rcond=None)
    return e, max_residual(system @ e, rhs)


def _comult_map(alg: StarAlgebra, w: np.ndarray, name: str) -> LinearMap:
    n = alg.ambient_dim
    big = np.einsum("iab,cd->iacbd", alg.basis, np.eye(n)).reshape(alg.dim, n * n, n * n)
    images = w @ big @ dagger(w)
    coeffs, resid = tensor_coords(images, (alg, alg))
    if resid > tau(n * n):
        raise ValueError(f"comultiplication escapes the tensor square (residual {resid:.2e})")
    return LinearMap(alg, (alg, alg), coeffs, name=name)


def generate_quantum_group(w: MultiplicativeUnitary, name: str = "") -> QuantumGroup:
    """Slice algebras, comultiplications and counits of a multiplicative unitary."""
    n = w.dim_h0
    second, first = _slices(w.w, n)
    alg = StarAlgebra(span(second, n), f"A({name})" if name else "A")
    dual_alg = StarAlgebra(span(first, n), f"Â({name})" if name else "Â")
    for a in (alg, dual_alg):
        r = a.closure_residual()
        if r > tau(n):
            raise ValueError(f"slice space is not a *-algebra (residual {r:.2e})")
    comult = _comult_map(alg, w.w, "Δ")
    dual_comult = _comult_map(dual_alg, w.dual().w, "Δ̂")
    counit, r1 = _solve_counit(comult)
    dual_counit, r2 = _solve_counit(dual_comult)
    if max(r1, r2) > tau(alg.dim):
        raise ValueError("counit system is inconsistent")
    return QuantumGroup(w, alg, dual_alg, comult, dual_comult, counit, dual_counit, name=name)


def dual_quantum_group(g: QuantumGroup) -> QuantumGroup:
    return g.dual


def group_quantum_group(cayley, side: str = "group-algebra", name: str = "") -> QuantumGroup:
    """Quantum group of a finite group on the named side.

    ``side="group-algebra"`` gives ``A = C[G]``; ``side="function-algebra"``
    gives its dual with ``A = C(G)``.
    """
    group = cayley if isinstance(cayley, FiniteGroup) else FiniteGroup(cayley, name)
    qg = generate_quantum_group(group_multiplicative_unitary(group), name=group.name)
    qg.group = group
    qg.side = "group-algebra"
    if side == "group-algebra":
        return qg
    if side == "function-algebra":
        return qg.dual
    raise ValueError(f"unknown side {side!r}")
