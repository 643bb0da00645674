"""Numerical tolerance policy.

Two thresholds are used throughout the package:

* the identity tolerance ``tau(dim) = base * dim``, applied to max-entry
  residuals of matrix identities on a space of dimension ``dim``;
* the rank threshold ``rank_rel * sigma_max``, applied to singular values
  when deciding the dimension of a span.

The base factor defaults to ``1e-9`` and can be overridden globally through
the ``BRAIDBOX_TOLERANCE`` environment variable or locally with
:func:`tolerance_override`.
"""

from __future__ import annotations

import contextlib
import contextvars
import os

DEFAULT_BASE = 1e-9
DEFAULT_RANK_REL = 1e-8

_base_override: contextvars.ContextVar[float | None] = contextvars.ContextVar(
    "braidbox_tolerance", default=None
)


def _env_base() -> float:
    raw = os.environ.get("BRAIDBOX_TOLERANCE")
    if raw is None or raw.strip() == "":
        return DEFAULT_BASE
    try:
        value = float(raw)
    except ValueError:
        raise ValueError(f"BRAIDBOX_TOLERANCE must be a number, got {raw!r}") from None
    if not value > 0:
        raise ValueError(f"BRAIDBOX_TOLERANCE must be positive, got {raw!r}")
    return value


def base_tolerance() -> float:
    """Current per-dimension tolerance factor."""
    override = _base_override.get()
    return _env_base() if override is None else override


def tau(dim: int) -> float:
    """Identity tolerance for a residual measured on a space of size ``dim``."""
    return base_tolerance() * max(int(dim), 1)


def rank_threshold(sigma_max: float) -> float:
    """Singular values at or below this value count as zero."""
    return DEFAULT_RANK_REL * max(float(sigma_max), 1.0)


@contextlib.contextmanager
def tolerance_override(base: float | None):
    """Temporarily replace the tolerance base factor (``None`` keeps it)."""
    if base is None:
        yield
        return
    if not base > 0:
        raise ValueError("tolerance must be positive")
    token = _base_override.set(float(base))
    try:
        yield
    finally:
        _base_override.reset(token)


def policy() -> dict:
    """Description of the active policy, recorded in certificates."""
    return {
        "identity_tolerance": f"{base_tolerance():.3e} * dim (max-entry residual)",
        "rank_threshold": f"{DEFAULT_RANK_REL:.0e} * largest singular value",
    }
