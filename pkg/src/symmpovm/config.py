"""Global numerical settings.

``EPS`` is the single absolute tolerance used across the package; it can be
overridden with the ``POVM_EPS`` environment variable or per call through the
``eps`` keyword most functions accept. ``BACKEND`` selects the kernel
implementation (``numba`` or ``numpy``) and is read from ``POVM_BACKEND``.
"""

from __future__ import annotations

import os

DEFAULT_EPS = 1e-10


def _eps_from_env() -> float:
    raw = os.environ.get("POVM_EPS")
    if raw is None:
        return DEFAULT_EPS
    value = float(raw)
    if not value > 0:
        raise ValueError(f"POVM_EPS must be positive, got {raw!r}")
    return value


EPS: float = _eps_from_env()


def resolve_eps(eps: float | None) -> float:
    """Return ``eps`` if given, else the global tolerance."""
    return EPS if eps is None else float(eps)


def _backend_from_env() -> str:
    name = os.environ.get("POVM_BACKEND", "numba").strip().lower()
    if name not in ("numba", "numpy"):
        raise ValueError(f"POVM_BACKEND must be 'numba' or 'numpy', got {name!r}")
    return name


BACKEND: str = _backend_from_env()
