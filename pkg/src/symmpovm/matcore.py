"""Small dense complex linear algebra.

Matrices are plain ``numpy`` complex arrays. The helpers here add the
dimension checks and conventions the rest of the package relies on: row-major
vectorization, block direct sums, bipartite partial transpose and a Jacobi
Hermitian eigensolver.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .config import resolve_eps


class ShapeError(ValueError):
    """Raised when operand shapes are incompatible."""


class NotHermitianError(ValueError):
    """Raised when a Hermitian input is required and the defect is too large."""

    def __init__(self, defect: float, eps: float):
        super().__init__(
            f"matrix is not Hermitian: ||H - H^dagger||_F = {defect:.3e} exceeds {eps:.1e}"
        )
        self.defect = defect


def cmatrix(a) -> np.ndarray:
    """Coerce to a 2-D complex128 array."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim == 1:
        m = m.reshape(-1, 1)
    if m.ndim != 2:
        raise ShapeError(f"expected a matrix, got array of shape {m.shape}")
    return m


def _square(a, name: str = "matrix") -> np.ndarray:
    m = cmatrix(a)
    if m.shape[0] != m.shape[1]:
        raise ShapeError(f"{name} must be square, got shape {m.shape}")
    return m


def dagger(a) -> np.ndarray:
    return cmatrix(a).conj().T


def matmul(a, b) -> np.ndarray:
    a, b = cmatrix(a), cmatrix(b)
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"cannot multiply shapes {a.shape} and {b.shape}")
    return a @ b


def add(a, b) -> np.ndarray:
    a, b = cmatrix(a), cmatrix(b)
    if a.shape != b.shape:
        raise ShapeError(f"cannot add shapes {a.shape} and {b.shape}")
    return a + b


def scale(c: complex, a) -> np.ndarray:
    return complex(c) * cmatrix(a)


def trace_inner(a, b) -> complex:
    """Hilbert-Schmidt inner product Tr(A^dagger B)."""
    a, b = _square(a), _square(b)
    if a.shape != b.shape:
        raise ShapeError(f"trace_inner needs equal shapes, got {a.shape} and {b.shape}")
    return complex(np.vdot(a, b))


def vec(x) -> np.ndarray:
    """Stack the rows of a square matrix into an N^2 x 1 column.

    Entry (i, j) lands at position ``i*N + j``.
    """
    x = _square(x, "vec input")
    return x.reshape(-1, 1).copy()


def unvec(v, n: int) -> np.ndarray:
    """Inverse of :func:`vec`: the first ``n`` entries become row 0, and so on."""
    flat = np.asarray(v, dtype=np.complex128).reshape(-1)
    if flat.size != n * n:
        raise ShapeError(f"unvec needs {n * n} entries for n={n}, got {flat.size}")
    return flat.reshape(n, n).copy()


def kron(a, b) -> np.ndarray:
    return np.kron(cmatrix(a), cmatrix(b))


def direct_sum(a, b) -> np.ndarray:
    """Block-diagonal ``[[A, 0], [0, B]]``. ``B`` may be empty (0 x 0)."""
    a = _square(a) if np.size(a) else np.zeros((0, 0), dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    b = b.reshape(0, 0) if b.size == 0 else _square(b)
    n, m = a.shape[0], b.shape[0]
    out = np.zeros((n + m, n + m), dtype=np.complex128)
    out[:n, :n] = a
    out[n:, n:] = b
    return out


def partial_transpose(m, dim_a: int, dim_b: int) -> np.ndarray:
    """Transpose the second tensor factor of an operator on C^dim_a (x) C^dim_b.

    Element ((a, b), (a', b')) moves to ((a, b'), (a', b)).
    """
    m = _square(m)
    if m.shape[0] != dim_a * dim_b:
        raise ShapeError(
            f"partial_transpose: matrix of size {m.shape[0]} does not factor as {dim_a}x{dim_b}"
        )
    t = m.reshape(dim_a, dim_b, dim_a, dim_b).transpose(0, 3, 2, 1)
    return t.reshape(dim_a * dim_b, dim_a * dim_b).copy()


def hermiticity_defect(h) -> float:
    h = _square(h)
    return float(np.linalg.norm(h - h.conj().T))


def is_hermitian(h, eps: float | None = None) -> bool:
    return hermiticity_defect(h) <= resolve_eps(eps)


@dataclass(frozen=True)
class EigenResult:
    """Eigen-decomposition of a Hermitian matrix.

    ``eigenvalues`` are sorted descending; column ``i`` of ``eigenvectors``
    belongs to ``eigenvalues[i]``. Inside a degenerate cluster the vectors are
    orthonormal but their order and phases are arbitrary.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sweeps: int = 0


def hermitian_eigen(h, eps: float | None = None, max_sweeps: int = 100) -> EigenResult:
    """Diagonalize a Hermitian matrix by cyclic complex Jacobi rotations.

    Sweeps continue until the off-diagonal Frobenius norm drops below
    ``eps * ||H||_F``.

    Raises
    ------
    NotHermitianError
        If ``||H - H^dagger||_F`` exceeds ``eps`` (scaled by ``max(1, ||H||)``).
    """
    eps = resolve_eps(eps)
    h = _square(h, "hermitian_eigen input")
    defect = hermiticity_defect(h)
    if defect > eps * max(1.0, float(np.linalg.norm(h))):
        raise NotHermitianError(defect, eps)
    h = 0.5 * (h + h.conj().T)
    w, v, sweeps = _kernels.jacobi_eigh(np.ascontiguousarray(h), eps, max_sweeps)
    order = np.argsort(-w, kind="stable")
    return EigenResult(w[order], v[:, order], int(sweeps))


def eigvalsh_desc(h, eps: float | None = None) -> np.ndarray:
    return hermitian_eigen(h, eps=eps).eigenvalues


def min_eigenvalue(h, eps: float | None = None) -> float:
    return float(hermitian_eigen(h, eps=eps).eigenvalues[-1])
