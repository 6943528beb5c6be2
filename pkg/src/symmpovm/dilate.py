"""Embedding symmetric-subspace POVMs into the full N-qubit space.

Computational basis states are ordered with ``|up>`` = bit 0, so index 0 is
``|up up ... up>`` and the leftmost tensor factor is the most significant bit.
Column ``c`` of the Dicke isometry is |j, m = j - c> with j = N/2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

from .matcore import ShapeError
from .povm import PovmElement, PovmSet


@dataclass(frozen=True)
class DickeIsometry:
    n_qubits: int
    V: np.ndarray = field(repr=False, compare=False)

    @property
    def projector(self) -> np.ndarray:
        """V V^dagger, the orthogonal projector onto the symmetric subspace."""
        return self.V @ self.V.conj().T


def dicke_isometry(n: int) -> DickeIsometry:
    """2^N x (N+1) isometry whose columns are the Dicke states, m = +N/2 first."""
    if n < 1:
        raise ValueError(f"need at least one qubit, got {n}")
    dim = 1 << n
    down_counts = np.array([bin(r).count("1") for r in range(dim)])
    V = np.zeros((dim, n + 1), dtype=np.complex128)
    for c in range(n + 1):
        # column c has c down-spins
        V[down_counts == c, c] = 1.0 / np.sqrt(comb(n, c))
    return DickeIsometry(n, V)


def cg_unitary_two_qubits() -> np.ndarray:
    """Rows: |1 1>, |1 0>, |1 -1>, |0 0> written in the computational basis."""
    r = 1.0 / np.sqrt(2.0)
    return np.array(
        [
            [1, 0, 0, 0],
            [0, r, r, 0],
            [0, 0, 0, 1],
            [0, r, -r, 0],
        ],
        dtype=np.complex128,
    )


def _check(dim: int, iso: DickeIsometry) -> None:
    if dim != iso.n_qubits + 1:
        raise ShapeError(
            f"element of dimension {dim} does not match {iso.n_qubits} qubits "
            f"(symmetric subspace has dimension {iso.n_qubits + 1})"
        )


def dilate_matrix(e, iso: DickeIsometry) -> np.ndarray:
    e = np.asarray(e, dtype=np.complex128)
    _check(e.shape[0], iso)
    return iso.V @ e @ iso.V.conj().T


def dilate_element(e: PovmElement, iso: DickeIsometry) -> PovmElement:
    """epsilon = V E V^dagger on the 2^N-dimensional space."""
    return PovmElement(e.label, dilate_matrix(e.mat, iso), e.multiplicity, e.members)


def dilate_set(povm: PovmSet, iso: DickeIsometry) -> PovmSet:
    """Dilate every element. The dilated elements sum to V V^dagger, not the identity."""
    _check(povm.dim, iso)
    return PovmSet(1 << iso.n_qubits, tuple(dilate_element(e, iso) for e in povm.elements))


def symmetric_component(psi, iso: DickeIsometry) -> np.ndarray:
    """Unnormalized projection V V^dagger psi."""
    psi = np.asarray(psi, dtype=np.complex128).reshape(-1)
    if psi.size != 1 << iso.n_qubits:
        raise ShapeError(f"state of length {psi.size} does not match {iso.n_qubits} qubits")
    return iso.V @ (iso.V.conj().T @ psi)


def qubit_swap(n: int, a: int, b: int) -> np.ndarray:
    """Permutation matrix exchanging tensor factors ``a`` and ``b`` (0 = leftmost)."""
    dim = 1 << n
    perm = np.zeros((dim, dim))
    ba, bb = n - 1 - a, n - 1 - b
    for r in range(dim):
        x, y = (r >> ba) & 1, (r >> bb) & 1
        s = r & ~((1 << ba) | (1 << bb)) | (y << ba) | (x << bb)
        perm[s, r] = 1.0
    return perm


def dilate_with_cg_unitary(e) -> np.ndarray:
    """Two-qubit dilation through the explicit Clebsch-Gordan unitary.

    The rows of ``U`` are the coupled states, so the embedding reads
    U^dagger (E + 0) U; it agrees with :func:`dilate_matrix` for N = 2.
    """
    e = np.asarray(e, dtype=np.complex128)
    if e.shape != (3, 3):
        raise ShapeError(f"two-qubit dilation needs a 3x3 element, got {e.shape}")
    u = cg_unitary_two_qubits()
    padded = np.zeros((4, 4), dtype=np.complex128)
    padded[:3, :3] = e
    return u.conj().T @ padded @ u


def with_complement(povm: PovmSet, iso: DickeIsometry, label: str = "outside-symmetric") -> PovmSet:
    """Append I - V V^dagger so a dilated set becomes complete on the full space."""
    rest = np.eye(1 << iso.n_qubits) - iso.projector
    return PovmSet(povm.dim, povm.elements + (PovmElement(label, rest),))
