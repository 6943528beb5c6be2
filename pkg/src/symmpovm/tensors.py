"""Irreducible spherical tensor operators and Fano statistical tensors.

For spin ``j`` the operator ``tau(j, k, q)`` has matrix elements

    <j m'| tau^k_q |j m> = sqrt(2k+1) * C(j k j; m q m')

with rows indexed by ``m'`` and columns by ``m``, both running from ``+j``
down to ``-j``. With this normalization Tr(tau^dagger tau') = (2j+1) delta delta,
tau^0_0 is the identity and tau^k_q^dagger = (-1)^q tau^k_{-q}.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .angmom import clebsch_gordan, half, m_values, twice, wigner_D
from .config import resolve_eps
from .matcore import ShapeError, min_eigenvalue


class UnphysicalStateWarning(UserWarning):
    """Emitted when a reconstructed density matrix has a negative eigenvalue."""


@dataclass(frozen=True)
class SphericalTensor:
    j: Fraction
    k: int
    q: int
    mat: np.ndarray = field(repr=False, compare=False)

    @property
    def label(self) -> str:
        return tensor_label(self.k, self.q)


def tensor_label(k: int, q: int) -> str:
    return f"k={k},q={q:+d}" if q else f"k={k},q=0"


def _check_rank(j: Fraction, k: int, q: int) -> None:
    if not (0 <= k <= 2 * j) or abs(q) > k:
        raise ValueError(f"need 0 <= k <= 2j and |q| <= k; got j={j}, k={k}, q={q}")


@lru_cache(maxsize=None)
def _tau_matrix(tj: int, k: int, q: int) -> np.ndarray:
    j = Fraction(tj, 2)
    ms = m_values(j)
    dim = tj + 1
    out = np.zeros((dim, dim))
    norm = np.sqrt(2 * k + 1)
    for col, m in enumerate(ms):
        mp = m + q
        if abs(mp) > j:
            continue
        row = ms.index(mp)
        out[row, col] = norm * float(clebsch_gordan(j, k, j, m, q, mp))
    out.setflags(write=False)
    return out


def tau(j, k: int, q: int) -> SphericalTensor:
    """Spherical tensor operator of rank ``k`` and projection ``q`` for spin ``j``."""
    j = half(j)
    if j < 0:
        raise ValueError("spin must be non-negative")
    k, q = int(k), int(q)
    _check_rank(j, k, q)
    return SphericalTensor(j, k, q, _tau_matrix(twice(j), k, q).astype(np.complex128))


def rank_projection_pairs(j) -> list[tuple[int, int]]:
    """Canonical order: k ascending, then q from -k to +k."""
    tj = twice(j)
    return [(k, q) for k in range(tj + 1) for q in range(-k, k + 1)]


def tensor_basis(j) -> list[SphericalTensor]:
    """All ``(2j+1)^2`` operators in canonical order."""
    return [tau(j, k, q) for k, q in rank_projection_pairs(j)]


def spin_from_dim(dim: int) -> Fraction:
    if dim < 1:
        raise ShapeError(f"dimension must be positive, got {dim}")
    return Fraction(dim - 1, 2)


@dataclass
class FanoParameters:
    """Statistical tensors t^k_q = Tr(rho tau^k_q) of a spin-``j`` state."""

    j: Fraction
    values: dict[tuple[int, int], complex]

    def __getitem__(self, kq: tuple[int, int]) -> complex:
        return self.values.get(kq, 0j)

    def rank(self, k: int) -> np.ndarray:
        """Rank-``k`` block as an array ordered q = +k ... -k (same order as D^k rows)."""
        return np.array([self[(k, q)] for q in range(k, -k - 1, -1)], dtype=np.complex128)

    def as_array(self) -> np.ndarray:
        return np.array([self[kq] for kq in rank_projection_pairs(self.j)], dtype=np.complex128)

    def conjugation_defect(self) -> float:
        """Max |conj(t^k_q) - (-1)^q t^k_{-q}|; zero for Hermitian states."""
        return max(
            (abs(np.conj(self[(k, q)]) - (-1) ** q * self[(k, -q)]) for k, q in self.values),
            default=0.0,
        )


def fano_extract(rho) -> FanoParameters:
    """Compute all t^k_q of a ``(2j+1)``-dimensional density matrix."""
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ShapeError(f"density matrix must be square, got shape {rho.shape}")
    j = spin_from_dim(rho.shape[0])
    values = {}
    for t in tensor_basis(j):
        values[(t.k, t.q)] = complex(np.trace(rho @ t.mat))
    return FanoParameters(j, values)


def fano_reconstruct(t: FanoParameters, eps: float | None = None) -> np.ndarray:
    """Rebuild rho = 1/(2j+1) sum_{k,q} t^k_q tau^k_q^dagger.

    The result is Hermitian with unit trace when ``t`` obeys the conjugation
    symmetry and t^0_0 = 1. Positivity is not enforced: if the smallest
    eigenvalue is below ``-eps`` an :class:`UnphysicalStateWarning` is issued
    and the matrix is still returned.
    """
    eps = resolve_eps(eps)
    j = half(t.j)
    dim = twice(j) + 1
    rho = np.zeros((dim, dim), dtype=np.complex128)
    for tens in tensor_basis(j):
        rho += t[(tens.k, tens.q)] * tens.mat.conj().T
    rho /= dim
    herm = 0.5 * (rho + rho.conj().T)
    if np.linalg.norm(rho - herm) <= eps * max(1.0, float(np.linalg.norm(rho))):
        lam = min_eigenvalue(herm, eps=eps)
        if lam < -eps:
            warnings.warn(
                f"unphysical parameter set: reconstructed matrix has eigenvalue {lam:.3e}",
                UnphysicalStateWarning,
                stacklevel=2,
            )
    return rho


def is_physical_parameters(t: FanoParameters, eps: float | None = None) -> bool:
    eps = resolve_eps(eps)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UnphysicalStateWarning)
        rho = fano_reconstruct(t, eps=eps)
    return min_eigenvalue(0.5 * (rho + rho.conj().T), eps=eps) >= -eps


def rotate_parameters(t: FanoParameters, alpha: float, beta: float, gamma: float) -> FanoParameters:
    """Statistical tensors referred to coordinates rotated by Euler angles (zyz).

    Each rank transforms on its own: (t^k_q)^R = sum_{q'} D^k_{q'q}(alpha, beta, gamma) t^k_{q'}.
    This equals ``fano_extract(D^dagger rho D)`` with ``D = wigner_D(j, alpha, beta, gamma)``.
    """
    j = half(t.j)
    out: dict[tuple[int, int], complex] = {}
    for k in range(twice(j) + 1):
        block = wigner_D(k, alpha, beta, gamma).T @ t.rank(k)
        for idx, q in enumerate(range(k, -k - 1, -1)):
            out[(k, q)] = complex(block[idx])
    return FanoParameters(j, out)


def rank_norms(t: FanoParameters) -> np.ndarray:
    """sum_q |t^k_q|^2 for each rank k; invariant under rotations."""
    return np.array([float(np.sum(np.abs(t.rank(k)) ** 2)) for k in range(twice(t.j) + 1)])
