"""Measurement: Born probabilities, post-measurement states, sampling,
Pauli decompositions and the PPT entanglement test."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import _kernels
from .config import resolve_eps
from .matcore import ShapeError, hermitian_eigen, hermiticity_defect, partial_transpose
from .povm import PovmElement, PovmSet

PAULI_LETTERS = "IXYZ"
COEFF_CUTOFF = 1e-13


class UnphysicalStateError(ValueError):
    """Raised when an input state violates Hermiticity, unit trace or positivity."""


class ZeroProbabilityError(ValueError):
    """Raised when the requested outcome has no support on the state."""

    def __init__(self, label: str, weight: float):
        super().__init__(f"outcome {label!r} has no support on this state (weight {weight:.3e})")


def validate_density(rho, eps: float | None = None) -> np.ndarray:
    """Return ``rho`` as a complex array after checking it is a density matrix."""
    eps = resolve_eps(eps)
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise UnphysicalStateError(f"density matrix must be square, got shape {rho.shape}")
    defect = hermiticity_defect(rho)
    if defect > eps:
        raise UnphysicalStateError(f"density matrix is not Hermitian (defect {defect:.3e})")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > eps:
        raise UnphysicalStateError(f"density matrix has trace {tr:.12g}, expected 1")
    lam = hermitian_eigen(rho, eps=eps).eigenvalues[-1]
    if lam < -eps:
        raise UnphysicalStateError(f"density matrix has negative eigenvalue {lam:.3e}")
    return rho


def validate_pure(psi, eps: float | None = None) -> np.ndarray:
    eps = resolve_eps(eps)
    psi = np.asarray(psi, dtype=np.complex128).reshape(-1)
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > eps:
        raise UnphysicalStateError(f"pure state has norm {norm:.12g}, expected 1")
    return psi


def _check_dim(rho: np.ndarray, povm_dim: int) -> None:
    if rho.shape[0] != povm_dim:
        raise ShapeError(f"state of dimension {rho.shape[0]} vs POVM of dimension {povm_dim}")


def born_probabilities(rho, povm: PovmSet, eps: float | None = None) -> list[tuple[str, float]]:
    """p = Tr(E rho) for every element, in the set's order."""
    rho = validate_density(rho, eps)
    _check_dim(rho, povm.dim)
    return [(e.label, float(np.real(np.vdot(e.mat.conj().T, rho)))) for e in povm.elements]


def post_state(rho, e: PovmElement, eps: float | None = None) -> np.ndarray:
    """E rho E / Tr(E rho E), with the element itself as the update operator.

    Raises
    ------
    ZeroProbabilityError
        If Tr(E rho E) <= eps.
    """
    eps = resolve_eps(eps)
    rho = validate_density(rho, eps)
    _check_dim(rho, e.mat.shape[0])
    out = e.mat @ rho @ e.mat.conj().T
    weight = float(np.trace(out).real)
    if weight <= eps:
        raise ZeroProbabilityError(e.label, weight)
    return out / weight


def post_state_pure(psi, e: PovmElement, eps: float | None = None) -> np.ndarray:
    """Normalized E psi.

    Raises
    ------
    ZeroProbabilityError
        If <psi|E|psi> <= eps.
    """
    eps = resolve_eps(eps)
    psi = validate_pure(psi, eps)
    _check_dim(psi.reshape(-1, 1), e.mat.shape[0])
    prob = float(np.real(np.vdot(psi, e.mat @ psi)))
    if prob <= eps:
        raise ZeroProbabilityError(e.label, prob)
    phi = e.mat @ psi
    return phi / np.linalg.norm(phi)


@dataclass(frozen=True)
class OutcomeSample:
    index: int
    label: str
    probability: float
    kraus_weight: float
    post_state: np.ndarray = field(repr=False, compare=False)


def make_rng(seed: int) -> np.random.Generator:
    """PCG64 stream seeded with ``seed``; identical across platforms."""
    return np.random.Generator(np.random.PCG64(seed))


def sample_indices(probs, n: int, seed: int) -> np.ndarray:
    """Draw ``n`` outcome indices by inverse CDF over the given order."""
    p = np.clip(np.asarray(probs, dtype=float), 0.0, None)
    cdf = np.cumsum(p)
    cdf /= cdf[-1]
    u = make_rng(seed).random(n)
    return np.minimum(np.searchsorted(cdf, u, side="right"), len(p) - 1)


def sample_counts(rho, povm: PovmSet, n: int, seed: int, eps: float | None = None) -> np.ndarray:
    probs = [p for _, p in born_probabilities(rho, povm, eps)]
    return np.bincount(sample_indices(probs, n, seed), minlength=len(povm))


def sample_outcome(rho, povm: PovmSet, seed: int, eps: float | None = None) -> OutcomeSample:
    """Draw one outcome from the Born distribution and apply the update rule.

    ``kraus_weight`` is Tr(E rho E), the normalizer used by the update; it only
    equals ``probability`` when E is a projector.
    """
    rho = validate_density(rho, eps)
    probs = [p for _, p in born_probabilities(rho, povm, eps)]
    idx = int(sample_indices(probs, 1, seed)[0])
    e = povm.elements[idx]
    weight = float(np.trace(e.mat @ rho @ e.mat.conj().T).real)
    return OutcomeSample(idx, e.label, probs[idx], weight, post_state(rho, e, eps))


@dataclass
class PauliDecomposition:
    n_qubits: int
    coeffs: dict[str, complex | float]

    def vector(self) -> np.ndarray:
        out = np.zeros(4**self.n_qubits, dtype=np.complex128)
        for name, c in self.coeffs.items():
            out[pauli_index(name)] = c
        return out


def pauli_strings(n: int) -> list[str]:
    return ["".join(p) for p in product(PAULI_LETTERS, repeat=n)]


def pauli_index(name: str) -> int:
    idx = 0
    for ch in name:
        idx = 4 * idx + PAULI_LETTERS.index(ch)
    return idx


def pauli_operator(name: str) -> np.ndarray:
    n = len(name)
    vec = np.zeros(4**n, dtype=np.complex128)
    vec[pauli_index(name)] = 1.0
    return _kernels.pauli_matrix(vec, n)


def _qubits_for(dim: int) -> int:
    n = dim.bit_length() - 1
    if dim < 1 or (1 << n) != dim:
        raise ShapeError(f"dimension {dim} is not a power of 2")
    return n


def pauli_decompose(m, n_qubits: int | None = None) -> PauliDecomposition:
    """c_P = Tr(P M) / 2^n over all 4^n strings; entries below 1e-13 are dropped.

    Coefficients are returned as floats when every imaginary part is below the
    cutoff (always the case for Hermitian ``M``).
    """
    m = np.ascontiguousarray(m, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ShapeError(f"need a square matrix, got shape {m.shape}")
    n = _qubits_for(m.shape[0])
    if n_qubits is not None and n_qubits != n:
        raise ShapeError(f"matrix of size {m.shape[0]} is not a {n_qubits}-qubit operator")
    c = _kernels.pauli_coefficients(m, n)
    real = bool(np.all(np.abs(c.imag) < COEFF_CUTOFF))
    names = pauli_strings(n)
    coeffs = {}
    for name, value in zip(names, c):
        if abs(value) >= COEFF_CUTOFF:
            coeffs[name] = float(value.real) if real else complex(value)
    return PauliDecomposition(n, coeffs)


def pauli_reconstruct(d: PauliDecomposition) -> np.ndarray:
    return _kernels.pauli_matrix(d.vector(), d.n_qubits)


@dataclass(frozen=True)
class PptResult:
    min_eigenvalue: float
    entangled: bool
    eigenvalues: np.ndarray = field(repr=False, compare=False)
    conclusive: bool = True  # False when PPT is only a one-way test for this shape

    def __iter__(self):
        yield self.min_eigenvalue
        yield self.entangled


def ppt_check(rho, dim_a: int, dim_b: int, eps: float | None = None) -> PptResult:
    """Peres-Horodecki test on the partial transpose over the second factor.

    ``entangled`` is True when the partial transpose has an eigenvalue below
    ``-eps``. A False verdict proves separability only for 2x2, 2x3 and 3x2;
    ``conclusive`` records whether that holds.
    """
    eps = resolve_eps(eps)
    rho = validate_density(rho, eps)
    if rho.shape[0] != dim_a * dim_b:
        raise ShapeError(f"state of dimension {rho.shape[0]} does not factor as {dim_a}x{dim_b}")
    ev = hermitian_eigen(partial_transpose(rho, dim_a, dim_b), eps=eps).eigenvalues
    lam = float(ev[-1])
    small = {(2, 2), (2, 3), (3, 2)}
    entangled = lam < -eps
    return PptResult(lam, entangled, ev, entangled or (dim_a, dim_b) in small)
