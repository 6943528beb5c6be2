"""POVMs built from orthonormal matrix bases.

Any family {T_a} of N^2 mutually orthogonal N x N matrices with a common
norm gives sum_a T_a T_a^dagger proportional to the identity, so
{alpha T_a T_a^dagger} is a POVM once alpha is fixed by completeness. The
spherical tensor basis gives the diagonal family E^k_q = tau tau^dagger / (2j+1)^2.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import resolve_eps
from .matcore import ShapeError, unvec
from .tensors import tensor_basis, tensor_label


class BasisError(ValueError):
    """Raised when a matrix family is not an orthogonal basis with a common norm."""


class NotUnitaryError(ValueError):
    def __init__(self, defect: float):
        super().__init__(f"matrix is not unitary: ||U U^dagger - I||_F = {defect:.3e}")
        self.defect = defect


@dataclass(frozen=True)
class BasisSet:
    dim: int
    mats: np.ndarray  # shape (dim**2, dim, dim)
    labels: tuple[str, ...]

    def __post_init__(self):
        if self.mats.shape != (self.dim**2, self.dim, self.dim):
            raise ShapeError(
                f"basis for dim {self.dim} needs shape {(self.dim**2, self.dim, self.dim)}, "
                f"got {self.mats.shape}"
            )

    def gram(self) -> np.ndarray:
        flat = self.mats.reshape(self.mats.shape[0], -1)
        return flat.conj() @ flat.T

    def orthogonality_constant(self, eps: float | None = None) -> float:
        """Common value c in Tr(T_a^dagger T_b) = c delta_ab.

        Raises
        ------
        BasisError
            If the Gram matrix is not a positive multiple of the identity.
        """
        eps = resolve_eps(eps)
        g = self.gram()
        c = float(np.mean(np.real(np.diag(g))))
        if c <= eps:
            raise BasisError("basis matrices have zero norm")
        defect = float(np.linalg.norm(g - c * np.eye(len(g))))
        if defect > eps * max(1.0, c):
            raise BasisError(f"basis is not orthogonal with a common norm (Gram defect {defect:.3e})")
        return c


@dataclass(frozen=True)
class PovmElement:
    """One POVM outcome.

    ``mat`` is the full operator for this outcome. After
    :func:`coalesce_degenerate` merges ``multiplicity`` identical raw
    elements, ``mat`` already holds their sum and ``members`` lists the
    original labels.
    """

    label: str
    mat: np.ndarray = field(repr=False, compare=False)
    multiplicity: int = 1
    members: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.members:
            object.__setattr__(self, "members", (self.label,))

    def matches(self, label: str) -> bool:
        return label == self.label or label in self.members


@dataclass(frozen=True)
class PovmSet:
    dim: int
    elements: tuple[PovmElement, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def labels(self) -> list[str]:
        return [e.label for e in self.elements]

    def total(self) -> np.ndarray:
        out = np.zeros((self.dim, self.dim), dtype=np.complex128)
        for e in self.elements:
            out += e.mat
        return out

    def find(self, label: str) -> PovmElement:
        for e in self.elements:
            if e.matches(label):
                return e
        raise KeyError(f"no element labelled {label!r}; valid labels: {', '.join(self.labels)}")

    def without(self, label: str) -> "PovmSet":
        return PovmSet(self.dim, tuple(e for e in self.elements if not e.matches(label)))


def elementary_basis(n: int) -> BasisSet:
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    mats = np.zeros((n * n, n, n), dtype=np.complex128)
    labels = []
    for i in range(n):
        for j in range(n):
            mats[i * n + j, i, j] = 1.0
            labels.append(f"i={i + 1},j={j + 1}")
    return BasisSet(n, mats, tuple(labels))


def unitarity_defect(u) -> float:
    u = np.asarray(u, dtype=np.complex128)
    return float(np.linalg.norm(u @ u.conj().T - np.eye(u.shape[0])))


def basis_from_unitary(u, eps: float | None = None) -> BasisSet:
    """T_ij = unvec(U vec(E_ij)), i.e. the columns of ``U`` reshaped row-major."""
    eps = resolve_eps(eps)
    u = np.asarray(u, dtype=np.complex128)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ShapeError(f"U must be square, got shape {u.shape}")
    n = int(round(np.sqrt(u.shape[0])))
    if n * n != u.shape[0]:
        raise ShapeError(f"U must be N^2 x N^2, got {u.shape}")
    defect = unitarity_defect(u)
    if defect > eps:
        raise NotUnitaryError(defect)
    mats = np.stack([unvec(u[:, a], n) for a in range(n * n)])
    return BasisSet(n, mats, elementary_basis(n).labels)


def povm_from_basis(basis: BasisSet, eps: float | None = None) -> PovmSet:
    """Elements alpha T T^dagger with alpha = N / sum_a Tr(T_a T_a^dagger)."""
    basis.orthogonality_constant(eps)
    products = np.einsum("aij,akj->aik", basis.mats, basis.mats.conj())
    alpha = basis.dim / float(np.real(np.einsum("aii->", products)))
    elements = tuple(
        PovmElement(label, alpha * p) for label, p in zip(basis.labels, products)
    )
    return PovmSet(basis.dim, elements)


def spherical_basis(j) -> BasisSet:
    tensors = tensor_basis(j)
    mats = np.stack([t.mat for t in tensors])
    return BasisSet(mats.shape[1], mats, tuple(t.label for t in tensors))


def spherical_povm(j) -> PovmSet:
    """The (2j+1)^2 elements E^k_q = tau^k_q tau^k_q^dagger / (2j+1)^2, all diagonal."""
    return povm_from_basis(spherical_basis(j))


def _merged_label(labels: list[str]) -> str:
    if len(labels) == 1:
        return labels[0]
    parts = [dict(p.split("=") for p in lab.split(",")) for lab in labels]
    if all(set(p) == {"k", "q"} for p in parts) and len({p["q"] for p in parts}) == 1:
        ks = ",".join(p["k"] for p in parts)
        return f"k∈{{{ks}}},q={parts[0]['q']}"
    return "{" + ";".join(labels) + "}"


def coalesce_degenerate(povm: PovmSet, eps: float | None = None) -> PovmSet:
    """Merge elements whose matrices agree within ``eps`` (Frobenius).

    The merged element keeps the position of the first member; its matrix is
    the sum of the members, so completeness is unchanged.
    """
    eps = resolve_eps(eps)
    groups: list[list[PovmElement]] = []
    for e in povm.elements:
        for g in groups:
            if np.linalg.norm(g[0].mat / g[0].multiplicity - e.mat / e.multiplicity) <= eps:
                g.append(e)
                break
        else:
            groups.append([e])
    merged = []
    for g in groups:
        members = tuple(m for e in g for m in e.members)
        merged.append(
            PovmElement(
                _merged_label(list(members)),
                sum((e.mat for e in g), np.zeros_like(g[0].mat)),
                sum(e.multiplicity for e in g),
                members,
            )
        )
    return PovmSet(povm.dim, tuple(merged))


def completeness_defect(povm: PovmSet, target=None) -> float:
    """||sum of elements - target||_F; ``target`` defaults to the identity."""
    target = np.eye(povm.dim) if target is None else np.asarray(target)
    return float(np.linalg.norm(povm.total() - target))


def is_valid_povm(povm: PovmSet, eps: float | None = None) -> bool:
    from .matcore import hermiticity_defect, min_eigenvalue

    eps = resolve_eps(eps)
    for e in povm.elements:
        if hermiticity_defect(e.mat) > eps or min_eigenvalue(e.mat, eps=eps) < -eps:
            return False
    return completeness_defect(povm) <= eps


__all__ = [
    "BasisError",
    "BasisSet",
    "NotUnitaryError",
    "PovmElement",
    "PovmSet",
    "basis_from_unitary",
    "coalesce_degenerate",
    "completeness_defect",
    "elementary_basis",
    "is_valid_povm",
    "povm_from_basis",
    "spherical_basis",
    "spherical_povm",
    "tensor_label",
]
