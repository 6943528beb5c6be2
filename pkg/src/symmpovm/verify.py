"""Self-checks behind ``symmpovm verify``.

The ``paper`` suite reproduces the worked spin-1 / two-qubit example; the
``random`` suite checks the basis-to-POVM construction and the dilation
properties on random inputs. Each check yields a :class:`Check`.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from .dilate import cg_unitary_two_qubits, dicke_isometry, dilate_element, dilate_set
from .matcore import hermiticity_defect, min_eigenvalue, partial_transpose
from .measure import pauli_decompose, post_state, post_state_pure, ppt_check
from .povm import (
    basis_from_unitary,
    coalesce_degenerate,
    completeness_defect,
    elementary_basis,
    povm_from_basis,
    spherical_povm,
)
from .tensors import FanoParameters, fano_reconstruct, tensor_basis

# Printed values in the worked example that disagree with what the
# construction itself forces; the suite asserts the derived values.
KNOWN_DISCREPANCIES = (
    "E^2_0 corners printed as 1; completeness forces 1/18 (middle entry 4/18 agrees)",
    "E^1_{±1} = E^2_{±1} printed as diag(1/3,1/3,0)-type; each raw element is half of that, "
    "the printed matrix is the coalesced pair",
    "epsilon^1_1 corner printed as 1; its own Pauli expansion and epsilon^1_1|psi> give 1/3",
    "epsilon^1_1 = U(E+0)U^dagger with the printed U (rows = coupled states) needs U^dagger(E+0)U",
    "psi^f normalization: epsilon psi / sqrt(<psi|epsilon|psi>) is not unit norm; "
    "the printed psi^f is epsilon psi / ||epsilon psi||",
    "rho^i: coefficient of t^1_0 and of t^{1,2}_{±1} printed as 3/2; the tensor basis gives sqrt(3/2), "
    "and the t^2_{±1} terms enter rho_23, rho_32 with a minus sign",
    "Pauli expansions of epsilon^0_0, epsilon^1_0, epsilon^1_-1, epsilon^2_0, epsilon^2_±2 "
    "do not reconstruct the derived epsilon matrices; only epsilon^1_1 does",
)


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}" + (f" ({self.detail})" if self.detail else "")

    def to_dict(self) -> dict:
        return asdict(self)


def _close(a, b, tol: float) -> tuple[bool, str]:
    err = float(np.max(np.abs(np.asarray(a) - np.asarray(b)))) if np.size(a) else 0.0
    return err <= tol, f"max error {err:.2e}, tol {tol:.0e}"


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    z = (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_density(dim: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    rank = dim if rank is None else rank
    a = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def random_pure(dim: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


class PovmElementLike:
    """Minimal stand-in so raw matrices can be fed to the update functions."""

    def __init__(self, mat, label: str = "matrix"):
        self.mat = np.asarray(mat, dtype=np.complex128)
        self.label = label


def paper_suite() -> list[Check]:
    checks: list[Check] = []

    def add(name, ok_detail):
        checks.append(Check(name, *ok_detail))

    raw = spherical_povm(1)
    e = {lab: raw.find(lab).mat.real for lab in raw.labels}
    table = {
        "k=0,q=0": np.eye(3) / 9,
        "k=1,q=0": np.diag([1 / 6, 0, 1 / 6]),
        "k=2,q=+2": np.diag([1 / 3, 0, 0]),
        "k=2,q=-2": np.diag([0, 0, 1 / 3]),
    }
    for lab, ref in table.items():
        add(f"spin-1 E[{lab}] matches printed table", _close(e[lab], ref, 1e-12))
    add("spin-1 E[k=2,q=0] middle entry 4/18", _close(e["k=2,q=0"][1, 1], 4 / 18, 1e-12))
    add("spin-1 completeness", (completeness_defect(raw) < 1e-12, f"defect {completeness_defect(raw):.1e}"))
    co = coalesce_degenerate(raw)
    add("coalesced E^1_1 = E^2_1 = diag(1/3,1/3,0)",
        _close(co.find("k=1,q=+1").mat, np.diag([1 / 3, 1 / 3, 0]), 1e-12))
    add("coalesced E^1_-1 = E^2_-1 = diag(0,1/3,1/3)",
        _close(co.find("k=1,q=-1").mat, np.diag([0, 1 / 3, 1 / 3]), 1e-12))

    for n in range(2, 7):
        b = elementary_basis(n).mats
        add(f"sum E_ij E_ij^dagger = {n} I", _close(np.einsum("aij,akj->ik", b, b.conj()), n * np.eye(n), 1e-15))

    basis = tensor_basis(1)
    gram = np.array([[np.vdot(s.mat, t.mat) for t in basis] for s in basis])
    add("spin-1 tau orthogonality (2j+1) delta", _close(gram, 3 * np.eye(9), 1e-12))
    add("tau^0_0 = identity", _close(basis[0].mat, np.eye(3), 0.0))

    r = 1 / np.sqrt(2)
    u_printed = np.array([[1, 0, 0, 0], [0, r, r, 0], [0, 0, 0, 1], [0, r, -r, 0]])
    add("two-qubit CG unitary matches display", _close(cg_unitary_two_qubits(), u_printed, 0.0))
    iso = dicke_isometry(2)
    add("|1m> in computational basis", _close(iso.V, u_printed[:3].T, 1e-15))

    eps11 = dilate_element(co.find("k=1,q=+1"), iso).mat
    add("epsilon^1_1 Pauli expansion (1/6)[II + ZI/2 + IZ/2 + XX/2 + YY/2]",
        _coeff_check(pauli_decompose(eps11).coeffs,
                     {"II": 1 / 6, "ZI": 1 / 12, "IZ": 1 / 12, "XX": 1 / 12, "YY": 1 / 12}))

    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(20):
        a, b, c, d = rng.normal(size=4)
        psi = np.array([a, b, c, d]) / np.linalg.norm([a, b, c, d])
        a, b, c, d = psi
        ref = np.sqrt(2) / np.sqrt(2 * a * a + b * b + c * c + 2 * b * c) * np.array([a, (b + c) / 2, (b + c) / 2, 0])
        worst = max(worst, float(np.max(np.abs(post_state_pure(psi, PovmElementLike(eps11)) - ref))))
    add("epsilon^1_1 psi normalized, general real psi", (worst < 1e-12, f"max error {worst:.2e}"))

    psi_f = post_state_pure(np.ones(4) / 2, PovmElementLike(eps11))
    add("separable (1,1,1,1)/2 -> (1,1,1,0)/sqrt3", _close(psi_f, np.array([1, 1, 1, 0]) / np.sqrt(3), 1e-12))
    rho_f = np.outer(psi_f, psi_f.conj())
    rho_printed = np.array([[1, 1, 1, 0], [1, 1, 1, 0], [1, 1, 1, 0], [0, 0, 0, 0]]) / 3
    add("rho^f matches printed matrix", _close(rho_f, rho_printed, 1e-12))
    pt_printed = np.array([[1, 1, 1, 1], [1, 1, 0, 0], [1, 0, 1, 0], [1, 0, 0, 0]]) / 3
    add("partial transpose matches printed matrix", _close(partial_transpose(rho_f, 2, 2), pt_printed, 1e-12))
    ppt = ppt_check(rho_f, 2, 2)
    add("partial-transpose eigenvalues (0.872678, 0.333333, 0.127322, -0.333333)",
        _close(ppt.eigenvalues, [0.872678, 0.333333, 0.127322, -0.333333], 1e-5))
    add("rho^f verdict: entangled", (ppt.entangled, f"min eigenvalue {ppt.min_eigenvalue:.6f}"))

    checks.extend(post_state_family_checks(rng, trials=20))
    checks.extend(rho_initial_checks())
    return checks


def _coeff_check(got: dict, want: dict, tol: float = 1e-12) -> tuple[bool, str]:
    keys = set(got) | set(want)
    err = max(abs(got.get(k, 0.0) - want.get(k, 0.0)) for k in keys)
    return err <= tol, f"max coefficient error {err:.2e}"


def post_state_family_checks(rng: np.random.Generator, trials: int = 20) -> list[Check]:
    """Compare E rho E / Tr(...) against the displayed spin-1 structural formulas."""
    povm = spherical_povm(1)
    worst = {name: 0.0 for name in ("10", "11", "1-1", "20", "22", "2-2")}
    for _ in range(trials):
        rho = random_density(3, rng)
        p = rho

        def norm(m):
            return m / np.trace(m)

        refs = {
            "10": norm(np.array([[p[0, 0], 0, p[0, 2]], [0, 0, 0], [p[2, 0], 0, p[2, 2]]])),
            "11": norm(np.array([[p[0, 0], p[0, 1], 0], [p[1, 0], p[1, 1], 0], [0, 0, 0]])),
            "1-1": norm(np.array([[0, 0, 0], [0, p[1, 1], p[1, 2]], [0, p[2, 1], p[2, 2]]])),
            "20": norm(np.array([[p[0, 0], 4 * p[0, 1], p[0, 2]],
                                 [4 * p[1, 0], 16 * p[1, 1], 4 * p[1, 2]],
                                 [p[2, 0], 4 * p[2, 1], p[2, 2]]])),
            "22": np.diag([1, 0, 0]),
            "2-2": np.diag([0, 0, 1]),
        }
        labels = {"10": "k=1,q=0", "11": "k=1,q=+1", "1-1": "k=1,q=-1",
                  "20": "k=2,q=0", "22": "k=2,q=+2", "2-2": "k=2,q=-2"}
        for key, lab in labels.items():
            got = post_state(rho, povm.find(lab))
            worst[key] = max(worst[key], float(np.max(np.abs(got - refs[key]))))
    return [
        Check(f"rho^f_{key} matches displayed formula ({trials} random states)", err < 1e-12, f"max error {err:.2e}")
        for key, err in worst.items()
    ]


def rho_initial_checks() -> list[Check]:
    """Entries of the spin-1 rho^i that the tensor basis reproduces as printed."""
    t = {(0, 0): 1.0, (1, 0): 0.11, (2, 0): 0.07, (2, 2): 0.05 + 0.02j, (2, -2): 0.05 - 0.02j}
    rho = fano_reconstruct(FanoParameters(1, t))
    r2, s3 = np.sqrt(2), np.sqrt(3)
    ok, detail = _close(
        [3 * rho[1, 1], 3 * rho[0, 2], 3 * rho[2, 0], 3 * (rho[0, 0] + rho[2, 2])],
        [1 - r2 * t[(2, 0)], s3 * t[(2, -2)], s3 * t[(2, 2)], 2 + r2 * t[(2, 0)]],
        1e-12,
    )
    return [Check("rho^i entries rho_22, rho_13, rho_31 and the t^2_0 terms", ok, detail)]


def random_suite(dims=(2, 3, 4), trials: int = 50, seed: int = 0) -> list[Check]:
    rng = np.random.default_rng(seed)
    checks = []
    for n in dims:
        worst_h = worst_c = 0.0
        worst_psd = np.inf
        for _ in range(trials):
            povm = povm_from_basis(basis_from_unitary(random_unitary(n * n, rng)))
            worst_c = max(worst_c, completeness_defect(povm))
            for el in povm:
                worst_h = max(worst_h, hermiticity_defect(el.mat))
                worst_psd = min(worst_psd, min_eigenvalue(el.mat))
        checks.append(Check(
            f"basis->POVM, N={n}, {trials} random unitary bases",
            worst_h < 1e-12 and worst_psd >= -1e-10 and worst_c < 1e-10,
            f"hermiticity {worst_h:.1e}, min eig {worst_psd:.1e}, completeness {worst_c:.1e}",
        ))
    for j in (Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2)):
        off = max(float(np.linalg.norm(e.mat - np.diag(np.diag(e.mat)))) for e in spherical_povm(j))
        checks.append(Check(f"spherical POVM diagonal, j={j}", off < 1e-14, f"off-diagonal {off:.1e}"))
    for n in (2, 3):
        iso = dicke_isometry(n)
        dil = dilate_set(spherical_povm(n / 2), iso)
        leak = 0.0
        comp = np.eye(1 << n) - iso.projector
        for _ in range(100):
            psi = random_pure(1 << n, rng)
            for el in dil:
                phi = el.mat @ psi
                if np.linalg.norm(phi) > 1e-8:
                    leak = max(leak, float(np.linalg.norm(comp @ phi)))
        checks.append(Check(f"dilated outcomes stay symmetric, N={n}", leak < 1e-12, f"max leak {leak:.1e}"))
    return checks


def run_suite(suite: str, dims=(2, 3, 4), trials: int = 50, seed: int = 0) -> list[Check]:
    if suite == "paper":
        return paper_suite()
    if suite == "random":
        return random_suite(dims, trials, seed)
    raise ValueError(f"unknown suite {suite!r}")
