"""Both kernel flavours must agree with each other and with LAPACK."""

import numpy as np
import pytest

from symmpovm import _kernels as K
from tests.conftest import rand_complex, rand_hermitian

pytestmark = pytest.mark.skipif(not K.HAS_NUMBA, reason="numba not installed")


@pytest.mark.parametrize("n", [2, 4, 7, 12])
def test_jacobi_flavours_agree(rng, n):
    h = rand_hermitian(rng, n)
    w1, v1, _ = K.jacobi_eigh_numba(h, 1e-14, 60)
    w2, v2, _ = K.jacobi_eigh_numpy(h, 1e-14, 60)
    ref = np.linalg.eigvalsh(h)
    assert np.allclose(np.sort(w1), ref, atol=1e-12)
    assert np.allclose(np.sort(w2), ref, atol=1e-12)
    for w, v in ((w1, v1), (w2, v2)):
        assert np.linalg.norm(v @ np.diag(w) @ v.conj().T - h) < 1e-11


def test_jacobi_diagonal_input_needs_no_sweep():
    w, v, sweeps = K.jacobi_eigh_numba(np.diag([1.0, 2.0, 3.0]).astype(complex), 1e-12, 10)
    assert sweeps == 0
    assert np.array_equal(v, np.eye(3))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_pauli_flavours_agree(rng, n):
    m = rand_complex(rng, 2**n, 2**n)
    c1 = K.pauli_coefficients_numba(m, n)
    c2 = K.pauli_coefficients_numpy(m, n)
    assert np.allclose(c1, c2, atol=1e-14)
    assert np.allclose(K.pauli_matrix_numba(c1, n), K.pauli_matrix_numpy(c1, n), atol=1e-14)


def test_pauli_coefficients_against_kron_oracle(rng):
    paulis = [np.eye(2), np.array([[0, 1], [1, 0]]), np.array([[0, -1j], [1j, 0]]), np.diag([1, -1])]
    m = rand_complex(rng, 4, 4)
    c = K.pauli_coefficients(m, 2)
    for a in range(4):
        for b in range(4):
            p = np.kron(paulis[a], paulis[b])
            assert c[4 * a + b] == pytest.approx(np.trace(p @ m) / 4, abs=1e-14)


@pytest.mark.parametrize("backend,expected", [("numpy", "jacobi_eigh_numpy"), ("numba", "jacobi_eigh_numba")])
def test_backend_flag_selects_kernels(backend, expected):
    import os
    import subprocess
    import sys

    env = dict(os.environ, POVM_BACKEND=backend)
    out = subprocess.run(
        [sys.executable, "-c", "from symmpovm import _kernels as K; print(K.jacobi_eigh.__name__)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == expected
