"""Hot numeric kernels, each in a numba and a pure-numpy flavour.

The public names at the bottom of the module (``jacobi_eigh``,
``pauli_coefficients``, ``pauli_matrix``) point at whichever flavour
``config.BACKEND`` selects. Numba is optional: if it cannot be imported the
numpy path is used regardless of the flag. Both flavours are always importable
under ``*_numba`` / ``*_numpy`` so they can be benchmarked and cross-checked.
"""

from __future__ import annotations

import math

import numpy as np

from . import config

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAS_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


# ---------------------------------------------------------------------------
# Cyclic complex Jacobi for Hermitian matrices
# ---------------------------------------------------------------------------
#
# Each pivot (p, q) is annihilated by J = diag(1, e^{-i phi}) @ R, where phi is
# the phase of a[p, q] and R the real Jacobi rotation [[c, s], [-s, c]].
# A <- J^H A J and V <- V J.


def _rotation(app: float, aqq: float, apq: complex):
    mag = abs(apq)
    phase = apq / mag
    theta = (aqq - app) / (2.0 * mag)
    if theta >= 0.0:
        t = 1.0 / (theta + math.sqrt(theta * theta + 1.0))
    else:
        t = -1.0 / (-theta + math.sqrt(theta * theta + 1.0))
    c = 1.0 / math.sqrt(t * t + 1.0)
    return c, t * c, phase


_rotation_jit = njit(cache=True)(_rotation)


@njit(cache=True)
def jacobi_eigh_numba(h, tol, max_sweeps):
    n = h.shape[0]
    a = h.copy()
    v = np.eye(n, dtype=np.complex128)
    norm = math.sqrt(np.sum(np.abs(a) ** 2))
    threshold = tol * norm
    sweeps = 0
    for sweeps in range(max_sweeps + 1):
        off = 0.0
        for p in range(n):
            for q in range(n):
                if p != q:
                    off += abs(a[p, q]) ** 2
        if math.sqrt(off) <= threshold or sweeps == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) == 0.0:
                    continue
                c, s, ph = _rotation_jit(a[p, p].real, a[q, q].real, apq)
                cph = ph.conjugate()
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * cph * akq
                    a[k, q] = s * akp + c * cph * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * ph * aqk
                    a[q, k] = s * apk + c * ph * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * cph * vkq
                    v[k, q] = s * vkp + c * cph * vkq
    w = np.empty(n)
    for i in range(n):
        w[i] = a[i, i].real
    return w, v, sweeps


def jacobi_eigh_numpy(h, tol, max_sweeps):
    n = h.shape[0]
    a = np.array(h, dtype=np.complex128, copy=True)
    v = np.eye(n, dtype=np.complex128)
    threshold = tol * np.linalg.norm(a)
    upper = np.triu_indices(n, 1)
    sweeps = 0
    for sweeps in range(max_sweeps + 1):
        off = math.sqrt(2.0 * float(np.sum(np.abs(a[upper]) ** 2)))
        if off <= threshold or sweeps == max_sweeps:
            break
        for p, q in zip(*upper):
            apq = a[p, q]
            if apq == 0:
                continue
            c, s, ph = _rotation(a[p, p].real, a[q, q].real, apq)
            j = np.array([[c, s], [-s * np.conj(ph), c * np.conj(ph)]])
            cols = [p, q]
            a[:, cols] = a[:, cols] @ j
            a[cols, :] = j.conj().T @ a[cols, :]
            a[p, q] = a[q, p] = 0.0
            v[:, cols] = v[:, cols] @ j
    return np.real(np.diag(a)).copy(), v, sweeps


# ---------------------------------------------------------------------------
# Pauli strings
# ---------------------------------------------------------------------------
#
# String index s encodes one base-4 digit per qubit (I=0, X=1, Y=2, Z=3), most
# significant digit = first qubit. P[r, r ^ x] = (-i)^{#Y} (-1)^{popcount(r & z)}
# with x the X/Y bit mask and z the Z/Y bit mask.


@njit(cache=True)
def _masks(s, n):
    x = 0
    z = 0
    ny = 0
    for k in range(n):
        digit = (s >> (2 * (n - 1 - k))) & 3
        bit = 1 << (n - 1 - k)
        if digit == 1 or digit == 2:
            x |= bit
        if digit == 2 or digit == 3:
            z |= bit
        if digit == 2:
            ny += 1
    return x, z, ny


@njit(cache=True)
def _parity(v):
    p = 0
    while v:
        p ^= v & 1
        v >>= 1
    return p


_NEG_I_POW = np.array([1.0 + 0j, -1j, -1.0 + 0j, 1j])


@njit(cache=True)
def pauli_coefficients_numba(m, n):
    dim = 1 << n
    out = np.zeros(1 << (2 * n), dtype=np.complex128)
    powers = np.array([1.0 + 0j, -1j, -1.0 + 0j, 1j])
    for s in range(out.shape[0]):
        x, z, ny = _masks(s, n)
        acc = 0j
        for r in range(dim):
            sign = -1.0 if _parity(r & z) else 1.0
            acc += sign * m[r ^ x, r]
        out[s] = acc * powers[ny % 4] / dim
    return out


@njit(cache=True)
def pauli_matrix_numba(coeffs, n):
    dim = 1 << n
    out = np.zeros((dim, dim), dtype=np.complex128)
    powers = np.array([1.0 + 0j, -1j, -1.0 + 0j, 1j])
    for s in range(coeffs.shape[0]):
        c = coeffs[s]
        if c == 0:
            continue
        x, z, ny = _masks(s, n)
        for r in range(dim):
            sign = -1.0 if _parity(r & z) else 1.0
            out[r, r ^ x] += c * sign * powers[ny % 4]
    return out


def _masks_numpy(n):
    s = np.arange(4**n)
    shifts = 2 * (n - 1 - np.arange(n))
    digits = (s[:, None] >> shifts[None, :]) & 3
    weights = 1 << (n - 1 - np.arange(n))
    x = ((digits == 1) | (digits == 2)) @ weights
    z = ((digits == 2) | (digits == 3)) @ weights
    ny = np.sum(digits == 2, axis=1)
    return x, z, ny


def _popcount_parity(v):
    v = np.asarray(v, dtype=np.int64)
    p = np.zeros_like(v)
    while np.any(v):
        p ^= v & 1
        v = v >> 1
    return p


def pauli_coefficients_numpy(m, n):
    dim = 1 << n
    x, z, ny = _masks_numpy(n)
    r = np.arange(dim)
    signs = 1.0 - 2.0 * _popcount_parity(r[None, :] & z[:, None])
    cols = r[None, :] ^ x[:, None]
    traces = np.sum(signs * np.asarray(m)[cols, r[None, :]], axis=1)
    return traces * _NEG_I_POW[ny % 4] / dim


def pauli_matrix_numpy(coeffs, n):
    dim = 1 << n
    x, z, ny = _masks_numpy(n)
    r = np.arange(dim)
    signs = 1.0 - 2.0 * _popcount_parity(r[None, :] & z[:, None])
    vals = np.asarray(coeffs)[:, None] * signs * _NEG_I_POW[ny % 4][:, None]
    out = np.zeros((dim, dim), dtype=np.complex128)
    np.add.at(out, (np.broadcast_to(r, vals.shape), r[None, :] ^ x[:, None]), vals)
    return out


USE_NUMBA = HAS_NUMBA and config.BACKEND == "numba"

if USE_NUMBA:
    jacobi_eigh = jacobi_eigh_numba
    pauli_coefficients = pauli_coefficients_numba
    pauli_matrix = pauli_matrix_numba
else:
    jacobi_eigh = jacobi_eigh_numpy
    pauli_coefficients = pauli_coefficients_numpy
    pauli_matrix = pauli_matrix_numpy
