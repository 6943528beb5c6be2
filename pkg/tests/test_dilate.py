from itertools import permutations

import numpy as np
import pytest

from symmpovm.dilate import (
    cg_unitary_two_qubits,
    dicke_isometry,
    dilate_element,
    dilate_matrix,
    dilate_set,
    dilate_with_cg_unitary,
    qubit_swap,
    symmetric_component,
    with_complement,
)
from symmpovm.matcore import ShapeError, min_eigenvalue
from symmpovm.povm import PovmElement, coalesce_degenerate, completeness_defect, spherical_povm
from tests.conftest import random_density, random_pure

R2 = 1 / np.sqrt(2)


def symmetrizer(n):
    """Average of all qubit permutation operators, built from basis relabelling."""
    dim = 1 << n
    total = np.zeros((dim, dim))
    perms = list(permutations(range(n)))
    for perm in perms:
        p = np.zeros((dim, dim))
        for r in range(dim):
            bits = [(r >> (n - 1 - k)) & 1 for k in range(n)]
            s = sum(bits[perm[k]] << (n - 1 - k) for k in range(n))
            p[s, r] = 1
        total += p
    return total / len(perms)


def test_two_qubit_columns():
    v = dicke_isometry(2).V
    assert np.allclose(v[:, 0], [1, 0, 0, 0])
    assert np.allclose(v[:, 1], [0, R2, R2, 0])
    assert np.allclose(v[:, 2], [0, 0, 0, 1])


def test_single_qubit_is_identity():
    assert np.array_equal(dicke_isometry(1).V, np.eye(2))
    with pytest.raises(ValueError):
        dicke_isometry(0)


def test_three_qubit_column_from_symmetrizer():
    up_up_down = np.zeros(8)
    up_up_down[0b001] = 1
    ref = symmetrizer(3) @ up_up_down
    ref /= np.linalg.norm(ref)
    assert np.allclose(dicke_isometry(3).V[:, 1], ref, atol=1e-15)
    assert np.isclose(ref[0b001], 1 / np.sqrt(3))


@pytest.mark.parametrize("n", range(1, 7))
def test_isometry(n):
    v = dicke_isometry(n).V
    assert np.allclose(v.conj().T @ v, np.eye(n + 1), atol=1e-12)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_projector_matches_symmetrizer(n):
    assert np.allclose(dicke_isometry(n).projector, symmetrizer(n), atol=1e-12)


def test_cg_unitary():
    u = cg_unitary_two_qubits()
    assert np.allclose(u @ u.conj().T, np.eye(4), atol=1e-15)
    assert np.allclose(u[:3], dicke_isometry(2).V.conj().T)
    assert np.allclose(u[3], [0, R2, -R2, 0])


def test_dilate_e11():
    e = coalesce_degenerate(spherical_povm(1)).find("k=1,q=+1")
    eps = dilate_element(e, dicke_isometry(2))
    expected = np.array([[1 / 3, 0, 0, 0], [0, 1 / 6, 1 / 6, 0], [0, 1 / 6, 1 / 6, 0], [0, 0, 0, 0]])
    assert np.allclose(eps.mat, expected, atol=1e-15)
    assert np.allclose(dilate_with_cg_unitary(e.mat), expected, atol=1e-15)


def test_dilate_simple_cases():
    iso = dicke_isometry(2)
    assert np.allclose(dilate_matrix(np.diag([1 / 3, 0, 0]), iso), np.diag([1 / 3, 0, 0, 0]))
    assert np.allclose(dilate_matrix(np.eye(3) / 3, iso), iso.projector / 3)
    with pytest.raises(ShapeError):
        dilate_element(PovmElement("x", np.eye(2)), iso)


def test_cg_route_agrees_for_every_element(rng):
    iso = dicke_isometry(2)
    for e in spherical_povm(1):
        assert np.allclose(dilate_with_cg_unitary(e.mat), dilate_matrix(e.mat, iso), atol=1e-15)
    m = random_density(3, rng)
    assert np.allclose(dilate_with_cg_unitary(m), dilate_matrix(m, iso), atol=1e-15)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_dilated_set_sums_to_symmetric_projector(n):
    iso = dicke_isometry(n)
    dil = dilate_set(spherical_povm(n / 2), iso)
    assert completeness_defect(dil, iso.projector) < 1e-12
    for e in dil:
        assert min_eigenvalue(e.mat) >= -1e-12
    assert completeness_defect(with_complement(dil, iso)) < 1e-12


def test_two_qubit_projector_value():
    dil = dilate_set(spherical_povm(1), dicke_isometry(2))
    ref = np.array([[1, 0, 0, 0], [0, 0.5, 0.5, 0], [0, 0.5, 0.5, 0], [0, 0, 0, 1]])
    assert np.allclose(dil.total(), ref)


def test_single_qubit_dilation_is_identity_map():
    p = spherical_povm("1/2")
    for e, d in zip(p, dilate_set(p, dicke_isometry(1))):
        assert np.array_equal(e.mat, d.mat)


def test_symmetric_component():
    iso = dicke_isometry(2)
    a, b, c, d = 0.1, 0.2 - 0.3j, 0.5, -0.4
    assert np.allclose(symmetric_component([a, b, c, d], iso), [a, (b + c) / 2, (b + c) / 2, d])
    sym = np.array([0.6, 0.4, 0.4, np.sqrt(1 - 0.36 - 0.32)])
    assert np.allclose(symmetric_component(sym, iso), sym)
    assert np.allclose(symmetric_component(np.array([0, 1, -1, 0]) * R2, iso), 0)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_permutation_invariance(n):
    iso = dicke_isometry(n)
    dil = dilate_set(spherical_povm(n / 2), iso)
    for a in range(n):
        for b in range(a + 1, n):
            s = qubit_swap(n, a, b)
            for e in dil:
                assert np.allclose(s @ e.mat @ s.T, e.mat, atol=1e-12)


@pytest.mark.parametrize("n", [2, 3])
def test_outcomes_land_in_symmetric_subspace(rng, n):
    iso = dicke_isometry(n)
    comp = np.eye(1 << n) - iso.projector
    dil = dilate_set(spherical_povm(n / 2), iso)
    for _ in range(100):
        psi = random_pure(1 << n, rng)
        for e in dil:
            phi = e.mat @ psi
            if np.linalg.norm(phi) > 1e-8:
                assert np.linalg.norm(comp @ phi) < 1e-12


@pytest.mark.parametrize("n", [2, 3])
def test_mixed_state_support(rng, n):
    iso = dicke_isometry(n)
    comp = np.eye(1 << n) - iso.projector
    rho = random_density(1 << n, rng)
    for e in dilate_set(spherical_povm(n / 2), iso):
        out = e.mat @ rho @ e.mat
        assert np.linalg.norm(comp @ out) < 1e-12


@pytest.mark.parametrize("n", [2, 3])
def test_probability_consistency(rng, n):
    iso = dicke_isometry(n)
    rho = random_density(n + 1, rng)
    big = iso.V @ rho @ iso.V.conj().T
    for e in spherical_povm(n / 2):
        d = dilate_element(e, iso)
        assert np.trace(d.mat @ big) == pytest.approx(np.trace(e.mat @ rho), abs=1e-12)
