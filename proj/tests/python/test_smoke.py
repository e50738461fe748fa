"""Smoke tests for the python bindings."""

import math

import numpy as np
import pytest

import qfilab as q


SX = np.array([[0, 1], [1, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)


def biased_qubit(p=0.75):
    return q.DensityMatrix(np.diag([p, 1 - p]).astype(complex))


def test_density_matrix_roundtrip():
    rho = q.random_density_matrix(4, 2, seed=7)
    assert rho.dim == 4
    assert rho.rank == 2
    v = rho.eigenvectors
    lam = rho.eigenvalues
    assert np.allclose(v @ np.diag(lam) @ v.conj().T, rho.matrix, atol=1e-10)
    assert math.isclose(lam.sum(), 1.0, abs_tol=1e-12)


def test_gap_and_bounds():
    rho = biased_qubit()
    a = q.Observable(SX)
    report = q.gap(rho, a)
    assert math.isclose(report["variance"], 1.0, abs_tol=1e-12)
    assert math.isclose(report["qfi"], 1.0, abs_tol=1e-12)
    assert math.isclose(report["gap"], 0.75, abs_tol=1e-12)

    assert math.isclose(
        q.generalized_variance(rho, a, "harmonic"), 0.75, abs_tol=1e-12
    )
    check = q.bound_linear_entropy(rho, a)
    assert check.holds
    assert math.isclose(check.bound, 0.75, abs_tol=1e-12)

    value, sigmas = q.rank2_gap_identity(rho, a)
    assert math.isclose(value, 0.75, abs_tol=1e-12)
    assert sorted(sigmas) == pytest.approx([-1.0, 1.0])


def test_qfi_variants_reject_singular_states():
    pure = q.random_density_matrix(3, 1, seed=1)
    a = q.Observable(np.diag([1.0, 0.0, -1.0]).astype(complex))
    with pytest.raises(q.QfilabError):
        q.qfi_math(pure, a)


def test_averages_match_monte_carlo():
    rho = biased_qubit()
    for fn in (q.avg_variance, q.avg_qfi, q.avg_gap, q.avg_qfi_math, q.avg_qfi_kmb):
        report = fn(rho, samples=20000, seed=11)
        assert report.consistent()
    assert math.isclose(q.avg_gap(rho, samples=100, seed=1).analytic, 0.75)


def test_generator_basis():
    basis = q.GeneratorBasis(3)
    assert len(basis) == 8
    mats = basis.matrices()
    for i, a in enumerate(mats):
        for j, b in enumerate(mats):
            ip = np.trace(a @ b).real
            assert math.isclose(ip, 2.0 if i == j else 0.0, abs_tol=1e-12)


def test_entropies_and_landscape():
    point = q.entropies(np.array([0.75, 0.25]))
    assert math.isclose(point["h"], 1.75, abs_tol=1e-12)
    assert math.isclose(point["s_lin"], 0.375, abs_tol=1e-12)

    assert q.hessian_min_eig(5, 0.1) > 0
    align, residual = q.lagrange_stationarity(3, 0.2)
    assert math.isclose(align, 1.0, abs_tol=1e-6)
    assert residual < 1e-8

    curve = q.white_noise_curve(3, np.array([1.0 / 3.0]))
    assert math.isclose(curve[0]["avg_qfi_math"], 6.0, abs_tol=1e-10)


def test_relative_entropy_and_kmb():
    rho = biased_qubit()
    mixed = q.DensityMatrix(0.5 * np.eye(2, dtype=complex))
    expected = 0.5 * math.log(0.5 / 0.75) + 0.5 * math.log(0.5 / 0.25)
    assert math.isclose(q.relative_entropy(mixed, rho), expected, abs_tol=1e-12)

    fd, exact = q.kmb_second_derivative_check(rho, q.Observable(SZ), h=1e-3)
    assert math.isclose(exact, 16.0 / 3.0, abs_tol=1e-12)
    assert math.isclose(fd, exact, rel_tol=1e-4)


def test_decompositions():
    rho = q.random_density_matrix(3, 2, seed=5)
    probs, states = q.random_decomposition(rho, 4, seed=6)
    assert math.isclose(probs.sum(), 1.0, abs_tol=1e-12)
    mix = sum(p * np.outer(states[:, k], states[:, k].conj())
              for k, p in enumerate(probs))
    assert np.allclose(mix, rho.matrix, atol=1e-10)


def test_ghz():
    rho = q.noisy_ghz(4, 0.5)
    rel = q.ghz_purity_relation(rho, 4)
    assert rel["holds"]
    assert rel["obs2_saturated"]
    assert math.isclose(rel["lhs"], 0.25, abs_tol=1e-12)

    jz = q.collective_operator(4, "z")
    assert math.isclose(q.qfi(q.noisy_ghz(4, 0.0), jz), 16.0, abs_tol=1e-9)

    fid = q.fidelity_bound(q.noisy_ghz(3, 0.2), 3)
    assert fid["holds"]
    assert math.isclose(fid["fidelity"], 0.9, abs_tol=1e-12)
