"""Photon-phonon normal modes: energies, mixing factors, unitary."""

import numpy as np
import pytest

from darktrio import (
    DegenerateTwoMode,
    ModelParams,
    mode_mixing,
    two_mode_spectrum,
)
from darktrio.twomode import rwa_block_matrix

from _generators import valid_params


def test_resonant_split_and_equal_mixing():
    p = ModelParams(1.0, 1.0, 1.0, 0.0, 0.0, 0.1)
    two = two_mode_spectrum(p)
    np.testing.assert_allclose(two.eps, (0.9, 1.1), rtol=0, atol=1e-15)
    np.testing.assert_allclose(two.m, (2.0**-0.5,) * 2, rtol=0, atol=1e-15)


def test_detuned_example_against_dense_solver():
    # frozen from a 50-digit evaluation; closed form (3 -+ sqrt(2))/2
    p = ModelParams(1.0, 1.0, 2.0, 0.0, 0.0, 0.5)
    two = two_mode_spectrum(p)
    np.testing.assert_allclose(
        two.eps, (0.7928932188134525, 2.2071067811865475), rtol=0, atol=1e-14
    )
    np.testing.assert_allclose(
        two.m, (0.9238795325112868, 0.3826834323650898), rtol=0, atol=1e-14
    )
    assert two.m[0] ** 2 + two.m[1] ** 2 == pytest.approx(1.0, abs=1e-14)
    np.testing.assert_allclose(
        np.linalg.eigvalsh(rwa_block_matrix(p)), two.eps, rtol=0, atol=1e-14
    )


def test_effective_couplings_resonant_closed_form():
    # frozen: (lam -+ xi) / sqrt(2) for the resonant real case
    p = ModelParams(1.0, 1.0, 1.0, 0.2, 0.05, 0.1)
    two = two_mode_spectrum(p)
    np.testing.assert_allclose(
        two.gamma, (0.10606601717798214, 0.17677669529663687), rtol=0, atol=1e-14
    )


def test_mode_mixing_resonant_photon_row():
    p = ModelParams(1.0, 1.0, 1.0, 0.1, 0.1, 0.3)
    table = mode_mixing(two_mode_spectrum(p))
    np.testing.assert_allclose(
        table.bare_from_quasi[0], (2.0**-0.5, 2.0**-0.5), rtol=0, atol=1e-14
    )


def test_mode_mixing_round_trip_identity():
    rng = np.random.default_rng(21)
    for _ in range(20):
        p = valid_params(rng)
        table = mode_mixing(two_mode_spectrum(p))
        product = table.bare_from_quasi @ table.quasi_from_bare
        assert np.max(np.abs(product - np.eye(2))) < 1e-14


def test_pole_ratio_identity_per_mode():
    rng = np.random.default_rng(22)
    for _ in range(20):
        p = valid_params(rng)
        two = two_mode_spectrum(p)
        for j in range(2):
            left = (two.eps[j] - p.omega_b) / np.conj(p.kappa)
            right = p.kappa / (two.eps[j] - p.omega_c)
            assert abs(left - right) <= 1e-12 * abs(right)


def test_cross_product_identity():
    rng = np.random.default_rng(23)
    for _ in range(50):
        p = valid_params(rng)
        two = two_mode_spectrum(p)
        ksq = abs(p.kappa) ** 2
        for w in (p.omega_b, p.omega_c):
            product = (two.eps[0] - w) * (two.eps[1] - w)
            assert abs(product + ksq) <= 1e-12 * ksq


def test_trace_and_determinant_identities():
    rng = np.random.default_rng(24)
    for _ in range(50):
        p = valid_params(rng)
        two = two_mode_spectrum(p)
        trace = p.omega_b + p.omega_c
        det = p.omega_b * p.omega_c - abs(p.kappa) ** 2
        assert abs(two.eps[0] + two.eps[1] - trace) <= 1e-12 * abs(trace)
        assert abs(two.eps[0] * two.eps[1] - det) <= 1e-12 * max(abs(det), 1e-6)


def test_positive_lower_energy_under_first_assumption():
    rng = np.random.default_rng(25)
    for _ in range(50):
        p = valid_params(rng)
        two = two_mode_spectrum(p)
        assert two.eps[0] > 0.0
        assert two.eps[0] < two.eps[1]


def test_unitarity_and_diagonalization():
    rng = np.random.default_rng(26)
    for _ in range(50):
        p = valid_params(rng)
        two = two_mode_spectrum(p)
        block = rwa_block_matrix(p)
        assert np.max(np.abs(two.u.conj().T @ two.u - np.eye(2))) < 1e-14
        diag = two.u.conj().T @ block @ two.u
        assert np.max(np.abs(diag - np.diag(two.eps))) < 1e-12 * np.linalg.norm(block)


def test_mixing_factors_are_normalized_everywhere():
    rng = np.random.default_rng(27)
    for _ in range(50):
        p = valid_params(rng)
        two = two_mode_spectrum(p)
        assert abs(two.m[0] ** 2 + two.m[1] ** 2 - 1.0) < 1e-14
        assert 0.0 < two.m[0] < 1.0
        assert 0.0 < two.m[1] < 1.0


def test_degenerate_block_raises():
    with pytest.raises(DegenerateTwoMode):
        two_mode_spectrum(ModelParams(1.0, 1.0, 1.0, 0.1, 0.1, 0.0))
    with pytest.raises(DegenerateTwoMode):
        two_mode_spectrum(ModelParams(1.0, 1.0, 1.0 + 1e-14, 0.1, 0.1, 1e-14))


def test_decoupled_block_orders_bare_modes():
    p = ModelParams(1.0, 1.0, 2.0, 0.2, 0.05, 0.0)
    two = two_mode_spectrum(p)
    assert two.eps == (1.0, 2.0)
    assert two.m == (1.0, 0.0)
    assert two.gamma == (0.2 + 0j, 0.05 + 0j)
    np.testing.assert_array_equal(two.u, np.eye(2))

    flipped = ModelParams(1.0, 2.0, 1.0, 0.2, 0.05, 0.0)
    two = two_mode_spectrum(flipped)
    assert two.eps == (1.0, 2.0)
    assert two.gamma == (0.05 + 0j, 0.2 + 0j)
    np.testing.assert_array_equal(two.u, np.array([[0.0, 1.0], [1.0, 0.0]]))


def test_strong_detuning_remains_accurate():
    # tiny coupling on a large detuning: the small shift comes from the
    # product identity, not from a cancellation
    p = ModelParams(1.0, 1.0, 100.0, 0.0, 0.0, 1e-3)
    two = two_mode_spectrum(p)
    block = rwa_block_matrix(p)
    np.testing.assert_allclose(np.linalg.eigvalsh(block), two.eps, rtol=1e-13)
    assert np.max(np.abs(two.u.conj().T @ two.u - np.eye(2))) < 1e-14
