import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nrqed_entangle.entanglement import (
    concurrence,
    entanglement_entropy,
    is_separable,
    reduced_density_matrix,
    schmidt_decompose,
    symmetric_discriminant,
)
from nrqed_entangle.spin_algebra import bell_state, symmetric_state

from conftest import random_qubit_unitary

S2 = 1 / np.sqrt(2)

finite = st.floats(-1.0, 1.0, allow_nan=False)
amplitudes = st.lists(st.tuples(finite, finite), min_size=4, max_size=4).map(
    lambda xs: np.array([a + 1j * b for a, b in xs])
).filter(lambda v: np.linalg.norm(v) > 1e-3)


def rdm_oracle(psi):
    """Schmidt coefficients by explicit partial trace, no SVD."""
    psi = np.asarray(psi) / np.linalg.norm(psi)
    rho = np.zeros((2, 2), dtype=complex)
    for a in range(2):
        for a2 in range(2):
            for b in range(2):
                rho[a, a2] += psi[2 * a + b] * np.conj(psi[2 * a2 + b])
    tr, det = np.trace(rho).real, np.linalg.det(rho).real
    disc = np.sqrt(max(tr * tr / 4 - det, 0.0))
    return np.sqrt(max(tr / 2 + disc, 0.0)), np.sqrt(max(tr / 2 - disc, 0.0))


def test_schmidt_examples():
    assert np.allclose(schmidt_decompose(bell_state("psi-")).coefficients, [S2, S2])
    assert np.allclose(schmidt_decompose([1, 0, 0, 0]).coefficients, [1, 0])
    assert np.allclose(schmidt_decompose([0.6, 0, 0, 0.8]).coefficients, [0.8, 0.6])
    assert np.allclose(rdm_oracle([0.6, 0, 0, 0.8]), [0.8, 0.6])


def test_schmidt_rejects_zero():
    with pytest.raises(ValueError):
        schmidt_decompose(np.zeros(4))
    with pytest.raises(ValueError):
        concurrence(np.zeros(4))


@settings(max_examples=200, deadline=None)
@given(amplitudes)
def test_schmidt_properties(psi):
    form = schmidt_decompose(psi)
    a1, a2 = form.coefficients
    assert a1 >= a2 >= 0
    assert a1**2 + a2**2 == pytest.approx(1.0, abs=1e-12)
    assert np.allclose(form.coefficients, rdm_oracle(psi), atol=1e-7)
    for basis in (form.basis_a, form.basis_b):
        assert np.allclose(basis @ basis.conj().T, np.eye(2), atol=1e-12)
    mag = np.abs(form.basis_a[0])
    big = form.basis_a[0][np.argmax(mag >= mag.max() - 1e-12)]
    assert abs(big.imag) <= 1e-14 and big.real > 0
    unit = psi / np.linalg.norm(psi)
    assert abs(np.vdot(form.reconstruct(), unit)) ** 2 >= 1 - 1e-12
    assert concurrence(psi) == pytest.approx(2 * a1 * a2, abs=1e-12)


def test_reconstruction_is_exact():
    psi = np.array([0.1 + 0.2j, -0.4, 0.3j, 0.5])
    psi = psi / np.linalg.norm(psi)
    assert np.allclose(schmidt_decompose(psi).reconstruct(), psi, atol=1e-14)


def test_concurrence_examples():
    for label in ("phi+", "phi-", "psi+", "psi-"):
        assert concurrence(bell_state(label)) == pytest.approx(1.0, abs=1e-15)
    assert concurrence([0, 1, 0, 0]) == 0.0
    assert concurrence(np.ones(4) / 2) == pytest.approx(0.0, abs=1e-16)


def test_concurrence_local_unitary_invariance(rng):
    for _ in range(200):
        psi = rng.normal(size=4) + 1j * rng.normal(size=4)
        psi /= np.linalg.norm(psi)
        u = np.kron(random_qubit_unitary(rng), random_qubit_unitary(rng))
        assert concurrence(u @ psi) == pytest.approx(concurrence(psi), abs=1e-12)


def test_symmetric_discriminant_matches_concurrence(rng):
    worst = 0.0
    for _ in range(1000):
        c, d, g = rng.normal(size=3) + 1j * rng.normal(size=3)
        chi = symmetric_state(c, d, g)
        worst = max(worst, abs(concurrence(chi) - 2 * abs(symmetric_discriminant(chi))))
    assert worst <= 1e-12


def test_symmetric_discriminant_rejects_asymmetric():
    with pytest.raises(ValueError):
        symmetric_discriminant([0, 1, 0, 0])


def test_is_separable():
    assert is_separable(symmetric_state(1, 1, 1))
    assert not is_separable(bell_state("psi+"))
    assert is_separable([0, 0, 0, 1])
    # product of two identical spinors (a, b): C = a^2, D = ab, G = b^2
    a, b = 0.3 + 0.4j, -0.2 + 0.1j
    assert is_separable(symmetric_state(a * a, a * b, b * b))


def test_reduced_state_and_entropy():
    assert np.allclose(reduced_density_matrix(bell_state("phi+")), np.eye(2) / 2)
    assert entanglement_entropy(bell_state("psi-")) == pytest.approx(1.0)
    assert entanglement_entropy([1, 0, 0, 0]) == pytest.approx(0.0)
