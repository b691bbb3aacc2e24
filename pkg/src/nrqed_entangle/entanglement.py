"""Schmidt decomposition and concurrence of pure two-qubit spin states."""

from dataclasses import dataclass

import numpy as np

from .constants import SEPARABILITY_TOL
from .spin_algebra import as_amplitudes


@dataclass(frozen=True)
class SchmidtForm:
    """``|chi> = a1 |eta_1>|xi_1> + a2 |eta_2>|xi_2>`` with ``a1 >= a2 >= 0``.

    ``basis_a[k]`` and ``basis_b[k]`` are the single-qubit vectors paired
    with ``coefficients[k]``.
    """

    coefficients: np.ndarray
    basis_a: np.ndarray
    basis_b: np.ndarray

    def reconstruct(self):
        return sum(
            a * np.kron(eta, xi)
            for a, eta, xi in zip(self.coefficients, self.basis_a, self.basis_b)
        )

    @property
    def rank(self):
        return int(np.count_nonzero(self.coefficients > SEPARABILITY_TOL))


def _coefficient_matrix(chi):
    psi = as_amplitudes(chi)
    norm = np.linalg.norm(psi)
    if norm == 0.0:
        raise ValueError("zero-norm spin state")
    return (psi / norm).reshape(2, 2)


def _leading_index(v, tol=1e-12):
    """First component whose magnitude ties the maximum (robust to roundoff)."""
    mag = np.abs(v)
    return int(np.argmax(mag >= mag.max() - tol))


def schmidt_decompose(chi):
    """Schmidt form of a two-qubit pure state via the SVD of ``C[n, m]``.

    The input is normalized first. The phase of each ``basis_a[k]`` is
    fixed so that its largest-magnitude component (first one on ties) is
    real and positive,
    with the compensating phase moved into ``basis_b[k]``.
    """
    u, s, vh = np.linalg.svd(_coefficient_matrix(chi))
    basis_a = u.T.copy()
    basis_b = vh.copy()
    for k in range(2):
        big = basis_a[k][_leading_index(basis_a[k])]
        phase = big / abs(big)
        basis_a[k] = basis_a[k] / phase
        basis_b[k] = basis_b[k] * phase
    return SchmidtForm(coefficients=s, basis_a=basis_a, basis_b=basis_b)


def concurrence(chi):
    """Pure-state concurrence ``2 |det C|``; 0 for products, 1 for Bell states."""
    c = _coefficient_matrix(chi)
    value = 2.0 * abs(c[0, 0] * c[1, 1] - c[0, 1] * c[1, 0])
    return min(float(value), 1.0)


def is_separable(chi, tol=SEPARABILITY_TOL):
    return concurrence(chi) <= tol


def symmetric_discriminant(chi):
    """``D^2 - C G`` of a normalized exchange-symmetric state (C, D, D, G).

    Vanishes exactly when the state is a product.
    """
    psi = as_amplitudes(chi)
    psi = psi / np.linalg.norm(psi)
    if abs(psi[1] - psi[2]) > 1e-10:
        raise ValueError("state is not exchange-symmetric")
    c, d, g = psi[0], 0.5 * (psi[1] + psi[2]), psi[3]
    return complex(d * d - c * g)


def reduced_density_matrix(chi):
    """Partial trace over electron 2."""
    c = _coefficient_matrix(chi)
    return c @ c.conj().T


def entanglement_entropy(chi):
    """Von Neumann entropy (bits) of either reduced state."""
    s = schmidt_decompose(chi).coefficients ** 2
    s = s[s > 0]
    return float(-np.sum(s * np.log2(s)))
