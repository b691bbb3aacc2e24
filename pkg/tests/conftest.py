import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_unit(rng):
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


def random_symmetric(rng):
    c, d, g = rng.normal(size=3) + 1j * rng.normal(size=3)
    psi = np.array([c, d, d, g])
    return psi / np.linalg.norm(psi)


def random_qubit_unitary(rng):
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


ALPHA_PHYS = 7.2973525693e-3
_PAULI = [np.array([[0, 1], [1, 0]], dtype=complex),
          np.array([[0, -1j], [1j, 0]]),
          np.array([[1, 0], [0, -1]], dtype=complex)]
_ID2 = np.eye(2)


def brute_kernel(q, p1, p2, alpha=ALPHA_PHYS):
    """Total interaction kernel assembled term by term from Kronecker products."""
    q, p1, p2 = (np.asarray(v, dtype=float) for v in (q, p1, p2))
    s1 = [np.kron(s, _ID2) for s in _PAULI]
    s2 = [np.kron(_ID2, s) for s in _PAULI]
    qq = q @ q
    qh = q / np.sqrt(qq)

    def transverse(u, v):
        return u @ v - (u @ qh) * (v @ qh)

    ret = -0.5 * alpha**2 * 4 * np.pi / qq * (transverse(p1, p2) + transverse(p1 - q, p2 + q))
    scalar = 4 * np.pi / qq - np.pi * alpha**2 / 4 + ret
    op = scalar * np.eye(4, dtype=complex)
    axial = np.cross(q, p1 - p2)
    for i in range(3):
        op += -1j * np.pi * alpha**2 / qq * axial[i] * (s1[i] + s2[i])
    dot = sum(a @ b for a, b in zip(s1, s2))
    n1 = sum(qh[i] * s1[i] for i in range(3))
    n2 = sum(qh[i] * s2[i] for i in range(3))
    op += 2 * np.pi * alpha**2 / 3 * dot
    op += np.pi * alpha**2 * (n1 @ n2 - dot / 3)
    return op


def brute_amplitude(k, theta, phi, alpha=ALPHA_PHYS):
    """Centre-of-mass first-Born spin operator, direct minus swapped."""
    p_in = np.array([k, 0.0, 0.0])
    p_out = k * np.array([np.cos(theta), np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi)])
    swap = np.eye(4)[[0, 2, 1, 3]]
    direct = brute_kernel(p_in - p_out, p_in, -p_in, alpha)
    exchange = brute_kernel(p_in + p_out, p_in, -p_in, alpha)
    return direct - exchange @ swap


def pure_concurrence(psi):
    psi = psi / np.linalg.norm(psi)
    return 2 * abs(psi[0] * psi[3] - psi[1] * psi[2])


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
