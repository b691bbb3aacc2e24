"""Two-qubit spin algebra in the ordered basis (uu, ud, du, dd).

Operators are plain complex ``(4, 4)`` arrays. Pauli matrices carry
eigenvalues +/-1, so ``sigma = 2 s``.
"""

from dataclasses import dataclass

import numpy as np

from .constants import EXCHANGE_TOL

SIGMA = np.array(
    [
        [[0.0, 1.0], [1.0, 0.0]],
        [[0.0, -1.0j], [1.0j, 0.0]],
        [[1.0, 0.0], [0.0, -1.0]],
    ],
    dtype=complex,
)
I2 = np.eye(2, dtype=complex)
I4 = np.eye(4, dtype=complex)

_AXES = {"x": 0, "y": 1, "z": 2}

BASIS_LABELS = ("uu", "ud", "du", "dd")

_S2 = 1.0 / np.sqrt(2.0)
_BELL = {
    "phi+": np.array([_S2, 0, 0, _S2], dtype=complex),
    "phi-": np.array([_S2, 0, 0, -_S2], dtype=complex),
    "psi+": np.array([0, _S2, _S2, 0], dtype=complex),
    "psi-": np.array([0, _S2, -_S2, 0], dtype=complex),
}
_BELL_ALIASES = {"Φ+": "phi+", "Φ-": "phi-", "Φ−": "phi-", "Ψ+": "psi+", "Ψ-": "psi-", "Ψ−": "psi-"}


def _bell_key(which):
    key = _BELL_ALIASES.get(which, which)
    key = key.lower()
    if key not in _BELL:
        raise ValueError(f"unknown Bell state {which!r}; use one of {sorted(_BELL)}")
    return key


def exchange_class(amplitudes, tol=EXCHANGE_TOL):
    """Return ``'S'``, ``'A'`` or ``'mixed'`` for a 4-component spin vector."""
    psi = np.asarray(amplitudes, dtype=complex)
    norm = np.linalg.norm(psi)
    if norm == 0.0:
        raise ValueError("zero spin vector has no exchange class")
    swapped = psi[[0, 2, 1, 3]]
    if np.linalg.norm(swapped - psi) <= tol * norm:
        return "S"
    if np.linalg.norm(swapped + psi) <= tol * norm:
        return "A"
    return "mixed"


@dataclass(frozen=True)
class SpinState:
    """Pure two-electron spin state.

    Parameters
    ----------
    amplitudes : array_like of complex, shape (4,)
        Components along (uu, ud, du, dd).
    normalize : bool
        Rescale to unit norm on construction.
    """

    amplitudes: np.ndarray
    normalized: bool = False

    def __init__(self, amplitudes, normalize=True):
        psi = np.array(amplitudes, dtype=complex).reshape(-1)
        if psi.shape != (4,):
            raise ValueError(f"expected 4 amplitudes, got shape {psi.shape}")
        norm = np.linalg.norm(psi)
        if norm == 0.0:
            raise ValueError("zero-norm spin state")
        if normalize:
            psi = psi / norm
        psi.setflags(write=False)
        object.__setattr__(self, "amplitudes", psi)
        object.__setattr__(self, "normalized", bool(abs(np.linalg.norm(psi) - 1.0) <= 1e-12))

    @property
    def exchange_class(self):
        return exchange_class(self.amplitudes)

    @property
    def coefficient_matrix(self):
        """The 2x2 matrix ``C[n, m]`` with ``|chi> = sum C_nm |n>_1 |m>_2``."""
        return self.amplitudes.reshape(2, 2)

    def apply(self, op, normalize=True):
        return SpinState(np.asarray(op) @ self.amplitudes, normalize=normalize)

    def overlap(self, other):
        """<self|other>."""
        return complex(np.vdot(self.amplitudes, as_amplitudes(other)))

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.amplitudes, dtype=dtype)

    def __eq__(self, other):
        if not isinstance(other, SpinState):
            return NotImplemented
        return np.array_equal(self.amplitudes, other.amplitudes)

    def __hash__(self):
        return hash(self.amplitudes.tobytes())


def as_amplitudes(state):
    """Return the amplitude array of a SpinState or array-like."""
    if isinstance(state, SpinState):
        return state.amplitudes
    psi = np.asarray(state, dtype=complex).reshape(-1)
    if psi.shape != (4,):
        raise ValueError(f"expected 4 amplitudes, got shape {psi.shape}")
    return psi


def pauli(particle, axis):
    """Pauli matrix ``axis`` acting on electron ``particle`` (1 or 2)."""
    if axis not in _AXES:
        raise ValueError(f"axis must be one of 'x', 'y', 'z', got {axis!r}")
    s = SIGMA[_AXES[axis]]
    if particle == 1:
        return np.kron(s, I2)
    if particle == 2:
        return np.kron(I2, s)
    raise ValueError(f"particle must be 1 or 2, got {particle!r}")


# sigma_1 and sigma_2 as (3, 4, 4) stacks
SIGMA1 = np.array([np.kron(s, I2) for s in SIGMA])
SIGMA2 = np.array([np.kron(I2, s) for s in SIGMA])

SIGMA_DOT = np.einsum("kab,kbc->ac", SIGMA1, SIGMA2)


def total_spin():
    """Components of S = (sigma_1 + sigma_2) / 2, shape (3, 4, 4)."""
    return 0.5 * (SIGMA1 + SIGMA2)


def swap_operator():
    """Spin exchange operator P12 = (1 + sigma_1 . sigma_2) / 2."""
    p = np.zeros((4, 4), dtype=complex)
    p[0, 0] = p[3, 3] = 1.0
    p[1, 2] = p[2, 1] = 1.0
    return p


P12 = swap_operator()

# projectors onto the antisymmetric (singlet) and symmetric (triplet) sectors
SINGLET_PROJECTOR = 0.5 * (I4 - P12)
TRIPLET_PROJECTOR = 0.5 * (I4 + P12)


def bell_state(which):
    """One of ``'phi+', 'phi-', 'psi+', 'psi-'`` (Greek aliases accepted)."""
    return SpinState(_BELL[_bell_key(which)])


def symmetric_state(c, d, g, normalize=True):
    """Exchange-symmetric state ``C|uu> + D(|ud> + |du>) + G|dd>``."""
    return SpinState([c, d, d, g], normalize=normalize)


# columns: singlet first, then the triplet Bell states
SECTOR_BASIS = np.column_stack(
    [_BELL["psi-"], _BELL["psi+"], _BELL["phi+"], _BELL["phi-"]]
)


def sector_blocks(op):
    """Rotate ``op`` into (psi-; psi+, phi+, phi-) and split it into blocks.

    Returns
    -------
    dict
        ``'ss'`` (1x1), ``'tt'`` (3x3), ``'st'`` (1x3), ``'ts'`` (3x1).
    """
    m = SECTOR_BASIS.conj().T @ np.asarray(op) @ SECTOR_BASIS
    return {"ss": m[:1, :1], "st": m[:1, 1:], "ts": m[1:, :1], "tt": m[1:, 1:]}


def off_block_norm(op):
    """Frobenius norm of the singlet-triplet coupling of ``op``."""
    b = sector_blocks(op)
    return float(np.hypot(np.linalg.norm(b["st"]), np.linalg.norm(b["ts"])))


def sigma_dot_vector(sigma, n):
    """Contract a (3, 4, 4) sigma stack with a 3-vector."""
    return np.einsum("k,kab->ab", np.asarray(n, dtype=complex), sigma)


def projected_spin_dot(n):
    """The tensor operator ``(sigma_1 . n)(sigma_2 . n)`` for a unit vector n."""
    n = np.asarray(n, dtype=float)
    if n.shape != (3,):
        raise ValueError("n must be a 3-vector")
    if abs(np.linalg.norm(n) - 1.0) > 1e-12:
        raise ValueError(f"n must be a unit vector, |n| = {np.linalg.norm(n)!r}")
    return sigma_dot_vector(SIGMA1, n) @ sigma_dot_vector(SIGMA2, n)


def is_hermitian(op, tol=1e-14):
    op = np.asarray(op)
    return bool(np.max(np.abs(op - op.conj().T), initial=0.0) <= tol)


def commutator(a, b):
    return a @ b - b @ a
