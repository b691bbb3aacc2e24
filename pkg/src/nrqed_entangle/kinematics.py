"""Two-electron plane-wave states and elastic scattering kinematics."""

from dataclasses import dataclass, field

import numpy as np

from .constants import Q_MIN
from .entanglement import concurrence
from .spin_algebra import SpinState, bell_state, symmetric_state

# (2 pi)^{-3/2} of each momentum-normalized plane wave; Born amplitudes
# are reported with this factor (and the energy delta) stripped off
PLANE_WAVE_NORM = (2.0 * np.pi) ** -1.5


class InvariantViolation(ValueError):
    """A two-electron state that is not totally antisymmetric."""


class ForwardSingularity(ValueError):
    """Momentum transfer inside the Coulomb exclusion zone."""


def _vec(p):
    v = np.asarray(p, dtype=float).reshape(-1)
    if v.shape != (3,):
        raise ValueError(f"momentum must be a 3-vector, got shape {v.shape}")
    return v


@dataclass(frozen=True)
class Kinematics:
    p1_in: np.ndarray
    p2_in: np.ndarray
    p1_out: np.ndarray
    p2_out: np.ndarray
    q: np.ndarray = field(repr=False)
    q_ex: np.ndarray = field(repr=False)
    energies: tuple = field(repr=False)
    elastic: bool = True

    @property
    def forward_singular(self):
        return bool(np.linalg.norm(self.q) < Q_MIN or np.linalg.norm(self.q_ex) < Q_MIN)

    @property
    def total_momentum(self):
        return self.p1_in + self.p2_in

    def exchanged(self):
        """Same process with the outgoing labels swapped (q <-> q_ex)."""
        return make_kinematics(self.p1_in, self.p2_in, self.p2_out, self.p1_out)

    def require_regular(self):
        if self.forward_singular:
            raise ForwardSingularity(
                f"|q| = {np.linalg.norm(self.q):.3g}, |q_ex| = {np.linalg.norm(self.q_ex):.3g}"
                f" (exclusion zone {Q_MIN:g} a.u.)"
            )


def make_kinematics(p1_in, p2_in, p1_out, p2_out, energy_tol=1e-10):
    """Validate momentum conservation and derive transfers and energies.

    ``q = p1_in - p1_out`` is the direct transfer and
    ``q_ex = p1_in - p2_out`` the exchange transfer.
    """
    p1_in, p2_in, p1_out, p2_out = map(_vec, (p1_in, p2_in, p1_out, p2_out))
    scale = max(1.0, *(np.linalg.norm(p) for p in (p1_in, p2_in, p1_out, p2_out)))
    if np.linalg.norm(p1_in + p2_in - p1_out - p2_out) > 1e-12 * scale:
        raise ValueError("total momentum not conserved")
    energies = tuple(0.5 * float(p @ p) for p in (p1_in, p2_in, p1_out, p2_out))
    ea, eb, ec, ed = energies
    elastic = abs(ea + eb - ec - ed) <= energy_tol * max(1.0, ea + eb)
    return Kinematics(
        p1_in=p1_in,
        p2_in=p2_in,
        p1_out=p1_out,
        p2_out=p2_out,
        q=p1_in - p1_out,
        q_ex=p1_in - p2_out,
        energies=energies,
        elastic=bool(elastic),
    )


def cm_kinematics(k, theta, phi=0.0):
    """Elastic centre-of-mass scattering with incoming momenta +/- k x_hat.

    The outgoing direction is ``(cos t, sin t cos f, sin t sin f)``.
    """
    p_in = np.array([k, 0.0, 0.0])
    p_out = k * np.array(
        [np.cos(theta), np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi)]
    )
    return make_kinematics(p_in, -p_in, p_out, -p_out)


@dataclass(frozen=True)
class TwoElectronState:
    """Plane-wave pair ``psi_{S|A}(p1, p2) (x) chi``, totally antisymmetric."""

    spatial_symmetry: str
    spin: SpinState
    momenta: tuple

    def __post_init__(self):
        if self.spatial_symmetry not in ("S", "A"):
            raise ValueError("spatial_symmetry must be 'S' or 'A'")
        expected = "A" if self.spatial_symmetry == "S" else "S"
        if self.spin.exchange_class != expected:
            raise InvariantViolation(
                f"spatial {self.spatial_symmetry} requires spin class {expected}, "
                f"got {self.spin.exchange_class}"
            )

    @property
    def spatial_sign(self):
        return 1.0 if self.spatial_symmetry == "S" else -1.0

    def spatial_amplitude(self, x1, x2):
        p1, p2 = self.momenta
        x1, x2 = _vec(x1), _vec(x2)
        direct = np.exp(1j * (p1 @ x1 + p2 @ x2))
        swapped = np.exp(1j * (p2 @ x1 + p1 @ x2))
        return PLANE_WAVE_NORM * (direct + self.spatial_sign * swapped)

    def wavefunction(self, x1, x2):
        """Spin-resolved amplitude at positions ``x1, x2``, shape (4,)."""
        return self.spatial_amplitude(x1, x2) * self.spin.amplitudes


def make_state(kind, momenta, spin_params=None, tol=1e-10):
    """Build one of the three initial-state classes.

    Parameters
    ----------
    kind : {1, 2, 3}
        1: antisymmetric space (x) unentangled symmetric spin (D^2 = CG).
        2: antisymmetric space (x) entangled symmetric spin (D^2 != CG).
        3: symmetric space (x) singlet.
    momenta : pair of 3-vectors
    spin_params : (C, D, G) or SpinState
        Required for kinds 1 and 2. Kind 3 defaults to the singlet and
        rejects any symmetric spin given here.
    """
    p1, p2 = (_vec(p) for p in momenta)
    if kind == 3:
        spin = bell_state("psi-")
        if spin_params is not None:
            given = spin_params if isinstance(spin_params, SpinState) else SpinState(spin_params)
            if given.exchange_class != "A":
                raise InvariantViolation("kind 3 needs the antisymmetric (singlet) spin state")
            spin = given
        return TwoElectronState("S", spin, (p1, p2))
    if kind not in (1, 2):
        raise ValueError(f"kind must be 1, 2 or 3, got {kind!r}")
    if spin_params is None:
        raise ValueError(f"kind {kind} needs spin_params (C, D, G)")
    if isinstance(spin_params, SpinState):
        spin = spin_params
        if spin.exchange_class != "S":
            raise InvariantViolation(f"kind {kind} needs a symmetric spin state")
    else:
        spin = symmetric_state(*spin_params)
    entangled = concurrence(spin) > tol
    if kind == 1 and entangled:
        raise InvariantViolation("kind 1 needs D^2 = CG (unentangled spin)")
    if kind == 2 and not entangled:
        raise InvariantViolation("kind 2 needs D^2 != CG (entangled spin)")
    return TwoElectronState("A", spin, (p1, p2))
