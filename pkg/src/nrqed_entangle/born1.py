"""First-Born amplitude for identical electrons, with exchange.

With both the incoming and outgoing pair antisymmetrized, the spin
structure of ``<cd|U|ab>`` reduces to the 4x4 operator::

    total = direct - exchange @ P12

where ``direct`` is the kernel at ``q = p1_in - p1_out`` and ``exchange`` the
kernel with the outgoing labels swapped (``q_ex = p1_in - p2_out``). The
factor ``-2 pi i delta(E_i - E_f)`` and the plane-wave normalization are
dropped; only the spin structure matters here.
"""

from dataclasses import dataclass

import numpy as np

from .constants import ALPHA
from .kinematics import Kinematics, TwoElectronState, make_kinematics
from .potentials import total_kernel
from .spin_algebra import P12, as_amplitudes, exchange_class, sector_blocks

ALL_TERMS = ("coulomb", "spin_orbit", "spin_spin")


@dataclass(frozen=True)
class AmplitudeOperator:
    direct: np.ndarray
    exchange: np.ndarray
    total: np.ndarray
    kinematics: Kinematics

    def blocks(self):
        return sector_blocks(self.total)

    def block_norms(self):
        """Frobenius norms of the singlet/triplet blocks and the operator norm."""
        b = self.blocks()
        return {
            "singlet_singlet": float(np.linalg.norm(b["ss"])),
            "triplet_triplet": float(np.linalg.norm(b["tt"])),
            "singlet_triplet": float(np.hypot(np.linalg.norm(b["st"]), np.linalg.norm(b["ts"]))),
            "operator": float(np.linalg.norm(self.total, 2)),
        }


def first_born(kin, alpha=ALPHA, terms=ALL_TERMS):
    """Spin-operator-valued first-Born amplitude at the given kinematics."""
    kin.require_regular()
    direct = total_kernel(kin.q, kin.p1_in, kin.p2_in, alpha, terms)
    exchange = total_kernel(kin.q_ex, kin.p1_in, kin.p2_in, alpha, terms)
    return AmplitudeOperator(
        direct=direct,
        exchange=exchange,
        total=direct - exchange @ P12,
        kinematics=kin,
    )


def transition_amplitude(initial, final_spin, kin, alpha=ALPHA, terms=ALL_TERMS):
    """``<final_spin| total |initial.spin>``.

    The final spin state must itself belong to an allowed pairing
    (symmetric spin with antisymmetric space, or the singlet with
    symmetric space); mixed-class states are rejected.
    """
    if not isinstance(initial, TwoElectronState):
        raise TypeError("initial must be a TwoElectronState")
    for p, expected in zip(initial.momenta, (kin.p1_in, kin.p2_in)):
        if not np.allclose(p, expected, rtol=0.0, atol=1e-12):
            raise ValueError("initial momenta do not match the kinematics")
    chi_f = as_amplitudes(final_spin)
    if abs(np.linalg.norm(chi_f) - 1.0) > 1e-12:
        raise ValueError("final spin state must be normalized")
    if exchange_class(chi_f) == "mixed":
        raise ValueError("final spin state has no definite exchange symmetry")
    amp = first_born(kin, alpha, terms)
    return complex(np.vdot(chi_f, amp.total @ initial.spin.amplitudes))


def random_elastic_kinematics(rng, momentum_scale=1.0, min_transfer=1e-3):
    """Random elastic kinematics in a random frame.

    The relative momentum has magnitude in ``momentum_scale * [0.2, 2]``,
    the pair momentum is Gaussian with width ``momentum_scale``, and the
    scattering direction is uniform on the sphere.
    """
    while True:
        k = momentum_scale * rng.uniform(0.2, 2.0)
        pair = momentum_scale * rng.normal(size=3)
        n_in = rng.normal(size=3)
        n_out = rng.normal(size=3)
        k_in = k * n_in / np.linalg.norm(n_in)
        k_out = k * n_out / np.linalg.norm(n_out)
        kin = make_kinematics(pair / 2 + k_in, pair / 2 - k_in, pair / 2 + k_out, pair / 2 - k_out)
        if min(np.linalg.norm(kin.q), np.linalg.norm(kin.q_ex)) > min_transfer * momentum_scale:
            return kin


@dataclass(frozen=True)
class SelectionRuleReport:
    n_samples: int
    seed: int
    alpha: float
    max_off_block_ratio: float
    min_singlet_norm: float
    min_triplet_norm: float
    tolerance: float

    @property
    def passed(self):
        return (
            self.max_off_block_ratio <= self.tolerance
            and self.min_singlet_norm > 0.0
            and self.min_triplet_norm > 0.0
        )

    def as_dict(self):
        return {
            "n_samples": self.n_samples,
            "seed": self.seed,
            "alpha": self.alpha,
            "max_off_block_ratio": self.max_off_block_ratio,
            "min_singlet_norm": self.min_singlet_norm,
            "min_triplet_norm": self.min_triplet_norm,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


def selection_rule_report(n_samples, momentum_scale=1.0, seed=0, alpha=ALPHA, tolerance=1e-12):
    """Check the singlet-triplet block of ``total`` over random kinematics."""
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    rng = np.random.default_rng(seed)
    worst = 0.0
    min_ss = np.inf
    min_tt = np.inf
    for _ in range(n_samples):
        norms = first_born(random_elastic_kinematics(rng, momentum_scale), alpha).block_norms()
        worst = max(worst, norms["singlet_triplet"] / norms["operator"])
        min_ss = min(min_ss, norms["singlet_singlet"])
        min_tt = min(min_tt, norms["triplet_triplet"])
    return SelectionRuleReport(
        n_samples=n_samples,
        seed=seed,
        alpha=alpha,
        max_off_block_ratio=float(worst),
        min_singlet_norm=float(min_ss),
        min_triplet_norm=float(min_tt),
        tolerance=tolerance,
    )
