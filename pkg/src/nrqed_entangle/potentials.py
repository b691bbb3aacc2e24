"""Momentum-space kernels of the Breit-corrected electron-electron interaction.

A kernel is the matrix element ``<p1 - q, p2 + q| U |p1, p2>`` with the plane
wave normalization stripped, i.e. ``int d^3r exp(i q.r) U(r)`` with the
momentum operators replaced by numbers. It is returned as a 4x4 spin
operator.

Position-space terms (atomic units, c = 1/alpha)::

    U_C  = 1/r - (pi a^2/4) delta(r)
           - (a^2/2r) [p1.p2 + r.(r.p1)p2 / r^2]
    U_LS = -(a^2/4r^3) [r x (p1 - p2)] . (s1 + s2)
    U_SS = (a^2/4) {[(8 pi/3) delta(r) + 1/r^3] s1.s2 - 3 (s1.r)(s2.r)/r^5}

Transforms used (principal value for the r^-3 tensor)::

    1/r            -> 4 pi / q^2
    r/r^3          -> 4 pi i q / q^2
    r_i r_j / r^3  -> (4 pi / q^2) (delta_ij - 2 qh_i qh_j)
    (3 rh rh - 1)/r^3 -> -4 pi (qh qh - 1/3)

Momentum operators in the retardation term are ambiguous in order. The
literal ordering lets them act on the incoming waves; its adjoint lets them
act on the outgoing waves. Kernels use the average of the two, which is the
Hermitian part, and report the difference as ``ordering_defect``.
"""

from dataclasses import dataclass

import numpy as np

from .constants import ALPHA, Q_MIN
from .kinematics import ForwardSingularity
from .spin_algebra import I4, SIGMA1, SIGMA2, SIGMA_DOT, sigma_dot_vector

FOUR_PI = 4.0 * np.pi


@dataclass(frozen=True)
class SpinKernel:
    operator: np.ndarray
    q: np.ndarray
    depends_on_momenta: bool
    ordering_defect: float = 0.0

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.operator, dtype=dtype)


def _check_q(q):
    q = np.asarray(q, dtype=float)
    qn = np.linalg.norm(q)
    if qn < Q_MIN:
        raise ForwardSingularity(f"|q| = {qn:.3g} inside exclusion zone {Q_MIN:g}")
    return q, qn


def _retardation_scalar(q, p1, p2, alpha):
    q, qn = _check_q(q)
    qh = q / qn
    return -(alpha**2) * FOUR_PI / qn**2 * (p1 @ p2 - (p1 @ qh) * (p2 @ qh))


def coulomb_kernel(q, p1, p2, alpha=ALPHA, part="all"):
    """Coulomb term with its contact and retardation corrections.

    ``part`` selects ``'leading'``, ``'contact'``, ``'retardation'`` or
    ``'all'``. ``p1, p2`` are the incoming momenta; the outgoing ones are
    ``p1 - q`` and ``p2 + q``.
    """
    q, qn = _check_q(q)
    p1 = np.asarray(p1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    leading = FOUR_PI / qn**2
    contact = -np.pi * alpha**2 / 4.0
    right = _retardation_scalar(q, p1, p2, alpha)
    left = _retardation_scalar(q, p1 - q, p2 + q, alpha)
    retardation = 0.5 * (right + left)
    value = {
        "leading": leading,
        "contact": contact,
        "retardation": retardation,
        "all": leading + contact + retardation,
    }[part]
    return SpinKernel(
        operator=value * I4,
        q=q,
        depends_on_momenta=part in ("retardation", "all"),
        ordering_defect=abs(right - retardation),
    )


def spin_orbit_kernel(q, p1, p2, alpha=ALPHA):
    """``-i pi a^2 [q x (p1 - p2)] . (s1 + s2) / q^2``.

    At fixed q this matrix is anti-Hermitian; Hermiticity of the full
    interaction shows up as ``K(q; in)^dagger = K(-q; out)``.
    """
    q, qn = _check_q(q)
    p1 = np.asarray(p1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    # q x P is the same for incoming and outgoing relative momenta
    axial = np.cross(q, p1 - p2)
    coef = -1j * np.pi * alpha**2 / qn**2
    op = coef * sigma_dot_vector(SIGMA1 + SIGMA2, axial)
    return SpinKernel(operator=op, q=q, depends_on_momenta=True)


def spin_spin_kernel(q, alpha=ALPHA, part="all"):
    """Spin-spin term: contact ``(2 pi a^2/3) s1.s2`` plus the tensor
    ``pi a^2 [(s1.qh)(s2.qh) - s1.s2/3]``.
    """
    q, qn = _check_q(q)
    qh = q / qn
    contact = (2.0 * np.pi * alpha**2 / 3.0) * SIGMA_DOT
    tensor = np.pi * alpha**2 * (
        sigma_dot_vector(SIGMA1, qh) @ sigma_dot_vector(SIGMA2, qh) - SIGMA_DOT / 3.0
    )
    op = {"contact": contact, "tensor": tensor, "all": contact + tensor}[part]
    return SpinKernel(operator=op, q=q, depends_on_momenta=False)


def total_kernel(q, p1, p2, alpha=ALPHA, terms=("coulomb", "spin_orbit", "spin_spin")):
    """Sum of the selected kernels as a plain 4x4 array."""
    op = np.zeros((4, 4), dtype=complex)
    if "coulomb" in terms:
        op += coulomb_kernel(q, p1, p2, alpha).operator
    if "spin_orbit" in terms:
        op += spin_orbit_kernel(q, p1, p2, alpha).operator
    if "spin_spin" in terms:
        op += spin_spin_kernel(q, alpha).operator
    return op
