"""Numerical Fourier transforms of the position-space interaction terms.

This is the independent check on the closed-form kernels in
:mod:`nrqed_entangle.potentials`. Each non-contact term is multiplied by a
Yukawa factor ``exp(-mu r)``, the angular integral is reduced to spherical
Bessel functions, the radial integral is done by panel Gauss-Legendre
quadrature, and the results for a decreasing sequence of ``mu`` are
extrapolated to ``mu = 0`` with Neville's algorithm. Contact terms are
returned exactly.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import spherical_jn

from .constants import ALPHA, Q_MIN
from .kinematics import ForwardSingularity
from .spin_algebra import SIGMA1, SIGMA2, SIGMA_DOT

DEFAULT_SCHEDULE = tuple(0.2 / 2**k for k in range(7))


def default_schedule(qn):
    """``0.2 min(1, |q|) / 2^k`` for k = 0..6.

    The screened moments are analytic in mu only for mu < |q|, so the
    masses are scaled down at small momentum transfer.
    """
    return tuple(m * min(1.0, qn) for m in DEFAULT_SCHEDULE)

# radial moments int j_l(q r) r^power exp(-mu r) dr needed per raw term
_RADIAL = {
    "inverse_r": ((0, 1),),
    "radial_vector": ((1, 0),),
    "dyadic_over_r": ((0, 1), (2, 1)),
    "dipole_tensor": ((2, -1),),
}

KERNEL_TERMS = (
    "coulomb",
    "coulomb_contact",
    "retardation",
    "spin_orbit",
    "spin_spin_contact",
    "spin_spin_tensor",
)


class OracleDivergence(RuntimeError):
    """Extrapolation to zero screening did not settle."""

    def __init__(self, message, estimates):
        super().__init__(message)
        self.estimates = estimates


@dataclass(frozen=True)
class RadialEstimate:
    value: float
    error: float
    screened: np.ndarray
    schedule: tuple


def _panel_nodes(q, r_max, nodes_per_panel=16):
    width = 1.5 / q
    n_panels = int(np.ceil(r_max / width))
    x, w = np.polynomial.legendre.leggauss(nodes_per_panel)
    left = width * np.arange(n_panels)
    r = (left[:, None] + 0.5 * width * (x[None, :] + 1.0)).ravel()
    wr = np.tile(0.5 * width * w, n_panels)
    return r, wr


def neville_zero(h, values):
    """Polynomial extrapolation of ``values(h)`` to ``h = 0``.

    Returns the final estimate and the difference to the previous
    diagonal entry of the tableau.
    """
    h = np.asarray(h, dtype=float)
    p = np.array(values, dtype=float)
    n = len(p)
    diag = [p[0]]
    for m in range(1, n):
        for i in range(n - m):
            p[i] = (h[i + m] * p[i] - h[i] * p[i + 1]) / (h[i + m] - h[i])
        diag.append(p[0])
    if n == 1:
        return diag[0], np.inf
    return diag[-1], abs(diag[-1] - diag[-2])


@lru_cache(maxsize=256)
def _screened_moments(l, power, q, schedule):
    r, w = _panel_nodes(q, 45.0 / schedule[-1])
    base = w * spherical_jn(l, q * r) * r**power
    out = np.array([np.sum(base * np.exp(-mu * r)) for mu in schedule])
    out.setflags(write=False)
    return out


def radial_moment(l, power, q, schedule=None):
    """``lim_{mu->0} int_0^inf j_l(q r) r^power exp(-mu r) dr``."""
    if schedule is None:
        schedule = default_schedule(q)
    schedule = tuple(float(m) for m in schedule)
    if len(schedule) < 2 or any(b >= a for a, b in zip(schedule, schedule[1:])):
        raise ValueError("screening schedule must be a decreasing sequence of >= 2 masses")
    if schedule[-1] <= 0.0:
        raise ValueError("screening masses must be positive")
    screened = _screened_moments(l, power, float(q), schedule)
    value, error = neville_zero(schedule, screened)
    return RadialEstimate(value=value, error=error, screened=screened, schedule=schedule)


def fourier_transform(term, q, schedule=None, tol=1e-6):
    """Transform ``int d^3r exp(i q.r) f(r)`` of a raw position-space term.

    ``term`` is one of ``'inverse_r'`` (scalar), ``'radial_vector'`` for
    ``r/r^3`` (3-vector), ``'dyadic_over_r'`` for ``r_i r_j/r^3`` and
    ``'dipole_tensor'`` for ``(3 rh_i rh_j - delta_ij)/r^3`` (3x3), or
    ``'delta'`` (exactly 1).
    """
    q = np.asarray(q, dtype=float)
    qn = np.linalg.norm(q)
    if qn < Q_MIN:
        raise ForwardSingularity(f"|q| = {qn:.3g} inside exclusion zone {Q_MIN:g}")
    if term == "delta":
        return 1.0
    if term not in _RADIAL:
        raise ValueError(f"unknown term {term!r}")
    moments = []
    for l, power in _RADIAL[term]:
        est = radial_moment(l, power, qn, schedule)
        if est.error > tol * max(abs(est.value), 1e-300):
            raise OracleDivergence(
                f"{term}: j_{l} moment at |q|={qn:g} unsettled "
                f"(value {est.value:.10g}, last change {est.error:.3g})",
                est.screened,
            )
        moments.append(est.value)

    qh = q / qn
    traceless = np.outer(qh, qh) - np.eye(3) / 3.0
    # angular integrals: int dOmega e^{i q.r} P_l(qh.rh) = 4 pi i^l j_l(q r)
    if term == "inverse_r":
        return 4.0 * np.pi * moments[0]
    if term == "radial_vector":
        return 4.0j * np.pi * moments[0] * qh
    if term == "dyadic_over_r":
        return 4.0 * np.pi * (moments[0] * np.eye(3) / 3.0 - moments[1] * traceless)
    return -12.0 * np.pi * moments[0] * traceless


def _retardation(q, p1, p2, alpha, schedule, tol):
    f0 = fourier_transform("inverse_r", q, schedule, tol).real
    dyad = fourier_transform("dyadic_over_r", q, schedule, tol)

    def ordered(a, b):
        return -(alpha**2) / 2.0 * ((a @ b) * f0 + a @ dyad @ b)

    return 0.5 * (ordered(p1, p2) + ordered(p1 - q, p2 + q))


def oracle_fourier(term_id, q, screening_schedule=None, p1=None, p2=None,
                   alpha=ALPHA, tol=1e-6):
    """Numerically transformed kernel for one interaction term.

    Scalar terms (``'coulomb'``, ``'coulomb_contact'``, ``'retardation'``)
    return a float; spin terms return a 4x4 operator. ``p1, p2`` are the
    incoming momenta, needed by ``'retardation'`` and ``'spin_orbit'``.
    ``screening_schedule`` defaults to :func:`default_schedule`; raises
    :class:`OracleDivergence` when the extrapolation moves by more than
    ``tol`` (relative) at its last step.
    """
    q = np.asarray(q, dtype=float)
    if term_id == "coulomb":
        return float(fourier_transform("inverse_r", q, screening_schedule, tol).real)
    if term_id == "coulomb_contact":
        return -np.pi * alpha**2 / 4.0 * fourier_transform("delta", q)
    if term_id == "spin_spin_contact":
        return alpha**2 / 4.0 * (8.0 * np.pi / 3.0) * fourier_transform("delta", q) * SIGMA_DOT
    if term_id == "spin_spin_tensor":
        t = fourier_transform("dipole_tensor", q, screening_schedule, tol)
        # s1.s2/r^3 - 3 (s1.r)(s2.r)/r^5 = -sum_ij t_ij s1_i s2_j
        return -(alpha**2) / 4.0 * np.einsum("ij,iab,jbc->ac", t, SIGMA1, SIGMA2)
    if p1 is None or p2 is None:
        raise ValueError(f"{term_id!r} needs incoming momenta p1, p2")
    p1 = np.asarray(p1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    if term_id == "retardation":
        return float(_retardation(q, p1, p2, alpha, screening_schedule, tol))
    if term_id == "spin_orbit":
        v = fourier_transform("radial_vector", q, screening_schedule, tol)
        axial = np.cross(v, p1 - p2)
        sigma_sum = SIGMA1 + SIGMA2
        return -(alpha**2) / 4.0 * np.einsum("k,kab->ab", axial, sigma_sum)
    raise ValueError(f"unknown term {term_id!r}; expected one of {KERNEL_TERMS}")

