"""Spin entanglement carried through first-Born scattering.

The outgoing spin state at fixed final momenta is ``total @ chi_in``,
renormalized. This is the post-selected state for one scattering
direction, not the full superposition over directions.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial

import numpy as np

from .born1 import first_born
from .constants import ALPHA, FORBIDDEN_TOL
from .entanglement import concurrence
from .kinematics import cm_kinematics
from .spin_algebra import SpinState, as_amplitudes, bell_state, exchange_class

DEFAULT_K_GRID = (0.5, 1.0, 2.0)
DEFAULT_THETA_GRID = tuple(np.pi * (j + 0.5) / 64 for j in range(64))
DEFAULT_PHI_GRID = tuple(2.0 * np.pi * j / 16 for j in range(16))

SINGLET = bell_state("psi-").amplitudes


class ForbiddenTransition(ValueError):
    """The amplitude annihilates the incoming spin state."""


def _as_state(chi):
    if isinstance(chi, str):
        return bell_state(chi)
    if isinstance(chi, SpinState):
        return chi
    return SpinState(chi)


def scatter_spin(chi_in, kin, alpha=ALPHA, forbidden_tol=FORBIDDEN_TOL):
    """Normalized outgoing spin state for incoming spin ``chi_in``.

    Raises
    ------
    ForbiddenTransition
        If ``||total chi_in|| < forbidden_tol * ||total||``.
    """
    chi = _as_state(chi_in)
    if exchange_class(chi.amplitudes) == "mixed":
        raise ValueError("incoming spin state has no definite exchange symmetry")
    total = first_born(kin, alpha).total
    out = total @ chi.amplitudes
    scale = np.linalg.norm(total, 2)
    if np.linalg.norm(out) < forbidden_tol * scale:
        raise ForbiddenTransition(
            f"outgoing norm {np.linalg.norm(out):.3g} vs operator norm {scale:.3g}"
        )
    return SpinState(out)


@dataclass(frozen=True)
class EvolutionRecord:
    k: float
    theta: float
    phi: float
    initial_label: str
    initial_concurrence: float
    final_amplitudes: np.ndarray = field(repr=False)
    final_concurrence: float
    singlet_overlap: float
    forbidden: bool

    @property
    def concurrence_change(self):
        return self.final_concurrence - self.initial_concurrence

    def as_dict(self):
        amps = self.final_amplitudes
        return {
            "k": self.k,
            "theta": self.theta,
            "phi": self.phi,
            "initial": self.initial_label,
            "initial_concurrence": self.initial_concurrence,
            "final_re": [float(x) for x in amps.real],
            "final_im": [float(x) for x in amps.imag],
            "final_concurrence": self.final_concurrence,
            "singlet_overlap": self.singlet_overlap,
            "forbidden": self.forbidden,
        }


@dataclass(frozen=True)
class ScanResult:
    records: list

    @property
    def allowed(self):
        return [r for r in self.records if not r.forbidden]

    @property
    def summary(self):
        allowed = self.allowed
        if not allowed:
            return {"points": len(self.records), "forbidden": len(self.records)}
        lo = allowed[0]
        return {
            "points": len(self.records),
            "forbidden": len(self.records) - len(allowed),
            "min_concurrence": lo.final_concurrence,
            "max_concurrence": allowed[-1].final_concurrence,
            "argmin": {"k": lo.k, "theta": lo.theta, "phi": lo.phi},
            "max_singlet_overlap": max(r.singlet_overlap for r in allowed),
        }


def evolve_point(chi_in, k, theta, phi, alpha=ALPHA, label=None):
    chi = _as_state(chi_in)
    c0 = concurrence(chi)
    label = label if label is not None else (chi_in if isinstance(chi_in, str) else "custom")
    kin = cm_kinematics(k, theta, phi)
    try:
        out = scatter_spin(chi, kin, alpha).amplitudes
        forbidden = False
    except ForbiddenTransition:
        out = np.zeros(4, dtype=complex)
        forbidden = True
    return EvolutionRecord(
        k=float(k),
        theta=float(theta),
        phi=float(phi),
        initial_label=label,
        initial_concurrence=c0,
        final_amplitudes=out,
        final_concurrence=np.nan if forbidden else concurrence(out),
        singlet_overlap=np.nan if forbidden else float(abs(np.vdot(SINGLET, out))),
        forbidden=forbidden,
    )


def _evolve_args(args, chi, alpha, label):
    return evolve_point(chi, *args, alpha=alpha, label=label)


def scan_entanglement(initial, k_grid=DEFAULT_K_GRID, theta_grid=DEFAULT_THETA_GRID,
                      phi_grid=DEFAULT_PHI_GRID, alpha=ALPHA, workers=None):
    """Scatter ``initial`` over a centre-of-mass (k, theta, phi) grid.

    Records are sorted by final concurrence (ties keep grid order);
    forbidden points are kept, flagged, and placed last. With
    ``workers > 1`` the points are evaluated in a process pool; the
    output does not depend on the worker count.
    """
    if not (len(k_grid) and len(theta_grid) and len(phi_grid)):
        raise ValueError("scan grids must be non-empty")
    chi = _as_state(initial)
    label = initial if isinstance(initial, str) else "custom"
    points = [(k, th, ph) for k in k_grid for th in theta_grid for ph in phi_grid]
    work = partial(_evolve_args, chi=chi, alpha=alpha, label=label)
    if workers is not None and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(work, points, chunksize=max(1, len(points) // (4 * workers))))
    else:
        records = [work(p) for p in points]
    records.sort(key=lambda r: (r.forbidden, 0.0 if r.forbidden else r.final_concurrence))
    return ScanResult(records=records)


def final_spin(chi_in, kin, alpha=ALPHA):
    """Unnormalized ``total @ chi_in`` (no forbidden check)."""
    return first_born(kin, alpha).total @ as_amplitudes(_as_state(chi_in))
