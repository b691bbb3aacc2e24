"""Second-order (two-photon) effective potentials.

The ladder term is assembled from the Brown-Mittleman potential and the
crossed term from the difference potential, both summed over a discretized
set of plane-wave intermediate states with ``sum_rs -> int d^3k / (2 pi)^3``.
At this order only the static Coulomb interaction enters either potential,
so the ladder is spin-independent and the crossed term vanishes. The
energy-dependent path is kept live for synthetic kernels.

Kernel evaluators have the signature ``kernel(omega, q, p1, p2) -> (4, 4)``
where ``omega`` is the energy transferred through the photon, ``q`` the
momentum transfer on electron 1, and ``p1, p2`` the incoming momenta.
"""

from dataclasses import dataclass

import numpy as np
from scipy.integrate import lebedev_rule
from scipy.spatial.transform import Rotation

from .spin_algebra import I4

ZERO4 = np.zeros((4, 4), dtype=complex)


def static_coulomb(omega, q, p1, p2):
    q = np.asarray(q, dtype=float)
    return (4.0 * np.pi / (q @ q)) * I4


def polynomial_energy_kernel(coefficients=(1.0, 0.1, 0.1), spin_part=None):
    """Synthetic kernel ``(4 pi/q^2) sum_n c_n omega^n K0`` for plumbing tests.

    A kernel linear in omega gives a vanishing crossed term for elastic
    on-shell externals, so the default carries a quadratic piece.
    """
    coefficients = tuple(float(c) for c in coefficients)
    k0 = I4 if spin_part is None else np.asarray(spin_part, dtype=complex)

    def kernel(omega, q, p1, p2):
        q = np.asarray(q, dtype=float)
        return (4.0 * np.pi / (q @ q)) * np.polynomial.polynomial.polyval(omega, coefficients) * k0

    return kernel


def _energy(p):
    return 0.5 * float(np.dot(p, p))


def brown_mittleman(u_eval, e_a, e_r, e_b, e_s):
    """``(1/2)[U(e_a - e_r) + U(e_b - e_s)]``; ``u_eval`` maps energy to a 4x4."""
    return 0.5 * (np.asarray(u_eval(e_a - e_r)) + np.asarray(u_eval(e_b - e_s)))


def diff_potential(u_eval, e_a, e_r, e_b, e_s):
    """``-[U(e_a - e_r) - U(e_b - e_s)]``; zero for any static kernel."""
    return -(np.asarray(u_eval(e_a - e_r)) - np.asarray(u_eval(e_b - e_s)))


def partial_transpose_2(op):
    """Transpose the electron-2 factor of a 4x4 operator."""
    return np.asarray(op).reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)


def crossed_product(later, earlier):
    """Spin product for a crossed diagram.

    Electron 1 meets ``earlier`` then ``later``; electron 2 meets them in
    the opposite order, so ``sum a1 b1 (x) b2 a2`` for ``later = sum a1 (x) a2``
    and ``earlier = sum b1 (x) b2``.
    """
    return partial_transpose_2(partial_transpose_2(later) @ partial_transpose_2(earlier))


@dataclass(frozen=True)
class IntermediateGrid:
    """Intermediate plane-wave pairs ``(r_i, s_i)`` with measure weights.

    ``denominators`` holds the energy denominator of each node.
    ``pv_paired`` marks grids whose radial nodes sit symmetrically about
    the on-shell pole; other grids are regulated with ``eta``.
    """

    r: np.ndarray
    s: np.ndarray
    weights: np.ndarray
    denominators: np.ndarray
    eta: float = 1e-3
    pv_paired: bool = False
    floor: float = 1e-12

    def __post_init__(self):
        n = len(self.weights)
        if self.r.shape != (n, 3) or self.s.shape != (n, 3) or self.denominators.shape != (n,):
            raise ValueError("inconsistent grid arrays")
        if n and not self.pv_paired and self.eta <= 0.0:
            if np.min(np.abs(self.denominators)) < self.floor:
                raise ValueError("node on the energy shell and no regulator or pairing")

    def __len__(self):
        return len(self.weights)

    def propagator(self):
        d = self.denominators
        if self.pv_paired:
            if len(d) and np.min(np.abs(d)) < self.floor:
                raise ValueError("denominator underflow on a principal-value grid")
            return 1.0 / d
        # Lorentzian principal value
        return d / (d * d + self.eta**2)


def empty_grid():
    z = np.zeros((0, 3))
    return IntermediateGrid(r=z, s=z, weights=np.zeros(0), denominators=np.zeros(0))


def _angular_nodes(order, rotation_seed):
    x, w = lebedev_rule(order)
    # a fixed generic rotation keeps the octahedral nodes off the
    # Coulomb poles along the external momenta
    rot = Rotation.random(random_state=rotation_seed).as_matrix()
    return (rot @ x).T, w


def _radial_nodes(center, n, inner=True):
    """Gauss-Legendre nodes on [0, 2 center] (symmetric about center)
    followed by a rational map of [2 center, inf)."""
    x, w = np.polynomial.legendre.leggauss(n)
    if inner:
        return center * (x + 1.0), center * w
    t = 0.5 * (x + 1.0)
    k = 2.0 * center + center * t / (1.0 - t)
    dk = center / (1.0 - t) ** 2 * 0.5 * w
    return k, dk


def ladder_grid(a, b, n_radial=16, angular_order=7, eta=1e-3, rotation_seed=2024):
    """Intermediate pairs ``r = P/2 + k, s = P/2 - k`` about the pair momentum.

    Half the radial nodes lie on ``[0, 2 k0]`` where ``k0`` is the on-shell
    relative momentum, so every node below the pole has a mirror above it.
    The default ``angular_order=7`` is the 26-point Lebedev rule.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    pair = a + b
    k0 = 0.5 * np.linalg.norm(a - b)
    if k0 == 0.0:
        raise ValueError("ladder grid needs a nonzero relative momentum")
    if n_radial % 2:
        raise ValueError("n_radial must be even")
    ki, wi = _radial_nodes(k0, n_radial // 2, inner=True)
    ko, wo = _radial_nodes(k0, n_radial // 2, inner=False)
    k = np.concatenate([ki, ko])
    wk = np.concatenate([wi, wo])
    dirs, wang = _angular_nodes(angular_order, rotation_seed)
    rel = (k[:, None, None] * dirs[None, :, :]).reshape(-1, 3)
    weights = (wk[:, None] * k[:, None] ** 2 * wang[None, :]).ravel() / (2.0 * np.pi) ** 3
    r = 0.5 * pair + rel
    s = 0.5 * pair - rel
    denominators = np.repeat(k0**2 - k**2, len(wang))
    return IntermediateGrid(r=r, s=s, weights=weights, denominators=denominators,
                            eta=eta, pv_paired=True)


def crossed_grid(a, b, c, d, n_radial=16, angular_order=7, eta=1e-3, rotation_seed=2024):
    """Intermediate electron-1 momenta ``r`` about ``(a + c)/2``; ``s = r + b - c``.

    The crossed denominator ``e_a + e_s - e_d - e_r`` vanishes on a plane,
    so these nodes use the ``eta`` regulator instead of pairing.
    """
    a, b, c, d = (np.asarray(v, dtype=float) for v in (a, b, c, d))
    center = 0.5 * (a + c)
    scale = max(np.linalg.norm(a - c), np.linalg.norm(a - b), 1e-3)
    if n_radial % 2:
        raise ValueError("n_radial must be even")
    ki, wi = _radial_nodes(scale, n_radial // 2, inner=True)
    ko, wo = _radial_nodes(scale, n_radial // 2, inner=False)
    k = np.concatenate([ki, ko])
    wk = np.concatenate([wi, wo])
    dirs, wang = _angular_nodes(angular_order, rotation_seed)
    r = center + (k[:, None, None] * dirs[None, :, :]).reshape(-1, 3)
    weights = (wk[:, None] * k[:, None] ** 2 * wang[None, :]).ravel() / (2.0 * np.pi) ** 3
    s = r + b - c
    ea, ed = _energy(a), _energy(d)
    denominators = ea + 0.5 * np.einsum("ij,ij->i", s, s) - ed - 0.5 * np.einsum("ij,ij->i", r, r)
    return IntermediateGrid(r=r, s=s, weights=weights, denominators=denominators, eta=eta)


def _coulomb_scalar(q):
    return 4.0 * np.pi / float(np.dot(q, q))


def ladder_element(c, d, a, b, grid, kernel=static_coulomb):
    """Ladder effective potential ``<cd|V_L|ab>`` as a spin operator.

    ``(1/2) sum_rs [<cd|1/r|rs><rs|V_BM|ab> + <cd|V_BM|rs><rs|1/r|ab>]
    / (e_a + e_b - e_r - e_s)``.
    """
    a, b, c, d = (np.asarray(v, dtype=float) for v in (a, b, c, d))
    ea, eb, ec, ed = map(_energy, (a, b, c, d))
    prop = grid.propagator()
    terms = np.zeros((len(grid), 4, 4), dtype=complex)
    for i, (r, s) in enumerate(zip(grid.r, grid.s)):
        er, es = _energy(r), _energy(s)
        v_in = brown_mittleman(lambda w: kernel(w, a - r, a, b), ea, er, eb, es)
        v_out = brown_mittleman(lambda w: kernel(w, r - c, r, s), er, ec, es, ed)
        terms[i] = _coulomb_scalar(r - c) * v_in + v_out * _coulomb_scalar(a - r)
        terms[i] *= 0.5 * grid.weights[i] * prop[i]
    return terms.sum(axis=0) if len(grid) else ZERO4.copy()


def crossed_element(c, d, a, b, grid, kernel=static_coulomb):
    """Crossed effective potential ``<cd|V_X|ab>`` as a spin operator.

    ``-(1/2) sum_rs [<cs|1/r|rb><rd|V_diff|as> + <cs|V_diff|rb><rd|1/r|as>]
    / (e_a + e_s - e_d - e_r)`` with crossed spin ordering.
    """
    a, b, c, d = (np.asarray(v, dtype=float) for v in (a, b, c, d))
    ea, eb, ec, ed = map(_energy, (a, b, c, d))
    prop = grid.propagator()
    terms = np.zeros((len(grid), 4, 4), dtype=complex)
    for i, (r, s) in enumerate(zip(grid.r, grid.s)):
        er, es = _energy(r), _energy(s)
        # <rd|V_diff|as>: electron 1 a -> r, electron 2 s -> d
        early = diff_potential(lambda w: kernel(w, a - r, a, s), ea, er, es, ed)
        # <cs|V_diff|rb>: electron 1 r -> c, electron 2 b -> s
        late = diff_potential(lambda w: kernel(w, r - c, r, b), er, ec, eb, es)
        terms[i] = (
            crossed_product(_coulomb_scalar(r - c) * I4, early)
            + crossed_product(late, _coulomb_scalar(a - r) * I4)
        )
        terms[i] *= -0.5 * grid.weights[i] * prop[i]
    return terms.sum(axis=0) if len(grid) else ZERO4.copy()


def ladder_convergence(c, d, a, b, radial_counts=(8, 16, 32), angular_order=7, eta=1e-3):
    """Scalar Coulomb ladder value under radial refinement.

    Returns a list of ``(n_radial, value, change)`` with ``change`` the
    difference to the previous refinement (``nan`` for the first).
    """
    rows = []
    prev = None
    for n in radial_counts:
        grid = ladder_grid(a, b, n_radial=n, angular_order=angular_order, eta=eta)
        value = ladder_element(c, d, a, b, grid)[0, 0]
        change = np.nan if prev is None else abs(value - prev)
        rows.append((n, complex(value), float(change)))
        prev = value
    return rows
