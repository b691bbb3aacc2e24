import numpy as np
import pytest

from nrqed_entangle.entanglement import concurrence
from nrqed_entangle.evolution import (
    ForbiddenTransition,
    evolve_point,
    final_spin,
    scan_entanglement,
    scatter_spin,
)
from nrqed_entangle.kinematics import cm_kinematics
from nrqed_entangle.spin_algebra import SpinState, bell_state, symmetric_state

from conftest import brute_amplitude, pure_concurrence, random_symmetric

SINGLET = bell_state("psi-").amplitudes
SMALL = dict(k_grid=(0.5, 2.0), theta_grid=np.linspace(0.1, 3.0, 9), phi_grid=(0.0, 1.0, 2.5))


def test_singlet_fixed_point(rng):
    for _ in range(20):
        kin = cm_kinematics(rng.uniform(0.2, 3), rng.uniform(0.05, 3.1), rng.uniform(0, 6))
        out = scatter_spin("psi-", kin)
        assert abs(np.vdot(SINGLET, out.amplitudes)) == pytest.approx(1.0, abs=1e-12)


def test_symmetric_states_stay_symmetric(rng):
    for _ in range(20):
        kin = cm_kinematics(rng.uniform(0.2, 3), rng.uniform(0.05, 3.1), rng.uniform(0, 6))
        out = scatter_spin(random_symmetric(rng), kin)
        assert out.exchange_class == "S"
        assert abs(np.vdot(SINGLET, out.amplitudes)) <= 1e-12


def test_pure_coulomb_keeps_concurrence(rng):
    for _ in range(20):
        chi = random_symmetric(rng)
        rec = evolve_point(chi, rng.uniform(0.2, 3), rng.uniform(0.05, 1.4), rng.uniform(0, 6), alpha=0.0)
        assert abs(rec.concurrence_change) <= 1e-12


def test_psi_plus_unchanged_without_corrections():
    out = scatter_spin("psi+", cm_kinematics(1.0, 1.0, 0.5), alpha=0.0)
    assert abs(np.vdot(bell_state("psi+").amplitudes, out.amplitudes)) == pytest.approx(1.0, abs=1e-14)


def test_mixed_input_rejected():
    with pytest.raises(ValueError):
        scatter_spin([1, 0.3, 0, 0], cm_kinematics(1.0, 1.0))


def test_mott_zero_is_forbidden():
    with pytest.raises(ForbiddenTransition):
        scatter_spin("psi+", cm_kinematics(1.0, np.pi / 2, 0.0), alpha=0.0)
    rec = evolve_point("psi+", 1.0, np.pi / 2, 0.0, alpha=0.0)
    assert rec.forbidden and np.isnan(rec.final_concurrence)


def test_scan_ordering_and_summary():
    result = scan_entanglement(symmetric_state(0.8, 0.3j, 0.5), **SMALL)
    assert len(result.records) == 2 * 9 * 3
    conc = [r.final_concurrence for r in result.allowed]
    assert conc == sorted(conc)
    s = result.summary
    assert s["min_concurrence"] == conc[0] and s["max_concurrence"] == conc[-1]
    assert set(s["argmin"]) == {"k", "theta", "phi"}
    assert s["points"] == 54


def test_forbidden_points_kept_last():
    result = scan_entanglement("psi+", k_grid=(1.0,), theta_grid=(0.5, np.pi / 2), phi_grid=(0.0,), alpha=0.0)
    assert [r.forbidden for r in result.records] == [False, True]
    assert result.summary["forbidden"] == 1


def test_empty_grid_rejected():
    with pytest.raises(ValueError):
        scan_entanglement("psi+", k_grid=())


def test_parallel_scan_matches_serial():
    a = scan_entanglement("phi+", **SMALL)
    b = scan_entanglement("phi+", workers=2, **SMALL)
    assert [r.as_dict() for r in a.records] == [r.as_dict() for r in b.records]


def test_generic_triplet_loses_entanglement():
    chi = symmetric_state(0.8, 0.3j, 0.5)
    assert concurrence(chi) > 0.9
    # near the right angle the Coulomb triplet amplitude cancels and the
    # spin-dependent corrections dominate
    result = scan_entanglement(chi, theta_grid=(np.pi / 2,))
    assert result.summary["min_concurrence"] < 0.1
    lo = result.records[0]
    brute = brute_amplitude(lo.k, lo.theta, lo.phi) @ chi.amplitudes
    assert pure_concurrence(brute) == pytest.approx(lo.final_concurrence, abs=1e-12)


def test_product_state_becomes_entangled():
    result = scan_entanglement(SpinState([1, 0, 0, 0]), theta_grid=(np.pi / 2,))
    assert result.records[0].initial_concurrence == 0.0
    assert result.summary["max_concurrence"] > 0.5


def test_final_spin_unnormalized():
    kin = cm_kinematics(1.0, 1.0, 0.0)
    raw = final_spin("psi-", kin)
    assert np.allclose(raw / np.linalg.norm(raw), scatter_spin("psi-", kin).amplitudes)


CARTESIAN_TRIPLET = np.array([
    [-1, 0, 0, 1],
    [1j, 0, 0, 1j],
    [0, 1, 1, 0],
]).T / np.sqrt(2)


def test_triplet_block_is_real_in_cartesian_basis(rng):
    from nrqed_entangle.born1 import first_born, random_elastic_kinematics

    for _ in range(50):
        total = first_born(random_elastic_kinematics(rng)).total
        block = CARTESIAN_TRIPLET.conj().T @ total @ CARTESIAN_TRIPLET
        assert np.abs(block.imag).max() <= 1e-13 * np.abs(block).max()


def test_bell_triplets_stay_maximally_entangled(rng):
    # Bell triplets are real vectors in the Cartesian basis and a real
    # amplitude keeps v.v = |v|^2, so their concurrence cannot drop
    for name in ("psi+", "phi+", "phi-"):
        chi = bell_state(name).amplitudes
        v = CARTESIAN_TRIPLET.conj().T @ chi
        assert np.abs((v / v[np.argmax(np.abs(v))]).imag).max() < 1e-15
        for _ in range(10):
            kin = cm_kinematics(rng.uniform(0.2, 3), rng.uniform(0.05, 3.1), rng.uniform(0, 6))
            assert concurrence(scatter_spin(chi, kin)) == pytest.approx(1.0, abs=1e-12)
