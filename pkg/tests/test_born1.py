import numpy as np
import pytest

from nrqed_entangle.born1 import (
    first_born,
    random_elastic_kinematics,
    selection_rule_report,
    transition_amplitude,
)
from nrqed_entangle.kinematics import ForwardSingularity, cm_kinematics, make_state
from nrqed_entangle.spin_algebra import P12, bell_state, commutator, sector_blocks

from conftest import brute_amplitude

SINGLET = bell_state("psi-").amplitudes


def test_matches_brute_force_assembly(rng):
    for _ in range(20):
        k, th, ph = rng.uniform(0.2, 3), rng.uniform(0.05, 3.1), rng.uniform(0, 2 * np.pi)
        got = first_born(cm_kinematics(k, th, ph)).total
        want = brute_amplitude(k, th, ph)
        assert np.allclose(got, want, rtol=0, atol=1e-13 * np.linalg.norm(want))


def test_block_diagonal_random_frames(rng):
    for _ in range(50):
        amp = first_born(random_elastic_kinematics(rng))
        b = sector_blocks(amp.total)
        scale = np.linalg.norm(amp.total, 2)
        assert np.linalg.norm(b["st"]) <= 1e-13 * scale
        assert np.linalg.norm(b["ts"]) <= 1e-13 * scale
        assert np.linalg.norm(commutator(amp.total, P12)) <= 1e-13 * scale


def test_exchange_term_is_kernel_at_swapped_transfer(rng):
    kin = random_elastic_kinematics(rng)
    amp = first_born(kin)
    assert np.allclose(amp.exchange, first_born(kin.exchanged()).direct)


def test_singlet_and_triplet_signs():
    # singlet picks up direct + exchange, triplet direct - exchange
    kin = cm_kinematics(1.0, 0.8, 0.0)
    amp = first_born(kin, alpha=0.0)
    qa, qb = kin.q @ kin.q, kin.q_ex @ kin.q_ex
    assert np.vdot(SINGLET, amp.total @ SINGLET) == pytest.approx(4 * np.pi * (1 / qa + 1 / qb))
    up = np.array([1, 0, 0, 0])
    assert np.vdot(up, amp.total @ up) == pytest.approx(4 * np.pi * (1 / qa - 1 / qb))


def test_mott_zero_at_right_angle():
    amp = first_born(cm_kinematics(1.0, np.pi / 2, 0.0), alpha=0.0)
    assert np.linalg.norm(sector_blocks(amp.total)["tt"]) < 1e-14


def test_amplitude_is_linear(rng):
    amp = first_born(cm_kinematics(0.9, 1.2, 0.4)).total
    a, b = rng.normal(size=4) + 1j * rng.normal(size=4), rng.normal(size=4)
    assert np.allclose(amp @ (2j * a + 3 * b), 2j * (amp @ a) + 3 * (amp @ b))


def test_forward_refused():
    with pytest.raises(ForwardSingularity):
        first_born(cm_kinematics(1.0, 0.0))
    with pytest.raises(ForwardSingularity):
        first_born(cm_kinematics(1.0, np.pi))


def test_transition_amplitude():
    kin = cm_kinematics(1.0, 1.0, 0.2)
    state = make_state(3, (kin.p1_in, kin.p2_in))
    amp = transition_amplitude(state, SINGLET, kin)
    assert amp == pytest.approx(np.vdot(SINGLET, first_born(kin).total @ SINGLET))
    assert transition_amplitude(state, bell_state("phi+").amplitudes, kin) == pytest.approx(0, abs=1e-14)
    with pytest.raises(ValueError, match="exchange symmetry"):
        transition_amplitude(state, np.array([0, 1, 0, 0]), kin)
    with pytest.raises(ValueError, match="normalized"):
        transition_amplitude(state, 2 * SINGLET, kin)
    with pytest.raises(ValueError, match="momenta"):
        transition_amplitude(make_state(3, ([2, 0, 0], [-2, 0, 0])), SINGLET, kin)
    with pytest.raises(TypeError):
        transition_amplitude(SINGLET, SINGLET, kin)


def test_selection_report_is_seeded():
    a = selection_rule_report(20, seed=3)
    b = selection_rule_report(20, seed=3)
    assert a == b
    assert a.passed
    assert a.as_dict()["n_samples"] == 20
    with pytest.raises(ValueError):
        selection_rule_report(0)


def test_selection_rule_high_momentum():
    report = selection_rule_report(30, momentum_scale=50.0, seed=1)
    assert report.passed
