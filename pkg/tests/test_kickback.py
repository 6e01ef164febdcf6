"""Control-register kickback circuit vs the direct isotypic projector."""

import math

import numpy as np
import pytest

from harmonic_sieve.characters import character_table
from harmonic_sieve.groups import Cyclic, Dihedral, Symmetric, build_group
from harmonic_sieve.kickback import (
    build_kickback,
    control_projector,
    control_projector_fourier,
    controlled_g_action,
    diagonal_projector,
    kickback_measure,
    outcome_probability,
    uniform_control_state,
    verify_intertwining,
)

FIXTURES = [
    ("Z2-sign", Cyclic(2), (1,)),
    ("D4-2a-2a", Dihedral(4), (4, 4)),
    ("S3-2a-2a", Symmetric(3), (2, 2)),
    ("S3-2a-1b", Symmetric(3), (2, 1)),
]


def random_states(dim, count, seed):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        yield v / np.linalg.norm(v)


def test_trivial_targets_make_identity(s3):
    circuit = build_kickback(s3, (0, 0))
    state = np.zeros(circuit.total_dim, dtype=complex)
    state[3] = 1.0
    assert np.allclose(controlled_g_action(circuit, state), state)


def test_control_at_identity_leaves_target(d4):
    circuit = build_kickback(d4, (4,))
    phi = next(random_states(2, 1, 0))
    state = np.zeros(circuit.total_dim, dtype=complex)
    state[: circuit.target_dim] = phi  # control = |identity>
    out = controlled_g_action(circuit, state).reshape(d4.order, 2)
    assert np.allclose(out[0], phi)
    assert np.max(np.abs(out[1:])) == 0.0


def test_z2_phase_kickback(z2):
    circuit = build_kickback(z2, (1,))
    psi = uniform_control_state(circuit, np.array([1.0 + 0j]))
    out = controlled_g_action(circuit, psi)
    # |g> picks up (-1)^g: the uniform control flips to the sign vector
    assert np.allclose(out * math.sqrt(2), [1.0, -1.0])
    assert abs(outcome_probability(circuit, 1, np.array([1.0 + 0j])) - 1.0) < 1e-12
    assert outcome_probability(circuit, 0, np.array([1.0 + 0j])) < 1e-12


def test_controlled_action_preserves_norm(s3):
    circuit = build_kickback(s3, (2, 2))
    for phi in random_states(circuit.total_dim, 10, 1):
        assert abs(np.linalg.norm(controlled_g_action(circuit, phi)) - 1.0) < 1e-12


@pytest.mark.parametrize("name,spec,sigmas", FIXTURES, ids=[f[0] for f in FIXTURES])
def test_intertwining(name, spec, sigmas):
    g = build_group(spec)
    circuit = build_kickback(g, sigmas)
    assert verify_intertwining(circuit) < 1e-10


@pytest.mark.parametrize("name,spec,sigmas", FIXTURES, ids=[f[0] for f in FIXTURES])
def test_outcome_matches_diagonal_projector(name, spec, sigmas):
    g = build_group(spec)
    ct = character_table(g)
    circuit = build_kickback(g, sigmas)
    projectors = {eta: diagonal_projector(circuit, eta) for eta in range(ct.num_irreps)}
    for phi in random_states(circuit.target_dim, 100, 42):
        total = 0.0
        for eta in range(ct.num_irreps):
            p = outcome_probability(circuit, eta, phi)
            direct = float(np.real(np.vdot(projectors[eta] @ phi, projectors[eta] @ phi)))
            assert abs(p - direct) < 1e-10
            total += p
        assert abs(total - 1.0) < 1e-10


def test_fourier_route_matches_characters(d4, s3):
    for g, sigmas in [(d4, (4, 4)), (s3, (2, 2))]:
        circuit = build_kickback(g, sigmas)
        ct = character_table(g)
        for eta in range(ct.num_irreps):
            a = control_projector(circuit, eta)
            b = control_projector_fourier(circuit, eta)
            assert np.max(np.abs(a - b)) < 1e-10
        for phi in random_states(circuit.target_dim, 5, 7):
            for eta in range(ct.num_irreps):
                assert (
                    abs(
                        outcome_probability(circuit, eta, phi)
                        - outcome_probability(circuit, eta, phi, route="fourier")
                    )
                    < 1e-10
                )


def test_certain_outcomes_on_isotypic_inputs(s3):
    """Inputs inside one isotypic component are classified with certainty."""
    circuit = build_kickback(s3, (2, 2))
    ct = character_table(s3)
    rng = np.random.default_rng(5)
    for eta in range(ct.num_irreps):
        proj = diagonal_projector(circuit, eta)
        v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        inside = proj @ v
        norm = np.linalg.norm(inside)
        if norm < 1e-9:
            continue
        inside = inside / norm
        assert abs(outcome_probability(circuit, eta, inside) - 1.0) < 1e-10
        for other in range(ct.num_irreps):
            if other != eta:
                assert outcome_probability(circuit, other, inside) < 1e-10


def test_measure_outcome_and_post_state(d4):
    circuit = build_kickback(d4, (4, 4))
    phi = next(random_states(4, 1, 12))
    outcome = kickback_measure(circuit, 1, phi, seed=3)
    assert 0.0 <= outcome.probability <= 1.0
    assert abs(np.linalg.norm(outcome.post_state) - 1.0) < 1e-9
    # post state lies inside / outside the control eta-block accordingly
    proj = control_projector(circuit, 1)
    grid = outcome.post_state.reshape(d4.order, circuit.target_dim)
    projected = (proj @ grid).ravel()
    if outcome.observed:
        assert np.allclose(projected, outcome.post_state, atol=1e-9)
    else:
        assert np.max(np.abs(projected)) < 1e-9


def test_measure_deterministic_with_seed(s3):
    circuit = build_kickback(s3, (2, 2))
    phi = next(random_states(4, 1, 8))
    a = kickback_measure(circuit, 2, phi, seed=21)
    b = kickback_measure(circuit, 2, phi, seed=21)
    assert a.observed == b.observed
    assert a.probability == b.probability
    assert np.array_equal(a.post_state, b.post_state)


def test_measure_rejects_unnormalized(s3):
    circuit = build_kickback(s3, (2,))
    with pytest.raises(ValueError):
        kickback_measure(circuit, 0, np.array([2.0, 0.0]), seed=0)
