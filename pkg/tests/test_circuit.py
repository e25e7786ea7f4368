import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nwl.circuit import (
    Circuit, Gate, OutcomeCounts, bitstrings, build_protocol_circuit, circuit_unitary,
    exact_distribution, marginalize, marginalize_probs, sample_counts, simulate_statevector,
    system_readout_circuit, u3_matrix,
)
from nwl.errors import EmptyCounts, InvalidIndex
from nwl.states import meter_state

import oracles
from conftest import random_unitary

angles = st.floats(min_value=-2 * np.pi, max_value=2 * np.pi, allow_nan=False)


def test_u3_examples():
    np.testing.assert_allclose(u3_matrix(0, 0, 0), np.eye(2), atol=1e-15)
    # (pi, 0, pi): [[0, 1], [1, 0]] with this sign convention
    np.testing.assert_allclose(u3_matrix(np.pi, 0, np.pi), [[0, 1], [1, 0]], atol=1e-15)
    t, p = 0.37, 1.9
    np.testing.assert_allclose(u3_matrix(2 * t, p, 0) @ [1, 0], [np.cos(t), np.exp(1j * p) * np.sin(t)], atol=1e-15)


@given(angles, angles, angles)
def test_u3_matches_oracle_and_is_unitary(a, b, c):
    u = u3_matrix(a, b, c)
    np.testing.assert_allclose(u, oracles.u3(a, b, c), atol=1e-15)
    assert np.max(np.abs(u.conj().T @ u - np.eye(2))) <= 1e-12


@pytest.mark.parametrize("name", ["I", "X", "Y", "Z", "H", "S", "SDG", "CX", "CY", "CZ"])
def test_gate_matrices_unitary(name):
    controls = (1,) if name.startswith("C") else ()
    m = Gate(name, (0,), controls).matrix()
    assert np.max(np.abs(m.conj().T @ m - np.eye(2))) <= 1e-12


def test_gate_validation():
    with pytest.raises(InvalidIndex):
        Gate("CX", (1,), (1,))
    with pytest.raises(InvalidIndex):
        Gate("FOO", (0,)).matrix()
    with pytest.raises(InvalidIndex):
        Circuit(2).add("X", 2)
    with pytest.raises(InvalidIndex):
        Circuit(3, measured_qubits=(0, 0))


def test_protocol_circuit_shape():
    c = build_protocol_circuit((0.3, 0.1))
    assert len(c.gates) == 13
    assert c.measured_qubits == (2, 3, 4, 5)
    assert c.n_qubits == 6
    assert c.gates[0].name == "U3" and c.gates[0].params == (0.6, 0.1, 0.0)


def test_simulate_examples():
    np.testing.assert_array_equal(simulate_statevector(Circuit(3)), np.eye(8)[0])
    np.testing.assert_allclose(simulate_statevector(Circuit(1).add("H", 0)), [2**-0.5, 2**-0.5])


def test_pre_interaction_system_state():
    full = build_protocol_circuit((0, 0))
    prep = Circuit(6, full.gates[:7])
    psi = simulate_statevector(prep).reshape(4, 16)
    # system part is |00>: all amplitude sits in the first row
    assert np.linalg.norm(psi[1:]) <= 1e-15


def test_meter2_preparation_yields_meter_state():
    c = Circuit(2).add("H", 0).add("X", 1).add("CX", 1, controls=[0])
    np.testing.assert_allclose(simulate_statevector(c), meter_state(2), atol=1e-15)


def test_simulator_matches_bruteforce_on_random_circuits(rng):
    names = ["X", "Y", "Z", "H", "S", "SDG", "U3", "CX", "CY", "CZ"]
    for _ in range(20):
        n = int(rng.integers(1, 6))
        c = Circuit(n)
        full = np.eye(2**n, dtype=complex)
        for _ in range(15):
            name = names[int(rng.integers(len(names)))]
            if name.startswith("C") and n < 2:
                continue
            t = int(rng.integers(n))
            ctrls = []
            if name.startswith("C"):
                ctrls = [int(rng.choice([q for q in range(n) if q != t]))]
            params = tuple(rng.uniform(-np.pi, np.pi, 3)) if name == "U3" else ()
            c.add(name, t, ctrls, params)
            full = oracles.gate_full(name, t, tuple(ctrls), params, n) @ full
        np.testing.assert_allclose(circuit_unitary(c), full, atol=1e-12)
        psi = simulate_statevector(c)
        assert abs(np.linalg.norm(psi) - 1) <= 1e-12


def test_simulate_initial_state(rng):
    u = random_unitary(rng, 2)
    psi0 = u[:, 0]
    c = Circuit(1).add("H", 0)
    np.testing.assert_allclose(simulate_statevector(c, psi0), oracles.GATES["H"] @ psi0, atol=1e-15)


def test_exact_distribution_pi_over_4():
    dist = exact_distribution(build_protocol_circuit((np.pi / 4, 0)))
    support = {"0000", "0011", "1100", "1111"}
    for k, v in dist.items():
        assert v == pytest.approx(0.25 if k in support else 0.0, abs=1e-12)


def test_exact_distribution_matches_bruteforce():
    for theta in np.linspace(0, np.pi, 5):
        for phi in np.linspace(0, np.pi, 3):
            dist = exact_distribution(build_protocol_circuit((theta, phi)))
            ref = oracles.marginal(oracles.protocol_state(theta, phi), [2, 3, 4, 5], 6)
            np.testing.assert_allclose(list(dist.values()), ref, atol=1e-12)
            assert list(dist) == bitstrings(4)


def test_marginals_on_grid_and_independence():
    for theta in np.linspace(0, np.pi, 11):
        for phi in np.linspace(0, np.pi, 5):
            dist = exact_distribution(build_protocol_circuit((theta, phi)))
            p1, p2 = marginalize_probs(dist)
            c = np.cos(phi) * np.sin(2 * theta)
            np.testing.assert_allclose(p1, [0.5, 0, 0, 0.5], atol=1e-10)
            np.testing.assert_allclose(p2, [(1 + c) / 4, (1 - c) / 4, (1 - c) / 4, (1 + c) / 4], atol=1e-10)
            joint = np.array(list(dist.values())).reshape(4, 4)
            np.testing.assert_allclose(joint, np.outer(p1, p2), atol=1e-10)


def test_sample_counts_at_origin():
    c = build_protocol_circuit((0, 0))
    oc = sample_counts(c, 10000, 0)
    assert sum(oc.counts.values()) == 10000
    sigma = np.sqrt(10000 * (1 / 8) * (7 / 8))
    for k, v in oc.counts.items():
        if k[:2] in ("00", "11"):
            assert abs(v - 1250) <= 5 * sigma
        else:
            assert v == 0


def test_sample_counts_determinism_and_single_shot():
    c = build_protocol_circuit((0.4, 0.2))
    a, b = sample_counts(c, 500, 42), sample_counts(c, 500, 42)
    assert a == b
    assert sample_counts(c, 500, 43) != a
    one = sample_counts(c, 1, 5)
    assert sorted(one.counts.values())[-1] == 1 and sum(one.counts.values()) == 1


def test_sample_counts_large_seed():
    c = build_protocol_circuit((0.4, 0.2))
    assert sample_counts(c, 10, 2**64 + 3) == OutcomeCounts(10, 2**64 + 3, sample_counts(c, 10, 3).counts)


def test_sample_rejects_zero_shots():
    with pytest.raises(ValueError):
        sample_counts(Circuit(1, measured_qubits=(0,)), 0, 0)


def test_marginalize_examples():
    p1, p2 = marginalize(OutcomeCounts(7, 0, {"0000": 7}))
    np.testing.assert_array_equal(p1, [1, 0, 0, 0])
    np.testing.assert_array_equal(p2, [1, 0, 0, 0])
    uniform = {f"{a}{k}": 10 for a in ("00", "11") for k in ("00", "01", "10", "11")}
    p1, p2 = marginalize(OutcomeCounts(80, 0, uniform))
    np.testing.assert_allclose(p1, [0.5, 0, 0, 0.5])
    np.testing.assert_allclose(p2, [0.25] * 4)
    _, p2 = marginalize_probs(exact_distribution(build_protocol_circuit((np.pi / 4, 0))))
    np.testing.assert_allclose(p2, [0.5, 0, 0, 0.5], atol=1e-12)


def test_marginalize_errors():
    with pytest.raises(EmptyCounts):
        marginalize(OutcomeCounts(0, 0, {}))
    with pytest.raises(EmptyCounts):
        marginalize(OutcomeCounts(5, 0, {"0000": 3}))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**63), st.integers(1, 2000))
def test_sampled_marginals_normalized(seed, shots):
    oc = sample_counts(build_protocol_circuit((0.7, 1.3)), shots, seed)
    p1, p2 = marginalize(oc)
    assert abs(p1.sum() - 1) <= 1e-12 and abs(p2.sum() - 1) <= 1e-12


def test_text_round_trip():
    c = build_protocol_circuit((0.123456789, -2.5))
    text = c.to_text()
    back = Circuit.from_text(text)
    assert back == c
    assert back.to_text() == text
    assert text.splitlines()[2].startswith("U3 0 - ")


def test_text_rejects_garbage():
    with pytest.raises(ValueError):
        Circuit.from_text("X 0 -\n")


def test_system_readout_matches_rotated_oracle():
    theta, phi = 0.6, 0.9
    base = oracles.protocol_state(theta, phi)
    for bases in ("ZZ", "XY", "YX"):
        c = system_readout_circuit((theta, phi), bases)
        dist = exact_distribution(c)
        rot = {"Z": np.eye(2), "X": oracles.GATES["H"], "Y": oracles.GATES["H"] @ oracles.GATES["SDG"]}
        psi = oracles.embed({0: rot[bases[0]], 1: rot[bases[1]]}, 6) @ base
        ref = oracles.marginal(psi, [2, 3, 4, 5, 0, 1], 6)
        np.testing.assert_allclose(list(dist.values()), ref, atol=1e-12)
    with pytest.raises(InvalidIndex):
        system_readout_circuit((0, 0), "QZ")
