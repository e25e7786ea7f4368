import numpy as np
import pytest
from hypothesis import given, strategies as st

from nwl.errors import InvalidIndex, OutOfRange
from nwl.qmath import hermitian_eigenvalues, projector
from nwl.states import bell_state, meter_state, pure_system_state, werner_state

angles = st.floats(min_value=-10, max_value=10, allow_nan=False)
R2 = 1 / np.sqrt(2)


def test_pure_state_examples():
    np.testing.assert_allclose(pure_system_state((0, 0)), [1, 0, 0, 0])
    np.testing.assert_allclose(pure_system_state((np.pi / 4, 0)), [R2, 0, 0, R2], atol=1e-15)
    np.testing.assert_allclose(pure_system_state((np.pi / 4, np.pi / 2)), [R2, 0, 0, 1j * R2], atol=1e-15)


@given(angles, angles)
def test_pure_state_properties(theta, phi):
    psi = pure_system_state((theta, phi))
    assert abs(np.vdot(psi, psi) - 1) <= 1e-12
    np.testing.assert_allclose(np.abs(psi) ** 2, [np.cos(theta) ** 2, 0, 0, np.sin(theta) ** 2], atol=1e-12)
    np.testing.assert_allclose(pure_system_state((theta, phi + 2 * np.pi)), psi, atol=1e-12)


def test_bell_states():
    np.testing.assert_allclose(bell_state("psi-"), [0, R2, -R2, 0])
    np.testing.assert_allclose(bell_state("phi+"), [R2, 0, 0, R2])
    for k in ("phi+", "phi-", "psi+", "psi-"):
        assert abs(np.linalg.norm(bell_state(k)) - 1) <= 1e-15
    with pytest.raises(InvalidIndex):
        bell_state("omega")


def test_werner_examples():
    np.testing.assert_allclose(werner_state(0), np.eye(4) / 4)
    np.testing.assert_allclose(werner_state(1), projector(bell_state("psi-")), atol=1e-15)
    expected = np.array([
        [1 / 8, 0, 0, 0],
        [0, 3 / 8, -1 / 4, 0],
        [0, -1 / 4, 3 / 8, 0],
        [0, 0, 0, 1 / 8],
    ])
    np.testing.assert_allclose(werner_state(0.5), expected, atol=1e-15)


@given(st.floats(min_value=0, max_value=1))
def test_werner_is_a_state(p):
    rho = werner_state(p)
    assert np.max(np.abs(rho - rho.conj().T)) <= 1e-12
    assert abs(np.trace(rho) - 1) <= 1e-12
    assert hermitian_eigenvalues(rho)[-1] >= -1e-10


def test_werner_range():
    with pytest.raises(OutOfRange):
        werner_state(1.2)
    with pytest.raises(OutOfRange):
        werner_state(-0.1)


def test_meter_states():
    np.testing.assert_allclose(meter_state(1), [R2, 0, 0, R2])
    np.testing.assert_allclose(meter_state(2), [0, R2, R2, 0])
    np.testing.assert_array_equal(meter_state(1), bell_state("phi+"))
    np.testing.assert_array_equal(meter_state(2), bell_state("psi+"))
    with pytest.raises(InvalidIndex):
        meter_state(3)
