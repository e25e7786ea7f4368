"""Kraus/POVM description of the two entangled-meter measurements.

Each meter couples to the two-qubit system and is then read out in its
computational basis. Contracting the coupling unitary with the meter's
initial state gives four system operators ``K_mu = <mu| U |xi>``, one per
meter outcome ``mu``. Outcome labels are kept as bit strings ``"00".."11"``;
``display_label`` maps them to the arrow / circle-cross symbols.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .circuit import Circuit, circuit_unitary
from .errors import NotNormalized
from .qmath import dagger, expectation, validate_density
from .states import meter_state

LABELS = ("00", "01", "10", "11")
PARITY_SIGNS = (1, -1, -1, 1)
_SYMBOLS = {1: ("↑", "↓"), 2: ("∘", "×")}


@dataclass(frozen=True)
class KrausSet:
    labels: tuple[str, ...]
    operators: tuple[np.ndarray, ...]
    signs: tuple[int, ...]
    meter: int

    def povm(self) -> list[np.ndarray]:
        return [dagger(k) @ k for k in self.operators]

    def completeness_error(self) -> float:
        return float(np.max(np.abs(sum(self.povm()) - np.eye(self.operators[0].shape[0]))))

    def observable(self) -> np.ndarray:
        """``sum_i sign_i E_i``, the operator whose mean the meter reports."""
        return sum(s * e for s, e in zip(self.signs, self.povm()))


def display_label(label: str, meter: int) -> str:
    """``"01"`` on meter 1 reads as up-down, on meter 2 as circle-cross."""
    sym = _SYMBOLS[meter]
    return "".join(sym[int(b)] for b in label)


def meter_kraus(coupling: Circuit, xi: np.ndarray) -> list[np.ndarray]:
    """Kraus operators ``<mu| U |xi>`` for a 4-qubit coupling circuit.

    Qubits 0-1 of ``coupling`` are the system and 2-3 the meter.
    """
    u = circuit_unitary(coupling).reshape(4, 4, 4, 4)  # (sys', met', sys, met)
    return [np.einsum("abm,m->ab", u[:, mu, :, :], xi) for mu in range(4)]


def _zz_coupling() -> Circuit:
    c = Circuit(4)
    c.add("CX", 2, controls=[0])
    c.add("CX", 3, controls=[1])
    return c


def _xx_coupling() -> Circuit:
    c = Circuit(4)
    c.add("CX", 0, controls=[2])
    c.add("CX", 1, controls=[3])
    c.add("H", 2)
    c.add("H", 3)
    return c


def kraus_zz() -> KrausSet:
    """Meter 1 (Bell state ``|00>+|11>``, system-controlled CNOTs): measures ZZ."""
    ops = meter_kraus(_zz_coupling(), meter_state(1))
    return KrausSet(LABELS, tuple(ops), PARITY_SIGNS, 1)


def kraus_xx() -> KrausSet:
    """Meter 2 (``|01>+|10>``, meter-controlled CNOTs, Hadamard readout): measures XX."""
    ops = meter_kraus(_xx_coupling(), meter_state(2))
    return KrausSet(LABELS, tuple(ops), PARITY_SIGNS, 2)


def outcome_probabilities(rho, ks: KrausSet) -> np.ndarray:
    rho = validate_density(rho)
    return np.array([expectation(e, rho) for e in ks.povm()])


def expectation_from_probs(probs: Sequence[float], signs: Sequence[int] = PARITY_SIGNS) -> float:
    probs = np.asarray(probs, dtype=float)
    if abs(probs.sum() - 1) > 1e-6:
        raise NotNormalized(f"probabilities sum to {probs.sum():.6g}")
    return float(np.dot(signs, probs))


def post_measurement_state(rho, ks: KrausSet) -> np.ndarray:
    """Unconditioned state ``sum_mu K rho K^dagger`` after the meter readout."""
    rho = validate_density(rho)
    return sum(k @ rho @ dagger(k) for k in ks.operators)


@dataclass(frozen=True)
class ProtocolResult:
    zz: float
    xx: float
    rho1: np.ndarray
    rho2: np.ndarray


def run_protocol_analytic(rho, xx_on: str = "rho") -> ProtocolResult:
    """Meter 1 then meter 2 on ``rho``.

    ``xx_on="rho"`` evaluates the XX statistics on the input state, as in the
    circuit where both meters couple before any readout; ``"rho1"`` uses the
    state left by the first meter instead.
    """
    if xx_on not in ("rho", "rho1"):
        raise ValueError(f"xx_on must be 'rho' or 'rho1', got {xx_on!r}")
    kz, kx = kraus_zz(), kraus_xx()
    rho = validate_density(rho)
    zz = expectation_from_probs(outcome_probabilities(rho, kz), kz.signs)
    rho1 = post_measurement_state(rho, kz)
    xx = expectation_from_probs(outcome_probabilities(rho if xx_on == "rho" else rho1, kx), kx.signs)
    rho2 = post_measurement_state(rho1, kx)
    return ProtocolResult(zz, xx, rho1, rho2)
