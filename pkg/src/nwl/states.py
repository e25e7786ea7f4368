"""Constructors for the system, Bell, Werner and meter states."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidIndex, OutOfRange
from .qmath import projector

_R2 = 1 / np.sqrt(2)


@dataclass(frozen=True)
class StateParams:
    theta: float
    phi: float


def pure_system_state(params: StateParams | tuple[float, float]) -> np.ndarray:
    """``cos(theta)|00> + exp(i phi) sin(theta)|11>``."""
    theta, phi = (params.theta, params.phi) if isinstance(params, StateParams) else params
    return np.array([np.cos(theta), 0, 0, np.exp(1j * phi) * np.sin(theta)], dtype=complex)


_BELL = {
    "phi+": np.array([_R2, 0, 0, _R2], dtype=complex),
    "phi-": np.array([_R2, 0, 0, -_R2], dtype=complex),
    "psi+": np.array([0, _R2, _R2, 0], dtype=complex),
    "psi-": np.array([0, _R2, -_R2, 0], dtype=complex),
}


def bell_state(kind: str) -> np.ndarray:
    """One of ``phi+``, ``phi-``, ``psi+``, ``psi-``."""
    try:
        return _BELL[kind.lower()].copy()
    except KeyError:
        raise InvalidIndex(f"unknown Bell state {kind!r}; use one of {sorted(_BELL)}") from None


def werner_state(p: float) -> np.ndarray:
    """``p |psi-><psi-| + (1 - p) I / 4`` for ``0 <= p <= 1``."""
    if not 0.0 <= p <= 1.0:
        raise OutOfRange(f"Werner parameter must lie in [0, 1], got {p}")
    return p * projector(_BELL["psi-"]) + (1 - p) / 4 * np.eye(4, dtype=complex)


def meter_state(index: int) -> np.ndarray:
    """Initial meter state: 1 gives ``(|00>+|11>)/sqrt2``, 2 gives ``(|01>+|10>)/sqrt2``."""
    if index == 1:
        return _BELL["phi+"].copy()
    if index == 2:
        return _BELL["psi+"].copy()
    raise InvalidIndex(f"meter index must be 1 or 2, got {index}")


def basis_projectors() -> list[np.ndarray]:
    """``|00><00|, |01><01|, |10><10|, |11><11|``."""
    out = []
    for k in range(4):
        e = np.zeros(4, dtype=complex)
        e[k] = 1
        out.append(projector(e))
    return out
