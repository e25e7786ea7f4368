"""Two-qubit entanglement measures and the Werner-state region map."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import OutOfRange
from .qmath import Y, hermitian_eigenvalues, kron_all, partial_transpose_b, psd_sqrt, validate_density

YY = kron_all(Y, Y)
ENTANGLED_TOL = 1e-9
LOCAL_BOUND = 1 / 3
NONLOCAL_BOUND = 1 / np.sqrt(2)


def ppt_min_eigenvalue(rho) -> float:
    """Smallest eigenvalue of the partial transpose; negative means entangled."""
    rho = validate_density(rho)
    return float(hermitian_eigenvalues(partial_transpose_b(rho))[-1])


def spin_flip(rho) -> np.ndarray:
    return YY @ np.conj(rho) @ YY


def concurrence(rho, literal: bool = False) -> float:
    """Wootters concurrence ``max(0, l1 - l2 - l3 - l4)``.

    The ``l_i`` are square roots of the eigenvalues of ``rho @ spin_flip(rho)``,
    obtained here as singular values of ``sqrt(rho) @ sqrt(spin_flip(rho))``
    (read off the Hermitian dilation) so no square root of a rounding-level
    eigenvalue enters the result.

    ``literal=True`` instead plugs the eigenvalues of ``spin_flip(rho)``
    directly into the same formula; kept for comparison only.
    """
    rho = validate_density(rho)
    if literal:
        lam = hermitian_eigenvalues(spin_flip(rho))
    else:
        root = psd_sqrt(rho)
        b = root @ spin_flip(root)
        dilation = np.block([[np.zeros((4, 4)), b], [b.conj().T, np.zeros((4, 4))]])
        lam = hermitian_eigenvalues(dilation)[:4]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


@dataclass(frozen=True)
class EntanglementReport:
    ppt_min_eigenvalue: float
    concurrence: float
    is_entangled: bool


def report(rho) -> EntanglementReport:
    ppt = ppt_min_eigenvalue(rho)
    return EntanglementReport(ppt, concurrence(rho), ppt < -ENTANGLED_TOL)


@dataclass(frozen=True)
class WernerRegion:
    region: str
    p: float

    @property
    def entangled(self) -> bool:
        return self.region != "I"

    @property
    def nonlocal_(self) -> bool:
        return self.region == "III"


def classify_werner(p: float) -> WernerRegion:
    """I: separable, II: entangled but CHSH-local, III: CHSH-violating."""
    if not 0.0 <= p <= 1.0:
        raise OutOfRange(f"Werner parameter must lie in [0, 1], got {p}")
    if p <= LOCAL_BOUND:
        return WernerRegion("I", p)
    if p <= NONLOCAL_BOUND:
        return WernerRegion("II", p)
    return WernerRegion("III", p)
