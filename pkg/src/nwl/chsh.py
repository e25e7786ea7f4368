"""CHSH operator, its expectation value and the local-realism bound."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidObservable, OutOfPhysicalRange
from .qmath import X, Z, expectation, is_hermitian, tensor_product, validate_density

LHV_BOUND = 2.0
TSIRELSON = 2 * np.sqrt(2)
_TOL = 1e-9


def _default_bob():
    return (-(Z + X) / np.sqrt(2), (Z - X) / np.sqrt(2))


@dataclass(frozen=True)
class ChshSettings:
    """Alice measures ``alice[0], alice[1]``; Bob ``bob[0], bob[1]``.

    Defaults are the maximal-violation choice X, Z and P = -(Z+X)/sqrt2,
    Q = (Z-X)/sqrt2.
    """

    alice: tuple[np.ndarray, np.ndarray] = (X, Z)
    bob: tuple[np.ndarray, np.ndarray] = field(default_factory=_default_bob)

    def validate(self):
        for op in (*self.alice, *self.bob):
            op = np.asarray(op, dtype=complex)
            if op.shape != (2, 2) or not is_hermitian(op):
                raise InvalidObservable("observables must be 2x2 Hermitian")
            if np.max(np.abs(op @ op - np.eye(2))) > 1e-12:
                raise InvalidObservable("observables must square to the identity")


def chsh_operator(s: ChshSettings | None = None) -> np.ndarray:
    """``(A1 + A2) (x) B1 + (A1 - A2) (x) B2``."""
    s = s or ChshSettings()
    s.validate()
    a1, a2 = s.alice
    b1, b2 = s.bob
    return tensor_product(a1 + a2, b1) + tensor_product(a1 - a2, b2)


def chsh_expectation(rho, s: ChshSettings | None = None) -> float:
    return expectation(chsh_operator(s), validate_density(rho))


def violates_lhv(value: float) -> bool:
    if abs(value) > TSIRELSON + _TOL:
        raise OutOfPhysicalRange(f"|S| = {abs(value):.6g} exceeds the quantum bound {TSIRELSON:.6g}")
    return abs(value) > LHV_BOUND + _TOL
