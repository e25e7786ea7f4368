"""Variational entanglement witness.

A witness family ``W(alpha)`` is trained by minimizing ``Tr[W(alpha) rho]``
while ``Tr[W(alpha) rho_s]`` is pushed to zero on a set of separable
reference states. The equality constraints enter either as an
absolute-value penalty (see :func:`penalized_objective`) or, by default, as linear
constraints handed to the optimizer. The cost is linear in ``alpha`` and therefore unbounded below, so
``|alpha| <= norm_cap`` is imposed; with the default cap ``sqrt(2)`` the
CHSH-form witness at ``alpha = (1, 1)`` is exactly the CHSH operator, which
makes witness values directly comparable to CHSH values.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from .circuit import make_rng
from .errors import LengthMismatch
from .optim import cobyla_minimize
from .qmath import X, Y, Z, expectation, kron_all, validate_density
from .states import basis_projectors

CHSH_FORM = "chsh"
PAULI_FORM = "pauli"
FAMILIES = (CHSH_FORM, PAULI_FORM)

XX, YY, ZZ = kron_all(X, X), kron_all(Y, Y), kron_all(Z, Z)
_TERMS = {
    CHSH_FORM: (-np.sqrt(2) * ZZ, -np.sqrt(2) * XX),
    PAULI_FORM: (XX, YY, ZZ),
}


@dataclass(frozen=True)
class WitnessParams:
    family: str
    alpha: tuple[float, ...]

    def __post_init__(self):
        if self.family not in _TERMS:
            raise LengthMismatch(f"unknown witness family {self.family!r}; use one of {FAMILIES}")
        object.__setattr__(self, "alpha", tuple(float(a) for a in self.alpha))
        if len(self.alpha) != len(_TERMS[self.family]):
            raise LengthMismatch(
                f"{self.family} witness takes {len(_TERMS[self.family])} parameters, got {len(self.alpha)}"
            )


@dataclass
class TrainConfig:
    initial_alpha: tuple[float, ...] | None = None
    max_evals: int = 2000
    tol: float = 1e-6
    penalty_weight: float = 10.0
    norm_cap: float = float(np.sqrt(2))
    seed: int = 0
    rhobeg: float = 0.5

    def __post_init__(self):
        if self.tol <= 0 or self.penalty_weight <= 0 or self.norm_cap <= 0:
            raise ValueError("tol, penalty_weight and norm_cap must be positive")
        if self.max_evals < 1:
            raise ValueError("max_evals must be positive")


@dataclass
class TrainResult:
    family: str
    alpha_star: list[float]
    witness_value: float
    constraint_residuals: list[float]
    evals_used: int
    provenance: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def witness_matrix(params: WitnessParams) -> np.ndarray:
    """CHSH form ``-sqrt2 (a1 ZZ + a2 XX)``; Pauli form ``a1 XX + a2 YY + a3 ZZ``."""
    return sum(a * t for a, t in zip(params.alpha, _TERMS[params.family]))


def cost(params: WitnessParams, rho) -> float:
    return expectation(witness_matrix(params), validate_density(rho))


def default_separable_refs(include_maximally_mixed: bool = False) -> list[np.ndarray]:
    refs = basis_projectors()
    if include_maximally_mixed:
        refs.append(np.eye(4, dtype=complex) / 4)
    return refs


def penalized_objective(params: WitnessParams, rho, separable_refs: Sequence, cfg: TrainConfig) -> float:
    """Cost plus ``w * sum_s |cost on rho_s|`` plus ``w * max(0, |alpha| - cap)**2``."""
    w = witness_matrix(params)
    value = expectation(w, rho)
    value += cfg.penalty_weight * sum(abs(expectation(w, s)) for s in separable_refs)
    excess = max(0.0, float(np.linalg.norm(params.alpha)) - cfg.norm_cap)
    return value + cfg.penalty_weight * excess**2


def initial_alpha(family: str, cfg: TrainConfig) -> tuple[float, ...]:
    if cfg.initial_alpha is not None:
        return tuple(float(a) for a in cfg.initial_alpha)
    if family == CHSH_FORM:
        return (4.0, 0.0)
    return tuple(make_rng(cfg.seed).uniform(-1.0, 1.0, size=len(_TERMS[family])).tolist())


def train(
    rho,
    family: str = CHSH_FORM,
    separable_refs: Sequence | None = None,
    cfg: TrainConfig | None = None,
    mode: str = "constrained",
) -> TrainResult:
    """Fit ``alpha`` for ``rho`` and report the trained witness value.

    ``mode="constrained"`` minimizes the plain cost with each separable
    reference as a pair of linear inequalities ``+-Tr[W rho_s] >= 0`` and the
    norm cap as a further inequality. The cost is smooth there, so the linear
    models are exact and the constraints are met to rounding.

    ``mode="penalty"`` minimizes :func:`penalized_objective` instead, keeping
    only the norm cap as a hard constraint. The absolute-value penalty has a
    kink exactly on the constraint set that the linear models cannot
    represent, so this mode may stop short of the optimum; it is kept for
    comparison.
    """
    if mode not in ("constrained", "penalty"):
        raise ValueError(f"mode must be 'constrained' or 'penalty', got {mode!r}")
    cfg = cfg or TrainConfig()
    rho = validate_density(rho)
    refs = default_separable_refs() if separable_refs is None else [validate_density(s) for s in separable_refs]
    alpha0 = initial_alpha(family, cfg)
    WitnessParams(family, alpha0)  # length check
    terms = _TERMS[family]
    # cost and reference values are linear in alpha: precompute the coefficients
    rho_coef = np.array([expectation(t, rho) for t in terms])
    ref_coef = np.array([[expectation(t, s) for t in terms] for s in refs]).reshape(len(refs), len(terms))

    def within_cap(a):
        return cfg.norm_cap - float(np.linalg.norm(a))

    if mode == "constrained":

        def objective(a):
            return float(rho_coef @ a)

        def separable(a):
            v = ref_coef @ a
            return np.concatenate([v, -v])

        constraints = [within_cap, separable]
    else:

        def objective(a):
            return penalized_objective(WitnessParams(family, a), rho, refs, cfg)

        constraints = [within_cap]

    alpha, _, evals = cobyla_minimize(objective, alpha0, cfg, constraints=constraints, rhobeg=cfg.rhobeg)
    # the optimizer may end a rounding step outside the ball; the reference
    # constraints are homogeneous, so pulling back radially keeps them intact
    norm = float(np.linalg.norm(alpha))
    if norm > cfg.norm_cap:
        alpha = alpha * (cfg.norm_cap / norm)
    best = WitnessParams(family, alpha)
    wm = witness_matrix(best)
    return TrainResult(
        family=family,
        alpha_star=list(best.alpha),
        witness_value=expectation(wm, rho),
        constraint_residuals=[abs(expectation(wm, s)) for s in refs],
        evals_used=evals,
        provenance={
            "mode": mode,
            "seed": cfg.seed,
            "initial_alpha": list(alpha0),
            "norm_cap": cfg.norm_cap,
            "penalty_weight": cfg.penalty_weight,
            "penalized_objective": penalized_objective(best, rho, refs, cfg),
            "tol": cfg.tol,
            "max_evals": cfg.max_evals,
            "n_separable_refs": len(refs),
        },
    )
