"""
Training a variational entanglement witness
===========================================

The CHSH-form witness -sqrt2 (a1 ZZ + a2 XX) is trained so that it vanishes
on the computational-basis product states. Those constraints pin a1 to 0,
and with |a| <= sqrt2 the optimum is -2 |<XX>|.
"""

import numpy as np

from nwl import TrainConfig, projector, pure_system_state, train, werner_state

for theta in np.linspace(0, np.pi / 2, 5):
    res = train(projector(pure_system_state((theta, 0))))
    print(f"theta={theta:.3f}  W={res.witness_value:+.6f}  alpha={np.round(res.alpha_star, 6)}  evals={res.evals_used}")

# the norm cap sets the scale of the witness value
rho = projector(pure_system_state((np.pi / 4, 0)))
for cap in (0.5, 1.0, np.sqrt(2), 2.0):
    print(f"cap={cap:.3f}  W={train(rho, cfg=TrainConfig(norm_cap=cap)).witness_value:+.6f}")

# three-parameter Pauli witness on Werner states
for p in (0.0, 0.2, 0.5, 0.9):
    res = train(werner_state(p), "pauli", cfg=TrainConfig(seed=1))
    print(f"Werner p={p:.1f}  W={res.witness_value:+.6f}")

# the penalty formulation stalls on its kink; kept for comparison
res = train(rho, mode="penalty")
print("penalty mode:", res.witness_value, res.evals_used)
