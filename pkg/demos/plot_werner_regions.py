"""
Werner states: separable, entangled, nonlocal
=============================================

p |psi-><psi-| + (1 - p) I/4 is separable up to p = 1/3 and violates CHSH
only above p = 1/sqrt2.
"""

import numpy as np

from nwl import (
    chsh_expectation, classify_werner, concurrence, ppt_min_eigenvalue, run_protocol_analytic, werner_state,
)

for p in np.linspace(0, 1, 11):
    rho = werner_state(p)
    res = run_protocol_analytic(rho)
    print(
        f"p={p:.1f}  region={classify_werner(p).region:<3} S={chsh_expectation(rho):.4f}  "
        f"PPT={ppt_min_eigenvalue(rho):+.4f}  C={concurrence(rho):.4f}  C(rho2)={concurrence(res.rho2):.4f}"
    )

# the two boundaries
for p in (1 / 3, 1 / np.sqrt(2)):
    print(f"p={p:.6f}: region {classify_werner(p).region}, S = {chsh_expectation(werner_state(p)):.12f}")
