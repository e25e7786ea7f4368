"""
CHSH value over the pure-state family
=====================================

The state cos(theta)|00> + exp(i phi) sin(theta)|11> is measured with the
maximal-violation CHSH settings. The value depends only on the product
cos(phi) sin(2 theta).
"""

import numpy as np

from nwl import chsh_expectation, concurrence, ppt_min_eigenvalue, projector, pure_system_state, violates_lhv

# scan theta at a few phases
thetas = np.linspace(0, np.pi, 9)
for phi in (0, np.pi / 4, np.pi / 2):
    print(f"phi = {phi:.3f}")
    for theta in thetas:
        rho = projector(pure_system_state((theta, phi)))
        s = chsh_expectation(rho)
        mark = "violates" if violates_lhv(s) else ""
        print(f"  theta={theta:.3f}  S={s:+.4f}  C={concurrence(rho):.3f}  PPT={ppt_min_eigenvalue(rho):+.3f}  {mark}")

# at phi = pi/2 the state is still entangled but S stays at -sqrt2
rho = projector(pure_system_state((np.pi / 4, np.pi / 2)))
print("theta=pi/4, phi=pi/2:", chsh_expectation(rho), concurrence(rho))
