"""
What the meters do to the system
================================

The ZZ meter leaves the pure family untouched; the XX meter that follows
moves the state onto the |01>, |10> block while keeping its coherence.
"""

import numpy as np

from nwl import concurrence, kraus_xx, kraus_zz, projector, pure_system_state, run_protocol_analytic

np.set_printoptions(precision=4, suppress=True)

for ks in (kraus_zz(), kraus_xx()):
    print(f"meter {ks.meter}: completeness error {ks.completeness_error():.1e}")

theta = phi = np.pi / 4
rho = projector(pure_system_state((theta, phi)))
res = run_protocol_analytic(rho)
print("<ZZ> =", res.zz, " <XX> =", res.xx)
print("rho2 =\n", res.rho2.real)

# concurrence before and after: |sin 2theta| becomes |cos phi sin 2theta|
for t, p in [(np.pi / 4, 0), (np.pi / 4, np.pi / 4), (np.pi / 8, 0), (np.pi / 4, np.pi / 2)]:
    rho = projector(pure_system_state((t, p)))
    print(f"theta={t:.3f} phi={p:.3f}: C(rho)={concurrence(rho):.4f}  C(rho2)={concurrence(run_protocol_analytic(rho).rho2):.4f}")
