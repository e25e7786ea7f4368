"""
Tomography of the system after both meters
==========================================

Nine local Pauli settings on the system qubits, appended after the meters,
give every two-qubit correlator. Linear inversion rebuilds the state.
"""

import numpy as np

from nwl.cli import tomography

np.set_printoptions(precision=3, suppress=True)

exact = tomography(np.pi / 4, np.pi / 4, shots=10000, seed=0, exact=True)
print("exact-mode error:", exact["max_abs_error"])

for shots in (1000, 10000, 100000):
    out = tomography(np.pi / 4, np.pi / 4, shots=shots, seed=0, exact=False)
    print(f"{shots:>6} shots per setting: max abs error {out['max_abs_error']:.4f}")

est = np.array(out["rho_estimate"]["real"]) + 1j * np.array(out["rho_estimate"]["imag"])
print("estimate (real part):\n", est.real)
print("smallest eigenvalue:", np.linalg.eigvalsh(est)[0])
