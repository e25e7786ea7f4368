"""
Six-qubit nonlocal measurement circuit
======================================

Qubits 0-1 hold the system, 2-3 the ZZ meter and 4-5 the XX meter. Only
the meters are read out, as c0 c1 c2 c3.
"""

import numpy as np

from nwl import build_protocol_circuit, exact_distribution, marginalize, sample_counts

circuit = build_protocol_circuit((np.pi / 4, 0))
print(circuit.to_text())

# the exact distribution puts weight 1/4 on four outcomes
for key, p in exact_distribution(circuit).items():
    if p > 1e-12:
        print(key, round(p, 12))

# 10000 shots, seeded
counts = sample_counts(circuit, 10000, seed=0)
p_m1, p_m2 = marginalize(counts)
print("counts:", {k: v for k, v in counts.counts.items() if v})
print("meter 1:", p_m1, " <ZZ> =", p_m1 @ [1, -1, -1, 1])
print("meter 2:", p_m2, " <XX> =", p_m2 @ [1, -1, -1, 1])

# theta = 0: the XX meter reads uniformly
p_m1, p_m2 = marginalize(sample_counts(build_protocol_circuit((0, 0)), 10000, seed=1))
print("theta=0 meter 2:", p_m2)
