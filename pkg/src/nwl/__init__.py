"""Entanglement detection with CHSH, variational witnesses and two-meter nonlocal measurements."""
from .chsh import ChshSettings, chsh_expectation, chsh_operator, violates_lhv
from .circuit import Circuit, Gate, OutcomeCounts, build_protocol_circuit, exact_distribution, marginalize, sample_counts, simulate_statevector, u3_matrix
from .entanglement import EntanglementReport, WernerRegion, classify_werner, concurrence, ppt_min_eigenvalue, report
from .nonlocal_meas import KrausSet, expectation_from_probs, kraus_xx, kraus_zz, outcome_probabilities, post_measurement_state, run_protocol_analytic
from .optim import cobyla_minimize
from .qmath import hermitian_eigenvalues, partial_trace, partial_transpose_b, projector, psd_sqrt, tensor_product
from .states import StateParams, bell_state, meter_state, pure_system_state, werner_state
from .vew import TrainConfig, TrainResult, WitnessParams, cost, penalized_objective, train, witness_matrix

__version__ = "0.1.0"
