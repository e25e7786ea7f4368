"""Gate-level statevector simulation of the two-meter measurement circuit.

Six qubits: the system on ``q0 q1``, meter 1 on ``q2 q3`` and meter 2 on
``q4 q5``. Classical bits ``c0..c3`` read ``q2..q5`` in that order, so the
outcome string ``"0101"`` is meter 1 in ``01`` and meter 2 in ``01``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, EmptyCounts, InvalidIndex
from .qmath import H, X, Y, Z
from .states import StateParams

MAX_QUBITS = 12
SEED_MASK = 2**64 - 1


def u3_matrix(theta: float, phi: float, lam: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array(
        [
            [c, -np.exp(1j * lam) * s],
            [np.exp(1j * phi) * s, np.exp(1j * (phi + lam)) * c],
        ],
        dtype=complex,
    )


_FIXED = {
    "I": np.eye(2, dtype=complex),
    "X": X,
    "Y": Y,
    "Z": Z,
    "H": H,
    "S": np.diag([1, 1j]).astype(complex),
    "SDG": np.diag([1, -1j]).astype(complex),
}
# controlled variants apply the base gate when every control reads 1
_CONTROLLED = {"CX": "X", "CY": "Y", "CZ": "Z"}


@dataclass(frozen=True)
class Gate:
    name: str
    targets: tuple[int, ...]
    controls: tuple[int, ...] = ()
    params: tuple[float, ...] = ()

    def __post_init__(self):
        if set(self.targets) & set(self.controls):
            raise InvalidIndex(f"{self.name}: targets and controls overlap")
        if len(self.targets) != 1:
            raise InvalidIndex(f"{self.name}: exactly one target qubit is supported")

    def matrix(self) -> np.ndarray:
        """2x2 matrix acting on the target (controls excluded)."""
        name = self.name.upper()
        name = _CONTROLLED.get(name, name)
        if name == "U3":
            return u3_matrix(*self.params)
        try:
            return _FIXED[name]
        except KeyError:
            raise InvalidIndex(f"unknown gate {self.name!r}") from None


@dataclass
class Circuit:
    n_qubits: int
    gates: list[Gate] = field(default_factory=list)
    measured_qubits: tuple[int, ...] = ()

    def __post_init__(self):
        self.measured_qubits = tuple(self.measured_qubits)
        if len(set(self.measured_qubits)) != len(self.measured_qubits):
            raise InvalidIndex("measured qubits must be distinct")
        for q in self.measured_qubits:
            self._check_index(q)
        for g in self.gates:
            self._check_gate(g)

    def _check_index(self, q: int):
        if not 0 <= q < self.n_qubits:
            raise InvalidIndex(f"qubit {q} outside 0..{self.n_qubits - 1}")

    def _check_gate(self, g: Gate):
        for q in (*g.targets, *g.controls):
            self._check_index(q)

    def add(self, name: str, target: int, controls: Sequence[int] = (), params: Sequence[float] = ()):
        g = Gate(name.upper(), (int(target),), tuple(int(c) for c in controls), tuple(float(p) for p in params))
        self._check_gate(g)
        self.gates.append(g)
        return self

    def to_text(self) -> str:
        """One gate per line: ``NAME targets controls params`` ("-" marks empty)."""

        def field_(vals):
            return ",".join(repr(v) for v in vals) if vals else "-"

        lines = [f"QUBITS {self.n_qubits}", f"MEASURE {field_(self.measured_qubits)}"]
        for g in self.gates:
            lines.append(f"{g.name} {field_(g.targets)} {field_(g.controls)} {field_(g.params)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Circuit":
        def parse(tok, typ):
            return () if tok == "-" else tuple(typ(v) for v in tok.split(","))

        n = None
        measured: tuple[int, ...] = ()
        gates = []
        for raw in text.splitlines():
            parts = raw.split()
            if not parts or parts[0].startswith("#"):
                continue
            if parts[0] == "QUBITS":
                n = int(parts[1])
            elif parts[0] == "MEASURE":
                measured = parse(parts[1], int)
            else:
                if len(parts) != 4:
                    raise ValueError(f"malformed gate line: {raw!r}")
                gates.append(Gate(parts[0], parse(parts[1], int), parse(parts[2], int), parse(parts[3], float)))
        if n is None:
            raise ValueError("missing QUBITS line")
        return cls(n, gates, measured)


def build_protocol_circuit(params: StateParams | tuple[float, float]) -> Circuit:
    """State preparation, both meter couplings and the meter-2 basis change."""
    theta, phi = (params.theta, params.phi) if isinstance(params, StateParams) else params
    c = Circuit(6, measured_qubits=(2, 3, 4, 5))
    # system |psi(theta, phi)>
    c.add("U3", 0, params=(2 * theta, phi, 0.0))
    c.add("CX", 1, controls=[0])
    # meter 1: (|00> + |11>)/sqrt2
    c.add("H", 2)
    c.add("CX", 3, controls=[2])
    # meter 2: (|01> + |10>)/sqrt2
    c.add("H", 4)
    c.add("X", 5)
    c.add("CX", 5, controls=[4])
    # U1: system controls meter 1
    c.add("CX", 2, controls=[0])
    c.add("CX", 3, controls=[1])
    # U2: meter 2 controls the system
    c.add("CX", 0, controls=[4])
    c.add("CX", 1, controls=[5])
    # read meter 2 in the X basis
    c.add("H", 4)
    c.add("H", 5)
    return c


def apply_gate(state: np.ndarray, gate: Gate, n: int) -> np.ndarray:
    """Apply one gate to a length ``2**n`` statevector, returning a new vector."""
    psi = state.reshape([2] * n).copy()
    sel = [slice(None)] * n
    for q in gate.controls:
        sel[q] = 1
    sel = tuple(sel)
    sub = psi[sel]
    (t,) = gate.targets
    # axis of the target once the control axes are indexed away
    axis = t - sum(1 for q in gate.controls if q < t)
    sub = np.moveaxis(np.tensordot(gate.matrix(), sub, axes=([1], [axis])), 0, axis)
    psi[sel] = sub
    return psi.reshape(-1)


def simulate_statevector(c: Circuit, initial: np.ndarray | None = None) -> np.ndarray:
    """Final statevector of ``c`` started from ``|0...0>`` (or ``initial``)."""
    if c.n_qubits > MAX_QUBITS:
        raise DimensionMismatch(f"at most {MAX_QUBITS} qubits are supported, got {c.n_qubits}")
    dim = 2**c.n_qubits
    if initial is None:
        state = np.zeros(dim, dtype=complex)
        state[0] = 1.0
    else:
        state = np.asarray(initial, dtype=complex).reshape(-1)
        if state.size != dim:
            raise DimensionMismatch(f"initial state has {state.size} amplitudes, expected {dim}")
    for g in c.gates:
        state = apply_gate(state, g, c.n_qubits)
    return state


def circuit_unitary(c: Circuit) -> np.ndarray:
    """Dense unitary of ``c`` built column by column."""
    dim = 2**c.n_qubits
    cols = []
    for k in range(dim):
        e = np.zeros(dim, dtype=complex)
        e[k] = 1.0
        cols.append(simulate_statevector(c, e))
    return np.array(cols).T


def bitstrings(k: int) -> list[str]:
    return [format(i, f"0{k}b") for i in range(2**k)]


def measured_probabilities(state: np.ndarray, measured: Sequence[int], n: int) -> np.ndarray:
    """Exact outcome distribution of ``measured`` qubits, first listed qubit most significant."""
    p = np.abs(np.asarray(state).reshape([2] * n)) ** 2
    rest = tuple(q for q in range(n) if q not in measured)
    p = p.sum(axis=rest)
    # remaining axes are in ascending qubit order; reorder to the measured order
    ordered = sorted(measured)
    p = np.transpose(p, [ordered.index(q) for q in measured])
    return p.reshape(-1)


def exact_distribution(c: Circuit) -> dict[str, float]:
    probs = measured_probabilities(simulate_statevector(c), c.measured_qubits, c.n_qubits)
    return dict(zip(bitstrings(len(c.measured_qubits)), probs.tolist()))


@dataclass(frozen=True)
class OutcomeCounts:
    shots: int
    seed: int
    counts: dict[str, int]

    def probabilities(self) -> dict[str, float]:
        return {k: v / self.shots for k, v in self.counts.items()}


def make_rng(seed: int) -> np.random.Generator:
    """Seeded generator; any Python int is folded to 64 bits first."""
    return np.random.default_rng(int(seed) & SEED_MASK)


def sample_from_probabilities(probs: Sequence[float], shots: int, seed: int) -> np.ndarray:
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    p = np.clip(np.asarray(probs, dtype=float), 0.0, None)
    p = p / p.sum()
    return make_rng(seed).multinomial(shots, p)


def sample_counts(c: Circuit, shots: int, seed: int) -> OutcomeCounts:
    """Multinomial draw of ``shots`` outcomes from the exact measured distribution."""
    dist = exact_distribution(c)
    draws = sample_from_probabilities(list(dist.values()), shots, seed)
    return OutcomeCounts(shots, int(seed), dict(zip(dist.keys(), (int(d) for d in draws))))


def marginalize_probs(dist: dict[str, float]) -> tuple[np.ndarray, np.ndarray]:
    """Meter-1 and meter-2 marginals of a 4-bit outcome distribution."""
    p1 = np.zeros(4)
    p2 = np.zeros(4)
    for key, v in dist.items():
        if len(key) != 4 or set(key) - {"0", "1"}:
            raise InvalidIndex(f"outcome key {key!r} is not a 4-bit string")
        p1[int(key[:2], 2)] += v
        p2[int(key[2:], 2)] += v
    return p1, p2


def marginalize(counts: OutcomeCounts) -> tuple[np.ndarray, np.ndarray]:
    total = sum(counts.counts.values())
    if counts.shots <= 0 or total == 0:
        raise EmptyCounts("no shots recorded")
    if total != counts.shots:
        raise EmptyCounts(f"counts sum to {total}, expected {counts.shots} shots")
    return marginalize_probs(counts.probabilities())


def system_readout_circuit(params, bases: Iterable[str]) -> Circuit:
    """Protocol circuit followed by local Pauli-basis readout of ``q0 q1``.

    The measured qubits become ``(q2, q3, q4, q5, q0, q1)``; the last two bits
    are the system outcomes in the requested bases.
    """
    c = build_protocol_circuit(params)
    c.measured_qubits = (2, 3, 4, 5, 0, 1)
    for q, basis in zip((0, 1), bases):
        basis = basis.upper()
        if basis == "X":
            c.add("H", q)
        elif basis == "Y":
            c.add("SDG", q)
            c.add("H", q)
        elif basis != "Z":
            raise InvalidIndex(f"unknown measurement basis {basis!r}")
    return c
