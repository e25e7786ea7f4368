"""Dense complex linear algebra for small quantum systems.

Matrices are plain ``numpy`` complex arrays. Qubit ``q_i`` occupies tensor
slot ``i`` and basis labels read left to right with the leftmost qubit most
significant, so ``|01>`` is index 1 and ``|10>`` is index 2.
"""
from __future__ import annotations

from typing import Iterable

import numpy as np

from .errors import DimensionMismatch, InvalidIndex, InvalidState, NotHermitian

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)

PAULIS = {"I": I2, "X": X, "Y": Y, "Z": Z}

MAX_DIM = 64
_JACOBI_TOL = 1e-12
_JACOBI_MAX_SWEEPS = 100


def as_matrix(a) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2:
        raise DimensionMismatch(f"expected a 2-D matrix, got shape {a.shape}")
    return a


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product with ``a`` as the most significant block."""
    return np.kron(as_matrix(a), as_matrix(b))


def kron_all(*ops) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for op in ops:
        out = tensor_product(out, op)
    return out


def dagger(a) -> np.ndarray:
    return np.conj(np.asarray(a)).T


def is_hermitian(a, atol: float = 1e-12) -> bool:
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        return False
    return bool(np.max(np.abs(a - dagger(a)), initial=0.0) <= atol)


def projector(psi) -> np.ndarray:
    """Return ``|psi><psi|`` for a state vector."""
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    return np.outer(psi, psi.conj())


def validate_density(rho, dim: int | None = 4, atol: float = 1e-10) -> np.ndarray:
    """Check that ``rho`` is a density matrix and return it as an array.

    Raises InvalidState when ``rho`` is not Hermitian, not unit trace, or has
    an eigenvalue below ``-atol``.
    """
    try:
        rho = as_matrix(rho)
    except DimensionMismatch as exc:
        raise InvalidState(str(exc)) from None
    if rho.shape[0] != rho.shape[1] or (dim is not None and rho.shape[0] != dim):
        raise InvalidState(f"expected a {dim}x{dim} density matrix, got {rho.shape}")
    if not is_hermitian(rho, atol):
        raise InvalidState("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1) > atol:
        raise InvalidState(f"trace is {np.trace(rho).real:.3g}, expected 1")
    if hermitian_eigenvalues(rho, check=False)[-1] < -atol:
        raise InvalidState("density matrix has a negative eigenvalue")
    return rho


def partial_transpose_b(rho) -> np.ndarray:
    """Transpose the second qubit of a two-qubit operator."""
    rho = as_matrix(rho)
    if rho.shape != (4, 4):
        raise DimensionMismatch(f"partial transpose needs a 4x4 matrix, got {rho.shape}")
    # indices (a, b, a', b') -> (a, b', a', b)
    return rho.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)


def partial_trace(rho_full, keep: Iterable[int], n: int) -> np.ndarray:
    """Reduce an ``n``-qubit operator to the qubits listed in ``keep``.

    The kept qubits appear in ascending order in the result.
    """
    rho_full = as_matrix(rho_full)
    dim = 2**n
    if rho_full.shape != (dim, dim):
        raise DimensionMismatch(f"expected {dim}x{dim} for n={n}, got {rho_full.shape}")
    keep = sorted(set(int(k) for k in keep))
    if any(k < 0 or k >= n for k in keep):
        raise InvalidIndex(f"keep={keep} is not a subset of 0..{n - 1}")
    drop = [q for q in range(n) if q not in keep]
    t = rho_full.reshape([2] * (2 * n))
    # trace highest slots first so the remaining axis numbers stay valid
    for m, q in enumerate(sorted(drop, reverse=True)):
        cur = n - m
        t = np.trace(t, axis1=q, axis2=q + cur)
    k = 2 ** len(keep)
    return t.reshape(k, k)


def _jacobi(a: np.ndarray, want_vectors: bool):
    """Cyclic complex Jacobi sweeps on a Hermitian matrix."""
    a = a.copy()
    n = a.shape[0]
    v = np.eye(n, dtype=complex) if want_vectors else None
    scale = max(1.0, float(np.linalg.norm(a)))
    offdiag = ~np.eye(n, dtype=bool)
    for _ in range(_JACOBI_MAX_SWEEPS):
        off = np.sqrt(np.sum(np.abs(a[offdiag]) ** 2))
        if off < _JACOBI_TOL * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                # phase q so the pivot becomes real, then a real rotation
                phase = apq / mag
                app, aqq = a[p, p].real, a[q, q].real
                tau = (aqq - app) / (2.0 * mag)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(tau * tau + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                rot = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ rot
                a[idx, :] = rot.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                if v is not None:
                    v[:, idx] = v[:, idx] @ rot
    return np.real(np.diag(a)).copy(), v


def hermitian_eigh(a, check: bool = True) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and eigenvectors (columns) of a Hermitian matrix."""
    a = as_matrix(a)
    if a.shape[0] != a.shape[1] or a.shape[0] > MAX_DIM:
        raise DimensionMismatch(f"expected a square matrix of dim <= {MAX_DIM}, got {a.shape}")
    if check and not is_hermitian(a, 1e-10):
        raise NotHermitian("matrix is not Hermitian within 1e-10")
    a = 0.5 * (a + dagger(a))
    w, v = _jacobi(a, want_vectors=True)
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]


def hermitian_eigenvalues(a, check: bool = True) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, sorted descending.

    Uses cyclic Jacobi rotations until the off-diagonal Frobenius norm drops
    below 1e-12 (relative to the matrix norm when that exceeds one), with a
    cap of 100 sweeps.
    """
    a = as_matrix(a)
    if a.shape[0] != a.shape[1] or a.shape[0] > MAX_DIM:
        raise DimensionMismatch(f"expected a square matrix of dim <= {MAX_DIM}, got {a.shape}")
    if check and not is_hermitian(a, 1e-10):
        raise NotHermitian("matrix is not Hermitian within 1e-10")
    w, _ = _jacobi(0.5 * (a + dagger(a)), want_vectors=False)
    return np.sort(w)[::-1]


def psd_sqrt(a) -> np.ndarray:
    """Principal square root of a positive semidefinite Hermitian matrix.

    Eigenvalues down to -1e-10 are treated as zero, as are positive ones below
    the rounding floor of the decomposition; larger negative eigenvalues raise.
    """
    w, v = hermitian_eigh(a)
    if w.size and w[-1] < -1e-10:
        raise NotHermitian(f"matrix is not positive semidefinite (min eigenvalue {w[-1]:.3g})")
    floor = 64 * np.finfo(float).eps * max(1.0, float(np.max(np.abs(w), initial=0.0)))
    root = np.where(w > floor, np.sqrt(np.clip(w, 0.0, None)), 0.0)
    return (v * root) @ dagger(v)


def expectation(op, rho) -> float:
    """``Tr(op rho)`` as a real number."""
    return float(np.real(np.trace(as_matrix(op) @ as_matrix(rho))))
