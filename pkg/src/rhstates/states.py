"""Dense n-qubit state-vector and density-matrix algebra.

Basis convention: basis index b spells the qubits in tensor order
|q1 q2 ... qn>, so qubit 1 is the most significant bit of b.  All partial
trace / partial transpose index arithmetic follows this convention.
"""

from __future__ import annotations

import numpy as np

MAX_QUBITS = 10
HERM_TOL = 1e-10


class StateError(ValueError):
    """Invalid state, matrix, or subsystem specification."""


def n_qubits_of(dim):
    """Number of qubits for a power-of-two dimension."""
    n = int(dim).bit_length() - 1
    if dim != 1 << n:
        raise StateError(f"dimension {dim} is not a power of two")
    return n


def plus_state(n):
    """|+>^n as a length-2^n vector, all amplitudes 2^(-n/2)."""
    if not 1 <= n <= MAX_QUBITS:
        raise StateError(f"n = {n} outside capacity 1..{MAX_QUBITS}")
    return np.full(1 << n, 2.0 ** (-n / 2), dtype=complex)


def _edge_mask(n, edge):
    edge = tuple(edge)
    if not edge or any(v < 1 or v > n for v in edge):
        raise StateError(f"edge {edge} out of range 1..{n}")
    mask = 0
    for v in set(edge):
        mask |= 1 << (n - v)
    return mask


def ce_signs(n, edge):
    """Diagonal of the C_e gate: -1 where every qubit of the edge is 1."""
    mask = _edge_mask(n, edge)
    idx = np.arange(1 << n)
    signs = np.ones(1 << n)
    signs[(idx & mask) == mask] = -1.0
    return signs


def apply_ce(psi, edge):
    """Apply the generalized controlled-Z gate of a hyperedge to a state vector."""
    n = n_qubits_of(psi.shape[0])
    return psi * ce_signs(n, edge)


def hypergraph_state(h):
    """Pure hypergraph state: C_e of every edge applied to |+>^n."""
    psi = plus_state(h.n_vertices)
    for e in h.edges:
        psi = apply_ce(psi, e)
    return psi


def density(psi):
    """Projector |psi><psi| of a normalized state vector."""
    return np.outer(psi, psi.conj())


def check_density_matrix(rho, tol=HERM_TOL):
    """Raise unless rho is Hermitian, unit trace and PSD within tolerance."""
    d = rho.shape[0]
    if rho.shape != (d, d):
        raise StateError(f"density matrix must be square, got {rho.shape}")
    if np.abs(rho - rho.conj().T).max() > tol:
        raise StateError("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > max(tol, 1e-12):
        raise StateError(f"trace is {np.trace(rho)}, expected 1")
    if np.linalg.eigvalsh(rho).min() < -1e-10:
        raise StateError("density matrix has a significantly negative eigenvalue")


def partial_trace(rho, keep):
    """Reduced density matrix over the 1-based qubits in ``keep``.

    The kept qubits retain their relative order.
    """
    n = n_qubits_of(rho.shape[0])
    keep = tuple(sorted(set(keep)))
    if not keep:
        raise StateError("keep must be nonempty")
    if any(v < 1 or v > n for v in keep):
        raise StateError(f"keep {keep} out of range 1..{n}")
    t = rho.reshape([2] * (2 * n))
    row = list(range(n))
    col = [n + i if (i + 1) in keep else i for i in range(n)]
    out = [i for i in range(n) if (i + 1) in keep]
    out += [n + i for i in range(n) if (i + 1) in keep]
    k = len(keep)
    return np.einsum(t, row + col, out).reshape(1 << k, 1 << k)


def partial_transpose(rho, part):
    """Transpose the tensor factors of the 1-based qubits in ``part``."""
    n = n_qubits_of(rho.shape[0])
    part = tuple(sorted(set(part)))
    if not part or len(part) >= n:
        raise StateError(f"part {part} must be a nonempty proper subset of 1..{n}")
    if any(v < 1 or v > n for v in part):
        raise StateError(f"part {part} out of range 1..{n}")
    t = rho.reshape([2] * (2 * n))
    axes = list(range(2 * n))
    for v in part:
        axes[v - 1], axes[n + v - 1] = axes[n + v - 1], axes[v - 1]
    return t.transpose(axes).reshape(rho.shape)


def hermitian_eigenvalues(m):
    """Real eigenvalues of a Hermitian matrix, descending."""
    m = np.asarray(m)
    scale = max(np.abs(m).max(), 1.0)
    if np.abs(m - m.conj().T).max() > HERM_TOL * scale:
        raise StateError("matrix is not Hermitian within tolerance")
    return np.sort(np.linalg.eigvalsh(m))[::-1]


def trace_norm(m):
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    return float(np.abs(hermitian_eigenvalues(m)).sum())


def purity(rho):
    """tr(rho^2)."""
    return float(np.trace(rho @ rho).real)
