"""Bipartite entanglement measures and sudden-death/birth threshold search."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .randomize import randomize
from .states import (
    StateError,
    hermitian_eigenvalues,
    partial_trace,
    partial_transpose,
    trace_norm,
)

TOL_ZERO = 1e-9  # a measure value at or below this counts as zero

_SYSY = np.kron(
    np.array([[0, -1j], [1j, 0]]), np.array([[0, -1j], [1j, 0]])
).real  # sigma_y x sigma_y is real


def negativity(rho, bipartition):
    """(trace norm of the partial transpose - 1) / 2 over a bipartition."""
    if rho.shape[0] != 1 << bipartition.n_qubits:
        raise StateError(
            f"bipartition of {bipartition.n_qubits} qubits does not match dim {rho.shape[0]}")
    value = 0.5 * (trace_norm(partial_transpose(rho, bipartition.part_m)) - 1.0)
    if value < -1e-10:
        raise StateError(f"negativity {value} below numerical zero; invalid input?")
    return max(0.0, value)


def concurrence(rho2):
    """Wootters concurrence of a two-qubit density matrix.

    Uses the square roots of the eigenvalues of rho * rho_tilde, with
    rho_tilde the spin-flipped (sigma_y x sigma_y) conjugate.
    """
    if rho2.shape != (4, 4):
        raise StateError(f"concurrence needs a 4x4 matrix, got {rho2.shape}")
    rho_tilde = _SYSY @ rho2.conj() @ _SYSY
    evals = np.linalg.eigvals(rho2 @ rho_tilde)
    if np.abs(evals.imag).max() > 1e-8:
        raise StateError("rho * rho_tilde spectrum is not real within tolerance")
    evals = evals.real
    if evals.min() < -1e-10:
        raise StateError("rho * rho_tilde spectrum is not nonnegative within tolerance")
    lams = np.sort(np.sqrt(np.clip(evals, 0.0, None)))[::-1]
    return float(max(0.0, lams[0] - lams[1] - lams[2] - lams[3]))


def reduced_concurrence(rho, i, j):
    """Concurrence of the two-qubit marginal on qubits i and j."""
    if i == j:
        raise StateError("qubit pair must be distinct")
    return concurrence(partial_trace(rho, (i, j)))


@dataclass(frozen=True)
class ThresholdReport:
    """Zero crossings of a measure along one randomness-parameter axis."""

    esd_points: tuple  # measure reaches zero from above, ascending
    esb_points: tuple  # measure leaves zero, ascending
    path: str = ""
    tol_zero: float = TOL_ZERO

    @property
    def empty(self):
        return not self.esd_points and not self.esb_points


def _bisect_edge(f, lo, hi, positive_at_lo, tol_zero, width):
    """Shrink [lo, hi] around the boundary of {p : f(p) > tol_zero}."""
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        if (f(mid) > tol_zero) == positive_at_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def scan_thresholds(f, tol_zero=TOL_ZERO, step=0.01, width=1e-4, path=""):
    """Locate ESD/ESB points of ``f`` on [0, 1].

    Coarse grid at ``step``, then bisection of every positivity change to
    a bracket of at most ``width``.  A positive-to-zero change is sudden
    death, zero-to-positive is sudden birth.
    """
    grid = np.linspace(0.0, 1.0, int(round(1.0 / step)) + 1)
    vals = [f(p) for p in grid]
    pos = [v > tol_zero for v in vals]
    esd, esb = [], []
    for a, b, pa, pb in zip(grid[:-1], grid[1:], pos[:-1], pos[1:]):
        if pa == pb:
            continue
        point = _bisect_edge(f, a, b, pa, tol_zero, width)
        (esd if pa else esb).append(round(point, 12))
    return ThresholdReport(tuple(esd), tuple(esb), path, tol_zero)


def find_thresholds(h, fixed, sweep_cardinality, measure,
                    tol_zero=TOL_ZERO, step=0.01, width=1e-4):
    """Threshold report for a measure along one randomness parameter.

    ``fixed`` holds the pinned p_k values; ``sweep_cardinality`` selects the
    cardinality whose probability runs over [0, 1]; ``measure`` maps a
    density matrix to a scalar.
    """

    def f(p):
        params = dict(fixed)
        params[sweep_cardinality] = p
        return measure(randomize(h, params))

    fixed_desc = ", ".join(f"p{k}={v:g}" for k, v in sorted(fixed.items())
                           if k != sweep_cardinality)
    path = f"sweep p{sweep_cardinality}" + (f" at {fixed_desc}" if fixed_desc else "")
    return scan_thresholds(f, tol_zero, step, width, path)
