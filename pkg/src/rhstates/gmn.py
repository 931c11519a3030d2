"""Genuine multipartite negativity via the fully-decomposable-witness SDP.

The program is

    minimize    tr(rho W)
    subject to  W = P_m + Q_m^{T_m},  0 <= P_m <= 1,  0 <= Q_m <= 1

for every canonical bipartition m, with T_m the partial transpose; the GMN
is minus the optimum.  The solver is a primal path-following barrier
method: P_m is eliminated through the equality constraint, iterates stay
strictly feasible, and a rigorous duality gap is computed from an exactly
dual-feasible point recovered from the barrier gradient.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .hypergraph import bipartitions
from .states import partial_transpose

GMN_CLAMP = 1e-7
MAX_NEWTON_STEPS = 400
_BARRIER_MU = 10.0


class SolverError(RuntimeError):
    """Witness SDP did not converge; carries the best solution found."""

    def __init__(self, message, solution=None):
        super().__init__(message)
        self.solution = solution


# ---------------------------------------------------------------------------
# real coordinates for Hermitian matrices

class _HermitianCoords:
    """Orthonormal real coordinates on the space of d x d Hermitian matrices."""

    def __init__(self, d):
        self.d = d
        basis = []
        for i in range(d):
            m = np.zeros((d, d), dtype=complex)
            m[i, i] = 1.0
            basis.append(m)
        s = 1.0 / np.sqrt(2.0)
        for i in range(d):
            for j in range(i + 1, d):
                m = np.zeros((d, d), dtype=complex)
                m[i, j] = s
                m[j, i] = s
                basis.append(m)
                m = np.zeros((d, d), dtype=complex)
                m[i, j] = 1j * s
                m[j, i] = -1j * s
                basis.append(m)
        self.bmat = np.column_stack([b.ravel() for b in basis])  # unitary d^2 x d^2

    def to_coords(self, x):
        return (self.bmat.conj().T @ x.ravel()).real

    def from_coords(self, v):
        return (self.bmat @ v.astype(complex)).reshape(self.d, self.d)

    def quad_form(self, inv_x):
        """Hessian of -logdet at X, in coordinates: H_ij = tr(X^-1 B_i X^-1 B_j)."""
        k = np.kron(inv_x, inv_x.T)
        return (self.bmat.conj().T @ k @ self.bmat).real

    def linear_map(self, fn):
        """Coordinate matrix of a Hermitian-preserving linear map."""
        cols = [self.to_coords(fn(self.from_coords(e)))
                for e in np.eye(self.bmat.shape[1])]
        return np.column_stack(cols)


_coords_cache = {}


def _geometry(n):
    """Cached coordinates and partial-transpose matrices for n qubits."""
    if n not in _coords_cache:
        d = 1 << n
        coords = _HermitianCoords(d)
        parts = bipartitions(n)
        pt_mats = [coords.linear_map(lambda x, p=b.part_m: partial_transpose(x, p))
                   for b in parts]
        _coords_cache[n] = (coords, parts, pt_mats)
    return _coords_cache[n]


# ---------------------------------------------------------------------------
# problem and solution containers

@dataclass(frozen=True)
class WitnessProblem:
    """A density matrix together with the bipartitions of its witness program."""

    rho: np.ndarray
    n_qubits: int
    partitions: tuple

    @classmethod
    def from_state(cls, rho):
        d = rho.shape[0]
        n = d.bit_length() - 1
        if d != 1 << n or n not in (2, 3, 4):
            raise ValueError(f"witness SDP supports 2..4 qubits, got dimension {d}")
        if np.abs(rho - rho.conj().T).max() > 1e-10:
            raise ValueError("rho is not Hermitian")
        return cls(np.asarray(rho, dtype=complex), n, tuple(bipartitions(n)))


@dataclass
class SdpSolution:
    """Optimal witness, its decomposition, and solver diagnostics."""

    objective: float
    witness: np.ndarray
    p_mats: list
    q_mats: list
    status: str  # optimal | max_iterations | infeasible_numerics
    gap: float  # rigorous duality gap bound
    dual_objective: float
    newton_steps: int
    barrier_t: float


@dataclass(frozen=True)
class CertificationReport:
    """Independent feasibility/objective re-check of an SdpSolution."""

    valid: bool
    checks: tuple  # (name, ok, worst value)

    def failed(self):
        return [c for c in self.checks if not c[1]]


# ---------------------------------------------------------------------------
# solver internals

def _chol_logdet(x):
    """(feasible, logdet) via Cholesky; feasible means strictly PD."""
    try:
        c = np.linalg.cholesky(x)
    except np.linalg.LinAlgError:
        return False, -np.inf
    return True, 2.0 * float(np.log(np.diag(c).real).sum())


class _BarrierState:
    """Variables (W, Q_1..Q_M) of one barrier subproblem, in coordinates."""

    def __init__(self, prob, coords, pt_mats):
        self.prob = prob
        self.coords = coords
        self.pt_mats = pt_mats
        self.m_count = len(prob.partitions)
        self.eye = np.eye(1 << prob.n_qubits, dtype=complex)
        self.c_rho = coords.to_coords(prob.rho)
        self.w = coords.to_coords(0.5 * self.eye)
        self.qs = [coords.to_coords(0.25 * self.eye) for _ in range(self.m_count)]

    def matrices(self, w=None, qs=None):
        w = self.w if w is None else w
        qs = self.qs if qs is None else qs
        wm = self.coords.from_coords(w)
        out = []
        for b, q in zip(self.prob.partitions, qs):
            qm = self.coords.from_coords(q)
            sm = wm - partial_transpose(qm, b.part_m)
            out.append((sm, qm))
        return wm, out

    def barrier(self, w=None, qs=None):
        """Barrier value, or +inf outside the strictly feasible set."""
        w = self.w if w is None else w
        wm, blocks = self.matrices(w, qs)
        phi = 0.0
        for sm, qm in blocks:
            for x in (sm, self.eye - sm, qm, self.eye - qm):
                ok, ld = _chol_logdet(x)
                if not ok:
                    return np.inf
                phi -= ld
        return phi

    def value_delta(self, t, phi0, w_new, qs_new):
        """F(new) - F(current), formed without the large t*objective terms.

        The linear part is evaluated on the step itself, which keeps the
        comparison meaningful when t * objective dwarfs the step size.
        """
        phi_new = self.barrier(w_new, qs_new)
        if phi_new == np.inf:
            return np.inf
        return t * float(self.c_rho @ (w_new - self.w)) + (phi_new - phi0)


def solve_witness_sdp(prob, tol=1e-6, max_newton=MAX_NEWTON_STEPS):
    """Solve the fully-decomposable-witness SDP to duality gap <= tol.

    Returns an SdpSolution; status is "optimal" only if the rigorous gap
    bound (current primal value minus the best dual bound seen along the
    barrier path, both valid by weak duality) meets the tolerance within
    the iteration cap.
    """
    if tol < 1e-9:
        raise ValueError(f"tol must be >= 1e-9, got {tol}")
    coords, _, pt_mats = _geometry(prob.n_qubits)
    st = _BarrierState(prob, coords, pt_mats)
    d = 1 << prob.n_qubits
    nu = 4.0 * st.m_count * d  # total barrier parameter
    t = 1.0
    steps = 0
    status = "optimal"
    best_dual = -np.inf
    prev_a = None

    while True:
        steps = _center(st, t, steps, max_newton)
        sol, a_mats = _extract(st, t, status, steps)
        best_dual = max(best_dual, sol.dual_objective)
        if prev_a is not None:
            # Richardson extrapolation along the central path: the dual
            # central point drifts as O(1/t), so extrapolating the dual
            # candidates removes the leading term; any candidate with
            # sum_m A_m = rho yields a rigorous bound, so taking the max
            # stays valid.
            extr = [a2 + (a2 - a1) / (_BARRIER_MU - 1.0)
                    for a1, a2 in zip(prev_a, a_mats)]
            best_dual = max(best_dual, _dual_value(st.prob, extr))
        prev_a = a_mats
        gap = max(sol.objective - best_dual, 0.0)
        sol.dual_objective = best_dual
        sol.gap = gap
        if gap <= tol:
            return sol
        if steps >= max_newton:
            sol.status = "max_iterations"
            return sol
        if t > 1e13:
            sol.status = "infeasible_numerics"
            return sol
        t *= _BARRIER_MU


def _center(st, t, steps, max_newton):
    """Damped Newton until the decrement is negligible; returns step count."""
    v = st.c_rho.shape[0]
    eye_d = st.eye
    while steps < max_newton:
        wm, blocks = st.matrices()
        g_w = t * st.c_rho.copy()
        schur = np.zeros((v, v))
        rhs = -g_w.copy()
        solved = []
        try:
            for pm, (sm, qm) in zip(st.pt_mats, blocks):
                inv_s = np.linalg.inv(sm)
                inv_is = np.linalg.inv(eye_d - sm)
                inv_q = np.linalg.inv(qm)
                inv_iq = np.linalg.inv(eye_d - qm)
                grad_s = st.coords.to_coords(inv_is - inv_s)  # d(-logdet pair)/dW
                g_w += grad_s
                g_q = -(pm @ grad_s) + st.coords.to_coords(inv_iq - inv_q)
                h_s = st.coords.quad_form(inv_s) + st.coords.quad_form(inv_is)
                h_q = pm @ h_s @ pm + st.coords.quad_form(inv_q) + st.coords.quad_form(inv_iq)
                b_wq = -(h_s @ pm)
                x = np.linalg.solve(h_q, np.column_stack([b_wq.T, g_q]))
                schur += h_s - b_wq @ x[:, :v]
                solved.append((b_wq, x))
            rhs = -g_w + sum(b @ x[:, v] for b, x in solved)
            dw = np.linalg.solve(schur, rhs)
        except np.linalg.LinAlgError:
            return max_newton
        dqs = [-x[:, v] - x[:, :v] @ dw for _, x in solved]
        # Newton decrement (recompute g_w after the loop accumulated all terms)
        decrement2 = -(g_w @ dw)
        for g, dq, (pm, (sm, qm)) in zip(_q_grads(st, t, blocks), dqs,
                                         zip(st.pt_mats, blocks)):
            decrement2 -= g @ dq
        if decrement2 <= 2e-10:
            return steps
        phi0 = st.barrier()
        alpha = 1.0
        while alpha > 1e-13:
            w_new = st.w + alpha * dw
            qs_new = [q + alpha * dq for q, dq in zip(st.qs, dqs)]
            if st.value_delta(t, phi0, w_new, qs_new) <= -1e-4 * alpha * decrement2:
                st.w, st.qs = w_new, qs_new
                break
            alpha *= 0.5
        else:
            return steps  # no further progress at this t
        steps += 1
    return steps


def _q_grads(st, t, blocks):
    eye_d = st.eye
    out = []
    for pm, (sm, qm) in zip(st.pt_mats, blocks):
        inv_s = np.linalg.inv(sm)
        inv_is = np.linalg.inv(eye_d - sm)
        inv_q = np.linalg.inv(qm)
        inv_iq = np.linalg.inv(eye_d - qm)
        grad_s = st.coords.to_coords(inv_is - inv_s)
        out.append(-(pm @ grad_s) + st.coords.to_coords(inv_iq - inv_q))
    return out


def _neg_part_trace(x):
    ev = np.linalg.eigvalsh(x)
    return float(-ev[ev < 0].sum())


def _dual_value(prob, a_mats):
    """Dual objective of a candidate decomposition sum_m A_m = rho."""
    shift = (prob.rho - sum(a_mats)) / len(a_mats)
    dual = 0.0
    for a, b in zip(a_mats, prob.partitions):
        a = a + shift
        dual -= _neg_part_trace(a) + _neg_part_trace(partial_transpose(a, b.part_m))
    return float(dual)


def _extract(st, t, status, steps):
    """Build the solution plus a rigorous dual bound at the current iterate."""
    wm, blocks = st.matrices()
    objective = float(np.trace(st.prob.rho @ wm).real)
    p_mats = [sm for sm, _ in blocks]
    q_mats = [qm for _, qm in blocks]
    # dual candidate: A_m from the barrier gradient, shifted so sum A_m = rho
    a_mats = []
    for sm, _ in blocks:
        inv_s = np.linalg.inv(sm)
        inv_is = np.linalg.inv(st.eye - sm)
        a_mats.append((inv_s - inv_is) / t)
    dual = _dual_value(st.prob, a_mats)
    sol = SdpSolution(objective, wm, p_mats, q_mats, status,
                      float(objective - dual), dual, steps, t)
    return sol, a_mats


# ---------------------------------------------------------------------------
# certification and the public measure

def certify_solution(sol, prob, tol=1e-8):
    """Re-check box constraints, decomposition residuals and the objective."""
    checks = []
    worst_box = np.inf
    worst_res = 0.0
    eye = np.eye(1 << prob.n_qubits)
    for b, pm, qm in zip(prob.partitions, sol.p_mats, sol.q_mats):
        for x in (pm, eye - pm, qm, eye - qm):
            worst_box = min(worst_box, float(np.linalg.eigvalsh(x).min()))
        res = np.abs(sol.witness - pm - partial_transpose(qm, b.part_m)).max()
        worst_res = max(worst_res, float(res))
    checks.append(("box_eigenvalues", worst_box >= -tol, worst_box))
    checks.append(("decomposition_residual", worst_res <= tol, worst_res))
    obj = float(np.trace(prob.rho @ sol.witness).real)
    checks.append(("objective_recompute", abs(obj - sol.objective) <= tol,
                   abs(obj - sol.objective)))
    return CertificationReport(all(ok for _, ok, _ in checks), tuple(checks))


def gmn_solution(rho, tol=1e-6):
    """Solve the witness SDP for rho; returns (gmn value, SdpSolution)."""
    prob = WitnessProblem.from_state(rho)
    sol = solve_witness_sdp(prob, tol=tol)
    if sol.status != "optimal":
        raise SolverError(f"witness SDP did not converge (status {sol.status}, "
                          f"gap {sol.gap:.3e})", sol)
    value = -sol.objective
    if value < 0.0:
        # the zero witness is feasible, so a slightly positive objective can
        # only be optimization slack; anything beyond gap + clamp is a bug
        if value < -(sol.gap + GMN_CLAMP):
            raise SolverError(f"negative GMN {value} beyond clamp", sol)
        value = 0.0
    return value, sol


def gmn(rho, tol=1e-6):
    """Genuine multipartite negativity of a 2..4 qubit density matrix."""
    value, _ = gmn_solution(rho, tol=tol)
    return value
