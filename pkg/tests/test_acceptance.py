"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
summary lines.
"""

import time
from itertools import combinations

import numpy as np
import pytest

from rhstates.gmn import WitnessProblem, certify_solution, solve_witness_sdp
from rhstates.hypergraph import Bipartition, Hypergraph, bipartitions
from rhstates.measures import concurrence, find_thresholds, negativity, reduced_concurrence
from rhstates.presets import PRESETS, identify_presets
from rhstates.randomize import randomize, randomize_mixture
from rhstates.states import density, hypergraph_state, plus_state, purity

H32 = PRESETS["H3_2"]
B3 = Bipartition(3, (3,))


def report(criterion, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}"
    print(line)
    assert ok, line


def ghz3():
    v = np.zeros(8, dtype=complex)
    v[0] = v[7] = 1 / np.sqrt(2)
    return density(v)


def test_criterion_1_h32_concurrence_threshold():
    t0 = time.time()
    rep = find_thresholds(H32, {3: 1.0}, 2, lambda r: reduced_concurrence(r, 1, 3))
    elapsed = time.time() - t0
    ok = (len(rep.esd_points) == 1 and abs(rep.esd_points[0] - 0.500) <= 0.005
          and len(rep.esb_points) == 1 and abs(rep.esb_points[0] - 0.500) <= 0.005
          and elapsed < 5.0)
    report(1, ok, f"H3_2 concurrence(1,3) zero at p2 = "
                  f"{rep.esd_points} / {rep.esb_points} (target 0.500 +- 0.005), "
                  f"{elapsed:.1f}s")


# solutions reused by criterion 8
_certified_solutions = []


def _gmn_certified(rho, tol=1e-6):
    prob = WitnessProblem.from_state(rho)
    sol = solve_witness_sdp(prob, tol=tol)
    assert sol.status == "optimal"
    _certified_solutions.append((sol, prob))
    return max(0.0, -sol.objective)


def test_criterion_2_gmn_zero_line():
    t0 = time.time()
    zero_vals = [_gmn_certified(randomize(H32, {2: 0.5, 3: p3}))
                 for p3 in (0.2, 0.4, 0.6, 0.8, 1.0)]
    off_val = _gmn_certified(randomize(H32, {2: 0.9, 3: 1.0}))
    elapsed = time.time() - t0
    ok = max(zero_vals) <= 1e-6 and off_val > 1e-3 and elapsed < 120.0
    report(2, ok, f"GMN at p2=0.5 max {max(zero_vals):.2e} (<= 1e-6); "
                  f"at (0.9, 1.0): {off_val:.4f} (> 1e-3); {elapsed:.1f}s")


@pytest.mark.slow
def test_criterion_3_preset_signature_search():
    t0 = time.time()
    rep = identify_presets()
    elapsed = time.time() - t0
    ok = True
    details = []
    for name, (esd, esb) in [("H3_3", (0.239, 0.761)), ("H3_4", (0.315, 0.707))]:
        found = len(rep.matches[name]) >= 1
        ok &= found
        details.append(f"{name}: {len(rep.matches[name])} matches")
    ok &= len(rep.matches["H4_1"]) >= 1  # ESD 0.397, no ESB
    details.append(f"H4_1 (ESD 0.397): {len(rep.matches['H4_1'])} matches")
    h43 = rep.matches["H4_3"]
    ok &= len(h43) >= 1 and all(h.is_k_uniform(3) for h in h43)
    from rhstates.presets import signature
    sig = signature(PRESETS["H4_3"], (1, 3))
    ok &= sig.esd == () and sig.esb == ()
    details.append(f"H4_3 3-uniform, no ESD/ESB: {len(h43)} match(es)")
    ok &= elapsed < 1800.0
    report(3, ok, "; ".join(details) + f"; {elapsed:.0f}s")


def test_criterion_4_monotonicity_dichotomy():
    grid = np.round(np.arange(0.0, 1.0001, 0.05), 10)
    # uniform presets: nondecreasing along every grid line
    uniform_ok = True
    h31 = PRESETS["H3_1"]
    vals = [negativity(randomize(h31, {3: p}), B3) for p in grid]
    uniform_ok &= all(b - a >= -1e-9 for a, b in zip(vals, vals[1:]))
    h43 = PRESETS["H4_3"]
    b43 = Bipartition(4, (1, 2))  # captioned {1,2}|{3,4} context
    vals = [negativity(randomize(h43, {3: p}), b43) for p in grid]
    uniform_ok &= all(b - a >= -1e-9 for a, b in zip(vals, vals[1:]))
    # H3_2 at p3 = 1: at least one strictly decreasing step
    vals = [negativity(randomize(H32, {2: p, 3: 1.0}), B3) for p in grid]
    non_mono = any(b < a - 1e-9 for a, b in zip(vals, vals[1:]))
    ok = uniform_ok and non_mono
    report(4, ok, f"uniform presets nondecreasing: {uniform_ok}; "
                  f"H3_2 has a decreasing step: {non_mono}")


def test_criterion_5_oracle_equivalence():
    t0 = time.time()
    rng = np.random.default_rng(20240817)
    worst = 0.0
    for _ in range(200):
        n = int(rng.integers(2, 5))
        pool = [c for size in (2, 3, 4) if size <= n
                for c in combinations(range(1, n + 1), size)]
        m = int(rng.integers(0, min(6, len(pool)) + 1))
        idx = rng.choice(len(pool), size=m, replace=False)
        h = Hypergraph(n, [pool[i] for i in idx])
        params = {k: float(rng.uniform()) for k in (2, 3, 4)}
        diff = np.abs(randomize(h, params) - randomize_mixture(h, params)).max()
        worst = max(worst, diff)
    elapsed = time.time() - t0
    ok = worst < 1e-12 and elapsed < 10.0
    report(5, ok, f"200 instances, worst entry-wise deviation {worst:.2e} "
                  f"(< 1e-12); {elapsed:.1f}s")


def test_criterion_6_known_values():
    bell = np.zeros(4, dtype=complex)
    bell[0] = bell[3] = 1 / np.sqrt(2)
    c = concurrence(density(bell))
    negs = [negativity(ghz3(), b) for b in bipartitions(3)]
    g = _gmn_certified(ghz3(), tol=1e-7)
    corpus = [ghz3(), density(plus_state(3)),
              randomize(H32, {2: 0.7, 3: 0.9}),
              randomize(H32, {2: 0.5, 3: 1.0}),
              randomize(PRESETS["H3_3"], {2: 0.4, 3: 0.8})]
    bound_ok = True
    for rho in corpus:
        val = _gmn_certified(rho)
        min_neg = min(negativity(rho, b) for b in bipartitions(3))
        bound_ok &= val <= min_neg + 1e-6
    ok = (abs(c - 1.0) <= 1e-10
          and all(abs(n - 0.5) <= 1e-8 for n in negs)
          and abs(g - 0.5) <= 1e-5
          and bound_ok)
    report(6, ok, f"Bell concurrence {c:.12f}; GHZ3 negativities "
                  f"{[f'{n:.10f}' for n in negs]}; GHZ3 GMN {g:.7f}; "
                  f"gmn <= min negativity on corpus: {bound_ok}")


def test_criterion_7_endpoint_limits():
    ok = True
    details = []
    for name, h in PRESETS.items():
        cards = h.cardinalities()
        zeros = {k: 0.0 for k in cards}
        ones = {k: 1.0 for k in cards}
        rho0 = randomize(h, zeros)
        rho1 = randomize(h, ones)
        pure = density(hypergraph_state(h))
        n = h.n_vertices
        pair = (1, 2)
        neg0 = max(negativity(rho0, b) for b in bipartitions(n))
        conc0 = reduced_concurrence(rho0, *pair)
        at_zero = neg0 <= 1e-9 and conc0 <= 1e-9
        pure_match = np.abs(rho1 - pure).max() < 1e-12
        purity_ok = abs(purity(rho1) - 1.0) <= 1e-12
        if h.n_vertices == 3:
            at_zero &= _gmn_certified(rho0) <= 1e-6
        ok &= at_zero and pure_match and purity_ok
        if not (at_zero and pure_match and purity_ok):
            details.append(name)
    report(7, ok, "all presets: measures 0 at p=0, pure |H> at p=1, "
                  f"purity 1 +- 1e-12{'; failed: ' + ','.join(details) if details else ''}")


def test_criterion_8_certification():
    # every SDP solution used by criteria 2 and 6 must certify
    assert _certified_solutions, "criteria 2 and 6 must run first"
    worst = []
    ok = True
    for sol, prob in _certified_solutions:
        cert = certify_solution(sol, prob, tol=1e-8)
        ok &= cert.valid
        worst.append(max(abs(v) for _, _, v in cert.checks))
    report(8, ok, f"{len(_certified_solutions)} solutions certified "
                  f"(residuals <= 1e-8); worst check magnitude {max(worst):.2e}")
