"""Randomization of hypergraph states: noisy-gate channel and mixture oracle.

Each hyperedge gate succeeds with a probability depending only on its
cardinality; the resulting mixed state is a weighted mixture over all
spanning subhypergraph states.  The sequential channel is the production
path (linear in |E|); the explicit mixture is the brute-force oracle.
"""

from __future__ import annotations

import numpy as np

from .hypergraph import spanning_subhypergraphs
from .states import ce_signs, density, hypergraph_state, n_qubits_of, plus_state


class RandomizationError(ValueError):
    """Invalid randomness parameters."""


def check_params(h, params):
    """Validate that params maps every cardinality of h to a probability."""
    for k, p in params.items():
        if not 0.0 <= p <= 1.0:
            raise RandomizationError(f"p_{k} = {p} outside [0, 1]")
    missing = sorted(h.cardinalities() - set(params))
    if missing:
        raise RandomizationError(f"missing randomness parameter(s) p_k for k in {missing}")


def apply_noisy_gate(rho, edge, p):
    """One probabilistic hyperedge gate: p * C_e rho C_e + (1-p) * rho."""
    if not 0.0 <= p <= 1.0:
        raise RandomizationError(f"probability {p} outside [0, 1]")
    n = n_qubits_of(rho.shape[0])
    s = ce_signs(n, edge)
    conj = rho * np.outer(s, s)  # C_e is diagonal +-1
    return p * conj + (1.0 - p) * rho


def randomize(h, params):
    """Randomized hypergraph state via the sequential noisy-gate channel.

    ``params`` maps hyperedge cardinality k to the success probability p_k.
    """
    check_params(h, params)
    rho = density(plus_state(h.n_vertices))
    for e in h.edges:
        rho = apply_noisy_gate(rho, e, params[len(e)])
    return rho


def mixture_weights(h, params):
    """Weight of every spanning subhypergraph, in bitmask enumeration order."""
    check_params(h, params)
    weights = []
    m = len(h.edges)
    for mask in range(1 << m):
        w = 1.0
        for i, e in enumerate(h.edges):
            p = params[len(e)]
            w *= p if mask >> i & 1 else 1.0 - p
        weights.append(w)
    return np.array(weights)


def randomize_mixture(h, params):
    """Oracle form: explicit mixture over all spanning subhypergraph states."""
    weights = mixture_weights(h, params)
    d = 1 << h.n_vertices
    rho = np.zeros((d, d), dtype=complex)
    for w, sub in zip(weights, spanning_subhypergraphs(h)):
        rho += w * density(hypergraph_state(sub))
    return rho
