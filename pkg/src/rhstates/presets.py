"""Preset hypergraph catalog and the signature search that pins it down.

The eight preset names are defined by target rows of behavior, not by
edge sets, so the shipped presets are recovered by matching each target
row of sudden-death/birth thresholds (concurrence sweep of the
cardinality-2 probability at p3 = 1) plus the maximally-mixed
single-qubit-marginal flag.  The search space is every hypergraph on 3 or
4 vertices with hyperedge cardinalities in {2, 3} and at least one
cardinality-3 edge; see docs/presets.md for the committed match report.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .hypergraph import Hypergraph
from .measures import reduced_concurrence, scan_thresholds
from .randomize import randomize
from .states import density, hypergraph_state, partial_trace

MATCH_TOL = 5e-3  # thresholds are reported to three decimals

# Target threshold rows: name -> (n, concurrence pair, ESD, ESB, 3-uniform,
# maximally mixed single-qubit marginals required).  The H3^(2) edge set is
# pinned a priori from its explicit four-term mixture.
TARGETS = {
    "H3_1": (3, (1, 3), None, None, True, False),
    "H3_2": (3, (1, 3), 0.500, 0.500, False, False),
    "H3_3": (3, (1, 3), 0.239, 0.761, False, False),
    "H3_4": (3, (1, 3), 0.315, 0.707, False, False),
    "H4_1": (4, (3, 4), 0.397, None, False, True),
    "H4_2": (4, (3, 4), 0.397, None, False, True),
    "H4_3": (4, (1, 3), None, None, True, True),
    "H4_4": (4, (1, 3), 0.288, None, False, False),
}

# Representatives recovered by identify_presets(); tests re-run the search
# and assert these reappear.  The H4_1 and H4_2 rows share one signature, so
# two distinct members of the common match class are shipped.
PRESETS = {
    "H3_1": Hypergraph(3, [(1, 2, 3)]),
    "H3_2": Hypergraph(3, [(1, 2), (1, 2, 3)]),
    "H3_3": Hypergraph(3, [(1, 2), (2, 3), (1, 2, 3)]),
    "H3_4": Hypergraph(3, [(1, 2), (1, 3), (2, 3), (1, 2, 3)]),
    "H4_1": Hypergraph(4, [(1, 2), (2, 3), (2, 4), (1, 3, 4)]),
    "H4_2": Hypergraph(4, [(1, 2), (1, 3), (1, 4), (2, 3, 4)]),
    "H4_3": Hypergraph(4, [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]),
    "H4_4": Hypergraph(4, [(1, 3), (1, 4), (2, 3), (1, 2, 3), (1, 2, 4), (1, 3, 4)]),
}


@dataclass(frozen=True)
class Signature:
    """Search fingerprint of one candidate hypergraph."""

    esd: tuple
    esb: tuple
    is_3_uniform: bool
    maximally_mixed_marginals: bool


@dataclass(frozen=True)
class MatchReport:
    """All candidates whose signature matches each target row."""

    matches: dict  # name -> list[Hypergraph]
    signatures: dict  # Hypergraph -> dict[pair, Signature]

    def ambiguous(self):
        return {k: v for k, v in self.matches.items() if len(v) > 1}


def candidate_hypergraphs(n):
    """Every hypergraph on n vertices, cardinalities {2, 3}, >= one 3-edge."""
    verts = range(1, n + 1)
    two_edges = list(combinations(verts, 2))
    three_edges = list(combinations(verts, 3))
    out = []
    for mask3 in range(1, 1 << len(three_edges)):
        e3 = [three_edges[i] for i in range(len(three_edges)) if mask3 >> i & 1]
        for mask2 in range(1 << len(two_edges)):
            e2 = [two_edges[i] for i in range(len(two_edges)) if mask2 >> i & 1]
            out.append(Hypergraph(n, e2 + e3))
    return out


def has_maximally_mixed_marginals(h, tol=1e-10):
    """True iff every single-qubit marginal of the pure state |H> is 1/2."""
    rho = density(hypergraph_state(h))
    half = np.eye(2) / 2.0
    return all(
        np.abs(partial_trace(rho, (q,)) - half).max() <= tol
        for q in range(1, h.n_vertices + 1)
    )


def signature(h, pair, step=0.01):
    """Concurrence ESD/ESB thresholds of the p2 sweep at p3 = 1, plus flags."""

    def f(p2):
        rho = randomize(h, {2: p2, 3: 1.0})
        return reduced_concurrence(rho, *pair)

    rep = scan_thresholds(f, step=step)
    return Signature(rep.esd_points, rep.esb_points, h.is_k_uniform(3),
                     has_maximally_mixed_marginals(h))


def _row_matches(sig, esd, esb, uniform, mixed):
    def points_match(points, target):
        if target is None:
            return not points
        return len(points) == 1 and abs(points[0] - target) <= MATCH_TOL

    if uniform and not sig.is_3_uniform:
        return False
    if mixed and not sig.maximally_mixed_marginals:
        return False
    return points_match(sig.esd, esd) and points_match(sig.esb, esb)


def identify_presets(step=0.01, progress=None):
    """Search the candidate space and report all matches per target row.

    The H3_2 row is pinned a priori to {{1,2},{1,2,3}}; it is still
    searched, as a sanity check that the search rediscovers it.
    """
    matches = {name: [] for name in TARGETS}
    signatures = {}
    for n in (3, 4):
        pairs = {pair for tn, pair, *_ in TARGETS.values() if tn == n}
        for h in candidate_hypergraphs(n):
            sigs = {pair: signature(h, pair, step=step) for pair in pairs}
            signatures[h] = sigs
            if progress is not None:
                progress(h)
            for name, (tn, pair, esd, esb, uniform, mixed) in TARGETS.items():
                if tn == n and _row_matches(sigs[pair], esd, esb, uniform, mixed):
                    matches[name].append(h)
    assert PRESETS["H3_2"] in matches["H3_2"], "search lost the pinned H3_2"
    return MatchReport(matches, signatures)
