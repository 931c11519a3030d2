import numpy as np
import pytest

from rhstates.hypergraph import Hypergraph
from rhstates.presets import (
    PRESETS,
    TARGETS,
    candidate_hypergraphs,
    has_maximally_mixed_marginals,
    identify_presets,
    signature,
)


def test_candidate_space_sizes():
    assert len(candidate_hypergraphs(3)) == 8  # one 3-edge forced, 2^3 graphs
    assert len(candidate_hypergraphs(4)) == (2 ** 4 - 1) * 2 ** 6
    for h in candidate_hypergraphs(3):
        assert any(len(e) == 3 for e in h.edges)


def test_h32_signature():
    sig = signature(PRESETS["H3_2"], (1, 3))
    assert len(sig.esd) == 1 and abs(sig.esd[0] - 0.5) < 0.005
    assert len(sig.esb) == 1 and abs(sig.esb[0] - 0.5) < 0.005


def test_h31_signature_empty():
    sig = signature(PRESETS["H3_1"], (1, 3))
    assert sig.esd == () and sig.esb == ()
    assert sig.is_3_uniform


def test_h33_h34_signatures():
    sig = signature(PRESETS["H3_3"], (1, 3))
    assert abs(sig.esd[0] - 0.239) < 0.005
    assert abs(sig.esb[0] - 0.761) < 0.005
    sig = signature(PRESETS["H3_4"], (1, 3))
    assert abs(sig.esd[0] - 0.315) < 0.005
    assert abs(sig.esb[0] - 0.707) < 0.005


def test_marginal_flags():
    assert has_maximally_mixed_marginals(PRESETS["H4_3"])
    assert has_maximally_mixed_marginals(PRESETS["H4_1"])
    assert not has_maximally_mixed_marginals(PRESETS["H3_2"])


def test_preset_consistency_with_targets():
    for name, h in PRESETS.items():
        n, pair, esd, esb, uniform, mixed = TARGETS[name]
        assert h.n_vertices == n
        if uniform:
            assert h.is_k_uniform(3)
        if mixed:
            assert has_maximally_mixed_marginals(h)


@pytest.mark.slow
def test_search_rediscovers_shipped_presets():
    report = identify_presets()
    for name, h in PRESETS.items():
        assert h in report.matches[name], name
    # H3_2 must be rediscoverable from its signature alone
    assert PRESETS["H3_2"] in report.matches["H3_2"]
    # ambiguity is surfaced, not silently resolved
    assert "H3_2" in report.ambiguous()  # {2,3}+{1,2,3} relabeling also matches
