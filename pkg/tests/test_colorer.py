import pytest
from hypothesis import given
from hypothesis import strategies as st

from fourcolor.colorer import (
    BranchFailure,
    CaseTag,
    RecoveryPolicy,
    color_base,
    four_color,
    neighbor_color_set,
    reinsert_and_color,
)
from fourcolor.errors import DomainError, EmbeddingError, NonPlanarEvidence
from fourcolor.generators import apollonian_flipped, errera, icosahedron, k4, k5, k5_minus_edge
from fourcolor.graph import EmbeddedGraph, verify_coloring
from fourcolor.kempe import ColorPair
from fourcolor.oracle import exact_k_coloring

from .conftest import ALL_CONFIGS, config_c, config_h, triangulations

# tag, color given to vertex 0, final rim colors v1..vd (fixtures are already
# in canonical color order, so no renaming happens)
EXPECTED = {
    "C3_1": (4, [1, 2, 1, 3]),
    "C3_2_1": (3, [1, 2, 1, 4]),
    "C3_2_2": (2, [1, 4, 3, 4]),
    "C3_3_1_1": (3, [1, 2, 1, 4, 1]),
    "C3_3_1_2": (2, [1, 4, 3, 4, 1]),
    "C3_3_2_1": (4, [1, 2, 1, 3, 2]),
    "C3_3_2_2_1": (3, [1, 2, 1, 2, 4]),
    "C3_3_2_2_2": (1, [3, 2, 4, 3, 4]),
}


def _reinsert(cfg, **kw):
    g = cfg.graph
    step = g.remove_vertex(0)
    col, rec = reinsert_and_color(g, cfg.coloring, step, **kw)
    return g, col, rec


def test_verify_coloring():
    assert verify_coloring(k4(), {0: 1, 1: 2, 2: 3, 3: 4}) == []
    edge = EmbeddedGraph({0: [1], 1: [0]})
    assert verify_coloring(edge, {0: 1, 1: 1}) == [(0, 1)]
    assert verify_coloring(edge, {0: 1}) == [(1, 1)]


def test_neighbor_color_set():
    g = EmbeddedGraph({0: [1, 2, 3, 4, 5], 1: [0], 2: [0], 3: [0], 4: [0], 5: [0]})
    assert neighbor_color_set(g, {1: 1, 2: 2, 3: 3, 4: 4, 5: 1}, 0) == {1, 2, 3, 4}
    assert neighbor_color_set(g, {1: 2, 2: 2, 3: 2, 4: 2, 5: 2}, 0) == {2}
    with pytest.raises(DomainError):
        neighbor_color_set(g, {1: 1}, 0)


def test_color_base():
    col = color_base(k4())
    assert sorted(col.values()) == [1, 2, 3, 4]
    g = k5_minus_edge()
    col = color_base(g)
    assert verify_coloring(g, col) == []
    # poles 3 and 4 are the only non-adjacent pair
    assert col[3] == col[4]
    with pytest.raises(NonPlanarEvidence):
        color_base(k5())
    with pytest.raises(DomainError):
        color_base(icosahedron())


def test_every_fixture_takes_its_branch(any_config):
    tag, cfg = any_config
    g, col, rec = _reinsert(cfg)
    color, rim = EXPECTED[tag]
    assert rec.tag == CaseTag(tag)
    assert col[0] == rec.color == color
    assert [col[v] for v in g.neighbors_cyclic(0)] == rim
    assert verify_coloring(g, col) == []


def test_double_swap_fixture_intermediate_states():
    g, col, rec = _reinsert(config_h())
    # first (1,4) swap at v3, then (1,3) swap at v1 on the updated coloring
    assert rec.swaps == [(ColorPair(1, 4), 3), (ColorPair(1, 3), 1)]
    assert col[3] == 4 and col[1] == 3 and col[0] == 1


def test_degree4_opposite_labels():
    cfg = config_c()
    rot = cfg.graph.neighbors_cyclic(0)
    assert (rot.index(3) - rot.index(1)) % 4 == 2
    assert (rot.index(4) - rot.index(2)) % 4 == 2


def test_renaming_is_recorded():
    cfg = ALL_CONFIGS["C3_2_1"]()
    cfg.coloring = {v: {1: 3, 2: 1, 3: 4, 4: 2}[c] for v, c in cfg.coloring.items()}
    g, col, rec = _reinsert(cfg)
    assert rec.tag == CaseTag.C3_2_1
    assert rec.permutation == (0, 2, 4, 1, 3)
    assert rec.neighbor_colors == (3, 1, 4, 2)
    assert verify_coloring(g, col) == []


def test_rotated_labels_still_dispatch():
    # same configuration with the duplicate pair sitting elsewhere in the rotation
    cfg = ALL_CONFIGS["C3_3_2_1"]()
    shift = {1: 3, 2: 4, 3: 5, 4: 1, 5: 2}
    cfg.coloring = {shift.get(v, v): c for v, c in cfg.coloring.items()}
    cfg.graph = EmbeddedGraph(
        {shift.get(v, v): [shift.get(u, u) for u in r] for v, r in cfg.graph.rotations().items()}
    )
    g, col, rec = _reinsert(cfg)
    assert rec.tag == CaseTag.C3_3_2_1
    assert verify_coloring(g, col) == []


def test_high_degree_with_four_colors_is_domain_error():
    g = EmbeddedGraph({0: [1, 2, 3, 4, 5, 6], **{i: [0] for i in range(1, 7)}})
    step = g.remove_vertex(0)
    with pytest.raises(DomainError):
        reinsert_and_color(g, {1: 1, 2: 2, 3: 3, 4: 4, 5: 1, 6: 2}, step)
    assert 0 not in g


def test_uncolored_neighbor_is_domain_error():
    cfg = ALL_CONFIGS["C3_1"]()
    step = cfg.graph.remove_vertex(0)
    with pytest.raises(DomainError):
        reinsert_and_color(cfg.graph, {1: 1}, step)


@pytest.mark.parametrize(
    "name, fault, claim, witness",
    [
        ("C3_2_2", "C3_2_2:separation(2,4)", "separation(2,4)", (2, 4)),
        ("C3_2_2", "C3_2_2:chain(1,3)", "chain(1,3)", (1, 3)),
        ("C3_3_1_2", "C3_3_1_2:separation(2,4)", "separation(2,4)", (2, 4)),
        ("C3_3_2_2_2", "C3_3_2_2_2:separation(1,4)", "separation(1,4)", (3, 5)),
        ("C3_3_2_2_2", "C3_3_2_2_2:chain(2,4)", "chain(2,4)", (2, 5)),
        ("C3_3_2_2_2", "C3_3_2_2_2:separation(1,3)", "separation(1,3)", (1, 4)),
        ("C3_3_2_2_2", "C3_3_2_2_2:proper", "proper", ()),
    ],
)
def test_injected_fault_is_reported_and_replays(name, fault, claim, witness):
    cfg = ALL_CONFIGS[name]()
    g = cfg.graph
    before = g.copy()
    before.remove_vertex(0)
    step = g.remove_vertex(0)
    with pytest.raises(BranchFailure) as info:
        reinsert_and_color(g, cfg.coloring, step, inject=[fault])
    rep = info.value.report
    assert (rep.tag, rep.claim, rep.witness) == (CaseTag(name), claim, witness)
    assert g == before  # failed reinsertion leaves the graph as it was
    again = rep.replay()
    assert again is not None and again.key() == rep.key()


def test_no_failure_carries_c3_1():
    cfg = ALL_CONFIGS["C3_1"]()
    # C3_1 makes no claims, so even an injected fault cannot fire there
    _, col, rec = _reinsert(cfg, inject=["C3_1:proper"])
    assert rec.tag == CaseTag.C3_1 and col[0] == 4


def test_four_color_single_vertex():
    out = four_color(EmbeddedGraph({0: []}))
    assert out.ok and out.coloring == {0: 1}
    assert [r.tag for r in out.trace] == [CaseTag.C1]


def test_four_color_empty_graph():
    out = four_color(EmbeddedGraph())
    assert out.ok and out.coloring == {}


def test_four_color_icosahedron():
    g = icosahedron()
    out = four_color(g, check_induction=True)
    assert out.ok and verify_coloring(g, out.coloring) == []
    assert exact_k_coloring(g, 4).found
    assert any(t.value.startswith("C3_3") for t in out.histogram())


def test_errera_breaks_the_double_swap():
    g = errera()
    out = four_color(g, RecoveryPolicy.fail())
    assert not out.ok and not out.failure.injected
    assert (out.failure.tag, out.failure.claim) == (CaseTag.C3_3_2_2_2, "chain(2,4)")
    assert out.failure.replay().key() == out.failure.key()
    out = four_color(g)
    assert out.ok and out.recovery_used == "retry(1)"
    assert verify_coloring(g, out.coloring) == []


def test_four_color_rejects_bad_embedding():
    with pytest.raises(EmbeddingError):
        four_color(k5())


def test_four_color_does_not_mutate_input():
    g = apollonian_flipped(30, 1, 50)
    snapshot = g.copy()
    four_color(g)
    assert g == snapshot


def test_disconnected_input():
    tri = {0: [1, 2], 1: [2, 0], 2: [0, 1]}
    g = EmbeddedGraph({**tri, 3: [4, 5], 4: [5, 3], 5: [3, 4], 6: []})
    out = four_color(g)
    assert out.ok and verify_coloring(g, out.coloring) == []
    assert [r.tag for r in out.trace] == [CaseTag.C1] * 3


def test_trace_has_one_entry_per_step():
    g = apollonian_flipped(40, 8, 80)
    out = four_color(g, RecoveryPolicy.fail())
    assert out.ok
    assert len(out.trace) == 1 + (40 - 5)
    assert sorted(r.vertex for r in out.trace[1:]) == sorted(set(r.vertex for r in out.trace[1:]))


@given(triangulations(max_n=40, max_flips=120), st.integers(0, 1000))
def test_soundness_gate(g, elim_seed):
    out = four_color(g, check_induction=True, elimination_seed=elim_seed)
    assert out.ok
    assert verify_coloring(g, out.coloring) == []
    assert out.colors_used() <= 4
    for rec in out.trace:
        assert rec.tag in CaseTag
    for rep in out.failures_observed:
        assert rep.tag != CaseTag.C3_1


# --------------------------------------------------------------- recovery


def _graph_hitting(tag: CaseTag):
    for seed in range(200):
        g = apollonian_flipped(30, seed, 60)
        out = four_color(g, RecoveryPolicy.fail(), elimination_seed=seed)
        if out.ok and out.histogram().get(tag):
            return g, seed
    raise AssertionError(f"no generated graph reaches {tag}")


def test_fail_policy_returns_report():
    g, seed = _graph_hitting(CaseTag.C3_2_2)
    out = four_color(g, RecoveryPolicy.fail(), inject=["C3_2_2:separation(2,4)"], elimination_seed=seed)
    assert not out.ok and out.coloring is None
    rep = out.failure
    assert rep.tag == CaseTag.C3_2_2 and rep.claim == "separation(2,4)"
    assert rep.sequence and rep.vertex in rep.sequence
    assert rep.replay().key() == rep.key()


def test_fallback_policy_recovers_injected_fault():
    g, seed = _graph_hitting(CaseTag.C3_2_2)
    out = four_color(g, RecoveryPolicy.exact_fallback(), inject=["C3_2_2:separation(2,4)"], elimination_seed=seed)
    assert out.ok and out.recovery_used == "exact_fallback"
    assert verify_coloring(g, out.coloring) == []
    assert any(r.fallback for r in out.trace)
    assert out.failures_observed


def test_fallback_respects_size_limit():
    g, seed = _graph_hitting(CaseTag.C3_2_2)
    policy = RecoveryPolicy(retries=0, fallback=True, fallback_max_vertices=5)
    out = four_color(g, policy, inject=["C3_2_2:separation(2,4)"], elimination_seed=seed)
    assert not out.ok


def test_retry_policy_uses_other_orders():
    g, seed = _graph_hitting(CaseTag.C3_2_2)
    out = four_color(g, RecoveryPolicy.retry(2), inject=["C3_2_2:separation(2,4)"], elimination_seed=seed)
    # the fault fires on every attempt that reaches C3_2_2, so either a retry
    # avoided the branch or all attempts failed
    assert out.recovery_used.startswith("retry") or (not out.ok)
    if out.ok:
        assert CaseTag.C3_2_2 not in out.histogram()


@pytest.mark.parametrize(
    "text, expected",
    [("fail", (0, False)), ("retry=4", (4, False)), ("fallback", (0, True)), ("default", (3, True))],
)
def test_policy_parse(text, expected):
    p = RecoveryPolicy.parse(text)
    assert (p.retries, p.fallback) == expected


@pytest.mark.parametrize("bad", ["retry=", "retry=-1", "sometimes"])
def test_policy_parse_errors(bad):
    with pytest.raises(ValueError):
        RecoveryPolicy.parse(bad)
