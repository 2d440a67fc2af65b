import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fixtures import fan
from oracles import permutation_hamiltonian
from hamcycles.cycles import cycle_from_walk
from hamcycles.decision import (
    BudgetExceeded,
    Certificate,
    Outcome,
    Reason,
    decide,
    oracle_hamiltonian,
    verify_certificate,
    xor_all,
)
from hamcycles.graph import build_graph
from hamcycles.grinberg import SolutionConfig
from hamcycles.harness import enumerate_labeled_graphs, generate_gnp, named_graph


# oracle ---------------------------------------------------------------------------


@pytest.mark.parametrize("n", range(3, 12))
def test_oracle_on_cycles(n):
    g = named_graph(f"cycle({n})")
    cert = oracle_hamiltonian(g)
    assert cert is not None and verify_certificate(g, cert)


@pytest.mark.parametrize("name, expected", [("k4", True), ("k5", True), ("wheel(8)", True), ("fan(9)", True),
                                            ("petersen", False), ("herschel", False), ("tutte", False)])
def test_oracle_named(name, expected):
    g = named_graph(name)
    cert = oracle_hamiltonian(g)
    assert (cert is not None) == expected
    if cert:
        assert verify_certificate(g, cert)


def test_oracle_trivial_graphs():
    assert oracle_hamiltonian(build_graph(1, [])) is None
    assert oracle_hamiltonian(build_graph(2, [(0, 1)])) is None
    assert oracle_hamiltonian(build_graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])) is None


def test_oracle_budget():
    g = named_graph("tutte")
    with pytest.raises(BudgetExceeded) as info:
        oracle_hamiltonian(g, budget=5)
    assert info.value.nodes == 6


@pytest.mark.parametrize("n", range(1, 6))
def test_oracle_matches_permutations_exhaustively(n):
    for g in enumerate_labeled_graphs(n, connected_only=False):
        assert (oracle_hamiltonian(g) is not None) == permutation_hamiltonian(g)


@settings(max_examples=60, deadline=None)
@given(st.integers(6, 8), st.sampled_from([0.3, 0.5, 0.8]), st.integers(0, 10**6))
def test_oracle_matches_permutations_random(n, p, seed):
    g = generate_gnp(n, p, seed)
    assert (oracle_hamiltonian(g) is not None) == permutation_hamiltonian(g)


# certificates and sums ------------------------------------------------------------


def test_verify_certificate():
    g = named_graph("wheel(5)")
    assert verify_certificate(g, [0, 1, 2, 3, 4])
    assert verify_certificate(g, Certificate((1, 2, 3, 4, 0)))
    assert not verify_certificate(g, [0, 1, 2, 3])  # too short
    assert not verify_certificate(g, [0, 1, 1, 3, 4])  # repeated vertex
    assert not verify_certificate(g, [0, 1, 3, 2, 4])  # 1-3 is not an edge
    assert not verify_certificate(build_graph(2, [(0, 1)]), [0, 1])


def test_xor_all():
    g, tris = fan(6)
    rim = cycle_from_walk(range(6), g)
    assert xor_all(tris, g.m) == rim.edges
    assert xor_all([tris[0], tris[0]], g.m).bits == 0
    assert xor_all([], g.m).bits == 0 and xor_all([], g.m).m == g.m


# decide -----------------------------------------------------------------------------


def test_decide_cycle():
    g = named_graph("cycle(5)")
    verdict, trace = decide(g)
    assert verdict.outcome is Outcome.HAMILTONIAN
    assert verify_certificate(g, verdict.certificate)
    assert trace.of("solutions")[0]["count"] == 1


def test_decide_petersen_no_solution():
    verdict, trace = decide(named_graph("petersen"))
    assert verdict.outcome is Outcome.NON_HAMILTONIAN and verdict.reason is Reason.NO_SOLUTION
    assert trace.events[-1]["event"] == "verdict"


def test_decide_wheel():
    g = named_graph("wheel(5)")
    verdict, trace = decide(g)
    assert verdict.outcome is Outcome.HAMILTONIAN
    assert verify_certificate(g, verdict.certificate)
    # four basis triangles, target 3: each solution leaves one triangle to delete
    assert trace.of("solutions")[0]["count"] == 4
    assert len(trace.of("delete")) == 1


@pytest.mark.parametrize("n", range(4, 11))
def test_decide_fans(n):
    g, _ = fan(n)
    verdict, _ = decide(g)
    assert verdict.outcome is Outcome.HAMILTONIAN
    assert sorted(verdict.certificate.walk) == list(range(n))


def test_decide_disconnected():
    g = build_graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    verdict, _ = decide(g)
    assert (verdict.outcome, verdict.reason) == (Outcome.NON_HAMILTONIAN, Reason.DISCONNECTED)


def test_decide_tree_has_no_solution():
    g = build_graph(4, [(0, 1), (1, 2), (1, 3)])
    verdict, _ = decide(g)
    assert verdict.reason is Reason.NO_SOLUTION


def test_decide_bowtie_obstruction():
    # two triangles sharing vertex 0, plus a third: three blocks at a cut vertex
    g = build_graph(7, [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4), (0, 5), (5, 6), (0, 6)])
    verdict, trace = decide(g, SolutionConfig(pool="all"))
    assert verdict.outcome is Outcome.NON_HAMILTONIAN
    assert verdict.reason in (Reason.NO_SOLUTION, Reason.PROP31)


def test_prop32_fatal_switch():
    g = named_graph("k5")
    cfg = SolutionConfig(pool="all")
    soft, soft_trace = decide(g, cfg)
    hard, _ = decide(g, cfg, prop32_fatal=True)
    rec = soft_trace.of("prop32_pool")[0]
    if rec["vertex"] is None:
        assert hard == soft
    else:
        assert hard.reason is Reason.PROP32


def test_verdict_record_is_json():
    verdict, trace = decide(named_graph("wheel(6)"))
    json.dumps(verdict.to_record())
    json.dumps(trace.to_records())
    assert verdict.says_hamiltonian


@pytest.mark.parametrize("kind", ["mcb", "fundamental", "all"])
def test_decide_deterministic(kind):
    g = generate_gnp(7, 0.6, 11)
    a = decide(g, SolutionConfig(pool=kind))
    b = decide(g, SolutionConfig(pool=kind))
    assert a[0] == b[0]
    assert a[1].to_records() == b[1].to_records()


def test_replay_matches_logged_remaining():
    seen = 0
    for g in enumerate_labeled_graphs(5, connected_only=True):
        verdict, trace = decide(g, SolutionConfig(pool="all"))
        for x in trace.of("xor"):
            seen += 1
            assert trace.replay(x["solution"]) == x["remaining"]
            pool = trace.of("pool")[0]["cycles"]
            acc = set()
            for i in x["remaining"]:
                acc ^= {frozenset(p) for p in zip(pool[i], pool[i][1:] + pool[i][:1])}
            assert sorted(g.edge_id(*sorted(e)) for e in acc) == x["edges"]
    assert seen > 0


@pytest.mark.parametrize("kind", ["mcb", "fundamental", "all"])
def test_soundness_exhaustive_five(kind):
    cfg = SolutionConfig(pool=kind)
    for g in enumerate_labeled_graphs(5, connected_only=False):
        verdict, _ = decide(g, cfg)
        truth = permutation_hamiltonian(g)
        if verdict.outcome is Outcome.HAMILTONIAN:
            assert truth and verify_certificate(g, verdict.certificate)
        if not truth:
            assert verdict.outcome is not Outcome.HAMILTONIAN


@settings(max_examples=40, deadline=None)
@given(st.integers(5, 9), st.sampled_from([0.3, 0.5, 0.8]), st.integers(0, 10**6))
def test_soundness_random(n, p, seed):
    g = generate_gnp(n, p, seed)
    verdict, _ = decide(g)
    if verdict.outcome is Outcome.HAMILTONIAN:
        assert verify_certificate(g, verdict.certificate)
        assert oracle_hamiltonian(g) is not None
