import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fixtures import bowtie3, fan, figure3, lemma31_fixture
from oracles import all_cycle_edge_sets
from hamcycles.cycles import cycle_from_walk
from hamcycles.graph import build_graph
from hamcycles.grinberg import GrinbergSolution, SolutionConfig, build_pool, enumerate_solutions
from hamcycles.harness import generate_gnp, named_graph
from hamcycles.removal import (
    ConstraintState,
    Contradiction,
    CycleNotInSet,
    IsolatedInSet,
    VertexClass,
    WorkingSet,
    classify_vertex,
    edge_multiplicities,
    is_removable,
    lemma31_check,
    prop31_violation,
    prop31_witness,
    prop32_violation,
    propagate_rules,
)


def mask_of(g, pairs):
    bits = 0
    for u, v in pairs:
        bits |= 1 << g.edge_id(u, v)
    return bits


# multiplicities and vertex classes -----------------------------------------------


def test_fan_multiplicities():
    g, tris = fan(5)
    mm = edge_multiplicities(tris, g)
    assert mm[g.edge_id(0, 2)] == mm[g.edge_id(0, 3)] == 2
    for u, v in [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]:
        assert mm[g.edge_id(u, v)] == 1
    assert mm.mask(2) == mask_of(g, [(0, 2), (0, 3)])
    assert mm.support == g.full_mask


def test_multiplicities_of_empty_set():
    g = named_graph("k4")
    mm = edge_multiplicities([], g)
    assert mm.counts == (0,) * 6 and mm.support == 0


def test_classify_fan():
    g, tris = fan(6)
    mm = edge_multiplicities(tris, g)
    assert classify_vertex(0, mm, g) is VertexClass.MIXED
    assert classify_vertex(1, mm, g) is VertexClass.BOUNDARY
    assert classify_vertex(5, mm, g) is VertexClass.BOUNDARY
    assert classify_vertex(3, mm, g) is VertexClass.MIXED


def test_classify_lone_cycle_and_k4():
    g = named_graph("cycle(5)")
    mm = edge_multiplicities([cycle_from_walk(range(5), g)], g)
    assert all(classify_vertex(v, mm, g) is VertexClass.BOUNDARY for v in range(5))

    k4 = named_graph("k4")
    tris = [cycle_from_walk(w, k4) for w in ([0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3])]
    mm = edge_multiplicities(tris, k4)
    assert all(classify_vertex(v, mm, k4) is VertexClass.INTERIOR for v in range(4))


def test_classify_isolated():
    g = named_graph("k4")
    mm = edge_multiplicities([cycle_from_walk([0, 1, 2], g)], g)
    with pytest.raises(IsolatedInSet):
        classify_vertex(3, mm, g)


# propagation -----------------------------------------------------------------------


def test_cycle_graph_forces_everything():
    g = named_graph("cycle(6)")
    out = propagate_rules(g, ConstraintState(g))
    assert out.required == g.full_mask and out.forbidden == 0
    assert out.undecided == 0


def test_two_required_forbid_the_rest():
    g = named_graph("k5")
    out = propagate_rules(g, ConstraintState(g, mask_of(g, [(0, 1), (0, 2)])))
    for w in (3, 4):
        assert out.status(g.edge_id(0, w)) == "forbidden"
    # closing 1-2 would make a triangle
    assert out.status(g.edge_id(1, 2)) == "forbidden"
    assert out.status(g.edge_id(3, 4)) == "undecided"


def test_subcycle_contradiction():
    g = build_graph(6, [(u, v) for u in range(6) for v in range(u + 1, 6)])
    with pytest.raises(Contradiction) as info:
        propagate_rules(g, ConstraintState(g, mask_of(g, [(0, 1), (1, 2), (0, 2)])))
    assert info.value.rule == 2


def test_degree_contradictions():
    g = named_graph("k4")
    with pytest.raises(Contradiction) as info:
        propagate_rules(g, ConstraintState(g, mask_of(g, [(0, 1), (0, 2), (0, 3)])))
    assert info.value.rule == 3 and info.value.vertex == 0
    with pytest.raises(Contradiction) as info:
        propagate_rules(g, ConstraintState(g, 0, mask_of(g, [(0, 1), (0, 2)])))
    assert info.value.rule == 1 and info.value.vertex == 0


def test_overlapping_seed():
    g = named_graph("k4")
    e = mask_of(g, [(0, 1)])
    with pytest.raises(Contradiction) as info:
        propagate_rules(g, ConstraintState(g, e, e))
    assert info.value.to_record() == {"rule": 0, "vertex": None, "edge": g.edge_id(0, 1)}


def test_hamilton_cycle_seed_is_consistent():
    g = named_graph("wheel(7)")
    h = mask_of(g, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 0)])
    out = propagate_rules(g, ConstraintState(g, h))
    assert out.required == h and out.forbidden == g.full_mask & ~h


graphs = st.builds(
    generate_gnp,
    st.integers(4, 7),
    st.sampled_from([0.4, 0.6, 0.9]),
    st.integers(0, 10**6),
)


@st.composite
def seeded_states(draw):
    g = draw(graphs)
    req = draw(st.integers(0, g.full_mask)) if g.m else 0
    forb = draw(st.integers(0, g.full_mask)) & ~req if g.m else 0
    return g, req, forb


@settings(max_examples=150, deadline=None)
@given(seeded_states())
def test_propagation_keeps_every_compatible_hamilton_cycle(state):
    g, req, forb = state
    hams = [sum(1 << k for k in c) for c in all_cycle_edge_sets(g) if len(c) == g.n]
    compatible = [h for h in hams if h & req == req and not h & forb]
    try:
        out = propagate_rules(g, ConstraintState(g, req, forb))
    except Contradiction:
        assert not compatible
        return
    for h in compatible:
        assert h & out.required == out.required and not h & out.forbidden


@settings(max_examples=100, deadline=None)
@given(seeded_states())
def test_propagation_idempotent_and_extensive(state):
    g, req, forb = state
    try:
        out = propagate_rules(g, ConstraintState(g, req, forb))
    except Contradiction:
        return
    assert out.required & req == req and out.forbidden & forb == forb
    again = propagate_rules(g, out)
    assert (again.required, again.forbidden) == (out.required, out.forbidden)


@settings(max_examples=100, deadline=None)
@given(seeded_states(), st.integers(0, 2**21))
def test_propagation_monotone(state, extra):
    g, req, forb = state
    req2 = req | (extra & g.full_mask & ~forb)
    try:
        big = propagate_rules(g, ConstraintState(g, req2, forb))
    except Contradiction:
        return
    small = propagate_rules(g, ConstraintState(g, req, forb))
    assert big.required & small.required == small.required
    assert big.forbidden & small.forbidden == small.forbidden


# removability ----------------------------------------------------------------------


def test_wheel_triangles_removable():
    g = named_graph("wheel(5)")
    pool = build_pool(g, SolutionConfig())
    assert len(pool) == 4
    for c in pool:
        assert is_removable(c, pool, g).removable


def test_lone_cycle_not_removable():
    g = named_graph("cycle(5)")
    c = cycle_from_walk(range(5), g)
    report = is_removable(c, [c], g)
    assert not report.removable
    assert report.reasons[0] == {"kind": "coverage", "vertices": [0, 1, 2, 3, 4]}


def test_middle_triangle_deletion_hits_r1_bound():
    g, pool = figure3()
    report = is_removable(pool[2], pool, g)
    assert not report.removable
    assert {"kind": "prop32", "vertex": 0} in report.reasons
    assert prop32_violation(edge_multiplicities(pool[:2], g), g) == 0


def test_cycle_not_in_set():
    g = named_graph("k4")
    a, b = cycle_from_walk([0, 1, 2], g), cycle_from_walk([0, 1, 3], g)
    with pytest.raises(CycleNotInSet):
        is_removable(b, [a], g)


@settings(max_examples=80, deadline=None)
@given(graphs, st.sampled_from(["mcb", "fundamental", "all"]), st.data())
def test_working_set_agrees_with_recount(g, kind, data):
    from hamcycles.graph import is_connected

    if not is_connected(g) or g.m < g.n:
        return
    pool = build_pool(g, SolutionConfig(pool=kind))
    alive = data.draw(st.sets(st.sampled_from(range(len(pool))), min_size=1))
    subset = [pool[i] for i in sorted(alive)]
    work = WorkingSet(g, pool, sorted(alive))
    for pos, i in enumerate(sorted(alive)):
        assert work.removable(i) == is_removable(pool[i], subset, g).removable
        # deleting incrementally matches building from scratch
        after = work.without(i)
        fresh = WorkingSet(g, pool, [j for j in alive if j != i])
        assert (after.ones, after.twos, after.support) == (fresh.ones, fresh.twos, fresh.support)


# global obstructions ---------------------------------------------------------------


@pytest.mark.parametrize("n", range(4, 13))
def test_fans_have_no_r1_excess(n):
    g, tris = fan(n)
    assert prop32_violation(edge_multiplicities(tris, g), g) is None


def test_r1_excess_at_bowtie_centre():
    g, tris = bowtie3()
    assert prop32_violation(edge_multiplicities(tris, g), g) == 0


def test_three_irremovable_cycles_at_one_vertex():
    g, tris = bowtie3()
    assert prop31_witness(tris, g) == (0, [0, 1, 2])
    assert prop31_violation(tris, g)


def test_fan_has_no_three_cycle_obstruction():
    g, tris = fan(6)
    assert not prop31_violation(tris, g)


def test_lemma_fires_on_fixture():
    g, pool = lemma31_fixture()
    sols = enumerate_solutions(pool, g.n)
    assert [s.solution for s in sols] == [(2,)]
    work = WorkingSet(g, pool)
    assert not any(work.removable(i) for i in range(3))
    found = lemma31_check(pool, sols, g)
    assert found is not None and found.walk == (0, 1, 4)
    mm = edge_multiplicities(pool, g)
    assert all(mm[k] == 2 for k in found.edges.ids())


def test_lemma_needs_unique_solution_and_no_removable_cycle():
    g, pool = lemma31_fixture()
    sol = GrinbergSolution((2,), 3)
    assert lemma31_check(pool, [sol, sol], g) is None
    w = named_graph("wheel(5)")
    wpool = build_pool(w, SolutionConfig())
    assert lemma31_check(wpool, enumerate_solutions(wpool, w.n), w) is None
