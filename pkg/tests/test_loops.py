import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from acdkit import (Automaton, BuchiCondition, CapExceeded, Loop,
                    MullerCondition, TransitionSystem, accessible_x_scc,
                    alternating_children, build_zielonka_tree,
                    build_zt_automaton, enumerate_reachable_loops, is_loop,
                    loop_status_over, sccs)
from conftest import random_muller_system
from oracles import naive_loops, naive_maximal_flipped


def test_sixstate_sccs(sixstate):
    ts, _ = sixstate
    maximal, transient = sccs(ts)
    assert [sorted(l.edges) for l in maximal] == \
        [["c", "d", "e"], ["g", "h", "i", "j", "k", "l"]]
    assert transient == frozenset({"a", "b", "f"})


def test_self_loop_scc():
    ts = TransitionSystem(["p"], [("e", "p", "p")], ["p"])
    maximal, transient = sccs(ts)
    assert len(maximal) == 1 and not transient


def test_dag_with_sink_self_loops():
    ts = TransitionSystem(
        ["p", "q", "r"],
        [("a", "p", "q"), ("b", "p", "r"), ("c", "q", "q"), ("d", "r", "r")],
        ["p"])
    maximal, transient = sccs(ts)
    assert sorted(sorted(l.edges) for l in maximal) == [["c"], ["d"]]
    assert transient == frozenset({"a", "b"})


def test_is_loop(sixstate):
    ts, _ = sixstate
    assert is_loop(ts, {"c", "d"})
    assert not is_loop(ts, {"c"})
    assert not is_loop(ts, set())
    assert is_loop(ts, {"g"})
    assert not is_loop(ts, {"c", "d", "g"})


def test_alternating_children_sixstate(sixstate):
    ts, cond = sixstate
    big = Loop.of(ts, {"g", "h", "i", "j", "k", "l"})
    kids = alternating_children(ts, cond, big)
    assert [sorted(l.edges) for l in kids] == \
        [["h", "i", "j", "k"], ["g", "h", "i"], ["l"]]
    ghi = Loop.of(ts, {"g", "h", "i"})
    kids = alternating_children(ts, cond, ghi)
    assert [sorted(l.edges) for l in kids] == [["h", "i"], ["g"]]


def test_alternating_children_trivial():
    ts = TransitionSystem(["p"], [("e", "p", "p")], ["p"])
    cond = MullerCondition([{"e"}])
    assert alternating_children(ts, cond, Loop.of(ts, {"e"})) == []


def test_alternating_children_cap(sixstate):
    ts, cond = sixstate
    big = Loop.of(ts, {"g", "h", "i", "j", "k", "l"})
    with pytest.raises(CapExceeded):
        alternating_children(ts, cond, big, explore_cap=2)


def test_enumerate_sixstate_small_scc(sixstate):
    ts, _ = sixstate
    found = {l.edges for l in enumerate_reachable_loops(ts)}
    assert frozenset({"c", "d"}) in found
    assert frozenset({"e"}) in found
    assert frozenset({"c", "d", "e"}) in found
    assert not any(l <= {"a", "b", "f"} for l in found)


def test_enumerate_two_self_loops():
    ts = TransitionSystem(["p"], [("x", "p", "p"), ("y", "p", "p")], ["p"])
    found = {l.edges for l in enumerate_reachable_loops(ts)}
    assert found == {frozenset({"x"}), frozenset({"y"}),
                     frozenset({"x", "y"})}


def test_enumerate_cap():
    ts = TransitionSystem(["p"], [("e%d" % i, "p", "p") for i in range(5)],
                          ["p"])
    with pytest.raises(CapExceeded):
        enumerate_reachable_loops(ts, cap=4)


def test_enumerate_matches_naive_oracle():
    rng = random.Random(7)
    for _ in range(25):
        ts, _ = random_muller_system(rng, max_vertices=4, max_edges=7)
        assert {l.edges for l in enumerate_reachable_loops(ts)} == \
            set(naive_loops(ts))


def test_alternating_children_matches_naive_oracle():
    rng = random.Random(11)
    checked = 0
    for _ in range(40):
        ts, cond = random_muller_system(rng, max_vertices=4, max_edges=7)
        maximal, _ = sccs(ts)
        for top in maximal:
            def status(edges):
                return loop_status_over(ts, cond, edges)
            got = {l.edges for l in alternating_children(ts, cond, top)}
            want = set(naive_maximal_flipped(ts, status, top.edges))
            assert got == want
            checked += 1
    assert checked > 20


def test_children_are_strict_subloops(sixstate):
    ts, cond = sixstate
    for top, _ign in [(l, None) for l in sccs(ts)[0]]:
        for kid in alternating_children(ts, cond, top):
            assert kid.edges < top.edges
            assert kid.states & top.states


def test_accessible_x_scc_zf1():
    zt = build_zt_automaton(
        build_zielonka_tree([{"a"}, {"b"}], {"a", "b", "c"}))
    assert accessible_x_scc(zt.automaton, {"a"}) == frozenset({"b0"})
    assert accessible_x_scc(zt.automaton, {"b"}) == frozenset({"b1"})
    only = accessible_x_scc(zt.automaton, set())
    assert len(only) == 1


def test_accessible_x_scc_closure_property():
    rng = random.Random(3)
    for _ in range(20):
        fam = [s for s in random_muller_system(rng, 3, 5)[1].family]
        gamma = {"a", "b", "c"}
        fam = [set(f) & gamma or {"a"} for f in fam] or [{"a"}]
        zt = build_zt_automaton(build_zielonka_tree(fam, gamma))
        letters = {"a", "b"}
        comp = accessible_x_scc(zt.automaton, letters)
        for q in comp:
            for a in letters:
                assert zt.automaton.step(q, a).target in comp


@st.composite
def small_system(draw):
    n = draw(st.integers(1, 4))
    vs = ["v%d" % i for i in range(n)]
    edges = []
    for i, v in enumerate(vs):
        edges.append(("e%d" % i, v, vs[draw(st.integers(0, n - 1))]))
    extra = draw(st.integers(0, 4))
    for i in range(extra):
        edges.append(("x%d" % i,
                      vs[draw(st.integers(0, n - 1))],
                      vs[draw(st.integers(0, n - 1))]))
    return TransitionSystem(vs, edges, [vs[0]])


@settings(max_examples=40, deadline=None)
@given(small_system(), st.randoms(use_true_random=False))
def test_loops_partition_property(ts, rng):
    maximal, transient = sccs(ts)
    covered = set(transient)
    for l in maximal:
        assert is_loop(ts, l.edges)
        assert not (covered - frozenset(transient)) & l.edges
        covered |= l.edges
    assert covered == {e.id for e in ts.edges}


def test_scc_cover_loop_oracle_matches_enumeration():
    # the existence oracle used by the acceptance suite agrees with direct
    # loop enumeration on small systems
    from oracles import loop_exists
    rng = random.Random(19)
    for _ in range(30):
        ts, _ = random_muller_system(rng, max_vertices=4, max_edges=7)
        reach = ts.reachable_vertices()
        edges = [(e.id, e.source, e.target) for e in ts.edges
                 if e.source in reach and e.target in reach]
        letter = {e.id: e.id[0] for e in ts.edges}   # bucket by first char
        prio = {e.id: rng.randint(0, 3) for e in ts.edges}
        loops = enumerate_reachable_loops(ts, cap=10)
        seen = {}
        for l in loops:
            key = frozenset(letter[eid] for eid in l.edges)
            seen.setdefault(key, set()).add(
                min(prio[eid] for eid in l.edges))
        letters = {frozenset(letter[eid] for eid, _, _ in edges)} | set(seen)
        for X in letters:
            for d in range(0, 4):
                got = loop_exists(edges, letter.get, prio.get, X, d)
                want = d in seen.get(X, set())
                assert got == want, (X, d)
