import random

import pytest

from acdkit import (CapExceeded, InputError, MullerCondition, ParityCondition,
                    TransitionSystem, build_acd, classify_acd,
                    compress_priorities, equivalent_over, is_weak_k,
                    parity_relabel, rabin_from_acd, streett_from_acd,
                    to_explicit_muller)
from conftest import random_muller_system


def chain_parity_system():
    ts = TransitionSystem(["p", "q"],
                          [("s", "p", "p"), ("t", "p", "q"),
                           ("u", "q", "q"), ("v", "q", "p")],
                          ["p"])
    return ts, ParityCondition({"s": 1, "t": 2, "u": 2, "v": 3})


def test_classify_sixstate(sixstate):
    ts, cond = sixstate
    report = classify_acd(build_acd(ts, cond))
    assert not report.rabin_acd
    assert not report.streett_acd
    assert not report.parity_acd
    assert report.interval is None and report.weak_k is None
    assert report.offending["q3"] == ((), (1,))
    assert "q1" not in report.offending


def test_classify_rabin_only(automaton_a):
    ts, cond = automaton_a
    acd = build_acd(ts, cond)
    report = classify_acd(acd)
    assert report.rabin_acd and not report.streett_acd
    rabin = rabin_from_acd(ts, acd)
    assert equivalent_over(ts, cond, rabin)
    with pytest.raises(InputError):
        streett_from_acd(ts, acd)


def test_classify_parity_chain():
    ts, cond = chain_parity_system()
    muller = to_explicit_muller(ts, cond)
    acd = build_acd(ts, muller)
    report = classify_acd(acd)
    assert report.parity_acd
    assert report.interval is not None
    relabelled = parity_relabel(ts, acd)
    assert equivalent_over(ts, muller, relabelled)
    assert equivalent_over(ts, cond, relabelled)


def test_parity_relabel_refuses_non_chain(sixstate):
    ts, cond = sixstate
    with pytest.raises(InputError):
        parity_relabel(ts, build_acd(ts, cond))


def test_rabin_refuses_sixstate(sixstate):
    ts, cond = sixstate
    with pytest.raises(InputError):
        rabin_from_acd(ts, build_acd(ts, cond))


def test_compress_priorities_gap():
    ts = TransitionSystem(
        ["p"], [("a", "p", "p"), ("b", "p", "p"), ("c", "p", "p")], ["p"])
    out = compress_priorities(ts, {"a": 0, "b": 2, "c": 3})
    assert out.priorities == {"a": 0, "b": 0, "c": 1}
    assert equivalent_over(ts, ParityCondition({"a": 0, "b": 2, "c": 3}), out)


def test_compress_priorities_shift():
    ts = TransitionSystem(["p"], [("a", "p", "p"), ("b", "p", "p")], ["p"])
    out = compress_priorities(ts, {"a": 3, "b": 5})
    assert out.priorities == {"a": 1, "b": 1}
    out = compress_priorities(ts, {"a": 2, "b": 2})
    assert out.priorities == {"a": 0, "b": 0}


def test_compress_preserves_statuses_random():
    rng = random.Random(37)
    for _ in range(30):
        ts, _ = random_muller_system(rng, max_vertices=4, max_edges=7)
        prios = {e.id: rng.randint(0, 6) for e in ts.edges}
        before = ParityCondition(prios)
        after = compress_priorities(ts, prios)
        assert equivalent_over(ts, before, after)
        used = sorted(set(after.priorities.values()))
        assert used[0] in (0, 1)
        assert all(b - a <= 2 for a, b in zip(used, used[1:]))


def test_is_weak_k():
    ts = TransitionSystem(
        ["p", "q"],
        [("a", "p", "p"), ("b", "p", "q"), ("c", "q", "q"), ("d", "q", "q")],
        ["p"])
    prios = {"a": 0, "b": 1, "c": 2, "d": 3}
    # SCC {a} uses one priority, SCC {c,d} uses two; b is transient
    assert is_weak_k(ts, prios, 2)
    assert not is_weak_k(ts, prios, 1)
    assert is_weak_k(ts, {"a": 0, "b": 5, "c": 1, "d": 1}, 1)


def test_relabel_constructions_random():
    rng = random.Random(41)
    rabin_hits = streett_hits = 0
    for _ in range(60):
        ts, cond = random_muller_system(rng, max_vertices=4, max_edges=7)
        try:
            acd = build_acd(ts, cond)
        except InputError:
            continue
        report = classify_acd(acd)
        try:
            if report.rabin_acd:
                assert equivalent_over(ts, cond, rabin_from_acd(ts, acd))
                rabin_hits += 1
            if report.streett_acd:
                assert equivalent_over(ts, cond, streett_from_acd(ts, acd))
                streett_hits += 1
            if report.parity_acd:
                relabelled = parity_relabel(ts, acd)
                assert equivalent_over(ts, cond, relabelled)
                assert is_weak_k(ts, relabelled, report.weak_k)
        except CapExceeded:
            continue
    assert rabin_hits > 5 and streett_hits > 5


def test_shape_flags_match_loop_closure_oracle():
    # rabin flag <=> union of two rejecting loops is rejecting; the flags
    # cover every vertex, so enumerate loops of the whole graph
    from acdkit import enumerate_reachable_loops, is_loop, loop_status_over
    rng = random.Random(43)
    checked = 0
    for _ in range(40):
        ts, cond = random_muller_system(rng, max_vertices=4, max_edges=6)
        every = TransitionSystem(
            ts.vertices, [(e.id, e.source, e.target) for e in ts.edges],
            ts.vertices)
        try:
            acd = build_acd(ts, cond)
            loops = enumerate_reachable_loops(every, cap=12)
        except (InputError, CapExceeded):
            continue
        report = classify_acd(acd)
        rabin = streett = True
        for l1 in loops:
            for l2 in loops:
                if not (l1.states & l2.states):
                    continue
                both = l1.edges | l2.edges
                if not is_loop(ts, both):
                    continue
                s1 = loop_status_over(ts, cond, l1.edges)
                s2 = loop_status_over(ts, cond, l2.edges)
                s = loop_status_over(ts, cond, both)
                if not s1 and not s2 and s:
                    rabin = False
                if s1 and s2 and not s:
                    streett = False
        assert report.rabin_acd == rabin
        assert report.streett_acd == streett
        checked += 1
    assert checked > 15
