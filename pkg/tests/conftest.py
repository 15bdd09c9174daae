import random
from pathlib import Path

import pytest

from acdkit import MullerCondition, TransitionSystem

FIXTURES = Path(__file__).parent / "fixtures"

SIXSTATE_EDGES = [
    ("a", "q0", "q1"), ("b", "q0", "q3"), ("c", "q1", "q2"),
    ("d", "q2", "q1"), ("e", "q2", "q2"), ("f", "q1", "q4"),
    ("g", "q3", "q3"), ("h", "q3", "q4"), ("i", "q4", "q3"),
    ("j", "q4", "q5"), ("k", "q5", "q4"), ("l", "q5", "q5"),
]

SIXSTATE_FAMILY = [
    {"c", "d", "e"}, {"e"}, {"g", "h", "i"},
    {"l"}, {"h", "i", "j", "k"}, {"j", "k"},
]


@pytest.fixture
def sixstate():
    ts = TransitionSystem(
        ["q0", "q1", "q2", "q3", "q4", "q5"], SIXSTATE_EDGES, ["q0"])
    return ts, MullerCondition(SIXSTATE_FAMILY)


@pytest.fixture
def automaton_a():
    ts = TransitionSystem(
        ["A", "B"],
        [("a", "A", "A"), ("b1", "A", "B"), ("b2", "B", "A"), ("c", "B", "B")],
        ["A"],
        letters={"a": "0", "b1": "1", "b2": "1", "c": "0"},
        colours={"b1": "b", "b2": "b"})
    return ts, MullerCondition([{"a"}, {"b"}])


@pytest.fixture
def fixtures_dir():
    return FIXTURES


def random_system(rng, max_vertices=6, max_edges=10, with_owners=False):
    n = rng.randint(1, max_vertices)
    vs = ["v%d" % i for i in range(n)]
    edges = []
    for i, v in enumerate(vs):
        edges.append(("e%d" % i, v, rng.choice(vs)))
    extra = rng.randint(0, max(0, max_edges - n))
    for i in range(extra):
        edges.append(("x%d" % i, rng.choice(vs), rng.choice(vs)))
    owners = {v: rng.choice(["Eve", "Adam"]) for v in vs} if with_owners else None
    return TransitionSystem(vs, edges, [vs[0]], owners=owners)


def random_family(rng, colours, density=0.4):
    colours = sorted(colours)
    family = []
    for r in range(1, len(colours) + 1):
        import itertools
        for sub in itertools.combinations(colours, r):
            if rng.random() < density:
                family.append(set(sub))
    return family


def random_muller_system(rng, max_vertices=6, max_edges=10,
                         with_owners=False):
    ts = random_system(rng, max_vertices, max_edges, with_owners)
    family = random_family(rng, [e.id for e in ts.edges], density=0.3)
    return ts, MullerCondition(family)


def random_sparse_muller_system(rng, max_vertices=6, max_edges=10,
                                max_sets=6, with_owners=False):
    """Like random_muller_system, but the family is a handful of random
    edge subsets instead of a density sample over the whole powerset."""
    ts = random_system(rng, max_vertices, max_edges, with_owners)
    eids = [e.id for e in ts.edges]
    family = []
    for _ in range(rng.randint(1, max_sets)):
        size = rng.randint(1, len(eids))
        family.append(set(rng.sample(eids, size)))
    return ts, MullerCondition(family)
