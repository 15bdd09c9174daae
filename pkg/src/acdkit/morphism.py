"""Morphisms of transition systems: structural checks, locality
(surjective / injective / bijective on out-edges), acceptance
preservation, and run transport."""

from __future__ import annotations

from . import loops as _loops
from .core import InputError, Run, loop_status_over


class Morphism:
    """A pair of maps (on vertices and on edges) from one conditioned
    transition system to another."""

    def __init__(self, source_ts, source_cond, target_ts, target_cond,
                 vertex_map, edge_map):
        self.source_ts = source_ts
        self.source_cond = source_cond
        self.target_ts = target_ts
        self.target_cond = target_cond
        self.vertex_map = dict(vertex_map)
        self.edge_map = dict(edge_map)

    def apply_vertex(self, v):
        try:
            return self.vertex_map[v]
        except KeyError:
            raise InputError("vertex %r is not mapped" % v) from None

    def apply_edge(self, eid):
        try:
            return self.edge_map[eid]
        except KeyError:
            raise InputError("edge %r is not mapped" % eid) from None


def check_structural(m):
    """All structural clauses; returns (ok, problems)."""
    problems = []
    src, tgt = m.source_ts, m.target_ts
    tvs = set(tgt.vertices)
    tes = {e.id for e in tgt.edges}
    for v in src.vertices:
        w = m.vertex_map.get(v)
        if w is None:
            problems.append("vertex %r unmapped" % v)
        elif w not in tvs:
            problems.append("vertex %r maps to unknown %r" % (v, w))
    for e in src.edges:
        f = m.edge_map.get(e.id)
        if f is None:
            problems.append("edge %r unmapped" % e.id)
            continue
        if f not in tes:
            problems.append("edge %r maps to unknown %r" % (e.id, f))
            continue
        fe = tgt.edge(f)
        if m.vertex_map.get(e.source) != fe.source:
            problems.append("source of %r not preserved" % e.id)
        if m.vertex_map.get(e.target) != fe.target:
            problems.append("target of %r not preserved" % e.id)
        if src.letters is not None and tgt.letters is not None:
            if src.letter(e.id) != tgt.letter(f):
                problems.append("letter of %r not preserved" % e.id)
    for v in src.initial:
        if m.vertex_map.get(v) not in set(tgt.initial):
            problems.append("initial vertex %r not sent to an initial vertex" % v)
    return (not problems, problems)


def check_local(m):
    """Surjectivity / injectivity of the per-vertex out-edge restrictions,
    together with the matching clauses on initial sets.  Unreachable source
    vertices are ignored."""
    src, tgt = m.source_ts, m.target_ts
    reach = src.reachable_vertices()
    surjective = True
    injective = True
    for w in tgt.initial:
        if not any(m.vertex_map.get(v) == w for v in src.initial):
            surjective = False
    seen_init = {}
    for v in src.initial:
        w = m.vertex_map.get(v)
        if w in seen_init:
            injective = False
        seen_init[w] = v
    for v in sorted(reach):
        w = m.apply_vertex(v)
        images = [m.apply_edge(e.id) for e in src.out(v)]
        targets = {e.id for e in tgt.out(w)}
        if set(images) != targets:
            surjective = False
        if len(set(images)) != len(images):
            injective = False
    return {"surjective": surjective, "injective": injective,
            "bijective": surjective and injective}


def check_acceptance_preserving(m, loop_cap=None):
    """True iff every reachable loop of the source keeps its status when
    pushed through the edge map."""
    src, tgt = m.source_ts, m.target_ts
    for l in _loops.enumerate_reachable_loops(src, cap=loop_cap):
        here = loop_status_over(src, m.source_cond, l.edges)
        image = {m.apply_edge(eid) for eid in l.edges}
        there = loop_status_over(tgt, m.target_cond, image)
        if here != there:
            return False
    return True


def map_run(m, run):
    """Push a lasso run through the morphism, edge by edge."""
    return Run(m.target_ts,
               [m.apply_edge(eid) for eid in run.prefix],
               [m.apply_edge(eid) for eid in run.cycle])


def lift_run(m, run):
    """Unique source run over a target run, for a locally bijective
    morphism.  The lifted cycle may wrap the target cycle several times
    before the lasso closes."""
    src, tgt = m.source_ts, m.target_ts
    start_tgt = tgt.edge(run.prefix[0]).source if run.prefix \
        else tgt.edge(run.cycle[0]).source
    starts = [v for v in src.initial if m.apply_vertex(v) == start_tgt]
    if not starts:
        raise InputError("no initial vertex above %r" % start_tgt)
    v = min(starts)

    def step(v, tgt_eid):
        cands = [e for e in src.out(v) if m.apply_edge(e.id) == tgt_eid]
        if len(cands) != 1:
            raise InputError(
                "morphism not locally bijective at %r over %r" % (v, tgt_eid))
        return cands[0]

    prefix = []
    for eid in run.prefix:
        e = step(v, eid)
        prefix.append(e.id)
        v = e.target
    seen = {}
    wraps = []
    while v not in seen:
        seen[v] = len(wraps)
        wrap = []
        for eid in run.cycle:
            e = step(v, eid)
            wrap.append(e.id)
            v = e.target
        wraps.append(wrap)
    entry = seen[v]
    for wrap in wraps[:entry]:
        prefix.extend(wrap)
    cycle = [eid for wrap in wraps[entry:] for eid in wrap]
    return Run(src, prefix, cycle)
