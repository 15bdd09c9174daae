"""Shape classification of cycle decompositions and construction of
equivalent Rabin / Streett / parity / weak conditions when the shape
allows it."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import loops as _loops
from .core import InputError, ParityCondition, RabinCondition, StreettCondition


@dataclass
class AcdShapeReport:
    rabin_acd: bool
    streett_acd: bool
    parity_acd: bool
    interval: tuple = None  # priority interval when parity-shaped
    weak_k: int = None      # smallest k when parity-shaped
    offending: dict = field(default_factory=dict)  # vertex -> bad nodes


def classify_acd(acd):
    """Per-vertex subtree shape checks.

    A subtree has Rabin shape when its accepting nodes keep at most one
    child after restriction, Streett shape dually, and parity shape when it
    is a chain."""
    rabin = True
    streett = True
    offending = {}
    for v in acd.ts.vertices:
        sub = acd.subtree_for_state(v)
        if sub.tree_index == 0:
            continue
        t = acd.tree(sub.tree_index)
        node_set = set(sub.nodes)
        bad = []
        for node in sub.nodes:
            kids = [c for c in t.children_map[node] if c in node_set]
            if len(kids) > 1:
                bad.append(node)
                if t.accepting[node]:
                    rabin = False
                else:
                    streett = False
        if bad:
            offending[v] = tuple(bad)
    parity = rabin and streett
    from .acd import acd_stats
    stats = acd_stats(acd)
    return AcdShapeReport(
        rabin_acd=rabin,
        streett_acd=streett,
        parity_acd=parity,
        interval=stats["interval"] if parity else None,
        weak_k=max(t.height for t in acd.trees) if parity else None,
        offending=offending)


def _node_pairs(acd, want_accepting):
    all_edges = frozenset(e.id for e in acd.ts.edges)
    pairs = []
    for t in acd.trees:
        for node in t.nodes:
            if t.accepting[node] != want_accepting:
                continue
            covered = set()
            for c in t.children_map[node]:
                covered |= t.label[c]
            e_part = frozenset(t.label[node] - covered)
            if not e_part:
                continue
            pairs.append((e_part, all_edges - t.label[node]))
    if acd.t0_edges and (acd.priority(0, ()) % 2 == 0) == want_accepting:
        pairs.append((acd.t0_edges, all_edges - acd.t0_edges))
    return pairs


def rabin_from_acd(ts, acd):
    """One Rabin pair per accepting node: a loop is accepting exactly when
    some accepting node contains it and the loop touches the part of that
    node's label not covered by its children."""
    report = classify_acd(acd)
    if not report.rabin_acd:
        raise InputError("decomposition is not Rabin-shaped")
    return RabinCondition(_node_pairs(acd, True))


def streett_from_acd(ts, acd):
    """Dual construction: one Streett pair per rejecting node."""
    report = classify_acd(acd)
    if not report.streett_acd:
        raise InputError("decomposition is not Streett-shaped")
    return StreettCondition(_node_pairs(acd, False))


def parity_relabel(ts, acd):
    """When every subtree is a chain the transformation keeps one copy per
    vertex, so its priorities pull back to the original edges."""
    report = classify_acd(acd)
    if not report.parity_acd:
        raise InputError("decomposition is not parity-shaped")
    priorities = {}
    for e in ts.edges:
        q = e.source
        sub = acd.subtree_for_state(q)
        i = acd.vertex_index[q]
        leaf = sub.leftmost_branch()
        j, tau = acd.multi_supp(leaf, i, e.id)
        priorities[e.id] = acd.priority(j, tau)
    return ParityCondition(priorities)


def compress_priorities(ts, priorities):
    """Remove unused priority values strictly inside the range (shifting
    higher priorities down by two keeps every loop's status), then shift
    the minimum to 0 or 1."""
    prios = dict(priorities)
    while True:
        used = set(prios.values())
        lo, hi = min(used), max(used)
        gap = next((d for d in range(lo + 1, hi) if d not in used), None)
        if gap is None:
            break
        prios = {c: (p - 2 if p > gap else p) for c, p in prios.items()}
    lo = min(prios.values())
    shift = lo - (lo % 2)
    if shift:
        prios = {c: p - shift for c, p in prios.items()}
    return ParityCondition(prios)


def is_weak_k(ts, priorities, k):
    """True iff every strongly connected component of the system uses at
    most k distinct priorities on its edges."""
    cond = priorities if isinstance(priorities, ParityCondition) \
        else ParityCondition(priorities)
    maximal, _ = _loops.sccs(ts)
    for loop in maximal:
        used = set()
        for eid in loop.edges:
            c = ts.colour(eid)
            key = c if c in cond.priorities else eid
            if key not in cond.priorities:
                raise InputError("no priority for edge %r" % eid)
            used.add(cond.priorities[key])
        if len(used) > k:
            return False
    return True
