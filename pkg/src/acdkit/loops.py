"""Loop algebra: strongly connected components, the loop predicate,
maximal alternating subloops and a loop enumeration oracle."""

from __future__ import annotations

from dataclasses import dataclass

from .core import CapExceeded, InputError, loop_status_over

DEFAULT_LOOP_CAP = 20
DEFAULT_EXPLORE_CAP = 5000


@dataclass(frozen=True)
class Loop:
    """A nonempty edge set whose induced subgraph is strongly connected."""

    edges: frozenset
    states: frozenset

    @staticmethod
    def of(ts, edge_ids):
        es = frozenset(edge_ids)
        states = set()
        for eid in es:
            e = ts.edge(eid)
            states.add(e.source)
            states.add(e.target)
        return Loop(es, frozenset(states))

    @property
    def key(self):
        return tuple(sorted(self.edges))

    def __contains__(self, eid):
        return eid in self.edges


def _tarjan(vertices, succ):
    """Iterative Tarjan; returns SCCs as lists of vertices, in a
    deterministic order."""
    index = {}
    low = {}
    on_stack = set()
    stack = []
    sccs_out = []
    counter = [0]
    for root in sorted(vertices):
        if root in index:
            continue
        work = [(root, iter(succ(root)))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ(w))))
                    advanced = True
                    break
                elif w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                sccs_out.append(sorted(comp))
    return sccs_out


def sccs(ts, edge_ids=None):
    """Maximal loops of `ts` (optionally restricted to a given edge set),
    plus the set of transient edges.

    Returns (loops, transient) where every edge lies either in exactly one
    maximal loop or in `transient`.
    """
    if edge_ids is None:
        edge_set = frozenset(e.id for e in ts.edges)
    else:
        edge_set = frozenset(edge_ids)
    adj = {}
    for eid in edge_set:
        e = ts.edge(eid)
        adj.setdefault(e.source, []).append(e)
        adj.setdefault(e.target, [])
    for v in adj:
        adj[v].sort(key=lambda e: e.id)

    def succ(v):
        return [e.target for e in adj[v]]

    comps = _tarjan(adj.keys(), succ)
    found = []
    used = set()
    for comp in comps:
        cset = set(comp)
        internal = [e.id for v in comp for e in adj[v] if e.target in cset]
        if internal:
            found.append(Loop.of(ts, internal))
            used.update(internal)
    found.sort(key=lambda l: l.key)
    return found, frozenset(edge_set - used)


def is_loop(ts, edge_ids):
    """True iff the edge set is nonempty and its induced subgraph is
    strongly connected."""
    es = frozenset(edge_ids)
    if not es:
        return False
    maximal, transient = sccs(ts, es)
    return not transient and len(maximal) == 1 and maximal[0].edges == es


def _status(ts, cond, loop):
    return loop_status_over(ts, cond, loop.edges)


def alternating_children(ts, cond, loop, explore_cap=None):
    """Inclusion-maximal subloops of `loop` whose status under `cond`
    differs from the status of `loop` itself.

    Worklist exploration: drop one edge at a time and re-split into maximal
    subloops, descending only through loops that still share the parent's
    status.  Any maximal flipped subloop is reached this way, because each
    of its strict superloops inside `loop` necessarily has the parent's
    status (a flipped one would contradict maximality).
    """
    cap = DEFAULT_EXPLORE_CAP if explore_cap is None else explore_cap
    base = _status(ts, cond, loop)
    seen = {loop.key}
    flipped = []
    stack = [loop]
    while stack:
        cur = stack.pop()
        for eid in sorted(cur.edges, reverse=True):
            subs, _ = sccs(ts, cur.edges - {eid})
            for m in subs:
                if m.key in seen:
                    continue
                seen.add(m.key)
                if len(seen) > cap:
                    raise CapExceeded(
                        "subloop exploration exceeded cap %d" % cap)
                if _status(ts, cond, m) != base:
                    flipped.append(m)
                else:
                    stack.append(m)
    maximal = []
    for m in flipped:
        if not any(m.edges < o.edges for o in flipped):
            maximal.append(m)
    # dedupe and order canonically: descending size, then edge-id list
    out = {}
    for m in maximal:
        out[m.key] = m
    return sorted(out.values(), key=lambda l: (-len(l.edges), l.key))


def enumerate_reachable_loops(ts, cap=None):
    """All loops lying inside SCCs reachable from the initial vertices.

    Closure walk per SCC: starting from the maximal loop, dropping one
    edge and re-splitting reaches every subloop.  Refuses to run on SCCs
    with more than `cap` edges (default 20).
    """
    cap = DEFAULT_LOOP_CAP if cap is None else cap
    reach = ts.reachable_vertices()
    reachable_edges = [e.id for e in ts.edges
                       if e.source in reach and e.target in reach]
    maximal, _ = sccs(ts, reachable_edges)
    out = {}
    for top in maximal:
        if len(top.edges) > cap:
            raise CapExceeded(
                "SCC %s has %d edges, above the loop cap %d"
                % ("{%s}" % ",".join(sorted(top.states)), len(top.edges), cap))
        stack = [top]
        out[top.key] = top
        while stack:
            cur = stack.pop()
            for eid in cur.edges:
                subs, _ = sccs(ts, cur.edges - {eid})
                for m in subs:
                    if m.key not in out:
                        out[m.key] = m
                        stack.append(m)
    return [out[k] for k in sorted(out)]


def accessible_x_scc(automaton, letters):
    """A reachable state set of the automaton closed under the given
    letters and strongly connected through them.

    For an empty letter set any single reachable state qualifies.
    """
    letters = frozenset(letters)
    unknown = letters - automaton.alphabet
    if unknown:
        raise InputError("letters not in alphabet: %s" % ", ".join(sorted(unknown)))
    q0 = automaton.initial
    reach = {q0}
    stack = [q0]
    while stack:
        q = stack.pop()
        for a in sorted(letters):
            t = automaton.step(q, a).target
            if t not in reach:
                reach.add(t)
                stack.append(t)
    if not letters:
        return frozenset({min(reach)})

    def succ(q):
        return sorted({automaton.step(q, a).target for a in letters})

    comps = _tarjan(reach, succ)
    # bottom components are exactly the letter-closed strongly connected sets
    bottoms = []
    for comp in comps:
        cset = set(comp)
        if all(t in cset for q in comp for t in succ(q)):
            bottoms.append(cset)
    best = min(bottoms, key=lambda c: tuple(sorted(c)))
    return frozenset(best)
