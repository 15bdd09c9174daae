"""Alternating cycle decomposition of a Muller transition system and the
parity transformation read off from it."""

from __future__ import annotations

from dataclasses import dataclass

from . import loops as _loops
from .core import (InputError, ParityCondition, TransitionSystem,
                   loop_status_over)


class AcdTree:
    """One tree of the decomposition: its root is a maximal loop and the
    children of every node are the maximal subloops whose status flips."""

    def __init__(self, index, ts, cond, root_loop, explore_cap=None):
        self.index = index
        self.label = {(): root_loop.edges}
        self.states = {(): root_loop.states}
        self.accepting = {(): loop_status_over(ts, cond, root_loop.edges)}
        self.children_map = {}
        stack = [((), root_loop)]
        while stack:
            node, loop = stack.pop()
            kids = _loops.alternating_children(ts, cond, loop,
                                               explore_cap=explore_cap)
            ids = []
            for i, sub in enumerate(kids):
                child = node + (i,)
                self.label[child] = sub.edges
                self.states[child] = sub.states
                self.accepting[child] = not self.accepting[node]
                ids.append(child)
                stack.append((child, sub))
            self.children_map[node] = tuple(ids)
        self.nodes = tuple(sorted(self.label))
        self.leaves = tuple(n for n in self.nodes if not self.children_map[n])
        self.height = 1 + max(len(n) for n in self.nodes)
        self.even = self.accepting[()]


@dataclass
class StateSubtree:
    """Restriction of one decomposition tree to the nodes whose label loop
    visits a given vertex."""

    vertex: str
    tree_index: int
    nodes: tuple
    branches: tuple  # leaves of the restriction, in canonical order

    def leftmost_branch(self):
        return self.branches[0]

    def __contains__(self, node):
        return node in set(self.nodes)


class ACD:
    """Forest of alternating trees, one per maximal loop, plus a single
    special node for the transient part of the graph."""

    def __init__(self, ts, cond, explore_cap=None):
        from .core import validate
        problems = validate(ts, cond)
        if problems:
            raise InputError("; ".join(problems))
        self.ts = ts
        self.cond = cond
        maximal, transient = _loops.sccs(ts)
        if not maximal:
            raise InputError("system has no loop")
        self.trees = tuple(
            AcdTree(i, ts, cond, top, explore_cap=explore_cap)
            for i, top in enumerate(maximal, start=1))
        self.t0_edges = frozenset(transient)
        covered = set()
        for t in self.trees:
            covered |= t.states[()]
        self.t0_states = frozenset(set(ts.vertices) - covered)
        self.vertex_index = {v: 0 for v in ts.vertices}
        self.edge_index = {e.id: 0 for e in ts.edges}
        for t in self.trees:
            for v in t.states[()]:
                self.vertex_index[v] = t.index
            for eid in t.label[()]:
                self.edge_index[eid] = t.index
        maxh = max(t.height for t in self.trees)
        kinds = {t.even for t in self.trees if t.height == maxh}
        if kinds == {True}:
            self.tag = "even"
        elif kinds == {False}:
            self.tag = "odd"
        else:
            self.tag = "ambiguous"
        self.max_height = maxh
        self._subtrees = {v: self._build_subtree(v) for v in ts.vertices}

    def tree(self, index):
        return self.trees[index - 1]

    def priority(self, index, node):
        """Priority attached to a node, under the global even/odd/ambiguous
        adjustment that keeps the overall range as tight as possible."""
        if index == 0:
            return 0 if self.tag in ("even", "ambiguous") else 1
        t = self.tree(index)
        d = len(node)
        if t.even:
            return d if self.tag != "odd" else d + 2
        return d + 1

    def _build_subtree(self, v):
        i = self.vertex_index[v]
        if i == 0:
            return StateSubtree(v, 0, ((),), ((),))
        t = self.tree(i)
        nodes = tuple(n for n in t.nodes if v in t.states[n])
        node_set = set(nodes)
        branches = tuple(n for n in nodes
                         if not any(c in node_set for c in t.children_map[n]))
        return StateSubtree(v, i, nodes, branches)

    def subtree_for_state(self, v):
        try:
            return self._subtrees[v]
        except KeyError:
            raise InputError("unknown vertex %r" % v) from None

    def multi_supp(self, leaf, i, eid):
        """Deepest node relevant to reading edge `eid` from a branch of
        tree `i`: a node on the branch when the edge stays in the same
        tree, the root of the edge's own tree otherwise.

        Returns (tree index, node)."""
        j = self.edge_index[eid]
        if j == i and j != 0:
            t = self.tree(i)
            best = ()
            for k in range(len(leaf) + 1):
                node = leaf[:k]
                if eid in t.label[node]:
                    best = node
            return (j, best)
        return (j, ())


def build_acd(ts, cond, explore_cap=None):
    return ACD(ts, cond, explore_cap=explore_cap)


def subtree_for_state(acd, v):
    return acd.subtree_for_state(v)


def multi_supp(acd, leaf, i, eid):
    return acd.multi_supp(leaf, i, eid)


def _node_str(node):
    return "r" if not node else "r." + ".".join(str(i) for i in node)


def _state_id(q, leaf):
    return "%s|%s" % (q, _node_str(leaf))


def _restricted_nextbranch(tree, sub, leaf, tau):
    """Cyclic branch update inside the subtree of the target vertex.

    `leaf` is the current branch (in the full tree), `tau` the support
    node; moves to the next child of `tau` present in `sub`, then descends
    leftmost."""
    node_set = set(sub.nodes)
    kids = [c for c in tree.children_map[tau] if c in node_set]
    if not kids:
        return tau
    if len(leaf) > len(tau):
        here = leaf[len(tau)]
        after = [c for c in kids if c[-1] > here]
        chosen = after[0] if after else kids[0]
    else:
        chosen = kids[0]
    under = [b for b in sub.branches if b[:len(chosen)] == chosen]
    return under[0]


@dataclass
class TransformResult:
    system: TransitionSystem
    condition: ParityCondition
    acd: ACD
    vertex_map: dict  # transform vertex -> original vertex
    edge_map: dict    # transform edge -> original edge
    copies: dict      # original vertex -> tuple of transform vertices


def acd_transform(ts, cond, explore_cap=None):
    """Parity transition system with one copy of each vertex per branch of
    its subtree; equivalent to the input and connected to it by a locally
    bijective projection."""
    acd = build_acd(ts, cond, explore_cap=explore_cap)
    vertices = []
    edges = []
    priorities = {}
    vmap = {}
    emap = {}
    copies = {}
    owners = {}
    letters = {}
    for q in ts.vertices:
        sub = acd.subtree_for_state(q)
        i = acd.vertex_index[q]
        qcopies = []
        for leaf in sub.branches:
            vid = _state_id(q, leaf)
            vertices.append(vid)
            vmap[vid] = q
            qcopies.append(vid)
            if ts.owners:
                owners[vid] = ts.owners[q]
            for e in ts.out(q):
                j, tau = acd.multi_supp(leaf, i, e.id)
                prio = acd.priority(j, tau)
                q2 = e.target
                sub2 = acd.subtree_for_state(q2)
                i2 = acd.vertex_index[q2]
                if j == i and i != 0 and i2 == i:
                    leaf2 = _restricted_nextbranch(acd.tree(i), sub2, leaf, tau)
                else:
                    leaf2 = sub2.leftmost_branch()
                eid = "%s|%s" % (e.id, _node_str(leaf))
                edges.append((eid, vid, _state_id(q2, leaf2)))
                priorities[eid] = prio
                emap[eid] = e.id
                if ts.letters is not None:
                    letters[eid] = ts.letter(e.id)
        copies[q] = tuple(qcopies)
    initial = [_state_id(v, acd.subtree_for_state(v).leftmost_branch())
               for v in ts.initial]
    system = TransitionSystem(vertices, edges, initial,
                              owners=owners or None,
                              letters=letters or None)
    return TransformResult(system, ParityCondition(priorities), acd,
                           vmap, emap, copies)


def induced_morphism(result, original_ts, original_cond):
    """Projection of the transform onto its source system."""
    from .morphism import Morphism
    return Morphism(result.system, result.condition,
                    original_ts, original_cond,
                    result.vertex_map, result.edge_map)


def acd_stats(acd):
    """Size and priority usage of the transformation, computed from the
    decomposition alone."""
    size = sum(len(acd.subtree_for_state(v).branches) for v in acd.ts.vertices)
    maxh = acd.max_height
    if acd.tag == "even":
        interval = (0, maxh - 1)
    elif acd.tag == "odd":
        interval = (1, maxh)
    else:
        interval = (0, maxh)
    heights = tuple(t.height for t in acd.trees)
    if acd.t0_edges:
        heights = (1,) + heights
    return {
        "size": size,
        "interval": interval,
        "tag": acd.tag,
        "tree_heights": heights,
    }
