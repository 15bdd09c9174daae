"""Zielonka trees of Muller conditions and the parity automaton read off
from the branches of the tree."""

from __future__ import annotations

from itertools import product as _iterproduct

from .core import (Automaton, InputError, MullerCondition, ParityCondition,
                   TransitionSystem)


class ZielonkaTree:
    """Alternating tree of maximal status-flipping colour subsets.

    Nodes are tuples of child indices, the root being ().  Each node carries
    a colour-set label; the root is labelled with the whole colour set and
    the children of a node are the maximal nonempty subsets of its label
    whose family membership differs from the node's own.

    Sibling order is canonical: descending label size, then the sorted
    colour list.  A node's priority is its depth, shifted by one when the
    whole colour set is not in the family, so that a priority is even
    exactly when the node's label belongs to the family.
    """

    def __init__(self, family, gamma):
        gamma = frozenset(gamma)
        if not gamma:
            raise InputError("colour set must be nonempty")
        fam = set()
        for s in family:
            fs = frozenset(s)
            if not fs:
                raise InputError("empty set in Muller family")
            if not fs <= gamma:
                raise InputError(
                    "family set %s not within the colour set"
                    % "{%s}" % ",".join(sorted(fs)))
            fam.add(fs)
        self.gamma = gamma
        self.family = frozenset(fam)
        self.even = gamma in self.family
        self.label = {(): gamma}
        self.children_map = {}
        stack = [()]
        while stack:
            node = stack.pop()
            kids = _alternating_subsets(
                self.label[node], self.family,
                self.label[node] in self.family)
            ids = []
            for i, s in enumerate(kids):
                child = node + (i,)
                self.label[child] = s
                ids.append(child)
                stack.append(child)
            self.children_map[node] = tuple(ids)
        self.nodes = tuple(sorted(self.label))
        self.leaves = tuple(n for n in self.nodes if not self.children_map[n])
        self.height = 1 + max(len(n) for n in self.nodes)

    def children(self, node):
        return self.children_map[node]

    def priority(self, node):
        return len(node) if self.even else len(node) + 1

    def branch_nodes(self, leaf):
        """The path of nodes from the root down to the given leaf."""
        return tuple(leaf[:i] for i in range(len(leaf) + 1))

    def leftmost_leaf(self, node=()):
        return min(l for l in self.leaves if l[:len(node)] == node)


def _alternating_subsets(label, family, base):
    """Maximal nonempty subsets of `label` whose family membership differs
    from `base`, in canonical order.

    Worklist over remove-one-colour steps; sets sharing the base status are
    expanded further, flipped ones are recorded.  Every strict superset of
    a maximal flipped set has the base status, so pruning at flipped sets
    loses nothing.
    """
    seen = {label}
    flipped = []
    stack = [label]
    while stack:
        cur = stack.pop()
        for c in sorted(cur):
            sub = cur - {c}
            if not sub or sub in seen:
                continue
            seen.add(sub)
            if (sub in family) != base:
                flipped.append(sub)
            else:
                stack.append(sub)
    maximal = [s for s in flipped if not any(s < o for o in flipped)]
    return sorted(set(maximal), key=lambda s: (-len(s), sorted(s)))


def build_zielonka_tree(family, gamma):
    return ZielonkaTree(family, gamma)


def supp(tree, leaf, colour):
    """Deepest node on the branch through `leaf` whose label contains the
    colour; the root always does."""
    if colour not in tree.gamma:
        raise InputError("unknown colour %r" % colour)
    best = ()
    for node in tree.branch_nodes(leaf):
        if colour in tree.label[node]:
            best = node
    return best


def nextbranch(tree, leaf, node):
    """The branch reached from `leaf` by moving to the cyclically next
    child of `node`; `leaf` itself when `node` is a leaf."""
    kids = tree.children_map[node]
    if not kids:
        return leaf
    here = leaf[len(node)]
    nxt = node + ((here + 1) % len(kids),)
    return tree.leftmost_leaf(nxt)


class ZTAutomaton:
    """Deterministic parity automaton whose states are the branches of a
    Zielonka tree."""

    def __init__(self, automaton, tree, leaf_of_state, interval):
        self.automaton = automaton
        self.tree = tree
        self.leaf_of_state = dict(leaf_of_state)
        self.interval = interval

    @property
    def states(self):
        return self.automaton.ts.vertices

    @property
    def initial(self):
        return self.automaton.initial

    def move(self, state, colour):
        """(target state, output priority) on reading `colour`."""
        e = self.automaton.step(state, colour)
        return e.target, self.automaton.condition.priorities[
            self.automaton.ts.colour(e.id)]


def state_name(leaf):
    return "b" if not leaf else "b" + ".".join(str(i) for i in leaf)


def build_zt_automaton(tree):
    states = {leaf: state_name(leaf) for leaf in tree.leaves}
    edges = []
    letters = {}
    priorities = {}
    for leaf in tree.leaves:
        for a in sorted(tree.gamma):
            tau = supp(tree, leaf, a)
            tgt = nextbranch(tree, leaf, tau)
            eid = "%s/%s" % (states[leaf], a)
            edges.append((eid, states[leaf], states[tgt]))
            letters[eid] = a
            priorities[eid] = tree.priority(tau)
    ts = TransitionSystem(
        sorted(states.values()), edges,
        [states[tree.leftmost_leaf()]], letters=letters)
    aut = Automaton(ts, ParityCondition(priorities))
    interval = (0, tree.height - 1) if tree.even else (1, tree.height)
    return ZTAutomaton(aut, tree, {v: k for k, v in states.items()}, interval)


def shape(tree):
    """Which classical shapes the tree has: at most one child at every
    accepting node (rabin), at every rejecting node (streett), or both
    (parity)."""
    rabin = True
    streett = True
    for node in tree.nodes:
        if len(tree.children_map[node]) > 1:
            if tree.priority(node) % 2 == 0:
                rabin = False
            else:
                streett = False
    return {"rabin": rabin, "streett": streett, "parity": rabin and streett}


def optimal_parity_interval(tree):
    return (0, tree.height - 1) if tree.even else (1, tree.height)


def closure_oracle(family, gamma):
    """Brute-force closure flags over all nonempty subsets of the colour
    set: union_closed means the union of two accepting sets is accepting,
    intersection_closed means the union of two rejecting sets is rejecting
    (equivalently, accepting sets are closed under intersection within the
    lattice of statuses)."""
    from itertools import chain, combinations
    gamma = sorted(set(gamma))
    fam = {frozenset(s) for s in family}
    subsets = [frozenset(s) for s in chain.from_iterable(
        combinations(gamma, r) for r in range(1, len(gamma) + 1))]
    accepting = [s for s in subsets if s in fam]
    rejecting = [s for s in subsets if s not in fam]
    union_closed = all(a | b in fam for a in accepting for b in accepting)
    intersection_closed = all(
        a | b not in fam for a in rejecting for b in rejecting)
    return {"union_closed": union_closed,
            "intersection_closed": intersection_closed}


def _delta_loops(g, gamma, delta):
    """All loops of the transition structure reachable from state 0.

    A loop is a set of transition slots (q, letter index) whose induced
    graph on states is strongly connected.  Returns a list of
    (slot index tuple, letter set) pairs, computed once per structure so
    priority assignments can be screened cheaply.
    """
    from itertools import combinations

    reach = {0}
    stack = [0]
    while stack:
        q = stack.pop()
        for i in range(g):
            t = delta[q * g + i]
            if t not in reach:
                reach.add(t)
                stack.append(t)
    slots = [(q, i) for q in sorted(reach) for i in range(g)]
    found = []
    for r in range(1, len(slots) + 1):
        for sub in combinations(slots, r):
            verts = set()
            adj = {}
            radj = {}
            for q, i in sub:
                t = delta[q * g + i]
                verts.add(q)
                verts.add(t)
                adj.setdefault(q, []).append(t)
                radj.setdefault(t, []).append(q)
            start = next(iter(verts))
            fwd = {start}
            st = [start]
            while st:
                v = st.pop()
                for w in adj.get(v, []):
                    if w not in fwd:
                        fwd.add(w)
                        st.append(w)
            if not verts <= fwd:
                continue
            bwd = {start}
            st = [start]
            while st:
                v = st.pop()
                for w in radj.get(v, []):
                    if w not in bwd:
                        bwd.add(w)
                        st.append(w)
            if not verts <= bwd:
                continue
            found.append((tuple(q * g + i for q, i in sub),
                          frozenset(gamma[i] for q, i in sub)))
    return found


def min_parity_automaton_size(family, gamma, n_max, k_max=4,
                              priority_values=None):
    """Smallest number of states of a deterministic complete parity
    automaton recognizing the family, found by exhaustive search; None when
    no automaton within the budget works.

    Deliberately tiny budgets (n_max <= 3, |gamma| <= 3, k_max <= 4); this
    is an oracle, not a construction.
    """
    gamma = sorted(gamma)
    fam = frozenset(frozenset(s) for s in family)
    if priority_values is None:
        priority_values = range(k_max)
    priority_values = list(priority_values)
    if n_max > 3 or len(gamma) > 3 or len(priority_values) > 4:
        raise InputError("search budget exceeded")
    g = len(gamma)
    for n in range(1, n_max + 1):
        for delta in _iterproduct(range(n), repeat=n * g):
            targets = [(slots, letters in fam)
                       for slots, letters in _delta_loops(g, gamma, delta)]
            for prios in _iterproduct(priority_values, repeat=n * g):
                if all((min(prios[s] for s in slots) % 2 == 0) == want
                       for slots, want in targets):
                    return n
    return None


def min_parity_priority_count(family, gamma, n_max=2):
    """Minimal number of distinct priorities any small deterministic parity
    automaton needs to recognize the family (states bounded by n_max)."""
    for count in range(1, 5):
        for base in (0, 1):
            values = list(range(base, base + count))
            if min_parity_automaton_size(family, gamma, n_max,
                                         priority_values=values) is not None:
                return count
    return None
