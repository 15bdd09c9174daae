"""Transition systems, acceptance conditions and their basic algebra."""

from __future__ import annotations

from dataclasses import dataclass


class AcdkitError(Exception):
    pass


class InputError(AcdkitError):
    """Malformed or referentially inconsistent input."""


class CapExceeded(AcdkitError):
    """An enumeration grew past its configured cap."""


@dataclass(frozen=True)
class Edge:
    id: str
    source: str
    target: str


class TransitionSystem:
    """A finite graph with named edges and a nonempty set of initial vertices.

    Vertices may optionally carry an owner tag (for games), edges may carry
    an input letter (for automata) and a colour (for acceptance conditions).
    Colours default to the edge ids themselves.

    Instances are immutable by convention: no method mutates the system.
    """

    def __init__(self, vertices, edges, initial, owners=None, letters=None,
                 colours=None):
        self.vertices = tuple(sorted(vertices))
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("duplicate vertex ids")
        vset = set(self.vertices)
        parsed = []
        for e in edges:
            if isinstance(e, Edge):
                parsed.append(e)
            else:
                eid, src, tgt = e
                parsed.append(Edge(str(eid), str(src), str(tgt)))
        parsed.sort(key=lambda e: e.id)
        self.edges = tuple(parsed)
        self._by_id = {}
        for e in self.edges:
            if e.id in self._by_id:
                raise InputError("duplicate edge id %r" % e.id)
            if e.source not in vset:
                raise InputError("edge %r has undeclared source %r" % (e.id, e.source))
            if e.target not in vset:
                raise InputError("edge %r has undeclared target %r" % (e.id, e.target))
            self._by_id[e.id] = e
        self.initial = tuple(sorted(set(initial)))
        for v in self.initial:
            if v not in vset:
                raise InputError("initial vertex %r is not declared" % v)
        self.owners = dict(owners) if owners else None
        if self.owners:
            for v, o in self.owners.items():
                if v not in vset:
                    raise InputError("owner given for unknown vertex %r" % v)
                if o not in ("Eve", "Adam"):
                    raise InputError("owner of %r must be Eve or Adam" % v)
        self.letters = dict(letters) if letters else None
        if self.letters:
            for eid in self.letters:
                if eid not in self._by_id:
                    raise InputError("letter given for unknown edge %r" % eid)
        self._colours = dict(colours) if colours else {}
        for eid in self._colours:
            if eid not in self._by_id:
                raise InputError("colour given for unknown edge %r" % eid)
        self._out = {v: [] for v in self.vertices}
        for e in self.edges:
            self._out[e.source].append(e)
        for v in self._out:
            self._out[v] = tuple(self._out[v])

    def edge(self, eid):
        try:
            return self._by_id[eid]
        except KeyError:
            raise InputError("unknown edge %r" % eid) from None

    def out(self, v):
        try:
            return self._out[v]
        except KeyError:
            raise InputError("unknown vertex %r" % v) from None

    def colour(self, eid):
        self.edge(eid)
        return self._colours.get(eid, eid)

    def colour_map(self):
        return {e.id: self.colour(e.id) for e in self.edges}

    def colour_set(self):
        return frozenset(self.colour(e.id) for e in self.edges)

    def colours_of(self, edge_ids):
        return frozenset(self.colour(eid) for eid in edge_ids)

    def letter(self, eid):
        if self.letters is None:
            raise InputError("system has no letter labelling")
        try:
            return self.letters[eid]
        except KeyError:
            raise InputError("edge %r has no letter" % eid) from None

    def reachable_vertices(self):
        seen = set(self.initial)
        stack = sorted(seen)
        while stack:
            v = stack.pop()
            for e in self._out[v]:
                if e.target not in seen:
                    seen.add(e.target)
                    stack.append(e.target)
        return frozenset(seen)


# ---------------------------------------------------------------------------
# Acceptance conditions.  Each class evaluates loop_status via accepts():
# given the set of colours seen infinitely often, is the run accepting?

class MullerCondition:
    kind = "muller"

    def __init__(self, family):
        sets = set()
        for s in family:
            fs = frozenset(s)
            if not fs:
                raise InputError("empty set in Muller family")
            sets.add(fs)
        self.family = frozenset(sets)

    def accepts(self, colours):
        return frozenset(colours) in self.family

    def referenced_colours(self):
        out = set()
        for s in self.family:
            out |= s
        return frozenset(out)


class ParityCondition:
    """Min-even parity: a run is accepting iff the minimum priority among
    the colours seen infinitely often is even."""

    kind = "parity"

    def __init__(self, priorities):
        self.priorities = dict(priorities)
        for c, p in self.priorities.items():
            if not isinstance(p, int) or p < 0:
                raise InputError("priority of %r must be a nonnegative integer" % c)

    def accepts(self, colours):
        try:
            return min(self.priorities[c] for c in colours) % 2 == 0
        except KeyError as e:
            raise InputError("no priority for colour %r" % e.args[0]) from None

    def referenced_colours(self):
        return frozenset(self.priorities)

    def interval(self):
        vals = self.priorities.values()
        return (min(vals), max(vals))


class BuchiCondition:
    kind = "buchi"

    def __init__(self, colours):
        self.colours = frozenset(colours)

    def accepts(self, colours):
        return bool(frozenset(colours) & self.colours)

    def referenced_colours(self):
        return self.colours


class CoBuchiCondition:
    kind = "cobuchi"

    def __init__(self, colours):
        self.colours = frozenset(colours)

    def accepts(self, colours):
        return not (frozenset(colours) & self.colours)

    def referenced_colours(self):
        return self.colours


class RabinCondition:
    """Pairs (E_i, F_i); accepting iff some pair has Inf meeting E_i and
    avoiding F_i."""

    kind = "rabin"

    def __init__(self, pairs):
        self.pairs = tuple((frozenset(e), frozenset(f)) for e, f in pairs)

    def accepts(self, colours):
        inf = frozenset(colours)
        return any(inf & e and not (inf & f) for e, f in self.pairs)

    def referenced_colours(self):
        out = set()
        for e, f in self.pairs:
            out |= e | f
        return frozenset(out)


class StreettCondition:
    """Dual of Rabin: accepting iff every pair has Inf avoiding E_i or
    meeting F_i."""

    kind = "streett"

    def __init__(self, pairs):
        self.pairs = tuple((frozenset(e), frozenset(f)) for e, f in pairs)

    def accepts(self, colours):
        inf = frozenset(colours)
        return all(not (inf & e) or (inf & f) for e, f in self.pairs)

    def referenced_colours(self):
        out = set()
        for e, f in self.pairs:
            out |= e | f
        return frozenset(out)


def loop_status(cond, colours):
    """Status of a run whose infinitely-often colour set is `colours`.

    Returns True for accepting, False for rejecting.
    """
    colours = frozenset(colours)
    if not colours:
        raise InputError("loop colour set must be nonempty")
    return cond.accepts(colours)


def loop_status_over(ts, cond, edge_ids):
    """Status of the loop given by `edge_ids` within `ts`.

    Conditions are normally expressed over the system's colours, but the
    relabelling machinery produces conditions keyed directly by edge ids;
    both views are supported, colours taking precedence.
    """
    edge_ids = frozenset(edge_ids)
    if not edge_ids:
        raise InputError("loop edge set must be nonempty")
    cols = ts.colours_of(edge_ids)
    all_cols = ts.colour_set()
    eids = frozenset(e.id for e in ts.edges)
    if cond.kind == "parity":
        keys = frozenset(cond.priorities)
        if all_cols <= keys:
            return cond.accepts(cols)
        if eids <= keys:
            return cond.accepts(edge_ids)
        raise InputError("parity condition does not cover the system's colours")
    refs = cond.referenced_colours()
    if refs <= all_cols:
        return cond.accepts(cols)
    if refs <= eids:
        return cond.accepts(edge_ids)
    raise InputError("condition references colours outside the system")


def validate(ts, cond=None):
    """Check the structural invariants; returns a list of violation
    messages, empty when everything holds."""
    problems = []
    if not ts.initial:
        problems.append("initial set is empty")
    for v in ts.vertices:
        if not ts.out(v):
            problems.append("dead-end vertex %r has no outgoing edge" % v)
    if cond is not None:
        known = ts.colour_set() | {e.id for e in ts.edges}
        for c in sorted(cond.referenced_colours() - known):
            problems.append("condition references unknown colour %r" % c)
        if cond.kind == "parity":
            keys = frozenset(cond.priorities)
            if not (ts.colour_set() <= keys
                    or {e.id for e in ts.edges} <= keys):
                missing = sorted(ts.colour_set() - keys)
                problems.append(
                    "no priority assigned to colour %r" % missing[0])
    return problems


def to_explicit_muller(ts, cond, loop_cap=None):
    """Re-express `cond` as a Muller condition over the edge ids of `ts`.

    The family lists exactly the reachable loops whose colour set is
    accepting under `cond`; every loop keeps its status.
    """
    from . import loops as _loops
    family = []
    for l in _loops.enumerate_reachable_loops(ts, cap=loop_cap):
        if loop_status_over(ts, cond, l.edges):
            family.append(l.edges)
    return MullerCondition(family)


def equivalent_over(ts, cond1, cond2, loop_cap=None):
    """True iff every reachable loop of `ts` has the same status under both
    conditions."""
    from . import loops as _loops
    for l in _loops.enumerate_reachable_loops(ts, cap=loop_cap):
        if loop_status_over(ts, cond1, l.edges) != \
                loop_status_over(ts, cond2, l.edges):
            return False
    return True


# ---------------------------------------------------------------------------
# Deterministic automata and the composition product.

class Automaton:
    """A deterministic, complete transition system reading input letters.

    Every edge carries a letter; for each state and letter there is exactly
    one outgoing edge, and there is a single initial state.
    """

    def __init__(self, ts, condition):
        if ts.letters is None:
            raise InputError("automaton edges must carry letters")
        if len(ts.initial) != 1:
            raise InputError("automaton must have exactly one initial state")
        self.ts = ts
        self.condition = condition
        self._step = {}
        letters = set()
        for e in ts.edges:
            a = ts.letter(e.id)
            letters.add(a)
            if (e.source, a) in self._step:
                raise InputError(
                    "automaton not deterministic at state %r, letter %r"
                    % (e.source, a))
            self._step[(e.source, a)] = e
        self.alphabet = frozenset(letters)
        for q in ts.vertices:
            for a in self.alphabet:
                if (q, a) not in self._step:
                    raise InputError(
                        "automaton not complete at state %r, letter %r" % (q, a))

    @property
    def initial(self):
        return self.ts.initial[0]

    def step(self, q, a):
        try:
            return self._step[(q, a)]
        except KeyError:
            raise InputError("no transition from %r on %r" % (q, a)) from None

    def run_colours(self, prefix, cycle):
        """Colours produced infinitely often when reading the ultimately
        periodic word prefix cycle^w, together with the cycle's letter set
        actually repeated forever.

        Returns (inf_colours, inf_letters)."""
        if not cycle:
            raise InputError("cycle must be nonempty")
        q = self.initial
        for a in prefix:
            q = self.step(q, a).target
        seen = {}
        trace = []
        while q not in seen:
            seen[q] = len(trace)
            for a in cycle:
                e = self.step(q, a)
                trace.append(e)
                q = e.target
        looped = trace[seen[q] * len(cycle):]
        cols = frozenset(self.ts.colour(e.id) for e in looped)
        lets = frozenset(self.ts.letter(e.id) for e in looped)
        return cols, lets

    def accepts_word(self, prefix, cycle):
        cols, _ = self.run_colours(prefix, cycle)
        return loop_status(self.condition, cols)


@dataclass
class Product:
    system: TransitionSystem
    condition: object
    projection: object  # Morphism onto the right-hand system, or None


def _pair_vertex(v, q):
    return "%s,%s" % (v, q)


def compose(automaton, ts, ts_condition=None):
    """Product of a deterministic automaton with a transition system.

    The automaton reads the colours of `ts` as its input letters; the
    product carries the automaton's acceptance condition.  When
    `ts_condition` is given, the returned projection morphism targets
    (ts, ts_condition).
    """
    missing = ts.colour_set() - automaton.alphabet
    if missing:
        raise InputError(
            "automaton alphabet misses colours: %s" % ", ".join(sorted(missing)))
    vmap = {}
    emap = {}
    vertices = []
    edges = []
    letters = {}
    colours = {}
    owners = {}
    initial = []
    seen = set()
    stack = []
    for v in ts.initial:
        pair = (v, automaton.initial)
        initial.append(_pair_vertex(*pair))
        if pair not in seen:
            seen.add(pair)
            stack.append(pair)
    while stack:
        v, q = stack.pop()
        vid = _pair_vertex(v, q)
        vertices.append(vid)
        vmap[vid] = v
        if ts.owners:
            owners[vid] = ts.owners[v]
        for e in ts.out(v):
            ae = automaton.step(q, ts.colour(e.id))
            eid = "%s,%s" % (e.id, q)
            tgt = (e.target, ae.target)
            edges.append((eid, vid, _pair_vertex(*tgt)))
            emap[eid] = e.id
            colours[eid] = automaton.ts.colour(ae.id)
            if ts.letters is not None:
                letters[eid] = ts.letter(e.id)
            if tgt not in seen:
                seen.add(tgt)
                stack.append(tgt)
    system = TransitionSystem(
        vertices, edges, initial,
        owners=owners or None,
        letters=letters or None,
        colours=colours)
    projection = None
    if ts_condition is not None:
        from .morphism import Morphism
        projection = Morphism(system, automaton.condition, ts, ts_condition,
                              vmap, emap)
    return Product(system, automaton.condition, projection)


# ---------------------------------------------------------------------------
# Ultimately periodic runs, presented as a lasso.

class Run:
    """A lasso-shaped run: a finite prefix of edges from an initial vertex
    followed by a cycle repeated forever."""

    def __init__(self, ts, prefix, cycle):
        self.prefix = tuple(prefix)
        self.cycle = tuple(cycle)
        if not self.cycle:
            raise InputError("run cycle must be nonempty")
        edges = [ts.edge(eid) for eid in self.prefix + self.cycle]
        if edges[0].source not in ts.initial:
            raise InputError("run does not start at an initial vertex")
        for a, b in zip(edges, edges[1:]):
            if a.target != b.source:
                raise InputError(
                    "edges %r and %r are not consecutive" % (a.id, b.id))
        cyc = [ts.edge(eid) for eid in self.cycle]
        if cyc[-1].target != cyc[0].source:
            raise InputError("run cycle does not close")
        self.ts = ts

    def inf_colours(self):
        return self.ts.colours_of(self.cycle)

    def unfold(self, n):
        """First n edge ids of the infinite run."""
        out = list(self.prefix)
        i = 0
        while len(out) < n:
            out.append(self.cycle[i % len(self.cycle)])
            i += 1
        return tuple(out[:n])

    def same_run(self, other):
        """Do the two lassos denote the same infinite edge sequence?"""
        import math
        p = max(len(self.prefix), len(other.prefix))
        n = p + math.lcm(len(self.cycle), len(other.cycle))
        return self.unfold(n) == other.unfold(n)

    def is_accepting(self, cond):
        return loop_status_over(self.ts, cond, self.cycle)
