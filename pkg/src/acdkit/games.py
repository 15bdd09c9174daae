"""Two-player games on transition systems: a recursive attractor-based
parity game solver with certified strategies, and Muller games solved
through the parity transformation."""

from __future__ import annotations

from dataclasses import dataclass

from .acd import acd_transform, induced_morphism
from .core import InputError, validate
from .loops import _tarjan


class Game:
    """A transition system where every vertex is owned by Eve or Adam;
    Eve wins a play iff the acceptance condition accepts it."""

    def __init__(self, ts, condition):
        problems = validate(ts, condition)
        if problems:
            raise InputError("; ".join(problems))
        if ts.owners is None:
            raise InputError("game vertices must carry owners")
        for v in ts.vertices:
            if v not in ts.owners:
                raise InputError("vertex %r has no owner" % v)
        if len(ts.initial) != 1:
            raise InputError("a game has a single initial vertex")
        self.ts = ts
        self.condition = condition

    @property
    def initial(self):
        return self.ts.initial[0]


def _edge_priority(game, e):
    prios = game.condition.priorities
    c = game.ts.colour(e.id)
    if c in prios:
        return prios[c]
    if e.id in prios:
        return prios[e.id]
    raise InputError("no priority for edge %r" % e.id)


def _other(player):
    return "Adam" if player == "Eve" else "Eve"


@dataclass
class ParitySolution:
    regions: dict      # vertex -> winning player
    strategies: dict   # player -> {vertex -> edge id}

    def winner(self, v):
        return self.regions[v]


def solve_parity_game(game):
    """Winning regions and positional strategies, computed by the
    classical recursive attractor decomposition and verified by cycle
    analysis before being returned."""
    if game.condition.kind != "parity":
        raise InputError("expected a parity condition")
    ts = game.ts
    # bipartite board: vertex nodes and one midpoint node per edge, so
    # priorities sit on the midpoints and never disturb the minimum
    maxp = max(_edge_priority(game, e) for e in ts.edges)
    prio = {}
    owner = {}
    succ = {}
    for v in ts.vertices:
        n = ("v", v)
        prio[n] = maxp
        owner[n] = ts.owners[v]
        succ[n] = [("e", e.id) for e in ts.out(v)]
    for e in ts.edges:
        n = ("e", e.id)
        prio[n] = _edge_priority(game, e)
        owner[n] = "Eve"
        succ[n] = [("v", e.target)]

    def attract(player, base, nodes):
        region = set(base)
        strat = {}
        pending = sorted(base)
        preds = {}
        for n in nodes:
            for m in succ[n]:
                if m in nodes:
                    preds.setdefault(m, []).append(n)
        degree = {n: sum(1 for m in succ[n] if m in nodes) for n in nodes}
        while pending:
            n = pending.pop()
            for p in sorted(preds.get(n, [])):
                if p in region:
                    continue
                if owner[p] == player:
                    region.add(p)
                    strat[p] = n
                    pending.append(p)
                else:
                    degree[p] -= 1
                    if degree[p] == 0:
                        region.add(p)
                        pending.append(p)
        return region, strat

    def solve(nodes):
        if not nodes:
            return {"Eve": set(), "Adam": set()}, {"Eve": {}, "Adam": {}}
        d = min(prio[n] for n in nodes)
        player = "Eve" if d % 2 == 0 else "Adam"
        opp = _other(player)
        target = {n for n in nodes if prio[n] == d}
        attracted, astrat = attract(player, target, nodes)
        regions, strats = solve(nodes - attracted)
        if not regions[opp]:
            strat = dict(strats[player])
            strat.update(astrat)
            for n in sorted(target):
                if owner[n] == player and n not in strat:
                    strat[n] = min(m for m in succ[n] if m in nodes)
            return ({player: set(nodes), opp: set()},
                    {player: strat, opp: {}})
        escape, bstrat = attract(opp, regions[opp], nodes)
        regions2, strats2 = solve(nodes - escape)
        ostrat = dict(strats[opp])
        ostrat.update(bstrat)
        ostrat.update(strats2[opp])
        return ({player: regions2[player], opp: regions2[opp] | escape},
                {player: strats2[player], opp: ostrat})

    nodes = frozenset(prio)
    regions, strats = solve(nodes)
    out_regions = {}
    for v in ts.vertices:
        out_regions[v] = "Eve" if ("v", v) in regions["Eve"] else "Adam"
    out_strats = {"Eve": {}, "Adam": {}}
    for player in ("Eve", "Adam"):
        for n, m in strats[player].items():
            if n[0] == "v" and m[0] == "e":
                out_strats[player][n[1]] = m[1]
    solution = ParitySolution(out_regions, out_strats)
    problems = verify_parity_solution(game, solution)
    if problems:
        raise AssertionError("solver produced a bad certificate: %s"
                             % "; ".join(problems))
    return solution


def verify_parity_solution(game, solution):
    """Certificate check: within each region, following the winner's
    strategy must keep play in the region and make every cycle's minimum
    priority favourable.  Returns a list of problems."""
    problems = []
    ts = game.ts
    for player in ("Eve", "Adam"):
        region = {v for v, w in solution.regions.items() if w == player}
        if not region:
            continue
        allowed = []
        for v in sorted(region):
            if ts.owners[v] == player:
                eid = solution.strategies[player].get(v)
                if eid is None:
                    problems.append("%s has no move at %r" % (player, v))
                    continue
                chosen = [ts.edge(eid)]
            else:
                chosen = list(ts.out(v))
            for e in chosen:
                if e.target not in region:
                    problems.append(
                        "edge %r escapes the %s region" % (e.id, player))
                else:
                    allowed.append(e)
        good_parity = 0 if player == "Eve" else 1
        prios = {e.id: _edge_priority(game, e) for e in allowed}
        for d in sorted(set(prios.values())):
            if d % 2 == good_parity:
                continue
            keep = [e for e in allowed if prios[e.id] >= d]
            adj = {}
            for e in keep:
                adj.setdefault(e.source, []).append(e.target)
                adj.setdefault(e.target, [])
            comps = _tarjan(adj.keys(), lambda v: sorted(adj[v]))
            comp_of = {}
            for i, comp in enumerate(comps):
                for v in comp:
                    comp_of[v] = i
            for e in keep:
                if prios[e.id] == d and comp_of[e.source] == comp_of[e.target]:
                    problems.append(
                        "cycle with minimum priority %d inside the %s region"
                        % (d, player))
                    break
    return problems


@dataclass
class MullerSolution:
    regions: dict           # original vertex -> winning player
    transform: object       # the parity transformation used
    parity_solution: ParitySolution
    morphism: object

    def winner(self, v):
        return self.regions[v]


def solve_muller_game(game, explore_cap=None):
    """Solve by building the parity transformation, solving the parity
    game on it and projecting the regions back; all copies of a vertex
    land on the same side."""
    result = acd_transform(game.ts, game.condition, explore_cap=explore_cap)
    pgame = Game(result.system, result.condition)
    psol = solve_parity_game(pgame)
    regions = {}
    for q, copies in result.copies.items():
        winners = {psol.regions[c] for c in copies}
        if len(winners) != 1:
            raise AssertionError(
                "copies of %r disagree on the winner" % q)
        regions[q] = winners.pop()
    m = induced_morphism(result, game.ts, game.condition)
    return MullerSolution(regions, result, psol, m)
