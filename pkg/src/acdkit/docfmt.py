"""Canonical text format (versioned JSON) and DOT export."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .core import (BuchiCondition, CoBuchiCondition, InputError,
                   MullerCondition, ParityCondition, RabinCondition,
                   StreettCondition, TransitionSystem)

FORMAT = "acdkit/1"


@dataclass
class Document:
    system: TransitionSystem
    condition: object = None
    morphism: dict = None  # {"vertices": {...}, "edges": {...}}


def parse(text):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(
            "parse error at line %d column %d: %s" % (e.lineno, e.colno, e.msg)
        ) from None
    if not isinstance(obj, dict):
        raise InputError("document must be a JSON object")
    if obj.get("format") != FORMAT:
        raise InputError("unsupported format tag %r" % obj.get("format"))
    sysobj = obj.get("system")
    if not isinstance(sysobj, dict):
        raise InputError("missing system block")
    try:
        edges = [(e[0], e[1], e[2]) for e in sysobj.get("edges", [])]
    except (TypeError, IndexError):
        raise InputError("edges must be [id, source, target] triples") from None
    system = TransitionSystem(
        sysobj.get("vertices", []),
        edges,
        sysobj.get("initial", []),
        owners=sysobj.get("owners"),
        letters=sysobj.get("letters"),
        colours=sysobj.get("colours"))
    condition = None
    if obj.get("condition") is not None:
        condition = condition_from_obj(obj["condition"])
    morphism = None
    if obj.get("morphism") is not None:
        mobj = obj["morphism"]
        if not isinstance(mobj, dict) or \
                not isinstance(mobj.get("vertices"), dict) or \
                not isinstance(mobj.get("edges"), dict):
            raise InputError("morphism block needs vertex and edge maps")
        morphism = {"vertices": dict(mobj["vertices"]),
                    "edges": dict(mobj["edges"])}
    return Document(system, condition, morphism)


def condition_from_obj(obj):
    if not isinstance(obj, dict) or "type" not in obj:
        raise InputError("condition block needs a type")
    kind = obj["type"]
    if kind == "muller":
        return MullerCondition(obj.get("family", []))
    if kind == "parity":
        prios = obj.get("priorities", {})
        return ParityCondition({c: int(p) for c, p in prios.items()})
    if kind == "buchi":
        return BuchiCondition(obj.get("colours", []))
    if kind == "cobuchi":
        return CoBuchiCondition(obj.get("colours", []))
    if kind in ("rabin", "streett"):
        pairs = []
        for p in obj.get("pairs", []):
            if not isinstance(p, list) or len(p) != 2:
                raise InputError("%s pairs must be [E, F] lists" % kind)
            pairs.append((p[0], p[1]))
        cls = RabinCondition if kind == "rabin" else StreettCondition
        return cls(pairs)
    raise InputError("unknown condition type %r" % kind)


def condition_to_obj(cond):
    if cond.kind == "muller":
        return {"type": "muller",
                "family": sorted((sorted(s) for s in cond.family),
                                 key=lambda s: (len(s), s))}
    if cond.kind == "parity":
        return {"type": "parity", "priorities": dict(cond.priorities)}
    if cond.kind in ("buchi", "cobuchi"):
        return {"type": cond.kind, "colours": sorted(cond.colours)}
    if cond.kind in ("rabin", "streett"):
        return {"type": cond.kind,
                "pairs": sorted(([sorted(e), sorted(f)] for e, f in cond.pairs),
                                key=lambda p: (p[0], p[1]))}
    raise InputError("cannot serialize condition of kind %r" % cond.kind)


def system_to_obj(ts):
    obj = {
        "vertices": list(ts.vertices),
        "edges": [[e.id, e.source, e.target] for e in ts.edges],
        "initial": list(ts.initial),
    }
    if ts.owners:
        obj["owners"] = dict(ts.owners)
    if ts.letters:
        obj["letters"] = dict(ts.letters)
    colours = {e.id: ts.colour(e.id) for e in ts.edges
               if ts.colour(e.id) != e.id}
    if colours:
        obj["colours"] = colours
    return obj


def serialize(doc):
    obj = {"format": FORMAT, "system": system_to_obj(doc.system)}
    if doc.condition is not None:
        obj["condition"] = condition_to_obj(doc.condition)
    if doc.morphism is not None:
        obj["morphism"] = {"vertices": dict(doc.morphism["vertices"]),
                           "edges": dict(doc.morphism["edges"])}
    return dumps(obj)


def dumps(obj):
    """Canonical JSON text: sorted keys, two-space indent, trailing
    newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# Payloads for non-document command outputs.

def _node_name(node):
    return "r" if not node else "r." + ".".join(str(i) for i in node)


def tree_to_obj(tree):
    nodes = []
    for n in tree.nodes:
        nodes.append({
            "node": _node_name(n),
            "label": sorted(tree.label[n]),
            "priority": tree.priority(n),
            "children": [_node_name(c) for c in tree.children_map[n]],
        })
    return {
        "polarity": "even" if tree.even else "odd",
        "height": tree.height,
        "nodes": nodes,
        "branches": [_node_name(l) for l in tree.leaves],
    }


def acd_to_obj(acd):
    from .acd import acd_stats
    trees = []
    for t in acd.trees:
        nodes = []
        for n in t.nodes:
            nodes.append({
                "node": _node_name(n),
                "edges": sorted(t.label[n]),
                "states": sorted(t.states[n]),
                "priority": acd.priority(t.index, n),
            })
        trees.append({
            "index": t.index,
            "polarity": "even" if t.even else "odd",
            "height": t.height,
            "nodes": nodes,
        })
    obj = {"tag": acd.tag, "trees": trees, "stats": stats_to_obj(acd_stats(acd))}
    if acd.t0_edges:
        obj["t0"] = {
            "edges": sorted(acd.t0_edges),
            "states": sorted(acd.t0_states),
            "priority": acd.priority(0, ()),
        }
    return obj


def stats_to_obj(stats):
    return {
        "size": stats["size"],
        "interval": list(stats["interval"]),
        "tag": stats["tag"],
        "tree_heights": list(stats["tree_heights"]),
    }


# ---------------------------------------------------------------------------
# DOT export.

def _q(s):
    return '"%s"' % str(s).replace("\\", "\\\\").replace('"', '\\"')


def dot_system(ts, name="system"):
    lines = ["digraph %s {" % name, "  rankdir=LR;"]
    for v in ts.vertices:
        attrs = ["shape=circle"]
        if v in ts.initial:
            attrs.append("penwidth=2")
        if ts.owners and ts.owners.get(v) == "Adam":
            attrs = ["shape=box"] + attrs[1:]
        lines.append("  %s [%s];" % (_q(v), ",".join(attrs)))
    for e in ts.edges:
        label = e.id
        if ts.letters is not None:
            label += ":" + ts.letter(e.id)
        if ts.colour(e.id) != e.id:
            label += "/" + ts.colour(e.id)
        lines.append("  %s -> %s [label=%s];"
                     % (_q(e.source), _q(e.target), _q(label)))
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dot_tree_nodes(lines, prefix, label_of, priority_of, children_of, nodes,
                    extra_of=None):
    for n in nodes:
        shape = "ellipse" if priority_of(n) % 2 == 0 else "box"
        text = "{%s}" % ",".join(sorted(label_of(n)))
        if extra_of is not None:
            text += "\\n%s" % extra_of(n)
        text += "\\n%d" % priority_of(n)
        lines.append("    %s [shape=%s,label=%s];"
                     % (_q(prefix + _node_name(n)), shape, _q(text)))
    for n in nodes:
        for c in children_of(n):
            lines.append("    %s -> %s;"
                         % (_q(prefix + _node_name(n)),
                            _q(prefix + _node_name(c))))


def dot_tree(tree, name="zielonka"):
    lines = ["digraph %s {" % name, "  node [fontsize=10];"]
    inner = []
    _dot_tree_nodes(inner, "", lambda n: tree.label[n], tree.priority,
                    lambda n: tree.children_map[n], tree.nodes)
    lines.extend(l.strip() and "  " + l.strip() for l in inner)
    lines.append("}")
    return "\n".join(lines) + "\n"


def dot_acd(acd, name="acd"):
    lines = ["digraph %s {" % name, "  node [fontsize=10];"]
    if acd.t0_edges:
        lines.append("  subgraph cluster_t0 {")
        lines.append("    label=%s;" % _q("t0"))
        p = acd.priority(0, ())
        shape = "ellipse" if p % 2 == 0 else "box"
        text = "{%s}\\n%s\\n%d" % (",".join(sorted(acd.t0_edges)),
                                   ",".join(sorted(acd.t0_states)), p)
        lines.append("    %s [shape=%s,label=%s];" % (_q("t0:r"), shape, _q(text)))
        lines.append("  }")
    for t in acd.trees:
        lines.append("  subgraph cluster_t%d {" % t.index)
        lines.append("    label=%s;" % _q("t%d" % t.index))
        _dot_tree_nodes(
            lines, "t%d:" % t.index,
            lambda n, t=t: t.label[n],
            lambda n, t=t: acd.priority(t.index, n),
            lambda n, t=t: t.children_map[n],
            t.nodes,
            extra_of=lambda n, t=t: ",".join(sorted(t.states[n])))
        lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"
