"""Text, JSON and DOT renderings shared by the command line.

Everything here is deterministic: nodes, arcs and lists come out in a
fixed order so that outputs can be compared byte for byte.
"""

from __future__ import annotations

import json
from typing import Iterable, Optional

from .graph import SignedDigraph
from .interp import Interpretation
from .network import BooleanNetwork, TransitionGraph
from .program import GroundProgram


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False, sort_keys=False) + "\n"


def _quote(s) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def atom_set_label(atoms: Iterable) -> str:
    names = sorted(str(a) for a in atoms)
    return "{" + ", ".join(names) + "}" if names else "∅"


# ----------------------------------------------------------------------- dot

def signed_graph_dot(g: SignedDigraph, name: str = "G") -> str:
    lines = [f"digraph {name} {{"]
    if g.vertices:
        lines.append("  node [shape=ellipse];")
    for v in g.vertices:
        lines.append(f"  {_quote(v)};")
    for u, v, s in g.sorted_arcs():
        lines.append(f"  {_quote(u)} -> {_quote(v)} [label={_quote(s)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def transition_graph_dot(tg: TransitionGraph, boxed: Iterable[int] = (),
                         labels: str = "bits", name: Optional[str] = None) -> str:
    """DOT for a transition graph.  ``boxed`` states get a box shape;
    ``labels`` is ``bits`` (``011``) or ``sets`` (``{q, r}``)."""
    boxed = set(boxed)
    lines = [f"digraph {name or tg.kind} {{"]
    if len(tg):
        lines.append("  node [shape=plaintext];")
    for s in range(len(tg)):
        label = tg.label(s) if labels == "bits" else atom_set_label(tg.atom_set(s))
        attrs = f"label={_quote(label)}"
        if s in boxed:
            attrs += ", shape=box"
        lines.append(f"  s{s} [{attrs}];")
    for s, t in tg.arcs():
        lines.append(f"  s{s} -> s{t};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------- json

def graph_json(g: SignedDigraph) -> dict:
    return {"vertices": [str(v) for v in g.vertices],
            "arcs": [{"source": str(u), "target": str(v), "sign": s}
                     for u, v, s in g.sorted_arcs()]}


def graph_text(g: SignedDigraph) -> str:
    return "".join(f"{u} {s}> {v}\n" for u, v, s in g.sorted_arcs())


def program_json(g: GroundProgram) -> dict:
    return {"atoms": [str(a) for a in g.atoms],
            "rules": [{"head": str(r.head),
                       "pos": sorted(str(a) for a in r.pos),
                       "neg": sorted(str(a) for a in r.neg)} for r in g.rules]}


def network_json(f: BooleanNetwork) -> dict:
    return {"variables": [str(v) for v in f.variables],
            "functions": {str(v): str(f[v]) for v in f.variables}}


def interpretation_json(i: Interpretation) -> dict:
    return {"string": i.render(),
            "values": {str(a): v.name for a, v in zip(i.atoms, i.values)}}


def interpretations_json(items: Iterable[Interpretation]) -> list:
    return [interpretation_json(i) for i in items]


def states_json(tg: TransitionGraph, states: Iterable[int]) -> list:
    return [{"state": tg.label(s), "atoms": sorted(str(a) for a in tg.atom_set(s))}
            for s in states]


def transition_graph_json(tg: TransitionGraph) -> dict:
    return {"kind": tg.kind, "atoms": [str(a) for a in tg.atoms],
            "arcs": [[tg.label(s), tg.label(t)] for s, t in tg.arcs()]}


def transition_graph_text(tg: TransitionGraph) -> str:
    return "".join(f"{tg.label(s)} -> {tg.label(t)}\n" for s, t in tg.arcs())


def class_text(tg: TransitionGraph, states: Iterable[int]) -> str:
    return "{" + ", ".join(atom_set_label(tg.atom_set(s)) for s in states) + "}"
