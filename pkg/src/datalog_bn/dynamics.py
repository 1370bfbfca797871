"""Stable and supported dynamics of ground programs: the F_P and T_P
operators, their transition graphs, strict classes, trap sets and trap spaces.

States are bitmasks over the Herbrand base; see ``interp`` for the layout.
"""

from __future__ import annotations

from typing import Iterable, Optional

from .errors import MAX_ATOMS_2V, MAX_ATOMS_3V, check_cap
from .interp import (TV, Interpretation, iter_subspaces, minimal_subspaces,
                     sort_interpretations)
from .network import TransitionGraph, eval3_clauses
from .program import GroundProgram
from .semantics import head_clauses, f_step, t_step

STABLE = "stable"
SUPPORTED = "supported"


def _state(g: GroundProgram, i) -> int:
    if isinstance(i, int):
        return i
    if isinstance(i, Interpretation):
        if not i.is_two_valued:
            raise ValueError("expected a two-valued interpretation")
        return i.masks[0]
    return g.mask(i)


def f_op(g: GroundProgram, i) -> frozenset:
    """F_P on a two-valued interpretation (atom set, state or Interpretation)."""
    return g.atoms_of(f_step(g, _state(g, i)))


def t_op(g: GroundProgram, i) -> frozenset:
    return g.atoms_of(t_step(g, _state(g, i)))


def stable_tg(g: GroundProgram, cap: int = MAX_ATOMS_2V) -> TransitionGraph:
    check_cap("state space atoms", g.n, cap)
    return TransitionGraph(g.atoms, tuple((f_step(g, s),) for s in range(1 << g.n)), STABLE)


def supported_tg(g: GroundProgram, cap: int = MAX_ATOMS_2V) -> TransitionGraph:
    check_cap("state space atoms", g.n, cap)
    return TransitionGraph(g.atoms, tuple((t_step(g, s),) for s in range(1 << g.n)), SUPPORTED)


def transition_graph(g: GroundProgram, kind: str, cap: int = MAX_ATOMS_2V) -> TransitionGraph:
    if kind == STABLE:
        return stable_tg(g, cap)
    if kind == SUPPORTED:
        return supported_tg(g, cap)
    raise ValueError(f"unknown kind {kind!r}")


def strict_classes(tg: TransitionGraph) -> list[tuple[int, ...]]:
    """Cycles of a functional transition graph, each as a sorted state tuple;
    ordered by size, then states."""
    if not tg.is_functional:
        raise ValueError("strict classes need a functional transition graph")
    succ = [s[0] for s in tg.successors]
    colour = [0] * len(succ)  # 0 new, 1 on current walk, 2 done
    found = []
    for start in range(len(succ)):
        walk = []
        x = start
        while colour[x] == 0:
            colour[x] = 1
            walk.append(x)
            x = succ[x]
        if colour[x] == 1:
            found.append(tuple(sorted(walk[walk.index(x):])))
        for y in walk:
            colour[y] = 2
    found.sort(key=lambda c: (len(c), c))
    return found


def is_trap_set(tg: TransitionGraph, states: Iterable[int]) -> bool:
    s = set(states)
    if not s:
        raise ValueError("a trap set is non-empty")
    return all(t in s for x in s for t in tg.successors[x])


def closed_subspaces(tg: TransitionGraph, cap: int = MAX_ATOMS_3V) -> list[tuple[int, int]]:
    """Mask pairs whose cell is a trap set of ``tg``."""
    n = tg.n
    check_cap("three-valued scan atoms", n, cap)
    succ = tg.successors
    out = []
    for t, u in iter_subspaces(n):
        ok = True
        x = 0
        # walk the cell over the undefined positions
        while True:
            for y in succ[t | x]:
                if y & ~u != t:
                    ok = False
                    break
            if not ok or x == u:
                break
            x = (x - u) & u
        if ok:
            out.append((t, u))
    return out


def stable_trap_spaces(g: GroundProgram, cap: int = MAX_ATOMS_3V) -> list[Interpretation]:
    tg = stable_tg(g, min(cap, MAX_ATOMS_2V))
    return sort_interpretations(Interpretation.from_masks(g.atoms, t, u)
                                for t, u in closed_subspaces(tg, cap))


def supported_trap_spaces(g: GroundProgram, cap: int = MAX_ATOMS_3V) -> list[Interpretation]:
    """Interpretations with ``I(rhs(v)) <=s I(v)`` for every atom ``v``."""
    n = g.n
    check_cap("three-valued scan atoms", n, cap)
    clauses = head_clauses(g)
    full = (1 << n) - 1
    out = []
    for t, u in iter_subspaces(n):
        fm = full & ~(t | u)
        fixed = full & ~u
        ok = True
        for i in range(n):
            b = 1 << (n - 1 - i)
            if not fixed & b:
                continue
            if eval3_clauses(clauses[i], t, fm) != (TV.T if t & b else TV.F):
                ok = False
                break
        if ok:
            out.append((t, u))
    return sort_interpretations(Interpretation.from_masks(g.atoms, t, u) for t, u in out)


def trap_spaces_of(g: GroundProgram, kind: str, cap: int = MAX_ATOMS_3V) -> list[Interpretation]:
    if kind == STABLE:
        return stable_trap_spaces(g, cap)
    if kind == SUPPORTED:
        return supported_trap_spaces(g, cap)
    raise ValueError(f"unknown kind {kind!r}")


def minimal_trap_spaces_of(g: GroundProgram, kind: str,
                           cap: int = MAX_ATOMS_3V) -> list[Interpretation]:
    spaces = trap_spaces_of(g, kind, cap)
    return sort_interpretations(Interpretation.from_masks(g.atoms, t, u)
                                for t, u in minimal_subspaces(m.masks for m in spaces))


def overlap(i1: Interpretation, i2: Interpretation) -> Optional[Interpretation]:
    """Pointwise knowledge-order meet; ``None`` when the cells are disjoint."""
    if i1.atoms != i2.atoms:
        raise ValueError("interpretations over different atoms")
    out = []
    for a, b in zip(i1.values, i2.values):
        if a == TV.U:
            out.append(b)
        elif b == TV.U or a == b:
            out.append(a)
        else:
            return None
    return Interpretation(i1.atoms, tuple(out))


def minimal_cover(g: GroundProgram, states: Iterable, kind: str = STABLE,
                  cap: int = MAX_ATOMS_3V) -> Interpretation:
    """Overlap of all trap spaces of ``kind`` whose cell contains every state."""
    states = [_state(g, s) for s in states]
    if not states:
        raise ValueError("need at least one state")
    result = Interpretation.all_undefined(g.atoms)
    for m in trap_spaces_of(g, kind, cap):
        if all(m.contains(s) for s in states):
            result = overlap(result, m)
    return result
