"""Three-valued evaluation and the model-theoretic semantics of ground programs.

Enumerations are exhaustive: ``2^n`` two-valued or ``3^n`` three-valued
interpretations over the Herbrand base, bounded by the caps in ``errors``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Union

from .errors import MAX_ATOMS_2V, MAX_ATOMS_3V, DatalogBNError, check_cap
from .interp import (TV, Interpretation, bit, iter_subspaces, minimal_subspaces,
                     sort_interpretations, subspace_leq, tv_max, tv_min)
from .network import Dnf, eval3_clauses
from .program import SENTINEL, GroundProgram, Rule


# ------------------------------------------------------------------ formulas

@dataclass(frozen=True)
class Not:
    arg: object


@dataclass(frozen=True)
class And:
    args: tuple


@dataclass(frozen=True)
class Or:
    args: tuple


Formula = Union[TV, bool, Not, And, Or, Dnf, object]


def eval3(i: Union[Interpretation, Mapping], e) -> TV:
    """Recursive three-valued value of ``e``; anything that is not a
    connective, constant or ``Dnf`` is looked up as an atom."""
    values = i.as_dict() if isinstance(i, Interpretation) else i
    if isinstance(e, TV):
        return e
    if isinstance(e, bool):
        return TV.T if e else TV.F
    if isinstance(e, Not):
        return eval3(values, e.arg).neg()
    if isinstance(e, And):
        out = TV.T
        for a in e.args:
            out = tv_min(out, eval3(values, a))
        return out
    if isinstance(e, Or):
        out = TV.F
        for a in e.args:
            out = tv_max(out, eval3(values, a))
        return out
    if isinstance(e, Dnf):
        return eval3(values, dnf_formula(e))
    if e == SENTINEL:
        return TV.U
    try:
        return TV(values[e])
    except KeyError:
        raise DatalogBNError(f"unknown atom {e}") from None


def dnf_formula(d: Dnf):
    return Or(tuple(And(tuple(v if pol else Not(v) for v, pol in sorted(c, key=str)))
                    for c in d.clauses))


def body_formula(r: Rule):
    return And(tuple(sorted(r.pos)) + tuple(Not(a) for a in sorted(r.neg)))


# ---------------------------------------------------------------- completion

def completion(g: GroundProgram) -> dict:
    """``{atom: rhs}``: the disjunction of the bodies of the rules for each atom."""
    by_head = g.rules_by_head
    return {a: Dnf.from_rules(by_head[a]) for a in g.atoms}


def head_clauses(g: GroundProgram) -> tuple:
    n = g.n
    out = [[] for _ in range(n)]
    heads = {bit(n, i): i for i in range(n)}
    for h, p, q in g.compiled:
        out[heads[h]].append((p, q))
    return tuple(tuple(c) for c in out)


def _is_supported(clauses, n, t, u) -> bool:
    fm = ((1 << n) - 1) & ~(t | u)
    for i in range(n):
        b = bit(n, i)
        own = TV.U if u & b else TV.T if t & b else TV.F
        if eval3_clauses(clauses[i], t, fm) != own:
            return False
    return True


def supported_partial_models(g: GroundProgram, cap: int = MAX_ATOMS_3V) -> list[Interpretation]:
    """Three-valued models of the completion."""
    check_cap("three-valued scan atoms", g.n, cap)
    clauses = head_clauses(g)
    return sort_interpretations(Interpretation.from_masks(g.atoms, t, u)
                                for t, u in iter_subspaces(g.n)
                                if _is_supported(clauses, g.n, t, u))


def supported_models(g: GroundProgram, cap: int = MAX_ATOMS_2V) -> list[Interpretation]:
    check_cap("state space atoms", g.n, cap)
    return [Interpretation.from_state(g.atoms, s) for s in range(1 << g.n) if t_step(g, s) == s]


def t_step(g: GroundProgram, state: int) -> int:
    """Immediate-consequence map on a two-valued state (bitmask)."""
    y = 0
    for h, p, q in g.compiled:
        if state & p == p and not state & q:
            y |= h
    return y


# ------------------------------------------------------------------- reducts

def reduct3(g: GroundProgram, i: Interpretation) -> tuple:
    """Positive rules of the three-valued reduct; undefined negative literals
    are replaced by the sentinel atom, which is always undefined."""
    out = []
    for r in g.rules:
        vals = [i[a] for a in r.neg]
        if TV.T in vals:
            continue
        pos = set(r.pos)
        if TV.U in vals:
            pos.add(SENTINEL)
        out.append(Rule(r.head, frozenset(pos)))
    return tuple(sorted(set(out), key=Rule.sort_key))


def least_model3(rules, atoms) -> Interpretation:
    """Least three-valued model (truth order) of a positive program whose
    only non-HB atom is the sentinel, by iteration from all-false."""
    values = {a: TV.F for a in atoms}
    values[SENTINEL] = TV.U
    changed = True
    while changed:
        changed = False
        for r in rules:
            v = TV.T
            for a in r.pos:
                v = tv_min(v, values[a])
            if v.truth_rank > values[r.head].truth_rank:
                values[r.head] = v
                changed = True
    return Interpretation(tuple(atoms), tuple(values[a] for a in atoms))


def _least3_masks(g: GroundProgram, t: int, u: int) -> tuple[int, int]:
    """Mask version of ``least_model3(reduct3(g, I))`` for ``I = (t, u)``."""
    live = []
    for h, p, q in g.compiled:
        if q & t:
            continue
        live.append((h, p, bool(q & u)))
    jt = ju = 0
    changed = True
    while changed:
        changed = False
        for h, p, weak in live:
            if jt & h:
                continue
            if p & ~jt == 0 and not weak:
                jt |= h
                ju &= ~h
                changed = True
            elif p & ~(jt | ju) == 0 and not ju & h:
                ju |= h
                changed = True
    return jt, ju


def f_step(g: GroundProgram, state: int) -> int:
    """Least model of the Gelfond-Lifschitz reduct w.r.t. a two-valued state."""
    return _least3_masks(g, state, 0)[0]


def stable_partial_models(g: GroundProgram, cap: int = MAX_ATOMS_3V) -> list[Interpretation]:
    check_cap("three-valued scan atoms", g.n, cap)
    return sort_interpretations(Interpretation.from_masks(g.atoms, t, u)
                                for t, u in iter_subspaces(g.n)
                                if _least3_masks(g, t, u) == (t, u))


def stable_models(g: GroundProgram, cap: int = MAX_ATOMS_2V) -> list[Interpretation]:
    check_cap("state space atoms", g.n, cap)
    return [Interpretation.from_state(g.atoms, s) for s in range(1 << g.n) if f_step(g, s) == s]


def minimal_models(models) -> list[Interpretation]:
    """The knowledge-order-minimal members of a list of interpretations."""
    models = list(models)
    if not models:
        return []
    atoms = models[0].atoms
    return sort_interpretations(Interpretation.from_masks(atoms, t, u)
                                for t, u in minimal_subspaces(m.masks for m in models))


def regular_models(g: GroundProgram, cap: int = MAX_ATOMS_3V) -> list[Interpretation]:
    return minimal_models(stable_partial_models(g, cap))


def well_founded_model(g: GroundProgram, cap: int = MAX_ATOMS_3V) -> Interpretation:
    """Derived from the enumerated stable partial models: the one that lies
    above all others in the knowledge order (the least informative)."""
    models = stable_partial_models(g, cap)
    for m in models:
        if all(subspace_leq(o.masks, m.masks) for o in models):
            return m
    raise AssertionError("stable partial models have no common upper bound")


# ----------------------------------------------------------------------- lfp

def lfp_transform(g: GroundProgram, max_rounds: int = 10_000) -> GroundProgram:
    """Negative program reached by repeatedly replacing positive body atoms
    with the (negative) bodies of already derived rules, starting from no rules."""
    n = g.n
    heads = {bit(n, i): i for i in range(n)}
    rules = [(heads[h], [i for i in range(n) if p & bit(n, i)], q)
             for h, p, q in g.compiled]
    derived = [set() for _ in range(n)]
    for _ in range(max_rounds):
        new = [set() for _ in range(n)]
        for h, pos, q in rules:
            negs = {q}
            for i in pos:
                negs = {s | m for s in negs for m in derived[i]}
                if not negs:
                    break
            new[h] |= negs
        if new == derived:
            break
        derived = new
    else:
        raise DatalogBNError("lfp transformation did not converge")
    atoms = g.atoms
    out = []
    for h in range(n):
        for q in derived[h]:
            out.append(Rule(atoms[h], frozenset(), g.atoms_of(q)))
    return GroundProgram(tuple(out), atoms, g.universe)
