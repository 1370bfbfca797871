"""Boolean networks with DNF update functions, built from ground programs.

Covers the program-to-network encoding, influence graphs (semantic and
syntactic), syntactic percolation, synchronous and asynchronous state
transition graphs, attractors, fixed points and (complete, minimal) trap
spaces.  All exhaustive scans are bounded by the caps in ``errors``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from .errors import MAX_ATOMS_2V, MAX_ATOMS_3V, MAX_DEPENDENCIES, check_cap
from .graph import NEG, POS, SignedDigraph, terminal_components
from .interp import (TV, Interpretation, bit, iter_subspaces, minimal_subspaces,
                     sort_interpretations, state_str)


_TRUE_CLAUSES = frozenset([frozenset()])


@dataclass(frozen=True)
class Dnf:
    """Disjunction of clauses; a clause is a frozenset of ``(variable, polarity)``.

    The empty clause set is constant false; a set holding the empty clause
    is true.  Other clauses next to an empty one are kept (a fact beside
    further rules still contributes literals to the syntactic graph) and only
    dropped by ``substitute``.
    """

    clauses: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "clauses", frozenset(frozenset(c) for c in self.clauses))

    @classmethod
    def const(cls, value: bool) -> "Dnf":
        return TRUE if value else FALSE

    @classmethod
    def conjunction(cls, pos: Iterable = (), neg: Iterable = ()) -> "Dnf":
        return cls(frozenset([frozenset([(v, True) for v in pos] + [(v, False) for v in neg])]))

    @classmethod
    def from_rules(cls, rules) -> "Dnf":
        return cls(frozenset(
            frozenset([(a, True) for a in r.pos] + [(a, False) for a in r.neg]) for r in rules))

    @property
    def is_true(self) -> bool:
        """Syntactically the constant 1 (a lone empty clause)."""
        return self.clauses == _TRUE_CLAUSES

    @property
    def is_false(self) -> bool:
        return not self.clauses

    @property
    def is_const(self) -> bool:
        return self.is_true or self.is_false

    def variables(self) -> set:
        return {v for c in self.clauses for v, _ in c}

    def literals(self) -> set:
        return {lit for c in self.clauses for lit in c}

    def substitute(self, values: Mapping) -> "Dnf":
        """Replace variables by Boolean constants and simplify."""
        out = []
        for c in self.clauses:
            kept = []
            dead = False
            for v, pol in c:
                if v in values:
                    if bool(values[v]) != pol:
                        dead = True
                        break
                else:
                    kept.append((v, pol))
            if not dead:
                out.append(frozenset(kept))
        if frozenset() in out:
            return TRUE
        return Dnf(frozenset(out))

    def __str__(self):
        if self.is_true:
            return "1"
        if self.is_false:
            return "0"

        def lit(l):
            return str(l[0]) if l[1] else f"¬{l[0]}"

        clauses = [sorted(c, key=lambda l: (l[0], not l[1])) for c in self.clauses]
        clauses.sort(key=lambda c: [(l[0], not l[1]) for l in c])
        return " ∨ ".join(" ∧ ".join(lit(l) for l in c) or "1" for c in clauses)


TRUE = Dnf(_TRUE_CLAUSES)
FALSE = Dnf(frozenset())


@dataclass(frozen=True, eq=False)
class BooleanNetwork:
    variables: tuple
    functions: Mapping

    def __post_init__(self):
        variables = tuple(self.variables)
        funcs = dict(self.functions)
        known = set(variables)
        if len(known) != len(variables):
            raise ValueError("duplicate variable")
        if set(funcs) != known:
            raise ValueError("every variable needs exactly one update function")
        for v, fv in funcs.items():
            extra = fv.variables() - known
            if extra:
                raise ValueError(f"f_{v} mentions unknown variables {sorted(extra)}")
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "functions", funcs)

    def __eq__(self, other):
        if not isinstance(other, BooleanNetwork):
            return NotImplemented
        return self.variables == other.variables and self.functions == other.functions

    def __getitem__(self, v) -> Dnf:
        return self.functions[v]

    def __len__(self):
        return len(self.variables)

    @property
    def n(self) -> int:
        return len(self.variables)

    @cached_property
    def index(self) -> dict:
        return {v: i for i, v in enumerate(self.variables)}

    @cached_property
    def compiled(self) -> tuple:
        """Per variable, a tuple of ``(pos_mask, neg_mask)`` clauses."""
        n, idx = self.n, self.index
        out = []
        for v in self.variables:
            cl = []
            for c in self.functions[v].clauses:
                p = q = 0
                for u, pol in c:
                    if pol:
                        p |= bit(n, idx[u])
                    else:
                        q |= bit(n, idx[u])
                cl.append((p, q))
            out.append(tuple(sorted(cl)))
        return tuple(out)

    @property
    def is_and_not(self) -> bool:
        for fv in self.functions.values():
            if fv.is_const:
                continue
            if len(fv.clauses) != 1:
                return False
            (c,) = fv.clauses
            if len({v for v, _ in c}) != len(c):
                return False
        return True

    def step(self, state: int) -> int:
        """Synchronous successor of ``state``."""
        n = self.n
        y = 0
        for i, clauses in enumerate(self.compiled):
            for p, q in clauses:
                if state & p == p and not state & q:
                    y |= bit(n, i)
                    break
        return y

    def eval3(self, i: int, true_mask: int, undef_mask: int) -> TV:
        """Three-valued value of ``f_{v_i}`` on a sub-space."""
        false_mask = ((1 << self.n) - 1) & ~(true_mask | undef_mask)
        return eval3_clauses(self.compiled[i], true_mask, false_mask)

    def __str__(self):
        return "".join(f"f_{v} = {self.functions[v]}\n" for v in self.variables)


def eval3_clauses(clauses, true_mask: int, false_mask: int) -> TV:
    undef = False
    for p, q in clauses:
        if p & false_mask or q & true_mask:
            continue
        if not p & ~true_mask and not q & ~false_mask:
            return TV.T
        undef = True
    return TV.U if undef else TV.F


def encode(g) -> BooleanNetwork:
    """Network whose update function for each atom is the disjunction of the
    bodies of the rules defining it (constant false when there are none)."""
    by_head = g.rules_by_head
    return BooleanNetwork(g.atoms, {a: Dnf.from_rules(by_head[a]) for a in g.atoms})


def and_not_network(variables, literals: Mapping) -> BooleanNetwork:
    """AND-NOT network from ``{v: None | bool | (pos, neg)}``; ``None`` means 0.

    Rejects a conjunction holding both literals of one variable.
    """
    funcs = {}
    for v in variables:
        s = literals.get(v)
        if s is None or isinstance(s, bool):
            funcs[v] = Dnf.const(bool(s))
            continue
        pos, neg = set(s[0]), set(s[1])
        if pos & neg:
            raise ValueError(f"f_{v} contains both literals of {sorted(pos & neg)}")
        funcs[v] = Dnf.conjunction(pos, neg)
    return BooleanNetwork(tuple(variables), funcs)


# -------------------------------------------------------------------- graphs

def influence_graph(f: BooleanNetwork, limit: int = MAX_DEPENDENCIES) -> SignedDigraph:
    """Semantic influence graph by brute force over the inputs of each function."""
    n = f.n
    arcs = set()
    for i, v in enumerate(f.variables):
        deps = sorted(f.functions[v].variables(), key=f.index.__getitem__)
        k = len(deps)
        check_cap(f"dependencies of f_{v}", k, limit)
        if not k:
            continue
        gbits = [bit(n, f.index[u]) for u in deps]
        clauses = f.compiled[i]
        table = []
        for local in range(1 << k):
            x = 0
            for d in range(k):
                if local >> d & 1:
                    x |= gbits[d]
            table.append(any(x & p == p and not x & q for p, q in clauses))
        for d, u in enumerate(deps):
            up = down = False
            for local in range(1 << k):
                if local >> d & 1:
                    continue
                lo, hi = table[local], table[local | 1 << d]
                up |= lo < hi
                down |= lo > hi
            if up:
                arcs.add((u, v, POS))
            if down:
                arcs.add((u, v, NEG))
    return SignedDigraph(f.variables, frozenset(arcs))


def syntactic_influence_graph(f: BooleanNetwork) -> SignedDigraph:
    arcs = set()
    for v, fv in f.functions.items():
        for u, pol in fv.literals():
            arcs.add((u, v, POS if pol else NEG))
    return SignedDigraph(f.variables, frozenset(arcs))


# --------------------------------------------------------------- percolation

def syntactic_constants(f: BooleanNetwork) -> dict:
    return {v: fv.is_true for v, fv in f.functions.items() if fv.is_const}


def percolate_one_step(f: BooleanNetwork) -> BooleanNetwork:
    consts = syntactic_constants(f)
    rest = tuple(v for v in f.variables if v not in consts)
    return BooleanNetwork(rest, {v: f.functions[v].substitute(consts) for v in rest})


def percolate(f: BooleanNetwork) -> tuple[BooleanNetwork, dict]:
    """Iterate one-step percolation until the network is empty or unchanged.

    Returns the residual network and the accumulated constant values.
    """
    fixed = {}
    while f.variables:
        consts = syntactic_constants(f)
        if not consts:
            break
        fixed.update({v: int(c) for v, c in consts.items()})
        f = percolate_one_step(f)
    return f, fixed


# ---------------------------------------------------------------- dynamics

@dataclass(frozen=True, eq=False)
class TransitionGraph:
    """Transition graph over all ``2^n`` states of ``atoms``.

    ``successors[s]`` lists the successors of state ``s``; functional
    variants (stable, supported, synchronous) have exactly one per state.
    Asynchronous graphs store only actual flips, so a state with no
    successors is a fixed point.
    """

    atoms: tuple
    successors: tuple
    kind: str

    def __eq__(self, other):
        if not isinstance(other, TransitionGraph):
            return NotImplemented
        return self.atoms == other.atoms and self.successors == other.successors

    @property
    def n(self) -> int:
        return len(self.atoms)

    def __len__(self):
        return len(self.successors)

    @property
    def is_functional(self) -> bool:
        return all(len(s) == 1 for s in self.successors)

    def successor(self, state: int) -> int:
        (t,) = self.successors[state]
        return t

    def arcs(self):
        for s, succ in enumerate(self.successors):
            for t in succ:
                yield s, t

    def label(self, state: int) -> str:
        return state_str(state, self.n)

    def atom_set(self, state: int) -> frozenset:
        n = self.n
        return frozenset(a for i, a in enumerate(self.atoms) if state & bit(n, i))


def sync_stg(f: BooleanNetwork, cap: int = MAX_ATOMS_2V) -> TransitionGraph:
    check_cap("state space variables", f.n, cap)
    return TransitionGraph(f.variables, tuple((f.step(s),) for s in range(1 << f.n)), "sync")


def async_stg(f: BooleanNetwork, cap: int = MAX_ATOMS_2V) -> TransitionGraph:
    check_cap("state space variables", f.n, cap)
    n = f.n
    succ = []
    for s in range(1 << n):
        y = f.step(s)
        diff = s ^ y
        succ.append(tuple(sorted(s ^ bit(n, i) for i in range(n) if diff & bit(n, i))))
    return TransitionGraph(f.variables, tuple(succ), "async")


def attractors(stg: TransitionGraph) -> list[tuple[int, ...]]:
    """Terminal strongly connected components, sorted; length 1 means a fixed point."""
    return terminal_components(len(stg.successors), stg.successors)


def fixed_points(f: BooleanNetwork, cap: int = MAX_ATOMS_2V) -> list[Interpretation]:
    check_cap("state space variables", f.n, cap)
    return [Interpretation.from_state(f.variables, s)
            for s in range(1 << f.n) if f.step(s) == s]


# ------------------------------------------------------------- trap spaces

def _scan_subspaces(f: BooleanNetwork, complete: bool, cap: int) -> list[tuple[int, int]]:
    n = f.n
    check_cap("three-valued scan variables", n, cap)
    full = (1 << n) - 1
    compiled = f.compiled
    bits = [bit(n, i) for i in range(n)]
    found = []
    for t, u in iter_subspaces(n):
        fm = full & ~(t | u)
        ok = True
        for i in range(n):
            b = bits[i]
            own = TV.U if u & b else TV.T if t & b else TV.F
            if own == TV.U and not complete:
                continue
            if eval3_clauses(compiled[i], t, fm) != own:
                ok = False
                break
        if ok:
            found.append((t, u))
    return found


def _wrap(f: BooleanNetwork, pairs) -> list[Interpretation]:
    return sort_interpretations(Interpretation.from_masks(f.variables, t, u) for t, u in pairs)


def trap_spaces(f: BooleanNetwork, cap: int = MAX_ATOMS_3V) -> list[Interpretation]:
    """Sub-spaces ``m`` with ``m(f_v) <=s m(v)`` for every variable."""
    return _wrap(f, _scan_subspaces(f, False, cap))


def complete_trap_spaces(f: BooleanNetwork, cap: int = MAX_ATOMS_3V) -> list[Interpretation]:
    """Sub-spaces ``m`` with ``m(f_v) = m(v)`` for every variable."""
    return _wrap(f, _scan_subspaces(f, True, cap))


def minimal_trap_spaces(f: BooleanNetwork, cap: int = MAX_ATOMS_3V) -> list[Interpretation]:
    return _wrap(f, minimal_subspaces(_scan_subspaces(f, False, cap)))
