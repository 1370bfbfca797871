"""Datalog programs with default negation: syntax, parsing and grounding.

Concrete syntax::

    % comment
    p(a, b).                     % fact
    t(X, Y) :- e(X, Y), not s(X).

Constants and predicate names start with a lowercase letter (constants may
also start with a digit); variables start with an uppercase letter or ``_``.
Function symbols, headless rules and the reserved predicate ``u__`` are
rejected.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Optional, Sequence

from .errors import GroundingError, ParseError, UnsafeRuleWarning
from .graph import NEG, POS, SignedDigraph, has_positive_cycle
from .interp import bit

# Reduct sentinel: stands for an atom outside HB that is always undefined.
SENTINEL_NAME = "u__"


@dataclass(frozen=True, order=True)
class Term:
    name: str

    @property
    def is_variable(self) -> bool:
        return self.name[0].isupper() or self.name[0] == "_"

    def __str__(self):
        return self.name


@dataclass(frozen=True, order=True)
class Atom:
    predicate: str
    args: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(
            a if isinstance(a, Term) else Term(a) for a in self.args))

    @property
    def is_ground(self) -> bool:
        return not any(t.is_variable for t in self.args)

    @property
    def arity(self) -> int:
        return len(self.args)

    def variables(self) -> set:
        return {t.name for t in self.args if t.is_variable}

    def substitute(self, theta: dict) -> "Atom":
        return Atom(self.predicate, tuple(Term(theta.get(t.name, t.name)) for t in self.args))

    def __str__(self):
        if not self.args:
            return self.predicate
        return f"{self.predicate}({','.join(t.name for t in self.args)})"

    def __repr__(self):
        return f"Atom({str(self)!r})"


SENTINEL = Atom(SENTINEL_NAME)


@dataclass(frozen=True)
class Rule:
    head: Atom
    pos: frozenset = field(default_factory=frozenset)
    neg: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "pos", frozenset(self.pos))
        object.__setattr__(self, "neg", frozenset(self.neg))

    @property
    def is_fact(self) -> bool:
        return not self.pos and not self.neg

    def atoms(self) -> set:
        return {self.head} | self.pos | self.neg

    def variables(self) -> set:
        out = set()
        for a in self.atoms():
            out |= a.variables()
        return out

    def sort_key(self):
        return (self.head, tuple(sorted(self.pos)), tuple(sorted(self.neg)))

    def __str__(self):
        body = [str(a) for a in sorted(self.pos)] + [f"not {a}" for a in sorted(self.neg)]
        if not body:
            return f"{self.head}."
        return f"{self.head} :- {', '.join(body)}."


def rule(text: str) -> Rule:
    """Parse a single rule, mostly for tests and interactive use."""
    (r,) = parse(text).rules
    return r


@dataclass(frozen=True)
class Program:
    """Parsed, possibly non-ground program; rules keep source order."""

    rules: tuple

    def constants(self) -> set:
        return {t.name for r in self.rules for a in r.atoms() for t in a.args
                if not t.is_variable}

    def __str__(self):
        return "".join(f"{r}\n" for r in self.rules)


@dataclass(frozen=True)
class GroundProgram:
    """Deduplicated ground rules plus the Herbrand base in canonical order.

    ``atoms`` defaults to every atom occurring in a rule; a larger base may
    be passed explicitly (atoms heading no rule are simply always false).
    """

    rules: tuple
    atoms: tuple = None
    universe: frozenset = None

    def __post_init__(self):
        rules = sorted(set(self.rules), key=Rule.sort_key)
        occurring = set()
        for r in rules:
            if r.variables():
                raise ValueError(f"rule is not ground: {r}")
            occurring |= r.atoms()
        atoms = occurring if self.atoms is None else set(self.atoms)
        if not occurring <= atoms:
            raise ValueError(f"atoms missing from the Herbrand base: {sorted(occurring - atoms)}")
        universe = self.universe
        if universe is None:
            universe = {t.name for a in atoms for t in a.args}
        object.__setattr__(self, "rules", tuple(rules))
        object.__setattr__(self, "atoms", tuple(sorted(atoms)))
        object.__setattr__(self, "universe", frozenset(universe))

    def __hash__(self):
        return hash((self.rules, self.atoms))

    def __eq__(self, other):
        if not isinstance(other, GroundProgram):
            return NotImplemented
        return self.rules == other.rules and self.atoms == other.atoms

    @property
    def n(self) -> int:
        return len(self.atoms)

    @cached_property
    def index(self) -> dict:
        return {a: i for i, a in enumerate(self.atoms)}

    def mask(self, atoms: Iterable[Atom]) -> int:
        n, idx = self.n, self.index
        m = 0
        for a in atoms:
            m |= bit(n, idx[a])
        return m

    def atoms_of(self, mask: int) -> frozenset:
        n = self.n
        return frozenset(a for i, a in enumerate(self.atoms) if mask & bit(n, i))

    @cached_property
    def compiled(self) -> tuple:
        """``(head_bit, pos_mask, neg_mask)`` per rule."""
        n, idx = self.n, self.index
        return tuple((bit(n, idx[r.head]), self.mask(r.pos), self.mask(r.neg))
                     for r in self.rules)

    @cached_property
    def rules_by_head(self) -> dict:
        out = {a: [] for a in self.atoms}
        for r in self.rules:
            out[r.head].append(r)
        return out

    @property
    def is_uni_rule(self) -> bool:
        return all(len(rs) <= 1 for rs in self.rules_by_head.values())

    @property
    def is_negative(self) -> bool:
        return all(not r.pos for r in self.rules)

    def __str__(self):
        return format_program(self)


# --------------------------------------------------------------------- parser

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>%[^\n]*)
  | (?P<if>:-)
  | (?P<ident>[A-Za-z0-9_]+)
  | (?P<punct>[(),.])
""", re.VERBOSE)


def _tokenize(text):
    line, col, pos = 1, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        value = m.group()
        if kind == "nl":
            line, col = line + 1, 1
        else:
            if kind not in ("ws", "comment"):
                yield kind, value, line, col
            col += len(value)
        pos = m.end()
    yield "eof", "", line, col


class _Parser:
    def __init__(self, text):
        self.tokens = list(_tokenize(text))
        self.pos = 0
        self.arity = {}

    def peek(self, k=0):
        return self.tokens[min(self.pos + k, len(self.tokens) - 1)]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, value):
        kind, v, line, col = self.take()
        if v != value:
            found = "end of input" if kind == "eof" else repr(v)
            raise ParseError(f"expected {value!r}, found {found}", line, col)

    def program(self):
        rules = []
        while self.peek()[0] != "eof":
            rules.append(self.rule())
        return Program(tuple(rules))

    def rule(self):
        kind, v, line, col = self.peek()
        if kind == "if":
            raise ParseError("headless rules (constraints) are not supported", line, col)
        head = self.atom()
        pos, neg = [], []
        if self.peek()[0] == "if":
            self.take()
            while True:
                kind, v, line, col = self.peek()
                if kind == "ident" and v == "not" and self.peek(1)[0] == "ident":
                    self.take()
                    neg.append(self.atom())
                else:
                    pos.append(self.atom())
                if self.peek()[1] == ",":
                    self.take()
                    continue
                break
        self.expect(".")
        return Rule(head, frozenset(pos), frozenset(neg))

    def atom(self):
        kind, name, line, col = self.take()
        if kind != "ident":
            found = "end of input" if kind == "eof" else repr(name)
            raise ParseError(f"expected an atom, found {found}", line, col)
        if not name[0].islower():
            raise ParseError(f"predicate name must start with a lowercase letter: {name!r}",
                             line, col)
        if name == SENTINEL_NAME:
            raise ParseError(f"{SENTINEL_NAME!r} is reserved", line, col)
        args = []
        if self.peek()[1] == "(":
            self.take()
            while True:
                k, t, tl, tc = self.take()
                if k != "ident":
                    raise ParseError(f"expected a term, found {t!r}", tl, tc)
                if self.peek()[1] == "(":
                    raise ParseError(f"function symbol {t!r} is not allowed", tl, tc)
                args.append(Term(t))
                nxt = self.take()
                if nxt[1] == ")":
                    break
                if nxt[1] != ",":
                    raise ParseError(f"expected ',' or ')', found {nxt[1]!r}", nxt[2], nxt[3])
        prev = self.arity.setdefault(name, len(args))
        if prev != len(args):
            raise ParseError(f"predicate {name!r} used with arity {len(args)} and {prev}",
                             line, col)
        return Atom(name, tuple(args))


def parse(text: str) -> Program:
    return _Parser(text).program()


def load(path) -> GroundProgram:
    with open(path, encoding="utf-8") as fh:
        return ground(parse(fh.read()))


# ------------------------------------------------------------------ grounding

def ground(p, atoms: Optional[Sequence[Atom]] = None) -> GroundProgram:
    """All ground instances of the rules over the constants of the program."""
    if isinstance(p, GroundProgram):
        atoms = p.atoms if atoms is None else atoms
        p = Program(p.rules)
    consts = sorted(p.constants())
    out = []
    for r in p.rules:
        names = sorted(r.variables())
        if not names:
            out.append(r)
            continue
        if not consts:
            raise GroundingError(f"rule has variables but the Herbrand universe is empty: {r}")
        safe = set()
        for a in r.pos:
            safe |= a.variables()
        unsafe = sorted(set(names) - safe)
        if unsafe:
            warnings.warn(f"unsafe rule {r} (variables {', '.join(unsafe)} not in positive body)",
                          UnsafeRuleWarning, stacklevel=2)
        for values in product(consts, repeat=len(names)):
            theta = dict(zip(names, values))
            out.append(Rule(r.head.substitute(theta),
                            frozenset(a.substitute(theta) for a in r.pos),
                            frozenset(a.substitute(theta) for a in r.neg)))
    return GroundProgram(tuple(out), atoms, frozenset(consts))


def make_program(text: str) -> GroundProgram:
    return ground(parse(text))


def format_program(p) -> str:
    return "".join(f"{r}\n" for r in p.rules)


# -------------------------------------------------------------------- graphs

def atom_dependency_graph(g: GroundProgram) -> SignedDigraph:
    arcs = set()
    for r in g.rules:
        arcs.update((a, r.head, POS) for a in r.pos)
        arcs.update((a, r.head, NEG) for a in r.neg)
    return SignedDigraph(g.atoms, frozenset(arcs))


def is_tight(g: GroundProgram) -> bool:
    return not has_positive_cycle(atom_dependency_graph(g))
