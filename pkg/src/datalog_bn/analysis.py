"""Structural analysis, model-count bounds, theorem verification and
conjecture probes over exhaustively enumerated semantics.

Every check compares exact enumerations, so everything here is bounded by
the caps of the underlying scans.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field, replace
from functools import cached_property
from itertools import combinations
from typing import Callable, Optional

from . import dynamics as dyn
from . import network as bn
from . import semantics as sem
from .errors import DatalogBNError, MAX_ATOMS_2V, MAX_ATOMS_3V
from .graph import (SignedDigraph, cycles_of_parity, delocalizing_triples,
                    enumerate_simple_cycles, even_feedback_vertex_set, has_even_cycle,
                    has_internal_delocalizing_triple, has_odd_cycle, hitting_set,
                    is_sign_definite, is_strongly_connected, positive_negative_bipartition,
                    terminal_components)
from .interp import Interpretation, minimal_subspaces, subspace_leq
from .program import Atom, GroundProgram, Rule, atom_dependency_graph, format_program, is_tight


# ----------------------------------------------------------------- generator

@dataclass(frozen=True)
class GeneratorConfig:
    """Random program shape.  Body sizes are geometric with success
    probability ``body_p`` (mean ``(1 - body_p) / body_p``)."""

    atoms: int = 5
    min_rules: int = 1
    max_rules: Optional[int] = None  # defaults to 2 * atoms
    neg_prob: float = 0.5
    body_p: float = 0.4
    uni_rule: bool = False
    tight: bool = False
    negative: bool = False

    def validate(self):
        if self.atoms < 1:
            raise DatalogBNError("need at least one atom")
        hi = self.rule_range()[1]
        if self.min_rules < 0 or self.min_rules > hi:
            raise DatalogBNError(f"empty rule-count range [{self.min_rules}, {hi}]")
        if not 0 <= self.neg_prob <= 1 or not 0 < self.body_p <= 1:
            raise DatalogBNError("probabilities out of range")

    def rule_range(self) -> tuple[int, int]:
        hi = 2 * self.atoms if self.max_rules is None else self.max_rules
        if self.uni_rule:
            hi = min(hi, self.atoms)
        return self.min_rules, hi


def atom_names(k: int) -> list[Atom]:
    if k <= 26:
        return [Atom(chr(ord("a") + i)) for i in range(k)]
    width = len(str(k - 1))
    return [Atom(f"v{i:0{width}d}") for i in range(k)]


def generate_program(config: GeneratorConfig, seed: int) -> GroundProgram:
    """Random ground program; the same ``(config, seed)`` gives the same program.

    Tightness is guaranteed by drawing a random atom order and only letting
    positive literals point from earlier to later atoms.
    """
    config.validate()
    rng = random.Random(seed)
    pool = atom_names(config.atoms)
    order = pool[:]
    rng.shuffle(order)
    rank = {a: i for i, a in enumerate(order)}
    lo, hi = config.rule_range()
    count = rng.randint(lo, hi)
    heads = rng.sample(pool, count) if config.uni_rule else [rng.choice(pool) for _ in range(count)]
    rules = []
    for h in heads:
        size = 0
        while rng.random() >= config.body_p:
            size += 1
        pos, neg = set(), set()
        for _ in range(size):
            negative = config.negative or rng.random() < config.neg_prob
            if not negative and config.tight:
                earlier = [a for a in order if rank[a] < rank[h]]
                if earlier:
                    pos.add(rng.choice(earlier))
                else:
                    neg.add(rng.choice(pool))
                continue
            (neg if negative else pos).add(rng.choice(pool))
        rules.append(Rule(h, frozenset(pos), frozenset(neg)))
    if not rules:
        # an empty program still needs a Herbrand base
        return GroundProgram((), (pool[0],))
    return GroundProgram(tuple(rules))


# ------------------------------------------------------------------- context

def _masks(models) -> list:
    return sorted(m.masks for m in models)


class Context:
    """Lazily computed facts about one program, shared by all checks."""

    def __init__(self, g: GroundProgram, max_atoms_2v: int = MAX_ATOMS_2V,
                 max_atoms_3v: int = MAX_ATOMS_3V):
        self.g = g
        self.cap2 = max_atoms_2v
        self.cap3 = max_atoms_3v

    @cached_property
    def adg(self) -> SignedDigraph:
        return atom_dependency_graph(self.g)

    @cached_property
    def tight(self) -> bool:
        return is_tight(self.g)

    @cached_property
    def negative(self) -> bool:
        return self.g.is_negative

    @cached_property
    def uni_rule(self) -> bool:
        return self.g.is_uni_rule

    @cached_property
    def consistent_bodies(self) -> bool:
        return all(not r.pos & r.neg for r in self.g.rules)

    @cached_property
    def and_not_uni_rule(self) -> bool:
        # uni-rule with no rule using both literals of an atom
        return self.uni_rule and self.consistent_bodies

    @cached_property
    def cycles(self):
        return enumerate_simple_cycles(self.adg)

    @cached_property
    def odd(self) -> bool:
        return has_odd_cycle(self.adg)

    @cached_property
    def even(self) -> bool:
        return has_even_cycle(self.adg)

    @cached_property
    def even_fvs(self) -> frozenset:
        return even_feedback_vertex_set(self.adg)

    @cached_property
    def delocalizing_free_fvs(self) -> frozenset:
        free = [c for c in cycles_of_parity(self.adg, "even") if not delocalizing_triples(self.adg, c)]
        return hitting_set(self.adg, free)

    @cached_property
    def odd_cycles_have_internal_triple(self) -> bool:
        return all(has_internal_delocalizing_triple(self.adg, c)
                   for c in cycles_of_parity(self.adg, "odd"))

    @cached_property
    def even_cycles_have_triple(self) -> bool:
        return all(delocalizing_triples(self.adg, c) for c in cycles_of_parity(self.adg, "even"))

    # semantics
    @cached_property
    def supported(self):
        return sem.supported_models(self.g, self.cap2)

    @cached_property
    def supported_partial(self):
        return sem.supported_partial_models(self.g, self.cap3)

    @cached_property
    def stable(self):
        return sem.stable_models(self.g, self.cap2)

    @cached_property
    def stable_partial(self):
        return sem.stable_partial_models(self.g, self.cap3)

    @cached_property
    def regular(self):
        return sem.minimal_models(self.stable_partial)

    # network
    @cached_property
    def f(self) -> bn.BooleanNetwork:
        return bn.encode(self.g)

    @cached_property
    def ig(self) -> SignedDigraph:
        return bn.influence_graph(self.f)

    @cached_property
    def syng(self) -> SignedDigraph:
        return bn.syntactic_influence_graph(self.f)

    @cached_property
    def fixed_points(self):
        return bn.fixed_points(self.f, self.cap2)

    @cached_property
    def trap_spaces(self):
        return bn.trap_spaces(self.f, self.cap3)

    @cached_property
    def complete_trap_spaces(self):
        return bn.complete_trap_spaces(self.f, self.cap3)

    @cached_property
    def minimal_trap_spaces(self):
        return sem.minimal_models(self.trap_spaces)

    @cached_property
    def sync(self):
        return bn.sync_stg(self.f, self.cap2)

    @cached_property
    def async_(self):
        return bn.async_stg(self.f, self.cap2)

    @cached_property
    def async_attractors(self):
        return bn.attractors(self.async_)

    # dynamics
    @cached_property
    def stable_tg(self):
        return dyn.stable_tg(self.g, self.cap2)

    @cached_property
    def supported_tg(self):
        return dyn.supported_tg(self.g, self.cap2)

    @cached_property
    def stable_classes(self):
        return dyn.strict_classes(self.stable_tg)

    @cached_property
    def supported_classes(self):
        return dyn.strict_classes(self.supported_tg)

    @cached_property
    def stable_trap_spaces(self):
        return dyn.stable_trap_spaces(self.g, self.cap3)

    @cached_property
    def supported_trap_spaces(self):
        return dyn.supported_trap_spaces(self.g, self.cap3)

    # least fixpoint
    @cached_property
    def lfp(self) -> "Context":
        return Context(sem.lfp_transform(self.g), self.cap2, self.cap3)


def _models(ms) -> list[str]:
    return [m.render() for m in ms]


def _diff(name_a, a, name_b, b) -> dict:
    sa, sb = set(_models(a)), set(_models(b))
    return {f"only_{name_a}": sorted(sa - sb), f"only_{name_b}": sorted(sb - sa)}


def _same(name_a, a, name_b, b):
    if _masks(a) == _masks(b):
        return True, None
    return False, _diff(name_a, a, name_b, b)


def _subset(a, b) -> bool:
    return set(m.masks for m in a) <= set(m.masks for m in b)


def _states(tg, states) -> list[str]:
    return [tg.label(s) for s in states]


# -------------------------------------------------------------------- bounds

@dataclass
class Bound:
    id: str
    semantics: str
    expression: str
    value: float
    actual: int
    applicable: bool = True
    reference: bool = False  # an earlier bound from the literature, for comparison

    @property
    def holds(self) -> bool:
        return not self.applicable or self.actual <= self.value

    def as_dict(self) -> dict:
        d = asdict(self)
        d["holds"] = self.holds
        return d


def compute_bounds(ctx: Context) -> list[Bound]:
    u = len(ctx.even_fvs)
    n = ctx.g.n
    counts = {"supported-partial": len(ctx.supported_partial),
              "stable-partial": len(ctx.stable_partial),
              "regular": len(ctx.regular), "stable": len(ctx.stable)}
    out = [Bound(f"{s}-3^U", s, f"3^{u}", 3 ** u, counts[s]) for s in counts]
    out.append(Bound("regular-2^HB", "regular", f"2^{n}", 2 ** n, counts["regular"]))
    out.append(Bound("tight-regular-2^U", "regular", f"2^{u}", 2 ** u, counts["regular"],
                     applicable=ctx.tight))
    out.append(Bound("stable-2^U", "stable", f"2^{u}", 2 ** u, counts["stable"]))
    # the set is defined for any ADG; the bound only claims something for uni-rule programs
    ud = len(ctx.delocalizing_free_fvs)
    out.append(Bound("uni-rule-stable-2^U'", "stable", f"2^{ud}", 2 ** ud,
                     counts["stable"], applicable=ctx.and_not_uni_rule))
    out.append(Bound("tight-uni-rule-regular-2^U'", "regular", f"2^{ud}", 2 ** ud,
                     counts["regular"], applicable=ctx.and_not_uni_rule and ctx.tight))
    rules = len(ctx.g.rules)
    k = len(cycles_of_parity(ctx.adg, "even"))
    out.append(Bound("rules-3^(n/3)", "stable", f"3^({rules}/3)", 3 ** (rules / 3),
                     counts["stable"], reference=True))
    out.append(Bound("even-cycles-2^k", "stable", f"2^{k}", 2 ** k, counts["stable"],
                     reference=True))
    return out


@dataclass
class AnalysisReport:
    program: str
    atoms: list
    rules: int
    tight: bool
    uni_rule: bool
    negative: bool
    has_odd_cycle: bool
    has_even_cycle: bool
    cycles: list
    even_fvs: list
    delocalizing_free_fvs: Optional[list]
    counts: dict
    bounds: list = field(default_factory=list)

    @property
    def all_hold(self) -> bool:
        return all(b["holds"] for b in self.bounds)

    def as_dict(self) -> dict:
        return asdict(self)


def analyze(g: GroundProgram, max_atoms_2v: int = MAX_ATOMS_2V,
            max_atoms_3v: int = MAX_ATOMS_3V, ctx: Optional[Context] = None) -> AnalysisReport:
    ctx = ctx or Context(g, max_atoms_2v, max_atoms_3v)
    return AnalysisReport(
        program=format_program(g),
        atoms=[str(a) for a in g.atoms],
        rules=len(g.rules),
        tight=ctx.tight,
        uni_rule=ctx.uni_rule,
        negative=ctx.negative,
        has_odd_cycle=ctx.odd,
        has_even_cycle=ctx.even,
        cycles=[{"cycle": str(c), "parity": c.parity} for c in ctx.cycles],
        even_fvs=sorted(str(v) for v in ctx.even_fvs),
        delocalizing_free_fvs=(sorted(str(v) for v in ctx.delocalizing_free_fvs)
                               if ctx.uni_rule else None),
        counts={"supported": len(ctx.supported),
                "supported-partial": len(ctx.supported_partial),
                "stable": len(ctx.stable),
                "stable-partial": len(ctx.stable_partial),
                "regular": len(ctx.regular)},
        bounds=[b.as_dict() for b in compute_bounds(ctx)],
    )


# ------------------------------------------------------------------ registry

@dataclass(frozen=True)
class Theorem:
    id: str
    statement: str
    hypothesis: Callable[[Context], bool]
    conclusion: Callable[[Context], tuple]


@dataclass
class Verdict:
    id: str
    statement: str
    applicable: bool
    verdict: str  # pass | fail | n/a
    witness: object = None

    @property
    def failed(self) -> bool:
        return self.verdict == "fail"

    def as_dict(self) -> dict:
        return asdict(self)


REGISTRY: list[Theorem] = []


def theorem(id: str, statement: str, hypothesis: Callable[[Context], bool] = lambda c: True):
    def deco(fn):
        REGISTRY.append(Theorem(id, statement, hypothesis, fn))
        return fn
    return deco


def _all_two_valued(ms) -> bool:
    return all(m.is_two_valued for m in ms)


# semantics and encoding

@theorem("subsumption", "stable <= regular <= stable-partial <= supported-partial; stable <= supported")
def _(c):
    chain = [("stable", c.stable, "regular", c.regular),
             ("regular", c.regular, "stable-partial", c.stable_partial),
             ("stable-partial", c.stable_partial, "supported-partial", c.supported_partial),
             ("stable", c.stable, "supported", c.supported)]
    for na, a, nb, b in chain:
        if not _subset(a, b):
            return False, _diff(na, a, nb, b)
    return True, None


@theorem("supported-models-are-fixed-points", "supported models = fixed points of the encoded network")
def _(c):
    return _same("supported", c.supported, "fixed-points", c.fixed_points)


@theorem("supported-partial-models-are-complete-trap-spaces",
         "supported partial models = complete trap spaces of the encoded network")
def _(c):
    return _same("supported-partial", c.supported_partial, "complete", c.complete_trap_spaces)


@theorem("supported-trap-spaces-are-network-trap-spaces",
         "supported trap spaces = trap spaces of the encoded network")
def _(c):
    return _same("supported-ts", c.supported_trap_spaces, "network-ts", c.trap_spaces)


@theorem("supported-tg-is-sync-stg", "supported transition graph = synchronous STG of the encoding")
def _(c):
    return c.supported_tg == c.sync, None


@theorem("influence-graph-in-adg", "influence graph of the encoding is a subgraph of the ADG")
def _(c):
    extra = c.ig.arcs - c.adg.arcs
    return not extra, sorted(map(str, extra)) or None


@theorem("adg-is-syntactic-influence-graph", "ADG = syntactic influence graph of the encoding")
def _(c):
    return c.adg == c.syng, None


@theorem("complete-trap-spaces-are-trap-spaces", "every complete trap space is a trap space")
def _(c):
    return _subset(c.complete_trap_spaces, c.trap_spaces), None


@theorem("complete-trap-space-below-trap-space",
         "every trap space has a complete trap space below it in the knowledge order")
def _(c):
    comp = [m.masks for m in c.complete_trap_spaces]
    bad = [m.render() for m in c.trap_spaces if not any(subspace_leq(k, m.masks) for k in comp)]
    return not bad, bad or None


@theorem("minimal-complete-equals-minimal-trap-spaces",
         "minimal complete trap spaces = minimal trap spaces")
def _(c):
    return _same("min-complete", sem.minimal_models(c.complete_trap_spaces),
                 "min-trap", c.minimal_trap_spaces)


@theorem("minimal-supported-partial-equals-minimal-trap-spaces",
         "minimal supported partial models = minimal trap spaces of the encoding")
def _(c):
    return _same("min-supported-partial", sem.minimal_models(c.supported_partial),
                 "min-trap", c.minimal_trap_spaces)


@theorem("percolation-preserves-complete-trap-spaces",
         "complete trap spaces of the percolated network extend one-to-one to those of f")
def _(c):
    residual, fixed = bn.percolate(c.f)
    atoms = c.g.atoms
    lifted = []
    for m in bn.complete_trap_spaces(residual, c.cap3):
        vals = {**{a: bn.TV(v) for a, v in fixed.items()}, **m.as_dict()}
        lifted.append(Interpretation.from_mapping(atoms, vals))
    return _same("lifted", lifted, "complete", c.complete_trap_spaces)


@theorem("percolation-shrinks-syntactic-graph",
         "syntactic percolation never adds vertices or arcs to the syntactic influence graph")
def _(c):
    g1 = bn.syntactic_influence_graph(bn.percolate_one_step(c.f))
    g2 = bn.syntactic_influence_graph(bn.percolate(c.f)[0])
    return g1.is_subgraph_of(c.syng) and g2.is_subgraph_of(c.syng), None


# tightness, negative programs, least fixpoint

@theorem("tight-stable-equals-supported", "tight: stable models = supported models",
         lambda c: c.tight)
def _(c):
    return _same("stable", c.stable, "supported", c.supported)


@theorem("tight-stable-partial-equals-supported-partial",
         "tight: stable partial models = supported partial models", lambda c: c.tight)
def _(c):
    return _same("stable-partial", c.stable_partial, "supported-partial", c.supported_partial)


@theorem("negative-stable-partial-equals-supported-partial",
         "negative: stable partial models = supported partial models", lambda c: c.negative)
def _(c):
    return _same("stable-partial", c.stable_partial, "supported-partial", c.supported_partial)


@theorem("negative-programs-are-tight", "negative programs are tight", lambda c: c.negative)
def _(c):
    return c.tight, None


@theorem("tight-regular-equals-minimal-trap-spaces",
         "tight: regular models = minimal trap spaces of the encoding", lambda c: c.tight)
def _(c):
    return _same("regular", c.regular, "min-trap", c.minimal_trap_spaces)


@theorem("lfp-is-negative", "lfp(P) is negative over the same Herbrand base")
def _(c):
    return c.lfp.negative and c.lfp.g.atoms == c.g.atoms, None


@theorem("lfp-model-equivalence", "P and lfp(P) share stable partial, regular and stable models")
def _(c):
    for name in ("stable_partial", "regular", "stable"):
        ok, w = _same(name, getattr(c, name), "lfp-" + name, getattr(c.lfp, name))
        if not ok:
            return False, w
    return True, None


@theorem("lfp-regular-equals-minimal-trap-spaces",
         "regular models = minimal trap spaces of the encoding of lfp(P)")
def _(c):
    return _same("regular", c.regular, "lfp-min-trap", c.lfp.minimal_trap_spaces)


@theorem("lfp-preserves-odd-cycle-freeness", "no odd cycle in ADG(P) => none in ADG(lfp(P))",
         lambda c: not c.odd)
def _(c):
    return not c.lfp.odd, None


# odd cycles

@theorem("no-odd-cycle-no-cyclic-async-attractor",
         "influence graph without odd cycle => no cyclic asynchronous attractor",
         lambda c: not has_odd_cycle(c.ig))
def _(c):
    cyclic = [_states(c.async_, a) for a in c.async_attractors if len(a) > 1]
    return not cyclic, cyclic or None


@theorem("no-odd-cycle-regular-two-valued", "no odd cycle => every regular model is two-valued",
         lambda c: not c.odd)
def _(c):
    return _all_two_valued(c.regular), _models(c.regular)


@theorem("no-odd-cycle-stable-model-exists", "no odd cycle => at least one stable model",
         lambda c: not c.odd)
def _(c):
    return bool(c.stable), None


@theorem("strongly-connected-sign-definite",
         "strongly connected ADG without odd or without even cycles is sign-definite",
         lambda c: is_strongly_connected(c.adg) and (not c.odd or not c.even))
def _(c):
    return is_sign_definite(c.adg), None


def _scc_hyp(c):
    return bool(c.adg.arcs) and is_strongly_connected(c.adg) and not c.odd and c.tight


@theorem("scc-two-complementary-stable-models",
         "tight, strongly connected ADG with an arc and no odd cycle => "
         "two complementary stable models from the sign bipartition", _scc_hyp)
def _(c):
    plus, minus = positive_negative_bipartition(c.adg)
    a = Interpretation.from_mapping(c.g.atoms, {v: bn.TV.T for v in plus})
    b = Interpretation.from_mapping(c.g.atoms, {v: bn.TV.T for v in minus})
    stable = {m.masks for m in c.stable}
    ok = a.masks in stable and b.masks in stable and a.masks != b.masks
    return ok, {"A": a.render(), "B": b.render(), "stable": _models(c.stable)}


def _scc_ig_hyp(c):
    return bool(c.ig.arcs) and is_strongly_connected(c.ig) and not has_odd_cycle(c.ig) and c.tight


@theorem("scc-two-complementary-stable-models-ig",
         "variant with the hypotheses on the influence graph instead of the ADG "
         "(no constant update functions); bipartition taken in the influence graph", _scc_ig_hyp)
def _(c):
    plus, minus = positive_negative_bipartition(c.ig)
    a = Interpretation.from_mapping(c.g.atoms, {v: bn.TV.T for v in plus})
    b = Interpretation.from_mapping(c.g.atoms, {v: bn.TV.T for v in minus})
    stable = {m.masks for m in c.stable}
    ok = a.masks in stable and b.masks in stable and a.masks != b.masks
    return ok, {"A": a.render(), "B": b.render(), "stable": _models(c.stable)}


# uni-rule programs

@theorem("uni-rule-encoding-is-and-not", "uni-rule => encoded network is AND-NOT",
         lambda c: c.and_not_uni_rule)
def _(c):
    return c.f.is_and_not, None


@theorem("uni-rule-influence-graph-is-adg", "uni-rule => influence graph = ADG",
         lambda c: c.and_not_uni_rule)
def _(c):
    return c.ig == c.adg, None


def _uni_odd_hyp(c):
    return c.and_not_uni_rule and c.tight and c.odd_cycles_have_internal_triple


@theorem("uni-rule-tight-internal-triples-stable-exists",
         "tight uni-rule, every odd cycle has an internal delocalizing triple => a stable model",
         _uni_odd_hyp)
def _(c):
    return bool(c.stable), None


@theorem("uni-rule-tight-internal-triples-regular-two-valued",
         "tight uni-rule, every odd cycle has an internal delocalizing triple => "
         "regular models are two-valued", _uni_odd_hyp)
def _(c):
    return _all_two_valued(c.regular), _models(c.regular)


@theorem("and-not-internal-triples-fixed-point",
         "AND-NOT network, every odd IG cycle has an internal triple => a fixed point",
         lambda c: c.f.is_and_not and all(has_internal_delocalizing_triple(c.ig, x)
                                          for x in cycles_of_parity(c.ig, "odd")))
def _(c):
    return bool(c.fixed_points), None


def _uni_even_hyp(c):
    return c.and_not_uni_rule and c.even_cycles_have_triple


@theorem("uni-rule-even-triples-at-most-one-stable",
         "uni-rule, every even cycle has a delocalizing triple => at most one stable model",
         _uni_even_hyp)
def _(c):
    return len(c.stable) <= 1, _models(c.stable)


@theorem("tight-uni-rule-even-triples-unique-regular",
         "tight uni-rule, every even cycle has a delocalizing triple => unique regular model",
         lambda c: _uni_even_hyp(c) and c.tight)
def _(c):
    return len(c.regular) == 1, _models(c.regular)


def _and_not_even_hyp(c):
    return c.f.is_and_not and all(delocalizing_triples(c.ig, x)
                                  for x in cycles_of_parity(c.ig, "even"))


@theorem("and-not-even-triples-unique-async-attractor",
         "AND-NOT network, every even IG cycle has a triple => unique asynchronous attractor",
         _and_not_even_hyp)
def _(c):
    return len(c.async_attractors) == 1, len(c.async_attractors)


@theorem("and-not-even-triples-at-most-one-fixed-point",
         "AND-NOT network, every even IG cycle has a triple => at most one fixed point",
         _and_not_even_hyp)
def _(c):
    return len(c.fixed_points) <= 1, _models(c.fixed_points)


# even cycles

@theorem("no-even-cycle-unique-complete-trap-space",
         "syntactic influence graph without even cycle => unique complete trap space",
         lambda c: not has_even_cycle(c.syng))
def _(c):
    return len(c.complete_trap_spaces) == 1, _models(c.complete_trap_spaces)


@theorem("no-even-cycle-unique-supported-partial", "no even cycle => unique supported partial model",
         lambda c: not c.even)
def _(c):
    return len(c.supported_partial) == 1, _models(c.supported_partial)


@theorem("no-even-cycle-unique-stable-partial", "no even cycle => unique stable partial model",
         lambda c: not c.even)
def _(c):
    return len(c.stable_partial) == 1, _models(c.stable_partial)


@theorem("no-even-cycle-unique-regular", "no even cycle => unique regular model",
         lambda c: not c.even)
def _(c):
    return len(c.regular) == 1, _models(c.regular)


@theorem("no-even-cycle-at-most-one-stable", "no even cycle => at most one stable model",
         lambda c: not c.even)
def _(c):
    return len(c.stable) <= 1, _models(c.stable)


# network-level counting results the bounds rest on

@theorem("fixed-points-bound", "fixed points <= 2^|U| for U an even FVS of the influence graph")
def _(c):
    u = len(even_feedback_vertex_set(c.ig))
    return len(c.fixed_points) <= 2 ** u, {"U": u, "fixed_points": len(c.fixed_points)}


@theorem("async-attractors-bound",
         "asynchronous attractors <= 2^|U| for U an even FVS of the influence graph")
def _(c):
    u = len(even_feedback_vertex_set(c.ig))
    return len(c.async_attractors) <= 2 ** u, {"U": u, "attractors": len(c.async_attractors)}


@theorem("complete-trap-spaces-bound",
         "complete trap spaces <= 3^|U| for U an even FVS of the syntactic influence graph")
def _(c):
    u = len(even_feedback_vertex_set(c.syng))
    return len(c.complete_trap_spaces) <= 3 ** u, {"U": u, "count": len(c.complete_trap_spaces)}


@theorem("minimal-trap-spaces-hold-attractors",
         "every minimal trap space contains an attractor of each STG; "
         "#minimal trap spaces <= #asynchronous attractors")
def _(c):
    for stg in (c.sync, c.async_):
        atts = bn.attractors(stg)
        for m in c.minimal_trap_spaces:
            if not any(all(m.contains(s) for s in a) for a in atts):
                return False, {"trap_space": m.render(), "stg": stg.kind}
    return len(c.minimal_trap_spaces) <= len(c.async_attractors), None


def _bound_theorem(bid, statement):
    def conclusion(c):
        (b,) = [b for b in compute_bounds(c) if b.id == bid]
        return b.holds, {"bound": b.expression, "value": b.value, "actual": b.actual}

    def hypothesis(c):
        (b,) = [b for b in compute_bounds(c) if b.id == bid]
        return b.applicable

    REGISTRY.append(Theorem(f"bound:{bid}", statement, hypothesis, conclusion))


_bound_theorem("supported-partial-3^U", "supported partial models <= 3^|U|")
_bound_theorem("stable-partial-3^U", "stable partial models <= 3^|U|")
_bound_theorem("regular-3^U", "regular models <= 3^|U|")
_bound_theorem("stable-3^U", "stable models <= 3^|U|")
_bound_theorem("regular-2^HB", "regular models <= 2^|HB|")
_bound_theorem("tight-regular-2^U", "tight: regular models <= 2^|U|")
_bound_theorem("stable-2^U", "stable models <= 2^|U|")
_bound_theorem("uni-rule-stable-2^U'",
               "uni-rule: stable models <= 2^|U'|, U' hitting delocalizing-triple-free even cycles")
_bound_theorem("tight-uni-rule-regular-2^U'", "tight uni-rule: regular models <= 2^|U'|")


# trap spaces of programs

@theorem("all-undefined-is-trap-space", "the all-undefined interpretation is a stable and supported trap space")
def _(c):
    top = Interpretation.all_undefined(c.g.atoms).masks
    return (top in {m.masks for m in c.stable_trap_spaces}
            and top in {m.masks for m in c.supported_trap_spaces}), None


_PAIR_LIMIT = 20_000


def _overlap_closed(spaces) -> tuple:
    masks = [m.masks for m in spaces]
    known = set(masks)
    pairs = list(combinations(range(len(masks)), 2))
    sampled = len(pairs) > _PAIR_LIMIT
    if sampled:
        pairs = random.Random(len(masks)).sample(pairs, _PAIR_LIMIT)
    for i, j in pairs:
        (ta, ua), (tb, ub) = masks[i], masks[j]
        if (ta ^ tb) & ~(ua | ub):
            continue
        meet = ((ta | tb) & ~(ua & ub), ua & ub)
        if meet not in known:
            return False, {"pair": [spaces[i].render(), spaces[j].render()]}
    return True, {"sampled": sampled} if sampled else None


@theorem("overlap-of-trap-spaces", "the overlap of two consistent trap spaces is a trap space")
def _(c):
    for spaces in (c.stable_trap_spaces, c.supported_trap_spaces):
        ok, w = _overlap_closed(spaces)
        if not ok:
            return ok, w
    return True, None


@theorem("unique-minimal-cover",
         "each strict class has a unique minimal covering trap space, itself a trap space")
def _(c):
    for kind, spaces, classes in ((dyn.STABLE, c.stable_trap_spaces, c.stable_classes),
                                  (dyn.SUPPORTED, c.supported_trap_spaces, c.supported_classes)):
        known = {m.masks for m in spaces}
        for cls in classes:
            covering = [m for m in spaces if all(m.contains(s) for s in cls)]
            meet = Interpretation.all_undefined(c.g.atoms)
            for m in covering:
                meet = dyn.overlap(meet, m)
            if meet is None or meet.masks not in known:
                return False, {"kind": kind, "class": list(cls)}
    return True, None


@theorem("minimal-trap-spaces-inconsistent",
         "distinct minimal trap spaces of one kind are never consistent; "
         "their number is at most the number of strict classes")
def _(c):
    for spaces, classes in ((c.stable_trap_spaces, c.stable_classes),
                            (c.supported_trap_spaces, c.supported_classes)):
        mins = sem.minimal_models(spaces)
        for a, b in combinations(mins, 2):
            if dyn.overlap(a, b) is not None:
                return False, [a.render(), b.render()]
        if len(mins) > len(classes):
            return False, {"minimal": len(mins), "classes": len(classes)}
    return True, None


@theorem("negative-stable-tg-equals-supported-tg",
         "negative: stable and supported transition graphs and trap spaces coincide",
         lambda c: c.negative)
def _(c):
    if c.stable_tg.successors != c.supported_tg.successors:
        return False, None
    return _same("stable-ts", c.stable_trap_spaces, "supported-ts", c.supported_trap_spaces)


@theorem("lfp-same-stable-tg", "P and lfp(P) have the same stable transition graph and trap spaces")
def _(c):
    if c.stable_tg.successors != c.lfp.stable_tg.successors:
        return False, None
    return _same("stable-ts", c.stable_trap_spaces, "lfp-stable-ts", c.lfp.stable_trap_spaces)


@theorem("minimal-trap-sets-are-strict-classes",
         "the minimal trap sets of each functional transition graph are its cycles (strict classes)")
def _(c):
    for tg, classes in ((c.stable_tg, c.stable_classes), (c.supported_tg, c.supported_classes)):
        if sorted(terminal_components(len(tg.successors), tg.successors)) != sorted(classes):
            return False, tg.kind
    return True, None


@theorem("size-one-classes-are-models",
         "singleton strict stable (supported) classes = stable (supported) models")
def _(c):
    st = sorted(cls[0] for cls in c.stable_classes if len(cls) == 1)
    sp = sorted(cls[0] for cls in c.supported_classes if len(cls) == 1)
    return (st == sorted(m.masks[0] for m in c.stable)
            and sp == sorted(m.masks[0] for m in c.supported)), None


@theorem("trap-space-contains-strict-class", "every trap space's cell contains a strict class")
def _(c):
    for spaces, classes in ((c.stable_trap_spaces, c.stable_classes),
                            (c.supported_trap_spaces, c.supported_classes)):
        for m in spaces:
            if not any(all(m.contains(s) for s in cls) for cls in classes):
                return False, m.render()
    return True, None


@theorem("partial-models-are-trap-spaces",
         "stable (supported) partial models are stable (supported) trap spaces")
def _(c):
    if not _subset(c.stable_partial, c.stable_trap_spaces):
        return False, _diff("stable-partial", c.stable_partial, "stable-ts", c.stable_trap_spaces)
    if not _subset(c.supported_partial, c.supported_trap_spaces):
        return False, _diff("supported-partial", c.supported_partial,
                            "supported-ts", c.supported_trap_spaces)
    return True, None


@theorem("supported-partial-below-supported-trap-space",
         "every supported trap space has a supported partial model below it")
def _(c):
    models = [m.masks for m in c.supported_partial]
    bad = [m.render() for m in c.supported_trap_spaces
           if not any(subspace_leq(k, m.masks) for k in models)]
    return not bad, bad or None


@theorem("minimal-supported-trap-spaces-equal-minimal-supported-partial",
         "minimal supported trap spaces = minimal supported partial models")
def _(c):
    return _same("min-supported-ts", sem.minimal_models(c.supported_trap_spaces),
                 "min-supported-partial", sem.minimal_models(c.supported_partial))


@theorem("regular-equals-minimal-stable-trap-spaces",
         "regular models = minimal stable trap spaces")
def _(c):
    return _same("regular", c.regular, "min-stable-ts", sem.minimal_models(c.stable_trap_spaces))


def verify_theorems(g: GroundProgram, max_atoms_2v: int = MAX_ATOMS_2V,
                    max_atoms_3v: int = MAX_ATOMS_3V,
                    ctx: Optional[Context] = None) -> list[Verdict]:
    """Check every registered result whose hypothesis holds on ``g``."""
    ctx = ctx or Context(g, max_atoms_2v, max_atoms_3v)
    out = []
    for t in REGISTRY:
        if not t.hypothesis(ctx):
            out.append(Verdict(t.id, t.statement, False, "n/a"))
            continue
        ok, witness = t.conclusion(ctx)
        out.append(Verdict(t.id, t.statement, True, "pass" if ok else "fail",
                           None if ok else witness))
    return out


def observations(g: GroundProgram, ctx: Optional[Context] = None) -> list[dict]:
    """Informational findings that are not theorems: currently whether the
    least fixpoint introduces even cycles into an even-cycle-free ADG."""
    ctx = ctx or Context(g)
    out = []
    if not ctx.even:
        out.append({"id": "lfp-even-cycle-freeness",
                    "note": "ADG(P) has no even cycle; the preservation claim for lfp(P) "
                            "is known to be false in general",
                    "lfp_has_even_cycle": ctx.lfp.even})
    return out


# ------------------------------------------------------------------- probes

@dataclass(frozen=True)
class Conjecture:
    id: str
    statement: str
    uni_rule: bool
    hypothesis: Callable[[Context], bool]
    conclusion: Callable[[Context], bool]
    # applicable cases not already settled by a proven result
    nontrivial: Callable[[Context], bool] = lambda c: True


CONJECTURES = [
    Conjecture("uni-rule-internal-triples-stable-exists",
               "uni-rule, every odd cycle has an internal delocalizing triple => a stable model",
               True, lambda c: c.and_not_uni_rule and c.odd_cycles_have_internal_triple,
               lambda c: bool(c.stable), lambda c: c.odd),
    Conjecture("uni-rule-internal-triples-regular-stable",
               "uni-rule, every odd cycle has an internal delocalizing triple => "
               "every regular model is stable",
               True, lambda c: c.and_not_uni_rule and c.odd_cycles_have_internal_triple,
               lambda c: _all_two_valued(c.regular), lambda c: c.odd),
    Conjecture("regular-2^U", "regular models <= 2^|U| for an even FVS U (no tightness)",
               False, lambda c: True,
               lambda c: len(c.regular) <= 2 ** len(c.even_fvs), lambda c: not c.tight),
    Conjecture("uni-rule-regular-2^U'",
               "uni-rule: regular models <= 2^|U'| (no tightness)",
               True, lambda c: c.and_not_uni_rule,
               lambda c: len(c.regular) <= 2 ** len(c.delocalizing_free_fvs),
               lambda c: not c.tight),
]


def probe_conjectures(config: GeneratorConfig, trials: int, seed: int = 0) -> dict:
    """Search random programs for counterexamples; never asserts anything.

    Trial ``k`` uses seed ``seed + k`` for a general program and the same
    seed for a uni-rule variant of ``config``.
    """
    stats = {c.id: {"id": c.id, "statement": c.statement, "applicable": 0,
                    "nontrivial": 0, "inapplicable": 0, "confirmed": 0,
                    "counterexamples": []}
             for c in CONJECTURES}
    uni_config = replace(config, uni_rule=True)
    general_config = replace(config, uni_rule=False)
    for k in range(trials):
        ctxs = {False: Context(generate_program(general_config, seed + k)),
                True: Context(generate_program(uni_config, seed + k))}
        for conj in CONJECTURES:
            ctx = ctxs[conj.uni_rule]
            entry = stats[conj.id]
            if not conj.hypothesis(ctx):
                entry["inapplicable"] += 1
                continue
            entry["applicable"] += 1
            entry["nontrivial"] += bool(conj.nontrivial(ctx))
            if conj.conclusion(ctx):
                entry["confirmed"] += 1
            else:
                entry["counterexamples"].append({
                    "seed": seed + k, "program": format_program(ctx.g),
                    "regular": _models(ctx.regular), "stable": _models(ctx.stable)})
    return {"config": asdict(config), "seed": seed, "trials": trials,
            "conjectures": list(stats.values()) if trials else []}
