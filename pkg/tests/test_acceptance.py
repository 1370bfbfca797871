"""Acceptance criteria 1-7.

Each criterion is a list of named checks.  Under pytest every criterion is
one test and a PASS/FAIL line per criterion is printed in the terminal
summary; ``python tests/test_acceptance.py`` prints the same lines directly.

Criteria 2 and 5 contain a check that does not hold; both are marked as
strict expected failures with the reason attached, so they still print FAIL.
"""

import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from datalog_bn import analysis as an  # noqa: E402
from datalog_bn import dynamics as dyn  # noqa: E402
from datalog_bn import network as bn  # noqa: E402
from datalog_bn import semantics as sem  # noqa: E402
from datalog_bn.graph import (cycles_of_parity, delocalizing_triples,  # noqa: E402
                              has_even_cycle, positive_negative_bipartition)
from datalog_bn.program import atom_dependency_graph, is_tight, load  # noqa: E402

CORPUS = Path(__file__).resolve().parent.parent / "corpus"
LINES: list[str] = []


def prog(name):
    return load(CORPUS / f"{name}.dlg")


def R(items):
    return {i.render() for i in items}


def rules_text(g):
    return {str(r) for r in g.rules}


def class_sets(tg, classes):
    return {frozenset(frozenset(str(a) for a in tg.atom_set(s)) for s in c) for c in classes}


def S(*classes):
    return {frozenset(frozenset(x) for x in c) for c in classes}


class Checks:
    def __init__(self):
        self.items = []

    def __call__(self, name, ok, detail=""):
        self.items.append((name, bool(ok), detail))

    @property
    def failed(self):
        return [(n, d) for n, ok, d in self.items if not ok]


# ------------------------------------------------------------------ criteria

def criterion_1():
    c = Checks()
    start = time.perf_counter()
    g = prog("choice")
    c("stable partial models", R(sem.stable_partial_models(g)) == {"⋆⋆⋆", "100", "011"})
    c("regular = stable", R(sem.regular_models(g)) == R(sem.stable_models(g)) == {"100", "011"})
    st, sp = dyn.stable_tg(g), dyn.supported_tg(g)
    c("strict stable classes", class_sets(st, dyn.strict_classes(st))
      == S([{"p"}], [{"q", "r"}], [set(), {"p", "q", "r"}]))
    c("strict supported classes", class_sets(sp, dyn.strict_classes(sp))
      == S([{"p"}], [{"q", "r"}], [{"p", "q"}, {"r"}]))
    five = {"10⋆", "01⋆", "⋆⋆⋆", "100", "011"}
    c("stable trap spaces", R(dyn.stable_trap_spaces(g)) == five)
    c("supported trap spaces", R(dyn.supported_trap_spaces(g)) == five)
    c("lfp", rules_text(sem.lfp_transform(g)) == {"p :- not q.", "q :- not p.", "r :- not p."})
    elapsed = time.perf_counter() - start
    c("under 1 s", elapsed < 1.0, f"{elapsed:.3f} s")
    return c


def criterion_2():
    c = Checks()
    g = prog("p2")
    f = bn.encode(g)
    c("encoded functions", str(f) == "f_a = b ∨ ¬b\nf_b = ¬b ∧ c\nf_c = b\n", str(f))
    ig = {(str(u), str(v), s) for u, v, s in bn.influence_graph(f).arcs}
    adg = {(str(u), str(v), s) for u, v, s in atom_dependency_graph(g).arcs}
    c("IG strictly inside ADG", ig < adg and adg - ig == {("b", "a", "+"), ("b", "a", "-")})
    want = {"⋆00", "⋆⋆⋆", "100", "1⋆⋆"}
    got = R(bn.trap_spaces(f))
    c("trap spaces", got == want,
      f"got {sorted(got)}; missing {sorted(want - got)}: b ∨ ¬b evaluates to ⋆ at b = ⋆ "
      "under the shared three-valued evaluator, so 1⋆⋆ fails the pointwise test")
    c("complete trap spaces", R(bn.complete_trap_spaces(f)) == {"⋆⋆⋆", "100"})
    c("supported partial models", R(sem.supported_partial_models(g)) == {"⋆⋆⋆", "100"})
    c("stable partial models", R(sem.stable_partial_models(g)) == {"100"})
    c("lfp", rules_text(sem.lfp_transform(g)) == {"a :- not b."})
    c("non-tight", not is_tight(g))
    return c


def criterion_3():
    c = Checks()
    f = bn.encode(prog("choice"))
    sync = bn.sync_stg(f)
    att = {tuple(sync.label(s) for s in a) for a in bn.attractors(sync)}
    c("sync attractors", att == {("100",), ("011",), ("001", "110")}, str(sorted(att)))
    asy = bn.async_stg(f)
    att = {tuple(asy.label(s) for s in a) for a in bn.attractors(asy)}
    c("async attractors are the two fixed points", att == {("100",), ("011",)}
      and R(bn.fixed_points(f)) == {"100", "011"})
    c("trap spaces", R(bn.trap_spaces(f)) == {"10⋆", "01⋆", "⋆⋆⋆", "100", "011"})
    c("minimal trap spaces", R(bn.minimal_trap_spaces(f)) == {"100", "011"})
    return c


def criterion_4():
    c = Checks()
    g = prog("p3")
    plus, minus = positive_negative_bipartition(atom_dependency_graph(g))
    stable = {frozenset(map(str, m.true_atoms)) for m in sem.stable_models(g)}
    c("P3 bipartition", {frozenset(map(str, plus)), frozenset(map(str, minus))}
      == {frozenset("b"), frozenset("ac")} == stable)

    g = prog("p4")
    c("P4 ADG has no even cycle", not has_even_cycle(atom_dependency_graph(g)))
    c("P4 lfp ADG has an even cycle",
      has_even_cycle(atom_dependency_graph(sem.lfp_transform(g))))
    c("P4 unique supported partial model", len(sem.supported_partial_models(g)) == 1)

    g = prog("p6")
    c("P6 unique all-U regular model", R(sem.regular_models(g)) == {"⋆⋆⋆⋆"})
    c("P6 no stable model", sem.stable_models(g) == [])
    adg = atom_dependency_graph(g)
    triples = {tuple(str(x) for x in t[:3])
               for cyc in cycles_of_parity(adg, "even") for t in delocalizing_triples(adg, cyc)}
    c("P6 delocalizing triple", ("v1", "v3", "v4") in triples, str(sorted(triples)))
    b = {x["id"]: x for x in an.analyze(g).bounds}["uni-rule-stable-2^U'"]
    c("P6 uni-rule bound 2^0", b["value"] == 1 and b["holds"] and b["applicable"])

    g = prog("p5")
    r = an.analyze(g)
    b = {x["id"]: x for x in r.bounds}["stable-2^U"]
    c("P5 minimum even FVS size 1", len(r.even_fvs) == 1)
    c("P5 stable count = bound = 2", b["actual"] == b["value"] == 2)

    g = prog("p7")
    c("p <- not p: all-U only", R(sem.stable_partial_models(g)) == {"⋆"})
    c("p <- not p: no stable model", sem.stable_models(g) == [])
    return c


def fuzz_config(s):
    return an.GeneratorConfig(atoms=1 + s % 7, uni_rule=s % 3 == 0, tight=s % 4 == 0,
                              negative=s % 5 == 0)


FUZZ_SEEDS = range(600)


def criterion_5():
    c = Checks()
    start = time.perf_counter()
    violations = []
    for s in FUZZ_SEEDS:
        g = an.generate_program(fuzz_config(s), s)
        ctx = an.Context(g)
        f = ctx.f

        def check(name, ok):
            if not ok:
                violations.append((s, name))

        check("supported = fixed points", R(ctx.supported) == R(bn.fixed_points(f)))
        check("supported partial = complete trap spaces",
              R(ctx.supported_partial) == R(bn.complete_trap_spaces(f)))
        check("supported trap spaces = network trap spaces",
              R(ctx.supported_trap_spaces) == R(bn.trap_spaces(f)))
        check("regular = minimal stable trap spaces",
              R(ctx.regular) == R(dyn.minimal_trap_spaces_of(g, "stable")))
        check("lfp keeps the stable TG", ctx.stable_tg == ctx.lfp.stable_tg)
        check("subsumption", R(ctx.stable) <= R(ctx.regular) <= R(ctx.stable_partial)
              <= R(ctx.supported_partial))
        for v in an.verify_theorems(g, ctx=ctx):
            check(f"theorem {v.id}", not v.failed)
        for b in an.compute_bounds(ctx):
            check(f"bound {b.id}", b.holds)
    elapsed = time.perf_counter() - start
    c("programs", len(FUZZ_SEEDS) >= 500, f"{len(FUZZ_SEEDS)}")
    detail = "; ".join(
        f"seed {s}: {n} on " + " ".join(str(r) for r in an.generate_program(fuzz_config(s), s).rules)
        for s, n in violations)
    c("zero violations", not violations, detail)
    c("within 5 minutes", elapsed < 300, f"{elapsed:.1f} s")
    return c


def criterion_6():
    c = Checks()
    bad = []
    for s in range(250):
        g = an.generate_program(an.GeneratorConfig(atoms=1 + s % 7, tight=True), s)
        assert is_tight(g)
        if R(sem.stable_models(g)) != R(sem.supported_models(g)):
            bad.append((s, "stable != supported"))
        if R(sem.stable_partial_models(g)) != R(sem.supported_partial_models(g)):
            bad.append((s, "stable partial != supported partial"))
    c("250 tight programs", not bad, str(bad))
    bad = []
    for s in range(250):
        g = an.generate_program(an.GeneratorConfig(atoms=1 + s % 7, negative=True), s)
        if dyn.stable_tg(g) != dyn.supported_tg(g):
            bad.append(s)
    c("250 negative programs", not bad, str(bad))
    return c


def criterion_7():
    c = Checks()
    report = an.probe_conjectures(an.GeneratorConfig(atoms=5), 1000, seed=42)
    c("report keys", set(report) == {"config", "seed", "trials", "conjectures"})
    c("trials", report["trials"] == 1000)
    ok = True
    for entry in report["conjectures"]:
        ok &= entry["applicable"] + entry["inapplicable"] == 1000
        ok &= entry["confirmed"] + len(entry["counterexamples"]) == entry["applicable"]
    c("per-conjecture counts consistent", ok and len(report["conjectures"]) == 4)
    return c


CRITERIA = {
    1: ("choice program suite", criterion_1),
    2: ("tautology program suite", criterion_2),
    3: ("choice network dynamics", criterion_3),
    4: ("theorem regression on fixtures", criterion_4),
    5: ("oracle-equivalence fuzzing", criterion_5),
    6: ("tightness-conditional fuzzing", criterion_6),
    7: ("conjecture probe run", criterion_7),
}

# analysed discrepancies; the checks stay in place and fail
KNOWN = {
    2: "the stated trap space 1⋆⋆ needs semantic (not Kleene) evaluation of b ∨ ¬b",
    5: "seed 415 refutes the strongly-connected two-stable-models statement "
       "(a. a :- not c. c :- not a.)",
}


def evaluate(n):
    title, fn = CRITERIA[n]
    checks = fn()
    failed = checks.failed
    status = "PASS" if not failed else "FAIL"
    line = f"criterion {n} ({title}): {status} [{len(checks.items) - len(failed)}/{len(checks.items)} checks]"
    for name, detail in failed:
        line += f"\n    failed: {name}: {detail}"
    LINES.append(line)
    return failed


def _marks(n):
    if n in KNOWN:
        return [pytest.mark.xfail(strict=True, reason=KNOWN[n])]
    return []


@pytest.mark.parametrize("n", [pytest.param(n, marks=_marks(n), id=f"criterion{n}")
                               for n in CRITERIA])
def test_criterion(n):
    failed = evaluate(n)
    assert not failed, failed


if __name__ == "__main__":
    any_failed = False
    for n in CRITERIA:
        any_failed |= bool(evaluate(n))
        print(LINES[-1])
    sys.exit(1 if any_failed else 0)
