import json

import pytest
from hypothesis import given

from conftest import GOLDEN, programs
from datalog_bn import analysis as an
from datalog_bn.errors import DatalogBNError
from datalog_bn.program import is_tight, make_program

# statements refuted by a concrete program; see test_scc_theorem_counterexample
KNOWN_FALSE = {"scc-two-complementary-stable-models"}


def bounds(report):
    return {b["id"]: b for b in report.bounds}


def verdicts(g):
    return {v.id: v for v in an.verify_theorems(g)}


def test_bounds_reached_on_example_program(corpus):
    r = an.analyze(corpus("choice"))
    b = bounds(r)
    assert len(r.even_fvs) == 1
    assert (b["supported-partial-3^U"]["value"], b["supported-partial-3^U"]["actual"]) == (3, 3)
    assert (b["tight-regular-2^U"]["value"], b["tight-regular-2^U"]["actual"]) == (2, 2)
    assert b["regular-2^HB"]["value"] == 8
    assert r.all_hold


def test_even_fvs_bound_beats_older_bounds(corpus):
    b = bounds(an.analyze(corpus("p5")))
    assert b["stable-2^U"]["value"] == b["stable-2^U"]["actual"] == 2
    assert b["rules-3^(n/3)"]["value"] == 3
    assert b["even-cycles-2^k"]["value"] == 4


def test_uni_rule_bound(corpus):
    r = an.analyze(corpus("p6"))
    b = bounds(r)
    assert r.delocalizing_free_fvs == []
    assert b["uni-rule-stable-2^U'"]["value"] == 1 and b["uni-rule-stable-2^U'"]["actual"] == 0
    assert (b["tight-uni-rule-regular-2^U'"]["value"],
            b["tight-uni-rule-regular-2^U'"]["actual"]) == (1, 1)


def test_scc_theorem_on_its_own_example(corpus):
    v = verdicts(corpus("p3"))["scc-two-complementary-stable-models"]
    assert v.applicable and v.verdict == "pass"


def test_even_cycle_uniqueness_and_lfp_observation(corpus):
    g = corpus("p4")
    v = verdicts(g)
    assert v["no-even-cycle-unique-supported-partial"].verdict == "pass"
    (obs,) = an.observations(g)
    assert obs["lfp_has_even_cycle"] is True


def test_no_odd_cycle_results_apply(corpus):
    v = verdicts(corpus("choice"))
    for tid in ("no-odd-cycle-regular-two-valued", "no-odd-cycle-stable-model-exists"):
        assert v[tid].applicable and v[tid].verdict == "pass"


def test_scc_theorem_counterexample():
    # strongly connected ADG, no odd cycle, tight: yet a single stable model,
    # because the fact makes f_a constant true
    g = make_program("a. a :- not c. c :- not a.")
    v = verdicts(g)
    bad = v["scc-two-complementary-stable-models"]
    assert bad.applicable and bad.verdict == "fail"
    assert bad.witness["stable"] == ["10"]
    assert not v["scc-two-complementary-stable-models-ig"].applicable


def test_every_verdict_is_well_formed(corpus):
    for name in ("choice", "p2", "p3", "p4", "p5", "p6", "p7"):
        for v in an.verify_theorems(corpus(name)):
            assert v.verdict in ("pass", "fail", "n/a")
            assert v.applicable == (v.verdict != "n/a")
            assert v.witness is None or v.verdict == "fail"


def test_registry_ids_unique():
    ids = [t.id for t in an.REGISTRY]
    assert len(ids) == len(set(ids))


@given(programs(max_atoms=4))
def test_all_applicable_results_hold(g):
    failed = [v for v in an.verify_theorems(g) if v.failed and v.id not in KNOWN_FALSE]
    assert not failed, [(v.id, v.witness) for v in failed]
    assert an.analyze(g).all_hold


# ----------------------------------------------------------------- generator

def test_generator_uni_rule():
    for s in range(30):
        g = an.generate_program(an.GeneratorConfig(atoms=4, uni_rule=True), s)
        assert g.is_uni_rule


def test_generator_tight_and_negative():
    for s in range(30):
        assert is_tight(an.generate_program(an.GeneratorConfig(atoms=5, tight=True), s))
        assert an.generate_program(an.GeneratorConfig(atoms=5, negative=True), s).is_negative


def test_generator_is_deterministic():
    cfg = an.GeneratorConfig(atoms=6)
    assert an.generate_program(cfg, 7) == an.generate_program(cfg, 7)
    assert any(an.generate_program(cfg, 7) != an.generate_program(cfg, s) for s in range(8, 12))


@pytest.mark.parametrize("cfg", [
    an.GeneratorConfig(atoms=0),
    an.GeneratorConfig(atoms=3, min_rules=5, max_rules=4),
    an.GeneratorConfig(atoms=3, uni_rule=True, min_rules=4),
    an.GeneratorConfig(atoms=3, neg_prob=1.5),
])
def test_generator_rejects_bad_config(cfg):
    with pytest.raises(DatalogBNError):
        an.generate_program(cfg, 0)


def test_generator_atom_names():
    assert [str(a) for a in an.atom_names(3)] == ["a", "b", "c"]
    assert str(an.atom_names(30)[0]) == "v00"


# -------------------------------------------------------------------- probes

def test_probe_with_no_trials_is_empty():
    r = an.probe_conjectures(an.GeneratorConfig(), 0, seed=3)
    assert r["conjectures"] == [] and r["trials"] == 0


def test_probe_counts_inapplicable():
    r = an.probe_conjectures(an.GeneratorConfig(atoms=3), 40, seed=1)
    for c in r["conjectures"]:
        assert c["applicable"] + c["inapplicable"] == 40
        assert c["confirmed"] + len(c["counterexamples"]) == c["applicable"]
        assert c["nontrivial"] <= c["applicable"]


def test_probe_recorded_run():
    recorded = json.loads((GOLDEN / "probe_5atoms_1000_seed42.json").read_text())
    assert an.probe_conjectures(an.GeneratorConfig(atoms=5), 1000, seed=42) == recorded
