import pytest
from hypothesis import given

import oracles
from conftest import programs
from datalog_bn import semantics as sem
from datalog_bn.errors import CapExceeded, DatalogBNError
from datalog_bn.interp import TV, Interpretation
from datalog_bn.program import SENTINEL, Atom, is_tight


def rendered(items):
    return {i.render() for i in items}


def rules_text(g):
    return {str(r) for r in g.rules}


def test_example_program_models(corpus):
    g = corpus("choice")
    assert rendered(sem.stable_partial_models(g)) == {"⋆⋆⋆", "100", "011"}
    assert rendered(sem.regular_models(g)) == {"100", "011"}
    assert rendered(sem.stable_models(g)) == {"100", "011"}
    assert rendered(sem.supported_models(g)) == {"100", "011"}
    assert sem.well_founded_model(g).render() == "⋆⋆⋆"
    pretty = [m.pretty() for m in sem.regular_models(g)]
    assert pretty == ["{p = F, q = T, r = T}", "{p = T, q = F, r = F}"]


def test_example_program_lfp(corpus):
    assert rules_text(sem.lfp_transform(corpus("choice"))) == {
        "p :- not q.", "q :- not p.", "r :- not p."}


def test_supported_versus_stable_partial(corpus):
    g = corpus("p2")
    assert rendered(sem.supported_partial_models(g)) == {"⋆⋆⋆", "100"}
    assert rendered(sem.stable_partial_models(g)) == {"100"}
    assert rendered(sem.supported_models(g)) == {"100"}
    assert rules_text(sem.lfp_transform(g)) == {"a :- not b."}


def test_lfp_of_counterexample_program(corpus):
    assert rules_text(sem.lfp_transform(corpus("p4"))) == {
        "a :- not a, not b.", "b :- not a, not b.", "c :- not a, not b."}


def test_uni_rule_program_without_stable_model(corpus):
    g = corpus("p6")
    assert rendered(sem.regular_models(g)) == {"⋆⋆⋆⋆"}
    assert sem.stable_models(g) == []


def test_two_stable_models(corpus):
    assert rendered(sem.stable_models(corpus("p5"))) == {"01", "10"}


def test_self_negation(corpus):
    g = corpus("p7")
    assert rendered(sem.stable_partial_models(g)) == {"⋆"}
    assert sem.stable_models(g) == []
    assert sem.supported_models(g) == []


def test_reduct_uses_sentinel(corpus):
    g = corpus("choice")
    i = Interpretation.from_string(g.atoms, "⋆0⋆")
    red = sem.reduct3(g, i)
    # q false: p's body empties; p undefined: q's body gets the sentinel
    text = {str(r) for r in red}
    assert text == {"p.", f"q :- {SENTINEL}.", "r :- q."}
    least = sem.least_model3(red, g.atoms)
    assert least.render() == "1⋆⋆"


def test_operators(corpus):
    from datalog_bn.dynamics import f_op, t_op
    g = corpus("choice")
    p, q, r = g.atoms
    assert f_op(g, {p}) == {p}
    assert f_op(g, set()) == {p, q, r}
    assert t_op(g, {p, q}) == {r}


def test_formula_evaluation():
    i = {"a": TV.T, "b": TV.U, "c": TV.F}
    assert sem.eval3(i, sem.And(("a", sem.Not("c")))) == TV.T
    assert sem.eval3(i, sem.Or(("b", sem.Not("b")))) == TV.U
    assert sem.eval3(i, sem.And(())) == TV.T and sem.eval3(i, sem.Or(())) == TV.F
    assert sem.eval3(i, SENTINEL) == TV.U
    with pytest.raises(DatalogBNError):
        sem.eval3(i, "z")


def test_completion(corpus):
    comp = sem.completion(corpus("p2"))
    assert {str(k): str(v) for k, v in comp.items()} == {
        "a": "b ∨ ¬b", "b": "¬b ∧ c", "c": "b"}


def test_caps(corpus):
    g = corpus("choice")
    with pytest.raises(CapExceeded):
        sem.stable_partial_models(g, cap=2)
    with pytest.raises(CapExceeded):
        sem.stable_models(g, cap=2)


def test_lfp_round_limit(corpus):
    with pytest.raises(DatalogBNError):
        sem.lfp_transform(corpus("p2"), max_rounds=1)


@given(programs())
def test_supported_partial_matches_oracle(g):
    assert rendered(sem.supported_partial_models(g)) == oracles.supported_partial(g)
    assert rendered(sem.supported_models(g)) == oracles.supported(g)


@given(programs())
def test_supported_partial_via_formula_ast(g):
    comp = sem.completion(g)
    expected = set()
    for i in oracles.all_interpretations(oracles.names(g), (TV.F, TV.T, TV.U)):
        m = Interpretation(g.atoms, tuple(i[str(a)] for a in g.atoms))
        if all(sem.eval3(m, sem.dnf_formula(comp[a])) == m[a] for a in g.atoms):
            expected.add(m.render())
    assert rendered(sem.supported_partial_models(g)) == expected


@given(programs())
def test_stable_family_matches_oracle(g):
    assert rendered(sem.stable_partial_models(g)) == oracles.stable_partial(g)
    assert rendered(sem.stable_models(g)) == oracles.stable(g)
    assert rendered(sem.regular_models(g)) == oracles.regular(g)


@given(programs())
def test_well_founded_is_alternating_fixpoint(g):
    assert sem.well_founded_model(g).render() == oracles.well_founded(g)


@given(programs())
def test_reduct_least_model_agrees_with_fast_path(g):
    for m in sem.stable_partial_models(g):
        assert sem.least_model3(sem.reduct3(g, m), g.atoms) == m


@given(programs())
def test_lfp_matches_oracle(g):
    ours = {(str(r.head), frozenset(map(str, r.neg))) for r in sem.lfp_transform(g).rules}
    assert ours == oracles.lfp(g)


@given(programs())
def test_subsumption_chain(g):
    st = rendered(sem.stable_models(g))
    reg = rendered(sem.regular_models(g))
    spm = rendered(sem.stable_partial_models(g))
    supp = rendered(sem.supported_partial_models(g))
    assert st <= reg <= spm <= supp
    assert st <= rendered(sem.supported_models(g))


@given(programs())
def test_tight_programs_collapse(g):
    if not is_tight(g):
        return
    assert rendered(sem.stable_models(g)) == rendered(sem.supported_models(g))
    assert rendered(sem.stable_partial_models(g)) == rendered(sem.supported_partial_models(g))


@given(programs())
def test_lfp_preserves_stable_family(g):
    h = sem.lfp_transform(g)
    assert h.atoms == g.atoms and h.is_negative
    assert rendered(sem.stable_partial_models(h)) == rendered(sem.stable_partial_models(g))
    assert rendered(sem.stable_models(h)) == rendered(sem.stable_models(g))
