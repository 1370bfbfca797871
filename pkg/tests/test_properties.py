"""Structural invariants on hypothesis-drawn and generator-drawn programs."""

from hypothesis import given
from hypothesis import strategies as st

from conftest import programs
from datalog_bn import analysis as an
from datalog_bn import dynamics as dyn
from datalog_bn import semantics as sem
from datalog_bn.errors import BipartitionError
from datalog_bn.graph import (NEG, POS, enumerate_simple_cycles, has_even_cycle,
                              has_odd_cycle, is_sign_definite, is_strongly_connected,
                              positive_negative_bipartition)
from datalog_bn.program import atom_dependency_graph, ground, is_tight

generated = st.builds(
    lambda k, s, flags: an.generate_program(
        an.GeneratorConfig(atoms=k, uni_rule=flags[0], tight=flags[1], negative=flags[2]), s),
    st.integers(1, 5), st.integers(0, 10**6), st.tuples(st.booleans(), st.booleans(), st.booleans()))

any_program = st.one_of(programs(max_atoms=5, max_rules=8), generated)


@given(any_program)
def test_grounding_is_idempotent(g):
    assert ground(g) == g
    assert ground(ground(g)) == ground(g)


@given(any_program)
def test_adg_vertices_and_witnessed_arcs(g):
    adg = atom_dependency_graph(g)
    assert adg.vertices == g.atoms
    for u, v, s in adg.arcs:
        assert any(r.head == v and u in (r.pos if s == POS else r.neg) for r in g.rules)


@given(programs(negative=True))
def test_negative_programs_are_tight(g):
    assert is_tight(g)


@given(any_program)
def test_cycles_revalidate(g):
    adg = atom_dependency_graph(g)
    for c in enumerate_simple_cycles(adg):
        assert all(a in adg.arcs for a in c.arcs)
        vs = c.vertices
        assert len(set(vs)) == len(vs)
        assert all(c.arcs[i][1] == c.arcs[(i + 1) % len(vs)][0] for i in range(len(vs)))
        assert c.parity == ("odd" if sum(a[2] == NEG for a in c.arcs) % 2 else "even")


@given(any_program)
def test_strongly_connected_single_parity_is_sign_definite(g):
    adg = atom_dependency_graph(g)
    if is_strongly_connected(adg) and (not has_odd_cycle(adg) or not has_even_cycle(adg)):
        assert is_sign_definite(adg)


@given(any_program)
def test_bipartition_soundness(g):
    adg = atom_dependency_graph(g)
    try:
        plus, minus = positive_negative_bipartition(adg)
    except BipartitionError:
        # strongly connected graphs are balanced exactly when no cycle is odd
        if is_strongly_connected(adg):
            assert has_odd_cycle(adg)
        return
    for u, v, s in adg.arcs:
        same = (u in plus) == (v in plus)
        assert same == (s == POS)


@given(any_program)
def test_minimal_trap_spaces_are_pairwise_inconsistent(g):
    for kind in ("stable", "supported"):
        mins = dyn.minimal_trap_spaces_of(g, kind)
        for i, a in enumerate(mins):
            for b in mins[i + 1:]:
                assert dyn.overlap(a, b) is None
        classes = dyn.strict_classes(dyn.transition_graph(g, kind))
        assert len(mins) <= len(classes)
    assert len(sem.regular_models(g)) <= len(dyn.strict_classes(dyn.stable_tg(g)))


@given(any_program)
def test_partial_models_are_trap_spaces(g):
    stable_ts = {m.render() for m in dyn.stable_trap_spaces(g)}
    supported_ts = {m.render() for m in dyn.supported_trap_spaces(g)}
    assert {m.render() for m in sem.stable_partial_models(g)} <= stable_ts
    assert {m.render() for m in sem.supported_partial_models(g)} <= supported_ts


@given(any_program)
def test_trap_space_cells_hold_a_class(g):
    for kind in ("stable", "supported"):
        classes = dyn.strict_classes(dyn.transition_graph(g, kind))
        for m in dyn.trap_spaces_of(g, kind):
            assert any(all(m.contains(s) for s in c) for c in classes)
