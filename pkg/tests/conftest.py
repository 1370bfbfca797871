from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from datalog_bn.program import Atom, GroundProgram, Rule, load

CORPUS = Path(__file__).resolve().parent.parent / "corpus"
GOLDEN = Path(__file__).resolve().parent / "golden"

settings.register_profile("default", max_examples=150, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def corpus():
    def get(name):
        return load(CORPUS / f"{name}.dlg")
    return get


ATOM_POOL = [Atom(c) for c in "abcde"]


@st.composite
def programs(draw, max_atoms=4, max_rules=7, negative=False, uni_rule=False):
    k = draw(st.integers(1, max_atoms))
    pool = ATOM_POOL[:k]
    lits = st.frozensets(st.sampled_from(pool), max_size=2)
    heads = (draw(st.lists(st.sampled_from(pool), unique=True, max_size=k)) if uni_rule
             else draw(st.lists(st.sampled_from(pool), max_size=max_rules)))
    rules = []
    for h in heads:
        pos = frozenset() if negative else draw(lits)
        rules.append(Rule(h, pos, draw(lits)))
    # pass the pool explicitly so atoms heading no rule still count
    return GroundProgram(tuple(rules), tuple(pool))


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.LINES):
        terminalreporter.write_line(line)
