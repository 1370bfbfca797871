"""Datalog programs with default negation, analysed as Boolean networks."""

from .errors import (BipartitionError, CapExceeded, DatalogBNError, GroundingError,
                     ParseError, UnsafeRuleWarning)
from .interp import TV, Interpretation
from .program import (Atom, GroundProgram, Program, Rule, atom_dependency_graph, ground,
                      is_tight, load, make_program, parse)
from .network import BooleanNetwork, Dnf, encode
from .semantics import (lfp_transform, regular_models, stable_models, stable_partial_models,
                        supported_models, supported_partial_models, well_founded_model)
from .analysis import analyze, generate_program, probe_conjectures, verify_theorems

__version__ = "0.1.0"
