"""Model checking, bisimulation, translation and proof checking for modal logics
of supervenience, agreement, non-contingency and determinacy."""
from .bisim import BisimRelation, Violation, check_obisim, largest_obisim, obisimilar, probe_invariance
from .formula import (
    BOT, TOP, Agree, And, Atom, Bot, Box, CondAgree, CondSup, Delta, Det, Formula,
    Iff, Imp, Not, Or, StrictImp, Sup, SupSet, Top, atoms, conj, disj, mutual_sup,
)
from .model import FrameClass, GeneralizedModel, ModelError, MissingRelationError, PointedModel, universal_model
from .proofcheck import (
    SYSTEMS, AxiomSystem, Derivation, DerivationError, check_derivation, fuzz_axiom,
    fuzz_soundness, get_system, is_tautology_instance, match_schema,
)
from .search import SearchBounds, SearchVerdict, Verdict, check_sat, check_validity
from .semantics import evaluate, extension, inf_consequence, sup_consequence
from .syntax import SourceError, parse_derivation, parse_formula, parse_model, print_formula
from .translate import t_d, t_delta

__all__ = [name for name in dir() if not name.startswith("_")]
