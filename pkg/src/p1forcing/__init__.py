"""Forcing trees for Sette's paraconsistent calculus P1 and its extension LPcAt."""

from .engine import (
    AInvalid,
    AValid,
    Forced1,
    MarkState,
    NotForced,
    TraceStep,
    check_validity,
    check_validity_direct,
    extend_marks,
    format_trace,
    propagate,
)
from .formula import (
    And,
    Atom,
    Formula,
    FormulaSyntaxError,
    Iff,
    Imp,
    Incompat,
    IncompatOnCompound,
    Or,
    StrongNeg,
    WeakNeg,
    atoms,
    complexity,
    parse,
    render,
    subformulas,
)
from .semantics import TInvalid, TruthValue, TValid, evaluate, t_validity, truth_table
from .tree import ForcingTree, build_tree, depth

__all__ = [
    "AInvalid", "AValid", "And", "Atom", "Forced1", "ForcingTree", "Formula", "FormulaSyntaxError",
    "Iff", "Imp", "Incompat", "IncompatOnCompound", "MarkState", "NotForced", "Or", "StrongNeg",
    "TInvalid", "TValid", "TraceStep", "TruthValue", "WeakNeg", "atoms", "build_tree",
    "check_validity", "check_validity_direct", "complexity", "depth", "evaluate", "extend_marks",
    "format_trace", "parse", "propagate", "render", "subformulas", "t_validity", "truth_table",
]
