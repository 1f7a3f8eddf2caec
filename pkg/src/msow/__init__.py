"""Extended MSO over omega-words: formulas, dialect rewrites, vector
sequences and a three-valued evaluator."""

from .evaluator import EvalConfig, EvalMode, differential_check, eval_formula
from .formula import (
    Dialect,
    dialect_of,
    free_variables,
    parse_formula,
    print_formula,
    rename_apart,
)
from .omegaset import FALSE, TRUE, UNKNOWN, OmegaSet, Truth, Verdict3, parse_set
from .rewrite import REWRITES, translate
from .words import LassoWord, parse_word

__version__ = "0.1.0"

__all__ = [
    "FALSE",
    "REWRITES",
    "TRUE",
    "UNKNOWN",
    "Dialect",
    "EvalConfig",
    "EvalMode",
    "LassoWord",
    "OmegaSet",
    "Truth",
    "Verdict3",
    "dialect_of",
    "differential_check",
    "eval_formula",
    "free_variables",
    "parse_formula",
    "parse_set",
    "parse_word",
    "print_formula",
    "rename_apart",
    "translate",
]
