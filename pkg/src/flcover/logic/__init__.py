"""First-order modal substructural formulas and their cover-system semantics."""

from .semantics import (Evaluator, Model, check_semantic_agreement, closed_instances, depth_suite,
                        is_true, satisfies, truth_set)
from .syntax import (And, Atom, Bang, Bot, Const, Elem, Exists, Forall, Formula, ImpL, ImpR, NegL,
                     NegR, One, Or, Quest, Signature, Top, Var, Zero, format_formula,
                     free_variables, is_closed, parse_formula, random_formula, substitute)

__all__ = [
    "And", "Atom", "Bang", "Bot", "Const", "Elem", "Evaluator", "Exists", "Forall", "Formula",
    "ImpL", "ImpR", "Model", "NegL", "NegR", "One", "Or", "Quest", "Signature", "Top", "Var", "Zero",
    "check_semantic_agreement", "closed_instances", "depth_suite", "format_formula",
    "free_variables", "is_closed", "is_true", "parse_formula", "random_formula", "satisfies",
    "substitute", "truth_set",
]
