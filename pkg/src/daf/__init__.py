"""Deontic argumentation: detach all-things-considered obligations from
facts, constraints, and conditional norms via grounded semantics."""

from .arguments import (
    Argument,
    ArgumentUniverse,
    BoundExceeded,
    GenerationConfig,
    aggregate,
    base,
    constraint_leaf,
    deontic_detach,
    doubt_from_constraint,
    doubt_from_deontic,
    enumerate_universe,
    factual_detach,
    weaken,
)
from .attacks import (
    AttackGraph,
    AttackKind,
    Variant,
    build_attack_graph,
    conflict_attacks,
    fact_attacked,
    prioritized_attacks,
    priority_rank,
    shadow_attacks,
    specificity_attacks,
)
from .consequence import (
    OutputBase,
    Verdict,
    entails,
    entails_fast_basic,
    evaluate_graph,
    extend_with_output,
    output_base,
)
from .entail import cl_consistent, cl_entails, fact_entails, settled_base, \
    settled_entails
from .formulas import ParseError, complement, conjoin, parse_formula, render
from .grounded import (
    AbstractFramework,
    ExtensionResult,
    grounded_extension,
    is_complete_extension,
    is_conflict_free,
)
from .kb import KbOptions, KnowledgeBase, ValidationError, parse_kb, \
    parse_query

__all__ = [
    "Argument",
    "ArgumentUniverse",
    "AttackGraph",
    "AttackKind",
    "AbstractFramework",
    "BoundExceeded",
    "ExtensionResult",
    "GenerationConfig",
    "KbOptions",
    "KnowledgeBase",
    "OutputBase",
    "ParseError",
    "ValidationError",
    "Variant",
    "Verdict",
    "aggregate",
    "base",
    "build_attack_graph",
    "cl_consistent",
    "cl_entails",
    "complement",
    "conflict_attacks",
    "conjoin",
    "constraint_leaf",
    "deontic_detach",
    "doubt_from_constraint",
    "doubt_from_deontic",
    "entails",
    "entails_fast_basic",
    "enumerate_universe",
    "evaluate_graph",
    "extend_with_output",
    "fact_attacked",
    "fact_entails",
    "factual_detach",
    "grounded_extension",
    "is_complete_extension",
    "is_conflict_free",
    "output_base",
    "parse_formula",
    "parse_kb",
    "parse_query",
    "prioritized_attacks",
    "priority_rank",
    "render",
    "settled_base",
    "settled_entails",
    "shadow_attacks",
    "specificity_attacks",
    "weaken",
]
