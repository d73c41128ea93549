"""Strings and trees as finite relational models, first-order constraints
over them compiled to tensor evaluation plans, and a symbolic oracle for
differential verification."""

from .errors import (
    ArityMismatchError,
    AssignmentError,
    DuplicateAddressError,
    FotensorError,
    GornDomainError,
    ParseError,
    SemanticError,
    StructureFormatError,
    UnboundVariableError,
    UnknownPredicateError,
    UnknownSymbolError,
)
from .formulas import (
    And,
    Atom,
    Equal,
    Exists,
    Forall,
    Formula,
    Implies,
    Not,
    Or,
    PredicateSymbol,
    Variable,
    and_,
    atom,
    desugar,
    free_variables,
    is_closed,
    or_,
    predicates,
    to_text,
)
from .parser import parse_formula
from .prenex import PrenexFormula, to_prenex
from .models import (
    Alphabet,
    Assignment,
    StructureModel,
    build_precedence_model,
    build_successor_model,
    build_word_model,
    dump_structure,
    load_structure,
)
from .trees import DomainValidation, GornAddress, build_tree_model, validate_gorn_domain
from .oracle import enumerate_assignments, tarski_eval
from .tensors import (
    EmbeddedModel,
    TensorExpr,
    compile_formula,
    dump_expr,
    embed_model,
    eval_tensor,
    min1,
    negate_relation,
    transpose_encode,
)
from .optimize import optimize
from .languages import (
    LanguageSpec,
    enumerate_language,
    formula_diss,
    formula_one_b,
    iter_words,
    membership,
    succ_from_prec_formula,
)
from .diffcheck import run_differential_check

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "And",
    "ArityMismatchError",
    "Assignment",
    "AssignmentError",
    "Atom",
    "DomainValidation",
    "DuplicateAddressError",
    "EmbeddedModel",
    "Equal",
    "Exists",
    "Forall",
    "Formula",
    "FotensorError",
    "GornAddress",
    "GornDomainError",
    "Implies",
    "LanguageSpec",
    "Not",
    "Or",
    "ParseError",
    "PredicateSymbol",
    "PrenexFormula",
    "SemanticError",
    "StructureFormatError",
    "StructureModel",
    "TensorExpr",
    "UnboundVariableError",
    "UnknownPredicateError",
    "UnknownSymbolError",
    "Variable",
    "and_",
    "atom",
    "build_precedence_model",
    "build_successor_model",
    "build_tree_model",
    "build_word_model",
    "compile_formula",
    "desugar",
    "dump_expr",
    "dump_structure",
    "embed_model",
    "enumerate_assignments",
    "enumerate_language",
    "eval_tensor",
    "formula_diss",
    "formula_one_b",
    "free_variables",
    "is_closed",
    "iter_words",
    "load_structure",
    "membership",
    "min1",
    "negate_relation",
    "optimize",
    "or_",
    "parse_formula",
    "predicates",
    "run_differential_check",
    "succ_from_prec_formula",
    "tarski_eval",
    "to_prenex",
    "to_text",
    "transpose_encode",
    "validate_gorn_domain",
]
