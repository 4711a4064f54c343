from ._fuzzyhorn import (
    AlgebraError,
    HerbrandError,
    MorphismError,
    ParseError,
    SaturationError,
    SemanticsError,
    algebra_op,
    classify,
    eval,
    free_hom,
    least_h_model,
    model_check,
    saturate,
)

__all__ = [
    "AlgebraError",
    "HerbrandError",
    "MorphismError",
    "ParseError",
    "SaturationError",
    "SemanticsError",
    "algebra_op",
    "classify",
    "eval",
    "free_hom",
    "least_h_model",
    "model_check",
    "saturate",
]
