"""Signature features and linear models for daily mood report streams."""

from ._core import (
    CATEGORIES,
    COHORTS,
    Classifier,
    InputError,
    Participant,
    Regressor,
    ShapeError,
    ValidationError,
    bootstrap,
    evaluate,
    feature_names,
    featurize,
    load_csv,
    normalize,
    shuffle_product,
    signature,
    synthesize,
    tensor_dim,
    tensor_exp,
    tensor_mul,
    trace,
    triangle,
    window_features,
    write_csv,
)

__all__ = [
    "CATEGORIES",
    "COHORTS",
    "Classifier",
    "InputError",
    "Participant",
    "Regressor",
    "ShapeError",
    "ValidationError",
    "bootstrap",
    "evaluate",
    "feature_names",
    "featurize",
    "load_csv",
    "normalize",
    "shuffle_product",
    "signature",
    "synthesize",
    "tensor_dim",
    "tensor_exp",
    "tensor_mul",
    "trace",
    "triangle",
    "window_features",
    "write_csv",
]
