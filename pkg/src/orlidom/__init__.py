"""Orlicz-Sobolev optimal-domain calculus: Young functions, Boyd indices,
Hardy-operator reductions, and the theorem-level embedding facade."""

from .young import (
    ConvexJoinError,
    Decision,
    DegenerateFunctionError,
    ExactMeta,
    GridYoung,
    Regime,
    SpecError,
    YoungFunction,
    YoungFunctionSpec,
    conjugate,
    delta2,
    dominates,
    equivalent,
    fundamental,
    glue,
    inverse,
    make_young,
    scale,
    spec,
)

__all__ = [
    "ConvexJoinError",
    "Decision",
    "DegenerateFunctionError",
    "ExactMeta",
    "GridYoung",
    "Regime",
    "SpecError",
    "YoungFunction",
    "YoungFunctionSpec",
    "conjugate",
    "delta2",
    "dominates",
    "equivalent",
    "fundamental",
    "glue",
    "inverse",
    "make_young",
    "scale",
    "spec",
]

__version__ = "0.1.0"
