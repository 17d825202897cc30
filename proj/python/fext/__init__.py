"""Ultrapower of N over a lazily decided ultrafilter, with property suites."""

from ._fext import (
    ConsistencyViolation,
    Error,
    Fn,
    Model,
    Oracle,
    Point,
    ReplayMismatch,
    SyntaxError,
    Undecidable,
    eval_base,
    run,
)

__all__ = [
    "ConsistencyViolation",
    "Error",
    "Fn",
    "Model",
    "Oracle",
    "Point",
    "ReplayMismatch",
    "SyntaxError",
    "Undecidable",
    "eval_base",
    "run",
]
