"""Make digraphs transitive by adding vertices instead of arrows."""

import json

from ._vsplit import (
    DiGraph,
    InternalError,
    PreconditionError,
    VsplitError,
    expand,
    iso_class_count,
    is_balanced,
    is_isomorphic,
    is_preordered,
    is_stable,
    obstructions,
    oracle,
    parse,
    read,
    transitive_closure,
    verify,
)
from . import _vsplit

__all__ = [
    "DiGraph", "VsplitError", "PreconditionError", "InternalError",
    "parse", "read", "check", "expand", "expand_trace", "verify",
    "transitive_closure", "is_isomorphic", "is_balanced", "is_stable", "is_preordered",
    "iso_class_count", "obstructions", "oracle", "validate",
]


def check(graph):
    """Property report as a dict (same shape as `vsplit check --json`)."""
    return json.loads(_vsplit.report_json(graph))


def expand_trace(graph):
    """Expansion trace as a dict: input, iterations, result, map."""
    return json.loads(_vsplit.expand_json(graph))


def validate(n_max, jobs=1):
    """Theorem sweep over all classes with at most n_max vertices."""
    return json.loads(_vsplit.validate_json(n_max, jobs))
