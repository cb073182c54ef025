"""Rate-dependence of positive steady states for deficiency-one mass-action networks.

The top-level entry point is :func:`classify`, which takes a
:class:`ReactionNetwork` or a :class:`GraphHInstance` (usually from
:func:`parse_inputs`) and returns a :class:`Classification`.
"""

from .digraph import DiGraph, analyze_components, closed_sets, reach_sets
from .netmodel import (
    GraphHInstance,
    KineticMatrix,
    ParseError,
    RateAssignment,
    ReactionNetwork,
    build_kinetic_matrix,
    dumps,
    eval_massaction,
    parse_inputs,
)
from .steady import (
    Classification,
    Condition,
    HVector,
    OutOfScopeError,
    Verdict,
    classify,
    compute_deficiency,
    compute_h,
    exists_for_kappa,
    prepare,
    sample_kappa,
    solve_theta,
)

__all__ = [
    "Classification",
    "Condition",
    "DiGraph",
    "GraphHInstance",
    "HVector",
    "KineticMatrix",
    "OutOfScopeError",
    "ParseError",
    "RateAssignment",
    "ReactionNetwork",
    "Verdict",
    "analyze_components",
    "build_kinetic_matrix",
    "classify",
    "closed_sets",
    "compute_deficiency",
    "compute_h",
    "dumps",
    "eval_massaction",
    "exists_for_kappa",
    "parse_inputs",
    "prepare",
    "reach_sets",
    "sample_kappa",
    "solve_theta",
]
