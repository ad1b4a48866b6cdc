"""Focused stochastic local search: flaws, actions, charges and walks.

The core works on fully enumerated instances (:mod:`focusedsls.instance`);
:mod:`focusedsls.aec` applies the recursive walk to acyclic edge coloring.
"""
from .errors import (CapExceeded, EnumerationCapExceeded, FocusedSLSError, InstanceError,
                     ParseError, PreconditionError, StepCapExceeded, SupportCapExceeded)
from .exact import (verify_atomic_oracle, verify_trajectory_window, verify_witness_bound,
                    witness_distribution)
from .forest import (LabeledForest, enumerate_forest_weight_sum, enumerate_forests,
                     forest_probability, sample_forest)
from .framework import (ConditionReport, analyze, causality_digraph, charges,
                        check_atomicity, check_regeneration, compute_T0, flaw_charge,
                        harmonic_kernel, span)
from .instance import ExplicitInstance, load_instance, parse_instance, two_coin
from .walk import ExplicitProblem, Trajectory, make_rng, run_walk

__version__ = "0.1.0"

__all__ = [
    "CapExceeded", "ConditionReport", "EnumerationCapExceeded", "ExplicitInstance",
    "ExplicitProblem", "FocusedSLSError", "InstanceError", "LabeledForest", "ParseError",
    "PreconditionError", "StepCapExceeded", "SupportCapExceeded", "Trajectory", "analyze",
    "causality_digraph", "charges", "check_atomicity", "check_regeneration", "compute_T0",
    "enumerate_forest_weight_sum", "enumerate_forests", "flaw_charge", "forest_probability",
    "harmonic_kernel", "load_instance", "make_rng", "parse_instance", "run_walk",
    "sample_forest", "span", "two_coin", "verify_atomic_oracle", "verify_trajectory_window",
    "verify_witness_bound", "witness_distribution",
]
