"""Exact computational algebra for ultragraph Leavitt path algebras.

Element equality is decided through the graded skew-product realization;
on top of it sit the constructive reduction of nonzero elements, interval
branching systems with their induced representations and faithfulness
criterion, and the extreme-vertex stratification with the permutative
round trip.
"""

from .branching import (
    BranchingSystem,
    build_interval_system,
    build_rotation_variant,
    check_faithfulness_criterion,
    kernel_witness,
    rep_apply,
    validate_branching,
)
from .errors import UlpaError
from .leavitt import LeavittAlgebra, Monomial, render_expr
from .parsing import parse_element_expr, parse_ultragraph_dsl, render_ultragraph_dsl
from .permutative import (
    PermutativeData,
    canonical_discrete_data,
    esteaqui_hypothesis,
    permutative_to_branching,
    stratify,
)
from .reduction import reduce_element, semiprime_square_witness, strip_ghost_edges
from .rings import QQ, ZZ, Ring, Zmod, ring_from_name
from .skew import GradedElement
from .ultragraph import (
    Ultragraph,
    enumerate_cycles,
    exits_of_closed_path,
    lattice_closure,
    make_ultragraph,
    satisfies_condition_l,
    sinks,
    validate_ultragraph,
)

__version__ = "0.1.0"

__all__ = [
    "BranchingSystem",
    "GradedElement",
    "LeavittAlgebra",
    "Monomial",
    "PermutativeData",
    "QQ",
    "Ring",
    "Ultragraph",
    "UlpaError",
    "ZZ",
    "Zmod",
    "build_interval_system",
    "build_rotation_variant",
    "canonical_discrete_data",
    "check_faithfulness_criterion",
    "enumerate_cycles",
    "esteaqui_hypothesis",
    "exits_of_closed_path",
    "kernel_witness",
    "lattice_closure",
    "make_ultragraph",
    "parse_element_expr",
    "parse_ultragraph_dsl",
    "permutative_to_branching",
    "reduce_element",
    "render_expr",
    "render_ultragraph_dsl",
    "rep_apply",
    "ring_from_name",
    "satisfies_condition_l",
    "semiprime_square_witness",
    "sinks",
    "stratify",
    "strip_ghost_edges",
    "validate_branching",
    "validate_ultragraph",
]
