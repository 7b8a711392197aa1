"""Finite-dimensional quantum logic (lattice of subspaces) and Bi-logic operators."""

from .bilogic import (
    AttributeClass,
    BilogicObject,
    Scenario,
    asymmetric_repr,
    attribute_kinds_report,
    condense,
    displace,
    generalize,
    negation_identity_check,
    symmetric_classes,
)
from .errors import (
    DimensionMismatchError,
    FormulaSyntaxError,
    OrthomodError,
    PreconditionError,
    ScenarioError,
    UnboundVariableError,
)
from .formula import Assignment, eval_membership, eval_subspace, parse, pretty_print
from .laws import (
    check_distributivity,
    check_modular,
    check_orthomodular,
    excluded_middle_demo,
    find_distributivity_counterexample,
)
from .scenario import load_scenario
from .subspace import (
    NumericPolicy,
    Subspace,
    complement,
    contains_subspace,
    contains_vector,
    equals,
    full_space,
    inner_product,
    join,
    meet,
    norm,
    orthonormalize,
    projector,
    random_subspace,
    span,
    zero_subspace,
)

__version__ = "0.1.0"
