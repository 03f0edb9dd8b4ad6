"""Genus-2 Jacobian arithmetic over prime fields and quartic CM Frobenius checks."""

from .cm import (
    CMField,
    FrobeniusElement,
    TheoremVerdict,
    frobenius_char_poly,
    frobenius_norm,
    primitivity_screen,
    q_bound,
    remainder_mod_sq,
    theorem_c2_check,
    theorem_ed1_check,
)
from .fields import FieldCtx, QuadExtCtx
from .groups import (
    GroupStructure,
    embedding_degree,
    group_structure,
    sylow_generator_search,
    sylow_rank,
)
from .jacobian import (
    IDENTITY,
    Curve,
    Divisor,
    cantor_add,
    count_points,
    enumerate_jacobian,
    random_divisor,
    scalar_mul,
)
from .weil import WeilPoly, char_poly_from_counts, weil_validate

__version__ = "0.1.0"
