"""Exact quandle 2-cocycle state-sum invariants of classical and virtual diagrams."""

from .algebra import (
    FiniteQuandle,
    QuandleMap,
    automorphisms,
    inner_automorphism,
    is_automorphism,
    left_divide,
    make_dihedral,
    make_from_table,
    map_order,
    validate_quandle,
)
from .diagram import (
    BUILDER_NAMES,
    ClassicalCrossing,
    VirtualCrossing,
    VirtualDiagram,
    builder,
    component_count,
    isomorphic,
    parse_diagram,
    serialize_diagram,
    validate_diagram,
)
from .invariants import (
    InvariantResult,
    aut_sum_z3,
    coloring_weight,
    state_sum_classical,
    state_sum_z2,
    state_weight_z1,
)
from .moves import (
    ALL_KINDS,
    CLASSICAL_KINDS,
    MoveRecord,
    apply_move,
    detour,
    r1_insert,
    r1_remove,
    r2_insert,
    r2_remove,
    r3_slide,
    random_equivalent,
    vkink_insert,
    vkink_remove,
)
from .solver import brute_force_colorings, count_colorings, enumerate_colorings, verify_coloring
from .weights import (
    CoefficientGroup,
    Cochain1,
    Cocycle2,
    Weight,
    WeightPolynomial,
    coboundary,
    cocycle_inverse,
    cocycle_product,
    cocycle_space_basis,
    example_cocycle_r4,
    is_cohomologous,
    preserves,
    trivial_cocycle,
    validate_cocycle,
)

__version__ = "0.1.0"
