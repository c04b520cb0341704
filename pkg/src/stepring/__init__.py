"""Step-counted generation of finite-index ideals in tabulated finite rings."""

from .additive import (
    ElementSet,
    Subgroup,
    TriangularBasis,
    closure,
    genericity_number,
    is_coset_independent,
    n_fold_sum,
    sumset,
    thickness,
    triangularize,
)
from .intpoly import IntPoly
from .rings import (
    ExoticRingSpec,
    Nilpotent3Element,
    TabulatedRing,
    build_boolean_ring,
    build_exotic,
    build_poly_quotient,
    build_zq_power,
    check_ring_axioms,
    nilpotent3_mul,
)
from .scenarios import Caps, ScenarioReport, run_scenario
from .stepgen import (
    LEFT,
    LEFT_UNIT,
    RIGHT,
    RIGHT_UNIT,
    TWO_SIDED,
    TWO_SIDED_UNIT,
    SideMode,
    find_ideal_within,
    half_step_set,
    min_steps_to_group,
    product_set,
)

__version__ = "0.1.0"
