"""Executable finite-horizon model of the fuzzy difference (Ershov) hierarchy."""
from .numeric import UnitRational, complement_value, parse_rational
from .trace import (
    ApproximationTrace,
    Shape,
    ShapeViolation,
    complement,
    enumerate_left_cut,
    enumerate_right_cut,
    intersection,
    limit_snapshot,
    union,
    validate,
)
from .mindchange import change_count_prefix, pi_profile, sigma_profile, update_profile
from .hierarchy import (
    CountingTrace,
    classify,
    counting_witness,
    embed_crisp,
    threshold_to_crisp,
    verify_counting_function,
)
from .boolean import BooleanDecomposition, decompose, recompose, verify_theorem

__version__ = "0.1.0"
