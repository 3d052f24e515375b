"""Untwistedness of Grossberg-Karshon twisted cubes via toric Cartier data."""

__version__ = "0.1.0"

from .cube import (
    CubeSpec,
    SignedLatticeSet,
    check_condition_P,
    density,
    enumerate_lattice,
    eval_A,
    member,
    satisfies_S,
    sgn,
    truncated,
)
from .errors import (
    ArithmeticOverflowError,
    CapacityError,
    InconsistencyError,
    TwistCubeError,
    UsageError,
)
from .toric import (
    CartierPoint,
    SignVector,
    all_cartier_points,
    cartier_point,
    is_basepoint_free,
    maximal_cones,
    pd_contains,
    ray_minus,
)
from .untwist import (
    UntwistReport,
    check_b,
    check_c,
    check_d,
    check_e,
    check_positivity_necessity,
    closure_witness,
    grid_convexity_oracle,
    is_untwisted,
)
from .rep import CartanMatrix, cartan_matrix, derive_constants, necessary_conditions
from .character import (
    FormalCharacter,
    compare_characters,
    demazure_character,
    demazure_operator,
    signed_character,
)
