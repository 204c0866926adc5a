"""Exact, certified experiments on bounded sequences and Banach-limit bounds."""

from .errors import (
    HorizonTooLarge,
    InvalidArgs,
    InvalidOverride,
    SchemaError,
    SeqlabError,
    UnknownClaim,
    UnsupportedComposition,
    UnsupportedOperator,
)
from .operators import Cesaro, Compose, ConvexCombo, DiffIT, Dilation, Shift, convex, simplify
from .sequences import (
    Applied,
    Constant,
    GeometricIndicator,
    IndicatorUnion,
    IntInterval,
    Periodic,
    Pointwise,
    PrefixTail,
    bound,
    eval_at,
    materialize,
    normal_form,
    pointwise_check_equal,
    prefix_sum,
)
from .windows import (
    AlmostConvergent,
    BoundsEnclosure,
    Inconclusive,
    LorentzReport,
    NotAlmostConvergent,
    WindowStats,
    cesaro_profile,
    dilation_witness_check,
    lorentz_check,
    sucheston_bounds,
    window_extrema,
    window_sum,
)
from .zeta import ZetaValue, zeta_transform

__version__ = "0.1.0"
