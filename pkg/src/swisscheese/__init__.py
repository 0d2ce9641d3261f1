"""Swiss cheese sets: classicalisation with allocation-map certificates and
boundary-measure checks by contour quadrature."""

from .allocation import COMPLEMENT, AllocationMap, check_axioms, compose, g_set, identity_map
from .analysis import (
    Chain,
    OrientedCircle,
    PoleTerm,
    RationalFunction,
    annihilation_test,
    boundary_chain,
    integrate,
    total_variation,
    winding_number,
)
from .cheese import (
    SwissCheese,
    Verdict,
    classify,
    contains_point,
    contains_points,
    delta,
    normalize,
    whyburn_report,
)
from .classicalise import Trace, classicalise, find_violation, step_merge, step_shrink
from .errors import (
    CheeseError,
    CompositionError,
    HypothesisError,
    InvalidInputError,
    PreconditionError,
    QuadratureError,
)
from .generate import adversarial_cheese, carpet_cheese, random_cheese
from .geometry import DEFAULT_TOL, ClosedDisc, OpenDisc, Point, cdisc, disc

__version__ = "0.1.0"
