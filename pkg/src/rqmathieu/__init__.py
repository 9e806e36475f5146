"""Reduced-quaternionic Mathieu functions.

Classical Mathieu functions on elliptic domains, their reduced-quaternion
(metamonogenic) completions, zero-boundary modes on confocal ellipses, the
Bessel-type disk limits, and imaginary-time wave solutions built from them.
"""

from .errors import (
    ConditioningError,
    ConditioningWarning,
    DomainError,
    InvalidModeError,
    RangeError,
    SearchExhaustedError,
    ShapeError,
    SpecError,
)
from .geometry import EllipseSpec, EllipticPoint, make_grid, to_cartesian, to_elliptic, xi_for_mu
from .mathieu import MathieuMode, RadialZero, find_q_zero, solve_mode
from .rq import ReducedQuaternion
from .rqm import DiskLimitFunction, RqmFunction, ZeroBoundaryFunction
from .wave import WaveSolution, build_solution

__version__ = "0.1.0"
