"""Certified numerics for a two-paraboloid sharp restriction inequality.

The package splits into a rigorous core (outward-rounded interval
arithmetic, enclosure quadrature, certified tail bounds) and an exact
symbolic layer for the Gaussian symmetry algebra, glued together by a
report-producing command line tool.
"""

from .interval import Interval, DomainError, DivisionByZeroInterval
from .special import Exponents, UnsupportedArgument

__version__ = "0.1.0"

__all__ = [
    "Interval",
    "DomainError",
    "DivisionByZeroInterval",
    "Exponents",
    "UnsupportedArgument",
    "__version__",
]
