"""Exact discrete and quadrature-based continuous Caputo-Fabrizio calculus.

The discrete layer works over :class:`fractions.Fraction` so identities are
checked with ``==``; the continuous layer uses adaptive quadrature.
"""

from .errors import (
    CFFracError,
    ConfigError,
    ConvergenceError,
    DomainError,
    OrderError,
    QuadratureError,
    TransformError,
)
from .grid import GridDomain, GridFunction, Order, q_reflect
from .discrete import (
    Side,
    caputo_riemann_gap,
    cf_sum_left,
    cf_sum_right,
    cfc_left,
    cfc_right,
    cfr_left,
    cfr_right,
)

__version__ = "0.1.0"

__all__ = [
    "CFFracError",
    "ConfigError",
    "ConvergenceError",
    "DomainError",
    "GridDomain",
    "GridFunction",
    "Order",
    "OrderError",
    "QuadratureError",
    "Side",
    "TransformError",
    "caputo_riemann_gap",
    "cf_sum_left",
    "cf_sum_right",
    "cfc_left",
    "cfc_right",
    "cfr_left",
    "cfr_right",
    "q_reflect",
]
