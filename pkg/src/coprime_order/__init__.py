"""Exact and floating-point proportions of permutations with order coprime to m."""

__version__ = "0.1.0"

from .arith import Modulus, count_x, count_y, make_modulus, moebius  # noqa: E402
from .engine import (  # noqa: E402
    Backend, NumericConfig, RhoSeries, constant_C, p_not_m, rho_at,
    rho_prime_closed_form, rho_series,
)
from .errors import DomainError, ResourceCapError, VerificationError  # noqa: E402

__all__ = [
    "__version__", "Modulus", "make_modulus", "moebius", "count_x", "count_y",
    "Backend", "NumericConfig", "RhoSeries", "rho_series", "rho_at",
    "rho_prime_closed_form", "p_not_m", "constant_C",
    "DomainError", "ResourceCapError", "VerificationError",
]
