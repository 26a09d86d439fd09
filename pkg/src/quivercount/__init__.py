"""Exact counts of semistable quiver representations over finite fields."""
from .arith import Q, QPoly, RatFunc, to_polynomial
from .moduli import CountJob, a_ss, a_stable, kac_polynomial, positivity_scan, verify_exp_identity, verify_form_equality
from .partitions import Partition
from .quiver import ConfigError, Quiver, Stability
from .series import TwistConvention, TruncatedSeries

__version__ = "0.1.0"

__all__ = [
    "Q",
    "QPoly",
    "RatFunc",
    "to_polynomial",
    "CountJob",
    "a_ss",
    "a_stable",
    "kac_polynomial",
    "positivity_scan",
    "verify_exp_identity",
    "verify_form_equality",
    "Partition",
    "ConfigError",
    "Quiver",
    "Stability",
    "TwistConvention",
    "TruncatedSeries",
]
