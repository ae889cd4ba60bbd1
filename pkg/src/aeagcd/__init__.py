"""Big-integer half-GCD and GCD with windowed most-significant-first updates."""

from .gcd_engine import (
    GcdOutcome,
    binary_gcd,
    euclid_gcd,
    ext_euclid,
    gcd_aea,
    lehmer_gcd,
    verify_transform,
)
from .aea_halfgcd import HalfGcdResult, TraceEvent, aea
from .limb_view import LimbBase
from .mat2 import Mat2

__version__ = "0.1.0"

__all__ = [
    "GcdOutcome",
    "HalfGcdResult",
    "LimbBase",
    "Mat2",
    "TraceEvent",
    "aea",
    "binary_gcd",
    "euclid_gcd",
    "ext_euclid",
    "gcd_aea",
    "lehmer_gcd",
    "verify_transform",
    "__version__",
]
