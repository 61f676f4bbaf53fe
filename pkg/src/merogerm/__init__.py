"""Exact invariants of meromorphic plane germs f/g.

Log resolutions by point blow-ups, multiplier ideals and jumping numbers,
candidate Bernstein-Sato roots and zeta poles, and a symbolic engine for the
twisted D-modules carrying ``f^s / g^(s+alpha)``.
"""

__version__ = "0.1.0"

from .algebra import MPoly, SPoly  # noqa: E402
from .parser import MeromorphicGerm, ParseError, parse_germ, parse_operator, parse_poly  # noqa: E402
from .resolution import (  # noqa: E402
    IterationCap,
    UnsupportedExtension,
    classify,
    log_resolution,
    ord_along,
    resolve_pair,
    separate_dicritical,
)

__all__ = [
    "MPoly",
    "SPoly",
    "MeromorphicGerm",
    "ParseError",
    "parse_germ",
    "parse_operator",
    "parse_poly",
    "IterationCap",
    "UnsupportedExtension",
    "classify",
    "log_resolution",
    "ord_along",
    "resolve_pair",
    "separate_dicritical",
]
