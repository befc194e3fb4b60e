"""Numerical tolerances used in float mode.

Exact mode (int / Fraction scalars) never consults these. Float mode uses
pivot_eps to decide when a pivot or denominator counts as zero, and the
looser check tolerances when comparing two float results.
"""

from dataclasses import dataclass


@dataclass
class ToleranceConfig:
    pivot_eps: float = 1e-10
    weight_cross_tol: float = 1e-10
    remainder_tol: float = 1e-9


CONFIG = ToleranceConfig()
