"""Scalar conventions.

A scalar is int, Fraction, or float. Arithmetic mode is inferred from type:
anything that is not a float is exact. Mixing a float into an exact
computation silently demotes it to float mode, which is intended.

Strings from measure specs parse exactly: "3", "-1/2", "0.25" all become
Fractions (the decimal form is exact, not binary-rounded). Serialization
writes lowest-terms "p/q", integers without the "/1".
"""

from fractions import Fraction

from .config import CONFIG

Scalar = int | Fraction | float


def parse_scalar(text):
    """Parse a spec string (or passthrough number) into an exact scalar."""
    if isinstance(text, (int, Fraction)):
        return _canonical(Fraction(text))
    if isinstance(text, float):
        return text
    return _canonical(Fraction(str(text).strip()))


def _canonical(q: Fraction):
    return int(q) if q.denominator == 1 else q


def format_scalar(x) -> str:
    """Render a scalar for JSON output: "p/q" in lowest terms, or repr for floats."""
    if isinstance(x, float):
        return repr(x)
    q = Fraction(x)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def is_exact(x) -> bool:
    return not isinstance(x, float)


def is_zero(x, eps=None) -> bool:
    """Zero test honoring the mode: exact equality, or |x| < eps for floats."""
    if isinstance(x, float):
        return abs(x) < (CONFIG.pivot_eps if eps is None else eps)
    return x == 0


def to_float(x) -> float:
    return float(x)
