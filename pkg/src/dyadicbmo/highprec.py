"""Certified transcendental evaluation via interval arithmetic.

All theorem right-hand sides involving e, log and fractional powers are
computed as mpmath intervals at 160-bit precision; a bound reported as a
float is the upper interval endpoint nudged one ulp upward, so it can only
err on the generous side.  Interval widths here are ~1e-45, far below every
assertion tolerance in the package.
"""

from __future__ import annotations

import math
from fractions import Fraction

from mpmath import iv, mp

iv.prec = 160
mp.prec = 160

IV_ONE = iv.mpf(1)
IV_E = iv.exp(IV_ONE)


def iv_from_fraction(x):
    x = Fraction(x)
    return iv.mpf(x.numerator) / iv.mpf(x.denominator)


def iv_max(a, b):
    lo = a.a if a.a > b.a else b.a
    hi = a.b if a.b > b.b else b.b
    return iv.mpf([lo, hi])


def iv_min(a, b):
    lo = a.a if a.a < b.a else b.a
    hi = a.b if a.b < b.b else b.b
    return iv.mpf([lo, hi])


def iv_pow(base, expo):
    """base**expo for a positive interval base and arbitrary interval expo."""
    return iv.exp(iv.log(base) * expo)


def upper_float(x):
    """Float upper bound of an interval (or mpf), rounded away from zero risk."""
    hi = float(x.b if hasattr(x, "b") else x)
    return math.nextafter(hi, math.inf)


def lower_float(x):
    lo = float(x.a if hasattr(x, "a") else x)
    return math.nextafter(lo, -math.inf)


def midpoint_float(x):
    if hasattr(x, "mid"):
        return float(x.mid)
    return float(x)
