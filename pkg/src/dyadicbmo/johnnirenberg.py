"""Exponential distribution bounds governed by the dyadic BMO norm.

The decay constant is b = 1/(2^(n-1) e) with leading factor B = e, the pair
produced by iterating the running-average gap inequality at the optimal
ratio e.  Bounds are evaluated in interval arithmetic and reported as upper
endpoints, so a failed comparison is never a rounding artifact of the bound
side.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .dyadic import bmo_dyadic_norm, distribution_above
from .errors import InputError, PreconditionError
from .highprec import IV_E, iv, iv_from_fraction, upper_float
from .rearrangement import rearrange_signed


@dataclass(frozen=True)
class JNConstants:
    """b = b_scale / e with b_scale = 2^(1-n); B = e."""

    n: int

    @property
    def b_scale(self):
        return Fraction(1, 1 << (self.n - 1))

    @property
    def b(self):
        return float((iv_from_fraction(self.b_scale) / IV_E).mid)

    @property
    def B(self):
        return float(IV_E.mid)


def _exp_bound(n, lam, norm):
    """Upper endpoint of e * exp(-lam / (2^(n-1) e norm))."""
    lam_iv = iv_from_fraction(lam)
    norm_iv = iv_from_fraction(norm)
    expo = -lam_iv / (iv.mpf(1 << (n - 1)) * IV_E * norm_iv)
    return upper_float(IV_E * iv.exp(expo))


def logbound_check(f, t):
    """Signed-rearrangement value against the logarithmic bound.

    Requires exact zero mean.  lhs = f_d(t); rhs = 2^(n-1) e ||f|| ln(e/t),
    upward rounded.  The caller asserts lhs <= rhs.
    """
    if f.mean != 0:
        raise PreconditionError(
            f"requires exact zero mean; got {f.mean} (subtract the average first)")
    t = Fraction(t)
    if not 0 < t <= 1:
        raise InputError(f"t must lie in (0,1], got {t}")
    lhs = rearrange_signed(f).value_at(t)
    norm = bmo_dyadic_norm(f)
    if norm == 0:
        return lhs, 0.0
    scale = iv.mpf(1 << (f.dim - 1)) * IV_E * iv_from_fraction(norm)
    rhs = scale * (iv.mpf(1) - iv.log(iv_from_fraction(t)))
    return lhs, upper_float(rhs)


def jn_check(f, lam):
    """Measure of {f - f_Q0 > lam} against B exp(-b lam / ||f||).

    Zero-norm functions are constant, so the measure is 0 and the bound is
    reported as its limit 0 (trivial pass).
    """
    lam = Fraction(lam)
    if lam <= 0:
        raise InputError(f"lambda must be positive, got {lam}")
    norm = bmo_dyadic_norm(f)
    measure = distribution_above(f, lam, f.mean)
    if norm == 0:
        return measure, 0.0
    return measure, _exp_bound(f.dim, lam, norm)


def jn_abs_check(f, lam):
    """Two-sided variant: measure of {|f - f_Q0| > lam}, for nonnegative f."""
    if not f.is_nonnegative:
        raise PreconditionError("requires a nonnegative function")
    lam = Fraction(lam)
    if lam <= 0:
        raise InputError(f"lambda must be positive, got {lam}")
    norm = bmo_dyadic_norm(f)
    center = f.mean
    upper = distribution_above(f, lam, center)
    lower = distribution_above(f.scaled(-1), lam, -center)
    measure = upper + lower
    if norm == 0:
        return measure, 0.0
    return measure, _exp_bound(f.dim, lam, norm)
