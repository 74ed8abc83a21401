"""Step functions on (0,1]: rearrangements, Hardy averages, interval oscillations.

The nonincreasing rearrangement of a dyadic function sorts its cell values
(signed variant keeps signs, absolute variant rearranges |f|); both are exact
and equimeasurable with the input by construction.
"""

from __future__ import annotations

from bisect import bisect_left
from fractions import Fraction

from .dyadic import DyadicFunction
from .errors import InputError, PreconditionError


class StepFunction1D:
    """Left-continuous step function on (0,1].

    breakpoints 0 = t_0 < t_1 < ... < t_m = 1; value v_i on (t_{i-1}, t_i].
    """

    def __init__(self, breakpoints, values):
        bps = tuple(Fraction(t) for t in breakpoints)
        vals = tuple(Fraction(v) for v in values)
        if len(bps) < 2 or len(vals) != len(bps) - 1:
            raise InputError("need m+1 breakpoints for m piece values")
        if bps[0] != 0 or bps[-1] != 1:
            raise InputError("breakpoints must start at 0 and end at 1")
        if any(a >= b for a, b in zip(bps, bps[1:])):
            raise InputError("breakpoints must be strictly increasing")
        self.breakpoints = bps
        self.values = vals
        self._prefix = None

    def __eq__(self, other):
        return (isinstance(other, StepFunction1D)
                and self.breakpoints == other.breakpoints
                and self.values == other.values)

    def __repr__(self):
        return f"StepFunction1D(pieces={len(self.values)})"

    @property
    def prefix_integrals(self):
        """P[i] = integral of g over (0, t_i]."""
        if self._prefix is None:
            acc = [Fraction(0)]
            for (a, b), v in zip(zip(self.breakpoints, self.breakpoints[1:]),
                                 self.values):
                acc.append(acc[-1] + v * (b - a))
            self._prefix = tuple(acc)
        return self._prefix

    @property
    def integral(self):
        return self.prefix_integrals[-1]

    @property
    def is_nonincreasing(self):
        return all(a >= b for a, b in zip(self.values, self.values[1:]))

    @property
    def is_nondecreasing(self):
        return all(a <= b for a, b in zip(self.values, self.values[1:]))

    def value_at(self, t):
        """g(t) for t in (0,1], honoring left continuity."""
        t = Fraction(t)
        if not 0 < t <= 1:
            raise InputError(f"t must lie in (0,1], got {t}")
        i = bisect_left(self.breakpoints, t)
        return self.values[i - 1]

    def integral_to(self, t):
        """Exact integral of g over (0, t]."""
        t = Fraction(t)
        if not 0 <= t <= 1:
            raise InputError(f"t must lie in [0,1], got {t}")
        if t == 0:
            return Fraction(0)
        i = bisect_left(self.breakpoints, t)
        return self.prefix_integrals[i - 1] + self.values[i - 1] * (t - self.breakpoints[i - 1])

    def pieces(self):
        return zip(self.breakpoints, self.breakpoints[1:], self.values)

    def merged(self):
        """Copy with equal adjacent values merged into single pieces."""
        bps = [Fraction(0)]
        vals = []
        for _, b, v in self.pieces():
            if vals and vals[-1] == v:
                bps[-1] = b
            else:
                vals.append(v)
                bps.append(b)
        return StepFunction1D(bps, vals)

    def negated(self):
        return StepFunction1D(self.breakpoints, [-v for v in self.values])

    def reflected(self):
        """g(1 - t) as a step function (piece order and breakpoints mirrored)."""
        bps = [1 - t for t in reversed(self.breakpoints)]
        return StepFunction1D(bps, list(reversed(self.values)))


def _sorted_mass_pairs(values, mass):
    """(value, total mass) pairs in nonincreasing value order, ties merged."""
    out = []
    for v in sorted(values, reverse=True):
        if out and out[-1][0] == v:
            out[-1][1] += mass
        else:
            out.append([v, mass])
    return out


def rearrange_signed(f):
    """Nonincreasing left-continuous step function equimeasurable with f."""
    if "rearr_signed" in f._cache:
        return f._cache["rearr_signed"]
    mass = Fraction(1, len(f.cells))
    pairs = _sorted_mass_pairs(f.cells, mass)
    bps = [Fraction(0)]
    vals = []
    for v, m in pairs:
        vals.append(v)
        bps.append(bps[-1] + m)
    g = StepFunction1D(bps, vals)
    f._cache["rearr_signed"] = g
    return g


def rearrange_abs(f):
    """Nonincreasing rearrangement of |f| (for f >= 0 identical to the signed one)."""
    if "rearr_abs" in f._cache:
        return f._cache["rearr_abs"]
    g = rearrange_signed(f.abs())
    f._cache["rearr_abs"] = g
    return g


def supinf_formula(f, t):
    """Largest value c such that |f| >= c on some set of measure exactly t.

    Brute-force form: for t = k cells' worth of mass the optimal set is the
    union of the k cells of largest |f|, so the answer is the k-th largest
    absolute cell value.  Restricted to cell-aligned t.
    """
    t = Fraction(t)
    total = len(f.cells)
    k = t * total
    if k.denominator != 1 or not 1 <= k <= total:
        raise InputError(
            f"t must be a multiple of 1/{total} in (0,1], got {t}")
    ordered = sorted((abs(v) for v in f.cells), reverse=True)
    return ordered[int(k) - 1]


def hardy_average(g, t):
    """(1/t) * integral of g over (0,t]."""
    t = Fraction(t)
    if not 0 < t <= 1:
        raise InputError(f"t must lie in (0,1], got {t}")
    return g.integral_to(t) / t


def interval_mean_oscillation(g, a, b):
    """Exact mean oscillation of g over the interval [a,b] of (0,1]."""
    a, b = Fraction(a), Fraction(b)
    if not 0 <= a < b <= 1:
        raise InputError(f"need 0 <= a < b <= 1, got [{a}, {b}]")
    mu = (g.integral_to(b) - g.integral_to(a)) / (b - a)
    acc = Fraction(0)
    for lo, hi, v in g.pieces():
        olo, ohi = max(lo, a), min(hi, b)
        if olo < ohi:
            acc += abs(v - mu) * (ohi - olo)
    return acc / (b - a)


def hardy_gap_check(g, t, gamma):
    """Both sides of the running-average gap inequality for nonincreasing g.

    lhs = F(t/gamma) - F(t), rhs = (gamma/2) * (1/t) * int_0^t |g - F(t)|,
    where F is the Hardy average of g.  Exact; the caller asserts lhs <= rhs.
    """
    if not g.is_nonincreasing:
        raise PreconditionError("hardy_gap_check requires a nonincreasing step function")
    t, gamma = Fraction(t), Fraction(gamma)
    if not 0 < t <= 1:
        raise InputError(f"t must lie in (0,1], got {t}")
    if gamma <= 1:
        raise PreconditionError(f"gamma must exceed 1, got {gamma}")
    ft = hardy_average(g, t)
    lhs = hardy_average(g, t / gamma) - ft
    acc = Fraction(0)
    for lo, hi, v in g.pieces():
        olo, ohi = lo, min(hi, t)
        if olo < ohi:
            acc += abs(v - ft) * (ohi - olo)
    rhs = gamma / 2 * acc / t
    return lhs, rhs


def value_mass_distribution(obj):
    """Map value -> total measure carried, for a DyadicFunction or StepFunction1D."""
    dist = {}
    if isinstance(obj, DyadicFunction):
        mass = Fraction(1, len(obj.cells))
        for v in obj.cells:
            dist[v] = dist.get(v, Fraction(0)) + mass
    else:
        for lo, hi, v in obj.pieces():
            dist[v] = dist.get(v, Fraction(0)) + (hi - lo)
    return {v: m for v, m in dist.items() if m != 0}
