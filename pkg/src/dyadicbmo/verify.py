"""Aggregated per-function verification suites for every inequality checker.

Each suite re-validates one statement on the given function over
deterministic internal grids and reports pass/fail with failure witnesses.
Suites whose hypotheses the function does not meet (e.g. the power-decay
bounds when the modulus is out of range) report a vacuous pass with a note.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .dyadic import (bmo_dyadic_norm, every_cube, mean_oscillation,
                     one_sided_oscillation)
from .errors import InputError
from .gurov import (gr_membership, gr_profile, lq_tail_bound, solve_p,
                    theorem3_check, theorem4_bound, theorem5_check)
from .interval_bmo import interval_bmo_norm
from .johnnirenberg import jn_abs_check, jn_check, logbound_check
from .rearrangement import (hardy_average, hardy_gap_check,
                            interval_mean_oscillation, rearrange_abs,
                            rearrange_signed)
from .stopping import maximal_level_set, stopping_family, verify_stopping

SUITES = ("lemma21", "lemma22", "lemma23", "thm1", "thm2", "thm31",
          "remark31", "thm3", "thm4", "thm5", "cor1", "cz")

_TOL_TIGHT = Fraction(1, 10 ** 12)
_TOL_LOOSE = Fraction(1, 10 ** 9)


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    checks: int
    skipped: bool = False
    note: str = ""
    failures: tuple = ()


@dataclass(frozen=True)
class VerificationReport:
    results: tuple

    @property
    def passed(self):
        return all(r.passed for r in self.results)

    def to_obj(self):
        return {"passed": self.passed,
                "suites": [{"name": r.name, "passed": r.passed,
                            "checks": r.checks, "skipped": r.skipped,
                            "note": r.note, "failures": list(r.failures)}
                           for r in self.results]}


def _result(name, checks, failures, skipped=False, note=""):
    return SuiteResult(name=name, passed=not failures, checks=checks,
                       skipped=skipped, note=note,
                       failures=tuple(failures[:8]))


def _float_leq(lhs, rhs_float, tol):
    """Exact comparison lhs <= rhs + tol with a float right-hand side."""
    if not isinstance(lhs, Fraction):
        lhs = Fraction(float(lhs))  # high-precision lhs: float suffices here
    return lhs <= Fraction(rhs_float) + tol


def _lambda_grid(f, points=32):
    spread = max(f.cells) - min(f.cells)
    if spread == 0:
        return []
    return [2 * spread * Fraction(i, points) for i in range(1, points + 1)]


def _sampled_cubes(f, cap=512):
    cubes = list(every_cube(f))
    if len(cubes) <= cap:
        return cubes
    step = len(cubes) // cap + 1
    return cubes[::step]


def _suite_lemma21(f):
    failures = []
    checks = 0
    for q in _sampled_cubes(f):
        rep = mean_oscillation(f, q)
        above = one_sided_oscillation(f, q, "above")
        below = one_sided_oscillation(f, q, "below")
        checks += 1
        if not (above == below == rep.oscillation):
            failures.append(f"one-sided forms differ on {q}: "
                            f"{above} vs {below} vs {rep.oscillation}")
    return _result("lemma21", checks, failures)


def _matching_mean_endpoint(g, a, mu):
    """b > a with the mean of g over (a,b] equal to mu, or None.

    The defect H(b) = int_a^b g - mu (b - a) is piecewise linear in b, so
    each piece contributes at most one exact zero.
    """
    pa = g.integral_to(a)
    for lo, hi, v in g.pieces():
        if hi <= a:
            continue
        seg_lo = max(lo, a)
        h_lo = (g.integral_to(seg_lo) - pa) - mu * (seg_lo - a)
        if v == mu:
            if h_lo == 0 and hi > a:
                return hi  # flat stretch at the mean: extend through it
            continue
        b = seg_lo + h_lo / (mu - v)
        if a < b and seg_lo <= b <= hi:
            return b
    return None


def _suite_lemma22(f):
    g = rearrange_signed(f)
    mu = g.integral
    base = interval_mean_oscillation(g, 0, 1)
    failures = []
    checks = 0
    anchors = sorted({Fraction(i, 8) for i in range(8)}
                     | set(g.breakpoints[:-1]))
    for a in anchors:
        if a >= 1:
            continue
        b = _matching_mean_endpoint(g, a, mu)
        if b is None or not a < b <= 1:
            continue
        inner_mean = (g.integral_to(b) - g.integral_to(a)) / (b - a)
        if inner_mean != mu:
            failures.append(f"endpoint solve failed at a={a}: mean {inner_mean} != {mu}")
            continue
        checks += 1
        if interval_mean_oscillation(g, a, b) > base:
            failures.append(f"oscillation on [{a},{b}] exceeds the full interval's")
    if checks == 0:
        return _result("lemma22", 0, failures, skipped=True,
                       note="no matched-mean subinterval available")
    return _result("lemma22", checks, failures)


def _suite_lemma23(f):
    g = rearrange_signed(f)
    failures = []
    checks = 0
    for t in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1)):
        for gamma in (Fraction(3, 2), Fraction(2), Fraction(3)):
            lhs, rhs = hardy_gap_check(g, t, gamma)
            checks += 1
            if lhs > rhs:
                failures.append(f"gap bound fails at t={t}, gamma={gamma}: "
                                f"{lhs} > {rhs}")
    return _result("lemma23", checks, failures)


def _suite_thm1(f):
    norm = bmo_dyadic_norm(f)
    bound = interval_bmo_norm(rearrange_signed(f))
    cap = (1 << f.dim) * norm
    failures = []
    if bound.lower > cap:
        failures.append(f"certified lower bound {bound.lower} exceeds 2^n norm {cap}")
    if Fraction(bound.upper) > cap + _TOL_LOOSE:
        failures.append(f"certified upper bound {bound.upper} exceeds "
                        f"2^n norm {cap} + 1e-9")
    return _result("thm1", 2, failures)


def _suite_thm2(f):
    failures = []
    checks = 0
    grid = _lambda_grid(f)
    prev_measure = None
    for lam in grid:
        measure, bnd = jn_check(f, lam)
        checks += 1
        if not _float_leq(measure, bnd, _TOL_TIGHT):
            failures.append(f"distribution bound fails at lambda={lam}: "
                            f"{measure} > {bnd}")
        if prev_measure is not None and measure > prev_measure:
            failures.append(f"measure increased along the lambda grid at {lam}")
        prev_measure = measure
    if not grid:
        return _result("thm2", 0, [], skipped=True, note="constant function")
    return _result("thm2", checks, failures)


def _suite_thm31(f):
    g = f.shifted(-f.mean)
    gd = rearrange_signed(g)
    failures = []
    checks = 0
    for t in gd.breakpoints[1:]:
        lhs, rhs = logbound_check(g, t)
        checks += 1
        if not _float_leq(lhs, rhs, _TOL_TIGHT):
            failures.append(f"log bound fails at t={t}: {lhs} > {rhs}")
    return _result("thm31", checks, failures)


def _suite_remark31(f):
    h = f if f.is_nonnegative else f.abs()
    note = "" if f.is_nonnegative else "applied to |f|"
    failures = []
    if rearrange_signed(h) != rearrange_abs(h):
        failures.append("signed and absolute rearrangements differ for h >= 0")
    checks = 1
    for lam in _lambda_grid(h, points=8):
        measure, bnd = jn_abs_check(h, lam)
        checks += 1
        if not _float_leq(measure, bnd, _TOL_TIGHT):
            failures.append(f"two-sided bound fails at lambda={lam}: "
                            f"{measure} > {bnd}")
    return _result("remark31", checks, failures, note=note)


def _cell_aligned_grid(f, cap=48):
    total = len(f.cells)
    step = max(1, total // cap)
    return [Fraction(k, total) for k in range(step, total + 1, step)]


def _suite_thm3(f):
    h = f if f.is_nonnegative else f.abs()
    note = "" if f.is_nonnegative else "applied to |f|"
    if h.is_constant and h.cells[0] == 0:
        return _result("thm3", 0, [], skipped=True, note="identically zero")
    profile = gr_profile(h)
    failures = []
    checks = 0
    for t in _cell_aligned_grid(h):
        lhs, rhs = theorem3_check(h, t, profile=profile)
        checks += 1
        if lhs > rhs:
            failures.append(f"rearrangement-modulus bound fails at t={t}: "
                            f"{lhs} > {rhs}")
    return _result("thm3", checks, failures, note=note)


def _suite_thm4(f):
    h = f if f.is_nonnegative else f.abs()
    note = "" if f.is_nonnegative else "applied to |f|"
    if h.is_constant and h.cells[0] == 0:
        return _result("thm4", 0, [], skipped=True, note="identically zero")
    profile = gr_profile(h)
    failures = []
    checks = 0
    top = Fraction(1, 8 * (1 << h.dim))  # below the validity threshold 1/(2^n e^2)
    for j in range(1, 9):
        t = top * Fraction(j, 8)
        res = theorem4_bound(h, t, profile=profile)
        checks += 1
        if not _float_leq(res.lhs, res.rhs, _TOL_LOOSE):
            failures.append(f"exponential bound fails at t={t}: "
                            f"{res.lhs} > {res.rhs}")
    return _result("thm4", checks, failures, note=note)


def _modulus_in_range(h):
    return gr_membership(h) < Fraction(1, 1 << (h.dim - 1))


def _suite_thm5(f):
    h = f if f.is_nonnegative else f.abs()
    if not _modulus_in_range(h):
        return _result("thm5", 0, [], skipped=True,
                       note="modulus not below 2^(1-n)")
    failures = []
    checks = 0
    for t in _cell_aligned_grid(h, cap=16):
        lhs, rhs = theorem5_check(h, t)
        checks += 1
        if not _float_leq(lhs, rhs, _TOL_LOOSE):
            failures.append(f"power bound fails at t={t}: {lhs} > {rhs}")
    return _result("thm5", checks, failures)


def _suite_cor1(f):
    h = f if f.is_nonnegative else f.abs()
    if not _modulus_in_range(h):
        return _result("cor1", 0, [], skipped=True,
                       note="modulus not below 2^(1-n)")
    eps = gr_membership(h)
    p = solve_p(eps, h.dim).p if eps > 0 else None
    qs = [1]
    if p is not None and p > 1:
        qs.append(1 + (p - 1) / 2)
    failures = []
    checks = 0
    for q in qs:
        lq, bnd = lq_tail_bound(h, q)
        checks += 1
        if not _float_leq(lq, bnd, _TOL_LOOSE):
            failures.append(f"L^q tail bound fails at q={q}: {lq} > {bnd}")
    return _result("cor1", checks, failures)


def _cz_alphas(f):
    mean = f.mean
    values = sorted(set(f.cells))
    above = [mean]
    below = []
    for v in values:
        if v >= mean and v != mean:
            above.append(v)
        if v < mean:
            below.append(v)
    mids = [(a + b) / 2 for a, b in zip(values, values[1:])]
    above.extend(m for m in mids if m >= mean)
    below.extend(m for m in mids if m < mean)
    return sorted(set(above))[:8], sorted(set(below))[:8]


def _suite_cz(f):
    failures = []
    checks = 0
    above, below = _cz_alphas(f)
    prev = None
    for alpha in above:
        d = stopping_family(f, alpha, "above")
        rep = verify_stopping(d, f)
        checks += 1
        if not rep.passed:
            failures.append(f"structure checks fail at alpha={alpha}: "
                            f"{rep.failures[:2]}")
        if prev is not None and d.measure_E > prev:
            failures.append(f"|E| increased as alpha grew, at alpha={alpha}")
        prev = d.measure_E
    # the maximal operator averages |f|, so its level sets match the
    # stopping family of |f|
    h = f if f.is_nonnegative else f.abs()
    for alpha in _cz_alphas(h)[0]:
        d = stopping_family(h, alpha, "above")
        checks += 1
        if maximal_level_set(h, alpha) != d.measure_E:
            failures.append(f"maximal-function level set disagrees at alpha={alpha}")
    for alpha in below:
        d = stopping_family(f, alpha, "below")
        rep = verify_stopping(d, f)
        checks += 1
        if not rep.passed:
            failures.append(f"below-direction checks fail at alpha={alpha}: "
                            f"{rep.failures[:2]}")
    gd = rearrange_signed(f)
    for t in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1)):
        alpha = hardy_average(gd, t)
        d = stopping_family(f, alpha, "above")
        checks += 1
        if d.measure_E > t:
            failures.append(f"|E| = {d.measure_E} exceeds t = {t} at the "
                            f"matched threshold")
    return _result("cz", checks, failures)


_RUNNERS = {
    "lemma21": _suite_lemma21,
    "lemma22": _suite_lemma22,
    "lemma23": _suite_lemma23,
    "thm1": _suite_thm1,
    "thm2": _suite_thm2,
    "thm31": _suite_thm31,
    "remark31": _suite_remark31,
    "thm3": _suite_thm3,
    "thm4": _suite_thm4,
    "thm5": _suite_thm5,
    "cor1": _suite_cor1,
    "cz": _suite_cz,
}


def verify_all(f, suites=None):
    """Run the named suites (default: all) on one function."""
    if suites is None:
        suites = list(SUITES)
    unknown = [s for s in suites if s not in _RUNNERS]
    if unknown:
        raise InputError(f"unknown suite names: {', '.join(unknown)}; "
                         f"known: {', '.join(SUITES)}")
    results = [_RUNNERS[s](f) for s in suites]
    return VerificationReport(results=tuple(results))
