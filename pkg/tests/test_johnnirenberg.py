"""Exponential distribution and logarithmic rearrangement bounds."""

import math
import random
from fractions import Fraction

import pytest

from dyadicbmo import (DyadicFunction, InputError, JNConstants,
                       PreconditionError, bmo_dyadic_norm, distribution_above,
                       jn_abs_check, jn_check, logbound_check)
from conftest import random_function, random_nonneg


class TestConstants:
    def test_values(self):
        c1 = JNConstants(1)
        assert c1.b_scale == 1
        assert c1.b == pytest.approx(1 / math.e, rel=1e-12)
        assert c1.B == pytest.approx(math.e, rel=1e-12)
        c3 = JNConstants(3)
        assert c3.b_scale == Fraction(1, 4)
        assert c3.b == pytest.approx(1 / (4 * math.e), rel=1e-12)


class TestLogBound:
    def test_plus_minus_one(self):
        f = DyadicFunction(1, 1, [1, -1])
        lhs, rhs = logbound_check(f, Fraction(1, 2))
        assert lhs == 1
        assert rhs == pytest.approx(math.e * (1 + math.log(2)), rel=1e-12)
        assert float(lhs) <= rhs

    def test_zero_function(self):
        f = DyadicFunction(1, 1, [0, 0])
        lhs, rhs = logbound_check(f, Fraction(1, 2))
        assert lhs == 0
        assert rhs == 0.0

    def test_deep_spike(self):
        f = DyadicFunction(1, 2, [3, -1, -1, -1])
        lhs, rhs = logbound_check(f, Fraction(1, 4))
        assert lhs == 3
        # norm is 2, attained on the left half
        assert bmo_dyadic_norm(f) == 2
        assert rhs == pytest.approx(math.e * 2 * math.log(4 * math.e), rel=1e-12)
        assert float(lhs) <= rhs

    def test_rejects_nonzero_mean(self):
        with pytest.raises(PreconditionError):
            logbound_check(DyadicFunction(1, 1, [1, 0]), Fraction(1, 2))

    def test_rejects_bad_t(self):
        f = DyadicFunction(1, 1, [1, -1])
        with pytest.raises(InputError):
            logbound_check(f, 0)

    def test_holds_at_breakpoints_randomized(self):
        rng = random.Random(17)
        from dyadicbmo import rearrange_signed
        checks = 0
        while checks < 400:
            f = random_function(rng, rng.choice([1, 2, 3]), rng.randrange(3))
            f = f.shifted(-f.mean)
            gd = rearrange_signed(f)
            for t in gd.breakpoints[1:]:
                lhs, rhs = logbound_check(f, t)
                assert Fraction(lhs) <= Fraction(rhs) + Fraction(1, 10 ** 12)
                checks += 1


class TestJNCheck:
    def test_two_cells(self):
        f = DyadicFunction(1, 1, [1, 0])
        measure, bound = jn_check(f, Fraction(1, 4))
        assert measure == Fraction(1, 2)
        assert bound == pytest.approx(math.e * math.exp(-1 / (2 * math.e)),
                                      rel=1e-12)

    def test_spike(self):
        f = DyadicFunction(1, 2, [4, 0, 0, 0])
        measure, bound = jn_check(f, 2)
        assert measure == Fraction(1, 4)
        assert bound == pytest.approx(math.e * math.exp(-1 / math.e), rel=1e-12)

    def test_above_range_measure_zero(self):
        f = DyadicFunction(1, 2, [4, 0, 0, 0])
        measure, bound = jn_check(f, 4)
        assert measure == 0
        assert measure <= bound

    def test_constant_trivial(self):
        f = DyadicFunction(2, 1, [3, 3, 3, 3])
        measure, bound = jn_check(f, 1)
        assert measure == 0
        assert bound == 0.0

    def test_rejects_nonpositive_lambda(self):
        f = DyadicFunction(1, 1, [1, 0])
        with pytest.raises(InputError):
            jn_check(f, 0)

    def test_grid_randomized(self):
        rng = random.Random(23)
        tol = Fraction(1, 10 ** 12)
        for _ in range(120):
            n = rng.choice([1, 2, 3])
            depth = rng.randrange(0, {1: 5, 2: 3, 3: 2}[n] + 1)
            f = random_function(rng, n, depth)
            spread = max(f.cells) - min(f.cells)
            if spread == 0:
                continue
            prev_measure = None
            prev_bound = None
            for i in range(1, 33):
                lam = 2 * spread * Fraction(i, 32)
                measure, bound = jn_check(f, lam)
                assert Fraction(measure) <= Fraction(bound) + tol
                if prev_measure is not None:
                    assert measure <= prev_measure
                    assert bound < prev_bound
                prev_measure, prev_bound = measure, bound


class TestJNAbs:
    def test_spike(self):
        f = DyadicFunction(1, 2, [4, 0, 0, 0])
        measure, bound = jn_abs_check(f, Fraction(1, 2))
        assert measure == 1  # every cell deviates from the mean by > 1/2
        assert float(measure) <= bound

    def test_two_cells(self):
        f = DyadicFunction(1, 1, [1, 0])
        measure, bound = jn_abs_check(f, Fraction(1, 4))
        assert measure == 1
        assert bound == pytest.approx(math.e * math.exp(-1 / (2 * math.e)),
                                      rel=1e-12)

    def test_constant(self):
        f = DyadicFunction(1, 1, [2, 2])
        measure, bound = jn_abs_check(f, 1)
        assert measure == 0

    def test_rejects_signed(self):
        with pytest.raises(PreconditionError):
            jn_abs_check(DyadicFunction(1, 1, [1, -1]), 1)

    def test_decomposes_into_one_sided(self, rng):
        for _ in range(80):
            f = random_nonneg(rng, rng.choice([1, 2]), rng.randrange(3))
            spread = max(f.cells) - min(f.cells)
            if spread == 0:
                continue
            lam = spread * Fraction(rng.randrange(1, 9), 8)
            measure, _ = jn_abs_check(f, lam)
            up = distribution_above(f, lam, f.mean)
            down = distribution_above(f.scaled(-1), lam, -f.mean)
            assert measure == up + down

    def test_grid_randomized(self, rng):
        tol = Fraction(1, 10 ** 12)
        for _ in range(100):
            f = random_nonneg(rng, rng.choice([1, 2, 3]), rng.randrange(3))
            spread = max(f.cells) - min(f.cells)
            if spread == 0:
                continue
            for i in range(1, 33, 4):
                lam = 2 * spread * Fraction(i, 32)
                measure, bound = jn_abs_check(f, lam)
                assert Fraction(measure) <= Fraction(bound) + tol
