"""Generators, the aggregated verification suites, and fault injection."""

from fractions import Fraction

import pytest

import dyadicbmo.verify as verify_mod
from dyadicbmo import (DyadicFunction, GenerationError, GeneratorSpec,
                       InputError, generate, gr_membership, verify_all)
from conftest import random_function


class TestGenerators:
    def test_uniform_shape_and_range(self):
        spec = GeneratorSpec(kind="uniform-cells", dim=1, depth=2, seed=1)
        f = generate(spec)
        assert f.dim == 1 and f.depth == 2 and len(f.cells) == 4
        assert all(-8 <= v <= 8 for v in f.cells)

    def test_deterministic(self):
        spec = GeneratorSpec(kind="uniform-cells", dim=2, depth=2, seed=42)
        assert generate(spec) == generate(spec)
        other = GeneratorSpec(kind="uniform-cells", dim=2, depth=2, seed=43)
        assert generate(other) != generate(spec)

    def test_monotone(self):
        f = generate(GeneratorSpec(kind="monotone-1d", dim=1, depth=3, seed=5))
        assert all(a >= b for a, b in zip(f.cells, f.cells[1:]))

    def test_monotone_requires_1d(self):
        with pytest.raises(InputError):
            GeneratorSpec(kind="monotone-1d", dim=2, depth=1)

    def test_cascade_meets_target_exactly(self):
        for seed in range(8):
            spec = GeneratorSpec(kind="cascade-gr", dim=2, depth=2, seed=seed,
                                 target_eps=Fraction(1, 8))
            f = generate(spec)
            assert gr_membership(f) <= Fraction(1, 8)
            assert all(v > 0 for v in f.cells)

    def test_cascade_explicit_multipliers(self):
        spec = GeneratorSpec(kind="cascade-gr", dim=1, depth=2, seed=9,
                             target_eps=Fraction(1, 2),
                             multipliers=(Fraction(7, 8), 1, Fraction(9, 8)))
        f = generate(spec)
        assert gr_membership(f) <= Fraction(1, 2)
        assert all(v > 0 for v in f.cells)

    def test_cascade_infeasible_target_fails_loudly(self):
        # pinned aggressive multipliers, tiny target, seed whose draws never
        # coincide: all retries produce a modulus far above the target
        spec = GeneratorSpec(kind="cascade-gr", dim=1, depth=1, seed=25,
                             target_eps=Fraction(1, 10 ** 6),
                             multipliers=(Fraction(1, 2), Fraction(3, 2)),
                             cascade_retries=4)
        with pytest.raises(GenerationError):
            generate(spec)

    def test_unknown_kind_rejected(self):
        with pytest.raises(InputError):
            GeneratorSpec(kind="bogus", dim=1, depth=1)


class TestVerifyAll:
    def test_spike_all_pass(self):
        f = DyadicFunction(1, 2, [4, 0, 0, 0])
        report = verify_all(f)
        assert report.passed
        names = [r.name for r in report.results]
        assert names == list(verify_mod.SUITES)
        # the spike's modulus is 3/2 >= 1, so the power-decay suites skip
        by_name = {r.name: r for r in report.results}
        assert by_name["thm5"].skipped
        assert by_name["cor1"].skipped

    def test_cascade_runs_power_suites(self):
        f = generate(GeneratorSpec(kind="cascade-gr", dim=2, depth=2, seed=3,
                                   target_eps=Fraction(1, 8)))
        report = verify_all(f, ["thm5", "cor1"])
        assert report.passed
        assert all(not r.skipped for r in report.results)

    def test_constant_vacuous(self):
        f = DyadicFunction(1, 1, [5, 5])
        report = verify_all(f)
        assert report.passed  # trivial/vacuous passes, no rejections

    def test_random_signed_functions_pass(self, rng):
        for _ in range(10):
            f = random_function(rng, rng.choice([1, 2]), rng.randrange(3))
            report = verify_all(f)
            assert report.passed, [
                (r.name, r.failures) for r in report.results if not r.passed]

    def test_unknown_suite_rejected(self):
        f = DyadicFunction(1, 1, [1, 0])
        with pytest.raises(InputError):
            verify_all(f, ["thm1", "thm99"])

    def test_subset_selection(self):
        f = DyadicFunction(1, 1, [1, 0])
        report = verify_all(f, ["lemma21", "thm2"])
        assert [r.name for r in report.results] == ["lemma21", "thm2"]

    def test_fault_injection_reports_witness(self, monkeypatch):
        # corrupt one checker: verification must fail with a witness
        f = DyadicFunction(1, 2, [4, 0, 0, 0])

        def corrupted(fn, lam):
            measure, bound = real_jn(fn, lam)
            return measure + 1, bound

        real_jn = verify_mod.jn_check
        monkeypatch.setattr(verify_mod, "jn_check", corrupted)
        report = verify_all(f, ["thm2"])
        assert not report.passed
        assert report.results[0].failures
        assert "lambda" in report.results[0].failures[0]

    def test_to_obj_shape(self):
        f = DyadicFunction(1, 1, [1, 0])
        obj = verify_all(f, ["lemma21"]).to_obj()
        assert obj["passed"] is True
        assert obj["suites"][0]["name"] == "lemma21"
        assert obj["suites"][0]["checks"] > 0
