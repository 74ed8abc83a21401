"""CLI subcommands, file formats, round trips, exit codes."""

import json
from fractions import Fraction

import pytest

from dyadicbmo import DyadicFunction, InputError, StepFunction1D
from dyadicbmo.cli import main
from dyadicbmo.formats import (canonical_json, format_rational,
                               function_from_obj, function_to_obj,
                               parse_rational, step_from_obj, step_to_obj)


@pytest.fixture
def spike_file(tmp_path):
    path = tmp_path / "spike.json"
    path.write_text(canonical_json(
        function_to_obj(DyadicFunction(1, 2, [4, 0, 0, 0]))))
    return str(path)


class TestRationals:
    def test_parse_forms(self):
        assert parse_rational(3) == 3
        assert parse_rational("3") == 3
        assert parse_rational("-7/4") == Fraction(-7, 4)
        assert parse_rational(" 1/3 ") == Fraction(1, 3)

    def test_parse_rejects(self):
        for bad in ("x", "1/0", 1.5, None, True):
            with pytest.raises(InputError):
                parse_rational(bad)

    def test_format_lowest_terms(self):
        assert format_rational(Fraction(4, 2)) == 2
        assert format_rational(Fraction(-6, 4)) == "-3/2"


class TestRoundTrip:
    def test_function_bit_identical(self):
        f = DyadicFunction(2, 1, [Fraction(1, 3), -2, 0, Fraction(22, 7)])
        text = canonical_json(function_to_obj(f))
        f2 = function_from_obj(json.loads(text))
        assert f2 == f
        assert canonical_json(function_to_obj(f2)) == text

    def test_step_bit_identical(self):
        g = StepFunction1D([0, Fraction(1, 3), 1], [Fraction(5, 2), -1])
        text = canonical_json(step_to_obj(g))
        g2 = step_from_obj(json.loads(text))
        assert g2 == g
        assert canonical_json(step_to_obj(g2)) == text

    def test_malformed_rejected(self):
        with pytest.raises(InputError):
            function_from_obj({"n": 1, "values": [1, 2]})
        with pytest.raises(InputError):
            function_from_obj({"n": 1, "level": 1, "values": [1]})
        with pytest.raises(InputError):
            step_from_obj({"breakpoints": [0, 1]})


class TestCommands:
    def test_norm(self, spike_file, capsys):
        assert main(["norm", "--input", spike_file]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["bmo_dyadic_norm"] == 2
        assert out["argmax_cube"] == {"level": 1, "index": [0]}

    def test_rearrange_with_samples(self, spike_file, tmp_path, capsys):
        csv_path = tmp_path / "samples.csv"
        assert main(["rearrange", "--input", spike_file, "--samples", "4",
                     "--samples-output", str(csv_path)]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["values"] == [4, 0]
        text = csv_path.read_text()
        assert text.splitlines()[0] == "t,hardy_average,t_exact,hardy_average_exact"
        assert "\r" not in text
        assert text.endswith("\n")

    def test_interval_bmo(self, tmp_path, capsys):
        path = tmp_path / "g.json"
        g = StepFunction1D([0, Fraction(1, 4), 1], [1, 0])
        path.write_text(canonical_json(step_to_obj(g)))
        assert main(["interval-bmo", "--input", str(path)]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["lower"] == "1/2"
        assert out["tol_met"] is True

    def test_cz(self, spike_file, capsys):
        assert main(["cz", "--input", spike_file, "--alpha", "2",
                     "--direction", "above"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["stopping_cubes"] == [{"level": 2, "index": [0]}]
        assert out["parent_cover"] == [{"level": 1, "index": [0]}]
        assert out["measure_E"] == "1/4"
        assert out["verification"]["passed"] is True

    def test_maximal(self, spike_file, capsys):
        assert main(["maximal", "--input", spike_file]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["values"] == [4, 2, 1, 1]

    def test_jn_csv(self, spike_file, tmp_path):
        out_path = tmp_path / "jn.csv"
        assert main(["jn", "--input", spike_file, "--lambda-grid", "8",
                     "--output", str(out_path)]) == 0
        lines = out_path.read_text().splitlines()
        assert lines[0] == "lambda,measure,bound,pass"
        assert len(lines) == 9
        assert all(line.split(",")[3] == "1" for line in lines[1:])

    def test_gr_csv(self, spike_file, tmp_path, capsys):
        out_path = tmp_path / "gr.csv"
        assert main(["gr", "--input", spike_file, "--output", str(out_path)]) == 0
        lines = out_path.read_text().splitlines()
        assert lines[0] == "sigma,sigma_exact,v"
        assert lines[-1].endswith(",3/2")  # v at sigma = 1
        assert "epsilon = 3/2" in capsys.readouterr().out

    def test_gr_rejects_signed(self, tmp_path, capsys):
        path = tmp_path / "f.json"
        path.write_text(canonical_json(
            function_to_obj(DyadicFunction(1, 1, [1, -1]))))
        assert main(["gr", "--input", str(path)]) == 2

    def test_p_root(self, capsys):
        assert main(["p-root", "--n", "1", "--eps", "1/4"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert abs(out["p"] - 2) < 1e-12
        assert out["residual"] <= 1e-12

    def test_p_root_out_of_range(self, capsys):
        assert main(["p-root", "--n", "1", "--eps", "3"]) == 2

    def test_check_pass(self, spike_file, capsys):
        assert main(["check", "--input", spike_file,
                     "--suite", "lemma21,thm1,thm2,cz"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["passed"] is True
        assert [s["name"] for s in out["suites"]] == ["lemma21", "thm1",
                                                      "thm2", "cz"]

    def test_check_unknown_suite(self, spike_file):
        assert main(["check", "--input", spike_file, "--suite", "nope"]) == 2

    def test_check_failure_exit_code(self, spike_file, monkeypatch, capsys):
        import dyadicbmo.verify as verify_mod
        real = verify_mod.jn_check

        def corrupted(fn, lam):
            m, b = real(fn, lam)
            return m + 1, b

        monkeypatch.setattr(verify_mod, "jn_check", corrupted)
        assert main(["check", "--input", spike_file, "--suite", "thm2"]) == 1

    def test_generate_roundtrip(self, tmp_path, capsys):
        out_path = tmp_path / "gen.json"
        assert main(["generate", "--kind", "cascade-gr", "--n", "2",
                     "--level", "2", "--seed", "3", "--target-eps", "1/8",
                     "--output", str(out_path)]) == 0
        f = function_from_obj(json.loads(out_path.read_text()))
        assert f.dim == 2 and f.depth == 2
        from dyadicbmo import gr_membership
        assert gr_membership(f) <= Fraction(1, 8)

    def test_generate_deterministic(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        for path in (a, b):
            assert main(["generate", "--kind", "uniform-cells", "--n", "1",
                         "--level", "3", "--seed", "11",
                         "--output", str(path)]) == 0
        assert a.read_text() == b.read_text()

    def test_search_small(self, tmp_path, capsys):
        out_path = tmp_path / "res.json"
        best_path = tmp_path / "best.json"
        assert main(["search", "--n", "1", "--level", "1", "--restarts", "2",
                     "--iters", "25", "--seed", "4", "--output", str(out_path),
                     "--function-output", str(best_path)]) == 0
        res = json.loads(out_path.read_text())
        assert res["best_score"] <= res["hard_cap"] == 2.0
        best = function_from_obj(json.loads(best_path.read_text()))
        assert best.dim == 1 and best.depth == 1

    def test_missing_input(self, capsys):
        assert main(["norm"]) == 2
        assert "error:" in capsys.readouterr().err

    def test_bad_json_file(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text("{nope")
        assert main(["norm", "--input", str(path)]) == 2
