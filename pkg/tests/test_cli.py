import csv
import io
import json
from fractions import Fraction as F

import pytest

from app import cli
from app.errors import IndistinguishableMaximaError


def run_json(capsys, *argv):
    code = cli.run([*argv, "--format", "json"])
    out = capsys.readouterr().out
    assert code == 0
    return json.loads(out)


@pytest.mark.parametrize("m, n_star", [("1", 2000), ("2", 775)])
def test_plan_reproduces_poll_sizes(capsys, m, n_star):
    payload = run_json(capsys, "plan", "--eps", "1/20", "--delta", "1/20", "--m", m)
    assert payload["command"] == "plan"
    assert payload["results"]["n_star"] == n_star


def test_plan_accepts_decimal_literals(capsys):
    payload = run_json(capsys, "plan", "--eps", "0.05", "--delta", "0.05", "--m", "2")
    assert payload["inputs"]["epsilon"] == "1/20"
    assert payload["results"]["n_star"] == 775


def test_plan_coupled(capsys):
    payload = run_json(capsys, "plan", "--eps", "1/20", "--coupled", "--m-cap", "2")
    assert payload["results"]["n_star"] == 775
    assert payload["inputs"]["delta"] == "1/20"


def test_plan_without_delta_is_rejected(capsys):
    assert cli.run(["plan", "--eps", "1/20"]) == 2
    assert "error:" in capsys.readouterr().err


def test_plan_m_and_m_cap_are_exclusive(capsys):
    assert cli.run(["plan", "--eps", "1/20", "--delta", "1/20", "--m", "1", "--m-cap", "3"]) == 2


def test_moment_recurrence(capsys):
    payload = run_json(capsys, "moment", "--n", "3", "--m", "3", "--method", "recurrence")
    assert payload["results"]["value"] == "183/64"
    assert payload["decimals"]["value"] == "2.859375000000"


def test_moment_methods_agree(capsys):
    values = set()
    for method in ("composition", "binomsum", "recurrence", "bruteforce", "general"):
        payload = run_json(capsys, "moment", "--n", "5", "--m", "3", "--method", method)
        values.add(payload["results"]["value"])
    assert len(values) == 1


def test_moment_general_p(capsys):
    payload = run_json(capsys, "moment", "--n", "1", "--m", "2", "--p", "1/3", "--method", "general")
    assert payload["results"]["value"] == "2/27"


def test_bruteforce_cap_exit_code(capsys):
    assert cli.run(["moment", "--n", "21", "--m", "1", "--method", "bruteforce"]) == 3
    assert "capped" in capsys.readouterr().err


def test_bound_rejects_zero_eps(capsys):
    assert cli.run(["bound", "--n", "10", "--eps", "0", "--m", "1"]) == 2


def test_bound(capsys):
    payload = run_json(capsys, "bound", "--n", "775", "--eps", "1/20", "--m", "2")
    assert payload["results"]["bound"] == "37168/744775"


def test_profile_csv(capsys):
    assert cli.run(["profile", "--n", "1", "--eps", "1/2", "--m-cap", "3", "--format", "csv"]) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert len(rows) == 3
    assert list(rows[0])[:4] == ["best_m", "best_bound", "best_bound_decimal", "validity_cap"]
    assert [row["m"] for row in rows] == ["1", "2", "3"]
    for row in rows:
        assert (row["best_m"], row["validity_source"], row["bound"]) == ("1", "computed", "1/1")


def test_argmax_csv_keeps_verdict_and_notes(capsys):
    assert cli.run(["argmax", "--n", "1", "--m", "2", "--width", "1/1000", "--format", "csv"]) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert len(rows) == 2
    for row in rows:
        assert row["is_half_argmax"] == "no"
        assert row["value_at_half"] == "1/16"
        assert "1/2 ± √2/4" in row["notes"]
        assert row["lo"] and row["hi"]


def test_profile_no_strict(capsys):
    payload = run_json(capsys, "profile", "--n", "1", "--eps", "1/2", "--m-cap", "3", "--no-strict")
    assert payload["results"]["validity_source"] == "off"
    assert all(row["selectable"] for row in payload["results"]["rows"])


def test_argmax_counterexample(capsys):
    payload = run_json(capsys, "argmax", "--n", "1", "--m", "2", "--width", "1/1000000")
    results = payload["results"]
    assert results["is_half_argmax"] is False
    assert len(results["maximizers"]) == 2
    assert any("1/2 ± √2/4" in note for note in results["notes"])
    lower, upper = (F(value) for value in results["max_value_bounds"])
    assert F(1, 16) < lower <= F(1, 12) <= upper
    assert "max_value_lower" not in results


def test_argmax_indistinguishable_exit_code(capsys, monkeypatch):
    def refuse(n, m, width):
        raise IndistinguishableMaximaError("maxima could not be separated")

    monkeypatch.setattr(cli.argmax, "argmax_report", refuse)
    assert cli.run(["argmax", "--n", "3", "--m", "2"]) == 4


def test_mn_table(capsys):
    payload = run_json(capsys, "mn-table", "--n-min", "1", "--n-max", "1", "--m-cap", "5")
    assert [(row["n"], row["m_n"]) for row in payload["results"]["rows"]] == [(1, 1)]


def test_tail_exact(capsys):
    payload = run_json(capsys, "tail", "--n", "2", "--p", "1/2", "--eps", "2/5")
    assert payload["results"]["tail"] == "1/2"


def test_tail_mc_requires_seed(capsys):
    assert cli.run(["tail", "--n", "1", "--p", "0.5", "--eps", "0.4", "--mc"]) == 2
    assert "--seed" in capsys.readouterr().err


def test_tail_mc(capsys):
    payload = run_json(
        capsys, "tail", "--n", "1", "--p", "0.5", "--eps", "0.4", "--mc", "--samples", "1000", "--seed", "42"
    )
    assert payload["results"]["estimate"] == 1.0


def test_tail_mc_ignores_environment(capsys, override_settings):
    argv = ("tail", "--n", "30", "--p", "2/5", "--eps", "1/10", "--mc", "--samples", "200000", "--seed", "2024")
    first = run_json(capsys, *argv)
    override_settings(mc_block_size=4096, m_cap=5)
    second = run_json(capsys, *argv)
    assert first == second


def test_asymptotic(capsys):
    payload = run_json(capsys, "asymptotic", "--ntilde", "5", "--m-cap", "15")
    assert payload["results"]["m_star"] == 10
    assert payload["results"]["rule_of_thumb_order"] == 20
    assert len(payload["results"]["b"]) == 15


def test_json_output_is_stable(capsys):
    argv = ["profile", "--n", "775", "--eps", "1/20", "--m-cap", "4", "--format", "json"]
    cli.run(argv)
    first = capsys.readouterr().out
    cli.run(argv)
    assert capsys.readouterr().out == first


def test_table_is_default_format(capsys):
    assert cli.run(["bound", "--n", "2000", "--eps", "1/20", "--m", "1"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("bound\n")
    assert "0.050000000000" in out


def test_unknown_flag_exits_two(capsys):
    assert cli.run(["bound", "--n", "1", "--bogus"]) == 2
    assert "usage" in capsys.readouterr().err


def test_bad_rational_exits_two(capsys):
    assert cli.run(["bound", "--n", "1", "--eps", "one", "--m", "1"]) == 2


def test_negative_digits_rejected(capsys):
    assert cli.run(["bound", "--n", "1", "--eps", "1", "--m", "1", "--digits", "-1"]) == 2
