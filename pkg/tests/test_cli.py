import json

import numpy as np
import pytest

from snyder_kloop import cli, snyder


def run(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def strip_time(report):
    report = dict(report)
    report.pop("wall_time", None)
    return report


def test_sum_identity_and_methods(capsys):
    code, rep = run(capsys, ["sum", "--p", "0", "0", "0", "0", "--q", ".1", ".2", "0", "-.1"])
    assert code == 0
    np.testing.assert_allclose(rep["p_sum"], [.1, .2, 0, -.1], atol=1e-14)
    code, rep = run(capsys, ["sum", "--kappa", "2", "--method", "all",
                             "--p", ".3", ".1", "-.2", ".25", "--q", "-.1", ".4", ".05", "-.3"])
    assert code == 0
    np.testing.assert_allclose(rep["values"]["closed"], rep["p_sum"], atol=1e-9)


def test_sum_input_file(tmp_path, capsys):
    f = tmp_path / "in.json"
    f.write_text(json.dumps({"kappa": 1.5, "p": [.2, .1, 0, 0], "q": [0, 0, .3, .1]}))
    code, rep = run(capsys, ["sum", "--input", str(f)])
    expect = snyder.sum_exact(np.array([.2, .1, 0, 0]), np.array([0, 0, .3, .1]), 1.5)
    assert code == 0
    np.testing.assert_allclose(rep["p_sum"], expect, atol=1e-14)


def test_sum_outside_chart_is_domain_error(capsys):
    code, rep = run(capsys, ["sum", "--p", "5", "0", "0", "0", "--q", "5", "0", "0", "0"])
    assert code == cli.EXIT_DOMAIN and "error" in rep


@pytest.mark.parametrize("argv", [["sum", "--p", "1", "2"], ["verify", "--suite", "nope"],
                                  ["hopf"], ["frobnicate"]])
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(argv)
    assert exc.value.code == cli.EXIT_USAGE


def test_nonpositive_samples(capsys):
    assert cli.main(["verify", "--samples", "0"]) == cli.EXIT_USAGE


@pytest.mark.parametrize("fixture,code", [("z5", 0), ("kloop21", 0), ("s3", 3), ("corrupted_z6", 3)])
def test_hopf_fixture_exit_codes(fixture, code, capsys):
    got, rep = run(capsys, ["hopf", "--fixture", fixture])
    assert got == code and rep["all_pass"] == (code == 0)


def test_hopf_malformed_table(tmp_path, capsys):
    f = tmp_path / "t.json"
    f.write_text(json.dumps({"table": [[0, 1], [1, 1]], "identity": 0}))
    code, rep = run(capsys, ["hopf", "--table", str(f)])
    assert code == cli.EXIT_DOMAIN and "error" in rep


def test_hopf_out_file(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert cli.main(["hopf", "--fixture", "z5", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["all_pass"]


def test_verify_lts_deterministic(capsys):
    argv = ["verify", "--suite", "lts", "--samples", "50", "--seed", "7"]
    c1, r1 = run(capsys, argv)
    c2, r2 = run(capsys, argv)
    assert c1 == 0 and strip_time(r1) == strip_time(r2)


def test_verify_kloop_seed_from_env(monkeypatch, capsys):
    monkeypatch.setenv("SNYDER_SEED", "11")
    code, rep = run(capsys, ["verify", "--suite", "kloop", "--samples", "20", "--decomposition", "lorentz"])
    assert code == 0 and rep["seed"] == 11


def test_action_lambda_zero(capsys):
    code, rep = run(capsys, ["action", "--lambda", "0", "--samples", "2000", "--seed", "3"])
    assert rep["estimate"]["cubic_inner"] is None and rep["nonassociativity_observable"] is None
    code2, rep2 = run(capsys, ["action", "--lambda", "0", "--samples", "2000", "--seed", "3"])
    assert strip_time(rep) == strip_time(rep2)
