"""Command line driver: exit codes, report shape, seeds, pretty output."""

import json
import math

import pytest

from gasslin import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code in (0, 1), err
    return code, json.loads(out)


# -- gassner ----------------------------------------------------------------


def test_gassner_unreduced_with_evaluation(capsys):
    code, rep = run_json(
        capsys, "gassner", "hopf", "--route", "both", "--alpha", "0.8", "1.4"
    )
    assert code == 0
    assert rep["command"] == "gassner"
    assert rep["all_pass"]
    assert rep["identities"][0]["name"] == "fox and block routes agree"
    mat = rep["results"]["matrix"]
    assert len(mat["entries"]) == 2
    assert len(rep["results"]["evaluation"]) == 2


def test_gassner_reduced_form(capsys):
    code, rep = run_json(capsys, "gassner", "trefoil", "--form", "reduced")
    assert code == 0
    assert len(rep["results"]["matrix"]["entries"]) == 1


def test_gassner_single_route_skips_identity(capsys):
    code, rep = run_json(capsys, "gassner", "trefoil", "--route", "fox")
    assert code == 0
    assert rep["identities"] == []
    assert rep["all_pass"]


def test_gassner_missing_braid(capsys):
    code, out, err = run(capsys, "gassner", "no_such_braid")
    assert code == 2
    assert "no braid file" in json.loads(err)["error"]


def test_gassner_wrong_alpha_count(capsys):
    code, out, err = run(capsys, "gassner", "hopf", "--alpha", "0.8")
    assert code == 2
    assert "angles" in json.loads(err)["error"]


# -- potential and alexander ------------------------------------------------


def test_potential_trefoil(capsys):
    code, rep = run_json(capsys, "potential", "trefoil")
    assert code == 0
    assert "/" in rep["results"]["potential"]
    row = rep["identities"][0]
    assert "(-1)^components" in row["name"]
    assert row["holds"]


def test_alexander_hopf(capsys):
    code, rep = run_json(capsys, "alexander", "hopf")
    assert code == 0
    assert rep["results"]["alexander"] == "1"
    assert rep["results"]["components"] == 2


# -- signature --------------------------------------------------------------


def test_signature_trefoil_at_minus_one(capsys):
    code, rep = run_json(
        capsys, "signature", "trefoil", "--alpha", str(math.pi / 2)
    )
    assert code == 0
    assert rep["results"]["signature"] == -2
    assert rep["results"]["nullity"] == 0
    parity = rep["identities"][0]
    assert "parity" in parity["name"]
    assert parity["holds"]


def test_signature_unknown_system(capsys):
    code, out, err = run(capsys, "signature", "granny", "--alpha", "1.0")
    assert code == 2


def test_signature_requires_alpha(capsys):
    code, out, err = run(capsys, "signature", "trefoil")
    assert code == 2
    assert "alpha" in json.loads(err)["error"]


# -- casson-lin -------------------------------------------------------------


def test_casson_lin_trefoil(capsys):
    code, rep = run_json(
        capsys, "casson-lin", "trefoil",
        "--alpha", str(math.pi / 2), "--seed", "3", "--restarts", "60",
    )
    assert code == 0
    assert rep["seed"] == 3
    assert rep["results"]["h"] == 1
    assert len(rep["results"]["classes"]) == 1
    cls = rep["results"]["classes"][0]
    assert cls["sign"] == 1
    assert cls["residual"] < 1e-10
    assert rep["results"]["diagnostics"]["backend"] in ("cython", "numpy")


def test_casson_lin_seed_env_fallback(capsys, monkeypatch):
    monkeypatch.setenv("GL_SEED", "7")
    code, rep = run_json(
        capsys, "casson-lin", "trefoil",
        "--alpha", "2.0", "--restarts", "60",
    )
    assert code == 0
    assert rep["seed"] == 7


def test_casson_lin_undefined_point(capsys):
    code, out, err = run(
        capsys, "casson-lin", "trefoil", "--alpha", str(math.pi / 6)
    )
    assert code == 2
    assert "Alexander" in json.loads(err)["error"]


# -- crossing delta ---------------------------------------------------------


def test_crossing_delta_rejects_right_angle(capsys):
    code, out, err = run(
        capsys, "crossing-delta", "trefoil", "--alpha", str(math.pi / 2)
    )
    assert code == 2
    assert "fourth root" in json.loads(err)["error"]


# -- verify-long ------------------------------------------------------------


def test_verify_long_all_eps(capsys):
    code, rep = run_json(capsys, "verify-long", "trefoil", "--alpha", "0.9")
    assert code == 0
    assert len(rep["identities"]) == 2  # one per sign vector for one color
    assert rep["results"]["worst_rel_err"] < 1e-6


def test_verify_long_explicit_eps(capsys):
    code, rep = run_json(
        capsys, "verify-long", "hopf", "--alpha", "0.7", "1.2", "--eps", "1", "-1"
    )
    assert code == 0
    assert len(rep["identities"]) == 1


def test_verify_long_bad_eps(capsys):
    code, out, err = run(
        capsys, "verify-long", "trefoil", "--alpha", "0.9", "--eps", "1", "1"
    )
    assert code == 2


def test_verify_long_failure_exits_one(capsys, monkeypatch):
    def broken(b, alphas, eps, step=1e-5):
        return {
            "perm_rel_err": 1.0,
            "gassner_rel_err": 1.0,
            "conjugate_linearity_defect": 1.0,
            "circle_offblock": 1.0,
            "pass": False,
        }

    monkeypatch.setattr(cli.cln, "long_differential_check", broken)
    code, rep = run_json(capsys, "verify-long", "trefoil", "--alpha", "0.9")
    assert code == 1
    assert not rep["all_pass"]
    assert rep["failed"]


# -- theorem63 --------------------------------------------------------------


def test_theorem63_knot_case_single_point(capsys):
    code, rep = run_json(
        capsys, "theorem63", "trefoil", "trefoil",
        "--alpha", str(math.pi / 2), "--restarts", "60",
    )
    assert code == 0
    row = rep["results"]["table"][0]
    assert row["h"] == 1
    assert row["rhs"] == 1
    assert row["equal"]


def test_theorem63_knot_needs_matching_system(capsys):
    code, out, err = run(
        capsys, "theorem63", "trefoil", "--alpha", str(math.pi / 2)
    )
    assert code == 2


# -- verify -----------------------------------------------------------------


def test_verify_signature_scope(capsys):
    code, rep = run_json(
        capsys, "verify", "--scope", "signature", "--seed", "1", "--budget", "30"
    )
    assert code == 0
    assert rep["all_pass"]
    names = [row["name"] for row in rep["identities"]]
    assert any("trefoil signature" in n for n in names)
    assert rep["results"]["backend"] in ("cython", "numpy")


def test_verify_alexander_scope(capsys):
    code, rep = run_json(
        capsys, "verify", "--scope", "alexander", "--seed", "2", "--budget", "60"
    )
    assert code == 0
    assert rep["all_pass"]
    torres = [r for r in rep["identities"] if "Torres" in r["name"]]
    assert torres and torres[0]["closures_checked"] > 0


# -- rendering --------------------------------------------------------------


def test_pretty_output_is_not_json(capsys):
    code, out, err = run(capsys, "alexander", "trefoil", "--pretty")
    assert code == 0
    assert out.startswith("== alexander ==")
    assert "all_pass: True" in out


def test_report_embeds_conventions(capsys):
    code, rep = run_json(capsys, "alexander", "trefoil")
    conv = rep["conventions"]
    assert conv["orientation_calibration"] in (1, -1)
    assert "sqrt_branch" in conv
