"""Command line behavior: payload shapes, exit codes, determinism."""

import json

import pytest

from eqtwist import cli
from eqtwist.fixtures import fixture_path


def fx(name):
    return str(fixture_path(name))


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def test_validate_accepts_the_circle(capsys):
    data = run_json(capsys, "validate", "--complex", fx("s1.json"))
    assert data["ok"] is True
    assert "complex" in data["checked"]


def test_validate_reports_the_offending_simplex(capsys):
    code, out, err = run(capsys, "validate", "--complex",
                         fx("broken_delta2.json"))
    assert code == 1
    assert err.startswith("error: ")
    assert "0-1-2" in err


def test_validate_names_the_morphism_of_a_nonnatural_twist(capsys):
    code, out, err = run(capsys, "validate",
                         "--complex", fx("refs1.json"),
                         "--twist", fx("twist_refs1_nonnatural.json"))
    assert code == 1
    assert "classifying maps disagree along e|e|t" in err


def test_validate_requires_coefficients_for_an_action(capsys):
    code, out, err = run(capsys, "validate",
                         "--complex", fx("s1.json"),
                         "--twist", fx("twist_s1_z2.json"),
                         "--action", fx("action_s1_z2_sign.json"))
    assert code == 1
    assert "coefficient action needs --coeffs" in err


def test_validate_checks_the_action_when_given(capsys):
    data = run_json(capsys, "validate",
                    "--complex", fx("s1.json"),
                    "--coeffs", fx("coeffs_z.json"),
                    "--twist", fx("twist_s1_z2.json"),
                    "--action", fx("action_s1_z2_sign.json"))
    assert data["ok"] is True
    assert "coefficient action" in data["checked"]


def test_fixedpoints_lists_subgroups_in_order(capsys):
    data = run_json(capsys, "fixedpoints", "--complex", fx("refs1.json"))
    keys = [e["subgroup"] for e in data["subgroups"]]
    assert keys == ["e", "e,t"]
    fixed = data["subgroups"][1]
    assert fixed["cells"]["0"] == ["a", "b"]
    assert fixed["cells"]["1"] == []


def test_bredon_circle_over_z(capsys):
    data = run_json(capsys, "bredon",
                    "--complex", fx("s1.json"),
                    "--coeffs", fx("coeffs_z.json"), "--nmax", "1")
    assert data["cohomology"] == [
        {"degree": 0, "rank": 1, "torsion": []},
        {"degree": 1, "rank": 1, "torsion": []},
    ]


def test_bredon_single_degree_payload_is_flat(capsys):
    data = run_json(capsys, "bredon",
                    "--complex", fx("s1.json"),
                    "--coeffs", fx("coeffs_z.json"), "--degree", "1")
    assert data == {"degree": 1, "rank": 1, "torsion": []}


def test_bredon_degree_beyond_the_truncation_is_zero(capsys):
    data = run_json(capsys, "bredon",
                    "--complex", fx("s1.json"),
                    "--coeffs", fx("coeffs_z.json"), "--degree", "5")
    assert data == {"degree": 5, "rank": 0, "torsion": []}


def test_bredon_text_format(capsys):
    code, out, err = run(capsys, "bredon",
                         "--complex", fx("s1.json"),
                         "--coeffs", fx("coeffs_z.json"),
                         "--nmax", "1", "--format", "text")
    assert code == 0
    assert out.splitlines() == ["H^0 = Z", "H^1 = Z"]


def test_bredon_requires_a_degree_request(capsys):
    code, out, err = run(capsys, "bredon",
                         "--complex", fx("s1.json"),
                         "--coeffs", fx("coeffs_z.json"))
    assert code == 1
    assert "either --degree or --nmax" in err


def test_twisted_sign_circle_over_z(capsys):
    data = run_json(capsys, "twisted",
                    "--complex", fx("s1.json"),
                    "--coeffs", fx("coeffs_z.json"),
                    "--twist", fx("twist_s1_z2.json"),
                    "--action", fx("action_s1_z2_sign.json"),
                    "--degree", "1")
    assert data == {"degree": 1, "rank": 0, "torsion": [2]}


def test_twisted_triangle_holonomy(capsys):
    data = run_json(capsys, "twisted",
                    "--complex", fx("triangle.json"),
                    "--coeffs", fx("coeffs_z.json"),
                    "--twist", fx("twist_triangle.json"),
                    "--action", fx("action_triangle.json"),
                    "--nmax", "1")
    assert data["cohomology"] == [
        {"degree": 0, "rank": 0, "torsion": []},
        {"degree": 1, "rank": 0, "torsion": [2]},
    ]


def test_twisted_needs_a_twist_file(capsys):
    code, out, err = run(capsys, "twisted",
                         "--complex", fx("s1.json"),
                         "--coeffs", fx("coeffs_z.json"), "--nmax", "1")
    assert code == 1
    assert "--twist" in err


def test_json_output_is_deterministic(capsys):
    argv = ["bredon", "--complex", fx("s1.json"),
            "--coeffs", fx("coeffs_z.json"), "--nmax", "2"]
    code1, out1, _ = run(capsys, *argv)
    code2, out2, _ = run(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2


def test_cartan_check_canonical_theory(capsys):
    data = run_json(capsys, "cartan-check",
                    "--theory", fx("theory_canonical.json"),
                    "--coeffs", fx("coeffs_z2.json"), "--bounds", "2,3")
    assert data["i_max"] == 2 and data["p_max"] == 3
    assert data["all_ok"] is True
    assert [e["axiom"] for e in data["axioms"]] == [1, 2, 3, 4, 5]
    assert all(e["ok"] for e in data["axioms"])


def test_cartan_check_over_the_complex_group(capsys):
    data = run_json(capsys, "cartan-check",
                    "--theory", fx("theory_canonical.json"),
                    "--complex", fx("refs1.json"),
                    "--coeffs", fx("coeffs_z2.json"), "--bounds", "2,2")
    assert data["all_ok"] is True


def test_cartan_check_budget(capsys):
    code, out, err = run(capsys, "cartan-check",
                         "--theory", fx("theory_canonical.json"),
                         "--coeffs", fx("coeffs_z2.json"),
                         "--bounds", "2,3", "--budget", "3")
    assert code == 2
    assert err.startswith("budget exhausted: ")


def test_crosscheck_twisted_circle(capsys):
    data = run_json(capsys, "crosscheck",
                    "--complex", fx("s1.json"),
                    "--coeffs", fx("coeffs_z4.json"),
                    "--twist", fx("twist_s1_z4.json"),
                    "--action", fx("action_s1_z4_sign.json"))
    assert data["all_match"] is True
    assert data["iso"] is True
    assert data["commutes"] is True
    assert [e["match"] for e in data["degrees"]] == [True, True, True]


def test_crosscheck_accepts_a_theory_file(capsys):
    data = run_json(capsys, "crosscheck",
                    "--complex", fx("s1.json"),
                    "--coeffs", fx("coeffs_z2.json"),
                    "--theory", fx("theory_canonical.json"), "--nmax", "1")
    assert data["all_match"] is True


def test_crosscheck_rejects_a_truncated_theory(capsys):
    code, out, err = run(capsys, "crosscheck",
                         "--complex", fx("s1.json"),
                         "--coeffs", fx("coeffs_z2.json"),
                         "--theory", fx("theory_canonical.json"),
                         "--nmax", "3")
    assert code == 1
    assert "truncate" in err


def test_em_info_orders(capsys):
    data = run_json(capsys, "em-info", "--A", "Z2", "--n", "1", "--q", "3")
    assert data["orders"] == [1, 2, 4, 8]


def test_em_info_rejects_a_malformed_group(capsys):
    code, out, err = run(capsys, "em-info", "--A", "K", "--n", "1",
                         "--q", "2")
    assert code == 1
    assert err.startswith("error: ")


def test_em_info_budget(capsys):
    code, out, err = run(capsys, "em-info", "--A", "Z2", "--n", "1",
                         "--q", "6", "--budget", "10")
    assert code == 2
    assert "generator columns" in err


def test_internal_breach_exits_three(capsys, monkeypatch):
    def boom(ec):
        raise ValueError("synthetic breach")
    monkeypatch.setattr(cli, "untwisted_complex", boom)
    code, out, err = run(capsys, "bredon",
                         "--complex", fx("s1.json"),
                         "--coeffs", fx("coeffs_z.json"), "--nmax", "1")
    assert code == 3
    assert err.startswith("internal invariant breach: ")
