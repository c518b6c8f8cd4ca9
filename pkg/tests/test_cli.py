"""CLI behavior: schemas, determinism, golden files, exit codes."""

import json
from pathlib import Path

import pytest

from cmlinv.cli import main

FIXTURES = Path(__file__).parent / "fixtures"


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_critical_subcommand(capsys):
    code, out = run_cli(capsys, "critical", "--n", "4", "--k", "4")
    assert code == 0
    assert json.loads(out) == {"C": [-1, 2]}


def test_trivial_zeros_empty_for_m_even(capsys):
    code, out = run_cli(capsys, "trivial-zeros", "--p", "5",
                        "--curve", "0,-1,0", "--n", "4")
    assert code == 0
    assert json.loads(out)["zeros"] == []


def test_trivial_zeros_with_certificates(capsys):
    code, out = run_cli(capsys, "trivial-zeros", "--p", "5",
                        "--curve", "0,-1,0", "--n", "2", "--certificates")
    assert code == 0
    payload = json.loads(out)
    assert payload["zeros"] == [[0, 0], [1, 1]]
    c0 = payload["certificates"][0]["c0"]
    assert c0["digits"] == [] and c0["precision"] == 0
    assert c0["valuation"] is None  # exact zero
    c1 = payload["certificates"][0]["c1"]
    assert c1["valuation"] == 1 and len(c1["digits"]) == c1["precision"]


def test_verify_fg_pass(capsys):
    code, out = run_cli(capsys, "verify-fg", "--D", "-4", "--p", "5", "--prec", "8")
    assert code == 0
    payload = json.loads(out)
    assert payload["result"] == "PASS"
    assert payload["residual_valuation"] >= 8


def test_klp_schema(capsys):
    code, out = run_cli(capsys, "klp", "--p", "5", "--D", "-4", "--branch", "0",
                        "--at", "0", "--order", "4", "--prec", "8")
    assert code == 0
    payload = json.loads(out)
    assert payload["J"] == 12 and payload["N_cert"] == 8
    assert len(payload["coefficients"]) == 4
    c1 = payload["coefficients"][1]
    assert all(0 <= d < 5 for d in c1["digits"])


def test_linvariant_pass(capsys):
    code, out = run_cli(capsys, "linvariant", "--p", "5", "--curve", "0,-1,0",
                        "--n", "2", "--prec", "6")
    assert code == 0
    payload = json.loads(out)
    assert payload["result"] == "PASS"
    assert payload["checks"]["derivative_formula_branch_0"] == "PASS"
    assert payload["checks"]["derivative_formula_branch_1"] == "PASS"
    assert payload["trivial_zero_formulas"]["1"]["functional_equation_note"]


def test_linvariant_accepts_discriminant_flag(capsys):
    code, out = run_cli(capsys, "linvariant", "--D", "-4", "--p", "5", "--k", "2",
                        "--curve", "0,-1,0", "--n", "2", "--prec", "8")
    assert code == 0
    assert json.loads(out)["result"] == "PASS"


def test_linvariant_rejects_conflicting_field_flags(capsys):
    code = main(["linvariant", "--D", "-3", "--d", "7", "--p", "5",
                 "--curve", "0,-1,0"])
    assert code == 2


def test_quadfield_subcommand(capsys):
    code, out = run_cli(capsys, "quadfield", "--d", "23")
    assert code == 0
    assert json.loads(out) == {"D": -23, "d": 23, "h": 3, "w": 2}


def test_cmform_subcommand(capsys):
    code, out = run_cli(capsys, "cmform", "--p", "5", "--curve", "0,-1,0")
    assert code == 0
    payload = json.loads(out)
    assert payload["a_p"] == -2
    assert payload["alpha"]["digits"][:2] == [3, 2]  # 13 = 3 + 2*5


def test_determinism_byte_identical(capsys):
    _, out1 = run_cli(capsys, "klp", "--p", "5", "--D", "-4", "--branch", "1",
                      "--at", "1", "--order", "3", "--prec", "6")
    _, out2 = run_cli(capsys, "klp", "--p", "5", "--D", "-4", "--branch", "1",
                      "--at", "1", "--order", "3", "--prec", "6")
    assert out1 == out2


@pytest.mark.parametrize("name,argv", [
    ("critical_4_4", ["critical", "--n", "4", "--k", "4"]),
    ("quadfield_d1_p5", ["quadfield", "--d", "1", "--p", "5", "--prec", "8"]),
    ("cmform_p5", ["cmform", "--p", "5", "--curve", "0,-1,0", "--prec", "8"]),
    ("klp_p5_D4_b0", ["klp", "--p", "5", "--D", "-4", "--branch", "0",
                      "--at", "0", "--order", "4", "--prec", "8"]),
    ("trivial_zeros_n2", ["trivial-zeros", "--p", "5", "--curve", "0,-1,0",
                          "--n", "2", "--certificates", "--prec", "8"]),
])
def test_golden_files(capsys, name, argv):
    code, out = run_cli(capsys, *argv)
    assert code == 0
    golden = (FIXTURES / f"{name}.json").read_text(encoding="ascii")
    assert out == golden


def test_out_flag_writes_identical_bytes(capsys, tmp_path):
    target = tmp_path / "payload.json"
    code, out = run_cli(capsys, "critical", "--n", "2", "--k", "5",
                        "--out", str(target))
    assert code == 0
    assert target.read_text(encoding="ascii") == out


def test_unknown_flag_is_an_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["critical", "--n", "4", "--k", "4", "--frobnicate"])
    assert exc.value.code == 2


def test_bad_prime_exits_two(capsys):
    code = main(["verify-fg", "--D", "-4", "--p", "9"])
    assert code == 2


def test_verification_failure_exits_one(capsys, monkeypatch):
    import cmlinv.cli as cli_mod
    from cmlinv.linvariant import FGCheck

    def fake_fg(F, p, ctx, target=6, conjugate_lift=False):
        z = ctx.inexact_zero(1)
        return FGCheck(lhs=z, rhs=z, residual_valuation=1,
                       target=target, passed=False)

    monkeypatch.setattr(cli_mod, "verify_ferrero_greenberg", fake_fg)
    code = main(["verify-fg", "--D", "-4", "--p", "5", "--prec", "6"])
    assert code == 1
    assert json.loads(capsys.readouterr().out)["result"] == "FAIL"


def test_non_split_configuration_exits_two(capsys):
    code = main(["verify-fg", "--D", "-4", "--p", "7"])
    assert code == 2


def test_missing_field_spec_exits_two(capsys):
    code = main(["verify-fg", "--p", "5"])
    assert code == 2
