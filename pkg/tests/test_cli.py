import json

import pytest

from edslab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_curve_info(capsys):
    code, out, _ = run(capsys, "curve", "info", "--curve", "[0,0,1,-1,0]")
    assert code == 0
    doc = json.loads(out)
    assert doc["discriminant"] == "37"
    assert doc["conductor"] == "37"
    assert doc["bad_primes"][0]["kodaira_type"] == "I1"


def test_eds_seq(capsys):
    code, out, _ = run(
        capsys, "eds", "seq", "--curve", "[0,0,1,-1,0]", "--point", "0,0", "--max-n", "7"
    )
    assert code == 0
    doc = json.loads(out)
    assert [t["B_n"] for t in doc] == ["1", "1", "1", "1", "2", "1", "3"]


def test_heights_json(capsys):
    code, out, _ = run(
        capsys, "heights", "--curve", "[0,0,1,-1,0]", "--point", "0,0",
        "--precision", "96",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["canonical_h"]["precision_bits"] == 96
    assert doc["canonical_h"]["value"].startswith("2.5555704")
    assert "37" in doc["local_canonical"]


def test_isogeny_velu(capsys):
    code, out, _ = run(
        capsys, "isogeny", "velu", "--curve", "[0,0,0,-25,0]", "--kernel", "0,1",
        "--point=-4,6",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["degree"] == 2
    assert doc["image_point"]["x"] == "9/4"


def test_bounds_gap(capsys):
    code, out, _ = run(
        capsys, "bounds", "gap", "--n1", "9", "--n2", "11", "--n3", "13",
        "--h-P", "1", "--h-sigmaP", "1", "--hE", "1", "--hEprime", "1",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["hypotheses_ok"] is True
    assert "bound_caseA" in doc["values"]


def test_precondition_error_exit_2(capsys):
    # eps too large for the Siegel hypothesis d(1 - eps) > 1
    code, out, err = run(
        capsys, "bounds", "siegel", "--d", "1", "--eps", "0",
    )
    assert code == 2
    doc = json.loads(err)
    assert doc["error"] == "HypothesisViolated"


def test_bad_point_text_exit_2(capsys):
    code, _, err = run(
        capsys, "heights", "--curve", "[0,0,1,-1,0]", "--point", "nonsense"
    )
    assert code == 2
    assert json.loads(err)["error"] == "ValueError"


def test_usage_error_exit_2(capsys):
    code, _, _ = run(capsys, "bounds", "not-a-bound")
    assert code == 2


def test_sieve_and_thue(capsys):
    code, out, _ = run(
        capsys, "sieve", "--curve", "[0,0,0,-25,0]", "--point=-4,6",
        "--isogeny", "kernel:0,1", "--max-n", "3", "--budget", "2000000",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc[0]["new_prime_count"] == "0"

    code, out, _ = run(
        capsys, "thue", "emit", "--curve", "[0,0,0,-25,0]", "--point=-4,6",
        "--isogeny", "kernel:0,1", "--n", "1",
    )
    assert code == 0
    assert json.loads(out)["first_alternative"] is True


def test_thue_brute(capsys):
    code, out, _ = run(
        capsys, "thue", "brute", "--curve", "[0,0,0,-25,0]",
        "--isogeny", "kernel:0,1", "--rhs", "5", "--box", "30",
    )
    assert code == 0
    assert ["25", "1"] in json.loads(out)


def test_ea_check(capsys):
    code, out, _ = run(capsys, "ea", "check", "--A", "25", "--point=-4,6", "--max-n", "10")
    assert code == 0
    doc = json.loads(out)
    assert doc["reduction_crosscheck"] is True
    assert doc["even_index_verdicts"][0]["verdict"] == "CompositeProven"


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.json"
    code, out, _ = run(
        capsys, "curve", "info", "--curve", "[0,0,1,-1,0]", "--output", str(target)
    )
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["discriminant"] == "37"


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest", "--precision", "128")
    assert code == 0
    assert json.loads(out)["ok"] is True
