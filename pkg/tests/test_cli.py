import json

import pytest

from qtkostka.cli import dispatch


def run_cli(capsys, *argv):
    code = dispatch(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_kcoeff_json(capsys):
    code, out, _ = run_cli(capsys, "kcoeff", "--lambda", "2", "--mu", "1,1")
    assert code == 0
    obj = json.loads(out)
    assert obj["lambda"] == [2] and obj["mu"] == [1, 1]
    # (1-q)(t-q) = t - q - qt + q^2
    assert obj["k"] == [[0, 1, "1"], [1, 0, "-1"], [1, 1, "-1"], [2, 0, "1"]]


def test_kcoeff_deterministic(capsys):
    _, first, _ = run_cli(capsys, "kcoeff", "--lambda", "3,1", "--mu", "2,1,1")
    _, second, _ = run_cli(capsys, "kcoeff", "--lambda", "3,1", "--mu", "2,1,1")
    assert first == second


def test_matrix_json(capsys, tmp_path):
    code, out, _ = run_cli(
        capsys,
        "--cache-dir",
        str(tmp_path),
        "matrix",
        "--n",
        "2",
        "--which",
        "k2",
    )
    assert code == 0
    obj = json.loads(out)
    assert obj["n"] == 2
    assert obj["index"] == [[2], [1, 1]]
    # off-diagonal entry (t-q)/(1-qt)
    assert obj["entries"][0][1] == {
        "num": [[0, 1, "1"], [1, 0, "-1"]],
        "den": [[1, 1, 1]],
    }
    assert (tmp_path / "k2_n2.json").exists()


def test_matrix_latex(capsys, tmp_path):
    code, out, _ = run_cli(
        capsys,
        "--format",
        "latex",
        "--cache-dir",
        str(tmp_path),
        "matrix",
        "--n",
        "1",
        "--which",
        "k1",
    )
    assert code == 0
    assert "tabular" in out


def test_reduce_worked_example(capsys):
    code, out, _ = run_cli(
        capsys, "reduce", "--lambda", "5,3,3", "--mu", "4,4,1,1,1"
    )
    assert code == 0
    obj = json.loads(out)
    assert obj["kind"] == "row_split"
    kids = obj["children"]
    assert kids[0]["lambda"] == [2] and kids[0]["mu"] == [1, 1]
    assert kids[1]["lambda"] == [3] and kids[1]["mu"] == [1, 1, 1]
    tags = {tuple(c["lambda"]): c["tag"] for c in obj["leaf_classes"]}
    assert tags[(2,)] == "row_case" and tags[(3,)] == "row_case"


def test_haglund_verdict(capsys):
    code, out, _ = run_cli(
        capsys, "haglund", "--lambda", "2", "--mu", "1,1", "--k", "2"
    )
    assert code == 0
    obj = json.loads(out)
    assert obj["is_nonnegative"] is True
    # t + t^2
    assert obj["quotient"] == [[0, 1, "1"], [0, 2, "1"]]


def test_scan_to_file(capsys, tmp_path):
    out_file = tmp_path / "report.json"
    code, out, _ = run_cli(
        capsys, "scan", "--max-n", "2", "--max-k", "2", "--out", str(out_file)
    )
    assert code == 0
    report = json.loads(out_file.read_text())
    assert report["summary"]["violations"] == 0
    assert json.loads(out)["summary"] == report["summary"]


def test_oracle_verify(capsys):
    code, out, _ = run_cli(capsys, "oracle-verify", "--max-n", "2")
    assert code == 0
    obj = json.loads(out)
    assert obj["all_passed"] is True
    assert [d["n"] for d in obj["degrees"]] == [1, 2]


def test_fstat(capsys):
    code, out, _ = run_cli(capsys, "fstat", "--mu", "2,1")
    assert code == 0
    obj = json.loads(out)
    # f(2,1) = 2 + qt
    assert obj["f"] == [[0, 0, "2"], [1, 1, "1"]]


def test_domain_error_exit_code(capsys):
    code, _, err = run_cli(capsys, "kcoeff", "--lambda", "2", "--mu", "1")
    assert code == 0  # size mismatch yields the zero polynomial, not an error
    code, _, err = run_cli(
        capsys, "reduce", "--lambda", "2,2", "--mu", "3,1"
    )
    assert code == 1
    assert "domain error" in err


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as info:
        dispatch(["kcoeff", "--lambda", "2"])
    assert info.value.code == 64
    capsys.readouterr()
    with pytest.raises(SystemExit) as info:
        dispatch(["nonsense"])
    assert info.value.code == 64
    capsys.readouterr()


def test_bad_partition_argument(capsys):
    with pytest.raises(SystemExit) as info:
        dispatch(["kcoeff", "--lambda", "1,2", "--mu", "1,1,1"])
    assert info.value.code == 64
    capsys.readouterr()


def test_empty_partition_argument(capsys):
    code, out, _ = run_cli(capsys, "kcoeff", "--lambda", "", "--mu", "")
    assert code == 0
    assert json.loads(out)["k"] == [[0, 0, "1"]]
