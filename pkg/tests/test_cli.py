import json
import subprocess
import sys

import pytest

from matpowsum.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_closed_zn_matrix(capsys):
    code, out, _ = call(capsys, "closed", "zn-matrix", "--n", "6", "--d", "2", "--k", "5")
    assert code == 0
    assert json.loads(out)["value"] == [[3, 0], [0, 3]]


def test_closed_gaussian_keeps_coefficients(capsys):
    code, out, _ = call(capsys, "closed", "gaussian", "--n", "6", "--k", "3")
    assert json.loads(out)["value"] == [3, 3]


def test_oracle_power_sum_from_spec_file(capsys, tmp_path):
    path = tmp_path / "ring.json"
    assert call(capsys, "ring", "builtin", "--ring", "direct_product(zn(2),zn(3))", "--out", str(path))[0] == 0
    code, out, _ = call(capsys, "oracle", "power-sum", "--ring-spec", str(path), "--d", "2", "--k", "5")
    assert code == 0
    assert json.loads(out)["value"] == [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]


def test_oracle_k_max(capsys):
    code, out, _ = call(capsys, "oracle", "power-sum", "--ring", "zn(2)", "--d", "2", "--k-max", "7")
    sums = json.loads(out)["sums"]
    assert sums["6"] == [[1, 0], [0, 1]] and sums["4"] == [[0, 0], [0, 0]]


def test_oracle_monomial_and_exponent_sum(capsys):
    _, out, _ = call(capsys, "oracle", "monomial", "--word", "1,1", "--moduli", "4", "--d", "1")
    assert json.loads(out)["value"] == [[2]]
    _, out, _ = call(capsys, "oracle", "exponent-sum", "--p", "2", "--s", "3", "--betas", "1,2")
    assert json.loads(out)["value"] == 0


def test_budget_refusal_exits_3(capsys):
    code, _, err = call(capsys, "oracle", "power-sum", "--ring", "zn(20)", "--d", "3", "--k", "4")
    assert code == 3 and "refused" in err


@pytest.mark.parametrize("argv", [
    ["closed", "zn"],
    ["closed", "zn", "--n", "x", "--k", "2"],
    ["nosuch"],
    ["oracle", "power-sum", "--d", "2", "--k", "2"],
    ["oracle", "monomial", "--word", "1,2", "--moduli", "2,4", "--d", "1"],
    ["closed", "predict", "--ring", "zn(1)", "--d", "2", "--k", "2"],
])
def test_bad_input_exits_3(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        sys.exit(run(argv))
    assert exc.value.code == 3


def test_ring_validate(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"name": "bad", "orders": [2, 4], "commutative": True,
                                "products": [[[0, 1], [0, 0]], [[0, 0], [0, 1]]]}))
    code, out, _ = call(capsys, "ring", "validate", "--ring-spec", str(path))
    assert code == 3
    assert not json.loads(out)["ok"]


def test_sweep_writes_jsonl_and_is_reproducible(capsys, tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"s{i}.jsonl"
        code, out, err = call(capsys, "sweep", "catalog", "--ring", "zn(6)", "--d", "2", "--k-max", "6",
                              "--out", str(path))
        assert code == 0 and "backend" in err
        outs.append((out, path.read_text()))
    assert outs[0] == outs[1]
    assert len(outs[0][1].splitlines()) == 6


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "matpowsum", "closed", "zn", "--n", "12", "--k", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["value"] == [2]
