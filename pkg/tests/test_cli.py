import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from noncomm.cli import main

DATA = Path(__file__).resolve().parent.parent / "data"
EXAMPLES = sorted(p.name[: -len(".decomp.json")] for p in DATA.glob("*.decomp.json"))
GROUPS = {
    "b2_power_sum": ["--group", "B2", "--sign", "minus"],
    "b2_constant": ["--group", "B2", "--sign", "minus"],
    "b2_discriminant": ["--group", "B2", "--sign", "minus"],
    "b3_plus_orbit": ["--group", "B3", "--sign", "plus"],
    "d3_delta_product": ["--group", "D3"],
    "d2_orbit_signed": ["--group", "D2"],
}


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_examples_are_shipped():
    assert set(EXAMPLES) == set(GROUPS)


@pytest.mark.parametrize("name", EXAMPLES)
def test_decompose_roundtrip_is_byte_identical(name, tmp_path, capsys):
    out = tmp_path / "out.json"
    code, stdout, _ = run(capsys, *GROUPS[name], "--input", str(DATA / f"{name}.json"), "--output", str(out))
    assert code == 0
    assert "CERTIFICATE reconstructed == input: PASS" in stdout
    assert out.read_bytes() == (DATA / f"{name}.decomp.json").read_bytes()
    back = tmp_path / "back.json"
    assert main(["--mode", "expand", "--input", str(out), "--output", str(back)]) == 0
    assert back.read_bytes() == (DATA / f"{name}.json").read_bytes()


def test_power_sum_decomposition_content():
    obj = json.loads((DATA / "b2_power_sum.decomp.json").read_text())
    assert obj["basis"] == "B-minus"
    assert obj["terms"] == [
        {"gen_exp": [2, 0], "coef": "1"},
        {"gen_exp": [0, 1], "coef": "-2"},
        {"gen_exp": [0, 0], "coef": "4"},
    ]


def test_constant_is_empty_product():
    obj = json.loads((DATA / "b2_constant.decomp.json").read_text())
    assert obj["terms"] == [{"gen_exp": [0, 0], "coef": "7"}]


def test_non_invariant_exit_1(capsys):
    code, _, err = run(capsys, "--group", "B2", "--input", str(DATA / "not_invariant_x1.json"))
    assert code == 1
    assert "(1, 0)" in err


def test_malformed_json_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "--group", "B2", "--input", str(bad))[0] == 2
    bad.write_text(json.dumps({"nvars": 2, "terms": [{"exp": [1], "coef": "1"}]}))
    assert run(capsys, "--group", "B2", "--input", str(bad))[0] == 2


def test_group_rank_mismatch_exit_2(capsys):
    assert run(capsys, "--group", "B3", "--input", str(DATA / "b2_power_sum.json"))[0] == 2


def test_unknown_suite_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["--suite", "unknown"])
    assert info.value.code == 2


def test_suite_pass_exit_0(capsys):
    code, out, _ = run(capsys, "--suite", "phi-isomorphism", "--n", "1", "--seed", "7", "--trials", "20")
    assert code == 0
    assert out.splitlines()[-1] == "RESULT PASS"
    assert all(line.endswith("PASS") for line in out.splitlines() if line.startswith("CHECK"))


def test_reports_are_deterministic(capsys):
    argv = ["--suite", "bn-invariants", "--n", "2", "--seed", "1", "--trials", "10", "--format", "json"]
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv)[1]
    assert first == second
    report = json.loads(first)
    assert report["suite"] == "bn-invariants" and report["passed"]
    assert report["params"] == {"n": 2, "seed": 1, "trials": 10}


def test_reynolds_mode(capsys):
    code, out, _ = run(capsys, "--mode", "reynolds", "--group", "B2", "--sign", "minus",
                       "--input", str(DATA / "not_invariant_x1.json"))
    assert code == 0
    coefs = {tuple(t["exp"]): t["coef"] for t in json.loads(out)["terms"]}
    assert coefs == {(1, 0): "1/4", (0, 1): "1/4", (0, -1): "-1/4", (-1, 0): "-1/4"}


def test_seed_environment_override():
    env = dict(os.environ, NONCOMM_SEED="5")
    cmd = [sys.executable, "-m", "noncomm", "--suite", "clearing", "--trials", "5", "--format", "json"]
    out = subprocess.run(cmd + ["--seed", "99"], env=env, capture_output=True, text=True, check=True).stdout
    assert json.loads(out)["params"]["seed"] == 5


def test_failing_check_exit_1(monkeypatch, capsys, tmp_path):
    from noncomm import suites

    def broken(cfg):
        rep = suites.SuiteReport("clearing", cfg.params())
        rep.add("always-fails", False, {"why": "forced"})
        return rep

    monkeypatch.setitem(suites._SUITE_FUNCS, "clearing", broken)
    code, out, _ = run(capsys, "--suite", "clearing", "--witness-dir", str(tmp_path))
    assert code == 1
    assert "CHECK always-fails FAIL" in out and out.rstrip().endswith("RESULT FAIL")
    assert json.loads((tmp_path / "clearing.always-fails.json").read_text()) == {"why": "forced"}
