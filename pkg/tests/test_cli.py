import contextlib
import io
import json
import os
import tempfile

import stlie.cli as cli
from stlie.cli import main


def run_cli(argv):
    """Invoke the entry point in process; returns (exit code, out, err)."""
    out = io.StringIO()
    err = io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


def test_ring_info_json_gf2():
    code, out, err = run_cli(["ring", "info", "--preset", "gf:2", "--json"])
    assert code == 0 and err == ""
    doc = json.loads(out)
    assert doc["schema_version"] == 1
    assert doc["command"] == "ring info"
    assert doc["name"] == "gf(2)"
    assert doc["dim"] == 1
    assert doc["basis"] == ["1"] and doc["unit"] == "1"
    assert doc["commutative"] is True
    assert doc["commutator_dim"] == 0
    assert doc["R2_dim"] == 1 and doc["R3_dim"] == 0
    assert doc["hc1_dim"] == 0


def test_ring_info_json_dual_numbers():
    code, out, _ = run_cli(["ring", "info", "--preset", "dual:2", "--json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["dim"] == 2
    assert doc["ideal_I2_dim"] == 0 and doc["R2_dim"] == 2
    assert doc["ideal_I3_dim"] == 2 and doc["R3_dim"] == 0
    assert doc["hc1_dim"] == 1


def test_ring_info_text_output():
    code, out, _ = run_cli(["ring", "info", "--preset", "matrix:2:2"])
    assert code == 0
    assert "mat2" in out
    assert "commutative: no" in out
    assert "dim [R,R] = 3" in out


def test_ring_source_must_be_unique():
    code, _, err = run_cli(["ring", "info"])
    assert code == 2 and "exactly one" in err
    code, _, err = run_cli(["ring", "info", "--preset", "gf:2",
                            "--ring", "whatever.toml"])
    assert code == 2


def test_bad_preset_and_missing_file():
    code, _, err = run_cli(["ring", "info", "--preset", "gf:4"])
    assert code == 2 and "error" in err
    code, _, err = run_cli(["ring", "info", "--ring", "/no/such/file.toml"])
    assert code == 2


def test_ring_file_input():
    text = """
field = "gf(3)"
basis = ["1", "i"]
unit = "1"
name = "gf9"
mul = [
  [0, 0, [[0, 1]]],
  [0, 1, [[1, 1]]],
  [1, 0, [[1, 1]]],
  [1, 1, [[0, -1]]],
]
"""
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "gf9.toml")
        with open(path, "w") as fh:
            fh.write(text)
        code, out, _ = run_cli(["ring", "info", "--ring", path, "--json"])
        assert code == 0
        doc = json.loads(out)
        assert doc["name"] == "gf9" and doc["dim"] == 2
        code, out, _ = run_cli(["h2", "st", "--ring", path, "--n", "3",
                                "--json"])
        assert code == 0
        doc = json.loads(out)
        # GF(9): R_3 = R, so H2(st_3) = 6 * 2
        assert doc["measured_h2"] == 12 and doc["match"]


def test_invalid_ring_file_is_input_error():
    text = """
field = "gf(2)"
basis = ["1", "x"]
unit = "1"
mul = [
  [0, 0, [[0, 1]]],
]
"""
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "bad.toml")
        with open(path, "w") as fh:
            fh.write(text)
        code, _, err = run_cli(["ring", "info", "--ring", path])
        assert code == 2 and "error" in err


def test_h2_st_json():
    code, out, _ = run_cli(["h2", "st", "--preset", "gf:2", "--n", "4",
                            "--json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["command"] == "h2 st"
    assert doc["target"] == "st"
    assert doc["measured_h2"] == 6 and doc["predicted_h2"] == 6
    assert doc["match"] is True and doc["dim"] == 15


def test_h2_sl_text():
    code, out, _ = run_cli(["h2", "sl", "--preset", "gf:7", "--n", "3"])
    assert code == 0
    assert "matches" in out and "H2(sl3" in out


def test_h2_needs_n_at_least_3():
    code, _, err = run_cli(["h2", "st", "--preset", "gf:2", "--n", "2"])
    assert code == 2 and "error" in err


def test_verify_json_pass_and_determinism():
    argv = ["verify", "--preset", "gf:3", "--n", "3", "--json"]
    code1, out1, _ = run_cli(argv)
    code2, out2, _ = run_cli(argv)
    assert code1 == code2 == 0
    doc1 = json.loads(out1)
    doc2 = json.loads(out2)
    assert doc1["passed"] is True
    assert doc1["dims"]["h2_st"] == 6
    assert doc1["dims"]["st_hat"] == 14
    assert all(c["passed"] for c in doc1["checks"])
    # identical up to wall-clock timings
    doc1.pop("timings_ms")
    doc2.pop("timings_ms")
    assert json.dumps(doc1, sort_keys=True) == json.dumps(doc2, sort_keys=True)


def test_verify_text_output():
    code, out, _ = run_cli(["verify", "--preset", "gf:2", "--n", "4"])
    assert code == 0
    assert "PASS" in out
    assert "checks:" in out and "dims:" in out


def test_guard_exit_code_and_override():
    code, _, err = run_cli(["h2", "sl", "--preset", "matrix:2:2", "--n", "5"])
    assert code == 3
    assert "max-dim" in err
    code, out, _ = run_cli(["h2", "sl", "--preset", "matrix:2:2", "--n", "5",
                            "--max-dim", "99", "--json"])
    assert code == 0
    assert json.loads(out)["measured_h2"] == 0


def test_mismatch_exit_code_wiring():
    # a disagreement between measured and predicted H2 must exit with 1;
    # no valid ring produces one, so substitute the computation
    real = cli.compute_h2
    fake = dict(ring="gf(2)", field="gf(2)", n=4, target="st", dim=15,
                measured_h2=5, predicted_h2=6, match=False,
                dims={"R": 1, "R_m": 1, "hc1": 0, "sl": 15})
    cli.compute_h2 = lambda *a, **k: fake
    try:
        code, out, _ = run_cli(["h2", "st", "--preset", "gf:2", "--n", "4"])
    finally:
        cli.compute_h2 = real
    assert code == 1
    assert "DISAGREES" in out


def test_json_outputs_are_sorted():
    code, out, _ = run_cli(["ring", "info", "--preset", "gf:5", "--json"])
    assert code == 0
    doc = json.loads(out)
    assert list(doc) == sorted(doc)
