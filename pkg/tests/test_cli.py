"""Unit tests for the command-line surface."""

import json

import pytest

from prongflow.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_surgery_expansive(capsys):
    code, out, _ = run(capsys, "surgery", "--p", "2", "--k", "0", "--sigma", "1,0")
    assert code == 0
    rec = json.loads(out)
    assert rec["p_new"] == 2 and rec["expansive"] is True
    assert rec["sigma0"] == [0, 1]


def test_surgery_one_prong(capsys):
    code, out, _ = run(capsys, "surgery", "--p", "2", "--k", "1", "--sigma", "0,1")
    assert code == 3
    rec = json.loads(out)
    assert rec["p_new"] == 1 and rec["expansive"] is False


def test_surgery_inadmissible(capsys):
    code, out, err = run(capsys, "surgery", "--p", "2", "--k", "0", "--sigma", "0,1")
    assert code == 2
    assert out == ""          # stdout is payload-only
    assert "inadmissible" in err


def test_surgery_malformed(capsys):
    code, _, err = run(capsys, "surgery", "--p", "2", "--sigma", "whoops")
    assert code == 1 and err
    code, _, err = run(capsys, "surgery", "--sigma", "1,0")
    assert code == 1  # missing p


def test_scan_csv(capsys):
    code, out, _ = run(capsys, "scan", "--p", "2", "--k", "1", "--box", "3")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "a,b,K,p_new,expansive"
    rows = [line.split(",") for line in lines[1:]]
    # sorted lexicographically, p_new = |2a + b|
    keys = [(int(a), int(b)) for a, b, *_ in rows]
    assert keys == sorted(keys)
    for a, b, K, p_new, expansive in rows:
        assert int(p_new) == abs(2 * int(a) + int(b))
        assert expansive == ("false" if int(p_new) == 1 else "true")
    assert not out.endswith("\r\n")  # LF line endings


def test_scan_rejects_p1(capsys):
    code, out, err = run(capsys, "scan", "--p", "1")
    assert code == 1 and out == "" and err


def test_verify_suite(capsys, tmp_path):
    out_path = tmp_path / "details.csv"
    code, out, _ = run(capsys, "verify", "--suite", "metrics", "--p", "3",
                       "--seed", "5", "--pairs", "40", "--out", str(out_path))
    assert code == 0
    rep = json.loads(out)
    assert rep["passed"] is True
    text = out_path.read_text()
    assert text.startswith("suite,statement,passed")
    assert "prop4.2(1) p=3" in text


def test_verify_determinism(capsys):
    argv = ["verify", "--suite", "models", "--seed", "7", "--pairs", "40"]
    code1, out1, _ = run(capsys, *argv)
    code2, out2, _ = run(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2


def test_verify_unknown_suite_rejected():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "bogus"])
    assert exc.value.code == 1


def test_orbit_trace(capsys):
    code, out, _ = run(capsys, "orbit", "--p", "3", "--k", "0", "--r", "1",
                       "--theta", "0", "--horizon", "2", "--step", "1")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "t,r,theta,s,u,v,quadrant"
    rows = [line.split(",") for line in lines[1:]]
    assert len(rows) == 3
    # stable-prong start: r decays by 2^{-2/3} per unit time
    r_vals = [float(row[1]) for row in rows]
    for n, r in enumerate(r_vals):
        assert r == pytest.approx(2.0 ** (-2.0 * n / 3.0))
    # floats printed with 17 significant digits survive a round trip
    assert float(rows[1][1]) == 2.0 ** (-2.0 / 3.0)


def test_orbit_single_row(capsys):
    code, out, _ = run(capsys, "orbit", "--p", "2", "--horizon", "0")
    assert code == 0
    assert len(out.splitlines()) == 2


def test_config_file_and_flag_override(capsys, tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"p": 2, "k": 1, "sigma": [0, 1]}))
    code, out, _ = run(capsys, "surgery", "--config", str(cfg))
    assert code == 3 and json.loads(out)["p_new"] == 1
    # CLI flag overrides the file value
    code, out, _ = run(capsys, "surgery", "--config", str(cfg), "--sigma", "1,0")
    assert code == 0 and json.loads(out)["p_new"] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "surgery", "--config", str(bad))
    assert code == 1 and err


def test_argparse_errors_exit_1():
    with pytest.raises(SystemExit) as exc:
        main(["scan", "--box", "nope", "--p", "2"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["unknown-command"])
    assert exc.value.code == 1
