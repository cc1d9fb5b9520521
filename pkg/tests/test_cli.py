import json

import pytest

from og10lat.cli import SUITES, main


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_list(capsys):
    code, out, _ = run(capsys, "verify", "--list")
    assert code == 0
    assert set(out.split()) == set(SUITES)


def test_verify_unknown_suite(capsys):
    code, _, err = run(capsys, "verify", "nosuchsuite")
    assert code == 2
    assert "nosuchsuite" in err


@pytest.mark.parametrize(
    "suite",
    ["og10-classes", "gamma", "psi", "fm", "transport", "fujiki", "theta", "l1-genus"],
)
def test_fast_suites_pass(suite, tmp_path, capsys):
    out_path = tmp_path / "report.json"
    code, _, _ = run(capsys, "verify", suite, "--out", str(out_path))
    assert code == 0
    report = json.loads(out_path.read_text())
    assert report["suite"] == suite
    assert all(c["status"] == "PASS" for c in report["checks"])
    assert isinstance(report["elapsed_ms"], int)


def test_report_deterministic_content(tmp_path, capsys):
    p1 = tmp_path / "a.json"
    p2 = tmp_path / "b.json"
    assert run(capsys, "verify", "fujiki", "--out", str(p1))[0] == 0
    assert run(capsys, "verify", "fujiki", "--out", str(p2))[0] == 0
    d1 = json.loads(p1.read_text())
    d2 = json.loads(p2.read_text())
    d1.pop("elapsed_ms")
    d2.pop("elapsed_ms")
    assert d1 == d2


def test_disc_reports(capsys):
    code, out, _ = run(capsys, "disc", "OG10")
    assert code == 0 and out.strip() == "Z/3, q(gen0) = -2/3 mod 2"
    code, out, _ = run(capsys, "disc", "G2neg")
    assert code == 0 and out.strip() == "Z/3, q(gen0) = -2/3 mod 2"
    code, out, _ = run(capsys, "disc", "U")
    assert code == 0 and out.strip() == "trivial"
    code, _, _ = run(capsys, "disc", "NOPE")
    assert code == 2


def test_random_deterministic(tmp_path, capsys):
    p1 = tmp_path / "a.json"
    p2 = tmp_path / "b.json"
    assert run(capsys, "random", "--seed", "9", "--length", "15", "--out", str(p1))[0] == 0
    assert run(capsys, "random", "--seed", "9", "--length", "15", "--out", str(p2))[0] == 0
    assert p1.read_bytes() == p2.read_bytes()


def test_random_length_zero_is_identity(tmp_path, capsys):
    p = tmp_path / "m.json"
    assert run(capsys, "random", "--seed", "1", "--length", "0", "--out", str(p))[0] == 0
    doc = json.loads(p.read_text())
    assert doc["lattice"] == "OG10"
    m = [[int(x) for x in row] for row in doc["matrix"]]
    assert m == [[int(i == j) for j in range(24)] for i in range(24)]


def test_decompose_roundtrip(tmp_path, capsys):
    mp = tmp_path / "m.json"
    wp = tmp_path / "w.json"
    assert run(capsys, "random", "--seed", "42", "--length", "6", "--out", str(mp))[0] == 0
    assert run(capsys, "decompose", "--matrix", str(mp), "--out", str(wp))[0] == 0
    word = json.loads(wp.read_text())
    target = json.loads(mp.read_text())["matrix"]
    assert word["product"] == target
    assert set(f["tag"] for f in word["factors"]) <= {"RK", "RB", "RL", "RA", "G3"}


def test_decompose_identity(tmp_path, capsys):
    mp = tmp_path / "m.json"
    wp = tmp_path / "w.json"
    m = [[str(int(i == j)) for j in range(24)] for i in range(24)]
    mp.write_text(json.dumps({"lattice": "OG10", "matrix": m}))
    assert run(capsys, "decompose", "--matrix", str(mp), "--out", str(wp))[0] == 0
    assert json.loads(wp.read_text())["factors"] == []


def test_decompose_error_codes(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    m = [[str(int(i == j)) for j in range(24)] for i in range(24)]
    m[0][1] = "1"
    bad.write_text(json.dumps({"lattice": "OG10", "matrix": m}))
    assert run(capsys, "decompose", "--matrix", str(bad))[0] == 3
    neg = tmp_path / "neg.json"
    m = [[str(-int(i == j)) for j in range(24)] for i in range(24)]
    neg.write_text(json.dumps({"lattice": "OG10", "matrix": m}))
    assert run(capsys, "decompose", "--matrix", str(neg))[0] == 4


def test_no_command_prints_help(capsys):
    assert run(capsys)[0] == 2
