import json
import subprocess
import sys

import pytest

from valtop.cli import main
from valtop.closeness import certificate_from_json, table_from_json, verify_certificate
from valtop.valuations import probe_set

BAD_V1 = {"ring": "Z", "monoid": "Z", "entries": [{"elem": "2", "value": 5}, {"elem": "4", "value": 2}],
          "backing": None}


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, "--json", *argv)
    return code, json.loads(out)


@pytest.fixture
def bad_table(tmp_path):
    p = tmp_path / "bad_v1.json"
    p.write_text(json.dumps(BAD_V1))
    return p


def test_eval(capsys):
    code, data = run_json(capsys, "eval", "--valuation", "padic(2)", "--elem", "12")
    assert code == 0 and data["value"] == [2]
    code, out, _ = run(capsys, "eval", "--valuation", "gauss(p=2,gamma=1/2)", "--elem", "x^2+2*x")
    assert code == 0 and out.strip().endswith("= 1")
    code, data = run_json(capsys, "eval", "--valuation", "padic(2)", "--elem", "3/2", "--ring", "Frac(Z)")
    assert data["value"] == [-1]


def test_check_writes_certificate(capsys, bad_table):
    code, out, _ = run(capsys, "check", "--table", str(bad_table))
    assert code == 1
    assert "V1 at (2, 2)" in out
    cert_path = bad_table.with_name("bad_v1.cert.json")
    assert cert_path.exists()
    cert = certificate_from_json(json.loads(cert_path.read_text()))
    f = table_from_json(BAD_V1)
    assert verify_certificate(cert, f, probe_set(cert.cylinder.group)).ok


def test_check_clean_table(capsys, tmp_path):
    p = tmp_path / "good.json"
    p.write_text(json.dumps({"ring": "Z", "monoid": "Z", "entries": [{"elem": "2", "value": 1}],
                             "backing": "padic(2)"}))
    code, data = run_json(capsys, "check", "--table", str(p))
    assert code == 0 and data["violation"] is None


def test_separate_round_trip(capsys, bad_table):
    run(capsys, "check", "--table", str(bad_table))
    cert = bad_table.with_name("bad_v1.cert.json")
    code, data = run_json(capsys, "separate", "--table", str(bad_table), "--cert", str(cert))
    assert code == 0 and data["verdict"]["ok"] is True
    code, data = run_json(capsys, "separate", "--table", str(bad_table),
                          "--probe", "padic(2)", "--probe", "trivial")
    assert code == 0 and data["verdict"]["ok"] is True


def test_separate_rejects_tampered_certificate(capsys, bad_table, tmp_path):
    run(capsys, "check", "--table", str(bad_table))
    cert = json.loads(bad_table.with_name("bad_v1.cert.json").read_text())
    for c in cert["constraints"]:
        if c["elem"] == "4":
            c["open"] = [{"lower": [1], "upper": [12], "inf": False}]
    cert["side_data"]["W"] = [{"lower": [1], "upper": [12], "inf": False}]
    p = tmp_path / "tampered.json"
    p.write_text(json.dumps(cert))
    code, data = run_json(capsys, "separate", "--table", str(bad_table), "--cert", str(p))
    assert code == 1 and data["verdict"]["ok"] is False and not data["verdict"]["conditions_hold"]


def test_witness_t1(capsys):
    code, data = run_json(capsys, "--window", "8", "witness-t1", "--valuation", "padic(2)", "--a0", "2",
                          "--gamma2", "2", "--topology", "tethered(2,1)")
    assert code == 1 and data["exceptions"] == 0
    code, _, err = run(capsys, "--window", "6", "witness-t1", "--valuation", "padic(2)", "--a0", "2",
                       "--gamma2", "2", "--topology", "A1")
    assert code == 2 and "valtop: error" in err


def test_topo_compare(capsys):
    code, out, _ = run(capsys, "topo", "compare", "--group", "Q", "--fine", "A2", "--coarse", "A3")
    assert code == 1 and "]-inf,0[ u ]5,inf]" in out
    code, data = run_json(capsys, "topo", "compare", "--group", "Z", "--fine", "A2", "--coarse", "A3")
    assert code == 0 and data["consistent"] and data["strict"] is None


def test_topo_compare_with_samples(capsys, tmp_path):
    p = tmp_path / "samples.json"
    p.write_text(json.dumps([[{"lower": [3], "upper": "+inf", "inf": True}]]))
    code, data = run_json(capsys, "topo", "compare", "--group", "Z", "--fine", "A1", "--coarse", "A2",
                          "--samples", str(p))
    assert code == 1 and data["strict"] is not None


def test_topo_props(capsys):
    code, _ = run_json(capsys, "topo", "props", "--topology", "A1", "--group", "Z")
    assert code == 0
    code, data = run_json(capsys, "topo", "props", "--topology", "A2", "--group", "Q")
    assert code == 1


def test_spectra(capsys):
    code, data = run_json(capsys, "spectra", "--valuation", "padic(2)", "--query", "valspec", "--args", "4", "2")
    assert code == 0 and data["member"] is True
    code, data = run_json(capsys, "spectra", "--valuation", "padic(2)", "--query", "zariski",
                          "--args", "3/2", "--ring", "Frac(Z)")
    assert data["member"] is False
    code, data = run_json(capsys, "spectra", "--valuation", "monomial(w=[1,1])", "--query", "weak",
                          "--args", "x^2", "3/2")
    assert data["member"] is True
    code, data = run_json(capsys, "spectra", "--valuation", "padic(2)", "--query", "patch", "--args", "3", "2")
    assert data["member"] is True


@pytest.mark.parametrize("argv", [
    ["eval", "--valuation", "padic(4)", "--elem", "2"],
    ["eval", "--valuation", "padic(2)", "--elem", "x+*2"],
    ["check", "--table", "/nonexistent/table.json"],
    ["topo", "compare", "--group", "R", "--fine", "A1", "--coarse", "A2"],
    ["spectra", "--valuation", "padic(2)", "--query", "valspec", "--args", "4"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("valtop: error")


def test_parse_error_reports_position(capsys):
    _, _, err = run(capsys, "eval", "--valuation", "padic(2)", "--elem", "x+*2")
    assert "position 2" in err


def test_json_is_deterministic(bad_table, tmp_path):
    outs = []
    for i in range(2):
        cert = tmp_path / f"c{i}.json"
        r = subprocess.run([sys.executable, "-m", "valtop", "--json", "check", "--table", str(bad_table),
                            "--out", str(cert)], capture_output=True, text=True)
        assert r.returncode == 1
        outs.append((r.stdout.replace(str(cert), "CERT"), cert.read_bytes()))
    assert outs[0] == outs[1]
