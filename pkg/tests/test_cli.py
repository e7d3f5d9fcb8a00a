import json
import subprocess
import sys

import pytest

from arrpd.cli import main


def run_cli(args, stdin=None):
    """Run in-process; returns (exit code, stdout)."""
    import contextlib
    import io

    out = io.StringIO()
    code = None
    old_stdin = sys.stdin
    try:
        if stdin is not None:
            sys.stdin = io.StringIO(stdin)
        with contextlib.redirect_stdout(out):
            code = main(args)
    finally:
        sys.stdin = old_stdin
    return code, out.getvalue()


def test_chi_examples():
    code, out = run_cli(["chi", "examples:boolean4"])
    assert code == 0
    assert "[1, -4, 6, -4, 1]" in out


def test_examples_list_and_dump_roundtrip():
    code, out = run_cli(["examples", "list"])
    assert code == 0 and "braid5" in out
    code, dump = run_cli(["examples", "dump", "braid5"])
    assert code == 0
    code, via_stdin = run_cli(["chi", "-"], stdin=dump)
    code2, direct = run_cli(["chi", "examples:braid5"])
    assert via_stdin == direct


def test_b2_report(tmp_path):
    path = tmp_path / "b2.json"
    code, out = run_cli(["b2", "examples:spog9", "--pivot", "0 0 0 1", "--json", str(path)])
    assert code == 0
    assert "b2 = 30" in out
    data = json.loads(path.read_text())
    assert data["format_version"] == "1"
    assert data["b2"] == 30 and data["b2_zero"] == 22 and data["upper_equality"] is True


def test_pivot_by_index():
    code, out = run_cli(["restrict", "examples:boolean3", "--pivot", "1"])
    assert code == 0
    assert "dim 2" in out


def test_bad_pivot_is_error(capsys):
    code, _ = run_cli(["b2", "examples:boolean3", "--pivot", "1 1 1"])
    assert code == 1


def test_parse_error_reports_line():
    code, _ = run_cli(["chi", "-"], stdin="dim 2\n1\n")
    assert code == 1


def test_ziegler_and_localize():
    code, out = run_cli(["ziegler", "examples:boolean3", "--pivot", "1 0 0"])
    assert code == 0 and "dim 2" in out
    code, out = run_cli(["localize", "examples:boolean3", "--flat", "1,2"])
    assert code == 0 and out.count("\n") >= 2


def test_free_and_exit_codes(tmp_path):
    code, out = run_cli(["free", "examples:braid5"])
    assert code == 0 and "exponents [1, 2, 3, 4]" in out
    # not free and search exhausts: inconclusive exit code 2
    code, out = run_cli(["free", "examples:generic-3-4"])
    assert code == 2


def test_pd_modes(tmp_path):
    path = tmp_path / "pd.json"
    code, out = run_cli(["pd", "examples:generic-3-4", "--both", "--json", str(path)])
    assert code == 0
    assert "exact pd = 1" in out and "inferred pd = 1" in out
    data = json.loads(path.read_text())
    assert data["exact"] == 1 and data["inferred_interval"] == [1, 1]


def test_resolve():
    code, out = run_cli(["resolve", "examples:generic-3-4"])
    assert code == 0 and "pd=1" in out


def test_surject():
    code, out = run_cli(["surject", "examples:ziegler1", "--pivot", "1 0 0", "--map", "euler"])
    assert code == 0 and "True" in out
    code, out = run_cli(["surject", "examples:ziegler2", "--pivot", "1 0 0", "--map", "euler"])
    assert code == 0 and "False" in out


def test_classify_and_verify_roundtrip(tmp_path):
    path = tmp_path / "cls.json"
    code, out = run_cli(["classify", "examples:generic-3-4", "--json", str(path)])
    assert code == 0
    data = json.loads(path.read_text())
    assert data["ipd"] == 1
    cert = tmp_path / "cert.json"
    cert.write_text(json.dumps({"format_version": "1", "certificate": data["certificate"]}))
    code, out = run_cli(["verify", str(cert)])
    assert code == 0 and "replays cleanly" in out


def test_verify_rejects_tampered(tmp_path):
    path = tmp_path / "cls.json"
    run_cli(["classify", "examples:generic-3-4", "--json", str(path)])
    data = json.loads(path.read_text())
    data["certificate"]["value"] = 0
    cert = tmp_path / "cert.json"
    cert.write_text(json.dumps({"certificate": data["certificate"]}))
    code, out = run_cli(["verify", str(cert)])
    assert code == 1


def test_unknown_example():
    code, _ = run_cli(["chi", "examples:nope"])
    assert code == 1


def test_console_entry_point():
    # the installed script must answer too
    proc = subprocess.run(
        [sys.executable, "-m", "arrpd.cli", "chi", "examples:boolean3"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "[1, -3, 3, -1]" in proc.stdout


def test_json_reports_validate_against_shipped_schema(tmp_path):
    import jsonschema
    from importlib import resources

    schema = json.loads(
        resources.files("arrpd").joinpath("schemas/report.schema.json").read_text()
    )
    cert_schema = json.loads(
        resources.files("arrpd").joinpath("schemas/certificate.schema.json").read_text()
    )
    jobs = [
        (["chi", "examples:boolean3"], "chi"),
        (["lattice", "examples:boolean3"], "lattice"),
        (["b2", "examples:boolean3", "--pivot", "1"], "b2"),
        (["ziegler", "examples:boolean3", "--pivot", "1"], "ziegler"),
        (["restrict", "examples:boolean3", "--pivot", "1"], "restrict"),
        (["free", "examples:boolean3"], "free"),
        (["pd", "examples:generic-3-4", "--both"], "pd"),
        (["classify", "examples:generic-3-4"], "classify"),
        (["resolve", "examples:generic-3-4"], "resolve"),
        (["surject", "examples:boolean3", "--pivot", "1"], "surject"),
    ]
    for args, cmd in jobs:
        path = tmp_path / f"{cmd}.json"
        code, _ = run_cli(args + ["--json", str(path)])
        assert code == 0, cmd
        data = json.loads(path.read_text())
        jsonschema.validate(data, schema)
    # certificate schema: wrap the classify certificate
    data = json.loads((tmp_path / "classify.json").read_text())
    cert = {"format_version": "1", "certificate": data["certificate"]}
    jsonschema.validate(cert, cert_schema)
