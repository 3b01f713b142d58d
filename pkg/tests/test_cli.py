import csv
import io
import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from corpus import PRINTED
from mrd.cli import run

CUBIC = ["--ell", "3", "--g", "1/(1-t^3)", "--f", "t/(1-t^3)", "--f", "t*(1+t^3)", "--f", "t/(1+t^3)"]
DOUBLE = ["--g", "1/(1-t^2)", "--f", "t", "--f", "t/(1-t^2)"]


def schema(name):
    return json.loads(resources.files("mrd").joinpath("schemas", f"{name}.schema.json").read_text())


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def call_json(capsys, *argv):
    code, out, err = call(capsys, *argv, "--format", "json")
    assert code == 0, err
    return json.loads(out)


def test_eval_t(capsys):
    code, out, _ = call(capsys, "eval", "t", "--order", "3")
    assert code == 0
    assert out.strip() == "0, 1, 0, 0"


def test_build_cubic_example(capsys):
    code, out, _ = call(capsys, "build", *CUBIC, "--rows", "9", "--cols", "9")
    assert code == 0
    assert [[int(x) for x in line.split()] for line in out.splitlines()] == PRINTED["cubic"]


def test_seq_a_raw(capsys):
    code, out, _ = call(capsys, "seq", *CUBIC, "--which", "A", "--terms", "4")
    assert out.strip() == "1, 0, 0, 1"


def test_formats_carry_identical_values(capsys):
    args = ["build", *CUBIC, "--rows", "6", "--cols", "6"]
    _, text, _ = call(capsys, *args)
    _, csv_out, _ = call(capsys, *args, "--format", "csv")
    js = call_json(capsys, *args)
    from_text = [line.split() for line in text.splitlines()]
    from_csv = list(csv.reader(io.StringIO(csv_out)))
    assert from_text == from_csv == js["entries"]


@pytest.mark.parametrize(
    "argv, name",
    [
        (["eval", "catalan()", "--order", "6"], "series"),
        (["build", *CUBIC, "--rows", "5", "--cols", "5"], "matrix"),
        (["prodmat", *CUBIC, "--size", "6"], "matrix"),
        (["inv", *CUBIC], "spec"),
        (["mul", *DOUBLE, "--g2", "1", "--f2", "t", "--f2", "t"], "spec"),
        (["seq", *CUBIC, "--terms", "6"], "seqchar"),
        (["tp", *DOUBLE, "--compressed", "--rows", "5", "--max-order", "3"], "tpreport"),
        (["pf", "--seq", "1,2,1", "--depth", "3", "--terms", "5"], "tpreport"),
        (["identity", "umbral", "--m", "2", "--n", "3"], "identityreport"),
        (["identity", "grunert", "--m", "3"], "identityreport"),
        (["identity", "fuss"], "identityreport"),
        (["identity", "riosum", "--g", "1/(1-t)", "--f", "t/(1-t)", "--m", "1"], "identityreport"),
    ],
)
def test_json_matches_schema(capsys, argv, name):
    jsonschema.validate(call_json(capsys, *argv), schema(name))


def test_compress_json(capsys):
    obj = call_json(capsys, "compress", *DOUBLE, "--rows", "4")
    jsonschema.validate(obj["matrix"], schema("matrix"))
    jsonschema.validate(obj["spec"], schema("spec"))
    assert obj["matrix"]["entries"][3] == ["1", "1", "2", "1"]


def test_spec_file_round_trip(capsys, tmp_path):
    spec = call_json(capsys, "inv", *CUBIC)
    path = tmp_path / "inv.json"
    path.write_text(json.dumps(spec))
    back = call_json(capsys, "inv", "--spec", str(path))
    original = call_json(capsys, "build", *CUBIC, "--rows", "6", "--cols", "6")
    twice = call_json(capsys, "build", "--spec", _write(tmp_path, back), "--rows", "6", "--cols", "6")
    assert twice == original


def _write(tmp_path, obj):
    p = tmp_path / "back.json"
    p.write_text(json.dumps(obj))
    return str(p)


def test_spec_file_with_expressions(capsys, tmp_path):
    p = tmp_path / "pascal.json"
    p.write_text(json.dumps({"ell": 1, "g": "1/(1-t)", "f": ["t/(1-t)"]}))
    obj = call_json(capsys, "build", "--spec", str(p), "--rows", "4", "--cols", "4")
    assert obj["entries"][3] == ["1", "3", "3", "1"]


@pytest.mark.parametrize(
    "argv, code",
    [
        (["eval", "1+"], 2),
        (["build", "--g", "t", "--f", "t", "--rows", "2", "--cols", "2"], 2),
        (["build", "--g", "1", "--f", "t+t^2", "--f", "t", "--rows", "2", "--cols", "2"], 2),
        (["eval", "revert(1+t)"], 1),
        (["eval", "sqrt(2+t)"], 1),
        (["eval", "1/t"], 1),
        (["inv", "--g", "1", "--f", "t^2"], 2),
        (["tp", *DOUBLE, "--compressed", "--rows", "10", "--max-order", "4", "--budget", "100"], 3),
        (["pf", "--seq", "1,1,-1", "--depth", "2", "--terms", "4"], 0),
    ],
)
def test_exit_codes(capsys, argv, code):
    got, _, err = call(capsys, *argv)
    assert got == code
    if code:
        assert err.startswith("mrd: ")


def test_syntax_error_points_at_byte(capsys):
    _, _, err = call(capsys, "eval", "(1-t")
    assert "at byte 4" in err
    assert err.splitlines()[-1].index("^") == 4 + len("    ")


def test_grammar(capsys):
    code, out, _ = call(capsys, "grammar")
    assert code == 0 and "fuss" in out


def test_console_script():
    proc = subprocess.run(
        [sys.executable, "-m", "mrd.cli", "eval", "1/(1-t)", "--order", "2"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "1, 1, 1"
