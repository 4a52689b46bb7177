from __future__ import annotations

import json
import subprocess
import sys
from fractions import Fraction

import pytest

from subspace_codec import GabidulinParams, MatrixGF, enumerate_code, field_create, galois_field
from subspace_codec.cli import run
from subspace_codec.errors import FormatError
from subspace_codec.formats import field_literal, format_code, format_matrix, parse_code, parse_field, parse_matrix


def write_matrix(path, text):
    path.write_text(text, encoding="utf-8")
    return str(path)


# -- formats ---------------------------------------------------------------------

def test_field_literals_roundtrip():
    for q in (2, 3, 4, 16, 27):
        F = galois_field(q)
        assert parse_field(field_literal(F)) == F
    F = field_create(2, 4, 0b11001)
    assert field_literal(F) == "gf(2,4,poly=0b11001)"
    assert parse_field("gf(2,4,poly=0b11001)") == F
    with pytest.raises(FormatError):
        parse_field("GF16")


def test_matrix_roundtrip_and_errors():
    M = MatrixGF(galois_field(16), [[1, 15, 0], [7, 2, 9]])
    assert parse_matrix(format_matrix(M)) == M
    assert parse_matrix("rows=1 cols=2\n1 1\n", galois_field(2)).tolist() == [[1, 1]]
    with pytest.raises(FormatError):
        parse_matrix("rows=1 cols=2\n1 1\n")
    with pytest.raises(FormatError):
        parse_matrix("gf=gf(2) rows=2 cols=2\n1 1\n")
    with pytest.raises(FormatError):
        parse_matrix("gf=gf(2) rows=1 cols=2\n1 1 0\n")


def test_code_roundtrip():
    code = enumerate_code(GabidulinParams(4, 2, 2, 1))
    back = parse_code(format_code(code))
    assert back.codewords == code.codewords
    assert back.declared_type == code.declared_type
    assert back.declared_type.logq_size == Fraction(2)


# -- CLI ---------------------------------------------------------------------------

def test_bounds_commands(capsys):
    assert run(["bounds", "gabidulin", "--k", "1", "--m", "1", "--q", "2"]) == 0
    assert capsys.readouterr().out == "4\n"
    assert run(["bounds", "gabidulin", "--k", "1", "--m", "1", "--q", "2", "--loose"]) == 0
    assert capsys.readouterr().out == "9\n"
    assert run(["bounds", "singleton", "--N", "6", "--l", "2", "--D", "2", "--q", "2"]) == 0
    assert capsys.readouterr().out == "32\n"


def test_domain_error_exit_code(capsys):
    assert run(["bounds", "singleton", "--N", "5", "--l", "3", "--D", "2", "--q", "2"]) == 1
    err = capsys.readouterr().err
    assert "ParamViolation" in err and "N/2" in err


def test_usage_error_exit_code(capsys):
    assert run(["bounds"]) == 2
    assert run(["distance", "--metric", "xx", "--left", "a", "--right", "b"]) == 2


def test_distance_command(tmp_path, capsys):
    a = write_matrix(tmp_path / "a.mat", "gf=gf(2) rows=2 cols=3\n1 0 0\n0 1 0\n")
    b = write_matrix(tmp_path / "b.mat", "rows=1 cols=3\n1 0 0\n")
    assert run(["distance", "--metric", "di", "--left", a, "--right", a]) == 0
    assert capsys.readouterr().out == "0\n"
    assert run(["distance", "--metric", "ds", "--left", a, "--right", b]) == 0
    assert capsys.readouterr().out == "1\n"
    assert run(["distance", "--metric", "delta", "--rho", "1", "--left", a, "--right", b]) == 0
    assert capsys.readouterr().out == "0\n"
    assert run(["distance", "--metric", "di", "--left", a, "--right", str(tmp_path / "missing")]) == 1


def test_gabidulin_and_puncture_commands(tmp_path, capsys):
    out = tmp_path / "c.code"
    assert run(["gabidulin", "--q", "2", "--m", "3", "--l", "3", "--k", "1",
                "--enumerate", str(out), "--min-distance"]) == 0
    assert capsys.readouterr().out == "[6, 3, 3, 3]\n3\n"
    assert run(["puncture", "--in", str(out), "--seed", "4"]) == 0
    first = capsys.readouterr().out
    assert run(["puncture", "--in", str(out), "--seed", "4"]) == 0
    assert capsys.readouterr().out == first
    punct = parse_code(first)
    assert punct.ambient_dim == 5 and punct.max_dim == 2 and len(punct) == 8
    assert run(["gabidulin", "--q", "16", "--m", "30", "--l", "18", "--k", "15", "--min-distance"]) == 1
    assert "CodeTooLarge" in capsys.readouterr().err


def test_figure1_outputs_are_deterministic(tmp_path, capsys):
    paths = []
    for n in range(2):
        csv, svg = tmp_path / f"f{n}.csv", tmp_path / f"f{n}.svg"
        assert run(["figure1", "--csv", str(csv), "--svg", str(svg)]) == 0
        paths.append((csv.read_bytes(), svg.read_bytes()))
    assert paths[0] == paths[1]
    lines = paths[0][0].decode().strip().split("\n")
    assert len(lines) == 28 and lines[0].startswith("i,m,l,k,N,")
    assert paths[0][1].startswith(b"<?xml")
    assert run(["figure1"]) == 0
    assert capsys.readouterr().out.encode() == paths[0][0]
    assert run(["--format", "json", "figure1"]) == 0
    assert len(json.loads(capsys.readouterr().out)) == 27


def test_figure1_png(tmp_path):
    png = tmp_path / "f.png"
    assert run(["figure1", "--png", str(png)]) == 0
    assert png.read_bytes()[:4] == b"\x89PNG"


def test_simulate_seeding(monkeypatch, capsys):
    args = ["simulate", "--q", "2", "--m", "2", "--l", "2", "--k", "1", "--t", "1", "--rho", "0",
            "--trials", "200"]
    assert run(args + ["--seed", "3"]) == 0
    a = capsys.readouterr().out
    assert run(["--seed", "3"] + args) == 0
    assert capsys.readouterr().out == a
    monkeypatch.setenv("SUBSPACE_CODEC_SEED", "3")
    assert run(args) == 0
    assert capsys.readouterr().out == a
    rep = json.loads(a)
    assert rep["trials"] == 200 and rep["d_I"] == 2


def test_simulate_exhaustive(capsys):
    assert run(["--format", "text", "simulate", "--q", "2", "--m", "2", "--l", "2", "--k", "1",
                "--t", "1", "--rho", "0", "--exhaustive-adversary"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("trials=1536 ") and "failures=0" in out and "ambiguous=864" in out


def test_output_option(tmp_path, capsys):
    out = tmp_path / "o.txt"
    assert run(["-o", str(out), "bounds", "gabidulin", "--k", "2", "--m", "2", "--q", "2"]) == 0
    assert out.read_text() == "71\n" and capsys.readouterr().out == ""


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "subspace_codec", "bounds", "gabidulin",
                          "--k", "1", "--m", "1", "--q", "2"], capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout == "4\n"
