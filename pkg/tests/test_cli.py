import pathlib

import pytest

from cbvcost.cli import main
from cbvcost.turing import EVEN_PALINDROME_SPEC, FLIP_SPEC


@pytest.fixture
def flip_path(tmp_path):
    path = tmp_path / "flip.tm"
    path.write_text(FLIP_SPEC)
    return str(path)


def test_normalize_success(capsys):
    assert main(["normalize", r"(\x.x)(\y.y)"]) == 0
    out = capsys.readouterr().out
    assert "normal form: \\x0.x0" in out
    assert "steps: 1" in out
    assert "time: 6" in out


def test_normalize_parse_error(capsys):
    assert main(["normalize", r"(\x."]) == 1
    assert "offset 4" in capsys.readouterr().err


def test_normalize_fuel_exhausted(capsys):
    assert main(["normalize", r"(\x.x x)(\x.x x)", "--fuel", "100"]) == 2
    assert "no normal form" in capsys.readouterr().out


def test_normalize_trace_deterministic(tmp_path, capsys):
    out = tmp_path / "trace.csv"
    blobs = []
    for _ in range(2):
        assert main(["normalize", r"(\x.x x)(\y.y)", "--out", str(out)]) == 0
        blobs.append(out.read_bytes())
    assert blobs[0] == blobs[1]
    assert blobs[0].startswith(b"step,cost,size_after,position")


def test_run_tm(flip_path, capsys):
    assert main(["run-tm", flip_path, "011"]) == 0
    out = capsys.readouterr().out
    assert "output: 100_" in out and "steps: 4" in out


def test_run_tm_bad_file(tmp_path, capsys):
    path = tmp_path / "bad.tm"
    path.write_text("alphabet 0 1\n")
    assert main(["run-tm", str(path), "0"]) == 1
    assert "line 1" in capsys.readouterr().err


def test_compile_tm(flip_path, capsys):
    assert main(["compile-tm", flip_path, "011"]) == 0
    out = capsys.readouterr().out
    assert "output: 100" in out and "machine steps: 4" in out


def test_compile_tm_palindrome(tmp_path, capsys):
    path = tmp_path / "pal.tm"
    path.write_text(EVEN_PALINDROME_SPEC)
    assert main(["compile-tm", str(path), "0110"]) == 0
    assert "output: 1" in capsys.readouterr().out


def test_machine_r_theta_input(capsys):
    assert main(["machine-r", "@L*0L*0"]) == 0
    out = capsys.readouterr().out
    assert "output: L*0" in out and "iterations: 1" in out


def test_machine_r_term_input_cross_checks(capsys, tmp_path):
    log = tmp_path / "iters.csv"
    assert main(["machine-r", r"(\x.\y.x y y)(\z.z)(\w.w)", "--out", str(log)]) == 0
    out = capsys.readouterr().out
    assert "engine cross-check: ok" in out
    lines = log.read_text().splitlines()
    assert lines[0] == "iteration,tl_before,tl_after,ops"
    assert len(lines) == 5


def test_machine_r_warns_on_many_free_names(capsys):
    assert main(["machine-r", "a b"]) == 0
    assert "warning" in capsys.readouterr().err


def test_machine_r_value_input(capsys):
    assert main(["machine-r", "L*0"]) == 0
    assert "iterations: 0" in capsys.readouterr().out


def test_encode_church(capsys):
    assert main(["encode", "--church", "2"]) == 0
    assert capsys.readouterr().out.strip() == r"\x0.\x1.x0 (x0 x1)"


def test_encode_scott(capsys):
    assert main(["encode", "--scott", "ab", "--alphabet", "a,b"]) == 0
    assert capsys.readouterr().out.strip().startswith("\\x0.")


def test_encode_theta(capsys):
    assert main(["encode", "--theta", r"(\x.x y)(\x.\y.\z.x)"]) == 0
    assert capsys.readouterr().out.strip() == "@L@*0*LLL*10"


def test_encode_scott_bad_symbol(capsys):
    assert main(["encode", "--scott", "abc", "--alphabet", "a,b"]) == 1


def test_bench_pca_costs(tmp_path, capsys):
    out = tmp_path / "pca.csv"
    assert main(["bench", "PcaCosts", "--out", str(out)]) == 0
    text = out.read_text()
    assert text.splitlines()[0] == "combinator,case,cost"
    assert "swap" in text


def test_bench_csv_byte_identical(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["bench", "PcaCosts", "--out", str(a)]) == 0
    assert main(["bench", "PcaCosts", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_bench_cost_growth(tmp_path, capsys):
    out = tmp_path / "growth.csv"
    assert main(["bench", "CostGrowth", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "n,steps,total_cost,time,ratio"
    assert len(lines) == 11
