from __future__ import annotations

import json
import subprocess
import sys

import pytest

from perfcodes.cli import run
from perfcodes.formats import load_code, save_code
from perfcodes.hamming import hamming_code


def cli(capsys, *argv):
    code = run([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def ham7(tmp_path):
    path = tmp_path / "h.code"
    save_code(path, hamming_code(2, 3))
    return path


def test_verify_exit_codes(capsys, ham7, tmp_path):
    code, out, _ = cli(capsys, "verify", ham7)
    assert code == 0 and out.startswith("perfect")
    lines = ham7.read_text().splitlines()
    cut = tmp_path / "cut.code"
    cut.write_text("\n".join(lines[:2] + lines[3:]) + "\n")
    code, out, _ = cli(capsys, "verify", cut)
    assert code == 1
    cert = out.split("certificate: ")[1].strip()
    missing = lines[2]
    assert sum(a != b for a, b in zip(cert, missing)) <= 1


def test_qg_count(capsys):
    code, out, _ = cli(capsys, "qg-count", 2, 3)
    assert (code, out) == (0, "12\n")
    code, out, _ = cli(capsys, "--json", "qg-count", 3, 2)
    assert json.loads(out)["count"] == 2


def test_hamming_and_measures(capsys, tmp_path):
    out_path = tmp_path / "h32.code"
    assert cli(capsys, "hamming", 3, 2, "-o", out_path)[0] == 0
    assert load_code(out_path) == hamming_code(3, 2)
    assert cli(capsys, "mindist", out_path)[1] == "3\n"
    assert cli(capsys, "rank", out_path)[1] == "2\n"
    code, out, _ = cli(capsys, "hamming", 2, 2)
    assert out == "2 3\n000\n111\n"


def test_writers_are_deterministic(capsys, tmp_path):
    cli(capsys, "hamming", 2, 4, "-o", tmp_path / "a.code")
    cli(capsys, "hamming", 2, 4, "-o", tmp_path / "b.code")
    assert (tmp_path / "a.code").read_bytes() == (tmp_path / "b.code").read_bytes()


def test_bound(capsys):
    code, out, _ = cli(capsys, "bound", 7, 2)
    assert code == 0 and out.splitlines()[0] == "7 2 3 2 2 4"
    code, out, _ = cli(capsys, "--json", "bound", 13, 3)
    data = json.loads(out)
    assert int(data["bound"]) == 48**9 and data["diagnostic"]


def test_decompose_then_combine(capsys, ham7, tmp_path):
    bundle = tmp_path / "bundle"
    code, out, _ = cli(capsys, "decompose", ham7, 2, "-o", bundle)
    assert code == 0 and out.startswith("2 3 2 3 1 2 1")
    code, out, _ = cli(capsys, "combine", bundle / "manifest.txt", "-o", tmp_path / "back.code")
    assert code == 0
    assert len(load_code(tmp_path / "back.code")) == 16
    code, _, err = cli(capsys, "decompose", ham7, 3)
    assert code == 2 and "BadLength" in err
    code, _, err = cli(capsys, "decompose", ham7, 4)
    assert code == 2 and "RankTooHigh" in err


def test_component_and_shift(capsys, tmp_path):
    (tmp_path / "c.code").write_text("2 1\n0\n")
    manifest = tmp_path / "mp.txt"
    manifest.write_text("q 2\nmu 000\nv identity\nh identity\nV linear:1,1\ncsharp c.code\nH linear:1,1,1,1\n")
    code, out, _ = cli(capsys, "component", "mollard", manifest, "-o", tmp_path / "k.code")
    assert code == 0 and "size=8" in out and "verified=True" in out
    code, out, _ = cli(capsys, "shift", tmp_path / "k.code", "111", "-o", tmp_path / "k111.code")
    assert code == 0
    ph = tmp_path / "ph.txt"
    ph.write_text("q 3\nmu 0\nv linear:1,1\nh linear:1,2\nV linear:1,1\nk 1\npartitions coset\nQ identity\n")
    code, out, _ = cli(capsys, "--json", "component", "phelps", ph, "--method", "solve")
    assert code == 0 and json.loads(out)["size"] == 9


def test_partition_and_generate(capsys, tmp_path):
    code, out, _ = cli(capsys, "partition", 2, 3)
    assert code == 0 and out.count("--") == 3
    code, out, _ = cli(capsys, "generate", 7, 2, "-o", tmp_path / "gen")
    assert code == 0 and out == "7 2 4\n"
    assert len(list((tmp_path / "gen").glob("*.code"))) == 4


def test_usage_errors(capsys, tmp_path):
    assert cli(capsys, "verify", tmp_path / "missing.code")[0] == 2
    assert cli(capsys, "--seed", -1, "bound", 7, 2)[0] == 2
    assert cli(capsys, "qg-count", 5, 3)[0] == 2
    assert run([]) == 2
    capsys.readouterr()


def test_module_entry_point(ham7):
    proc = subprocess.run([sys.executable, "-m", "perfcodes.cli", "verify", str(ham7)], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("perfect")
