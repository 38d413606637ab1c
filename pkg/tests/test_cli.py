import csv
import shutil
import subprocess

import numpy as np
import pytest

from sparsedct import build_y, fft_radix2
from sparsedct.cli import EXIT_OK, EXIT_USAGE, EXIT_VERIFY, main
from sparsedct.vecio import read_vector, write_vector


def run(*argv):
    return main([str(a) for a in argv])


def test_gen_then_ifft(tmp_path):
    spec, truth, out = tmp_path / "s.txt", tmp_path / "x.txt", tmp_path / "y.txt"
    assert run("gen", "--n-exp", 10, "--block-length", 12, "--seed", 4,
               "--out", spec, "--truth", truth) == EXIT_OK
    assert run("ifft", spec, "--out", out, "--epsilon", 1e-8) == EXIT_OK
    assert np.allclose(read_vector(out), build_y(read_vector(truth)), atol=1e-10)


def test_gen_then_idct(tmp_path):
    coeffs, truth, out = tmp_path / "c.txt", tmp_path / "x.txt", tmp_path / "r.txt"
    assert run("gen", "--mode", "idct", "--n-exp", 9, "--block-length", 7,
               "--out", coeffs, "--truth", truth, "--no-zero-fill") == EXIT_OK
    assert run("idct", coeffs, "--out", out) == EXIT_OK
    assert np.allclose(read_vector(out), read_vector(truth), atol=1e-10)


def test_seed_env_fallback(tmp_path, monkeypatch):
    a, b, c = tmp_path / "a", tmp_path / "b", tmp_path / "c"
    monkeypatch.setenv("SPARSEDCT_SEED", "17")
    run("gen", "--n-exp", 6, "--block-length", 3, "--out", a)
    run("gen", "--n-exp", 6, "--block-length", 3, "--out", b)
    monkeypatch.delenv("SPARSEDCT_SEED")
    run("gen", "--n-exp", 6, "--block-length", 3, "--seed", 17, "--out", c)
    assert a.read_text() == b.read_text() == c.read_text()
    monkeypatch.setenv("SPARSEDCT_SEED", "x")
    assert run("gen", "--n-exp", 6, "--block-length", 3, "--out", a) == EXIT_USAGE


def test_noisy_gen_reports_snr(tmp_path, capsys):
    assert run("gen", "--n-exp", 6, "--block-length", 3, "--snr", 30, "--out", tmp_path / "n") == EXIT_OK
    assert "achieved_snr_db=30.0" in capsys.readouterr().err


def test_bench_and_noise_sweep(tmp_path):
    bench, sweep = tmp_path / "b.csv", tmp_path / "s.csv"
    assert run("bench", "--n-exp", 8, "--block-length", "3,5", "--trials", 2, "--out", bench) == EXIT_OK
    rows = list(csv.DictReader(bench.open()))
    assert len(rows) == 8 and rows[0]["mode"] == "ifft"
    assert run("noise-sweep", "--n-exp", 8, "--block-length", 4, "--snr", "40,inf",
               "--trials", 3, "--out", sweep) == EXIT_OK
    assert len(list(csv.DictReader(sweep.open()))) == 2


def test_verify(capsys):
    assert run("verify", "--n-exp", 4, "--trials", 1) == EXIT_OK
    assert "failed=0" in capsys.readouterr().out


def test_verify_failure_exit_code(monkeypatch):
    from sparsedct import harness

    monkeypatch.setattr(harness, "verify_exhaustive",
                        lambda j, seeds: harness.VerifyReport(1, 0, [(2, 0, 1, 0, "forced")]))
    assert run("verify", "--n-exp", 2) == EXIT_VERIFY


def test_degenerate_input_exit_code(tmp_path, capsys):
    # y = (v, v) has two reflected blocks at level 3 but no odd-indexed spectrum
    v = np.array([0, 1, 2, 0, 0, 2, 1, 0.0])
    path = tmp_path / "bad.txt"
    write_vector(path, fft_radix2(np.concatenate((v, v))))
    assert run("ifft", path) == EXIT_VERIFY
    assert "odd-indexed" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    [],
    ["nope"],
    ["gen", "--n-exp", 5],
    ["gen", "--n-exp", 5, "--block-length", 16],
    ["gen", "--n-exp", 1, "--block-length", 1],
    ["gen", "--n-exp", 5, "--block-length", 3, "--seed", -1],
    ["bench", "--n-exp", 6, "--block-length", "a,b"],
    ["bench", "--n-exp", 6, "--block-length", 3, "--trials", 0],
    ["noise-sweep", "--n-exp", 6, "--block-length", 3, "--epsilon", "-1"],
    ["noise-sweep", "--n-exp", 6, "--block-length", 3, "--snr", "nan"],
    ["ifft", "/nonexistent/file"],
    ["verify", "--n-exp", 1],
])
def test_usage_errors(argv):
    try:
        code = run(*argv)
    except SystemExit as exc:
        code = exc.code
    assert code == EXIT_USAGE


def test_bad_vector_files(tmp_path):
    odd = tmp_path / "odd.txt"
    write_vector(odd, np.ones(6, dtype=complex))
    assert run("ifft", odd) == EXIT_USAGE
    cplx = tmp_path / "c.txt"
    write_vector(cplx, np.ones(8, dtype=complex))
    assert run("idct", cplx) == EXIT_USAGE
    junk = tmp_path / "junk.txt"
    junk.write_text("hello\n")
    assert run("idct", junk) == EXIT_USAGE


@pytest.mark.skipif(shutil.which("sparsedct") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["sparsedct", "verify", "--n-exp", "3", "--trials", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("instances=")
