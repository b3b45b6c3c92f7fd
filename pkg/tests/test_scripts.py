"""Smoke runs of the scripts in scripts/ with small trial counts."""

import pathlib
import subprocess
import sys

import pytest

SCRIPTS = pathlib.Path(__file__).resolve().parent.parent / "scripts"


def run(name, *args):
    r = subprocess.run([sys.executable, str(SCRIPTS / name), *args], capture_output=True, text=True, timeout=300)
    assert r.returncode == 0, r.stdout + r.stderr
    return r.stdout


def test_orientation_convention_derivation():
    out = run("derive_orientation_convention.py", "--max-dim", "1", "--trials", "20", "--seed", "1")
    for family in ("swap", "assoc", "mixed", "normalise"):
        line = next(l for l in out.splitlines() if l.startswith(f"frozen fibre_convention on {family}:"))
        got, total = line.rsplit(" ", 1)[1].split("/")
        assert got == total


def test_orientation_det_derivation():
    out = run("derive_orientation_det.py", "--trials", "5", "--seed", "1")
    assert "frozen orientation_parity: 5/5 multiplicative" in out


def test_fixture_runner():
    out = run("run_fixtures.py")
    assert out.splitlines()[-1] == "all fixtures pass"


@pytest.mark.parametrize("check", ["degree_perturbation", "groebner_oracle", "fibre_additivity"])
def test_property_runner(check):
    out = run("run_properties.py", "--only", check, "--trials", "3", "--seed", "2")
    assert out.startswith(f"PASS {check}")
