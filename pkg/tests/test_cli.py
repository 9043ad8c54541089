import json
import subprocess
import sys
from pathlib import Path

import pytest

from radon_filtration.cli import main

GOLDEN = Path(__file__).parent / "golden"

CASES = {
    "decompose_subset_n6_s3.json": "decompose --n 6 --s 3",
    "decompose_subspace_n4_s2_q2.csv": "decompose --family subspace --n 4 --s 2 --q 2 --format csv",
    "decompose_subset_n4_s3.csv": "decompose --n 4 --s 3 --format csv",
    "spherical_subset_n4_s1.csv": "spherical --n 4 --s 1 --format csv",
    "spherical_subspace_n3_s1_q2.json": "spherical --family subspace --n 3 --s 1 --q 2 --check",
    "count_omega_n4_s2.csv": "count --kind Omega --n 4 --s 2 --format csv",
    "count_nj_n4_s2_q2.csv": "count --kind N_j --family subspace --n 4 --s 2 --q 2 --format csv",
    "verify_theorem5_n2_q2.json": "verify --family subspace --n 2 --q 2 --check theorem5",
}


def run(capsys, argv):
    code = main(argv.split())
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(capsys, name):
    code, out, _ = run(capsys, CASES[name])
    assert code == 0
    assert out == (GOLDEN / name).read_text()


def test_repeated_runs_are_byte_identical(capsys):
    first = run(capsys, "verify --family subspace --n 3 --q 2 --format csv")
    second = run(capsys, "verify --family subspace --n 3 --q 2 --format csv --jobs 2")
    assert first == second


def test_out_file(tmp_path, capsys):
    target = tmp_path / "d.csv"
    code, out, _ = run(capsys, f"decompose --n 4 --s 3 --format csv --out {target}")
    assert code == 0 and out == ""
    assert target.read_text() == (GOLDEN / "decompose_subset_n4_s3.csv").read_text()


def test_literal_values(capsys):
    _, out, _ = run(capsys, "decompose --n 5 --s 1")
    comps = json.loads(out)["components"]
    assert [c["eigenvalue"] for c in comps] == ["4/1", "-1/1"]
    assert comps[1]["profile"] == ["1/1", "-1/4"]
    _, out, _ = run(capsys, "decompose --n 6 --s 3 --format csv")
    assert out.splitlines()[-1].split(",")[3] == "-3/1"


def test_verify_reports_discrepancies_but_exits_zero(capsys):
    code, out, err = run(capsys, "verify --family subspace --n 4 --q 2 --check nj_ledger")
    assert code == 0
    data = json.loads(out)
    assert data["summary"]["paper-discrepancy"] >= 1 and data["summary"]["fail"] == 0
    assert "paper-discrepancy" in err


@pytest.mark.parametrize(
    "argv",
    [
        "decompose --n 4",
        "decompose --family subspace --n 4 --s 2",
        "decompose --n 4 --s 2 --q 2",
        "decompose --n 4 --s 7",
        "spherical --family all --n 4 --s 1",
        "verify --check nonsense",
        "verify --jobs 0",
        "count --kind Omega --n 4 --s 5",
        "count --kind bogus --n 4 --s 2",
        "frobnicate",
    ],
)
def test_usage_errors_exit_one(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        sys.exit(main(argv.split()))
    assert exc.value.code == 1


def test_inconsistency_exit_two(monkeypatch, capsys):
    from radon_filtration import cli

    real = cli.spherical_from_projector
    monkeypatch.setattr(cli, "spherical_from_projector", lambda *a: [x * 2 for x in real(*a)])
    code, out, _ = run(capsys, "spherical --n 4 --s 1 --check --format csv")
    assert code == 2
    assert out.endswith("# oracle_equal,false\n")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "radon_filtration", "spherical", "--n", "4", "--s", "1", "--format", "csv"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == (GOLDEN / "spherical_subset_n4_s1.csv").read_text()
