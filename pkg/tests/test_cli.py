import json
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qvanhamme import __version__
from qvanhamme.cli import (
    SweepConfig,
    _normalize_argv,
    build_cases,
    count_records,
    exit_code_for,
    main,
    parse_range,
    run_sweep,
)
from qvanhamme.errors import InvalidParams


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# ---------------------------------------------------------------------------
# verify


def test_verify_mainth_pass(capsys):
    code, out, _ = run(capsys, "verify", "--claim", "mainth", "--n", "3", "--d", "2", "--r", "1", "--M", "m")
    assert code == 0
    assert "PASS" in out


def test_verify_gcd_violation_exits_2(capsys):
    code, out, _ = run(capsys, "verify", "--claim", "mainth", "--n", "4", "--d", "2", "--r", "1", "--M", "m")
    assert code == 2
    assert "INVALID" in out


def test_verify_identity(capsys):
    code, out, _ = run(capsys, "verify", "--claim", "identity", "--n", "1")
    assert code == 0


def test_verify_fail_exits_1(capsys):
    code, out, _ = run(capsys, "verify", "--claim", "denoms", "--n", "3", "--d", "2", "--r", "1", "--strict-denoms")
    assert code == 1
    assert "q - 1" in out


def test_verify_inapplicable_exits_2(capsys):
    code, out, _ = run(capsys, "verify", "--claim", "gm1k", "--n", "3", "--d", "1", "--r", "3")
    assert code == 2
    assert "INAPPLICABLE" in out


def test_verify_json_record(capsys):
    code, out, _ = run(
        capsys, "verify", "--claim", "mainth", "--n", "5", "--d", "2", "--r", "-1", "--M", "full", "--format", "json"
    )
    rec = json.loads(out)
    assert code == 0
    assert rec["claim"] == "mainth" and rec["r"] == -1 and rec["M"] == "full"
    assert rec["status"] == "pass"
    assert set(rec) >= {"claim", "n", "d", "r", "M", "status", "witness", "elapsed_ms"}


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--claim", "nonsense", "--n", "3"],
        ["verify", "--claim", "mainth", "--n", "abc"],
        ["verify"],
        ["frobnicate"],
        [],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    assert main(argv) == 2


def test_negative_values_without_equals(capsys):
    code, out, _ = run(capsys, "verify", "--claim", "mainth", "--n", "5", "--d", "2", "--r", "-1")
    assert code == 0
    assert _normalize_argv(["--r-range", "-2..3"]) == ["--r-range=-2..3"]


def test_parse_range():
    assert parse_range("-2..3") == (-2, 3)
    assert parse_range("4") == (4, 4)
    with pytest.raises(Exception):
        parse_range("3..1")


# ---------------------------------------------------------------------------
# padic


def test_padic_sun(capsys):
    code, out, _ = run(capsys, "padic", "--claim", "sun", "--p", "5", "--M", "half")
    assert code == 0
    assert "505" in out


def test_padic_vanhamme_f2(capsys):
    assert run(capsys, "padic", "--claim", "vanhamme", "--variant", "F2", "--p", "13")[0] == 0
    assert run(capsys, "padic", "--claim", "vanhamme", "--variant", "F2", "--p", "7")[0] == 2


def test_padic_composite(capsys):
    assert run(capsys, "padic", "--claim", "sun", "--p", "9")[0] == 2


def test_padic_p_list(capsys):
    code, out, _ = run(capsys, "padic", "--claim", "sun", "--p-list", "5,7,11,13")
    assert code == 0
    assert len(out.strip().splitlines()) == 4


def test_padic_guowang_and_corollary(capsys):
    assert run(capsys, "padic", "--claim", "guowang", "--p", "7", "--alpha", "2/3")[0] == 0
    assert run(capsys, "padic", "--claim", "corollary", "--p", "5", "--s", "2", "--d", "2", "--r", "1")[0] == 0
    assert run(capsys, "padic", "--claim", "bridge", "--p", "11", "--d", "3", "--r", "1")[0] == 0
    assert run(capsys, "padic", "--claim", "guowang", "--p", "7", "--alpha", "1/7")[0] == 2


# ---------------------------------------------------------------------------
# sweep and report


def strip_volatile(report):
    report = dict(report)
    report.pop("generated")
    report.pop("version")
    report["records"] = [{k: v for k, v in r.items() if k != "elapsed_ms"} for r in report["records"]]
    return report


def test_sweep_all_passes_and_is_deterministic(tmp_path, capsys):
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    argv = ["sweep", "--claim", "all", "--n-range", "2..5", "--d-range", "1..3", "--r-range", "-2..3"]
    assert main(argv + ["--out", str(out1)]) == 0
    assert main(argv + ["--out", str(out2), "--jobs", "2"]) == 0
    r1, r2 = json.loads(out1.read_text()), json.loads(out2.read_text())
    assert r1["version"] == __version__
    assert r1["counts"]["fail"] == 0
    assert r1["counts"] == count_records(r1["records"])
    assert r1["skipped"] > 0
    a, b = strip_volatile(r1), strip_volatile(r2)
    for rep in (a, b):
        rep["config"].pop("jobs")
        rep["config"].pop("out")
    assert a == b


def test_sweep_strict_denoms_records_fail(tmp_path):
    out = tmp_path / "s.json"
    code = main(
        ["sweep", "--claim", "denoms", "--strict-denoms", "--n-range", "2..8", "--d-range", "1..3", "--r-range", "-2..3", "--out", str(out)]
    )
    report = json.loads(out.read_text())
    fails = [r for r in report["records"] if r["status"] == "fail"]
    assert code == 1
    assert any(r["n"] == 3 and r["d"] == 2 and r["r"] == 1 and "q - 1" in r["witness"] for r in fails)


def test_sweep_empty_case_set(tmp_path):
    out = tmp_path / "e.json"
    code = main(["sweep", "--claim", "mainth", "--n-range", "3..5", "--d-range", "2..2", "--r-range", "2..2", "--out", str(out)])
    report = json.loads(out.read_text())
    assert code == 0
    assert report["records"] == []
    assert report["skipped"] > 0


def test_sweep_unwritable_output(tmp_path):
    bad = tmp_path / "missing" / "r.json"
    assert main(["sweep", "--claim", "mainth", "--n-range", "2..3", "--out", str(bad)]) == 2
    assert main(["sweep", "--claim", "mainth", "--n-range", "2..3", "--out", str(tmp_path)]) == 2


def test_sweep_with_primes(tmp_path):
    out = tmp_path / "p.json"
    code = main(
        ["sweep", "--claim", "vanhamme,sun,guowang,corollary,bridge", "--p-list", "5,7,13", "--d-range", "1..4", "--r-range", "1..3", "--out", str(out)]
    )
    report = json.loads(out.read_text())
    assert code == 0
    assert report["counts"]["fail"] == 0
    assert {r["claim"] for r in report["records"]} == {"vanhamme", "sun", "guowang", "corollary", "bridge"}
    assert any(r["variant"] == "F2" and r["p"] == 13 for r in report["records"])


def test_report_subcommand(tmp_path, capsys):
    out = tmp_path / "r.json"
    main(["sweep", "--claim", "truncon", "--n-range", "2..4", "--out", str(out)])
    capsys.readouterr()
    code, text, _ = run(capsys, "report", str(out))
    assert code == 0
    assert "0 fail" in text
    assert run(capsys, "report", str(tmp_path / "nope.json"))[0] == 2


def test_sweep_config_invariants():
    with pytest.raises(InvalidParams):
        SweepConfig(n_range=(5, 2))
    with pytest.raises(InvalidParams):
        SweepConfig(jobs=0)


def test_build_cases_skips_gcd_violations():
    cases, skipped = build_cases(SweepConfig(claims=["mainth"], n_range=(2, 4), d_range=(2, 2), r_range=(1, 2)))
    # n in {3}, r in {1} survive; both M variants
    assert [(c["n"], c["r"], c["M"]) for c in cases] == [(3, 1, "m"), (3, 1, "full")]
    assert skipped == 5


def test_report_records_sorted():
    report = run_sweep(SweepConfig(claims=["truncon", "fmm"], n_range=(2, 4), d_range=(1, 2), r_range=(-1, 1)))
    keys = [(r["claim"], r["n"], r["d"], r["r"]) for r in report["records"]]
    assert keys == sorted(keys)


@given(st.lists(st.sampled_from(["pass", "fail", "inapplicable", "invalid"]), max_size=20))
def test_exit_code_contract(statuses):
    expected = 1 if "fail" in statuses else 0
    assert exit_code_for(statuses) == expected
    counts = count_records([{"status": s} for s in statuses])
    assert sum(counts.values()) == len(statuses)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "qvanhamme", "verify", "--claim", "identity", "--n", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "PASS" in proc.stdout
