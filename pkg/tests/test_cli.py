"""CLI contract: exit codes, report schema, determinism."""

import json

import pytest

from envchain.catalog import CATALOG_FILES
from envchain.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def strip_timing_text(out: str) -> str:
    return "\n".join(l for l in out.splitlines() if not l.startswith("time: "))


def strip_timing_json(out: str) -> dict:
    doc = json.loads(out)
    doc.pop("timings", None)
    return doc


@pytest.fixture
def s3_files(tmp_path):
    g = tmp_path / "s3.grp"
    g.write_text(CATALOG_FILES["S3"])
    h = tmp_path / "h.grp"
    h.write_text("degree: 3\n(0 1)\n")
    return str(g), str(h)


def test_ekchain_s3(capsys, s3_files):
    g, h = s3_files
    code, out = run(capsys, "ekchain", g, h, "--kmax", "3")
    assert code == 0
    assert "orders=[6, 2, 2, 2]" in out
    assert "guaranteed_stable=True" in out
    assert "[pass] ekchain-descending" in out


def test_ekchain_auto_kmax_uses_class(capsys, s3_files):
    g, h = s3_files
    code, out = run(capsys, "ekchain", g, h)
    assert code == 0
    assert "orders=[6, 2]" in out  # class-1 subgroup: window of one step


def test_ekchain_whole_group(capsys, s3_files):
    g, _ = s3_files
    code, out = run(capsys, "ekchain", g, g, "--kmax", "2")
    assert code == 0
    assert "orders=[6, 6, 6]" in out


def test_ekchain_json_schema(capsys, s3_files):
    g, h = s3_files
    code, out = run(capsys, "ekchain", g, h, "--kmax", "2", "--format", "json-like")
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"tool_version", "command", "checks", "witnesses", "timings"}
    assert doc["command"]["name"] == "ekchain"
    assert doc["witnesses"][0]["orders"] == [6, 2, 2]


def test_ekchain_subgroup_not_contained(capsys, tmp_path, s3_files):
    g, _ = s3_files
    bad = tmp_path / "bad.grp"
    bad.write_text("degree: 3\n(0 1 2)\n(0 2 1)\n")
    ok_code, _ = run(capsys, "ekchain", g, str(bad), "--kmax", "2")
    assert ok_code == 0  # 3-cycles do lie in S3
    notin = tmp_path / "notin.grp"
    notin.write_text("degree: 4\n(0 1 2 3)\n")
    code, _ = run(capsys, "ekchain", g, str(notin), "--kmax", "2")
    assert code == 2


def test_ekchain_parse_error_reports_line(capsys, tmp_path, s3_files):
    g, _ = s3_files
    bad = tmp_path / "broken.grp"
    bad.write_text("degree: 3\n(0 9)\n")
    code = main(["ekchain", g, str(bad)])
    captured = capsys.readouterr()
    assert code == 2
    assert "line 2" in captured.err


def test_ekchain_cap_exceeded(capsys, s3_files):
    g, h = s3_files
    code, _ = run(capsys, "ekchain", g, h, "--cap", "3")
    assert code == 3


def test_usage_error_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "nonsense"])
    assert exc.value.code == 2


def test_verify_custom_catalog(capsys, tmp_path):
    cdir = tmp_path / "cat"
    cdir.mkdir()
    (cdir / "S3.grp").write_text(CATALOG_FILES["S3"])
    (cdir / "D8.grp").write_text(CATALOG_FILES["D8"])
    code, out = run(capsys, "verify", "--suite", "all", "--kmax", "3",
                    "--catalog-dir", str(cdir))
    assert code == 0
    assert "fail=0" in out
    assert "S3:" in out and "D8:" in out


def test_verify_deterministic_output(capsys, tmp_path):
    cdir = tmp_path / "cat"
    cdir.mkdir()
    (cdir / "D8.grp").write_text(CATALOG_FILES["D8"])
    args = ("verify", "--suite", "structure", "--kmax", "2", "--catalog-dir", str(cdir))
    _, first = run(capsys, *args)
    _, second = run(capsys, *args)
    assert strip_timing_text(first) == strip_timing_text(second)


def test_verify_json_deterministic_and_self_describing(capsys, tmp_path):
    cdir = tmp_path / "cat"
    cdir.mkdir()
    (cdir / "S3.grp").write_text(CATALOG_FILES["S3"])
    args = ("verify", "--suite", "bryant", "--kmax", "2",
            "--catalog-dir", str(cdir), "--format", "json-like")
    _, first = run(capsys, *args)
    _, second = run(capsys, *args)
    assert strip_timing_json(first) == strip_timing_json(second)
    doc = strip_timing_json(first)
    assert doc["tool_version"]
    assert all({"id", "claim", "status"} <= set(c) for c in doc["checks"])


def test_verify_empty_catalog_dir(capsys, tmp_path):
    code, _ = run(capsys, "verify", "--catalog-dir", str(tmp_path))
    assert code == 2


def test_counterexample_small(capsys):
    code, out = run(capsys, "counterexample", "--levels", "3", "--scan-max", "2")
    assert code == 0
    assert "sizes=[2, 4, 8]" in out
    assert "[pass] model-level1" in out
    assert "[pass] model-oracle-i3" in out
    assert "commutator=(0 1)(2 3)" in out


def test_counterexample_exhausted_scan_fails(capsys):
    # with a deep enough model, an exhausted scan is a genuine failure
    code, out = run(capsys, "counterexample", "--levels", "5", "--scan-max", "3")
    assert code == 1
    assert "[fail] witness-k2" in out


def test_counterexample_shallow_scan_skips(capsys):
    # witnesses whose scan runs off the computed depth are undecided
    code, out = run(capsys, "counterexample", "--levels", "4", "--scan-max", "12")
    assert code == 0
    assert "[skipped] witness-k2" in out


def test_counterexample_deterministic(capsys):
    args = ("counterexample", "--levels", "4", "--scan-max", "4", "--format", "json-like")
    c1, first = run(capsys, *args)
    c2, second = run(capsys, *args)
    assert c1 == c2
    assert strip_timing_json(first) == strip_timing_json(second)


def test_counterexample_levels_bound(capsys):
    code, _ = run(capsys, "counterexample", "--levels", "1")
    assert code == 2
