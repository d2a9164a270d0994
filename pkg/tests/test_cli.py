import json
import subprocess
import sys

import pytest

from syndetica.cli import RunConfig, main
from syndetica.symdyn import SeqWindow
from syndetica.window import Box, Window2D


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_set_exit_codes(capsys):
    code, out, _ = run(["analyze-set", "--set", "evens", "--json"], capsys)
    assert code == 0 and json.loads(out)["gap"] == 2
    code, out, _ = run(["analyze-set", "--set", "squares", "--lo", "0", "--hi", "1000000",
                        "--json"], capsys)
    rep = json.loads(out)
    assert code == 1 and rep["verdict"] == "refuted"
    assert rep["nested_gaps"] == sorted(rep["nested_gaps"])
    code, _, _ = run(["analyze-set", "--set", "full", "--lo", "0", "--hi", "5",
                      "--query", "ts", "--nmax", "50"], capsys)
    assert code == 2


def test_analyze_set_prints_table(capsys):
    code, out, _ = run(["analyze-set", "--set", "ts", "--lo", "0", "--hi", "4000",
                        "--query", "ts", "--nmax", "3"], capsys)
    assert code == 0
    assert "N=1" in out and "N=3" in out and "verdict: certified" in out


def test_usage_errors_exit_64(tmp_path, capsys):
    assert run(["analyze-set", "--bogus"], capsys)[0] == 64
    assert run([], capsys)[0] == 64
    bad = tmp_path / "c.json"
    bad.write_text('{"not_a_field": 1}')
    assert run(["analyze-set", "--config", str(bad)], capsys)[0] == 64
    bad.write_text("{not json")
    assert run(["analyze-set", "--config", str(bad)], capsys)[0] == 64
    assert run(["return-set", "--polys", "n+1", "--box", "0", "1", "0", "1"], capsys)[0] == 64


def test_config_file_with_flag_override(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"set": "squares", "lo": 0, "hi": 100, "max_gap": 5}))
    code, _, _ = run(["analyze-set", "--config", str(cfg)], capsys)
    assert code == 1
    code, out, _ = run(["analyze-set", "--config", str(cfg), "--max-gap", "19", "--json"], capsys)
    assert code == 0 and json.loads(out)["config"]["max_gap"] == 19


def test_return_set_outputs(tmp_path, capsys):
    csv, pbm = tmp_path / "cells.csv", tmp_path / "out.pbm"
    code, out, err = run(["return-set", "--set", "ts", "--polys", "n,n^2",
                          "--box", "-50", "50", "-5", "5", "--out", str(csv),
                          "--bitmap", str(pbm)], capsys)
    assert code == 0 and "[-55, 75]" in err
    box = Box(-50, 50, -5, 5)
    from_csv = Window2D.from_csv(csv.read_text(), box)
    assert Window2D.from_pbm(pbm.read_bytes(), -50, -5) == from_csv
    assert json.loads(out)["count"] == from_csv.count()


def test_return_set_harness(capsys):
    code, out, _ = run(["return-set", "--set", "ts", "--polys", "n",
                        "--box", "-2000", "2000", "-20", "20", "--block-max", "2", "2"], capsys)
    assert code == 0 and json.loads(out)["verdict"] == "pass"


def test_sequence_commands(tmp_path, capsys):
    path = tmp_path / "sq.txt"
    assert run(["build-example", "squares", "--lo", "0", "--hi", "30", "--out", str(path)],
               capsys)[0] == 0
    assert SeqWindow.load(path).to_ascii().startswith("11001")
    code, out, _ = run(["occurs", "--seq", str(path), "--word", "1001"], capsys)
    assert json.loads(out)["places"] == [1]
    code, out, _ = run(["language", "--text", "0101", "--k", "2"], capsys)
    assert json.loads(out)["words"] == ["01", "10"]
    code, out, _ = run(["mrec-scan", "--text", "10" * 30, "--r", "1", "--n-max", "10"], capsys)
    assert json.loads(out)["returns"] == [2, 4, 6, 8, 10]
    assert run(["mrec-scan", "--text", "0000", "--n-max", "30"], capsys)[0] == 2


def test_build_theorem_c_metadata(tmp_path, capsys):
    meta = tmp_path / "meta.json"
    assert run(["build-example", "theoremC", "--depth", "4", "--meta", str(meta)], capsys)[0] == 0
    obj = json.loads(meta.read_text())
    assert obj["a"] == [1, 20, 78, 538] and obj["b"] == [16, 16, 301]


def test_induced_bridge_writes_both_sides(tmp_path, capsys):
    stem = tmp_path / "br"
    code, out, _ = run(["induced", "bridge", "--set", "ts", "--polys", "n,n^2",
                        "--box", "-100", "100", "-6", "6", "--bitmap", str(stem)], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["differing_cells"] == 0
    assert {"lhs", "rhs", "diff"} <= set(rep)
    for side in ("lhs", "rhs", "diff"):
        assert (tmp_path / f"br.{side}.pbm").read_bytes().startswith(b"P4")


def test_induced_omega_and_probe(capsys):
    code, out, _ = run(["induced", "omega", "--set", "squares", "--lo", "-100", "--hi", "100",
                        "--polys", "n^2", "--K", "1", "--W", "3"], capsys)
    # --set reads the Bebutov sequence: symbol 0 exactly on the squares
    assert code == 0 and json.loads(out)["cells"]["0"] == ["1110011"]
    code, out, _ = run(["induced", "probe", "--set", "full", "--lo", "-300", "--hi", "300",
                        "--polys", "n", "--K", "1", "--W", "3", "--r", "3", "--H", "5"], capsys)
    assert code == 0 and json.loads(out)["verdict"] == "recurrent"


def test_verify_suites(capsys):
    code, out, _ = run(["verify", "--suite", "theoremC", "--depth", "2"], capsys)
    rep = json.loads(out)
    assert code == 2 and {r["verdict"] for r in rep["results"]} == {"inconclusive"}
    code, out, _ = run(["verify", "--suite", "example35"], capsys)
    assert code == 0 and json.loads(out)["results"][0]["verdict"] == "pass"
    code, out, _ = run(["verify", "--suite", "nope"], capsys)
    assert code == 64


def test_verify_empty_override_passes_bridge_trivially(capsys):
    code, out, _ = run(["verify", "--suite", "theoremB", "--s-override", "empty"], capsys)
    bridge = json.loads(out)["results"][0]
    assert bridge["criterion"] == 1 and bridge["verdict"] == "pass"
    from syndetica.verify import bridge_exactness
    res = bridge_exactness(s_override="empty")
    assert res.verdict == "pass"
    assert all(r["cells"] == 0 for r in res.measured["runs"])


def test_verify_report_is_reproducible(tmp_path, capsys):
    path = tmp_path / "r.json"
    reports = []
    for _ in range(2):
        run(["verify", "--suite", "largeness", "--seed", "3", "--out", str(path)], capsys)
        reports.append(path.read_bytes())
    assert reports[0] == reports[1]
    rep = json.loads(reports[0])
    assert rep["schema"] == "syndetica.report/1"
    assert set(rep["results"][0]) == {"criterion", "name", "parameters", "measured", "verdict"}


def test_export_round_trips(tmp_path, capsys):
    seq = tmp_path / "s.txt"
    SeqWindow(-4, [1, 0, 1, 1, 0], two_sided=True).save(seq)
    js, back = tmp_path / "s.json", tmp_path / "back.txt"
    assert run(["export", "--input", str(seq), "--format", "json", "--out", str(js)], capsys)[0] == 0
    assert run(["export", "--input", str(js), "--format", "ascii", "--out", str(back)], capsys)[0] == 0
    assert SeqWindow.load(back) == SeqWindow.load(seq)
    assert run(["export", "--input", str(seq), "--format", "pbm"], capsys)[0] == 64


def test_export_window2d_to_pbm(tmp_path, capsys):
    w = Window2D.from_members(Box(0, 7, 0, 2), [(0, 0), (7, 2)])
    src = tmp_path / "w.json"
    src.write_text(json.dumps(w.to_json()))
    pbm = tmp_path / "w.pbm"
    assert run(["export", "--input", str(src), "--format", "pbm", "--out", str(pbm)], capsys)[0] == 0
    assert Window2D.from_pbm(pbm.read_bytes(), 0, 0) == w


def test_exported_profile_matches_schema(tmp_path, capsys):
    rep = tmp_path / "r.json"
    run(["analyze-set", "--set", "ts", "--lo", "0", "--hi", "3000", "--query", "ts",
         "--out", str(rep)], capsys)
    code, out, _ = run(["export", "--input", str(rep), "--format", "json"], capsys)
    obj = json.loads(out)
    assert code == 0 and set(obj) == {"kind", "params", "gaps", "core", "witness"}
    assert obj["kind"] == "thickly-syndetic" and all(isinstance(v, int) for v in obj["gaps"].values())


def test_run_config_round_trip():
    cfg = RunConfig(command="verify", suite="duality", seed=9)
    assert RunConfig(**json.loads(json.dumps(cfg.to_json()))) == cfg


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "syndetica.cli", "analyze-set", "--set", "evens"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "certified" in proc.stdout
