"""Command line front end: config validation, report structure, byte
determinism, exit codes, and sweep CSV output."""

import json
import subprocess
import sys

import numpy as np
import pytest

from hardyops import ConfigError, IllConditionedError
from hardyops import cli
from hardyops.cli import (
    ALLOWED_CHECKS,
    TOLERANCES,
    canonical_json,
    main,
    parse_config,
    run_report,
    run_sweep,
)


def base_config():
    return {
        "inner": {"zeros": [0.3, -0.5]},
        "symbol": [-0.7, 1.0],
        "seed": 7,
    }


def write_json(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc), encoding="utf-8")
    return str(path)


def test_parse_config_defaults():
    config = parse_config(base_config())
    assert config.params.p == 2.0
    assert config.grid.m == 2048 and config.grid.n == 1000
    assert config.checks == ALLOWED_CHECKS
    assert config.seed == 7
    assert config.inner.degree == 2
    np.testing.assert_allclose(config.symbol, [-0.7, 1.0])


def test_parse_config_checks_canonical_order():
    doc = base_config()
    doc["checks"] = ["projection", "corona"]
    config = parse_config(doc)
    assert config.checks == ("corona", "projection")


def test_parse_config_complex_entries():
    doc = base_config()
    doc["inner"] = {"zeros": [[0.2, 0.4]], "constant": [0.0, 1.0]}
    doc["symbol"] = [[-0.1, 0.2], 1.0]
    config = parse_config(doc)
    assert config.inner.zeros == (0.2 + 0.4j,)
    assert config.inner.constant == 1j
    assert config.symbol[0] == -0.1 + 0.2j


def bad_configs():
    def mutate(**kw):
        doc = base_config()
        doc.update(kw)
        return doc

    return [
        [1, 2],
        mutate(extra=1),
        {"symbol": [1.0]},
        {"inner": {"zeros": [0.3]}},
        mutate(inner={"constant": 1.0}),
        mutate(inner={"zeros": [0.3], "radius": 1}),
        mutate(inner={"zeros": []}),
        mutate(inner={"zeros": [1.0]}),
        mutate(inner={"zeros": ["x"]}),
        mutate(symbol=[]),
        mutate(symbol=[0.0, 0.0]),
        mutate(symbol=["x"]),
        mutate(p=True),
        mutate(p=1.0),
        mutate(p="2"),
        mutate(grid={"m": 64}),
        mutate(grid={"m": 64.0, "n": 20}),
        mutate(grid={"m": 8, "n": 100}),
        mutate(checks=["corona", "spectral"]),
        mutate(checks=[]),
        mutate(checks="corona"),
        mutate(seed=-1),
        mutate(seed=True),
        mutate(seed="0"),
        mutate(grid={"m": 16, "n": 4}, symbol=[1, 0, 0, 0, 0, 1]),
    ]


@pytest.mark.parametrize("doc", bad_configs())
def test_parse_config_rejections(doc):
    with pytest.raises(ConfigError):
        parse_config(doc)


def test_report_document_structure():
    config = parse_config(base_config())
    doc, failure = run_report(config)
    assert not failure
    assert set(doc) == {"schema", "config", "tolerances", "checks"}
    assert doc["schema"] == 1
    assert doc["tolerances"] == TOLERANCES
    assert set(doc["checks"]) == set(ALLOWED_CHECKS)

    corona = doc["checks"]["corona"]
    assert corona["invertible"] and corona["consistent"]
    assert 0.0 < corona["delta"] <= corona["min_abs_at_inner_zeros"] + 1e-9

    bezout = doc["checks"]["bezout"]
    assert bezout["residual"] < TOLERANCES["bezout_residual"]
    assert bezout["consistent"]

    compressed = doc["checks"]["compressed"]
    assert compressed["invertible"]
    assert compressed["sigma_min"] == pytest.approx(
        min(compressed["singular_values"])
    )
    assert len(compressed["eigenvalues"]) == 2

    commutant = doc["checks"]["commutant"]
    assert commutant["dimension"] == 2
    assert len(commutant["symbols"]) == 2
    assert all(r < TOLERANCES["recovery_residual"] for r in commutant["recovery_residuals"])

    assert doc["checks"]["adjoint"]["defect"] < TOLERANCES["adjoint_defect"]

    projection = doc["checks"]["projection"]
    assert projection["seed"] == 7
    for key in ("idempotence_defect", "complement_defect", "annihilator_defect"):
        assert projection[key] < TOLERANCES["projection_defect"]


def test_report_byte_determinism(tmp_path):
    cfg = write_json(tmp_path, "cfg.json", base_config())
    out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
    assert main(["report", "--config", cfg, "--out", str(out1)]) == 0
    assert main(["report", "--config", cfg, "--out", str(out2)]) == 0
    b1, b2 = out1.read_bytes(), out2.read_bytes()
    assert b1 == b2
    assert b"\r" not in b1 and b1.endswith(b"\n")
    json.loads(b1)


def test_report_stdout_matches_file(tmp_path, capsys):
    cfg = write_json(tmp_path, "cfg.json", base_config())
    out = tmp_path / "r.json"
    assert main(["report", "--config", cfg, "--out", str(out)]) == 0
    assert main(["report", "--config", cfg]) == 0
    captured = capsys.readouterr()
    assert captured.out == out.read_text(encoding="utf-8")


def test_canonical_json_rejects_nan():
    with pytest.raises(ValueError):
        canonical_json({"x": float("nan")})


def test_exit_code_config_errors(tmp_path, capsys):
    assert main(["report", "--config", str(tmp_path / "missing.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    assert main(["report", "--config", str(bad)]) == 2
    doc = base_config()
    doc["surprise"] = 1
    cfg = write_json(tmp_path, "cfg.json", doc)
    assert main(["report", "--config", cfg]) == 2
    capsys.readouterr()


def test_exit_code_numerical_failure(tmp_path, monkeypatch):
    def boom(config):
        raise IllConditionedError("synthetic failure")

    monkeypatch.setattr(cli, "_check_corona", boom)
    cfg = write_json(tmp_path, "cfg.json", base_config())
    out = tmp_path / "r.json"
    assert main(["report", "--config", cfg, "--out", str(out)]) == 3
    doc = json.loads(out.read_text(encoding="utf-8"))
    entry = doc["checks"]["corona"]
    assert entry["error"] == "IllConditionedError"
    assert entry["message"] == "synthetic failure"
    assert doc["checks"]["bezout"]["residual"] < 1e-9


def test_common_zero_reported_not_fatal(tmp_path):
    doc = base_config()
    doc["symbol"] = [-0.3, 1.0]
    cfg = write_json(tmp_path, "cfg.json", doc)
    out = tmp_path / "r.json"
    assert main(["report", "--config", cfg, "--out", str(out)]) == 0
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["checks"]["bezout"]["error"] == "common_zero"
    assert report["checks"]["corona"]["delta"] == 0.0
    assert not report["checks"]["corona"]["invertible"]
    assert not report["checks"]["compressed"]["invertible"]


def test_sweep_symbol_zero(tmp_path):
    cfg = write_json(tmp_path, "cfg.json", base_config())
    fam = write_json(
        tmp_path,
        "fam.json",
        {"kind": "symbol_zero", "zero": 0.3, "offsets": [0.0, 0.2, [0.0, 0.4]]},
    )
    out = tmp_path / "sweep.csv"
    assert main(["sweep", "--config", cfg, "--family", fam, "--out", str(out)]) == 0
    lines = out.read_text(encoding="utf-8").split("\n")
    assert lines[0] == (
        "offset_re,offset_im,zero_re,zero_im,delta,min_abs_at_inner_zeros,"
        "sigma_min,invertible,sup_u,sup_v"
    )
    assert len(lines) == 5 and lines[-1] == ""
    degenerate = lines[1].split(",")
    assert degenerate[4] == "0" and degenerate[7] == "0"
    assert degenerate[8] == "nan" and degenerate[9] == "nan"
    healthy = lines[2].split(",")
    assert healthy[7] == "1" and float(healthy[4]) > 0.0


def test_sweep_probe_radius(tmp_path):
    cfg = write_json(tmp_path, "cfg.json", base_config())
    fam = write_json(
        tmp_path,
        "fam.json",
        {"kind": "probe_radius", "radii": [0.2, 0.9], "angle": 0.4},
    )
    out = tmp_path / "probe.csv"
    assert main(["sweep", "--config", cfg, "--family", fam, "--out", str(out)]) == 0
    lines = out.read_text(encoding="utf-8").split("\n")
    assert lines[0] == "z_re,z_im,corona_value,f_norm,Taf_norm,sigma_min,p"
    assert len(lines) == 4 and lines[-1] == ""
    row = lines[1].split(",")
    assert float(row[0]) == pytest.approx(0.2 * np.cos(0.4))
    assert row[6] == "2"


def test_sweep_determinism(tmp_path):
    cfg = write_json(tmp_path, "cfg.json", base_config())
    fam = write_json(
        tmp_path,
        "fam.json",
        {"kind": "symbol_zero", "zero": 0.0, "offsets": [0.1, 0.5]},
    )
    o1, o2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["sweep", "--config", cfg, "--family", fam, "--out", str(o1)]) == 0
    assert main(["sweep", "--config", cfg, "--family", fam, "--out", str(o2)]) == 0
    assert o1.read_bytes() == o2.read_bytes()


def bad_families():
    return [
        [1],
        {"radii": [0.2]},
        {"kind": "mystery"},
        {"kind": "symbol_zero", "zero": 0.3},
        {"kind": "symbol_zero", "zero": 0.3, "offsets": []},
        {"kind": "symbol_zero", "zero": 0.3, "offsets": [0.1], "step": 2},
        {"kind": "probe_radius"},
        {"kind": "probe_radius", "radii": [1.5]},
        {"kind": "probe_radius", "radii": [0.2], "angle": "x"},
    ]


@pytest.mark.parametrize("family", bad_families())
def test_sweep_rejects_bad_family(family):
    config = parse_config(base_config())
    with pytest.raises(ConfigError):
        run_sweep(config, family)


def test_sweep_bad_family_exit_code(tmp_path, capsys):
    cfg = write_json(tmp_path, "cfg.json", base_config())
    fam = write_json(tmp_path, "fam.json", {"kind": "mystery"})
    assert main(["sweep", "--config", cfg, "--family", fam]) == 2
    capsys.readouterr()


def test_module_entry_point(tmp_path):
    doc = base_config()
    doc["checks"] = ["corona"]
    cfg = write_json(tmp_path, "cfg.json", doc)
    proc = subprocess.run(
        [sys.executable, "-m", "hardyops.cli", "report", "--config", cfg],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    report = json.loads(proc.stdout)
    assert report["schema"] == 1
    assert report["checks"]["corona"]["invertible"]
