import io
import json
import math

import numpy as np
import pytest

from modop import (
    ConfigError,
    FileFormatError,
    SweepRecord,
    default_config,
    emit_csv,
    load_config,
    read_records,
    run_embedding_sweep,
    run_identity_suite,
    run_threshold_sweep,
)
from modop.experiments import CSV_HEADER, has_errors
from modop.exponents import from_p


def write_config(tmp_path, payload, name="cfg.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return path


# ---------------------------------------------------------------------------
# config handling


def test_minimal_config_fills_defaults(tmp_path):
    path = write_config(tmp_path, {"experiment": "identity"})
    cfg = load_config(path)
    base = default_config("identity")
    assert cfg.N == base.N
    assert cfg.L == base.L
    assert cfg.seeds == base.seeds


def test_unknown_key_is_named_in_error(tmp_path):
    path = write_config(tmp_path, {"experiment": "identity", "banana": 3})
    with pytest.raises(ConfigError) as info:
        load_config(path)
    assert "banana" in str(info.value)


def test_config_requires_experiment(tmp_path):
    path = write_config(tmp_path, {"N": [64]})
    with pytest.raises(ConfigError):
        load_config(path)
    path = write_config(tmp_path, {"experiment": "bogus"})
    with pytest.raises(ConfigError):
        load_config(path)


def test_config_experiment_mismatch(tmp_path):
    path = write_config(tmp_path, {"experiment": "identity"})
    with pytest.raises(ConfigError):
        load_config(path, experiment="threshold")


def test_config_validates_lists(tmp_path):
    path = write_config(tmp_path, {"experiment": "threshold", "N": []})
    with pytest.raises(ConfigError):
        load_config(path)
    path = write_config(tmp_path, {"experiment": "threshold", "N": [48]})
    with pytest.raises(ConfigError):
        load_config(path)
    path = write_config(tmp_path, {"experiment": "threshold", "s": [-0.5]})
    with pytest.raises(ConfigError):
        load_config(path)


def test_config_rejects_broken_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(ConfigError):
        load_config(path)


# ---------------------------------------------------------------------------
# CSV round trip


def test_csv_roundtrip_is_lossless(tmp_path):
    records = [
        SweepRecord("identity", 2.0, 2.0, math.pi, 1, 256, None, 0,
                    1.0 / 3.0, "check", "pass"),
        SweepRecord("threshold", math.inf, None, 0.125, 1, 512, 16, 7,
                    2.0 ** -40 + 1.0, "exact_inf", ""),
        SweepRecord("threshold", 1.0, None, 0.875, 1, 128, 4, 3,
                    float("nan"), "slope-fit", "error=TooManyModes"),
    ]
    path = tmp_path / "rows.csv"
    emit_csv(records, path)
    text = path.read_text()
    assert text.splitlines()[0] == CSV_HEADER
    back = read_records(path)
    assert len(back) == len(records)
    for a, b in zip(records, back):
        assert a.experiment == b.experiment
        assert a.p == b.p and a.q == b.q
        assert a.s == b.s
        assert a.N == b.N and a.n_modes == b.n_modes and a.seed == b.seed
        assert a.method == b.method and a.flags == b.flags
        if math.isnan(a.value):
            assert math.isnan(b.value)
        else:
            assert a.value == b.value


def test_emit_csv_to_stream():
    buf = io.StringIO()
    emit_csv([], buf)
    assert buf.getvalue() == CSV_HEADER + "\n"


def test_read_records_rejects_wrong_header(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("a,b,c\n1,2,3\n")
    with pytest.raises(FileFormatError):
        read_records(path)
    path.write_text(CSV_HEADER + "\nonly,three,fields\n")
    with pytest.raises(FileFormatError):
        read_records(path)


# ---------------------------------------------------------------------------
# identity suite


def test_identity_suite_passes_at_low_resolution():
    # N = 64 with extent 8 keeps the frequency box at +-4, which resolves
    # every unit-width test object; the default L = 16 would not
    cfg = default_config("identity")
    cfg = type(cfg)(**{**cfg.__dict__, "N": [64], "L": 8.0})
    records = run_identity_suite(cfg)
    assert records
    assert not has_errors(records)
    for rec in records:
        assert rec.flags.endswith("pass"), (rec.method, rec.value, rec.flags)
    weyl_rows = [r for r in records if r.method == "weyl-oracle"]
    assert weyl_rows and all(r.value <= 1e-8 for r in weyl_rows)


def test_identity_suite_deterministic_across_jobs():
    cfg = default_config("identity")
    cfg = type(cfg)(**{**cfg.__dict__, "N": [64], "L": 8.0})
    a = io.StringIO()
    b = io.StringIO()
    emit_csv(run_identity_suite(cfg, jobs=1), a)
    emit_csv(run_identity_suite(cfg, jobs=4), b)
    assert a.getvalue() == b.getvalue()


# ---------------------------------------------------------------------------
# embedding sweep


def test_embedding_sweep_records_predicates():
    cfg = default_config("embedding")
    cfg = type(cfg)(**{**cfg.__dict__, "N": [64], "functions": 10,
                       "p": [from_p("1"), from_p("2"), from_p("inf")],
                       "q": [from_p("2")], "s": [0.0, 0.6]})
    records = run_embedding_sweep(cfg)
    assert not has_errors(records)
    forward = [r for r in records if r.method == "embed-sobolev-amalgam"]
    assert forward
    for rec in forward:
        if "predicate=true" in rec.flags:
            assert rec.flags.endswith("pass"), rec
        else:
            assert "predicate=false" in rec.flags
    # (1, 2, 0): predicted unbounded but statistics still reported
    skipped = [r for r in forward
               if r.p == 1.0 and r.s == 0.0 and "predicate=false" in r.flags]
    assert skipped and all(np.isfinite(r.value) for r in skipped)
    corollary = [r for r in records if r.method == "bounded-amalgam"]
    assert corollary
    for rec in corollary:
        assert "symbol=" in rec.flags
        assert rec.flags.endswith("pass"), rec


def test_embedding_sweep_deterministic_across_jobs():
    cfg = default_config("embedding")
    cfg = type(cfg)(**{**cfg.__dict__, "N": [64], "functions": 6,
                       "p": [from_p("2")], "q": [from_p("2")], "s": [0.0]})
    a = io.StringIO()
    b = io.StringIO()
    emit_csv(run_embedding_sweep(cfg, jobs=1), a)
    emit_csv(run_embedding_sweep(cfg, jobs=3), b)
    assert a.getvalue() == b.getvalue()


# ---------------------------------------------------------------------------
# threshold sweep


def test_threshold_sweep_small():
    cfg = default_config("threshold")
    cfg = type(cfg)(**{**cfg.__dict__, "p": [from_p("2")], "s": [0.0, 0.5],
                       "n_modes": [4, 8], "seeds": [0, 1]})
    records = run_threshold_sweep(cfg, jobs=2)
    assert not has_errors(records)
    raw = [r for r in records if r.method != "slope-fit"]
    slopes = [r for r in records if r.method == "slope-fit"]
    # 2 s-values x 2 mode counts x 2 seeds raw rows, 2 slope rows
    assert len(raw) == 8
    assert len(slopes) == 2
    for rec in raw:
        assert rec.method == "power_2"
        assert rec.n_modes in (4, 8)
    for rec in slopes:
        assert "stderr=" in rec.flags
        assert abs(rec.value) <= 0.05


def test_threshold_endpoint_flagged():
    cfg = default_config("threshold")
    cfg = type(cfg)(**{**cfg.__dict__, "p": [from_p("1")], "s": [0.5],
                       "n_modes": [4, 8], "seeds": [0]})
    records = run_threshold_sweep(cfg)
    slopes = [r for r in records if r.method == "slope-fit"]
    assert len(slopes) == 1
    assert "endpoint-inconclusive" in slopes[0].flags


def test_threshold_grid_sizes_follow_modes():
    cfg = default_config("threshold")
    cfg = type(cfg)(**{**cfg.__dict__, "p": [from_p("inf")], "s": [0.0],
                       "n_modes": [4, 16], "seeds": [0]})
    records = run_threshold_sweep(cfg)
    raw = {r.n_modes: r.N for r in records if r.method != "slope-fit"}
    assert raw[4] == 128
    assert raw[16] == 512
