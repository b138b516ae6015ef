from __future__ import annotations

import dataclasses
import json

import pytest

from sdepthlab.fuzz import (
    FuzzConfig,
    instance_rng,
    random_pair,
    run_fuzz,
    run_instance,
)
from sdepthlab.monomials import InputError


def test_config_validation():
    FuzzConfig().validate()
    with pytest.raises(InputError, match="outside the supported range"):
        FuzzConfig(n=9).validate()
    with pytest.raises(InputError, match="outside the supported range"):
        FuzzConfig(n=0).validate()
    with pytest.raises(InputError, match="count"):
        FuzzConfig(count=-1).validate()
    with pytest.raises(InputError, match="max_degree"):
        FuzzConfig(n=5, max_degree=6).validate()
    with pytest.raises(dataclasses.FrozenInstanceError):
        FuzzConfig().count = 7


def test_stream_is_deterministic():
    cfg = FuzzConfig(n=4, count=12, seed=11)
    a = run_fuzz(cfg, keep_records=True)
    b = run_fuzz(cfg, keep_records=True)
    assert a.records == b.records
    assert a.to_json() == b.to_json()


def test_stream_has_no_inconsistencies():
    cfg = FuzzConfig(n=5, count=60, seed=42)
    report = run_fuzz(cfg, keep_records=True)
    assert report.instances + report.skipped == 60
    assert report.inconsistent == 0
    assert report.ml1_ok == report.ml1_runs
    assert report.to_json()["inconsistent"] == 0
    for record in report.records:
        if "skipped" in record:
            continue
        assert record["inconsistent"] == []
        assert set(record["depth"]) == {"0", "2"}
        assert set(record) == {
            "seed", "index", "instance", "strata", "sdepth", "depth",
            "hdepth", "verdicts", "inconsistent", "ml1", "findings_count",
        }
        for entry in record["ml1"]:
            assert entry["status"] in (
                "ok", "hypothesis_unsatisfied", "driver_failure"
            )
            if entry["status"] == "ok":
                assert entry["verified"] is True


def test_jsonl_log_replays(tmp_path):
    log = tmp_path / "stream.jsonl"
    cfg = FuzzConfig(n=5, count=20, seed=7, out=str(log))
    run_fuzz(cfg)
    lines = [json.loads(ln) for ln in log.read_text().splitlines()]
    assert len(lines) == 20
    for record in lines:
        Q = random_pair(instance_rng(record["seed"], record["index"]), cfg)
        assert record["instance"] == {
            "n": Q.ambient,
            "I": [str(g) for g in Q.I.gens],
            "J": [str(g) for g in Q.J.gens],
        }


def test_poset_budget_skips():
    cfg = FuzzConfig(n=4, count=4, seed=0, poset_budget=0)
    report = run_fuzz(cfg, keep_records=True)
    assert report.skipped == 4 and report.instances == 0
    assert all(r["skipped"] == "poset budget exceeded" for r in report.records)


def test_run_instance_record_shape():
    cfg = FuzzConfig(n=5)
    Q = random_pair(instance_rng(42, 0), cfg)
    record, findings = run_instance(Q, cfg)
    assert record["inconsistent"] == []
    assert record["findings_count"] == len(findings)
    assert isinstance(record["verdicts"], list) and record["verdicts"]
    assert record["strata"].keys() == {"d", "r", "s", "q", "E_size"}
