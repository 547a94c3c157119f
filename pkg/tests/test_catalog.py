from __future__ import annotations

import json
import threading
from dataclasses import replace

import pytest

from cftorsion.catalog import (CurveRecord, SearchConfig, digest, read_catalog, record_curve,
                               run_search, verify_record)
from cftorsion.errors import UnverifiedRecord
from cftorsion.families import g_u
from cftorsion.partitions import PartitionSpec

SPEC = PartitionSpec.from_deltas(2, (2, 1, 1, 1, 1, 2))


def curve_record(u) -> CurveRecord:
    return CurveRecord(kind="curve", g=2, N=11, m=7, partition=SPEC, degrees=(3, 2, 1, 1, 1, 1, 2),
                       f=g_u(u), kappa=str(u), assignment={"c_3_0": 0},
                       verification={"verified": True}, created="2026-01-01T00:00:00+00:00")


def test_line_round_trip():
    r = curve_record(2)
    back = CurveRecord.from_line(r.to_line())
    assert back == r
    assert back.content_hash == r.content_hash


def test_hash_ignores_timestamp():
    r = curve_record(2)
    assert replace(r, created="later").content_hash == r.content_hash


def test_tampered_line_rejected():
    rec = json.loads(curve_record(2).to_line())
    rec["N"] = 12
    with pytest.raises(ValueError):
        CurveRecord.from_line(json.dumps(rec))


def test_idempotent_append(tmp_path):
    path = tmp_path / "cat.jsonl"
    r = curve_record(3)
    assert record_curve(r, path) is True
    assert record_curve(replace(r, created="another time"), path) is False
    assert read_catalog(path) == [r]


def test_unverified_records_refused(tmp_path):
    path = tmp_path / "cat.jsonl"
    with pytest.raises(UnverifiedRecord):
        record_curve(replace(curve_record(2), verification={}), path)
    with pytest.raises(UnverifiedRecord):
        verify_record(replace(curve_record(2), kappa="5"))
    with pytest.raises(UnverifiedRecord):
        verify_record(replace(curve_record(2), N=13))
    assert not path.exists()


def test_concurrent_writers(tmp_path):
    path = tmp_path / "cat.jsonl"
    records = [curve_record(u) for u in range(1, 26)]

    def worker(k):
        for i in range(25):
            record_curve(records[(i + 7 * k) % 25], path)  # 4 x 25 = 100 writes, 25 distinct

    threads = [threading.Thread(target=worker, args=(k,)) for k in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    got = read_catalog(path)
    assert len(got) == 25
    assert digest(got) == digest(records)


def test_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(1, 5)
    with pytest.raises(ValueError):
        SearchConfig(3, 3)
    with pytest.raises(ValueError):
        SearchConfig.from_dict({"g": 2, "N": 11, "bogus": 1})
    cfg = SearchConfig.from_dict({"g": 2, "N": 11, "pool": ["1/2", "3"], "partition": [2, 1, 2, 1, 2]})
    assert cfg.partition == (2, 1, 2, 1, 2)


def test_search_single_partition(tmp_path):
    cfg = SearchConfig(2, 11, partition=(2, 1, 1, 1, 1, 2), samples=3)
    records = run_search(cfg, tmp_path / "c.jsonl")
    kinds = [r.kind for r in records]
    assert kinds.count("family") == 1 and kinds.count("curve") == 3
    for r in records:
        verify_record(r)
    assert len(read_catalog(tmp_path / "c.jsonl")) == 4


def test_search_parallel_matches_serial():
    cfg = SearchConfig(2, 11, samples=4)
    serial = run_search(cfg)
    parallel = run_search(replace(cfg, parallelism=3))
    assert digest(serial) == digest(parallel)


def test_search_boundary_order():
    records = run_search(SearchConfig(10, 11, samples=2))
    assert {r.kind for r in records} == {"family", "curve"}
    assert all(r.m == 1 for r in records)


def _process_worker(args):
    path, k = args
    for i in range(25):
        record_curve(curve_record(1 + (i + 7 * k) % 25), path)


def test_concurrent_processes(tmp_path):
    from concurrent.futures import ProcessPoolExecutor

    path = str(tmp_path / "cat.jsonl")
    with ProcessPoolExecutor(max_workers=4) as pool:
        list(pool.map(_process_worker, [(path, k) for k in range(4)]))
    got = read_catalog(path)
    assert len(got) == 25
    assert digest(got) == digest(curve_record(u) for u in range(1, 26))
