"""Search pipeline and the append-only catalog of verified results.

The catalog is JSON lines: one record per line, exact rationals as strings.
Every record carries a content hash over everything except its timestamp, so
appending the same result twice is a no-op and whole runs can be compared by
a digest of their sorted hashes.
"""
from __future__ import annotations

import datetime as _dt
import hashlib
import json
import logging
import threading
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable

from filelock import FileLock

from .arith import Poly, format_rational, is_squarefree, parse_rational
from .errors import RoundTripFailed, UnverifiedRecord
from .laurent import cf_expand
from .partitions import PartitionSpec, enumerate_partitions
from .symbolic import (DEFAULT_POOL, EliminationTrace, VerdictKind, instantiate,
                       short_names, sample_assignments, solve_partition)
from .torsion import torsion_order

log = logging.getLogger(__name__)

KINDS = ("curve", "family", "impossible", "stuck")


@dataclass(frozen=True)
class CurveRecord:
    kind: str
    g: int
    N: int
    m: int
    partition: PartitionSpec
    degrees: tuple[int, ...]
    f: Poly | None = None
    kappa: str | None = None  # exact rational, or "symbolic"
    assignment: dict = field(default_factory=dict)
    elimination: dict = field(default_factory=dict)  # verdict, trace hash, witness/residual text
    verification: dict = field(default_factory=dict)
    created: str = ""

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown record kind {self.kind!r}")

    def to_record(self, with_time: bool = True) -> dict:
        rec = {
            "kind": self.kind,
            "g": self.g,
            "N": self.N,
            "m": self.m,
            "partition": self.partition.to_record(),
            "degrees": list(self.degrees),
            "f": None if self.f is None else self.f.to_strings(),
            "kappa": self.kappa,
            "assignment": {k: format_rational(Fraction(v)) for k, v in sorted(self.assignment.items())},
            "elimination": self.elimination,
            "verification": self.verification,
        }
        if with_time:
            rec["created"] = self.created
        return rec

    @property
    def content_hash(self) -> str:
        blob = json.dumps(self.to_record(with_time=False), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    def to_line(self) -> str:
        rec = self.to_record()
        rec["hash"] = self.content_hash
        return json.dumps(rec, sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_line(cls, line: str) -> "CurveRecord":
        rec = json.loads(line)
        out = cls(
            kind=rec["kind"], g=rec["g"], N=rec["N"], m=rec["m"],
            partition=PartitionSpec.from_record(rec["partition"]),
            degrees=tuple(rec["degrees"]),
            f=None if rec["f"] is None else Poly.from_strings(rec["f"]),
            kappa=rec["kappa"],
            assignment={k: parse_rational(v) for k, v in rec["assignment"].items()},
            elimination=rec["elimination"], verification=rec["verification"],
            created=rec.get("created", ""),
        )
        if "hash" in rec and rec["hash"] != out.content_hash:
            raise ValueError("catalog line hash mismatch")
        return out

    @property
    def verified(self) -> bool:
        return bool(self.verification.get("verified"))


def verify_record(rec: CurveRecord) -> None:
    """Re-run the expansion of a concrete curve; raise unless it matches."""
    if rec.kind != "curve":
        return
    if not rec.verified or rec.f is None:
        raise UnverifiedRecord("curve record lacks a passing round-trip verification")
    e = cf_expand(rec.f, max_steps=2 * rec.m + 2)
    if not e.is_periodic or e.m != rec.m or torsion_order(e, rec.g) != rec.N \
            or format_rational(e.kappa) != rec.kappa or e.degrees() != rec.degrees:
        raise UnverifiedRecord("stored curve does not round-trip")


_write_lock = threading.Lock()


def record_curve(rec: CurveRecord, catalog_path) -> bool:
    """Append ``rec`` unless an identical record is present; True if written."""
    verify_record(rec)
    path = Path(catalog_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    line = rec.to_line()
    h = rec.content_hash
    with _write_lock, FileLock(str(path) + ".lock"):
        if path.exists():
            with path.open() as fh:
                for existing in fh:
                    if existing.strip() and json.loads(existing).get("hash") == h:
                        return False
        with path.open("a") as fh:
            fh.write(line + "\n")
            fh.flush()
    return True


def read_catalog(catalog_path) -> list[CurveRecord]:
    path = Path(catalog_path)
    if not path.exists():
        return []
    with path.open() as fh:
        return [CurveRecord.from_line(ln) for ln in fh if ln.strip()]


def digest(records: Iterable[CurveRecord]) -> str:
    hashes = sorted(r.content_hash for r in records)
    return hashlib.sha256("\n".join(hashes).encode()).hexdigest()


@dataclass(frozen=True)
class SearchConfig:
    g: int
    N: int
    m: int | None = None
    partition: tuple[int, ...] | None = None
    pool: tuple[Fraction, ...] = DEFAULT_POOL
    samples: int = 5
    seed: int = 0
    parallelism: int = 1
    budget: int = 2000  # sampling draws per family
    require_squarefree: bool = True

    def __post_init__(self):
        if self.g < 2:
            raise ValueError("search needs g >= 2")
        if self.N < self.g + 1:
            # N = g + 1 (m = 1) is the boundary case of the higher-genus table
            raise ValueError("search needs N >= g + 1")

    @classmethod
    def from_dict(cls, d: dict) -> "SearchConfig":
        kw = dict(d)
        if "pool" in kw:
            kw["pool"] = tuple(parse_rational(str(v)) for v in kw["pool"])
        if kw.get("partition") is not None:
            kw["partition"] = tuple(int(v) for v in kw["partition"])
        allowed = set(cls.__dataclass_fields__)
        unknown = set(kw) - allowed
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**kw)


def _now() -> str:
    return _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")


def _trace_summary(trace: EliminationTrace) -> dict:
    names = short_names(trace.spec)
    out = {
        "verdict": trace.verdict.value,
        "trace_sha256": hashlib.sha256(trace.to_json().encode()).hexdigest(),
        "steps": [s.variable for s in trace.steps],
        "free": list(trace.free_variables),
        "residual": [eq.rename(names).to_expr() for _, eq in trace.residual],
    }
    if trace.witness is not None:
        out["witness"] = {"power": trace.witness[0], "value": trace.witness[1].rename(names).to_expr()}
    return out


def process_partition(spec: PartitionSpec, cfg: SearchConfig) -> list[CurveRecord]:
    """Solve one partition and turn the outcome into records."""
    trace = solve_partition(spec)
    summary = _trace_summary(trace)
    base = dict(g=spec.g, N=spec.N, m=spec.m, partition=spec, degrees=spec.vector.deltas,
                elimination=summary, created=_now())
    if trace.verdict is VerdictKind.IMPOSSIBLE:
        return [CurveRecord(kind="impossible", **base)]
    if trace.verdict is VerdictKind.STUCK:
        return [CurveRecord(kind="stuck", **base)]
    out = [CurveRecord(kind="family", kappa="symbolic" if spec.m % 2 else "1", **base)]
    # a per-partition seed keeps parallel and serial runs identical
    seed = _stable_seed(cfg.seed, spec)
    assignments = sample_assignments(trace, cfg.samples * 4, cfg.pool, seed=seed, max_attempts=cfg.budget)
    kept = 0
    for a in assignments:
        if kept >= cfg.samples:
            break
        try:
            rt = instantiate(trace, a)
        except RoundTripFailed as exc:
            log.warning("round trip failed for %s: %s", spec.label(), exc)
            continue
        if cfg.require_squarefree and not is_squarefree(rt.f):
            continue
        out.append(CurveRecord(
            kind="curve", f=rt.f, kappa=format_rational(rt.kappa), assignment=a,
            verification={"verified": True, "m": rt.m, "kappa": format_rational(rt.kappa), "N": rt.N,
                          "degrees": list(rt.degrees)},
            **base))
        kept += 1
    return out


def _stable_seed(seed: int, spec: PartitionSpec) -> int:
    key = f"{seed}:{spec.g}:{spec.N}:{','.join(map(str, spec.deltas))}"
    return int(hashlib.sha256(key.encode()).hexdigest()[:8], 16)


def select_partitions(cfg: SearchConfig) -> list[PartitionSpec]:
    specs = enumerate_partitions(cfg.g, cfg.N)
    if cfg.m is not None:
        specs = [s for s in specs if s.m == cfg.m]
    if cfg.partition is not None:
        specs = [s for s in specs if s.deltas == tuple(cfg.partition)]
    return specs


def _job(args):
    spec, cfg = args
    return process_partition(spec, cfg)


def run_search(cfg: SearchConfig, catalog_path=None) -> list[CurveRecord]:
    specs = select_partitions(cfg)
    if cfg.parallelism > 1 and len(specs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.parallelism) as pool:
            chunks = list(pool.map(_job, [(s, cfg) for s in specs]))
    else:
        chunks = [process_partition(s, cfg) for s in specs]
    records = [r for chunk in chunks for r in chunk]
    records.sort(key=lambda r: (r.m, r.partition.deltas, KINDS.index(r.kind), r.content_hash))
    if catalog_path is not None:
        for r in records:
            record_curve(r, catalog_path)
    return records
