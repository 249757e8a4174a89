"""Structured pass/fail reports for the verification suites.

A Report is a list of named check records plus suite metadata.  Check
bodies are pure; independent checks may be dispatched to a small worker
pool (size from the DAHAKIT_WORKERS environment variable), and records
are assembled in submission order so report content never depends on
scheduling.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field


SCHEMA_VERSION = 1


@dataclass
class CheckRecord:
    name: str
    status: str              # pass | fail | skipped
    witness: str | None = None
    elapsed_ms: float = 0.0


@dataclass
class Report:
    suite: str
    root_type: str
    backend: str
    params: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def overall(self):
        return "pass" if all(c.status != "fail" for c in self.checks) else "fail"

    def failed(self):
        return [c for c in self.checks if c.status == "fail"]

    def to_dict(self, tool_version="0"):
        return {
            "schema": SCHEMA_VERSION,
            "tool": "dahakit",
            "version": tool_version,
            "suite": self.suite,
            "type": self.root_type,
            "backend": self.backend,
            "params": self.params,
            "checks": [
                {"name": c.name, "status": c.status, "witness": c.witness}
                for c in self.checks
            ],
            "data": self.data,
            "overall": self.overall,
            # timing is the designated non-deterministic field; everything
            # else is byte-identical across runs with the same flags
            "timing": {
                "per_check_ms": {c.name: round(c.elapsed_ms, 3) for c in self.checks},
                "total_ms": round(sum(c.elapsed_ms for c in self.checks), 3),
            },
        }

    def to_json(self, tool_version="0"):
        return json.dumps(self.to_dict(tool_version), indent=2, sort_keys=False)


def worker_count():
    env = os.environ.get("DAHAKIT_WORKERS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def run_checks(jobs):
    """Run (name, thunk) jobs; each thunk returns a witness string or None.

    Exceptions become failures with the exception text as witness.  The
    records come back in submission order regardless of scheduling.
    """

    def one(job):
        name, thunk = job
        t0 = time.perf_counter()
        try:
            witness = thunk()
            status = "pass" if witness is None else "fail"
        except Exception as exc:  # noqa: BLE001 - recorded, not swallowed
            witness = f"exception: {exc}"
            status = "fail"
        return CheckRecord(name, status, witness,
                           (time.perf_counter() - t0) * 1000.0)

    workers = worker_count()
    if workers == 1 or len(jobs) <= 1:
        return [one(j) for j in jobs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(one, jobs))


def fmt_weight(w):
    return "(" + ",".join(str(x) for x in w) + ")"


def fmt_x_monomial(w):
    return "X^" + fmt_weight(w)


def fmt_xy_monomial(bw, cw):
    return "X^" + fmt_weight(bw) + "Y^" + fmt_weight(cw)
