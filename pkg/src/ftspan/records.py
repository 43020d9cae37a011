"""Structured experiment records: one per algorithm run, JSON-lines or CSV.

Field names are part of the external interface; timing fields are the only
ones excluded from determinism comparisons.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

TIMING_KEYS = ("preprocess", "main", "verify")

CSV_FIELDS = [
    "algorithm",
    "n",
    "m",
    "f",
    "k",
    "c",
    "tau",
    "delta",
    "seed",
    "spanner_edges",
    "size_ratio",
    "wall_time_ms_preprocess",
    "wall_time_ms_main",
    "wall_time_ms_verify",
    "verdict_mode",
    "verdict_pass",
    "verdict_checked",
    "verdict_counterexample",
]


@dataclass
class ExperimentRecord:
    algorithm: str
    n: int
    m: int
    f: int
    k: int
    c: float | None = None
    tau: float | None = None
    delta: int | None = None
    seed: int | None = None
    spanner_edges: int = 0
    size_ratio: float = 0.0
    wall_time_ms: dict = field(default_factory=dict)
    verdict: dict | None = None

    def to_dict(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "n": self.n,
            "m": self.m,
            "f": self.f,
            "k": self.k,
            "c": self.c,
            "tau": self.tau,
            "delta": self.delta,
            "seed": self.seed,
            "spanner_edges": self.spanner_edges,
            "size_ratio": self.size_ratio,
            "wall_time_ms": {key: self.wall_time_ms.get(key) for key in TIMING_KEYS},
            "verdict": self.verdict,
        }

    def to_json_line(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False)

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentRecord":
        return cls(
            algorithm=d["algorithm"],
            n=d["n"],
            m=d["m"],
            f=d["f"],
            k=d["k"],
            c=d.get("c"),
            tau=d.get("tau"),
            delta=d.get("delta"),
            seed=d.get("seed"),
            spanner_edges=d.get("spanner_edges", 0),
            size_ratio=d.get("size_ratio", 0.0),
            wall_time_ms={k: v for k, v in (d.get("wall_time_ms") or {}).items() if v is not None},
            verdict=d.get("verdict"),
        )

    @classmethod
    def from_json_line(cls, line: str) -> "ExperimentRecord":
        return cls.from_dict(json.loads(line))

    def to_csv_row(self) -> list[str]:
        verdict = self.verdict or {}
        ce = verdict.get("counterexample")
        values = [
            self.algorithm,
            self.n,
            self.m,
            self.f,
            self.k,
            self.c,
            self.tau,
            self.delta,
            self.seed,
            self.spanner_edges,
            self.size_ratio,
            self.wall_time_ms.get("preprocess"),
            self.wall_time_ms.get("main"),
            self.wall_time_ms.get("verify"),
            verdict.get("mode"),
            verdict.get("pass"),
            verdict.get("checked"),
            json.dumps(ce) if ce is not None else None,
        ]
        return ["" if v is None else str(v) for v in values]

    @classmethod
    def from_csv_row(cls, row: list[str]) -> "ExperimentRecord":
        def opt(s, conv):
            return None if s == "" else conv(s)

        d = dict(zip(CSV_FIELDS, row))
        wall = {}
        for key in TIMING_KEYS:
            v = opt(d[f"wall_time_ms_{key}"], float)
            if v is not None:
                wall[key] = v
        verdict = None
        if d["verdict_mode"] != "":
            verdict = {
                "pass": d["verdict_pass"] == "True",
                "mode": d["verdict_mode"],
                "checked": int(d["verdict_checked"]),
                "counterexample": json.loads(d["verdict_counterexample"])
                if d["verdict_counterexample"] != ""
                else None,
            }
        return cls(
            algorithm=d["algorithm"],
            n=int(d["n"]),
            m=int(d["m"]),
            f=int(d["f"]),
            k=int(d["k"]),
            c=opt(d["c"], float),
            tau=opt(d["tau"], float),
            delta=opt(d["delta"], int),
            seed=opt(d["seed"], int),
            spanner_edges=int(d["spanner_edges"]),
            size_ratio=float(d["size_ratio"]),
            wall_time_ms=wall,
            verdict=verdict,
        )

    def strip_timings(self) -> dict:
        """Record dict with timing fields removed, for determinism diffs."""
        d = self.to_dict()
        d.pop("wall_time_ms", None)
        return d
