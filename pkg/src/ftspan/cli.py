"""Command-line front end.

Subcommands: gen, build, verify, audit-sets, bench.  Exit status 0 means
success (including all requested verifications passing), 1 means a
verification failed (the counterexample is in the emitted record), 2 means
a usage or input error.  All randomness flows from --seed.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
import time

import numpy as np

from .algorithms import ALGORITHMS, AlgoParams, build_spanner, size_bound
from .generate import KINDS, gen_graph
from .graphio import read_graph_file, write_graph, write_graph_file
from .records import CSV_FIELDS, ExperimentRecord
from .setsystem import audit_system, family_for, hash_system, random_system
from .verify import check_ft_spanner_exhaustive, check_ft_spanner_sampled


def _parse_weights(spec: str):
    if spec == "unit":
        return "unit"
    if spec.startswith("uniform:"):
        body = spec[len("uniform:"):]
        parts = body.split(",")
        if len(parts) != 2:
            raise ValueError("uniform weights need 'uniform:LO,HI'")
        return ("uniform", float(parts[0]), float(parts[1]))
    raise ValueError(f"unknown weight spec {spec!r} (use 'unit' or 'uniform:LO,HI')")


def _parse_density(spec: str | None, kind: str, n: int):
    if kind in ("complete", "grid", "path", "cycle"):
        return None
    if spec is None:
        raise ValueError(f"graph kind {kind!r} needs --density")
    if kind == "gnm":
        return int(spec)
    if spec.endswith("logn"):
        factor = float(spec[: -len("logn")] or "1")
        return min(1.0, factor * math.log(n) / n)
    return float(spec)


def _parse_verify(spec: str):
    if spec == "off":
        return ("off", 0)
    if spec == "exhaustive":
        return ("exhaustive", 0)
    if spec.startswith("sampled:"):
        trials = int(spec[len("sampled:"):])
        if trials < 1:
            raise ValueError("sampled verification needs at least one trial")
        return ("sampled", trials)
    raise ValueError(f"unknown verify mode {spec!r} (off | exhaustive | sampled:N)")


def _int_list(spec: str) -> list[int]:
    return [int(x) for x in spec.split(",") if x != ""]


class _Emitter:
    """Writes records as JSON lines or CSV rows (header once)."""

    def __init__(self, fmt: str, stream):
        if fmt not in ("json", "csv"):
            raise ValueError(f"unknown format {fmt!r}")
        self.fmt = fmt
        self.stream = stream
        self._csv_started = False

    def emit_record(self, rec: ExperimentRecord) -> None:
        if self.fmt == "json":
            self.stream.write(rec.to_json_line() + "\n")
        else:
            if not self._csv_started:
                self._write_csv_row(CSV_FIELDS)
                self._csv_started = True
            self._write_csv_row(rec.to_csv_row())

    def emit_dict(self, d: dict) -> None:
        if self.fmt == "json":
            import json

            self.stream.write(json.dumps(d) + "\n")
        else:
            if not self._csv_started:
                self._write_csv_row(list(d.keys()))
                self._csv_started = True
            self._write_csv_row(["" if v is None else str(v) for v in d.values()])

    def _write_csv_row(self, row) -> None:
        buf = io.StringIO()
        csv.writer(buf).writerow(row)
        self.stream.write(buf.getvalue())


def _run_verification(g, h, f, k, mode, trials, seed):
    t0 = time.perf_counter()
    if mode == "exhaustive":
        verdict = check_ft_spanner_exhaustive(g, h, f, k)
    else:
        rng = np.random.default_rng([seed, 2])
        verdict = check_ft_spanner_sampled(g, h, f, k, trials, rng)
    return verdict, (time.perf_counter() - t0) * 1000.0


def _record_for(output, g, f, k, seed, verdict=None, verify_ms=None) -> ExperimentRecord:
    stats = output.stats
    ratio = output.spanner.m / size_bound(g.n, max(f, 1), k)
    wall = {
        "preprocess": stats.get("preprocess_ms", 0.0),
        "main": stats.get("main_ms", 0.0),
    }
    if verify_ms is not None:
        wall["verify"] = verify_ms
    return ExperimentRecord(
        algorithm=stats.get("algorithm", "unknown"),
        n=g.n,
        m=g.m,
        f=f,
        k=k,
        c=stats.get("c"),
        tau=stats.get("tau"),
        delta=stats.get("delta"),
        seed=seed,
        spanner_edges=output.spanner.m,
        size_ratio=ratio,
        wall_time_ms=wall,
        verdict=None if verdict is None else verdict.to_dict(),
    )


def _cmd_gen(args) -> int:
    weights = _parse_weights(args.weights)
    density = _parse_density(args.density, args.kind, args.n)
    g = gen_graph(args.kind, args.n, density, weights, args.seed)
    text = write_graph(g)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _build_once(g, algo, args, seed):
    params = AlgoParams(
        f=args.f,
        k=args.k,
        c=args.c,
        tau=args.tau,
        delta=args.delta,
        seed=seed,
        shortcut=args.shortcut == "on",
    )
    rng = np.random.default_rng([seed, 1])
    return build_spanner(g, algo, params, rng)


def _cmd_build(args, emitter) -> int:
    g = read_graph_file(args.input)
    output = _build_once(g, args.algo, args, args.seed)
    mode, trials = _parse_verify(args.verify)
    verdict = None
    verify_ms = None
    if mode != "off":
        verdict, verify_ms = _run_verification(
            g, output.spanner, args.f, args.k, mode, trials, args.seed
        )
    if args.out:
        write_graph_file(output.spanner, args.out)
    emitter.emit_record(_record_for(output, g, args.f, args.k, args.seed, verdict, verify_ms))
    if verdict is not None and not verdict.passed:
        return 1
    return 0


def _cmd_verify(args, emitter) -> int:
    g = read_graph_file(args.input)
    h = read_graph_file(args.spanner)
    mode, trials = _parse_verify(args.verify)
    if mode == "off":
        raise ValueError("verify subcommand needs --verify exhaustive or sampled:N")
    verdict, _ = _run_verification(g, h, args.f, args.k, mode, trials, args.seed)
    emitter.emit_dict(verdict.to_dict())
    return 0 if verdict.passed else 1


def _cmd_audit_sets(args, emitter) -> int:
    rng = np.random.default_rng([args.seed, 3])
    if args.system == "random":
        if args.c is None:
            raise ValueError("random systems need --c")
        system = random_system(args.n, args.f, args.c, rng)
    else:
        family = family_for(args.n, args.f, args.delta)
        system = hash_system(args.n, args.f, family)
    mode, trials = _parse_verify(args.mode) if args.mode.startswith("sampled") else (args.mode, 0)
    if mode == "exhaustive":
        report = audit_system(system, args.f, "exhaustive")
    else:
        report = audit_system(system, args.f, "sampled", rng=rng, trials=trials)
    emitter.emit_dict(report.to_dict())
    return 0 if not report.violations else 1


def _cmd_bench(args, emitter) -> int:
    algos = [a for a in args.algo.split(",") if a]
    for a in algos:
        if a not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {a!r}")
    ns = _int_list(args.n)
    fs = _int_list(args.f)
    ks = _int_list(args.k)
    weights = _parse_weights(args.weights)
    mode, trials = _parse_verify(args.verify)
    status = 0
    for algo in algos:
        for n in ns:
            for f in fs:
                for k in ks:
                    for seed in range(args.seed, args.seed + args.seeds):
                        density = _parse_density(args.density, args.kind, n)
                        g = gen_graph(args.kind, n, density, weights, [seed, 0])
                        cell = argparse.Namespace(
                            f=f, k=k, c=args.c, tau=args.tau, delta=args.delta,
                            shortcut=args.shortcut,
                        )
                        output = _build_once(g, algo, cell, seed)
                        verdict = None
                        verify_ms = None
                        if mode != "off":
                            verdict, verify_ms = _run_verification(
                                g, output.spanner, f, k, mode, trials, seed
                            )
                            if not verdict.passed:
                                status = 1
                        emitter.emit_record(
                            _record_for(output, g, f, k, seed, verdict, verify_ms)
                        )
    return status


def _add_common_build_flags(p) -> None:
    p.add_argument("--f", type=int, required=True, help="fault budget")
    p.add_argument("--k", type=int, required=True, help="stretch parameter (stretch = 2k-1)")
    p.add_argument("--c", type=float, default=None, help="sampling constant (per-algorithm default)")
    p.add_argument("--tau", type=float, default=None, help="acceptance threshold (fast algorithm)")
    p.add_argument("--delta", type=int, default=None, help="hash universality target (det algorithm)")
    p.add_argument("--seed", type=int, default=0, help="master random seed")
    p.add_argument("--shortcut", choices=("on", "off"), default="off",
                   help="return the input unchanged when it is already below the size bound")
    p.add_argument("--format", dest="format", choices=("json", "csv"), default="json")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ftspan", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a benchmark graph")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--density", default=None,
                   help="edge probability (gnp), edge count (gnm), or 'Xlogn' for X*ln(n)/n")
    p.add_argument("--weights", default="unit", help="'unit' or 'uniform:LO,HI'")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="output path (default stdout)")

    p = sub.add_parser("build", help="build a spanner and optionally verify it")
    p.add_argument("--in", dest="input", required=True, help="input graph path")
    p.add_argument("--algo", choices=ALGORITHMS, required=True)
    p.add_argument("--out", default=None, help="write the spanner here")
    p.add_argument("--verify", default="off", help="off | exhaustive | sampled:N")
    _add_common_build_flags(p)

    p = sub.add_parser("verify", help="verify a spanner against its input graph")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--spanner", required=True)
    p.add_argument("--f", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--verify", default="exhaustive", help="exhaustive | sampled:N")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("audit-sets", help="audit a set system's structural constants")
    p.add_argument("--system", choices=("random", "hash"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--f", type=int, required=True)
    p.add_argument("--c", type=float, default=None, help="random-system sampling constant")
    p.add_argument("--delta", type=int, default=None, help="hash universality target")
    p.add_argument("--mode", default="exhaustive", help="exhaustive | sampled:N")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("bench", help="sweep a parameter grid, one record per cell")
    p.add_argument("--algo", required=True, help="comma list of algorithms")
    p.add_argument("--n", required=True, help="comma list of vertex counts")
    p.add_argument("--f", required=True, help="comma list of fault budgets")
    p.add_argument("--k", required=True, help="comma list of stretch parameters")
    p.add_argument("--kind", choices=KINDS, default="gnp")
    p.add_argument("--density", default=None)
    p.add_argument("--weights", default="unit")
    p.add_argument("--seeds", type=int, default=1, help="number of seeds per cell")
    p.add_argument("--seed", type=int, default=0, help="first seed of the range")
    p.add_argument("--c", type=float, default=None)
    p.add_argument("--tau", type=float, default=None)
    p.add_argument("--delta", type=int, default=None)
    p.add_argument("--shortcut", choices=("on", "off"), default="off")
    p.add_argument("--verify", default="off", help="off | exhaustive | sampled:N")
    p.add_argument("--out", default=None, help="records path (default stdout)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    out_stream = sys.stdout
    close_stream = False
    try:
        if getattr(args, "out", None) and args.command in ("bench",):
            out_stream = open(args.out, "w", encoding="utf-8")
            close_stream = True
        emitter = _Emitter(getattr(args, "format", "json"), out_stream)
        if args.command == "gen":
            return _cmd_gen(args)
        if args.command == "build":
            return _cmd_build(args, emitter)
        if args.command == "verify":
            return _cmd_verify(args, emitter)
        if args.command == "audit-sets":
            return _cmd_audit_sets(args, emitter)
        if args.command == "bench":
            return _cmd_bench(args)
        raise ValueError(f"unknown command {args.command}")
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    finally:
        if close_stream:
            out_stream.close()


if __name__ == "__main__":
    sys.exit(main())
