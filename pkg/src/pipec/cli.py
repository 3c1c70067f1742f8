"""pipec command line: emit, run, check, bench, goldens.

Reports are JSON lines under reports/; golden C files live under goldens/
and are compared by AST alpha-equivalence, never by bytes.
"""

from __future__ import annotations

import argparse
import json
import os
import statistics
import subprocess
import sys
import tempfile
from pathlib import Path

from . import backend_ir as ir
from .backend_ir import alpha_equal, canonicalize
from .cparse import parse_c
from .interp import BudgetExceeded, _wrap
from .law_suite import run_law_suite, run_negative_controls
from .pipelines import REGISTRY, build_body, interp_run

_FILL_CODE = {"mod10": 0, "identity": 1}


def _fill_kind(fill) -> str:
    return "identity" if fill(11) == 11 else "mod10"


def emit_pipeline(name: str, seed: int = 1, fn_name: str | None = None) -> str:
    spec = REGISTRY[name]
    params, body = build_body(spec, seed)
    return ir.emit_c(fn_name or "fn", params, body, name, seed)


def checksum_of(value, output) -> int:
    if value is not None:
        return _wrap(value)
    return _wrap(sum(output) if output else 0)


# ---------------------------------------------------------------------------
# Commands

def cmd_list(_args) -> int:
    for name, spec in REGISTRY.items():
        kind = "bench" if spec.bench else "showcase"
        wiring = ", ".join(spec.labels) if spec.labels else "-"
        print(f"{name:22} {kind:9} inputs: {wiring}")
    return 0


def cmd_emit(args) -> int:
    if args.name not in REGISTRY:
        print(f"unknown pipeline {args.name!r}", file=sys.stderr)
        return 2
    text = emit_pipeline(args.name, args.seed)
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {args.out}")
    else:
        print(text, end="")
    return 0


def cmd_run(args) -> int:
    if args.name not in REGISTRY:
        print(f"unknown pipeline {args.name!r}", file=sys.stderr)
        return 2
    spec = REGISTRY[args.name]
    try:
        r = interp_run(spec, args.size, seed=args.seed, budget=args.budget)
    except BudgetExceeded as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return 3
    chk = checksum_of(r.value, r.output)
    print(f"{args.name} size={args.size} value={r.value} "
          f"outputs={len(r.output)} checksum={chk}")
    if args.verify:
        ref_v, ref_out = spec.reference(spec.arrays(args.size))
        if (r.value, r.output) != (ref_v, ref_out):
            print("MISMATCH against the reference semantics", file=sys.stderr)
            return 1
        print("matches the reference semantics")
    return 0


def _check_corpus(sizes, seed) -> list[dict]:
    rows = []
    for name, spec in REGISTRY.items():
        use_sizes = sizes if spec.arity else [0]
        for size in use_sizes:
            r = interp_run(spec, size, seed=seed)
            ref_v, ref_out = spec.reference(spec.arrays(size))
            ok = (r.value == ref_v) and (r.output == ref_out)
            rows.append({"kind": "pipeline", "name": name, "size": size,
                         "ok": ok, "value": r.value, "reference": ref_v})
            if not ok:
                break
    return rows


def cmd_check(args) -> int:
    failures = 0
    rows: list[dict] = []
    if args.fuel == 0:
        print("warning: fuel=0 makes every law check vacuous")
    laws = run_law_suite(fuel=args.fuel, instances=args.instances,
                         seed=args.seed)
    for r in laws:
        status = "pass" if r.passed else "FAIL"
        print(f"law {r.law:3} {r.name:24} [{r.mode:6}] {status} "
              f"({r.instances} instances, {r.failures} failures)")
        rows.append({"kind": "law", "law": r.law, "name": r.name,
                     "mode": r.mode, "instances": r.instances,
                     "failures": r.failures,
                     "counterexample": r.first_counterexample})
        failures += r.failures
    negs = run_negative_controls(fuel=args.fuel, instances=args.instances,
                                 seed=args.seed)
    for r in negs:
        detected = r.failures > 0
        print(f"negative control: {r.name}: "
              f"{'detected' if detected else 'NOT DETECTED'}")
        rows.append({"kind": "negative", "name": r.name,
                     "detected": detected,
                     "counterexample": r.first_counterexample})
        if not detected and args.fuel > 0:
            failures += 1

    sizes = [0, 1, 17, 200] if args.quick else [0, 1, 17, 1000, 10000]
    corpus = _check_corpus(sizes, args.seed)
    for row in corpus:
        if not row["ok"]:
            print(f"pipeline {row['name']} size={row['size']}: "
                  f"interpreter {row['value']} != reference {row['reference']}")
            failures += 1
    ok_n = sum(1 for r in corpus if r["ok"])
    print(f"corpus: {ok_n}/{len(corpus)} pipeline/size combinations agree "
          f"with the reference semantics")
    rows.extend(corpus)

    _write_report(args.reports, "check.jsonl", rows)
    print("FAIL" if failures else "PASS")
    return 1 if failures else 0


def _write_report(reports_dir: str, fname: str, rows: list[dict]) -> None:
    d = Path(reports_dir)
    d.mkdir(parents=True, exist_ok=True)
    with open(d / fname, "w") as f:
        for row in rows:
            f.write(json.dumps({"schema": 1, **row}) + "\n")


# -- goldens -------------------------------------------------------------------

def golden_matches(name: str, golden_path: Path, seed: int = 1) -> bool:
    spec = REGISTRY[name]
    params, body = build_body(spec, seed)
    g_name, g_params, g_body = parse_c(golden_path.read_text())
    return alpha_equal(canonicalize(body), canonicalize(g_body),
                       params, g_params)


def cmd_goldens(args) -> int:
    gdir = Path(args.dir)
    gdir.mkdir(parents=True, exist_ok=True)
    drift = []
    for name in REGISTRY:
        path = gdir / f"{name}.c"
        if args.update or not path.exists():
            path.write_text(emit_pipeline(name, seed=1, fn_name="fn"))
            print(f"wrote {path}")
            continue
        ok = golden_matches(name, path)
        print(f"{name:22} {'match' if ok else 'DRIFT'}")
        if not ok:
            drift.append(name)
    if drift:
        print(f"goldens drifted: {', '.join(drift)}", file=sys.stderr)
        return 1
    return 0


# -- bench ---------------------------------------------------------------------

def _cc_cmd(args) -> list[str]:
    cc = args.cc or os.environ.get("PIPEC_CC", "cc")
    return cc.split()


def _compile(cc: list[str], sources: list[str], out: str, arity: int) -> None:
    cmd = cc + ["-O2", "-W", "-Wall", f"-DARITY={arity}", *sources, "-o", out]
    subprocess.run(cmd, check=True, capture_output=True, text=True)


def _run_bench_bin(binary: str, name: str, lens: list[int], fills: list[str],
                   iters: int, warmups: int) -> list[tuple[int, int]]:
    argv = [binary, name]
    for n, f in zip(lens, fills):
        argv += [str(n), str(_FILL_CODE[f])]
    while len(argv) < 6:
        argv += ["0", "0"]
    argv += [str(iters), str(warmups)]
    out = subprocess.run(argv, check=True, capture_output=True, text=True).stdout
    rows = []
    for line in out.strip().splitlines():
        _nm, _it, ns, chk = line.split(",")
        rows.append((int(ns), int(chk)))
    return rows


def cmd_bench(args) -> int:
    if args.name not in REGISTRY or not REGISTRY[args.name].bench:
        print(f"{args.name!r} is not a benchmark pipeline", file=sys.stderr)
        return 2
    cc = _cc_cmd(args)
    try:
        subprocess.run(cc + ["--version"], capture_output=True, check=True)
    except (OSError, subprocess.CalledProcessError):
        print(f"C compiler {' '.join(cc)} unavailable; skipping bench")
        return 0
    spec = REGISTRY[args.name]
    lens = spec.lengths(args.size)
    fills = [_fill_kind(f) for f in spec.fills]
    harness = Path(args.baselines) / "harness.c"
    baseline = Path(args.baselines) / f"baseline_{args.name}.c"
    report: dict = {"schema": 1, "pipeline": args.name, "size": args.size,
                    "iterations": args.iters,
                    "environment": "no CPU pinning or frequency calibration"}
    with tempfile.TemporaryDirectory() as td:
        gen_c = Path(td) / "gen.c"
        gen_c.write_text(emit_pipeline(args.name, args.seed, "bench_entry"))
        gen_bin = str(Path(td) / "gen_bin")
        base_bin = str(Path(td) / "base_bin")
        _compile(cc, [str(harness), str(gen_c)], gen_bin, spec.arity)
        _compile(cc, [str(harness), str(baseline)], base_bin, spec.arity)
        iters = max(args.iters, 1) if args.iters else 1
        gen_rows = _run_bench_bin(gen_bin, args.name, lens, fills,
                                  iters, args.warmups)
        base_rows = _run_bench_bin(base_bin, args.name, lens, fills,
                                   iters, args.warmups)
    gen_chk = {c for _, c in gen_rows}
    base_chk = {c for _, c in base_rows}
    if len(gen_chk) != 1 or gen_chk != base_chk:
        print(f"CHECKSUM MISMATCH generated={gen_chk} baseline={base_chk}",
              file=sys.stderr)
        return 1
    report["checksum"] = gen_rows[0][1]
    if args.iters == 0:
        print(f"{args.name}: validation only, checksum {gen_rows[0][1]}")
        report["validated_only"] = True
    else:
        g = [ns for ns, _ in gen_rows]
        b = [ns for ns, _ in base_rows]
        report.update({
            "generated_ns_mean": statistics.fmean(g),
            "generated_ns_stdev": statistics.pstdev(g),
            "baseline_ns_mean": statistics.fmean(b),
            "baseline_ns_stdev": statistics.pstdev(b),
            "generated_ns_min": min(g),
            "baseline_ns_min": min(b),
            "ratio": statistics.fmean(g) / max(statistics.fmean(b), 1e-9),
            "ratio_min": min(g) / max(min(b), 1e-9),
        })
        print(f"{args.name} size={args.size} iters={args.iters}: "
              f"generated {report['generated_ns_mean']/1e6:.2f} ms  "
              f"baseline {report['baseline_ns_mean']/1e6:.2f} ms  "
              f"ratio {report['ratio']:.3f}  checksum {report['checksum']}")
    d = Path(args.reports)
    d.mkdir(parents=True, exist_ok=True)
    with open(d / "bench.jsonl", "a") as f:
        f.write(json.dumps(report) + "\n")
    return 0


# ---------------------------------------------------------------------------

def main(argv: list[str] | None = None) -> int:
    p = argparse.ArgumentParser(prog="pipec")
    sub = p.add_subparsers(dest="cmd", required=True)

    sub.add_parser("list", help="list registered pipelines")

    pe = sub.add_parser("emit", help="emit C for a pipeline")
    pe.add_argument("name")
    pe.add_argument("--seed", type=int, default=1)
    pe.add_argument("--out", default=None)

    pr = sub.add_parser("run", help="run a pipeline via the IR interpreter")
    pr.add_argument("name")
    pr.add_argument("--size", type=int, default=10_000)
    pr.add_argument("--seed", type=int, default=1)
    pr.add_argument("--budget", type=int, default=100_000_000)
    pr.add_argument("--verify", action="store_true",
                    help="also compare against the reference semantics")

    pc = sub.add_parser("check", help="law suite and oracle-agreement corpus")
    pc.add_argument("--fuel", type=int, default=50)
    pc.add_argument("--instances", type=int, default=100)
    pc.add_argument("--seed", type=int, default=2024)
    pc.add_argument("--quick", action="store_true")
    pc.add_argument("--reports", default="reports")

    pb = sub.add_parser("bench", help="compile and time generated vs baseline")
    pb.add_argument("name")
    pb.add_argument("--iters", type=int, default=20)
    pb.add_argument("--warmups", type=int, default=2)
    pb.add_argument("--size", type=int, default=10_000_000)
    pb.add_argument("--seed", type=int, default=1)
    pb.add_argument("--cc", default=None)
    pb.add_argument("--baselines", default="baselines")
    pb.add_argument("--reports", default="reports")

    pg = sub.add_parser("goldens", help="compare or rewrite emitted-C goldens")
    pg.add_argument("--update", action="store_true")
    pg.add_argument("--dir", default="goldens")

    args = p.parse_args(argv)
    return {"list": cmd_list, "emit": cmd_emit, "run": cmd_run,
            "check": cmd_check, "bench": cmd_bench,
            "goldens": cmd_goldens}[args.cmd](args)


if __name__ == "__main__":
    sys.exit(main())
