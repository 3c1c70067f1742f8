"""Baseline validation: each handwritten kernel must reproduce the pipeline
reference result. The reference checksum is obtained through the pipec CLI
(the primary component's external interface), never by importing internals.
"""

from __future__ import annotations

import math
import re
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

HERE = Path(__file__).parent

# Input wiring per the benchmark table: (arity, length rule, fill codes)
# fill code 0 = i mod 10, 1 = identity
WIRING = {
    "sum": (1, lambda n: [n], [0]),
    "sumOfSquares": (1, lambda n: [n], [0]),
    "sumOfSquaresEven": (1, lambda n: [n], [0]),
    "cart": (2, lambda n: [n, min(10, n)], [0, 0]),
    "mapsMegamorphic": (1, lambda n: [n], [0]),
    "filtersMegamorphic": (1, lambda n: [n], [0]),
    "dotProduct": (2, lambda n: [n, n], [0, 0]),
    "flatMapAfterZip": (2, lambda n: [math.isqrt(n)] * 2, [1, 1]),
    "zipAfterFlatMap": (2, lambda n: [n, n], [1, 1]),
    "flatMapTake": (2, lambda n: [n, min(10, n)], [0, 0]),
    "zipFilterFilter": (2, lambda n: [n, n], [0, 0]),
    "zipFlatMapFlatMap": (2, lambda n: [n, min(10, n)], [0, 0]),
    "decode": (2, lambda n: [n, n], [0, 0]),
}


def _cc() -> str | None:
    return shutil.which("cc") or shutil.which("gcc")


needs_cc = pytest.mark.skipif(_cc() is None, reason="no C compiler")


def compile_baseline(name: str, tmp: Path) -> Path:
    arity = WIRING[name][0]
    out = tmp / f"base_{name}"
    subprocess.run(
        [_cc(), "-O2", "-W", "-Wall", f"-DARITY={arity}",
         str(HERE / "harness.c"), str(HERE / f"baseline_{name}.c"),
         "-o", str(out)],
        check=True, capture_output=True, text=True)
    return out


def run_baseline(binary: Path, name: str, size: int,
                 iters: int = 1, warmups: int = 0) -> list[tuple[int, int]]:
    _arity, lengths, fills = WIRING[name]
    argv = [str(binary), name]
    for n, f in zip(lengths(size), fills):
        argv += [str(n), str(f)]
    while len(argv) < 6:
        argv += ["0", "0"]
    argv += [str(iters), str(warmups)]
    out = subprocess.run(argv, check=True, capture_output=True, text=True).stdout
    rows = []
    for line in out.strip().splitlines():
        _nm, it, ns, chk = line.split(",")
        rows.append((int(ns), int(chk)))
    return rows


def pipec_checksum(name: str, size: int) -> int:
    out = subprocess.run(
        [sys.executable, "-m", "pipec.cli", "run", name, "--size", str(size)],
        check=True, capture_output=True, text=True).stdout
    m = re.search(r"checksum=(-?\d+)", out)
    assert m, out
    return int(m.group(1))


@needs_cc
@pytest.mark.parametrize("name", sorted(WIRING))
@pytest.mark.parametrize("size", [0, 17, 1000])
def test_baseline_matches_reference(name, size, tmp_path):
    binary = compile_baseline(name, tmp_path)
    rows = run_baseline(binary, name, size)
    assert len(rows) == 1  # one timing line per iteration
    assert rows[0][1] == pipec_checksum(name, size)


@needs_cc
def test_harness_minimal_run_and_empty_inputs(tmp_path):
    binary = compile_baseline("sum", tmp_path)
    rows = run_baseline(binary, "sum", 0, iters=1)
    assert rows == [(rows[0][0], 0)]
    rows = run_baseline(binary, "sum", 100, iters=3, warmups=1)
    assert [c for _, c in rows] == [450, 450, 450]
