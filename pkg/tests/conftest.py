from __future__ import annotations

from pathlib import Path

from pipec import backend_ir as ir
from pipec.interp import run
from pipec.stream_core import iter_

DATA = Path(__file__).parent / "data"


def eval_items(mk_stream, arrays=None, seed=1, consumer=None):
    """Build a stream inside a fresh session, drive it with print, interpret,
    and return the printed items."""
    with ir.GenSession(seed):
        body = iter_(consumer or ir.print_int, mk_stream())
    return run(body, arrays).output


def eval_body(mk_body, arrays=None, seed=1):
    with ir.GenSession(seed):
        body = mk_body()
    return run(body, arrays)
