"""Seeded random pipeline plans, interpretable in both worlds.

A plan is data (source + op list), so the same plan can be built as a staged
StreamRep and as a reference coinductive stream; values stay non-negative so
the truncating-mod question never splits the two. Inner pipelines of
flat_map ops are bounded and their shape never depends on the item value.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from pipec import stream_sugar as sg
from pipec.backend_ir import eq, int_
from pipec.pipelines import (
    oracle_items, r_filter, r_flat_map_list, r_iota, r_map, r_of_arr,
    r_take, r_zip_with,
)
from pipec.stream_core import StreamRep


@dataclass
class Plan:
    source: tuple
    ops: list = field(default_factory=list)


def random_plan(rng: random.Random, allow_zip: bool = True,
                require_nested: bool = False, n_ops: int | None = None) -> Plan:
    """Draw a plan respecting the pipeline side-conditions as a user must:
    take over a nested stream places a production-coupled countdown guard in
    trailing position, so no flat_map may follow it (condition ii/iii is a
    caller obligation, unchecked by the library)."""
    src = rng.choice([
        ("from_to", rng.randrange(0, 4), rng.randrange(3, 9)),
        ("of_static", [rng.randrange(0, 9) for _ in range(rng.randrange(0, 8))]),
        ("iota_take", rng.randrange(0, 4), rng.randrange(0, 7)),
    ])
    ops: list = []
    count = rng.randrange(1, 5) if n_ops is None else n_ops
    nested = False
    frail = False  # a take has been conjoined into a trailing guard
    for _ in range(count):
        kind = rng.randrange(0, 12)
        if kind < 3:
            ops.append(("map_affine", rng.randrange(1, 4), rng.randrange(0, 5)))
        elif kind < 5:
            m = rng.randrange(2, 5)
            ops.append(("filter_mod", m, rng.randrange(0, m)))
        elif kind < 7:
            ops.append(("take", rng.randrange(0, 9)))
            frail = frail or nested
        elif kind < 8:
            ops.append(("drop", rng.randrange(0, 5)))
        elif kind < 10:
            if not frail:
                ops.append(("flat_map", _inner_plan(rng)))
                nested = True
        elif allow_zip:
            other = random_plan(rng, allow_zip=False)
            ops.append(("zip", other))
            o_nested, o_frail = _plan_shape(other)
            # a zip over a nested driver leaves the embedded side's guard in
            # trailing position, which no later flat_map may loop under
            frail = frail or o_frail or nested or o_nested
            nested = nested or o_nested
    if require_nested and not any(op[0] == "flat_map" for op in ops):
        ops.append(("flat_map", _inner_plan(rng)))
    return Plan(src, ops)


def _plan_shape(plan: Plan) -> tuple[bool, bool]:
    nested = False
    frail = False
    for op in plan.ops:
        if op[0] == "flat_map":
            nested = True
        elif op[0] == "take" and nested:
            frail = True
        elif op[0] == "zip":
            n, f = _plan_shape(op[1])
            frail = frail or f or nested or n
            nested = nested or n
    return nested, frail


def _inner_plan(rng: random.Random) -> tuple:
    src = rng.choice([
        ("from_to_rel", rng.randrange(0, 3), rng.randrange(2, 5)),
        ("of_static", [rng.randrange(0, 9) for _ in range(rng.randrange(1, 5))]),
    ])
    inner_ops = []
    if rng.random() < 0.5:
        inner_ops.append(("map_affine", rng.randrange(1, 3), rng.randrange(0, 3)))
    if rng.random() < 0.3:
        m = rng.randrange(2, 4)
        inner_ops.append(("filter_mod", m, rng.randrange(0, m)))
    return (src, inner_ops)


# -- staged construction -------------------------------------------------------

def _staged_source(src) -> StreamRep:
    tag = src[0]
    if tag == "from_to":
        return sg.from_to(int_(src[1]), int_(src[2]))
    if tag == "of_static":
        return sg.of_int_array(src[1])
    if tag == "iota_take":
        return sg.take(int_(src[2]), sg.iota(int_(src[1])))
    raise AssertionError(tag)


def _staged_inner(inner, x) -> StreamRep:
    (src, inner_ops) = inner
    if src[0] == "from_to_rel":
        s = sg.from_to(x + int_(src[1]), x + int_(src[2]))
    else:
        s = sg.of_int_array(src[1])
    for op in inner_ops:
        s = _staged_op(op, s)
    return s


def _staged_op(op, s: StreamRep) -> StreamRep:
    tag = op[0]
    if tag == "map_affine":
        return sg.map_(lambda e: e * int_(op[1]) + int_(op[2]), s)
    if tag == "filter_mod":
        return sg.filter_(lambda e: eq(e % int_(op[1]), int_(op[2])), s)
    if tag == "take":
        return sg.take(int_(op[1]), s)
    if tag == "drop":
        return sg.drop(int_(op[1]), s)
    if tag == "flat_map":
        return sg.flat_map(lambda x: _staged_inner(op[1], x), s)
    if tag == "zip":
        return sg.zip_with(lambda a, b: a + b, s, staged_stream(op[1]))
    raise AssertionError(tag)


def staged_stream(plan: Plan, on_step=None) -> StreamRep:
    s = _staged_source(plan.source)
    if on_step:
        on_step(s)
    for op in plan.ops:
        s = _staged_op(op, s)
        if on_step:
            on_step(s)
    return s


# -- reference construction ----------------------------------------------------

def _ref_source(src):
    tag = src[0]
    if tag == "from_to":
        return r_of_arr(list(range(src[1], src[2] + 1)))
    if tag == "of_static":
        return r_of_arr(src[1])
    if tag == "iota_take":
        return r_take(src[2], r_iota(src[1]))
    raise AssertionError(tag)


def _ref_inner_items(inner, x: int) -> list:
    (src, inner_ops) = inner
    if src[0] == "from_to_rel":
        items = list(range(x + src[1], x + src[2] + 1))
    else:
        items = list(src[1])
    for op in inner_ops:
        if op[0] == "map_affine":
            items = [v * op[1] + op[2] for v in items]
        elif op[0] == "filter_mod":
            items = [v for v in items if v % op[1] == op[2]]
    return items


def _ref_op(op, s):
    tag = op[0]
    if tag == "map_affine":
        return r_map(lambda v: v * op[1] + op[2], s)
    if tag == "filter_mod":
        return r_filter(lambda v: v % op[1] == op[2], s)
    if tag == "take":
        return r_take(op[1], s)
    if tag == "drop":
        def f(z, a):
            left, rest = z
            if left > 0:
                return (None, (left - 1, rest))
            return (a, (0, rest))
        from pipec.oracle_semantics import o_init, o_map_filter
        return o_map_filter(f, o_init(op[1], s))
    if tag == "flat_map":
        return r_flat_map_list(lambda x: _ref_inner_items(op[1], x), s)
    if tag == "zip":
        return r_zip_with(lambda a, b: a + b, s, ref_stream(op[1]))
    raise AssertionError(tag)


def ref_stream(plan: Plan):
    s = _ref_source(plan.source)
    for op in plan.ops:
        s = _ref_op(op, s)
    return s


def ref_items(plan: Plan) -> list:
    return oracle_items(ref_stream(plan), step_budget=200_000)
