"""Named pipeline registry: the benchmark suite plus showcase programs.

Each entry carries the staged builder (used for emission and interpretation),
the input wiring (array labels, length and fill rules as pure functions of
the requested size), and a reference evaluator built from the coinductive
combinators, so every registry pipeline is checkable both ways.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from . import backend_ir as ir
from . import stream_sugar as sg
from .backend_ir import (
    ArrVar, GenSession, Stm, eq, gt, int_, lor, ne, param_array,
    print_int, seq,
)
from .interp import _wrap, run
from .oracle_semantics import (
    OStream, o_abstract, o_guard, o_init, o_map_filter, o_unroll, o_zip,
)
from .stream_core import iter_, zip_raw

INT32_MIN = -2147483648
GROUP_TEXT = "100,200,300|400|500,600|700,800,900|1000"


# ---------------------------------------------------------------------------
# Reference combinators over host values

_UNIT = "unit"


def r_of_arr(xs: list) -> OStream:
    n = len(xs)

    def u(z):
        i, fl = z
        if not fl or i >= n:
            return (None, (i, False))
        return (xs[i], (i + 1, True))

    return o_guard(lambda z: z[1], o_unroll(u, (0, True)))


def r_iota(a: int) -> OStream:
    return o_unroll(lambda z: (z, z + 1), a)


def r_countdown(n: int) -> OStream:
    def u(z):
        c, fl = z
        if not fl or c <= 0:
            return (None, (c, False))
        return (_UNIT, (c - 1, True))

    return o_guard(lambda z: z[1], o_unroll(u, (n, True)))


def r_map(f: Callable, s: OStream) -> OStream:
    return o_map_filter(lambda z, a: (f(a), z), s)


def r_filter(p: Callable, s: OStream) -> OStream:
    return o_map_filter(lambda z, a: (a if p(a) else None, z), s)


def r_take(n: int, s: OStream) -> OStream:
    return o_map_filter(lambda z, pair: (pair[1], z),
                        o_zip(r_countdown(n), s))


def r_zip_with(f: Callable, s1: OStream, s2: OStream) -> OStream:
    return o_map_filter(lambda z, pair: (f(pair[0], pair[1]), z),
                        o_zip(s1, s2))


def r_flat_map_list(items_of: Callable[[object], list], s: OStream) -> OStream:
    """flat_map whose inner stream walks items_of(x), private index state
    introduced and abstracted away; the shared state is untouched."""
    from .oracle_semantics import o_flat_map

    def f(z, x):
        items = items_of(x)
        m = len(items)

        def u(st):
            (j, fl), zz = st
            if not fl or j >= m:
                return (None, ((j, False), zz))
            return (items[j], ((j + 1, True), zz))

        return o_abstract(o_guard(lambda st: st[0][1],
                                  o_unroll(u, ((0, True), z))))

    return o_flat_map(f, s)


def r_rle_encode(s: OStream) -> OStream:
    def f(z, el):
        zc, rest = z
        if el:
            return (zc, (0, rest))
        zc += 1
        if zc == sg.BYTE_MAX:
            return (sg.BYTE_MAX, (0, rest))
        return (None, (zc, rest))

    return o_map_filter(f, o_init(0, s))


def r_rle_decode(s: OStream) -> OStream:
    return r_flat_map_list(
        lambda el: [False] * el + ([True] if el != sg.BYTE_MAX else []), s)


def r_parse_ints(s: OStream) -> OStream:
    def f(z, c):
        acc, rest = z
        if ord("0") <= c <= ord("9"):
            return (None, (10 * acc + (c - ord("0")), rest))
        return ((acc, c), (0, rest))

    return o_map_filter(f, o_init(0, s))


def r_group_by(sep: int, unit: int, op: Callable, s: OStream) -> OStream:
    def f(z, item):
        acc, rest = z
        x, c = item
        ns = op(acc, x)
        if c == sep:
            return (None, (ns, rest))
        return ((ns, c), (unit, rest))

    return o_map_filter(f, o_init(unit, s))


def oracle_items(s: OStream, step_budget: int = 20_000_000) -> list:
    """Run a reference stream to completion, collecting produced items."""
    items = []
    cur = s
    for _ in range(step_budget):
        o = cur.observe()
        if o is None:
            return items
        if o.item is not None:
            items.append(o.item)
        cur = o.resume(o.state)
    raise RuntimeError("reference evaluation exceeded its step budget")


def oracle_sum(s: OStream) -> int:
    total = 0
    for x in oracle_items(s):
        total = _wrap(total + x)
    return total


# ---------------------------------------------------------------------------
# Registry

@dataclass
class PipelineSpec:
    name: str
    arity: int
    build: Callable[[list[ArrVar]], Stm]
    labels: list[str]  # input names per the benchmark wiring table
    lengths: Callable[[int], list[int]]
    fills: list[Callable[[int], int]]
    reference: Callable[[list[list[int]]], tuple]  # -> (value, output)
    bench: bool = False

    def arrays(self, size: int) -> list[list[int]]:
        return [[fill(i) for i in range(n)]
                for n, fill in zip(self.lengths(size), self.fills)]


def build_body(spec: PipelineSpec, seed: int = 1) -> tuple[list[ArrVar], Stm]:
    with GenSession(seed):
        params = [param_array(i + 1) for i in range(spec.arity)]
        body = spec.build(params)
    return params, body


def interp_run(spec: PipelineSpec, size: int, seed: int = 1,
               budget: int | None = 100_000_000):
    params, body = build_body(spec, seed)
    arrays = {p.name: xs for p, xs in zip(params, spec.arrays(size))}
    return run(body, arrays, budget=budget)


_MOD10 = lambda i: i % 10
_IDENT = lambda i: i


def _bit_fill(i: int) -> int:
    return 1 if i % 5 in (0, 3) else 0


def _group_fill_factory(size: int) -> Callable[[int], int]:
    def fill(i: int) -> int:
        if i == size - 1:
            return 0
        return ord(GROUP_TEXT[i % len(GROUP_TEXT)])
    return fill


def _sq(x):
    return x * x


def _even(e):
    return eq(e % int_(2), int_(0))


REGISTRY: dict[str, PipelineSpec] = {}


def _register(spec: PipelineSpec) -> None:
    if spec.name in REGISTRY:
        raise RuntimeError(f"duplicate pipeline name {spec.name!r}")
    REGISTRY[spec.name] = spec


def _sum_ref(items: list) -> tuple:
    total = 0
    for x in items:
        total = _wrap(total + x)
    return (total, [])


def _mk(name, arity, build, labels, lengths, fills, reference, bench=False):
    _register(PipelineSpec(name, arity, build, labels, lengths, fills,
                           reference, bench))


# -- the thirteen benchmarks -------------------------------------------------

_mk("sum", 1,
    lambda ps: sg.sum_int_long(sg.of_arr(ps[0])),
    ["v"], lambda n: [n], [_MOD10],
    lambda xs: _sum_ref(oracle_items(r_of_arr(xs[0]))),
    bench=True)

_mk("sumOfSquares", 1,
    lambda ps: sg.sum_int_long(sg.map_(_sq, sg.of_arr(ps[0]))),
    ["v"], lambda n: [n], [_MOD10],
    lambda xs: _sum_ref(oracle_items(r_map(lambda x: x * x, r_of_arr(xs[0])))),
    bench=True)

_mk("sumOfSquaresEven", 1,
    lambda ps: sg.sum_int_long(sg.map_(_sq, sg.filter_(_even, sg.of_arr(ps[0])))),
    ["v"], lambda n: [n], [_MOD10],
    lambda xs: _sum_ref(oracle_items(
        r_map(lambda x: x * x, r_filter(lambda x: x % 2 == 0, r_of_arr(xs[0]))))),
    bench=True)

_mk("cart", 2,
    lambda ps: sg.sum_int_long(sg.flat_map(
        lambda x: sg.map_(lambda y: x * y, sg.of_arr(ps[1])), sg.of_arr(ps[0]))),
    ["vHi", "vLo"], lambda n: [n, min(10, n)], [_MOD10, _MOD10],
    lambda xs: _sum_ref(oracle_items(r_flat_map_list(
        lambda x: [x * y for y in xs[1]], r_of_arr(xs[0])))),
    bench=True)

def _maps_build(ps):
    s = sg.of_arr(ps[0])
    for k in range(1, 8):
        s = sg.map_(lambda e, k=k: e * int_(k), s)
    return sg.sum_int_long(s)

def _maps_ref(xs):
    s = r_of_arr(xs[0])
    for k in range(1, 8):
        s = r_map(lambda x, k=k: x * k, s)
    return _sum_ref(oracle_items(s))

_mk("mapsMegamorphic", 1, _maps_build, ["v"], lambda n: [n], [_MOD10],
    _maps_ref, bench=True)

def _filters_build(ps):
    s = sg.of_arr(ps[0])
    for k in range(7):
        s = sg.filter_(lambda e, k=k: gt(e, int_(k)), s)
    return sg.sum_int_long(s)

def _filters_ref(xs):
    s = r_of_arr(xs[0])
    for k in range(7):
        s = r_filter(lambda x, k=k: x > k, s)
    return _sum_ref(oracle_items(s))

_mk("filtersMegamorphic", 1, _filters_build, ["v"], lambda n: [n], [_MOD10],
    _filters_ref, bench=True)

_mk("dotProduct", 2,
    lambda ps: sg.sum_int_long(sg.zip_with(
        lambda a, b: a * b, sg.of_arr(ps[0]), sg.of_arr(ps[1]))),
    ["vHi", "vHi"], lambda n: [n, n], [_MOD10, _MOD10],
    lambda xs: _sum_ref(oracle_items(r_zip_with(
        lambda a, b: a * b, r_of_arr(xs[0]), r_of_arr(xs[1])))),
    bench=True)

_mk("flatMapAfterZip", 2,
    lambda ps: sg.sum_int_long(sg.flat_map(
        lambda x: sg.map_(lambda y: x * y, sg.of_arr(ps[1])),
        sg.zip_with(lambda a, b: a + b, sg.of_arr(ps[0]), sg.of_arr(ps[0])))),
    ["vFaZ", "vFaZ"], lambda n: [math.isqrt(n), math.isqrt(n)], [_IDENT, _IDENT],
    lambda xs: _sum_ref(oracle_items(r_flat_map_list(
        lambda x: [x * y for y in xs[1]],
        r_zip_with(lambda a, b: a + b, r_of_arr(xs[0]), r_of_arr(xs[0]))))),
    bench=True)

_mk("zipAfterFlatMap", 2,
    lambda ps: sg.sum_int_long(sg.zip_with(
        lambda a, b: a + b,
        sg.flat_map(lambda x: sg.map_(lambda y: x + y, sg.of_arr(ps[1])),
                    sg.of_arr(ps[0])),
        sg.of_arr(ps[0]))),
    ["vZaF", "vZaF"], lambda n: [n, n], [_IDENT, _IDENT],
    lambda xs: _sum_ref(oracle_items(r_zip_with(
        lambda a, b: a + b,
        r_flat_map_list(lambda x: [x + y for y in xs[1]], r_of_arr(xs[0])),
        r_of_arr(xs[0])))),
    bench=True)

_mk("flatMapTake", 2,
    lambda ps: sg.sum_int_long(sg.take(
        ir.array_len(ps[0]),
        sg.flat_map(lambda x: sg.map_(lambda y: x * y, sg.of_arr(ps[1])),
                    sg.of_arr(ps[0])))),
    ["vHi", "vLo"], lambda n: [n, min(10, n)], [_MOD10, _MOD10],
    lambda xs: _sum_ref(oracle_items(r_take(
        len(xs[0]),
        r_flat_map_list(lambda x: [x * y for y in xs[1]], r_of_arr(xs[0]))))),
    bench=True)

_mk("zipFilterFilter", 2,
    lambda ps: sg.sum_int_long(sg.zip_with(
        lambda a, b: a + b,
        sg.filter_(lambda e: gt(e, int_(7)), sg.of_arr(ps[0])),
        sg.filter_(lambda e: gt(e, int_(5)), sg.of_arr(ps[1])))),
    ["v", "vHi"], lambda n: [n, n], [_MOD10, _MOD10],
    lambda xs: _sum_ref(oracle_items(r_zip_with(
        lambda a, b: a + b,
        r_filter(lambda x: x > 7, r_of_arr(xs[0])),
        r_filter(lambda x: x > 5, r_of_arr(xs[1]))))),
    bench=True)

_mk("zipFlatMapFlatMap", 2,
    lambda ps: sg.sum_int_long(sg.zip_with(
        lambda a, b: a + b,
        sg.flat_map(lambda x: sg.map_(lambda y: x * y, sg.of_arr(ps[1])),
                    sg.of_arr(ps[0])),
        sg.flat_map(lambda x: sg.map_(lambda y: x - y, sg.of_arr(ps[0])),
                    sg.of_arr(ps[1])))),
    ["v", "vLo"], lambda n: [n, min(10, n)], [_MOD10, _MOD10],
    lambda xs: _sum_ref(oracle_items(r_zip_with(
        lambda a, b: a + b,
        r_flat_map_list(lambda x: [x * y for y in xs[1]], r_of_arr(xs[0])),
        r_flat_map_list(lambda x: [x - y for y in xs[0]], r_of_arr(xs[1]))))),
    bench=True)

_mk("decode", 2,
    lambda ps: sg.sum_int_long(sg.map_raw_(
        ir.int_of_bool,
        sg.zip_with(lor, sg.rle_decode(sg.of_arr(ps[0])),
                    sg.rle_decode(sg.of_arr(ps[1]))))),
    ["v", "v"], lambda n: [n, n], [_MOD10, _MOD10],
    lambda xs: _sum_ref([1 if b else 0 for b in oracle_items(r_zip_with(
        lambda a, b: a or b,
        r_rle_decode(r_of_arr(xs[0])), r_rle_decode(r_of_arr(xs[1]))))]),
    bench=True)


# -- showcases ----------------------------------------------------------------

def _ex2_build(_ps):
    s = sg.iota(int_(1))
    s = sg.map_(_sq, s)
    s = sg.filter_(lambda e: gt(e % int_(17), int_(7)), s)
    s = sg.take(int_(10), s)
    return sg.sum_int(s)

def _ex2_ref(_xs):
    s = r_iota(1)
    s = r_map(lambda x: x * x, s)
    s = r_filter(lambda x: x % 17 > 7, s)
    s = r_take(10, s)
    return _sum_ref(oracle_items(s))

_mk("ex2", 0, _ex2_build, [], lambda n: [], [], _ex2_ref)


def _complex_zip_build(_ps):
    s1 = sg.of_int_array([0, 1, 2, 3])
    s1 = sg.map_(_sq, s1)
    s1 = sg.take(int_(12), s1)
    s1 = sg.filter_(_even, s1)
    s1 = sg.map_(_sq, s1)
    s2 = sg.flat_map(lambda x: sg.take(int_(3), sg.iota(x + int_(1))),
                     sg.iota(int_(1)))
    s2 = sg.filter_(_even, s2)
    return iter_(lambda p: seq(print_int(p[0]), print_int(p[1])),
                 zip_raw(s1, s2))

def _complex_zip_ref(_xs):
    data = [0, 1, 2, 3]
    s1 = r_map(lambda x: x * x, r_of_arr(data))
    s1 = r_take(12, s1)
    s1 = r_filter(lambda x: x % 2 == 0, s1)
    s1 = r_map(lambda x: x * x, s1)
    s2 = r_flat_map_list(lambda x: [x + 1, x + 2, x + 3], r_iota(1))
    s2 = r_filter(lambda x: x % 2 == 0, s2)
    pairs = oracle_items(o_zip(s1, s2))
    out = []
    for x, y in pairs:
        out += [x, y]
    return (None, out)

_mk("complexZip", 0, _complex_zip_build, [], lambda n: [], [], _complex_zip_ref)


def _rle_build(ps):
    bits = sg.map_raw_(lambda e: ne(e, int_(0)), sg.of_arr(ps[0]))
    back = sg.rle_decode(sg.rle_encode(bits))
    return sg.sum_int_long(sg.map_raw_(ir.int_of_bool, back))

def _rle_ref(xs):
    bits = r_map(lambda x: x != 0, r_of_arr(xs[0]))
    back = r_rle_decode(r_rle_encode(bits))
    return _sum_ref([1 if b else 0 for b in oracle_items(back)])

_mk("rleRoundtrip", 1, _rle_build, ["v"], lambda n: [n], [_bit_fill], _rle_ref)


def _grouping_build(ps):
    s = sg.of_arr(ps[0])
    s = sg.parse_ints(s)
    s = sg.group_by_aggregate(int_(ord(",")),
                              sg.Monoid(int_(0), lambda a, b: a + b))(s)
    s = sg.group_by_aggregate(int_(ord("|")),
                              sg.Monoid(int_(INT32_MIN), ir.imax))(s)
    return sg.sum_int_long(sg.map_raw_(lambda p: p[0], s))

def _grouping_ref(xs):
    s = r_parse_ints(r_of_arr(xs[0]))
    s = r_group_by(ord(","), 0, lambda a, b: a + b, s)
    s = r_group_by(ord("|"), INT32_MIN, lambda a, b: max(a, b), s)
    return _sum_ref([p[0] for p in oracle_items(s)])


def _grouping_lengths(n):
    return [n]


_mk("grouping", 1, _grouping_build, ["chars"], _grouping_lengths,
    [lambda i: 0], _grouping_ref)  # fill replaced per size below


class _GroupSpec(PipelineSpec):
    def arrays(self, size: int) -> list[list[int]]:
        fill = _group_fill_factory(size)
        return [[fill(i) for i in range(size)]]


REGISTRY["grouping"] = _GroupSpec(**vars(REGISTRY["grouping"]))


BENCH_NAMES = [name for name, s in REGISTRY.items() if s.bench]
