"""User-facing stream API, built entirely on the raw combinators.

Also hosts the showcase programs: difference encoder, run-length
encode/decode, and nested grouping-aggregation (three chained Mealy
machines driven by map_accum_filter).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import backend_ir as ir
from .backend_ir import (
    ArrVar, Exp, MutVar, Stm, array_get, array_len, assign, bool_, decr,
    dref, eq, ge, gt, if_, if1, incr, int_, land, le, letl, lt, ne, newref,
    ret, seq, unit,
)
from .stream_core import (
    StreamRep, filter_raw, flat_map_raw, guard, infinite, initializing,
    initializing_ref, initializing_static_array, iter_, map_raw, map_raw_,
    zip_raw,
)

BYTE_MAX = 255


# -- producers ---------------------------------------------------------------

def iota(n: Exp) -> StreamRep:
    return initializing_ref(n, lambda z: infinite(
        lambda k: letl(dref(z), lambda v: seq(incr(z), k(v)))))


def from_to(a: Exp, b: Exp) -> StreamRep:
    return initializing_ref(a, lambda z: guard(le(dref(z), b), infinite(
        lambda k: letl(dref(z), lambda v: seq(incr(z), k(v))))))


def pull_array(upb: Exp, fetch: Callable[[Exp], Callable], ) -> StreamRep:
    """Indexed producer: fetch(i) is an emitter for the element at i."""
    return initializing_ref(int_(0), lambda i: guard(
        lt(dref(i), upb),
        infinite(lambda k: seq(fetch(dref(i))(k), incr(i)))))


def of_arr(arr: ArrVar) -> StreamRep:
    return pull_array(array_len(arr),
                      lambda i: lambda k: array_get(arr, i, k))


def of_int_array(values: list[int]) -> StreamRep:
    return initializing_static_array(ir.INT64, [int(v) for v in values], of_arr)


def _countdown(n: Exp) -> StreamRep:
    return initializing_ref(n, lambda i: guard(
        gt(dref(i), int_(0)),
        infinite(lambda k: seq(decr(i), k(None)))))


# -- transformers ------------------------------------------------------------

def map_(f: Callable[[Exp], Exp], s: StreamRep) -> StreamRep:
    return map_raw(lambda e, k: letl(f(e), k), s)


def filter_(p: Callable[[Exp], Exp], s: StreamRep) -> StreamRep:
    return filter_raw(p, s)


def take(n: Exp, s: StreamRep) -> StreamRep:
    """Zip with a countdown; exercises zip elimination on every take."""
    return map_raw_(lambda p: p[1], zip_raw(_countdown(n), s))


def take_while(p: Callable[[Exp], Exp], s: StreamRep) -> StreamRep:
    # the monotone termination-flag pattern; skipping only at stream end
    return initializing_ref(bool_(True), lambda zr: guard(
        dref(zr),
        map_raw(lambda e, k: if_(p(e), k(e), assign(zr, bool_(False))), s)))


def drop(n: Exp, s: StreamRep) -> StreamRep:
    return initializing_ref(n, lambda c: map_raw(
        lambda e, k: if_(gt(dref(c), int_(0)), decr(c), k(e)),
        s, linear=False))


def drop_while(p: Callable[[Exp], Exp], s: StreamRep) -> StreamRep:
    return initializing_ref(bool_(True), lambda d: map_raw(
        lambda e, k: if_(land(dref(d), p(e)), unit(),
                         seq(assign(d, bool_(False)), k(e))),
        s, linear=False))


def scan(op: Callable[[Exp, Exp], Exp], z0: Exp, s: StreamRep) -> StreamRep:
    return initializing_ref(z0, lambda acc: map_raw(
        lambda e, k: letl(op(dref(acc), e),
                          lambda v: seq(assign(acc, v), k(v))), s))


def map_accum(tr: Callable, z0: Exp, s: StreamRep) -> StreamRep:
    """tr(z, a, k2) invokes k2(z_new, b) exactly once."""
    return initializing_ref(z0, lambda zs: map_raw(
        lambda a, k: letl(dref(zs), lambda z: tr(
            z, a, lambda zn, b: seq(assign(zs, zn), k(b)))), s))


def zip_with(f: Callable[[Exp, Exp], Exp], s1: StreamRep, s2: StreamRep) -> StreamRep:
    return map_raw_(lambda p: f(p[0], p[1]), zip_raw(s1, s2))


def flat_map(f: Callable[[Exp], StreamRep], s: StreamRep,
             item_ty: ir.TypeRep = ir.INT64) -> StreamRep:
    return flat_map_raw(f, s, item_ty)


# -- consumers ---------------------------------------------------------------

iter_stream = iter_


def fold(f: Callable[[Exp, Exp], Exp], z0: Exp, s: StreamRep,
         wide: bool = False) -> Stm:
    return newref(z0, lambda acc: seq(
        iter_(lambda a: assign(acc, f(dref(acc), a)), s),
        ret(dref(acc))), wide=wide)


def sum_int(s: StreamRep) -> Stm:
    return fold(lambda a, b: a + b, int_(0), s)


def sum_int_long(s: StreamRep) -> Stm:
    """Sum with an int64_t accumulator (benchmark convention)."""
    return fold(lambda a, b: a + b, int_(0), s, wide=True)


# -- showcase: difference encoder ---------------------------------------------

def diff(s: StreamRep) -> StreamRep:
    return initializing_ref(int_(0), lambda z: map_raw(
        lambda e, k: letl(e - dref(z), lambda v: seq(assign(z, e), k(v))), s))


# -- showcase: run-length coding ----------------------------------------------

def rle_encode(s: StreamRep) -> StreamRep:
    """bool stream -> byte stream: n<255 encodes n falses then a true; a full
    stretch of 255 falses emits 255 and resets. A pending sub-255 run at
    stream end is dropped (see round-trip contract in the tests)."""
    def bind(zc: MutVar) -> StreamRep:
        def step(el: Exp, k) -> Stm:
            return letl(dref(zc), lambda zeros: if_(
                el,
                seq(assign(zc, int_(0)), k(zeros)),
                seq(assign(zc, zeros + int_(1)),
                    if1(eq(dref(zc), int_(BYTE_MAX)),
                        seq(assign(zc, int_(0)), k(int_(BYTE_MAX)))))))
        return map_raw(step, s, linear=False)

    return initializing_ref(int_(0), bind)


def rle_decode(s: StreamRep) -> StreamRep:
    """byte stream -> bool stream via flat_map; n<255 expands to n falses and
    one true, 255 expands to 255 falses."""
    return flat_map_raw(
        lambda el: initializing(
            el + ir.int_of_bool(ne(el, int_(BYTE_MAX))),
            lambda el1: pull_array(el1, lambda i: lambda k: k(eq(i, el)))),
        s)


# -- showcase: nested grouping-aggregation ------------------------------------

@dataclass
class Monoid:
    unit: Exp
    op: Callable[[Exp, Exp], Exp]


def map_accum_filter(z0: Exp, tr: Callable) -> Callable[[StreamRep], StreamRep]:
    """Mealy machine transformer. tr(state, item, k) calls k(out, new_state)
    exactly once, with out None to suppress the output."""
    def apply(st: StreamRep) -> StreamRep:
        return initializing_ref(z0, lambda s: map_raw(
            lambda c, k: letl(dref(s), lambda os: tr(
                os, c,
                lambda out, ns: assign(s, ns) if out is None
                else seq(assign(s, ns), k(out)))),
            st, linear=False))
    return apply


def parse_ints(st: StreamRep) -> StreamRep:
    """Character codes -> (value, delimiter) pairs."""
    zero, nine = int_(ord("0")), int_(ord("9"))
    return map_accum_filter(int_(0), lambda s, c, k: if_(
        land(ge(c, zero), le(c, nine)),
        k(None, int_(10) * s + (c - zero)),
        k((s, c), int_(0))))(st)


def group_by_aggregate(sep: Exp, m: Monoid) -> Callable[[StreamRep], StreamRep]:
    def tr(s: Exp, item, k) -> Stm:
        x, c = item
        return letl(m.op(s, x), lambda ns: if_(
            eq(c, sep), k(None, ns), k((ns, c), m.unit)))
    return map_accum_filter(m.unit, tr)
