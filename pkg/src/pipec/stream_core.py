"""Stream representation and the raw combinator API.

A stream value IS its normal form: an Init spine over either a Flat record
(continuation-passing unrolling + guard over implicit mutable state) or one
Nested level (producer, inner-stream builder, trailing guard). Constructors
and transformers return normal forms directly, so normalization happens by
evaluating the pipeline expression; there is no zip node and no rewriting.

Items are host-level values: a target expression, a tuple of items, or None.
Tuples and None never reach generated code; only expressions are spliced.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import backend_ir as ir
from .backend_ir import (
    ArrVar, Exp, MutVar, Stm, TypeRep, TRUE, assign, bool_, dref, eq, int_,
    if_, if1, is_true, land, letl, logand, ne, newref, seq, unit, while_,
)

Item = object
Consumer = Callable[[Item], Stm]
Emitter = Callable[[Consumer], Stm]


class ShapeError(Exception):
    """A stream builder produced a shape this recursion level cannot accept."""


@dataclass
class FlatRec:
    """Guarded unrolling over implicit state; grd must not mutate state."""
    unr: Emitter
    grd: Exp
    linear: bool


@dataclass
class Complexity:
    nesting_depth: int
    linear: bool


class StreamRep:
    pass


@dataclass
class SInit(StreamRep):
    """State introduction. mutable=True binds a cell, else a let-bound value."""
    init: Exp
    binder: Callable
    mutable: bool = True


@dataclass
class SStatic(StreamRep):
    """Static data array introduction (DATA segment)."""
    elem_ty: TypeRep
    values: list
    binder: Callable[[ArrVar], StreamRep]


@dataclass
class SFlat(StreamRep):
    flat: FlatRec


@dataclass
class SNested(StreamRep):
    """One nesting level; inner must have a statically fixed shape."""
    producer: FlatRec
    inner: Callable[[Exp], StreamRep]
    grd: Exp  # trailing guard
    item_ty: TypeRep  # type of the producer's items (closure conversion cell)


# ---------------------------------------------------------------------------
# Constructors

def initializing(e: Exp, k: Callable[[Exp], StreamRep]) -> StreamRep:
    return SInit(e, k, mutable=False)


def initializing_ref(e: Exp, k: Callable[[MutVar], StreamRep]) -> StreamRep:
    return SInit(e, k, mutable=True)


def initializing_static_array(ty: TypeRep, values: list,
                              k: Callable[[ArrVar], StreamRep]) -> StreamRep:
    return SStatic(ty, list(values), k)


def infinite(unr: Emitter) -> StreamRep:
    """Linear producer with a constant-true guard; unr must invoke its
    consumer exactly once per activation (except possibly at stream end)."""
    return SFlat(FlatRec(unr, TRUE, linear=True))


# ---------------------------------------------------------------------------
# Transformers

def _push(s: StreamRep, f: Callable[[StreamRep], StreamRep]) -> StreamRep:
    if isinstance(s, SInit):
        return SInit(s.init, lambda z: f(s.binder(z)), s.mutable)
    if isinstance(s, SStatic):
        return SStatic(s.elem_ty, s.values, lambda a: f(s.binder(a)))
    raise AssertionError


def guard(g: Exp, s: StreamRep) -> StreamRep:
    """Conjoin a termination condition. Side-conditions (monotone flags,
    no guard-state mutation downstream) are caller obligations."""
    if isinstance(s, (SInit, SStatic)):
        return _push(s, lambda rest: guard(g, rest))
    if isinstance(s, SFlat):
        return SFlat(FlatRec(s.flat.unr, land(g, s.flat.grd), s.flat.linear))
    return SNested(s.producer, s.inner, land(g, s.grd), s.item_ty)


def map_raw(f: Callable[[Item, Consumer], Stm], s: StreamRep,
            linear: bool = True) -> StreamRep:
    """Accumulating map-filter in continuation style; f calls its consumer at
    most once, exactly once if the linear flag is left on."""
    if isinstance(s, (SInit, SStatic)):
        return _push(s, lambda rest: map_raw(f, rest, linear))
    if isinstance(s, SFlat):
        fl = s.flat
        return SFlat(FlatRec(lambda k: fl.unr(lambda x: f(x, k)),
                             fl.grd, fl.linear and linear))
    return SNested(s.producer, lambda x: map_raw(f, s.inner(x), linear),
                   s.grd, s.item_ty)


def map_raw_(f: Callable[[Item], Item], s: StreamRep) -> StreamRep:
    return map_raw(lambda x, k: k(f(x)), s)


def filter_raw(p: Callable[[Item], Exp], s: StreamRep) -> StreamRep:
    return map_raw(lambda x, k: if1(p(x), k(x)), s, linear=False)


def flat_map_raw(f: Callable[[Exp], StreamRep], s: StreamRep,
                 item_ty: TypeRep = ir.INT64) -> StreamRep:
    """Nest: f builds the inner stream from the (expression) item; its shape
    must not depend on the item value. item_ty is the item's base type."""
    if isinstance(s, (SInit, SStatic)):
        return _push(s, lambda rest: flat_map_raw(f, rest, item_ty))
    if isinstance(s, SFlat):
        return SNested(s.flat, f, TRUE, item_ty)
    return SNested(s.producer, lambda x: flat_map_raw(f, s.inner(x), item_ty),
                   s.grd, s.item_ty)


# ---------------------------------------------------------------------------
# Complexity and normal-form checking

def _hole_item(s: StreamRep):
    if isinstance(s, SInit):
        return MutVar("__hole", s.init.ty) if s.mutable else ir.VarRead("__hole", s.init.ty)
    if isinstance(s, SStatic):
        return ArrVar("__hole", s.elem_ty, int_(len(s.values)))
    raise AssertionError


def complexity(s: StreamRep) -> Complexity:
    if isinstance(s, (SInit, SStatic)):
        return complexity(s.binder(_hole_item(s)))
    if isinstance(s, SFlat):
        return Complexity(0, s.flat.linear)
    inner = complexity(s.inner(ir.VarRead("__hole_x", s.item_ty)))
    return Complexity(1 + inner.nesting_depth, False)


def check_normal_form(s: StreamRep) -> None:
    """Init spine, then Flat or Nested; Nested inner recursively normal."""
    while isinstance(s, (SInit, SStatic)):
        s = s.binder(_hole_item(s))
    if isinstance(s, SFlat):
        assert s.flat.grd.ty is ir.BOOL
        return
    if isinstance(s, SNested):
        assert s.producer.grd.ty is ir.BOOL
        assert s.grd.ty is ir.BOOL
        check_normal_form(s.inner(ir.VarRead("__hole_x", s.item_ty)))
        return
    raise AssertionError(f"not a normal form: {s!r}")


# ---------------------------------------------------------------------------
# Linearization (closure conversion for nested streams)

_ZERO = {ir.INT64: lambda: int_(0), ir.BOOL: lambda: bool_(False),
         ir.F64: lambda: ir.f64(0.0)}


def closure_convert(stf: Callable[[Exp], StreamRep], item_ty: TypeRep,
                    k: Callable[[MutVar, FlatRec, Stm], StreamRep]) -> StreamRep:
    """Re-express an inner-stream builder as (saved-item cell, Flat record
    reading that cell, state re-initialization statement).

    Applies stf to the code reading a fresh cell, then converts each Init of
    the result into an allocate-once cell plus a re-init assignment. A Nested
    inner is linearized first; any other shape is a construction fault.
    """
    def loop(st: StreamRep, acc: Stm, xr: MutVar) -> StreamRep:
        if isinstance(st, SInit):
            return SInit(st.init,
                         lambda z: loop(st.binder(z if st.mutable else dref(z)),
                                        seq(acc, assign(z, st.init)), xr),
                         mutable=True)
        if isinstance(st, SStatic):
            return SStatic(st.elem_ty, st.values,
                           lambda a: loop(st.binder(a), acc, xr))
        if isinstance(st, SNested):
            return loop(linearize(st), acc, xr)
        if isinstance(st, SFlat):
            return k(xr, st.flat, acc)
        raise ShapeError(f"unexpected inner shape {st!r}")

    return initializing_ref(_ZERO[item_ty](),
                            lambda xr: loop(stf(dref(xr)), unit(), xr))


def linearize(s: StreamRep) -> StreamRep:
    """Weakly equivalent linear Flat: probe loop for a non-linear Flat, the
    0/3/5/7 state-register machine for a Nested."""
    if isinstance(s, (SInit, SStatic)):
        return _push(s, linearize)
    if isinstance(s, SFlat):
        if s.flat.linear:
            return s
        fl = s.flat

        def probe(k: Consumer) -> Stm:
            return newref(bool_(True), lambda flag: while_(
                land(dref(flag), fl.grd),
                fl.unr(lambda x: seq(assign(flag, bool_(False)), k(x)))))

        return SFlat(FlatRec(probe, fl.grd, linear=True))

    prod, g3 = s.producer, s.grd

    def with_cc(q: MutVar) -> StreamRep:
        def mk(xr: MutVar, ifl: FlatRec, reinit: Stm) -> StreamRep:
            def unr(k: Consumer) -> Stm:
                advance_outer = if_(
                    prod.grd,
                    prod.unr(lambda x: seq(assign(xr, x), reinit,
                                           assign(q, int_(7)))),
                    assign(q, int_(0)))
                advance_inner = if_(
                    ifl.grd,
                    ifl.unr(lambda y: seq(k(y), assign(q, int_(5)))),
                    assign(q, int_(3)))
                return seq(
                    assign(q, dref(q) + int_(2)),
                    while_(ne(logand(dref(q), int_(2)), int_(0)),
                           seq(if1(eq(dref(q), int_(3)), advance_outer),
                               if1(eq(dref(q), int_(7)), advance_inner))))

            return SFlat(FlatRec(unr, land(ne(dref(q), int_(0)), g3),
                                 linear=True))

        return closure_convert(s.inner, s.item_ty, mk)

    return initializing_ref(int_(1), with_cc)


# ---------------------------------------------------------------------------
# Zip elimination

def _swap(p):
    a, b = p
    return (b, a)


def _embed(linear_side: FlatRec, into: StreamRep, left: bool) -> StreamRep:
    """Fuse a linear Flat into the other stream at its production point.
    left=True keeps the linear side as the left pair component."""
    if left:
        f = lambda b, k: linear_side.unr(lambda a: k((a, b)))
    else:
        f = lambda a, k: linear_side.unr(lambda b: k((a, b)))
    return guard(linear_side.grd, map_raw(f, into))


def zip_raw(s1: StreamRep, s2: StreamRep) -> StreamRep:
    """Pair two streams in lockstep; the pair is host-level only.

    Init spines are pulled out alternately (left node, then swap sides). A
    linear Flat side is embedded into the other stream; with two linear Flats
    the left drives unless the right is infinite. Otherwise the less deeply
    nested side is linearized first (ties to the left).
    """
    if isinstance(s1, (SInit, SStatic)):
        return _push(s1, lambda rest: map_raw_(_swap, zip_raw(s2, rest)))
    if isinstance(s2, (SInit, SStatic)):
        return _push(s2, lambda rest: zip_raw(s1, rest))

    f1 = s1.flat if isinstance(s1, SFlat) else None
    f2 = s2.flat if isinstance(s2, SFlat) else None

    if f1 is not None and f1.linear and f2 is not None and f2.linear:
        if is_true(f2.grd):
            return _embed(f2, s1, left=False)  # s1 drives, s2 nested after
        return _embed(f1, s2, left=True)
    if f1 is not None and f1.linear:
        return _embed(f1, s2, left=True)
    if f2 is not None and f2.linear:
        return _embed(f2, s1, left=False)

    if complexity(s1).nesting_depth <= complexity(s2).nesting_depth:
        return zip_raw(linearize(s1), s2)
    return zip_raw(s1, linearize(s2))


# ---------------------------------------------------------------------------
# Observation

def iter_(consumer: Consumer, s: StreamRep) -> Stm:
    """Drive the state machine: allocate the Init spine, then guarded loops."""
    return _iter(consumer, s, TRUE)


def _iter(c: Consumer, s: StreamRep, persist: Exp) -> Stm:
    if isinstance(s, SInit):
        if s.mutable:
            return newref(s.init, lambda v: _iter(c, s.binder(v), persist))
        return letl(s.init, lambda x: _iter(c, s.binder(x), persist))
    if isinstance(s, SStatic):
        return ir.new_static_array(s.elem_ty, s.values,
                                   lambda a: _iter(c, s.binder(a), persist))
    if isinstance(s, SFlat):
        return while_(land(s.flat.grd, persist), s.flat.unr(c))
    keep = land(s.grd, persist)
    return while_(land(s.producer.grd, keep),
                  s.producer.unr(lambda x: _iter(c, s.inner(x), keep)))
