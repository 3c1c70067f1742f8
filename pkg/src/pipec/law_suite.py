"""Randomized bounded-bisimulation checks for the 19 stream laws.

Instances draw small integer state spaces (values in [-4,4]) from seeded
pseudo-random function tables; streams that interact with guards use the
monotone termination-flag pattern so the generated pipelines respect the
side-conditions (a guard only ever sees an effectively ended stream with a
false flag, and map/flat-map steps preserve the flag). Laws 1..17 are checked
as strong equivalence, 18..19 as weak; one deliberately broken variant per
law family is kept as a negative control.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Optional

from .oracle_semantics import (
    EquivVerdict, OStream, equiv_check, o_abstract, o_flat_map,
    o_guard, o_init, o_map_filter, o_unroll, o_zip,
)


def _mix(*xs: int) -> int:
    h = 0x9E3779B97F4A7C15
    for x in xs:
        h ^= (x & 0xFFFFFFFFFFFFFFFF) * 0xBF58476D1CE4E5B9 & 0xFFFFFFFFFFFFFFFF
        h = (h ^ (h >> 29)) * 0x94D049BB133111EB & 0xFFFFFFFFFFFFFFFF
    return h ^ (h >> 32)


def _flat(z) -> tuple:
    if isinstance(z, tuple):
        out: tuple = ()
        for c in z:
            out += _flat(c)
        return out
    if isinstance(z, bool):
        return (2 if z else 3,)
    if isinstance(z, int):
        return (z,)
    return (_mix(id(z) & 0xFFFF),)  # opaque components (closures) rarely hashed


def _sm(x: int) -> int:
    return x % 9 - 4  # small value in [-4, 4]


# ---------------------------------------------------------------------------
# Component generators

def int_unroll(salt: int, skip_rate: int = 3) -> Callable:
    """Random total unrolling over int states, skipping ~1/skip_rate."""
    def u(z):
        h = _mix(salt, *_flat(z))
        item = None if h % skip_rate == 0 else _sm(h >> 8)
        return (item, _sm(h >> 16))
    return u


def flag_unroll(salt: int, linear: bool, die_rate: int = 6) -> Callable:
    """Unrolling over (n, flag) states; flag is monotone and production
    stops exactly when it drops, so `flag` is a side-condition-respecting
    guard. linear=True never skips while alive."""
    def u(z):
        n, fl = z
        if not fl:
            return (None, (n, False))
        h = _mix(salt, n)
        alive = h % die_rate != 0
        if not alive:
            return (None, (_sm(h >> 8), False))
        skip = (not linear) and (h >> 4) % 3 == 0
        item = None if skip else _sm(h >> 12)
        return (item, (_sm(h >> 20), True))
    return u


def flag_stream(salt: int, linear: bool = False, guarded: bool = True) -> OStream:
    s = o_unroll(flag_unroll(salt, linear), (_sm(_mix(salt, 1)), True))
    return o_guard(lambda z: z[1], s) if guarded else s


def mapf(salt: int, drop_rate: int = 4) -> Callable:
    """Random accumulating map-filter over int states."""
    def f(z, a):
        h = _mix(salt, *_flat(z), *_flat(a))
        item = None if h % drop_rate == 0 else _sm(h >> 8)
        return (item, _sm(h >> 16))
    return f


def flag_mapf(salt: int, drop_rate: int = 4) -> Callable:
    """Map-filter over (n, flag) states that preserves the flag."""
    def f(z, a):
        n, fl = z
        h = _mix(salt, n, *_flat(a))
        item = None if h % drop_rate == 0 else _sm(h >> 8)
        return (item, (_sm(h >> 16), fl))
    return f


def inner_builder(salt: int, preserve_flag: bool = False) -> Callable:
    """f(z, a): a fixed-shape inner stream sharing the outer (n, flag) state;
    a private countdown is introduced and abstracted away. Ends cleanly via
    its guard. The shared state keeps its shape; with preserve_flag the flag
    component is untouched (side-condition iii), otherwise it may be killed
    monotonically."""
    def f(z, a):
        h0 = _mix(salt, *_flat(a))
        count = h0 % 4  # 0..3 items

        def u(state):
            c, zz = state
            if c <= 0:
                return (None, (-1, zz))
            h = _mix(salt, c, *_flat(zz), *_flat(a))
            n, fl = zz
            if not preserve_flag:
                fl = fl and (h >> 24) % 5 != 0
            zz2 = (_sm(h >> 16), fl)
            return (_sm(h >> 8), (c - 1, zz2))

        return o_abstract(o_guard(lambda st: st[0] >= 0,
                                  o_unroll(u, (count, z))))
    return f


# ---------------------------------------------------------------------------
# The 19 laws

def _pair_unroll(u1, u2):
    def u(z):
        z1, z2 = z
        a1, z1b = u1(z1)
        a2, z2b = u2(z2)
        item = (a1, a2) if (a1 is not None and a2 is not None) else None
        return (item, (z1b, z2b))
    return u


def _zip_linear_rhs(u1, z1, s2):
    def f(state, y):
        z1c, z2c = state
        x, z1n = u1(z1c)
        item = None if x is None else (x, y)
        return (item, (z1n, z2c))
    return o_map_filter(f, o_init(z1, s2))


def _laws() -> list:
    L = []

    def law(n, name, mode="strong"):
        def reg(fn):
            L.append((n, name, mode, fn))
            return fn
        return reg

    @law(1, "unroll-init")
    def law1(rs):
        u = int_unroll(rs())
        z1, z = _sm(rs()), _sm(rs())
        lhs = o_init(z, o_unroll(u, z1))

        def u2(zz):
            a, z1b = u(zz[1])
            return (a, (zz[0], z1b))
        return lhs, o_unroll(u2, (z, z1))

    @law(2, "guard-init")
    def law2(rs):
        s, salt = flag_stream(rs(), guarded=False), rs()
        g = lambda z: z[1]
        z = _sm(salt)
        lhs = o_init(z, o_guard(g, s))
        rhs = o_guard(lambda zz: g(zz[1]), o_init(z, s))
        return lhs, rhs

    @law(3, "map_filter-init")
    def law3(rs):
        s, f, z = flag_stream(rs()), flag_mapf(rs()), _sm(rs())
        lhs = o_init(z, o_map_filter(f, s))

        def f2(zz, a):
            b, z1b = f(zz[1], a)
            return (b, (zz[0], z1b))
        return lhs, o_map_filter(f2, o_init(z, s))

    @law(4, "flat_map-init")
    def law4(rs):
        s, f, z = flag_stream(rs()), inner_builder(rs()), _sm(rs())
        lhs = o_init(z, o_flat_map(f, s))
        rhs = o_flat_map(lambda zz, a: o_init(zz[0], f(zz[1], a)),
                         o_init(z, s))
        return lhs, rhs

    @law(5, "zip-init")
    def law5(rs):
        s1, s2, z = flag_stream(rs()), flag_stream(rs()), _sm(rs())
        return o_zip(o_init(z, s1), s2), o_init(z, o_zip(s1, s2))

    @law(6, "zip-abstract")
    def law6(rs):
        s1 = o_init(_sm(rs()), flag_stream(rs()))
        s2 = flag_stream(rs())
        return o_zip(o_abstract(s1), s2), o_abstract_left(o_zip(s1, s2))

    @law(7, "init-abstract")
    def law7(rs):
        s, z = flag_stream(rs()), _sm(rs())
        return o_abstract(o_init(z, s)), s

    @law(8, "abstract-init")
    def law8(rs):
        sp = o_init(_sm(rs()), flag_stream(rs()))
        z = _sm(rs())
        lhs = o_init(z, o_abstract(sp))
        rhs = o_abstract_mid(o_init(z, sp))
        return lhs, rhs

    @law(9, "abstract-guard")
    def law9(rs):
        sp = o_init(_sm(rs()), flag_stream(rs(), guarded=False))
        g = lambda z1: z1[1]
        lhs = o_guard(g, o_abstract(sp))
        rhs = o_abstract(o_guard(lambda zz: g(zz[1]), sp))
        return lhs, rhs

    @law(10, "abstract-map_filter")
    def law10(rs):
        sp = o_init(_sm(rs()), flag_stream(rs()))
        f = flag_mapf(rs())
        lhs = o_map_filter(f, o_abstract(sp))

        def f2(zz, a):
            b, z1b = f(zz[1], a)
            return (b, (zz[0], z1b))
        return lhs, o_abstract(o_map_filter(f2, sp))

    @law(11, "unroll-map_filter")
    def law11(rs):
        u, f, z = int_unroll(rs()), mapf(rs()), _sm(rs())
        lhs = o_map_filter(f, o_unroll(u, z))

        def u2(zz):
            a, z2 = u(zz)
            if a is None:
                return (None, z2)
            return f(z2, a)
        return lhs, o_unroll(u2, z)

    @law(12, "guard-guard")
    def law12(rs):
        s = flag_stream(rs(), guarded=False)
        t1, t2 = rs(), rs()
        g1 = lambda z: z[1] or _mix(t1, z[0]) % 3 == 0
        g2 = lambda z: z[1] or _mix(t2, z[0]) % 3 == 0
        lhs = o_guard(g2, o_guard(g1, s))
        rhs = o_guard(lambda z: g1(z) and g2(z), s)
        return lhs, rhs

    @law(13, "guard-map_filter", "strong")
    def law13(rs):
        s = flag_stream(rs(), guarded=False)
        f = flag_mapf(rs())
        g = lambda z: z[1]
        lhs = o_map_filter(f, o_guard(g, s))
        rhs = o_guard(g, o_map_filter(f, s))
        return lhs, rhs

    @law(14, "guard-flat_map", "strong")
    def law14(rs):
        s = flag_stream(rs(), guarded=False)
        f = inner_builder(rs(), preserve_flag=True)
        g = lambda z: z[1]
        lhs = o_flat_map(f, o_guard(g, s))
        rhs = o_guard(g, o_flat_map(f, s))
        return lhs, rhs

    @law(15, "flat_map-map_filter")
    def law15(rs):
        s, f1, f2 = flag_stream(rs()), inner_builder(rs()), flag_mapf(rs())
        lhs = o_map_filter(f2, o_flat_map(f1, s))
        rhs = o_flat_map(lambda z, a: o_map_filter(f2, f1(z, a)), s)
        return lhs, rhs

    @law(16, "flat_map-flat_map")
    def law16(rs):
        s, f1, f2 = flag_stream(rs()), inner_builder(rs()), inner_builder(rs())
        lhs = o_flat_map(f2, o_flat_map(f1, s))
        rhs = o_flat_map(lambda z, a: o_flat_map(f2, f1(z, a)), s)
        return lhs, rhs

    @law(17, "zip-guard")
    def law17(rs):
        s1 = flag_stream(rs(), guarded=False)
        s2 = flag_stream(rs())
        g = lambda z: z[1]
        lhs = o_zip(o_guard(g, s1), s2)
        rhs = o_guard(lambda z12: g(z12[0]), o_zip(s1, s2))
        return lhs, rhs

    @law(18, "zip-bothlinear", "weak")
    def law18(rs):
        u1 = flag_unroll(rs(), linear=True)
        u2 = flag_unroll(rs(), linear=True)
        z1 = (_sm(rs()), True)
        z2 = (_sm(rs()), True)
        lhs = o_zip(o_unroll(u1, z1), o_unroll(u2, z2))
        rhs = o_unroll(_pair_unroll(u1, u2), (z1, z2))
        return lhs, rhs

    @law(19, "zip-linear", "weak")
    def law19(rs):
        u1 = flag_unroll(rs(), linear=True)
        z1 = (_sm(rs()), True)
        s2 = flag_stream(rs())
        lhs = o_zip(o_unroll(u1, z1), s2)
        rhs = _zip_linear_rhs(u1, z1, s2)
        return lhs, rhs

    return L


def o_abstract_left(s: OStream) -> OStream:
    """Hide the leading component of the LEFT member of a pair state,
    i.e. the ((z, z1), z2) ~ (z, (z1, z2)) isomorphism then abstract."""
    from .oracle_semantics import o_adjust
    iso = (lambda st: (st[0][0], (st[0][1], st[1])),
           lambda st: ((st[0], st[1][0]), st[1][1]))
    return o_abstract(o_adjust(iso, s))


def o_abstract_mid(s: OStream) -> OStream:
    """(z', (z, z1)) ~ (z, (z', z1)) isomorphism then abstract."""
    from .oracle_semantics import o_adjust
    iso = (lambda st: (st[1][0], (st[0], st[1][1])),
           lambda st: (st[1][0], (st[0], st[1][1])))
    return o_abstract(o_adjust(iso, s))


# ---------------------------------------------------------------------------
# Negative controls (one broken variant per law family)

def _negatives() -> list:
    N = []

    def law(name, mode="strong"):
        def reg(fn):
            N.append((name, mode, fn))
            return fn
        return reg

    @law("init family: guard reads the wrong component")
    def neg_init(rs):
        s = flag_stream(rs(), guarded=False)
        g = lambda z: z[1]
        z = _sm(rs())
        lhs = o_init(z, o_guard(g, s))
        rhs = o_guard(lambda zz: zz[1][0] >= 0, o_init(z, s))
        return lhs, rhs

    @law("abstract family: abstract drops the wrong component")
    def neg_abs(rs):
        s = flag_stream(rs())
        z = _sm(rs())
        return o_abstract(o_init(z, s)), o_map_filter(
            lambda zz, a: (None if a == 0 else a, zz), s)

    @law("unroll-map family: state update dropped")
    def neg_unroll_map(rs):
        u, f, z = int_unroll(rs()), mapf(rs()), _sm(rs())
        lhs = o_map_filter(f, o_unroll(u, z))

        def u2(zz):
            a, z2 = u(zz)
            if a is None:
                return (None, z2)
            b, _ = f(z2, a)
            return (b, z2)  # stale state
        return lhs, o_unroll(u2, z)

    @law("guard family: conjunction replaced by disjunction")
    def neg_guard(rs):
        s = flag_stream(rs(), guarded=False)
        t1, t2 = rs(), rs()
        g1 = lambda z: z[1] or _mix(t1, z[0]) % 3 == 0
        g2 = lambda z: z[1] or _mix(t2, z[0]) % 3 == 0
        lhs = o_guard(g2, o_guard(g1, s))
        rhs = o_guard(lambda z: g1(z) or g2(z), s)
        return lhs, rhs

    @law("side-condition family: map_filter flips the termination flag")
    def neg_sidecond(rs):
        s = flag_stream(rs(), guarded=False)
        salt = rs()

        def f(z, a):  # violates side-condition (ii)
            n, fl = z
            h = _mix(salt, n, a)
            return (_sm(h >> 8), (_sm(h >> 16), h % 2 == 0))
        g = lambda z: z[1]
        lhs = o_map_filter(f, o_guard(g, s))
        rhs = o_guard(g, o_map_filter(f, s))
        return lhs, rhs

    @law("flat_map family: transformer applied twice on one side")
    def neg_flatmap(rs):
        s, f1, f2 = flag_stream(rs()), inner_builder(rs()), flag_mapf(rs())
        lhs = o_map_filter(f2, o_flat_map(f1, s))
        rhs = o_flat_map(
            lambda z, a: o_map_filter(f2, o_map_filter(f2, f1(z, a))), s)
        return lhs, rhs

    @law("zip family: guard moved to the wrong side")
    def neg_zip(rs):
        s1 = flag_stream(rs(), guarded=False)
        s2 = flag_stream(rs(), guarded=False)
        g = lambda z: z[1]
        lhs = o_zip(o_guard(g, s1), s2)
        rhs = o_guard(lambda z12: g(z12[1]), o_zip(s1, s2))
        return lhs, rhs

    @law("linearity family: zip-bothlinear with interior skips", "weak")
    def neg_linear(rs):
        u1 = flag_unroll(rs(), linear=False)
        u2 = flag_unroll(rs(), linear=True)
        z1, z2 = (_sm(rs()), True), (_sm(rs()), True)
        lhs = o_zip(o_unroll(u1, z1), o_unroll(u2, z2))
        rhs = o_unroll(_pair_unroll(u1, u2), (z1, z2))
        return lhs, rhs

    return N


# ---------------------------------------------------------------------------
# Suite driver

@dataclass
class LawReport:
    law: int
    name: str
    mode: str
    instances: int
    failures: int
    first_counterexample: Optional[dict] = None

    @property
    def passed(self) -> bool:
        return self.failures == 0


def _cx_dict(v: EquivVerdict) -> Optional[dict]:
    if v.counterexample is None:
        return None
    tl, tr, i = v.counterexample
    return {"index": i,
            "lhs": [str(e) for e in tl.events],
            "rhs": [str(e) for e in tr.events]}


def _run_one(fn, law_seed: int, instances: int, mode: str, fuel: int) -> tuple:
    failures = 0
    first = None
    for i in range(instances):
        base = random.Random((law_seed << 20) ^ i)
        salts = iter(base.randrange(1 << 30) for _ in range(64))
        v = equiv_check(*fn(lambda: next(salts)), mode=mode, fuel=fuel)
        if not v.holds:
            failures += 1
            if first is None:
                first = _cx_dict(v)
                first["instance"] = i
    return failures, first


def run_law_suite(fuel: int = 50, instances: int = 100, seed: int = 2024) -> list[LawReport]:
    out = []
    for n, name, mode, fn in _laws():
        failures, first = _run_one(fn, seed * 37 + n, instances, mode, fuel)
        out.append(LawReport(n, name, mode, instances, failures, first))
    return out


def run_negative_controls(fuel: int = 50, instances: int = 100,
                          seed: int = 2024) -> list[LawReport]:
    """Each broken variant must be detected (≥1 counterexample found)."""
    out = []
    for k, (name, mode, fn) in enumerate(_negatives()):
        failures, first = _run_one(fn, seed * 53 + k, instances, mode, fuel)
        out.append(LawReport(-1 - k, name, mode, instances, failures, first))
    return out
