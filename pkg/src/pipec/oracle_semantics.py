"""Executable coinductive skip-stream semantics over host values.

A stream is observed as either finished, or as a step carrying an optional
item, the current state, and a resume function that must only ever receive
the state from that same step. Each combinator below is defined directly by
what one observation yields; finite observation happens through fuel-bounded
traces, and equivalence checking compares item/skip traces (states are not
observed, since the laws hold only modulo state isomorphism).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

StateVal = object
Item = object


class FuelExhausted(Exception):
    """A fuel-bounded probe (noskip or linearization) ran out of fuel."""


@dataclass
class Step:
    item: Optional[Item]
    state: StateVal
    resume: Callable[[StateVal], "OStream"]


class OStream:
    """Demand-driven stream; observe() yields None (Done) or a Step."""

    __slots__ = ("_obs",)

    def __init__(self, obs: Callable[[], Optional[Step]]):
        self._obs = obs

    def observe(self) -> Optional[Step]:
        return self._obs()


DONE = OStream(lambda: None)


def _const(s: OStream) -> Callable[[StateVal], OStream]:
    return lambda _z: s


# ---------------------------------------------------------------------------
# Core combinators

def o_unroll(f: Callable[[StateVal], tuple], z0: StateVal) -> OStream:
    """Infinite (possibly all-skip) stream stepping f; never Done."""
    def obs() -> Step:
        a, z2 = f(z0)
        return Step(a, z2, lambda z: o_unroll(f, z))
    return OStream(obs)


def o_init(z: StateVal, s: OStream) -> OStream:
    """Extend the state with a leading component; items unchanged."""
    def obs() -> Optional[Step]:
        o = s.observe()
        if o is None:
            return None
        return Step(o.item, (z, o.state),
                    lambda zz: o_init(zz[0], o.resume(zz[1])))
    return OStream(obs)


def o_abstract(s: OStream) -> OStream:
    """Hide the leading state component."""
    def obs() -> Optional[Step]:
        o = s.observe()
        if o is None:
            return None
        hidden, z1 = o.state
        return Step(o.item, z1,
                    lambda z: o_abstract(o.resume((hidden, z))))
    return OStream(obs)


def o_adjust(iso: tuple, s: OStream) -> OStream:
    """Apply a state bijection (fwd, back); caller guarantees bijectivity."""
    fwd, back = iso

    def obs() -> Optional[Step]:
        o = s.observe()
        if o is None:
            return None
        return Step(o.item, fwd(o.state),
                    lambda z: o_adjust(iso, o.resume(back(z))))
    return OStream(obs)


def o_guard(p: Callable[[StateVal], bool], s: OStream) -> OStream:
    """End the stream once p(state) is false. Per the side-conditions, a
    guard may terminate only an effectively ended stream."""
    def obs() -> Optional[Step]:
        o = s.observe()
        if o is None:
            return None
        if not p(o.state):
            return None
        return Step(o.item, o.state, lambda z: o_guard(p, o.resume(z)))
    return OStream(obs)


def o_map_filter(f: Callable[[StateVal, Item], tuple], s: OStream) -> OStream:
    """Accumulating map-filter; skips pass through with the state untouched."""
    def obs() -> Optional[Step]:
        o = s.observe()
        if o is None:
            return None
        if o.item is None:
            return Step(None, o.state,
                        lambda z: o_map_filter(f, o.resume(z)))
        b, z2 = f(o.state, o.item)
        return Step(b, z2, lambda z: o_map_filter(f, o.resume(z)))
    return OStream(obs)


def o_flat_map(f: Callable[[StateVal, Item], OStream], s: OStream) -> OStream:
    """Nesting; inner streams share the outer state type and must have a
    statically fixed shape."""
    def obs() -> Optional[Step]:
        o = s.observe()
        if o is None:
            return None
        if o.item is None:
            return Step(None, o.state,
                        lambda z: o_flat_map(f, o.resume(z)))
        return _fm_inner(f, f(o.state, o.item), o.state, o.resume).observe()
    return OStream(obs)


def _fm_inner(f, si: OStream, zc: StateVal, t_out) -> OStream:
    def obs() -> Step:
        oi = si.observe()
        if oi is None:  # inner finished: skip, resume in outer mode
            return Step(None, zc, lambda z: o_flat_map(f, t_out(z)))
        return Step(oi.item, oi.state,
                    lambda z: _fm_inner(f, oi.resume(z), z, t_out))
    return OStream(obs)


def o_zip(s1: OStream, s2: OStream) -> OStream:
    """Pair items in order. When one side produces while the other skips, the
    step is a skip and the produced item is retained by re-wrapping that side
    so the next observation sees it again."""
    def obs() -> Optional[Step]:
        o1 = s1.observe()
        if o1 is None:
            return None
        o2 = s2.observe()
        if o2 is None:
            return None
        z12 = (o1.state, o2.state)

        def resume(next1, next2):
            return lambda z: o_zip(next1(z[0]), next2(z[1]))

        if o1.item is None and o2.item is None:
            return Step(None, z12, resume(o1.resume, o2.resume))
        if o1.item is not None and o2.item is None:
            retained = OStream(lambda: o1)
            return Step(None, z12, resume(_const(retained), o2.resume))
        if o1.item is None and o2.item is not None:
            retained = OStream(lambda: o2)
            return Step(None, z12, resume(o1.resume, _const(retained)))
        return Step((o1.item, o2.item), z12, resume(o1.resume, o2.resume))
    return OStream(obs)


def o_noskip(s: OStream, fuel: int) -> OStream:
    """Erase skips of non-ended streams; a Done tail within fuel ends the
    result, a skip run longer than fuel raises FuelExhausted."""
    def obs() -> Optional[Step]:
        cur = s
        for _ in range(fuel):
            o = cur.observe()
            if o is None:
                return None
            if o.item is not None:
                return Step(o.item, o.state,
                            lambda z: o_noskip(o.resume(z), fuel))
            cur = o.resume(o.state)
        raise FuelExhausted(f"skip run exceeded fuel {fuel}")
    return OStream(obs)


# ---------------------------------------------------------------------------
# Finite observation

SKIP = "skip"
EMIT = "emit"
END = "end"
FUEL = "fuel"


@dataclass
class Trace:
    events: list  # (SKIP, state) | (EMIT, item, state) | (END,) | (FUEL,)

    def kinds(self) -> list:
        out = []
        for ev in self.events:
            if ev[0] == EMIT:
                out.append((EMIT, ev[1]))
            else:
                out.append((ev[0],))
        return out

    def items(self) -> list:
        return [ev[1] for ev in self.events if ev[0] == EMIT]

    def ending(self) -> Optional[str]:
        if self.events and self.events[-1][0] in (END, FUEL):
            return self.events[-1][0]
        return None


def trace(s: OStream, fuel: int) -> Trace:
    events: list = []
    cur = s
    for _ in range(fuel):
        try:
            o = cur.observe()
        except FuelExhausted:
            events.append((FUEL,))
            return Trace(events)
        if o is None:
            events.append((END,))
            return Trace(events)
        if o.item is None:
            events.append((SKIP, o.state))
        else:
            events.append((EMIT, o.item, o.state))
        cur = o.resume(o.state)
    events.append((FUEL,))
    return Trace(events)


@dataclass
class EquivVerdict:
    holds: bool
    counterexample: Optional[tuple] = None  # (lhs Trace, rhs Trace, index)


def _compare(tl: Trace, tr: Trace) -> EquivVerdict:
    kl, kr = tl.kinds(), tr.kinds()
    n = min(len(kl), len(kr))
    for i in range(n):
        if kl[i] != kr[i]:
            return EquivVerdict(False, (tl, tr, i))
    if len(kl) != len(kr):
        return EquivVerdict(False, (tl, tr, n))
    return EquivVerdict(True)


def _provably_ended_after(s: OStream, n_emits: int, budget: int) -> bool:
    """Walk the raw stream past n_emits productions, then look for a proof
    that it never produces again: a Done observation, or a repeated state
    with no production in between (step functions are deterministic)."""
    cur = s
    emitted = 0
    seen: set = set()
    for _ in range(budget):
        o = cur.observe()
        if o is None:
            return emitted >= n_emits
        if o.item is not None:
            if emitted >= n_emits:
                return False
            emitted += 1
            seen.clear()
        else:
            try:
                if o.state in seen:
                    return emitted >= n_emits
                seen.add(o.state)
            except TypeError:
                pass
        cur = o.resume(o.state)
    return False  # inconclusive: stay strict


def equiv_check(lhs: OStream, rhs: OStream, mode: str = "strong",
                fuel: int = 50) -> EquivVerdict:
    """Bounded bisimulation on item/skip traces. strong compares the full
    skip/emit pattern; weak compares noskip traces. FuelExhausted on both
    sides at the same point counts as agreement so far; an End against a
    FuelExhausted counts as agreement only when the exhausted side provably
    never produces again (ended streams are weakly equivalent to Done)."""
    if mode == "strong":
        return _compare(trace(lhs, fuel), trace(rhs, fuel))
    if mode != "weak":
        raise ValueError(f"unknown mode {mode!r}")
    tl = trace(o_noskip(lhs, fuel), fuel)
    tr = trace(o_noskip(rhs, fuel), fuel)
    v = _compare(tl, tr)
    if v.holds:
        return v
    _tl, _tr, i = v.counterexample
    kl, kr = tl.kinds(), tr.kinds()
    if i < len(kl) and i < len(kr):
        ends = {kl[i][0], kr[i][0]}
        if ends == {END, FUEL}:  # i productions happened on both sides
            fueled = lhs if kl[i][0] == FUEL else rhs
            if _provably_ended_after(fueled, i, fuel * fuel):
                return EquivVerdict(True)
    return v


# ---------------------------------------------------------------------------
# Linearization (the fix-point construction, fuel-bounded)

def _no_production_within(u: Callable, z: StateVal, fuel: int) -> bool:
    """Fuel-bounded stand-in for the undecidable membership in the largest
    all-skip set: a cycle without production, or fuel running out without
    one, counts as effectively dead."""
    cur = z
    seen = set()
    for _ in range(fuel):
        try:
            if cur in seen:
                return True
            seen.add(cur)
        except TypeError:
            pass
        a, cur = u(cur)
        if a is not None:
            return False
    return True


def o_linearize_flat(u: Callable, z0: StateVal, g: Callable,
                     fuel: int = 50) -> tuple:
    """Convert a guarded unrolling to a linear one: chase skips until a
    production; a dead state is returned as-is (preserving the effectively
    ended tail so the guard can fire); a guard failure on a live state
    freezes at the entry state. A chase longer than fuel raises
    FuelExhausted."""
    def u2(z):
        cur = z
        for _ in range(fuel):
            a, nxt = u(cur)
            if a is not None:
                return (a, nxt)
            if _no_production_within(u, nxt, fuel):
                return (None, nxt)
            if not g(nxt):
                return (None, z)
            cur = nxt
        raise FuelExhausted(f"linearization probe exceeded fuel {fuel}")
    return (u2, z0, g)


def o_linearize_nested(u1: Callable, z1: StateVal, g1: Callable,
                       ui: Callable, zi: Callable, gi: Callable,
                       g3: Callable = lambda z: True,
                       fuel: int = 50) -> tuple:
    """Linearize  unroll u1 z1 |> guard g1 |> flat_map f |> guard g3  where
    f z x = unroll (ui x z) (zi x z) |> guard (gi x z) |> abstract, the inner
    unrolling linear, inner state a (private, shared) pair.

    Returns (u0, z0, g0) with z0 = (None, z1) and g0 the shared-state
    conjunction of g1 and g3.
    """
    def u0(state):
        cfg, z = state
        for _ in range(fuel):
            if cfg is None:
                x, z = u1(z)
                if x is None:
                    if _no_production_within(u1, z, fuel):
                        return (None, (None, z))  # preserved ended tail
                    continue  # chase outer skips
                if not g1(z):
                    return (None, (None, z))  # guard dead; g0 ends the stream
                u_, g_, zp = ui(x, z), gi(x, z), zi(x, z)[0]
                z = zi(x, z)[1]
                cfg = (u_, g_, zp)
            else:
                u_, g_, zp = cfg
                y, (zp2, z2) = u_((zp, z))
                if y is None:
                    if g_((zp2, z2)):
                        cfg, z = (u_, g_, zp2), z2
                    else:
                        cfg, z = None, z2
                    continue
                return (y, ((u_, g_, zp2), z2))
        raise FuelExhausted(f"nested linearization exceeded fuel {fuel}")

    def g0(state):
        _cfg, z = state
        return g1(z) and g3(z)

    return (u0, (None, z1), g0)
