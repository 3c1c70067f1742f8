"""Coinductive reference semantics: combinators, traces, linearization."""

from __future__ import annotations

from pipec.oracle_semantics import (
    DONE, EMIT, END, FUEL, SKIP, equiv_check,
    o_abstract, o_adjust, o_flat_map, o_guard, o_init, o_linearize_flat,
    o_linearize_nested, o_map_filter, o_noskip, o_unroll, o_zip, trace,
)
from pipec.pipelines import oracle_items, r_of_arr


def u_count(z):
    return (z, z + 1)


def u_bounded(z):
    """Bounded counter with a monotone termination flag (x, y, w)."""
    x, y, w = z
    if x <= y:
        return (x, (x + 1, y, w))
    return (None, (x, y, False))


def guarded_from_to(a, b):
    return o_guard(lambda z: z[2], o_unroll(u_bounded, (a, b, True)))


def kinds(s, fuel=20):
    return trace(s, fuel).kinds()


def items(s, fuel=50):
    return trace(s, fuel).items()


def test_unroll_counting():
    assert items(o_unroll(u_count, 1), fuel=4) == [1, 2, 3, 4]


def test_unroll_bounded_counter_flag():
    t = trace(o_unroll(u_bounded, (1, 3, True)), 8)
    assert t.items() == [1, 2, 3]
    # afterwards it skips forever with the flag down
    tail = t.events[3:]
    assert all(ev[0] == SKIP and ev[1][2] is False for ev in tail[:-1])


def test_unroll_constant_skip():
    t = trace(o_unroll(lambda z: (None, z), 0), 5)
    assert all(ev[0] in (SKIP, FUEL) for ev in t.events)


def test_init_keeps_items_and_tags_state():
    s = o_init(9, guarded_from_to(1, 3))
    t = trace(s, 10)
    assert t.items() == [1, 2, 3]
    states = [ev[2] if ev[0] == EMIT else ev[1]
              for ev in t.events if ev[0] in (SKIP, EMIT)]
    assert all(z[0] == 9 for z in states)


def test_init_then_abstract_is_identity():
    s = guarded_from_to(1, 3)
    v = equiv_check(o_abstract(o_init(7, s)), s, "strong")
    assert v.holds


def test_adjust_involution():
    swap = (lambda z: (z[1], z[0]), lambda z: (z[1], z[0]))
    s = o_init(1, guarded_from_to(1, 3))
    v = equiv_check(o_adjust(swap, o_adjust(swap, s)), s, "strong")
    assert v.holds


def test_guard_observes_the_post_step_state():
    # the guard kills the observation carrying state 4 (item 3), a
    # side-condition (i) violation kept as a negative illustration
    s = o_guard(lambda z: z <= 3, o_unroll(u_count, 1))
    t = trace(s, 10)
    assert t.items() == [1, 2]
    assert t.ending() == END


def test_guard_const_true_is_identity():
    s = guarded_from_to(1, 3)
    assert equiv_check(o_guard(lambda _z: True, s), s, "strong").holds


def test_guard_false_over_ended_stream_is_done_immediately():
    ended = o_unroll(lambda z: (None, z), (0, False))
    t = trace(o_guard(lambda z: z[1], ended), 5)
    assert t.events == [(END,)]


def test_map_filter_squares_preserve_skip_positions():
    s = guarded_from_to(1, 3)
    sq = o_map_filter(lambda z, a: (a * a, z), s)
    assert kinds(sq) == [k if k[0] != EMIT else (EMIT, k[1] ** 2)
                        for k in kinds(s)]


def test_map_filter_all_to_skips():
    s = guarded_from_to(1, 3)
    t = trace(o_map_filter(lambda z, a: (None, z), s), 10)
    assert t.items() == [] and t.ending() == END


def test_map_filter_accumulating_diff():
    s = o_init(0, r_of_arr([3, 5, 9]))

    def f(z, a):
        prev, rest = z
        return (a - prev, (a, rest))

    assert items(o_map_filter(f, s)) == [3, 2, 4]


def test_flat_map_prefix_interleaving():
    s = o_unroll(u_count, 1)

    def inner(z, x):
        def u(st):
            (j, fl), zz = st
            if not fl or j > 3:
                return (None, ((j, False), zz))
            return (x + j, ((j + 1, True), zz))
        return o_abstract(o_guard(lambda st: st[0][1], o_unroll(u, ((0, True), z))))

    got = items(o_flat_map(inner, s), fuel=40)[:8]
    assert got == [1, 2, 3, 4, 2, 3, 4, 5]


def test_flat_map_empty_inner_only_skips():
    s = guarded_from_to(1, 3)
    empty = lambda z, x: DONE
    t = trace(o_flat_map(empty, s), 20)
    assert t.items() == [] and t.ending() == END


def test_flat_map_singleton_inner_is_map():
    s = guarded_from_to(1, 5)

    def single(z, x):
        def u(st):
            (j, fl), zz = st
            if not fl or j >= 1:
                return (None, ((j, False), zz))
            return (x * x, ((1, True), zz))
        return o_abstract(o_guard(lambda st: st[0][1], o_unroll(u, ((0, True), z))))

    lhs = o_flat_map(single, s)
    rhs = o_map_filter(lambda z, a: (a * a, z), s)
    assert equiv_check(lhs, rhs, "weak").holds


def test_zip_lockstep():
    z = o_zip(r_of_arr([1, 2, 3]), r_of_arr([4, 5, 6]))
    assert oracle_items(z) == [(1, 4), (2, 5), (3, 6)]


def test_zip_retains_items_across_skips():
    def scripted(steps):
        def u(i):
            if i >= len(steps):
                return (None, (i, False) if False else i)
            return (steps[i], i + 1)
        return o_guard(lambda i: i <= len(steps), o_unroll(u, 0))

    s1 = scripted([1, None, 2])
    s2 = scripted([None, 9, 8])
    got = [it for it in trace(o_noskip(o_zip(s1, s2), 20), 20).items()]
    assert got == [(1, 9), (2, 8)]


def test_zip_with_ended_stream_is_ended():
    t = trace(o_zip(DONE, guarded_from_to(1, 3)), 5)
    assert t.events == [(END,)]


def test_noskip_basic_and_fuel():
    s1 = guarded_from_to(1, 2)
    t = trace(o_noskip(s1, 10), 10)
    assert t.items() == [1, 2] and t.ending() == END
    allskip = o_unroll(lambda z: (None, z), 0)
    t = trace(o_noskip(allskip, 5), 5)
    assert t.ending() == FUEL


def test_noskip_idempotent_on_traces():
    s = o_guard(lambda z: z[2],
                o_map_filter(lambda z, a: (a if a % 2 == 0 else None, z),
                             o_unroll(u_bounded, (1, 9, True))))
    one = trace(o_noskip(s, 30), 30)
    two = trace(o_noskip(o_noskip(s, 30), 30), 30)
    assert one.kinds() == two.kinds()


def test_equiv_self_and_counterexample_presence():
    s = guarded_from_to(1, 4)
    assert equiv_check(s, s, "strong").holds
    v = equiv_check(guarded_from_to(1, 4), guarded_from_to(1, 5), "strong")
    assert not v.holds and v.counterexample is not None
    tl, tr, idx = v.counterexample
    assert tl.kinds()[idx] != tr.kinds()[idx]


# -- linearization -------------------------------------------------------------

def test_linearize_flat_filtered_counter():
    def u(z):
        x, z2 = u_bounded(z)
        if x is None or x % 2 == 1:
            return (None, z2)
        return (x, z2)
    g = lambda z: z[2]
    u2, z0, g2 = o_linearize_flat(u, (1, 6, True), g, fuel=50)
    lin = o_guard(g2, o_unroll(u2, z0))
    t = trace(lin, 10)
    assert t.items() == [2, 4, 6]
    # no interior skips: skips only in the ended tail
    ks = [k[0] for k in t.kinds()]
    first_skip = ks.index(SKIP) if SKIP in ks else len(ks)
    assert EMIT not in ks[first_skip:]


def test_linearize_flat_already_linear():
    u2, z0, g = o_linearize_flat(u_bounded, (1, 3, True), lambda z: z[2])
    lhs = o_guard(g, o_unroll(u2, z0))
    rhs = guarded_from_to(1, 3)
    assert equiv_check(lhs, rhs, "weak").holds


def test_linearize_flat_dead_state_preserved():
    u = lambda z: (None, z - 1)  # skips forever: effectively dead
    u2, z0, _g = o_linearize_flat(u, 0, lambda z: z > 0, fuel=10)
    a, z = u2(0)
    assert a is None and z == -1  # the ended tail is kept, not rewound
    t = trace(o_guard(lambda z: z > 0, o_unroll(u2, 0)), 5)
    assert t.events == [(END,)]  # so the guard still ends the stream


def test_linearize_nested_matches_flat_map():
    u1 = u_bounded
    z1 = (1, 5, True)
    g1 = lambda z: z[2]

    # side-condition (i) discipline: the guard goes false only one skip past
    # the last production, so no observation carrying an item is killed
    def ui(x, z):
        def u(st):
            j, zz = st
            if j > x + 3:
                return (None, (j + 1, zz))
            return (j, (j + 1, zz))
        return u

    def zi(x, z):
        return (x, z)

    def gi(x, z):
        return lambda st: st[0] <= x + 4

    u0, z0, g0 = o_linearize_nested(u1, z1, g1, ui, zi, gi, fuel=100)
    lin = o_guard(g0, o_unroll(u0, z0))

    def inner(z, x):
        return o_abstract(o_guard(gi(x, z), o_unroll(ui(x, z), zi(x, z))))

    ref = o_flat_map(inner, o_guard(g1, o_unroll(u1, z1)))
    v = equiv_check(lin, ref, "weak", fuel=60)
    assert v.holds
    got = trace(o_noskip(lin, 60), 60).items()
    assert got[:8] == [1, 2, 3, 4, 2, 3, 4, 5]


def test_linearize_nested_empty_inner():
    u0, z0, g0 = o_linearize_nested(
        u_bounded, (1, 3, True), lambda z: z[2],
        ui=lambda x, z: lambda st: (None, (-1, st[1])),
        zi=lambda x, z: (0, z),
        gi=lambda x, z: (lambda st: st[0] >= 0),
        fuel=100)
    lin = o_guard(g0, o_unroll(u0, z0))
    t = trace(o_noskip(lin, 80), 10)
    assert t.items() == []


def test_linearize_nested_g0_is_conjunction_through_projection():
    g1 = lambda z: z[2]
    g3 = lambda z: z[0] < 3
    _u0, z0, g0 = o_linearize_nested(
        u_bounded, (1, 5, True), g1,
        ui=lambda x, z: lambda st: (None, st),
        zi=lambda x, z: (0, z),
        gi=lambda x, z: (lambda st: False),
        g3=g3)
    assert z0 == (None, (1, 5, True))
    for z in [(1, 5, True), (4, 5, True), (2, 5, False)]:
        assert g0((None, z)) == (g1(z) and g3(z))
