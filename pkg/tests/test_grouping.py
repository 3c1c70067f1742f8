"""Nested grouping-aggregation: three chained Mealy machines."""

from __future__ import annotations

from pipec import backend_ir as ir
from pipec import stream_sugar as sg
from pipec.backend_ir import GenSession, int_
from pipec.interp import run
from pipec.pipelines import GROUP_TEXT, INT32_MIN
from pipec.stream_core import iter_


def chars(text):
    return [ord(c) for c in text] + [0]


def run_stage(mk_stream, text):
    with GenSession(1):
        body = iter_(lambda p: ir.print_int(p[0] if isinstance(p, tuple) else p),
                     mk_stream(sg.of_arr(ir.param_array(1))))
    return run(body, {"a_1": chars(text)}).output


def pairs_of(mk_stream, text):
    with GenSession(1):
        body = iter_(lambda p: ir.seq(ir.print_int(p[0]), ir.print_int(p[1])),
                     mk_stream(sg.of_arr(ir.param_array(1))))
    out = run(body, {"a_1": chars(text)}).output
    return list(zip(out[0::2], out[1::2]))


def test_parse_ints_single():
    assert pairs_of(sg.parse_ints, "42,") == [(42, ord(",")), (0, 0)]


def test_parse_ints_sequence():
    got = pairs_of(sg.parse_ints, "100,200|300")
    assert got == [(100, ord(",")), (200, ord("|")), (300, 0)]


def test_group_by_aggregate_sums_chunks():
    def stage(s):
        return sg.group_by_aggregate(
            int_(ord(",")), sg.Monoid(int_(0), lambda a, b: a + b))(sg.parse_ints(s))
    got = pairs_of(stage, GROUP_TEXT)
    assert [v for v, _d in got] == [600, 400, 1100, 2400, 1000]


def test_group_by_aggregate_immediate_separator_emits_unit():
    def stage(s):
        return sg.group_by_aggregate(
            int_(ord(",")), sg.Monoid(int_(0), lambda a, b: a + b))(sg.parse_ints(s))
    # "|" delimits an empty chunk: the monoid unit (plus the parsed 0) is emitted
    got = pairs_of(stage, "|")
    assert got == [(0, ord("|")), (0, 0)]


def test_full_composition_finds_max():
    def stage(s):
        s = sg.parse_ints(s)
        s = sg.group_by_aggregate(int_(ord(",")),
                                  sg.Monoid(int_(0), lambda a, b: a + b))(s)
        s = sg.group_by_aggregate(int_(ord("|")),
                                  sg.Monoid(int_(INT32_MIN), ir.imax))(s)
        return sg.map_raw_(lambda p: p[0], s)
    assert run_stage(stage, GROUP_TEXT) == [2400]


def test_composition_is_completely_fused():
    def stage():
        s = sg.of_arr(ir.param_array(1))
        s = sg.parse_ints(s)
        s = sg.group_by_aggregate(int_(ord(",")),
                                  sg.Monoid(int_(0), lambda a, b: a + b))(s)
        return iter_(lambda p: ir.print_int(p[0]), s)
    with GenSession(1):
        body = stage()
    ir.audit_fusion(body)
    ir.check_hygiene(body, [ir.param_array(1)])
    loops = [n for n in ir.walk(body) if isinstance(n, ir.While)]
    assert len(loops) == 1  # one pass, character by character
