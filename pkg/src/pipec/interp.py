"""Reference interpreter for the target-language AST.

Big-step over a mutable environment keyed by (hygienic, hence unique) binder
names. Integer arithmetic follows C: int64 two's-complement wrap-around and
truncating mod. Array reads are bounds-checked and uninitialized reads fault;
the emitted C stays unchecked by design.
"""

from __future__ import annotations

from dataclasses import dataclass

from .backend_ir import (
    ArrGet, Assign, Bin, CastF64, CondE, Decr, Deref, Exp, If, Incr,
    Let, Lit, NewArr, NewRef, NewUArr, Not, Print, Ret, Seq, Stm, StaticArr,
    SUnit, VarRead, While, ArrSet,
)

_MIN = -(2 ** 63)
_MAX = 2 ** 63 - 1
_UNINIT = object()


class InterpError(Exception):
    pass


class BudgetExceeded(InterpError):
    pass


class _Return(Exception):
    def __init__(self, value):
        self.value = value


@dataclass
class RunResult:
    value: object
    output: list


def _wrap(n: int) -> int:
    if _MIN <= n <= _MAX:
        return n
    return ((n - _MIN) & 0xFFFFFFFFFFFFFFFF) + _MIN


def _cmod(a: int, b: int) -> int:
    if b == 0:
        raise InterpError("mod by zero")
    r = abs(a) % abs(b)
    return -r if a < 0 else r


class _Budget:
    __slots__ = ("left",)

    def __init__(self, steps):
        self.left = steps


def compile_exp(e: Exp):
    """Compile an expression to a closure over the environment dict."""
    if isinstance(e, Lit):
        v = e.value
        return lambda env: v
    if isinstance(e, VarRead):
        name = e.name
        def read(env, name=name):
            v = env[name]
            if v is _UNINIT:
                raise InterpError(f"read of uninitialized {name}")
            return v
        return read
    if isinstance(e, Deref):
        name = e.var.name
        return lambda env: env[name]
    if isinstance(e, Bin):
        lf, rf = compile_exp(e.lhs), compile_exp(e.rhs)
        op = e.op
        if op == "+":
            return lambda env: _wrap(lf(env) + rf(env))
        if op == "-":
            return lambda env: _wrap(lf(env) - rf(env))
        if op == "*":
            return lambda env: _wrap(lf(env) * rf(env))
        if op == "%":
            return lambda env: _cmod(lf(env), rf(env))
        if op == "&":
            return lambda env: _wrap(lf(env) & rf(env))
        if op == "==":
            return lambda env: lf(env) == rf(env)
        if op == "!=":
            return lambda env: lf(env) != rf(env)
        if op == "<":
            return lambda env: lf(env) < rf(env)
        if op == "<=":
            return lambda env: lf(env) <= rf(env)
        if op == ">":
            return lambda env: lf(env) > rf(env)
        if op == ">=":
            return lambda env: lf(env) >= rf(env)
        if op == "&&":  # short-circuit
            return lambda env: lf(env) and rf(env)
        if op == "||":
            return lambda env: lf(env) or rf(env)
        if op == "+.":
            return lambda env: lf(env) + rf(env)
        if op == "-.":
            return lambda env: lf(env) - rf(env)
        if op == "*.":
            return lambda env: lf(env) * rf(env)
        if op == "/.":
            return lambda env: lf(env) / rf(env)
        raise AssertionError(f"unknown operator {op}")
    if isinstance(e, Not):
        f = compile_exp(e.e)
        return lambda env: not f(env)
    if isinstance(e, CondE):
        cf, tf, ef = compile_exp(e.c), compile_exp(e.t), compile_exp(e.e)
        return lambda env: tf(env) if cf(env) else ef(env)
    if isinstance(e, ArrGet):
        name = e.arr.name
        ixf = compile_exp(e.idx)
        def get(env, name=name, ixf=ixf):
            arr = env[name]
            i = ixf(env)
            if i < 0 or i >= len(arr):
                raise InterpError(f"{name}[{i}] out of bounds (len {len(arr)})")
            v = arr[i]
            if v is _UNINIT:
                raise InterpError(f"read of uninitialized {name}[{i}]")
            return v
        return get
    if isinstance(e, CastF64):
        f = compile_exp(e.e)
        return lambda env: float(f(env))
    raise AssertionError(f"unknown expression {e!r}")


def compile_stm(s: Stm, out: list, budget: _Budget):
    if isinstance(s, SUnit):
        return lambda env: None
    if isinstance(s, Seq):
        ff, sf = compile_stm(s.first, out, budget), compile_stm(s.second, out, budget)
        def run_seq(env):
            ff(env)
            sf(env)
        return run_seq
    if isinstance(s, Let):
        rf = compile_exp(s.rhs)
        bf = compile_stm(s.body, out, budget)
        name = s.name
        def run_let(env):
            env[name] = rf(env)
            bf(env)
        return run_let
    if isinstance(s, NewRef):
        inf = compile_exp(s.init)
        bf = compile_stm(s.body, out, budget)
        name = s.var.name
        def run_newref(env):
            env[name] = inf(env)
            bf(env)
        return run_newref
    if isinstance(s, Assign):
        ef = compile_exp(s.e)
        name = s.var.name
        def run_assign(env):
            env[name] = ef(env)
        return run_assign
    if isinstance(s, Incr):
        name = s.var.name
        def run_incr(env):
            env[name] = _wrap(env[name] + 1)
        return run_incr
    if isinstance(s, Decr):
        name = s.var.name
        def run_decr(env):
            env[name] = _wrap(env[name] - 1)
        return run_decr
    if isinstance(s, If):
        cf = compile_exp(s.c)
        tf = compile_stm(s.then, out, budget)
        ef = compile_stm(s.els, out, budget) if s.els is not None else None
        if ef is None:
            def run_if1(env):
                if cf(env):
                    tf(env)
            return run_if1
        def run_if(env):
            if cf(env):
                tf(env)
            else:
                ef(env)
        return run_if
    if isinstance(s, While):
        cf = compile_exp(s.c)
        bf = compile_stm(s.body, out, budget)
        def run_while(env):
            while cf(env):
                budget.left -= 1
                if budget.left < 0:
                    raise BudgetExceeded("interpreter step budget exceeded")
                bf(env)
        return run_while
    if isinstance(s, ArrSet):
        ixf, ef = compile_exp(s.idx), compile_exp(s.e)
        name = s.arr.name
        def run_set(env):
            arr = env[name]
            i = ixf(env)
            if i < 0 or i >= len(arr):
                raise InterpError(f"{name}[{i}] out of bounds (len {len(arr)})")
            arr[i] = ef(env)
        return run_set
    if isinstance(s, NewArr):
        efs = [compile_exp(e) for e in s.elems]
        bf = compile_stm(s.body, out, budget)
        name = s.arr.name
        def run_newarr(env):
            env[name] = [f(env) for f in efs]
            bf(env)
        return run_newarr
    if isinstance(s, NewUArr):
        bf = compile_stm(s.body, out, budget)
        name, size = s.arr.name, s.size
        def run_newuarr(env):
            env[name] = [_UNINIT] * size
            bf(env)
        return run_newuarr
    if isinstance(s, StaticArr):
        bf = compile_stm(s.body, out, budget)
        name, values = s.arr.name, list(s.values)
        def run_static(env):
            env[name] = values
            bf(env)
        return run_static
    if isinstance(s, Print):
        ef = compile_exp(s.e)
        def run_print(env):
            out.append(ef(env))
        return run_print
    if isinstance(s, Ret):
        ef = compile_exp(s.e)
        def run_ret(env):
            raise _Return(ef(env))
        return run_ret
    raise AssertionError(f"unknown statement {s!r}")


def run(body: Stm, arrays: dict[str, list] | None = None,
        budget: int | None = None) -> RunResult:
    """Interpret a closed body; `arrays` binds parameter arrays by name.

    For each parameter array a_k its length n_k is bound automatically.
    """
    out: list = []
    b = _Budget(budget if budget is not None else float("inf"))
    prog = compile_stm(body, out, b)
    env: dict = {}
    for name, xs in (arrays or {}).items():
        env[name] = list(xs)
        if name.startswith("a_"):
            env["n_" + name[2:]] = len(xs)
    try:
        prog(env)
    except _Return as r:
        return RunResult(r.value, out)
    return RunResult(None, out)
