"""First-order imperative target language: typed builders, AST, C printer.

The AST deliberately has no abstraction, application, tuple or record nodes;
all higher-order structure lives in the host language and disappears before
code is built. Mutable cells and arrays are not expressions: reads go through
explicit `dref` / `array_get` nodes. Every binder name is drawn from a
GenSession counter, so equal (seed, build program) pairs yield byte-identical
output.
"""

from __future__ import annotations

import enum
import threading
from dataclasses import dataclass
from typing import Callable, Iterator, Optional


class TypeRep(enum.Enum):
    BOOL = "bool"
    INT64 = "int64"
    F64 = "float64"
    UNIT = "unit"


BOOL = TypeRep.BOOL
INT64 = TypeRep.INT64
F64 = TypeRep.F64
UNIT = TypeRep.UNIT


class BuildError(Exception):
    """Construction-time fault: operand types do not fit the operator."""


# ---------------------------------------------------------------------------
# Variables

@dataclass(eq=False)
class MutVar:
    """A mutable cell. Not an expression; read with dref(v)."""
    name: str
    ty: TypeRep
    wide: bool = False  # emit as int64_t (fold accumulators, per the C format)


@dataclass(eq=False)
class ArrVar:
    """An array handle. Not an expression; length is an int expression."""
    name: str
    elem_ty: TypeRep
    length: "Exp"


# ---------------------------------------------------------------------------
# Expressions (pure)

class Exp:
    ty: TypeRep

    def __add__(self, other: "Exp") -> "Exp":
        return _arith("+", self, other)

    def __sub__(self, other: "Exp") -> "Exp":
        return _arith("-", self, other)

    def __mul__(self, other: "Exp") -> "Exp":
        return _arith("*", self, other)

    def __mod__(self, other: "Exp") -> "Exp":
        return _arith("%", self, other)


@dataclass(eq=False)
class Lit(Exp):
    value: object
    ty: TypeRep


@dataclass(eq=False)
class VarRead(Exp):
    """Occurrence of a let-bound immutable name or scalar parameter."""
    name: str
    ty: TypeRep


@dataclass(eq=False)
class Deref(Exp):
    var: MutVar

    @property
    def ty(self) -> TypeRep:  # type: ignore[override]
        return self.var.ty


@dataclass(eq=False)
class Bin(Exp):
    op: str  # + - * % & == != < <= > >= && || +. -. *. /.
    lhs: Exp
    rhs: Exp
    ty: TypeRep


@dataclass(eq=False)
class Not(Exp):
    e: Exp
    ty: TypeRep = BOOL


@dataclass(eq=False)
class CondE(Exp):
    c: Exp
    t: Exp
    e: Exp
    ty: TypeRep


@dataclass(eq=False)
class ArrGet(Exp):
    """Unchecked expression read a[i]; the interpreter checks bounds."""
    arr: ArrVar
    idx: Exp

    @property
    def ty(self) -> TypeRep:  # type: ignore[override]
        return self.arr.elem_ty


@dataclass(eq=False)
class CastF64(Exp):
    e: Exp
    ty: TypeRep = F64


# ---------------------------------------------------------------------------
# Statements

class Stm:
    pass


@dataclass(eq=False)
class SUnit(Stm):
    pass


@dataclass(eq=False)
class Seq(Stm):
    first: Stm
    second: Stm


@dataclass(eq=False)
class Let(Stm):
    """Immutable binding of an evaluated expression; body sees a VarRead."""
    name: str
    ty: TypeRep
    rhs: Exp
    body: Stm


@dataclass(eq=False)
class NewRef(Stm):
    var: MutVar
    init: Exp
    body: Stm


@dataclass(eq=False)
class Assign(Stm):
    var: MutVar
    e: Exp


@dataclass(eq=False)
class Incr(Stm):
    var: MutVar


@dataclass(eq=False)
class Decr(Stm):
    var: MutVar


@dataclass(eq=False)
class If(Stm):
    c: Exp
    then: Stm
    els: Optional[Stm]


@dataclass(eq=False)
class While(Stm):
    c: Exp
    body: Stm


@dataclass(eq=False)
class ArrSet(Stm):
    arr: ArrVar
    idx: Exp
    e: Exp


@dataclass(eq=False)
class NewArr(Stm):
    """Local array with element expressions (statically known size)."""
    arr: ArrVar
    elems: list
    body: Stm


@dataclass(eq=False)
class NewUArr(Stm):
    """Local uninitialized array of a statically known size."""
    arr: ArrVar
    size: int
    body: Stm


@dataclass(eq=False)
class StaticArr(Stm):
    """Static data array; printed at file scope (DATA segment)."""
    arr: ArrVar
    values: list
    body: Stm


@dataclass(eq=False)
class Print(Stm):
    e: Exp


@dataclass(eq=False)
class Ret(Stm):
    e: Exp


# ---------------------------------------------------------------------------
# Generation session: hygienic fresh names

class GenSession:
    """Fresh-name supply; one session is confined to its thread of control,
    independent sessions on other threads do not interact."""

    def __init__(self, seed: int = 1):
        self.seed = seed
        self._counter = seed

    def fresh(self, prefix: str) -> str:
        name = f"{prefix}_{self._counter}"
        self._counter += 1
        return name

    def __enter__(self) -> "GenSession":
        self._saved = getattr(_TLS, "session", None)
        _TLS.session = self
        return self

    def __exit__(self, *exc) -> None:
        _TLS.session = self._saved


_TLS = threading.local()


def session() -> GenSession:
    s = getattr(_TLS, "session", None)
    if s is None:
        raise BuildError("no active GenSession; build code inside `with GenSession():`")
    return s


# ---------------------------------------------------------------------------
# Expression builders

def int_(n: int) -> Exp:
    return Lit(int(n), INT64)


def bool_(b: bool) -> Exp:
    return Lit(bool(b), BOOL)


TRUE = Lit(True, BOOL)
FALSE = Lit(False, BOOL)


def is_true(e: Exp) -> bool:
    return isinstance(e, Lit) and e.ty is BOOL and e.value is True


def _check(cond: bool, msg: str) -> None:
    if not cond:
        raise BuildError(msg)


def _arith(op: str, a: Exp, b: Exp) -> Exp:
    _check(a.ty is INT64 and b.ty is INT64, f"'{op}' needs int64 operands")
    return Bin(op, a, b, INT64)


def logand(a: Exp, b: Exp) -> Exp:
    _check(a.ty is INT64 and b.ty is INT64, "logand needs int64 operands")
    return Bin("&", a, b, INT64)


def _cmp(op: str, a: Exp, b: Exp) -> Exp:
    _check(a.ty is b.ty and a.ty in (INT64, F64, BOOL), f"'{op}' operand mismatch")
    return Bin(op, a, b, BOOL)


def eq(a: Exp, b: Exp) -> Exp:
    return _cmp("==", a, b)


def ne(a: Exp, b: Exp) -> Exp:
    return _cmp("!=", a, b)


def lt(a: Exp, b: Exp) -> Exp:
    return _cmp("<", a, b)


def le(a: Exp, b: Exp) -> Exp:
    return _cmp("<=", a, b)


def gt(a: Exp, b: Exp) -> Exp:
    return _cmp(">", a, b)


def ge(a: Exp, b: Exp) -> Exp:
    return _cmp(">=", a, b)


def land(a: Exp, b: Exp) -> Exp:
    """Short-circuit &&. Literal bool operands fold at construction time."""
    _check(a.ty is BOOL and b.ty is BOOL, "&& needs bool operands")
    if isinstance(a, Lit):
        return b if a.value else FALSE
    if isinstance(b, Lit):
        return a if b.value else FALSE
    return Bin("&&", a, b, BOOL)


def lor(a: Exp, b: Exp) -> Exp:
    _check(a.ty is BOOL and b.ty is BOOL, "|| needs bool operands")
    if isinstance(a, Lit):
        return b if not a.value else TRUE
    if isinstance(b, Lit):
        return a if not b.value else TRUE
    return Bin("||", a, b, BOOL)


def not_(e: Exp) -> Exp:
    _check(e.ty is BOOL, "not needs a bool operand")
    return Not(e)


def cond(c: Exp, t: Exp, e: Exp) -> Exp:
    _check(c.ty is BOOL, "cond needs a bool condition")
    _check(t.ty is e.ty, "cond branches must share a type")
    return CondE(c, t, e, t.ty)


def int_of_bool(b: Exp) -> Exp:
    return cond(b, int_(1), int_(0))


def imax(a: Exp, b: Exp) -> Exp:
    return cond(lt(a, b), b, a)


# double-precision group (single-precision and complex variants out of scope)

def f64(x: float) -> Exp:
    return Lit(float(x), F64)


def f64_of_int(e: Exp) -> Exp:
    _check(e.ty is INT64, "of_int needs an int64 operand")
    return CastF64(e)


def _farith(op: str, a: Exp, b: Exp) -> Exp:
    _check(a.ty is F64 and b.ty is F64, f"'{op}' needs float64 operands")
    return Bin(op, a, b, F64)


def fadd(a: Exp, b: Exp) -> Exp:
    return _farith("+.", a, b)


def fsub(a: Exp, b: Exp) -> Exp:
    return _farith("-.", a, b)


def fmul(a: Exp, b: Exp) -> Exp:
    return _farith("*.", a, b)


def fdiv(a: Exp, b: Exp) -> Exp:
    return _farith("/.", a, b)


# ---------------------------------------------------------------------------
# Statement builders

def unit() -> Stm:
    return SUnit()


def seq(*stms: Stm) -> Stm:
    """Sequencing; drops SUnit operands."""
    parts = [s for s in stms if not isinstance(s, SUnit)]
    if not parts:
        return SUnit()
    out = parts[-1]
    for s in reversed(parts[:-1]):
        out = Seq(s, out)
    return out


def letl(e: Exp, k: Callable[[Exp], Stm], prefix: str = "t") -> Stm:
    """Bind e to a fresh immutable name; splicing the name never splices e."""
    name = session().fresh(prefix)
    return Let(name, e.ty, e, k(VarRead(name, e.ty)))


def newref(init: Exp, k: Callable[[MutVar], Stm], wide: bool = False) -> Stm:
    v = MutVar(session().fresh("v"), init.ty, wide=wide)
    return NewRef(v, init, k(v))


def dref(v: MutVar) -> Exp:
    return Deref(v)


def assign(v: MutVar, e: Exp) -> Stm:
    _check(v.ty is e.ty, "assignment type mismatch")
    return Assign(v, e)


def incr(v: MutVar) -> Stm:
    _check(v.ty is INT64, "incr needs an int cell")
    return Incr(v)


def decr(v: MutVar) -> Stm:
    _check(v.ty is INT64, "decr needs an int cell")
    return Decr(v)


def if_(c: Exp, then: Stm, els: Stm) -> Stm:
    _check(c.ty is BOOL, "if_ needs a bool condition")
    return If(c, then, els)


def if1(c: Exp, then: Stm) -> Stm:
    _check(c.ty is BOOL, "if1 needs a bool condition")
    return If(c, then, None)


def while_(c: Exp, body: Stm) -> Stm:
    _check(c.ty is BOOL, "while_ needs a bool condition")
    return While(c, body)


def array_get_(arr: ArrVar, idx: Exp) -> Exp:
    """Expression read (array_get'); emitted C is unchecked."""
    _check(idx.ty is INT64, "array index must be int64")
    return ArrGet(arr, idx)


def array_get(arr: ArrVar, idx: Exp, k: Callable[[Exp], Stm]) -> Stm:
    """Let-bound read: el = a[i], then k el."""
    name = session().fresh("el")
    return Let(name, arr.elem_ty, array_get_(arr, idx), k(VarRead(name, arr.elem_ty)))


def array_len(arr: ArrVar) -> Exp:
    return arr.length


def array_set(arr: ArrVar, idx: Exp, e: Exp) -> Stm:
    _check(idx.ty is INT64 and e.ty is arr.elem_ty, "array_set type mismatch")
    return ArrSet(arr, idx, e)


def new_array(ty: TypeRep, elems: list, k: Callable[[ArrVar], Stm]) -> Stm:
    arr = ArrVar(session().fresh("t"), ty, int_(len(elems)))
    return NewArr(arr, list(elems), k(arr))


def new_uarray(ty: TypeRep, size: int, k: Callable[[ArrVar], Stm]) -> Stm:
    arr = ArrVar(session().fresh("t"), ty, int_(size))
    return NewUArr(arr, size, k(arr))


def new_static_array(ty: TypeRep, values: list, k: Callable[[ArrVar], Stm]) -> Stm:
    """Static array of known contents, allocated in the DATA segment."""
    arr = ArrVar(session().fresh("t"), ty, int_(len(values)))
    return StaticArr(arr, list(values), k(arr))


def print_int(e: Exp) -> Stm:
    _check(e.ty is INT64, "print_int needs an int64 expression")
    return Print(e)


def print_f64(e: Exp) -> Stm:
    _check(e.ty is F64, "print_f64 needs a float64 expression")
    return Print(e)


def ret(e: Exp) -> Stm:
    return Ret(e)


def param_array(idx: int, elem_ty: TypeRep = INT64) -> ArrVar:
    """Function parameter array a_<idx> with its length parameter n_<idx>."""
    return ArrVar(f"a_{idx}", elem_ty, VarRead(f"n_{idx}", INT64))


# ---------------------------------------------------------------------------
# C emission

_CTY = {INT64: "int", BOOL: "bool", F64: "double", UNIT: "void"}

_PREC = {
    "||": 1, "&&": 2,
    "==": 3, "!=": 3, "<": 3, "<=": 3, ">": 3, ">=": 3,
    "&": 4,
    "+": 5, "-": 5, "+.": 5, "-.": 5,
    "*": 6, "%": 6, "*.": 6, "/.": 6,
}


def _c_op(op: str) -> str:
    return op.rstrip(".")


def _c_lit(v: object, ty: TypeRep) -> str:
    if ty is BOOL:
        return "true" if v else "false"
    if ty is F64:
        s = repr(float(v))
        return s if ("." in s or "e" in s or "inf" in s or "nan" in s) else s + ".0"
    return str(v)


def _c_exp(e: Exp, outer_prec: int = 0) -> str:
    if isinstance(e, Lit):
        return _c_lit(e.value, e.ty)
    if isinstance(e, VarRead):
        return e.name
    if isinstance(e, Deref):
        return e.var.name
    if isinstance(e, ArrGet):
        return f"{e.arr.name}[{_c_exp(e.idx)}]"
    if isinstance(e, Not):
        return f"! {_c_exp(e.e, 7)}"
    if isinstance(e, CastF64):
        return f"(double){_c_exp(e.e, 7)}"
    if isinstance(e, CondE):
        return f"({_c_exp(e.c)} ? {_c_exp(e.t)} : {_c_exp(e.e)})"
    if isinstance(e, Bin):
        p = _PREC[e.op]
        s = f"{_c_exp(e.lhs, p)} {_c_op(e.op)} {_c_exp(e.rhs, p)}"
        return f"({s})" if outer_prec > 0 else s
    raise AssertionError(f"unknown expression node {e!r}")


def _decl_ty(ty: TypeRep, wide: bool = False) -> str:
    return "int64_t" if wide else _CTY[ty]


class _CPrinter:
    def __init__(self) -> None:
        self.lines: list[str] = []
        self.statics: list[str] = []
        self.depth = 1

    def put(self, text: str) -> None:
        self.lines.append("  " * self.depth + text)

    def block(self, stm: Stm) -> None:
        self.put("{")
        self.depth += 1
        self.stm(stm)
        self.depth -= 1
        self.put("}")

    def stm(self, s: Stm) -> None:
        if isinstance(s, SUnit):
            return
        if isinstance(s, Seq):
            self.stm(s.first)
            self.stm(s.second)
        elif isinstance(s, Let):
            self.put(f"{_decl_ty(s.ty)} const {s.name} = {_c_exp(s.rhs)};")
            self.stm(s.body)
        elif isinstance(s, NewRef):
            self.put(f"{_decl_ty(s.var.ty, s.var.wide)} {s.var.name} = {_c_exp(s.init)};")
            self.stm(s.body)
        elif isinstance(s, Assign):
            self.put(f"{s.var.name} = {_c_exp(s.e)};")
        elif isinstance(s, Incr):
            self.put(f"{s.var.name}++;")
        elif isinstance(s, Decr):
            self.put(f"{s.var.name}--;")
        elif isinstance(s, If):
            self.put(f"if ({_c_exp(s.c)})")
            self.block(s.then)
            if s.els is not None:
                self.put("else")
                self.block(s.els)
        elif isinstance(s, While):
            self.put(f"while ({_c_exp(s.c)})")
            self.block(s.body)
        elif isinstance(s, ArrSet):
            self.put(f"{s.arr.name}[{_c_exp(s.idx)}] = {_c_exp(s.e)};")
        elif isinstance(s, NewArr):
            elems = ", ".join(_c_exp(e) for e in s.elems)
            self.put(f"{_decl_ty(s.arr.elem_ty)} {s.arr.name}[{len(s.elems)}] = {{ {elems} }};")
            self.stm(s.body)
        elif isinstance(s, NewUArr):
            self.put(f"{_decl_ty(s.arr.elem_ty)} {s.arr.name}[{s.size}];")
            self.stm(s.body)
        elif isinstance(s, StaticArr):
            vals = ", ".join(_c_lit(v, s.arr.elem_ty) for v in s.values)
            self.statics.append(
                f"static {_decl_ty(s.arr.elem_ty)} const {s.arr.name}[{len(s.values)}] = {{ {vals} }};")
            self.stm(s.body)
        elif isinstance(s, Print):
            fmt = "%d" if s.e.ty is INT64 else "%.17g"
            self.put(f'printf("{fmt}\\n", {_c_exp(s.e)});')
        elif isinstance(s, Ret):
            self.put(f"return {_c_exp(s.e)};")
        else:
            raise AssertionError(f"unknown statement node {s!r}")


def _return_ty(body: Stm) -> str:
    for node in walk(body):
        if isinstance(node, Ret):
            e = node.e
            if isinstance(e, Deref) and e.var.wide:
                return "int64_t"
            return _CTY[e.ty]
    return "void"


def emit_c(fn_name: str, params: list[ArrVar], body: Stm,
           pipeline_name: str = "", seed: int = 1) -> str:
    """Render one self-contained C translation unit for the function."""
    pr = _CPrinter()
    pr.stm(body)
    sig_parts = []
    for arr in params:
        sig_parts.append(f"const {_CTY[arr.elem_ty]} * {arr.name}")
        assert isinstance(arr.length, VarRead)
        sig_parts.append(f"int {arr.length.name}")
    sig = ", ".join(sig_parts)
    head = [
        f"// pipeline: {pipeline_name or fn_name} (seed {seed})",
        "#include <stdint.h>",
        "#include <stdio.h>",
        "#include <stdbool.h>",
        "",
    ]
    head.append(f"{_return_ty(body)} {fn_name}({sig})")
    head.append("{")
    head.extend("  " + s for s in pr.statics)
    head.extend(pr.lines)
    head.append("}")
    return "\n".join(head) + "\n"


# ---------------------------------------------------------------------------
# Structural walks: audits, hygiene, alpha-equivalence

def walk(s: Stm) -> Iterator[object]:
    """Yield every Stm and Exp node reachable from s."""
    stack: list[object] = [s]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, Seq):
            stack += [node.first, node.second]
        elif isinstance(node, Let):
            stack += [node.rhs, node.body]
        elif isinstance(node, NewRef):
            stack += [node.init, node.body]
        elif isinstance(node, Assign):
            stack.append(node.e)
        elif isinstance(node, If):
            stack += [node.c, node.then] + ([node.els] if node.els else [])
        elif isinstance(node, While):
            stack += [node.c, node.body]
        elif isinstance(node, ArrSet):
            stack += [node.idx, node.e]
        elif isinstance(node, (NewArr, NewUArr, StaticArr)):
            if isinstance(node, NewArr):
                stack += node.elems
            stack.append(node.body)
        elif isinstance(node, (Print, Ret)):
            stack.append(node.e)
        elif isinstance(node, Bin):
            stack += [node.lhs, node.rhs]
        elif isinstance(node, Not):
            stack.append(node.e)
        elif isinstance(node, CondE):
            stack += [node.c, node.t, node.e]
        elif isinstance(node, ArrGet):
            stack.append(node.idx)
        elif isinstance(node, CastF64):
            stack.append(node.e)


_GRAMMAR = (SUnit, Seq, Let, NewRef, Assign, Incr, Decr, If, While, ArrSet,
            NewArr, NewUArr, StaticArr, Print, Ret,
            Lit, VarRead, Deref, Bin, Not, CondE, ArrGet, CastF64)


def audit_grammar(body: Stm) -> None:
    """Assert the tree holds only first-order grammar nodes and scalar literals."""
    for node in walk(body):
        if not isinstance(node, _GRAMMAR):
            raise AssertionError(f"non-grammar node in tree: {node!r}")
        if isinstance(node, Lit) and not isinstance(node.value, (bool, int, float)):
            raise AssertionError(f"non-scalar literal leaked into tree: {node.value!r}")


def audit_fusion(body: Stm) -> None:
    """Complete-fusion audit: grammar plus no array allocation inside loops.

    Scalar cells (NewRef/Let) are registers and may appear anywhere; static
    data arrays live in the DATA segment (the printer hoists them to file
    scope); any other array introduced inside a loop would be heap traffic.
    """
    audit_grammar(body)

    def scan(s: Stm, in_loop: bool) -> None:
        if isinstance(s, (NewArr, NewUArr, StaticArr)):
            if in_loop and not isinstance(s, StaticArr):
                raise AssertionError(f"array allocation inside a loop: {s.arr.name}")
            scan(s.body, in_loop)
        elif isinstance(s, Seq):
            scan(s.first, in_loop)
            scan(s.second, in_loop)
        elif isinstance(s, (Let, NewRef)):
            scan(s.body, in_loop)
        elif isinstance(s, If):
            scan(s.then, in_loop)
            if s.els is not None:
                scan(s.els, in_loop)
        elif isinstance(s, While):
            scan(s.body, True)

    scan(body, False)


def check_hygiene(body: Stm, params: list[ArrVar] | None = None) -> None:
    """Every use names exactly one in-scope binder; binder names are unique."""
    seen: set[str] = set()
    scope: set[str] = set()
    for arr in params or []:
        scope.add(arr.name)
        if isinstance(arr.length, VarRead):
            scope.add(arr.length.name)

    def bind(name: str) -> None:
        if name in seen:
            raise AssertionError(f"binder name reused: {name}")
        seen.add(name)
        scope.add(name)

    def use(name: str) -> None:
        if name not in scope:
            raise AssertionError(f"use of out-of-scope name: {name}")

    def exp(e: Exp) -> None:
        if isinstance(e, VarRead):
            use(e.name)
        elif isinstance(e, Deref):
            use(e.var.name)
        elif isinstance(e, Bin):
            exp(e.lhs)
            exp(e.rhs)
        elif isinstance(e, Not):
            exp(e.e)
        elif isinstance(e, CondE):
            exp(e.c)
            exp(e.t)
            exp(e.e)
        elif isinstance(e, ArrGet):
            use(e.arr.name)
            exp(e.idx)
        elif isinstance(e, CastF64):
            exp(e.e)

    def stm(s: Stm) -> None:
        if isinstance(s, Seq):
            stm(s.first)
            stm(s.second)
        elif isinstance(s, Let):
            exp(s.rhs)
            bind(s.name)
            stm(s.body)
        elif isinstance(s, NewRef):
            exp(s.init)
            bind(s.var.name)
            stm(s.body)
        elif isinstance(s, Assign):
            use(s.var.name)
            exp(s.e)
        elif isinstance(s, (Incr, Decr)):
            use(s.var.name)
        elif isinstance(s, If):
            exp(s.c)
            stm(s.then)
            if s.els is not None:
                stm(s.els)
        elif isinstance(s, While):
            exp(s.c)
            stm(s.body)
        elif isinstance(s, ArrSet):
            use(s.arr.name)
            exp(s.idx)
            exp(s.e)
        elif isinstance(s, NewArr):
            for e in s.elems:
                exp(e)
            bind(s.arr.name)
            stm(s.body)
        elif isinstance(s, (NewUArr, StaticArr)):
            bind(s.arr.name)
            stm(s.body)
        elif isinstance(s, (Print, Ret)):
            exp(s.e)

    stm(body)


def canon_statics(body: Stm) -> Stm:
    """Move all StaticArr bindings to the front, in order of appearance.

    Static data has no dependencies, and the C printer hoists it to file
    scope anyway; canonicalizing makes alpha comparison position-insensitive.
    """
    statics: list[StaticArr] = []

    def strip(s: Stm) -> Stm:
        if isinstance(s, StaticArr):
            statics.append(s)
            return strip(s.body)
        if isinstance(s, Seq):
            return Seq(strip(s.first), strip(s.second))
        if isinstance(s, Let):
            return Let(s.name, s.ty, s.rhs, strip(s.body))
        if isinstance(s, NewRef):
            return NewRef(s.var, s.init, strip(s.body))
        if isinstance(s, If):
            return If(s.c, strip(s.then), None if s.els is None else strip(s.els))
        if isinstance(s, While):
            return While(s.c, strip(s.body))
        if isinstance(s, NewArr):
            return NewArr(s.arr, s.elems, strip(s.body))
        if isinstance(s, NewUArr):
            return NewUArr(s.arr, s.size, strip(s.body))
        return s

    out = strip(body)
    for st in reversed(statics):
        out = StaticArr(st.arr, st.values, out)
    return out


def canon_scopes(body: Stm) -> Stm:
    """Normalize binder scoping to the maximally nested form.

    In printed C a declaration scopes to the end of its block, so
    Seq(NewRef(v, b), rest) and NewRef(v, Seq(b, rest)) render identically;
    comparison happens on the form where every binder absorbs what follows.
    """
    def go(stms: list) -> Stm:
        while stms and isinstance(stms[0], (Seq, SUnit)):
            head = stms.pop(0)
            if isinstance(head, Seq):
                stms[:0] = [head.first, head.second]
        if not stms:
            return SUnit()
        head, rest = stms[0], stms[1:]
        if isinstance(head, Let):
            return Let(head.name, head.ty, head.rhs, go([head.body] + rest))
        if isinstance(head, NewRef):
            return NewRef(head.var, head.init, go([head.body] + rest))
        if isinstance(head, NewArr):
            return NewArr(head.arr, head.elems, go([head.body] + rest))
        if isinstance(head, NewUArr):
            return NewUArr(head.arr, head.size, go([head.body] + rest))
        if isinstance(head, StaticArr):
            return StaticArr(head.arr, head.values, go([head.body] + rest))
        if isinstance(head, If):
            head = If(head.c, go([head.then]),
                      None if head.els is None else go([head.els]))
        elif isinstance(head, While):
            head = While(head.c, go([head.body]))
        if not rest:
            return head
        return Seq(head, go(rest))

    return go([body])


def canonicalize(body: Stm) -> Stm:
    """Canonical form for alpha comparison: statics hoisted, scopes nested."""
    return canon_scopes(canon_statics(body))


def alpha_equal(a: Stm, b: Stm, params_a: list[ArrVar] | None = None,
                params_b: list[ArrVar] | None = None) -> bool:
    """Structural equality modulo a bijective renaming of binders."""
    m: dict[str, str] = {}
    rev: dict[str, str] = {}

    for pa, pb in zip(params_a or [], params_b or []):
        m[pa.name] = pb.name
        rev[pb.name] = pa.name
        if isinstance(pa.length, VarRead) and isinstance(pb.length, VarRead):
            m[pa.length.name] = pb.length.name
            rev[pb.length.name] = pa.length.name

    def bind(na: str, nb: str) -> None:
        m[na] = nb
        rev[nb] = na

    def name_eq(na: str, nb: str) -> bool:
        return m.get(na) == nb and rev.get(nb) == na

    def exp(x: Exp, y: Exp) -> bool:
        if type(x) is not type(y):
            return False
        if isinstance(x, Lit):
            return x.ty is y.ty and x.value == y.value and type(x.value) is type(y.value)
        if isinstance(x, VarRead):
            return name_eq(x.name, y.name)
        if isinstance(x, Deref):
            return name_eq(x.var.name, y.var.name)
        if isinstance(x, Bin):
            return x.op == y.op and exp(x.lhs, y.lhs) and exp(x.rhs, y.rhs)
        if isinstance(x, Not):
            return exp(x.e, y.e)
        if isinstance(x, CondE):
            return exp(x.c, y.c) and exp(x.t, y.t) and exp(x.e, y.e)
        if isinstance(x, ArrGet):
            return name_eq(x.arr.name, y.arr.name) and exp(x.idx, y.idx)
        if isinstance(x, CastF64):
            return exp(x.e, y.e)
        return False

    def stm(x: Stm, y: Stm) -> bool:
        if type(x) is not type(y):
            return False
        if isinstance(x, SUnit):
            return True
        if isinstance(x, Seq):
            return stm(x.first, y.first) and stm(x.second, y.second)
        if isinstance(x, Let):
            if x.ty is not y.ty or not exp(x.rhs, y.rhs):
                return False
            bind(x.name, y.name)
            return stm(x.body, y.body)
        if isinstance(x, NewRef):
            if x.var.ty is not y.var.ty or not exp(x.init, y.init):
                return False
            bind(x.var.name, y.var.name)
            return stm(x.body, y.body)
        if isinstance(x, Assign):
            return name_eq(x.var.name, y.var.name) and exp(x.e, y.e)
        if isinstance(x, (Incr, Decr)):
            return name_eq(x.var.name, y.var.name)
        if isinstance(x, If):
            if (x.els is None) != (y.els is None):
                return False
            return (exp(x.c, y.c) and stm(x.then, y.then)
                    and (x.els is None or stm(x.els, y.els)))
        if isinstance(x, While):
            return exp(x.c, y.c) and stm(x.body, y.body)
        if isinstance(x, ArrSet):
            return name_eq(x.arr.name, y.arr.name) and exp(x.idx, y.idx) and exp(x.e, y.e)
        if isinstance(x, NewArr):
            if len(x.elems) != len(y.elems):
                return False
            if not all(exp(p, q) for p, q in zip(x.elems, y.elems)):
                return False
            bind(x.arr.name, y.arr.name)
            return stm(x.body, y.body)
        if isinstance(x, NewUArr):
            if x.size != y.size:
                return False
            bind(x.arr.name, y.arr.name)
            return stm(x.body, y.body)
        if isinstance(x, StaticArr):
            if x.values != y.values:
                return False
            bind(x.arr.name, y.arr.name)
            return stm(x.body, y.body)
        if isinstance(x, (Print, Ret)):
            return exp(x.e, y.e)
        return False

    return stm(a, b)
