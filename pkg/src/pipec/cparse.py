"""Parser for the emitted C subset, so goldens compare as ASTs.

Covers exactly the shapes emit_c produces: one function, static const data
arrays (function- or file-scope), flat declarations, if/while, printf,
return. Parsing a
stored golden (or a hand-written reference listing) back to the AST makes
comparisons alpha-equivalence rather than byte equality.
"""

from __future__ import annotations

import re

from . import backend_ir as ir

_TOKEN = re.compile(r"""
    \s+
  | //[^\n]*
  | \#[^\n]*
  | (?P<float>\d+\.\d+(e-?\d+)?)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<str>"(\\.|[^"\\])*")
  | (?P<punct>\+\+|--|&&|\|\||==|!=|<=|>=|[-+*%/&!<>=?:;,(){}\[\]])
""", re.VERBOSE)


class CParseError(Exception):
    pass


def _tokenize(text: str) -> list[str]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise CParseError(f"lex error at {text[pos:pos+24]!r}")
        pos = m.end()
        for kind in ("float", "int", "name", "str", "punct"):
            if m.group(kind):
                toks.append(m.group(kind))
                break
    return toks


_TYPES = {"int": ir.INT64, "bool": ir.BOOL, "double": ir.F64,
          "int64_t": ir.INT64, "void": ir.UNIT}


class _Parser:
    def __init__(self, toks: list[str]):
        self.toks = toks
        self.i = 0
        self.vars: dict[str, object] = {}  # name -> MutVar | VarRead | ArrVar

    def peek(self, k: int = 0) -> str:
        return self.toks[self.i + k] if self.i + k < len(self.toks) else ""

    def next(self) -> str:
        t = self.peek()
        self.i += 1
        return t

    def expect(self, t: str) -> None:
        got = self.next()
        if got != t:
            raise CParseError(f"expected {t!r}, got {got!r} near #{self.i}")

    # -- declarations ------------------------------------------------------

    def parse_file(self) -> tuple[str, list[ir.ArrVar], ir.Stm]:
        statics: list[ir.StaticArr] = []
        while self.peek() == "static":
            statics.append(self.static_decl())
        retty = self.next()
        if retty not in _TYPES:
            raise CParseError(f"bad return type {retty!r}")
        fn_name = self.next()
        params = self.params()
        body = self.block()
        for st in reversed(statics):
            body = ir.StaticArr(st.arr, st.values, body)
        return fn_name, params, body

    def static_decl(self) -> ir.StaticArr:
        self.expect("static")
        ty = _TYPES[self.next()]
        self.expect("const")
        name = self.next()
        self.expect("[")
        n = int(self.next())
        self.expect("]")
        self.expect("=")
        self.expect("{")
        values = []
        while self.peek() != "}":
            values.append(self.literal(ty))
            if self.peek() == ",":
                self.next()
        self.expect("}")
        self.expect(";")
        if len(values) != n:
            raise CParseError(f"static array {name} length mismatch")
        arr = ir.ArrVar(name, ty, ir.Lit(n, ir.INT64))
        self.vars[name] = arr
        return ir.StaticArr(arr, values, ir.SUnit())

    def literal(self, ty: ir.TypeRep):
        t = self.next()
        if ty is ir.BOOL:
            return t == "true"
        if ty is ir.F64:
            return float(t)
        if t == "-":
            return -int(self.next())
        return int(t)

    def params(self) -> list[ir.ArrVar]:
        self.expect("(")
        arrays: list[ir.ArrVar] = []
        pending: ir.ArrVar | None = None
        while self.peek() != ")":
            if self.peek() == "const":
                self.next()
                ty = _TYPES[self.next()]
                self.expect("*")
                name = self.next()
                pending = ir.ArrVar(name, ty, ir.Lit(0, ir.INT64))
                self.vars[name] = pending
            else:
                self.expect("int")
                name = self.next()
                length = ir.VarRead(name, ir.INT64)
                self.vars[name] = length
                if pending is None:
                    raise CParseError("length parameter without an array")
                pending.length = length
                arrays.append(pending)
                pending = None
            if self.peek() == ",":
                self.next()
        self.expect(")")
        if pending is not None:
            raise CParseError(f"array parameter {pending.name} lacks a length")
        return arrays

    # -- statements --------------------------------------------------------

    def block(self) -> ir.Stm:
        self.expect("{")
        stm = self.stmts_until_brace()
        self.expect("}")
        return stm

    def stmts_until_brace(self) -> ir.Stm:
        if self.peek() == "}":
            return ir.SUnit()
        head = self.peek()
        if head == "static":
            st = self.static_decl()
            return ir.StaticArr(st.arr, st.values, self.stmts_until_brace())
        if head in _TYPES and self.peek(1) != "(":
            return self.decl_stmt()
        first = self.simple_stmt()
        rest = self.stmts_until_brace()
        if isinstance(rest, ir.SUnit):
            return first
        return ir.Seq(first, rest)

    def decl_stmt(self) -> ir.Stm:
        tyname = self.next()
        ty = _TYPES[tyname]
        wide = tyname == "int64_t"
        const = self.peek() == "const"
        if const:
            self.next()
        name = self.next()
        if self.peek() == "[":
            self.next()
            n = int(self.next())
            self.expect("]")
            arr = ir.ArrVar(name, ty, ir.Lit(n, ir.INT64))
            self.vars[name] = arr
            if self.peek() == "=":
                self.next()
                self.expect("{")
                elems = []
                while self.peek() != "}":
                    elems.append(self.expr())
                    if self.peek() == ",":
                        self.next()
                self.expect("}")
                self.expect(";")
                return ir.NewArr(arr, elems, self.stmts_until_brace())
            self.expect(";")
            return ir.NewUArr(arr, n, self.stmts_until_brace())
        self.expect("=")
        rhs = self.expr()
        self.expect(";")
        if const:
            self.vars[name] = ir.VarRead(name, ty)
            return ir.Let(name, ty, rhs, self.stmts_until_brace())
        var = ir.MutVar(name, ty, wide=wide)
        self.vars[name] = var
        return ir.NewRef(var, rhs, self.stmts_until_brace())

    def simple_stmt(self) -> ir.Stm:
        t = self.peek()
        if t == "if":
            self.next()
            self.expect("(")
            c = self.expr()
            self.expect(")")
            then = self.block()
            els = None
            if self.peek() == "else":
                self.next()
                els = self.block()
            return ir.If(c, then, els)
        if t == "while":
            self.next()
            self.expect("(")
            c = self.expr()
            self.expect(")")
            return ir.While(c, self.block())
        if t == "printf":
            self.next()
            self.expect("(")
            self.next()  # format string
            self.expect(",")
            e = self.expr()
            self.expect(")")
            self.expect(";")
            return ir.Print(e)
        if t == "return":
            self.next()
            e = self.expr()
            self.expect(";")
            return ir.Ret(e)
        name = self.next()
        var = self.vars.get(name)
        if self.peek() == "++":
            self.next()
            self.expect(";")
            return ir.Incr(var)
        if self.peek() == "--":
            self.next()
            self.expect(";")
            return ir.Decr(var)
        if self.peek() == "[":
            self.next()
            idx = self.expr()
            self.expect("]")
            self.expect("=")
            e = self.expr()
            self.expect(";")
            return ir.ArrSet(var, idx, e)
        self.expect("=")
        e = self.expr()
        self.expect(";")
        return ir.Assign(var, e)

    # -- expressions -------------------------------------------------------

    def expr(self) -> ir.Exp:
        e = self.or_expr()
        if self.peek() == "?":
            self.next()
            t = self.expr()
            self.expect(":")
            f = self.expr()
            return ir.CondE(e, t, f, t.ty)
        return e

    def or_expr(self) -> ir.Exp:
        e = self.and_expr()
        while self.peek() == "||":
            self.next()
            e = ir.Bin("||", e, self.and_expr(), ir.BOOL)
        return e

    def and_expr(self) -> ir.Exp:
        e = self.cmp_expr()
        while self.peek() == "&&":
            self.next()
            e = ir.Bin("&&", e, self.cmp_expr(), ir.BOOL)
        return e

    def cmp_expr(self) -> ir.Exp:
        e = self.band_expr()
        if self.peek() in ("==", "!=", "<", "<=", ">", ">="):
            op = self.next()
            e = ir.Bin(op, e, self.band_expr(), ir.BOOL)
        return e

    def band_expr(self) -> ir.Exp:
        e = self.add_expr()
        while self.peek() == "&":
            self.next()
            e = ir.Bin("&", e, self.add_expr(), ir.INT64)
        return e

    def _mk_arith(self, op: str, a: ir.Exp, b: ir.Exp) -> ir.Exp:
        if a.ty is ir.F64 or b.ty is ir.F64:
            return ir.Bin(op + ".", a, b, ir.F64)
        return ir.Bin(op, a, b, ir.INT64)

    def add_expr(self) -> ir.Exp:
        e = self.mul_expr()
        while self.peek() in ("+", "-"):
            op = self.next()
            e = self._mk_arith(op, e, self.mul_expr())
        return e

    def mul_expr(self) -> ir.Exp:
        e = self.unary()
        while self.peek() in ("*", "%", "/"):
            op = self.next()
            rhs = self.unary()
            if op == "/":
                e = ir.Bin("/.", e, rhs, ir.F64)
            else:
                e = self._mk_arith(op, e, rhs)
        return e

    def unary(self) -> ir.Exp:
        t = self.peek()
        if t == "!":
            self.next()
            return ir.Not(self.unary())
        if t == "-":
            self.next()
            e = self.unary()
            if isinstance(e, ir.Lit):
                return ir.Lit(-e.value, e.ty)
            return ir.Bin("-", ir.Lit(0, ir.INT64), e, ir.INT64)
        if t == "(" and self.peek(1) == "double" and self.peek(2) == ")":
            self.next()
            self.next()
            self.next()
            return ir.CastF64(self.unary())
        return self.atom()

    def atom(self) -> ir.Exp:
        t = self.next()
        if t == "(":
            e = self.expr()
            self.expect(")")
            return e
        if t == "true":
            return ir.Lit(True, ir.BOOL)
        if t == "false":
            return ir.Lit(False, ir.BOOL)
        if re.fullmatch(r"\d+\.\d+(e-?\d+)?", t):
            return ir.Lit(float(t), ir.F64)
        if t.isdigit():
            return ir.Lit(int(t), ir.INT64)
        var = self.vars.get(t)
        if var is None:
            raise CParseError(f"unknown name {t!r}")
        if isinstance(var, ir.ArrVar):
            self.expect("[")
            idx = self.expr()
            self.expect("]")
            return ir.ArrGet(var, idx)
        if isinstance(var, ir.MutVar):
            return ir.Deref(var)
        return ir.VarRead(t, var.ty)


def parse_c(text: str) -> tuple[str, list[ir.ArrVar], ir.Stm]:
    """Parse emitted-subset C into (fn_name, params, body)."""
    return _Parser(_tokenize(text)).parse_file()
