"""A small declarative language for stating constructions and claims.

Example::

    point A, B, C;
    assert equilateral(cet(A, B), cet(B, C), cet(C, A));

Grammar (``#`` starts a comment)::

    script  := stmt*
    stmt    := "point" idlist ";" | "param" idlist ";"
             | "let" id "=" expr ";" | "assert" pred "(" args ")" ";"
    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := "-" unary | power
    power   := postfix ("^" unary)?          exponent: an integer literal
    postfix := atom ("[" int "]")*           1-based indexing
    atom    := int | id | call | "[" expr ("," expr)+ "]" | "(" expr ")"
    call    := name "(" [args] ")"

Built-in names are ``x``, ``y``, ``sqrt3``, ``I`` and the snake_case
construction primitives plus ``sqrt``.
"""

from __future__ import annotations

import hashlib
import inspect
import json
import re
import time
from dataclasses import asdict, dataclass, field
from typing import Union

from . import __version__, kernel
from .errors import PlaneProverError, ScriptSyntaxError, ScriptValidationError
from .geometry import PRIMITIVES, Geometry, Point

# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Name:
    id: str


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple


@dataclass(frozen=True)
class Index:
    target: "Expr"
    index: int


@dataclass(frozen=True)
class Vec:
    items: tuple


Expr = Union[Num, Name, Neg, BinOp, Call, Index, Vec]


@dataclass(frozen=True)
class PointDecl:
    names: tuple


@dataclass(frozen=True)
class ParamDecl:
    names: tuple


@dataclass(frozen=True)
class Let:
    name: str
    expr: Expr


@dataclass(frozen=True)
class Assert:
    predicate: str
    args: tuple


Stmt = Union[PointDecl, ParamDecl, Let, Assert]


@dataclass(frozen=True)
class Script:
    statements: tuple

    @property
    def declarations(self) -> tuple:
        return tuple(s for s in self.statements if not isinstance(s, Assert))

    @property
    def assertions(self) -> tuple:
        return tuple(s for s in self.statements if isinstance(s, Assert))


# ---------------------------------------------------------------------------
# vocabulary

KEYWORDS = frozenset({"point", "param", "let", "assert"})
CONSTANTS = frozenset({"x", "y", "sqrt3", "I"})

# predicate -> (min args, max args or None)
PREDICATE_ARITY: dict[str, tuple[int, int | None]] = {
    "equilateral": (3, 3),
    "is_zero": (1, 1),
    "equal": (2, 2),
    "colinear": (2, None),
    "concurrent": (2, None),
    "concyclic": (3, None),
    "sqrt_sum": (3, 3),
    "touch_circles": (2, 2),
    "touch_circle_line": (2, 2),
}


def _arity(fn) -> tuple[int, int | None]:
    params = list(inspect.signature(fn).parameters.values())[1:]  # drop self
    if any(p.kind is p.VAR_POSITIONAL for p in params):
        return {"concurrency_point": 2, "circle_through": 3, "tan_sum": 1}.get(fn.__name__, 1), None
    required = sum(1 for p in params if p.default is p.empty)
    return required, len(params)


FUNCTION_ARITY: dict[str, tuple[int, int | None]] = {
    name: _arity(getattr(Geometry, name)) for name in PRIMITIVES
}
FUNCTION_ARITY["sqrt"] = (1, 1)
# the dimension argument is implied by the points
FUNCTION_ARITY["de_sq_g"] = (2, 2)

BUILTINS = frozenset(FUNCTION_ARITY) | frozenset(PREDICATE_ARITY) | CONSTANTS | KEYWORDS


# ---------------------------------------------------------------------------
# tokenizer

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>\#[^\n]*)"
    r"|(?P<int>[0-9]+)|(?P<id>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[;,()\[\]+\-*/^=])"
)


@dataclass(frozen=True)
class Token:
    kind: str  # int | id | op | eof
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    out: list[Token] = []
    pos, line, col0 = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ScriptSyntaxError(f"unexpected character {text[pos]!r}", line, pos - col0 + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            col0 = m.end()
        elif kind not in ("ws", "comment"):
            out.append(Token(kind, m.group(), line, pos - col0 + 1))
        pos = m.end()
    out.append(Token("eof", "", line, pos - col0 + 1))
    return out


# ---------------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.k = 0
        # id(node) -> token where the node starts, for validation messages
        self.where: dict = {}

    def at(self, node, tok: Token):
        self.where[id(node)] = tok
        return node

    @property
    def tok(self) -> Token:
        return self.toks[self.k]

    def _fail(self, what: str, expected: tuple = ()):
        t = self.tok
        got = "end of input" if t.kind == "eof" else repr(t.text)
        raise ScriptSyntaxError(f"{what}, found {got}", t.line, t.column, expected)

    def accept(self, text: str) -> bool:
        if self.tok.kind in ("op", "id") and self.tok.text == text:
            self.k += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        t = self.tok
        if not self.accept(text):
            self._fail("unexpected token", (repr(text),))
        return t

    def ident(self) -> Token:
        t = self.tok
        if t.kind != "id" or t.text in KEYWORDS:
            self._fail("expected an identifier", ("identifier",))
        self.k += 1
        return t

    def script(self) -> list[Stmt]:
        stmts = []
        while self.tok.kind != "eof":
            stmts.append(self.stmt())
        return stmts

    def stmt(self) -> Stmt:
        t = self.tok
        if self.accept("point") or self.accept("param"):
            toks = [self.ident()]
            while self.accept(","):
                toks.append(self.ident())
            self.expect(";")
            st = (PointDecl if t.text == "point" else ParamDecl)(tuple(k.text for k in toks))
            self.where[id(st)] = toks
            return st
        if self.accept("let"):
            name = self.ident()
            self.expect("=")
            e = self.expr()
            self.expect(";")
            st = Let(name.text, e)
            self.where[id(st)] = [name]
            return st
        if self.accept("assert"):
            pred = self.ident()
            self.expect("(")
            args = self.args()
            self.expect(";")
            return self.at(Assert(pred.text, args), pred)
        self._fail("expected a statement", ("'point'", "'param'", "'let'", "'assert'"))

    def args(self) -> tuple:
        # after "(": [expr ("," expr)*] ")"
        if self.accept(")"):
            return ()
        out = [self.expr()]
        while self.accept(","):
            out.append(self.expr())
        self.expect(")")
        return tuple(out)

    def expr(self) -> Expr:
        e = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.tok
            self.k += 1
            e = self.at(BinOp(op.text, e, self.term()), op)
        return e

    def term(self) -> Expr:
        e = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.tok
            self.k += 1
            e = self.at(BinOp(op.text, e, self.unary()), op)
        return e

    def unary(self) -> Expr:
        t = self.tok
        if self.accept("-"):
            return self.at(Neg(self.unary()), t)
        return self.power()

    def power(self) -> Expr:
        e = self.postfix()
        t = self.tok
        if self.accept("^"):
            return self.at(BinOp("^", e, self.unary()), t)
        return e

    def postfix(self) -> Expr:
        e = self.atom()
        while self.tok.text == "[" and self.tok.kind == "op":
            self.k += 1
            t = self.tok
            if t.kind != "int":
                self._fail("expected an index", ("integer",))
            self.k += 1
            self.expect("]")
            e = self.at(Index(e, int(t.text)), t)
        return e

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "int":
            self.k += 1
            return self.at(Num(int(t.text)), t)
        if t.kind == "id" and t.text not in KEYWORDS:
            self.k += 1
            if self.accept("("):
                return self.at(Call(t.text, self.args()), t)
            return self.at(Name(t.text), t)
        if self.accept("("):
            e = self.expr()
            self.expect(")")
            return e
        if self.accept("["):
            items = [self.expr()]
            self.expect(",")
            items.append(self.expr())
            while self.accept(","):
                items.append(self.expr())
            self.expect("]")
            return self.at(Vec(tuple(items)), t)
        self._fail("expected an expression", ("number", "identifier", "'('", "'['", "'-'"))


def _validate(stmts: list[Stmt], where: dict) -> None:
    declared: set[str] = set()

    def fail(msg, t):
        raise ScriptValidationError(msg, t.line, t.column)

    def check(e, t):
        t = where.get(id(e), t)
        if isinstance(e, Num):
            return
        if isinstance(e, Name):
            if e.id in CONSTANTS:
                return
            if e.id in FUNCTION_ARITY or e.id in PREDICATE_ARITY:
                fail(f"{e.id!r} is a function and needs arguments", t)
            if e.id not in declared:
                fail(f"{e.id!r} is used before it is declared", t)
            return
        if isinstance(e, Neg):
            return check(e.operand, t)
        if isinstance(e, BinOp):
            if e.op == "^" and not _int_literal(e.right):
                fail("exponent must be an integer literal", t)
            check(e.left, t)
            return check(e.right, t)
        if isinstance(e, Index):
            if e.index < 1:
                fail("indices start at 1", t)
            return check(e.target, t)
        if isinstance(e, Vec):
            for a in e.items:
                check(a, t)
            return
        if isinstance(e, Call):
            if e.func in PREDICATE_ARITY:
                fail(f"predicate {e.func!r} may only appear directly after 'assert'", t)
            if e.func not in FUNCTION_ARITY:
                fail(f"unknown primitive {e.func!r}", t)
            _check_arity(e.func, len(e.args), FUNCTION_ARITY[e.func], t)
            for a in e.args:
                check(a, t)

    def declare(name, t):
        if name in BUILTINS:
            fail(f"{name!r} shadows a built-in name", t)
        if name in declared:
            fail(f"{name!r} is declared twice", t)
        declared.add(name)

    for s in stmts:
        if isinstance(s, (PointDecl, ParamDecl)):
            for n, t in zip(s.names, where[id(s)]):
                declare(n, t)
        elif isinstance(s, Let):
            t = where[id(s)][0]
            check(s.expr, t)
            declare(s.name, t)
        else:
            t = where[id(s)]
            if s.predicate not in PREDICATE_ARITY:
                fail(f"unknown predicate {s.predicate!r}", t)
            _check_arity(s.predicate, len(s.args), PREDICATE_ARITY[s.predicate], t)
            for a in s.args:
                check(a, t)


def _int_literal(e) -> bool:
    return isinstance(e, Num) or (isinstance(e, Neg) and isinstance(e.operand, Num))


def _check_arity(name, n, bounds, t):
    lo, hi = bounds
    if n < lo or (hi is not None and n > hi):
        want = str(lo) if hi == lo else (f"at least {lo}" if hi is None else f"{lo} to {hi}")
        raise ScriptValidationError(f"{name} takes {want} arguments, got {n}", t.line, t.column)


def parse_script(text: str) -> Script:
    """Parse and validate a script."""
    parser = _Parser(text)
    stmts = parser.script()
    _validate(stmts, parser.where)
    return Script(tuple(stmts))


# ---------------------------------------------------------------------------
# printer

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 4}


def _prec(e) -> int:
    if isinstance(e, BinOp):
        return _PREC[e.op]
    if isinstance(e, Neg):
        return 3
    return 5


def print_expr(e: Expr) -> str:
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Name):
        return e.id
    if isinstance(e, Neg):
        inner = print_expr(e.operand)
        return "-" + (f"({inner})" if _prec(e.operand) < 3 else inner)
    if isinstance(e, BinOp):
        p = _PREC[e.op]
        left, right = print_expr(e.left), print_expr(e.right)
        if e.op == "^":
            if _prec(e.left) <= 4:
                left = f"({left})"
            if _prec(e.right) < 3:
                right = f"({right})"
            return f"{left}^{right}"
        if _prec(e.left) < p:
            left = f"({left})"
        if _prec(e.right) <= p:
            right = f"({right})"
        return f"{left} {e.op} {right}"
    if isinstance(e, Call):
        return f"{e.func}({', '.join(print_expr(a) for a in e.args)})"
    if isinstance(e, Index):
        t = print_expr(e.target)
        return (f"({t})" if _prec(e.target) < 5 else t) + f"[{e.index}]"
    if isinstance(e, Vec):
        return "[" + ", ".join(print_expr(a) for a in e.items) + "]"
    raise TypeError(f"not an expression: {e!r}")


def print_script(s: Script) -> str:
    lines = []
    for st in s.statements:
        if isinstance(st, PointDecl):
            lines.append(f"point {', '.join(st.names)};")
        elif isinstance(st, ParamDecl):
            lines.append(f"param {', '.join(st.names)};")
        elif isinstance(st, Let):
            lines.append(f"let {st.name} = {print_expr(st.expr)};")
        else:
            lines.append(f"assert {st.predicate}({', '.join(print_expr(a) for a in st.args)});")
    return "\n".join(lines) + ("\n" if lines else "")


# ---------------------------------------------------------------------------
# evaluation


class _Evaluator:
    def __init__(self, g: Geometry):
        self.g = g
        self.env: dict[str, object] = {}

    def declare(self, st) -> None:
        g = self.g
        if isinstance(st, PointDecl):
            for n in st.names:
                self.env[n] = g.point(n)
        elif isinstance(st, ParamDecl):
            for n in st.names:
                self.env[n] = g.param(n)
        elif isinstance(st, Let):
            self.env[st.name] = self.eval(st.expr)

    def eval(self, e):
        g, K = self.g, self.g.K
        if isinstance(e, Num):
            return K.coerce(e.value)
        if isinstance(e, Name):
            if e.id == "x":
                return g.x
            if e.id == "y":
                return g.y
            if e.id == "sqrt3":
                return K.r3
            if e.id == "I":
                return K.i
            return self.env[e.id]
        if isinstance(e, Neg):
            return -self._scalar(self.eval(e.operand))
        if isinstance(e, BinOp):
            a = self._scalar(self.eval(e.left))
            if e.op == "^":
                k = e.right.value if isinstance(e.right, Num) else -e.right.operand.value
                return a**k
            b = self._scalar(self.eval(e.right))
            if e.op == "+":
                return a + b
            if e.op == "-":
                return a - b
            if e.op == "*":
                return a * b
            if K.is_zero(b):
                raise ZeroDivisionError("division by an identically zero expression")
            return a / b
        if isinstance(e, Index):
            v = self.eval(e.target)
            if not isinstance(v, tuple) or e.index > len(v):
                raise ScriptValidationError(f"index {e.index} out of range")
            return v[e.index - 1]
        if isinstance(e, Vec):
            vals = [self._scalar(self.eval(a)) for a in e.items]
            return Point(*vals) if len(vals) == 2 else tuple(vals)
        if isinstance(e, Call):
            args = [self.eval(a) for a in e.args]
            if e.func == "sqrt":
                return g.sqrt(self._scalar(args[0]))
            if e.func == "de_sq_g":
                return g.de_sq_g(args[0], args[1], len(args[0]))
            return getattr(g, e.func)(*args)
        raise TypeError(f"not an expression: {e!r}")

    @staticmethod
    def _scalar(v):
        if isinstance(v, tuple):
            raise ScriptValidationError("a point or list was used as a number")
        return v

    def claim(self, st: Assert) -> tuple[bool, tuple]:
        g = self.g
        args = [self.eval(a) for a in st.args]
        p = st.predicate
        if p == "equilateral":
            return g.is_equilateral(*args), _flatten(args)
        if p == "is_zero":
            return g.is_zero(self._scalar(args[0])), tuple(args)
        if p == "equal":
            a, b = args
            if isinstance(a, tuple) != isinstance(b, tuple) or (isinstance(a, tuple) and len(a) != len(b)):
                return False, _flatten(args)
            pairs = zip(a, b) if isinstance(a, tuple) else [(a, b)]
            return all(g.is_zero(u - v) for u, v in pairs), _flatten(args)
        if p == "sqrt_sum":
            return g.sqrt_sum(*args), tuple(args)
        return getattr(g, p)(*args), _flatten(args)


def _flatten(vals) -> tuple:
    out = []
    for v in vals:
        if isinstance(v, tuple):
            out.extend(_flatten(v))
        else:
            out.append(v)
    return tuple(out)


# ---------------------------------------------------------------------------
# reports


@dataclass
class ReportEntry:
    id: str
    verdict: str
    millis: int
    degree: int = 0
    nterms: int = 0
    certificate: dict | None = None
    oracle: bool | None = None
    error: str | None = None

    def to_json(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}


@dataclass
class RunReport:
    results: list[ReportEntry] = field(default_factory=list)
    input_digest: str = ""
    tool: str = "planeprover"
    version: str = __version__
    trace: list | None = None

    def to_json(self) -> dict:
        out = {
            "tool": self.tool,
            "version": self.version,
            "input_digest": self.input_digest,
            "results": [r.to_json() for r in self.results],
        }
        if self.trace is not None:
            out["trace"] = [list(t) for t in self.trace]
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, data: dict) -> "RunReport":
        trace = data.get("trace")
        return cls(
            results=[ReportEntry(**r) for r in data["results"]],
            input_digest=data["input_digest"],
            tool=data["tool"],
            version=data["version"],
            trace=[tuple(t) for t in trace] if trace is not None else None,
        )

    @classmethod
    def loads(cls, text: str) -> "RunReport":
        return cls.from_json(json.loads(text))


def digest(data: bytes | str) -> str:
    if isinstance(data, str):
        data = data.encode("utf-8")
    return "sha256:" + hashlib.sha256(data).hexdigest()


def _size(witnesses) -> tuple[int, int]:
    deg = terms = 0
    for w in witnesses:
        if isinstance(w, kernel.Scalar):
            deg, terms = max(deg, w.total_degree()), max(terms, w.nterms())
    return deg, terms


def run_script(script: Script, seed: int = 0, oracle: bool = True, trace: list | None = None) -> RunReport:
    """Prove every assertion symbolically and cross-check it numerically."""
    from .theorems import evaluate_numeric  # late import: theorems is heavier

    ev = _Evaluator(Geometry(trace=trace))
    report = RunReport(input_digest=digest(print_script(script)), trace=trace)
    failure: str | None = None
    k = 0
    for pos, st in enumerate(script.statements):
        if not isinstance(st, Assert):
            if failure is None:
                try:
                    ev.declare(st)
                except (PlaneProverError, ZeroDivisionError, ValueError) as exc:
                    failure = f"{type(exc).__name__}: {exc}"
            continue
        k += 1
        entry = ReportEntry(f"assert{k}", "error", 0)
        report.results.append(entry)
        if failure is not None:
            entry.error = failure
            continue
        t0 = time.perf_counter()
        try:
            holds, witnesses = ev.claim(st)
        except (PlaneProverError, ZeroDivisionError, ValueError) as exc:
            entry.millis = int(round((time.perf_counter() - t0) * 1000))
            entry.error = f"{type(exc).__name__}: {exc}"
            continue
        entry.millis = int(round((time.perf_counter() - t0) * 1000))
        entry.verdict = "proved" if holds else "refuted"
        entry.degree, entry.nterms = _size(witnesses)
        if oracle:
            entry.oracle = _oracle(script.statements[: pos + 1], seed, evaluate_numeric)
    return report


def _oracle(stmts, seed, evaluate_numeric) -> bool | None:
    from .theorems import Claim

    def build(g: Geometry) -> Claim:
        ev = _Evaluator(g)
        for st in stmts[:-1]:
            if not isinstance(st, Assert):
                ev.declare(st)
        holds, _ = ev.claim(stmts[-1])
        return Claim("script", holds)

    try:
        return evaluate_numeric(build, seed).holds
    except PlaneProverError:
        return None
