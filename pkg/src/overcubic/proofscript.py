"""A small language for replaying q-series proofs.

Example::

    # sum bt(2n) q^n
    let BT = f4^3 / (f1^6 * f2^3)
    assert extract(BT, 0, 2) == 8*q*f2^7*f4^3*f8^2/f1^18 + f2^17*f4/(f8^2*f1^22) as "2-8"
    assert f2^8/f1^16 == 21 + 12*phineg(1)^2 + 16*phi(2) + 16*phi(4) mod 64 upto 300 as "3-7"

Statements end at a newline unless a bracket is open or the line ends in a
backslash.  ``assert`` accepts a chain ``A == B == C``; every link is checked.
"""
from __future__ import annotations

import re
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Optional, Union

from .eta import Theta
from .expr import (BinOp, Eta, EtaExpr, EvalError, Evaluator, Extract, Neg, Num, Pow, Ref,
                   SeriesExpr, Subq, ThetaAtom, to_text)
from .report import VerificationReport
from .series import SeriesError, first_difference

KEYWORDS = {"let", "assert", "mod", "upto", "as", "pragma", "q",
            "phi", "phineg", "psi", "extract", "subq"}
_THETA = {"phi": Theta.PHI, "phineg": Theta.PHI_NEG, "psi": Theta.PSI}


class ScriptError(Exception):
    """Any lexical, syntax, name or evaluation error, tagged with a position."""

    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.message = message
        self.line = line
        self.col = col
        super().__init__(f"{line}:{col}: {message}" if line else message)


@dataclass(frozen=True)
class Token:
    kind: str   # INT NAME ETA OP STR NL EOF
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<cont>\\[ \t]*\n)
  | (?P<nl>\n)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<str>"[^"\n]*")
  | (?P<op>==|[-+*/^(),=])
""", re.VERBOSE)

_ETA_NAME = re.compile(r"f([1-9][0-9]*)")


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    depth = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise ScriptError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        lexeme = m.group()
        if kind == "nl" or kind == "cont":
            if kind == "nl" and depth == 0:
                tokens.append(Token("NL", "\n", line, col))
            line += 1
            line_start = m.end()
        elif kind == "int":
            tokens.append(Token("INT", lexeme, line, col))
        elif kind == "name":
            tokens.append(Token("ETA" if _ETA_NAME.fullmatch(lexeme) else "NAME", lexeme, line, col))
        elif kind == "str":
            tokens.append(Token("STR", lexeme[1:-1], line, col))
        elif kind == "op":
            if lexeme == "(":
                depth += 1
            elif lexeme == ")":
                depth = max(depth - 1, 0)
            tokens.append(Token("OP", lexeme, line, col))
        pos = m.end()
    tokens.append(Token("NL", "\n", line, pos - line_start + 1))
    tokens.append(Token("EOF", "", line, pos - line_start + 1))
    return tokens


# ---- statements ---------------------------------------------------------------

@dataclass(frozen=True)
class Let:
    name: str
    expr: SeriesExpr
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Assert:
    sides: tuple[SeriesExpr, ...]
    modulus: int
    order: Optional[int]
    label: str
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)

    @property
    def lhs(self) -> SeriesExpr:
        return self.sides[0]

    @property
    def rhs(self) -> SeriesExpr:
        return self.sides[-1]


@dataclass(frozen=True)
class Pragma:
    key: str
    value: Union[int, str]
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


Statement = Union[Let, Assert, Pragma]


@dataclass(frozen=True)
class Script:
    statements: tuple[Statement, ...]
    name: str = ""

    @property
    def asserts(self) -> list[Assert]:
        return [s for s in self.statements if isinstance(s, Assert)]

    @property
    def pragmas(self) -> dict:
        return {s.key: s.value for s in self.statements if isinstance(s, Pragma)}


# ---- parser -----------------------------------------------------------------

class _Parser:
    def __init__(self, tokens: list[Token], known: set[str]):
        self.toks = tokens
        self.i = 0
        self.known = set(known)

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.tok
        found = "end of input" if tok.kind == "EOF" else "end of line" if tok.kind == "NL" else repr(tok.text)
        raise ScriptError(f"{message} (found {found})", tok.line, tok.col)

    def next(self) -> Token:
        tok = self.tok
        self.i += 1
        return tok

    def at(self, kind: str, text: str | None = None) -> bool:
        tok = self.tok
        return tok.kind == kind and (text is None or tok.text == text)

    def expect(self, kind: str, text: str | None = None, what: str = "") -> Token:
        if not self.at(kind, text):
            self.error(f"expected {what or text or kind}")
        return self.next()

    def keyword(self, word: str):
        if not self.at("NAME", word):
            self.error(f"expected '{word}'")
        return self.next()

    # statements

    def script(self) -> list[Statement]:
        out = []
        labels: dict[str, Token] = {}
        while not self.at("EOF"):
            if self.at("NL"):
                self.next()
                continue
            stmt = self.statement()
            if isinstance(stmt, Assert):
                if stmt.label in labels:
                    raise ScriptError(f"duplicate assert label {stmt.label!r}", stmt.line, stmt.col)
                labels[stmt.label] = stmt
            out.append(stmt)
            if not self.at("EOF"):
                self.expect("NL", what="end of statement")
        return out

    def statement(self) -> Statement:
        tok = self.tok
        if self.at("NAME", "let"):
            self.next()
            name_tok = self.tok
            if name_tok.kind != "NAME" or name_tok.text in KEYWORDS:
                self.error("expected a name after 'let'")
            self.next()
            self.expect("OP", "=")
            x = self.expr()
            if name_tok.text in self.known:
                raise ScriptError(f"{name_tok.text!r} is already defined", name_tok.line, name_tok.col)
            self.known.add(name_tok.text)
            return Let(name_tok.text, x, tok.line, tok.col)
        if self.at("NAME", "assert"):
            self.next()
            sides = [self.expr()]
            while self.at("OP", "=="):
                self.next()
                sides.append(self.expr())
            if len(sides) < 2:
                self.error("expected '=='")
            modulus, order = 0, None
            if self.at("NAME", "mod"):
                self.next()
                modulus = int(self.expect("INT", what="a modulus").text)
                if modulus < 1:
                    self.error("modulus must be positive", self.toks[self.i - 1])
            if self.at("NAME", "upto"):
                self.next()
                order = int(self.expect("INT", what="an order").text)
            self.keyword("as")
            label = self.expect("STR", what="a quoted label").text
            return Assert(tuple(sides), modulus, order, label, tok.line, tok.col)
        if self.at("NAME", "pragma"):
            self.next()
            key = self.expect("NAME", what="a pragma key").text
            self.expect("OP", "=")
            if self.at("INT"):
                value: Union[int, str] = int(self.next().text)
            elif self.at("STR") or self.at("NAME"):
                value = self.next().text
            else:
                self.error("expected a pragma value")
            return Pragma(key, value, tok.line, tok.col)
        self.error("expected 'let', 'assert' or 'pragma'")

    # expressions: sum > product > unary > power > atom

    def expr(self) -> SeriesExpr:
        x = self.term()
        while self.at("OP", "+") or self.at("OP", "-"):
            op = self.next().text
            x = BinOp(op, x, self.term())
        return x

    def term(self) -> SeriesExpr:
        x = self.unary()
        while self.at("OP", "*") or self.at("OP", "/"):
            op = self.next().text
            x = BinOp(op, x, self.unary())
        return x

    def unary(self) -> SeriesExpr:
        if self.at("OP", "-"):
            self.next()
            return Neg(self.unary())
        if self.at("OP", "+"):
            self.next()
            return self.unary()
        return self.power()

    def power(self) -> SeriesExpr:
        base = self.atom()
        if self.at("OP", "^"):
            self.next()
            return Pow(base, self.exponent())
        return base

    def exponent(self) -> int:
        if self.at("OP", "("):
            self.next()
            e = self.exponent()
            self.expect("OP", ")")
            return e
        if self.at("OP", "-"):
            self.next()
            return -self.exponent()
        return int(self.expect("INT", what="an integer exponent").text)

    def int_arg(self, what: str) -> int:
        sign = 1
        if self.at("OP", "-"):
            self.next()
            sign = -1
        return sign * int(self.expect("INT", what=what).text)

    def atom(self) -> SeriesExpr:
        tok = self.tok
        if tok.kind == "INT":
            self.next()
            return Num(int(tok.text))
        if tok.kind == "ETA":
            self.next()
            return Eta(EtaExpr(1, 0, ((int(tok.text[1:]), 1),)))
        if self.at("OP", "("):
            self.next()
            x = self.expr()
            self.expect("OP", ")")
            return x
        if tok.kind == "NAME":
            word = tok.text
            if word == "q":
                self.next()
                return Eta(EtaExpr(1, 1, ()))
            if word in _THETA:
                self.next()
                self.expect("OP", "(")
                k = self.int_arg("a positive integer")
                self.expect("OP", ")")
                if k < 1:
                    raise ScriptError("theta argument must be positive", tok.line, tok.col)
                return ThetaAtom(_THETA[word], k)
            if word == "extract":
                self.next()
                self.expect("OP", "(")
                x = self.expr()
                self.expect("OP", ",")
                r = self.int_arg("a residue")
                self.expect("OP", ",")
                m = self.int_arg("a modulus")
                self.expect("OP", ")")
                if m < 1 or not 0 <= r < m:
                    raise ScriptError(f"extract needs 0 <= r < m, got r={r}, m={m}", tok.line, tok.col)
                return Extract(x, r, m)
            if word == "subq":
                self.next()
                self.expect("OP", "(")
                x = self.expr()
                self.expect("OP", ",")
                k = self.int_arg("a positive integer")
                self.expect("OP", ")")
                if k < 1:
                    raise ScriptError("subq exponent must be positive", tok.line, tok.col)
                return Subq(x, k)
            if word in KEYWORDS:
                self.error("unexpected keyword")
            if word not in self.known:
                raise ScriptError(f"name {word!r} used before definition", tok.line, tok.col)
            self.next()
            return Ref(word)
        self.error("expected an expression")


def _builtin_names() -> set[str]:
    from .expr import BUILTINS
    return set(BUILTINS)


def parse(text: str, name: str = "") -> Script:
    tokens = tokenize(text)
    return Script(tuple(_Parser(tokens, _builtin_names()).script()), name)


def parse_expr(text: str, names=()) -> SeriesExpr:
    """Parse a single expression; ``names`` lists extra defined references."""
    p = _Parser(tokenize(text), _builtin_names() | set(names))
    while p.at("NL") and p.i < len(p.toks) - 2:
        p.next()
    x = p.expr()
    while p.at("NL"):
        p.next()
    if not p.at("EOF"):
        p.error("unexpected trailing input")
    return x


def load(path) -> Script:
    path = Path(path)
    return parse(path.read_text(encoding="utf-8"), path.stem)


def format_statement(s: Statement) -> str:
    if isinstance(s, Let):
        return f"let {s.name} = {to_text(s.expr)}"
    if isinstance(s, Pragma):
        v = s.value if isinstance(s.value, int) or re.fullmatch(r"[A-Za-z_]\w*", s.value) else f'"{s.value}"'
        return f"pragma {s.key} = {v}"
    text = "assert " + " == ".join(to_text(x) for x in s.sides)
    if s.modulus:
        text += f" mod {s.modulus}"
    if s.order is not None:
        text += f" upto {s.order}"
    return text + f' as "{s.label}"'


def format_script(script: Script) -> str:
    return "".join(format_statement(s) + "\n" for s in script.statements)


# ---- interpreter ------------------------------------------------------------------

def check_chain(label: str, sides, modulus: int, order: int, evaluator: Evaluator) -> VerificationReport:
    """Evaluate every side to ``order`` and compare each one with the first."""
    start = time.perf_counter()
    values = [evaluator(x, order) for x in sides]
    worst = None
    for i, v in enumerate(values[1:], 1):
        bad = first_difference(values[0], v)
        if bad is not None and (worst is None or bad < worst[0]):
            worst = (bad, i)
    if worst is None:
        return VerificationReport(label, order, True, elapsed=time.perf_counter() - start)
    n, i = worst
    a, b = values[0][n], values[i][n]
    diff = (a - b) % modulus if modulus else a - b
    link = "" if len(values) == 2 else f" (side {i + 1} of {len(values)})"
    return VerificationReport(label, order, False, (n, diff), time.perf_counter() - start,
                              detail=f"coefficient of q^{n}: {a} vs {b}{link}")


def replay(script: Script, default_order: int | None = None) -> list[VerificationReport]:
    """Run a script top to bottom and return one report per assert."""
    if default_order is None:
        default_order = int(script.pragmas.get("order", 500))
    env: dict[str, SeriesExpr] = {}
    evaluators: dict[int, Evaluator] = {}
    reports = []
    for stmt in script.statements:
        if isinstance(stmt, Let):
            env[stmt.name] = stmt.expr
            for ev in evaluators.values():
                ev.bind(stmt.name, stmt.expr)
        elif isinstance(stmt, Assert):
            ev = evaluators.get(stmt.modulus)
            if ev is None:
                ev = evaluators[stmt.modulus] = Evaluator(stmt.modulus, env)
            order = stmt.order if stmt.order is not None else default_order
            try:
                reports.append(check_chain(stmt.label, stmt.sides, stmt.modulus, order, ev))
            except (EvalError, SeriesError) as exc:
                raise ScriptError(f"while checking {stmt.label!r}: {exc}", stmt.line, stmt.col) from None
    return reports
