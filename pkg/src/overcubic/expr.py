"""Expression trees over eta products and theta functions, and their evaluator."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Union

from . import eta as _eta
from .eta import Theta
from .series import Series, SeriesError, series_inv, series_pow, substitute_power


class EvalError(ValueError):
    pass


@dataclass(frozen=True)
class EtaExpr:
    """``coefficient * q^qshift * prod f_k^{e_k}``; ``factors`` is a sorted tuple of (k, e)."""
    coefficient: int = 1
    qshift: int = 0
    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        merged: dict[int, int] = {}
        for k, e in self.factors:
            if k < 1:
                raise ValueError(f"eta index must be positive, got {k}")
            merged[k] = merged.get(k, 0) + e
        clean = tuple(sorted((k, e) for k, e in merged.items() if e))
        object.__setattr__(self, "factors", clean)
        if self.qshift < 0:
            raise ValueError("negative q-shift")

    @classmethod
    def from_map(cls, factors: Mapping[int, int], coefficient: int = 1, qshift: int = 0) -> "EtaExpr":
        return cls(coefficient, qshift, tuple(factors.items()))

    @property
    def is_unit(self) -> bool:
        return self.coefficient in (1, -1) and self.qshift == 0

    def __mul__(self, other: "EtaExpr") -> "EtaExpr":
        return EtaExpr(self.coefficient * other.coefficient, self.qshift + other.qshift,
                       self.factors + other.factors)

    def __pow__(self, e: int) -> "EtaExpr":
        if e < 0 and not self.is_unit:
            raise ValueError("only unit eta expressions have negative powers")
        c = self.coefficient ** e if e >= 0 else self.coefficient ** (-e)
        return EtaExpr(c, self.qshift * e if e >= 0 else 0,
                       tuple((k, x * e) for k, x in self.factors))

    def evaluate(self, order: int, modulus: int = 0) -> Series:
        if self.coefficient == 0:
            return Series.constant(0, order, modulus)
        s = _eta.eta_product(self.factors, order, modulus)
        if self.coefficient != 1:
            s = s.scale(self.coefficient)
        return s.shift(self.qshift) if self.qshift else s


# ---- AST ------------------------------------------------------------------

@dataclass(frozen=True)
class Eta:
    eta: EtaExpr


@dataclass(frozen=True)
class ThetaAtom:
    kind: Theta
    k: int = 1


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Neg:
    arg: "SeriesExpr"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * /
    left: "SeriesExpr"
    right: "SeriesExpr"


@dataclass(frozen=True)
class Pow:
    base: "SeriesExpr"
    exponent: int


@dataclass(frozen=True)
class Subq:
    arg: "SeriesExpr"
    k: int


@dataclass(frozen=True)
class Extract:
    arg: "SeriesExpr"
    residue: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1 or not 0 <= self.residue < self.modulus:
            raise ValueError(f"extract needs 0 <= r < m, got r={self.residue}, m={self.modulus}")


@dataclass(frozen=True)
class Ref:
    name: str


SeriesExpr = Union[Eta, ThetaAtom, Num, Neg, BinOp, Pow, Subq, Extract, Ref]


def f(k: int, e: int = 1) -> Eta:
    return Eta(EtaExpr(1, 0, ((k, e),)))


Q = Eta(EtaExpr(1, 1, ()))


# ---- builtin named series ---------------------------------------------------

def _bt_product(order, modulus):
    return series_pow(_eta.overcubic_product(order, modulus), 3)


BUILTINS: dict[str, Callable[[int, int], Series]] = {
    "tsum": _eta.signed_square_sum,
    "ssum": _eta.square_sum,
    "dsum": _eta.signed_double_sum,
    "dsum_gt": lambda order, modulus=0: _eta.signed_double_sum(order, modulus, strict=True),
    "btprod": _bt_product,
}


# ---- folding ----------------------------------------------------------------

def fold(x: SeriesExpr) -> SeriesExpr:
    """Collapse products, quotients and powers of eta atoms into single atoms."""
    if isinstance(x, Num):
        return Eta(EtaExpr(x.value))
    if isinstance(x, Neg):
        a = fold(x.arg)
        if isinstance(a, Eta):
            e = a.eta
            return Eta(EtaExpr(-e.coefficient, e.qshift, e.factors))
        return Neg(a)
    if isinstance(x, BinOp):
        a, b = fold(x.left), fold(x.right)
        if isinstance(a, Eta) and isinstance(b, Eta):
            if x.op == "*":
                return Eta(a.eta * b.eta)
            if x.op == "/" and b.eta.is_unit:
                return Eta(a.eta * b.eta ** -1)
        return BinOp(x.op, a, b)
    if isinstance(x, Pow):
        a = fold(x.base)
        if isinstance(a, Eta) and (x.exponent >= 0 or a.eta.is_unit):
            return Eta(a.eta ** x.exponent)
        return Pow(a, x.exponent)
    if isinstance(x, Subq):
        return Subq(fold(x.arg), x.k)
    if isinstance(x, Extract):
        return Extract(fold(x.arg), x.residue, x.modulus)
    return x


# ---- evaluation -------------------------------------------------------------

class Evaluator:
    """Evaluates expressions in one ring, memoising named references by order.

    ``env`` maps names to expressions; lookups fall back to :data:`BUILTINS`.
    """

    def __init__(self, modulus: int = 0, env: Mapping[str, SeriesExpr] | None = None):
        self.modulus = modulus
        self.env = dict(env or {})
        self._folded: dict[str, SeriesExpr] = {}
        self._cache: dict[tuple[str, int], Series] = {}

    def bind(self, name: str, x: SeriesExpr):
        self.env[name] = x
        self._folded.pop(name, None)

    def ref(self, name: str, order: int) -> Series:
        key = (name, order)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        # a higher-order value already computed can be truncated
        for (n, o), s in self._cache.items():
            if n == name and o > order:
                return s.truncate(order)
        if name in self.env:
            if name not in self._folded:
                self._folded[name] = fold(self.env[name])
            value = self._eval(self._folded[name], order)
        elif name in BUILTINS:
            value = BUILTINS[name](order, self.modulus)
        else:
            raise EvalError(f"unresolved reference {name!r}")
        self._cache[key] = value
        return value

    def __call__(self, x: SeriesExpr, order: int) -> Series:
        return self._eval(fold(x), order)

    def _eval(self, x: SeriesExpr, order: int) -> Series:
        m = self.modulus
        if isinstance(x, Eta):
            return x.eta.evaluate(order, m)
        if isinstance(x, Num):
            return Series.constant(x.value, order, m)
        if isinstance(x, ThetaAtom):
            # exact expansion, then reduction
            return Series(_eta.theta_sum(x.kind, x.k, order).coeffs, order, m)
        if isinstance(x, Neg):
            return -self._eval(x.arg, order)
        if isinstance(x, BinOp):
            a = self._eval(x.left, order)
            b = self._eval(x.right, order)
            if x.op == "+":
                return a + b
            if x.op == "-":
                return a - b
            if x.op == "*":
                return a * b
            if x.op == "/":
                try:
                    return a * series_inv(b)
                except SeriesError as exc:
                    raise EvalError(f"division by a non-unit series: {exc}") from None
            raise EvalError(f"unknown operator {x.op!r}")
        if isinstance(x, Pow):
            try:
                return series_pow(self._eval(x.base, order), x.exponent)
            except SeriesError as exc:
                raise EvalError(f"negative power of a non-unit series: {exc}") from None
        if isinstance(x, Subq):
            inner = self._eval(x.arg, order // x.k)
            return substitute_power(inner, x.k, order)
        if isinstance(x, Extract):
            from .dissect import extract_progression
            inner = self._eval(x.arg, x.modulus * order + x.residue)
            return extract_progression(inner, x.residue, x.modulus)
        if isinstance(x, Ref):
            return self.ref(x.name, order)
        raise EvalError(f"not an expression node: {x!r}")


def eval_expr(x: SeriesExpr, order: int, modulus: int = 0,
              env: Mapping[str, SeriesExpr] | None = None) -> Series:
    return Evaluator(modulus, env)(x, order)


# ---- printing ----------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def _eta_text(e: EtaExpr) -> str:
    parts = []
    if e.coefficient != 1 or (not e.factors and not e.qshift):
        parts.append(str(e.coefficient))
    if e.qshift:
        parts.append("q" if e.qshift == 1 else f"q^{e.qshift}")
    for k, x in e.factors:
        parts.append(f"f{k}" if x == 1 else f"f{k}^{x}" if x > 0 else f"f{k}^({x})")
    return "*".join(parts)


def to_text(x: SeriesExpr) -> str:
    """Render an expression in the proof-script syntax."""
    return _text(x, 0)


def _text(x, prec):
    if isinstance(x, Eta):
        s = _eta_text(x.eta)
        simple = x.eta.coefficient >= 0 and s.count("*") == 0
        return s if simple or prec < 2 else f"({s})"
    if isinstance(x, Num):
        return str(x.value) if x.value >= 0 or prec == 0 else f"({x.value})"
    if isinstance(x, ThetaAtom):
        return f"{x.kind.value}({x.k})"
    if isinstance(x, Ref):
        return x.name
    if isinstance(x, Neg):
        s = "-" + _text(x.arg, 3)
        return s if prec == 0 else f"({s})"
    if isinstance(x, BinOp):
        p = _PREC[x.op]
        s = f"{_text(x.left, p)} {x.op} {_text(x.right, p + 1)}"
        return s if p >= prec else f"({s})"
    if isinstance(x, Pow):
        e = str(x.exponent) if x.exponent >= 0 else f"({x.exponent})"
        b = _text(x.base, 4)
        if isinstance(x.base, Pow) or (isinstance(x.base, Eta) and "^" in b and b[0] != "("):
            b = f"({b})"
        return f"{b}^{e}"
    if isinstance(x, Subq):
        return f"subq({to_text(x.arg)}, {x.k})"
    if isinstance(x, Extract):
        return f"extract({to_text(x.arg)}, {x.residue}, {x.modulus})"
    raise TypeError(f"not an expression node: {x!r}")
