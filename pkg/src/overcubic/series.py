"""Truncated formal power series over the integers and over Z/mZ.

A :class:`Series` stores the coefficients of ``q^0 .. q^order`` and is only
meaningful modulo ``q^(order+1)``.  Binary operations truncate to the smaller
order, so a result never claims more precision than its inputs carry.

Multiplication uses Kronecker substitution: both operands are packed into
one big integer, multiplied with GMP, and unpacked.  That keeps plain O(N^2)
semantics but moves the inner loop out of Python.
"""
from __future__ import annotations

from typing import Iterable, Sequence

import gmpy2


class SeriesError(ValueError):
    """Raised on ring mismatches, non-units and out-of-range access."""


class Series:
    __slots__ = ("coeffs", "order", "modulus")

    def __init__(self, coeffs: Iterable[int], order: int | None = None, modulus: int = 0):
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise SeriesError("order must be non-negative")
        if modulus < 0:
            raise SeriesError("modulus must be non-negative")
        if len(coeffs) > order + 1:
            del coeffs[order + 1:]
        elif len(coeffs) < order + 1:
            coeffs.extend([0] * (order + 1 - len(coeffs)))
        if modulus:
            coeffs = [c % modulus for c in coeffs]
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "modulus", modulus)

    def __setattr__(self, name, value):
        raise AttributeError("Series is immutable")

    @classmethod
    def constant(cls, c: int, order: int, modulus: int = 0) -> "Series":
        return cls([c], order, modulus)

    @classmethod
    def monomial(cls, c: int, k: int, order: int, modulus: int = 0) -> "Series":
        coeffs = [0] * (order + 1)
        if k <= order:
            coeffs[k] = c
        return cls(coeffs, order, modulus)

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:8])
        more = ", ..." if self.order >= 8 else ""
        ring = f", mod {self.modulus}" if self.modulus else ""
        return f"Series([{head}{more}], order={self.order}{ring})"

    def __str__(self):
        terms = []
        for n, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if n == 0:
                terms.append(str(c))
            else:
                mono = "q" if n == 1 else f"q^{n}"
                terms.append(mono if c == 1 else f"{c}*{mono}")
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O(q^{self.order + 1})"

    def __len__(self):
        return self.order + 1

    def __getitem__(self, n):
        return self.coeffs[n]

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return (self.order, self.modulus, self.coeffs) == (other.order, other.modulus, other.coeffs)

    def __hash__(self):
        return hash((self.order, self.modulus, self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def truncate(self, order: int) -> "Series":
        if order > self.order:
            raise SeriesError(f"cannot raise order {self.order} to {order}")
        if order == self.order:
            return self
        return Series(self.coeffs[: order + 1], order, self.modulus)

    def _check_ring(self, other: "Series"):
        if self.modulus != other.modulus:
            raise SeriesError(f"modulus mismatch: {self.modulus} vs {other.modulus}")

    def _coerce(self, other) -> "Series":
        if isinstance(other, int):
            return Series.constant(other, self.order, self.modulus)
        if isinstance(other, Series):
            self._check_ring(other)
            return other
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = min(self.order, other.order)
        return Series([a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs)], n, self.modulus)

    __radd__ = __add__

    def __neg__(self):
        return Series([-c for c in self.coeffs], self.order, self.modulus)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = min(self.order, other.order)
        return Series([a - b for a, b in zip(self.coeffs[: n + 1], other.coeffs)], n, self.modulus)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, Series):
            return NotImplemented
        return series_mul(self, other)

    __rmul__ = __mul__

    def scale(self, c: int) -> "Series":
        return Series([c * a for a in self.coeffs], self.order, self.modulus)

    def __truediv__(self, other):
        if isinstance(other, int):
            other = Series.constant(other, self.order, self.modulus)
        if not isinstance(other, Series):
            return NotImplemented
        return series_mul(self, series_inv(other))

    def __pow__(self, e: int):
        return series_pow(self, e)

    def shift(self, s: int) -> "Series":
        """Multiply by q^s, keeping the same order."""
        if s < 0:
            raise SeriesError("negative shifts would need Laurent series")
        if s == 0:
            return self
        return Series([0] * s + list(self.coeffs[: self.order + 1 - s]), self.order, self.modulus)


def _bits(coeffs: Sequence[int]) -> int:
    return max((abs(c).bit_length() for c in coeffs), default=0)


def _pack(coeffs: Sequence[int], width: int) -> int:
    """Pack non-negative ``coeffs`` into one integer, ``width`` bytes per slot."""
    buf = bytearray(len(coeffs) * width)
    for i, c in enumerate(coeffs):
        if c:
            buf[i * width:(i + 1) * width] = c.to_bytes(width, "little")
    return int.from_bytes(buf, "little")


def _unpack(value: int, width: int, count: int) -> list[int]:
    value &= (1 << (8 * width * count)) - 1
    raw = value.to_bytes(count * width, "little")
    return [int.from_bytes(raw[i * width:(i + 1) * width], "little") for i in range(count)]


def _convolve(a: Sequence[int], b: Sequence[int], n: int, modulus: int) -> list[int]:
    """Coefficients 0..n of the product of two coefficient lists."""
    a = a[: n + 1]
    b = b[: n + 1]
    terms = min(len(a), len(b))
    if modulus:
        bits = 2 * (modulus - 1).bit_length() + terms.bit_length() + 1
        width = (bits + 7) // 8
        prod = int(gmpy2.mpz(_pack(a, width)) * gmpy2.mpz(_pack(b, width)))
        return [c % modulus for c in _unpack(prod, width, n + 1)]
    # signed digits: a bias of 2^(w-1) per slot keeps every digit non-negative
    bits = _bits(a) + _bits(b) + terms.bit_length() + 2
    width = (bits + 7) // 8
    half = 1 << (8 * width - 1)

    def signed_pack(cs):
        pos = _pack([c if c > 0 else 0 for c in cs], width)
        neg = _pack([-c if c < 0 else 0 for c in cs], width)
        return gmpy2.mpz(pos - neg)

    bias = _pack([half] * (n + 1), width)
    prod = int(signed_pack(a) * signed_pack(b)) + bias
    return [d - half for d in _unpack(prod, width, n + 1)]


def series_add(a: Series, b: Series) -> Series:
    a._check_ring(b)
    return a + b


def series_mul(a: Series, b: Series) -> Series:
    a._check_ring(b)
    n = min(a.order, b.order)
    return Series(_convolve(a.coeffs, b.coeffs, n, a.modulus), n, a.modulus)


def _unit_inverse(c: int, modulus: int) -> int:
    if modulus:
        try:
            return pow(c, -1, modulus)
        except ValueError:
            raise SeriesError(f"constant term {c} is not a unit mod {modulus}") from None
    if c not in (1, -1):
        raise SeriesError(f"constant term {c} is not a unit in Z")
    return c


def series_inv(a: Series) -> Series:
    """Multiplicative inverse by Newton iteration, g <- g*(2 - a*g)."""
    m = a.modulus
    g = [_unit_inverse(a.coeffs[0], m)]
    prec = 1
    while prec <= a.order:
        prec = min(2 * prec, a.order + 1)
        ag = _convolve(a.coeffs, g, prec - 1, m)
        corr = [-c for c in ag]
        corr[0] += 2
        if m:
            corr = [c % m for c in corr]
        g = _convolve(g, corr, prec - 1, m)
    return Series(g, a.order, m)


def series_pow(a: Series, e: int) -> Series:
    if e < 0:
        a = series_inv(a)
        e = -e
    result = Series.constant(1, a.order, a.modulus)
    base = a
    while e:
        if e & 1:
            result = series_mul(result, base)
        e >>= 1
        if e:
            base = series_mul(base, base)
    return result


def substitute_power(a: Series, k: int, order: int | None = None) -> Series:
    """Return a(q^k).

    The result is known up to ``k*(a.order+1) - 1``; ``order`` caps it at the
    caller's working order.
    """
    if k < 1:
        raise SeriesError("substitution exponent must be positive")
    valid = k * (a.order + 1) - 1
    if order is None:
        order = valid
    elif order > valid:
        raise SeriesError(f"a(q^{k}) is only valid to order {valid}, asked for {order}")
    coeffs = [0] * (order + 1)
    for n in range(order // k + 1):
        coeffs[k * n] = a.coeffs[n]
    return Series(coeffs, order, a.modulus)


def reduce_mod(a: Series, m: int) -> Series:
    if m <= 0:
        raise SeriesError("modulus must be positive")
    if a.modulus and a.modulus % m:
        raise SeriesError(f"{m} does not divide existing modulus {a.modulus}")
    return Series(a.coeffs, a.order, m)


def coeff(a: Series, n: int) -> int:
    if not 0 <= n <= a.order:
        raise SeriesError(f"index {n} outside 0..{a.order}")
    return a.coeffs[n]


def first_difference(a: Series, b: Series) -> int | None:
    """Smallest exponent where ``a`` and ``b`` disagree, or None."""
    a._check_ring(b)
    for n, (x, y) in enumerate(zip(a.coeffs, b.coeffs)):
        if x != y:
            return n
    return None
