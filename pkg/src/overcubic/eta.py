"""Eta products f_k, Ramanujan's theta functions and a few lattice sums.

``f_k = prod_{n>=1} (1 - q^{nk})`` is built from Euler's pentagonal series and
then powered.  The theta expansions here are direct sums over squares and
triangular numbers and never touch the eta machinery, so they serve as an
independent check on the eta-quotient forms of phi and psi.
"""
from __future__ import annotations

import enum
from functools import lru_cache
from math import isqrt

from .series import Series, SeriesError, series_pow, substitute_power


class Theta(enum.Enum):
    PHI = "phi"          # phi(q^k)
    PHI_NEG = "phineg"   # phi(-q^k)
    PSI = "psi"          # psi(q^k)


def pentagonal_series(order: int, modulus: int = 0) -> Series:
    """f_1 to the given order: sum of (-1)^j q^{j(3j-1)/2} over all integers j."""
    coeffs = [0] * (order + 1)
    j = 0
    while True:
        hit = False
        for s in ((0,) if j == 0 else (j, -j)):
            e = s * (3 * s - 1) // 2
            if e <= order:
                coeffs[e] = -1 if j % 2 else 1
                hit = True
        if not hit:
            break
        j += 1
    return Series(coeffs, order, modulus)


@lru_cache(maxsize=256)
def _f1_power(e: int, order: int, modulus: int) -> Series:
    if e == 1:
        return pentagonal_series(order, modulus)
    if e == -1 or e == 0:
        return series_pow(pentagonal_series(order, modulus), e)
    # reuse smaller powers when the halves are already cached
    half = e // 2 if e > 0 else -((-e) // 2)
    left = _f1_power(half, order, modulus)
    rest = e - 2 * half
    out = left * left
    if rest:
        out = out * _f1_power(rest, order, modulus)
    return out


def eta_power(k: int, e: int, order: int, modulus: int = 0) -> Series:
    """Expansion of f_k^e to ``order``."""
    if k < 1:
        raise SeriesError("eta index must be positive")
    if order < 0:
        raise SeriesError("order must be non-negative")
    if e == 0:
        return Series.constant(1, order, modulus)
    base = _f1_power(e, order // k, modulus)
    return base if k == 1 else substitute_power(base, k, order)


def eta_product(factors, order: int, modulus: int = 0) -> Series:
    """Product of f_k^{e_k} over ``factors`` (pairs or a mapping)."""
    items = factors.items() if hasattr(factors, "items") else factors
    result = Series.constant(1, order, modulus)
    for k, e in sorted(items):
        result = result * eta_power(k, e, order, modulus)
    return result


def theta_sum(kind: Theta | str, k: int, order: int, modulus: int = 0) -> Series:
    """phi(q^k), phi(-q^k) or psi(q^k) summed directly over its exponents."""
    kind = Theta(kind)
    if k < 1:
        raise SeriesError("theta argument exponent must be positive")
    coeffs = [0] * (order + 1)
    if kind is Theta.PSI:
        n = 0
        while k * n * (n + 1) // 2 <= order:
            coeffs[k * n * (n + 1) // 2] += 1
            n += 1
    else:
        coeffs[0] = 1
        n = 1
        while k * n * n <= order:
            sign = -1 if kind is Theta.PHI_NEG and n % 2 else 1
            coeffs[k * n * n] += 2 * sign
            n += 1
    return Series(coeffs, order, modulus)


# lattice sums that appear in the mod 8 expansion of f_2/f_1^2

def signed_square_sum(order: int, modulus: int = 0) -> Series:
    """sum_{n>=1} (-1)^n q^{n^2}"""
    coeffs = [0] * (order + 1)
    for n in range(1, isqrt(order) + 1):
        coeffs[n * n] = -1 if n % 2 else 1
    return Series(coeffs, order, modulus)


def square_sum(order: int, modulus: int = 0) -> Series:
    """sum_{n>=1} q^{n^2}"""
    coeffs = [0] * (order + 1)
    for n in range(1, isqrt(order) + 1):
        coeffs[n * n] = 1
    return Series(coeffs, order, modulus)


def signed_double_sum(order: int, modulus: int = 0, strict: bool = False) -> Series:
    """sum over m, n >= 1 of (-1)^{m+n} q^{m^2+n^2}; with ``strict`` only m > n."""
    coeffs = [0] * (order + 1)
    top = isqrt(order)
    for m in range(1, top + 1):
        for n in range(1, top + 1):
            if strict and m <= n:
                continue
            e = m * m + n * n
            if e <= order:
                coeffs[e] += -1 if (m + n) % 2 else 1
    return Series(coeffs, order, modulus)


def overcubic_product(order: int, modulus: int = 0) -> Series:
    """Generating function of overcubic partitions, multiplied out factor by factor.

    Each odd part size contributes (1+q^n)/(1-q^n); each even size comes in two
    colours and contributes that factor squared.
    """
    coeffs = [0] * (order + 1)
    coeffs[0] = 1
    for n in range(1, order + 1):
        for _ in range(1 if n % 2 else 2):
            # multiply by 1 + q^n
            for i in range(order, n - 1, -1):
                coeffs[i] += coeffs[i - n]
            # divide by 1 - q^n
            for i in range(n, order + 1):
                coeffs[i] += coeffs[i - n]
            if modulus:
                coeffs = [c % modulus for c in coeffs]
    return Series(coeffs, order, modulus)
