"""Progression extraction, its inverse, and the binomial congruence for eta powers."""
from __future__ import annotations

import time
from typing import Sequence

import gmpy2

from .eta import eta_power
from .report import VerificationReport
from .series import Series, SeriesError, first_difference


def extract_progression(a: Series, r: int, m: int) -> Series:
    """Coefficients of ``a`` along m*n + r, re-indexed by n.

    The result is valid to floor((a.order - r) / m).
    """
    if m < 1:
        raise SeriesError("progression modulus must be positive")
    if not 0 <= r < m:
        raise SeriesError(f"residue {r} outside 0..{m - 1}")
    if a.order < r:
        raise SeriesError(f"series of order {a.order} has no coefficient at {r}")
    return Series(a.coeffs[r::m], (a.order - r) // m, a.modulus)


def dissect(a: Series, m: int) -> list[Series]:
    return [extract_progression(a, r, m) for r in range(min(m, a.order + 1))]


def reconstruct(parts: Sequence[Series], m: int, order: int | None = None) -> Series:
    """Sum of q^r * parts[r](q^m); the inverse of :func:`dissect`."""
    if len(parts) != m:
        raise SeriesError(f"expected {m} parts, got {len(parts)}")
    moduli = {p.modulus for p in parts}
    if len(moduli) != 1:
        raise SeriesError("parts live in different rings")
    valid = min(m * (p.order + 1) + r - 1 for r, p in enumerate(parts))
    if order is None:
        order = valid
    elif order > valid:
        raise SeriesError(f"parts only determine the series to order {valid}")
    coeffs = [0] * (order + 1)
    for r, p in enumerate(parts):
        for n, c in enumerate(p.coeffs):
            e = m * n + r
            if e > order:
                break
            coeffs[e] = c
    return Series(coeffs, order, moduli.pop())


def binomial_reduce_check(m: int, p: int, k: int, order: int) -> VerificationReport:
    """Check f_m^{p^k} == f_{mp}^{p^{k-1}} (mod p^k) through ``order``."""
    if not gmpy2.is_prime(p):
        raise ValueError(f"{p} is not prime")
    if m < 1 or k < 1:
        raise ValueError("m and k must be positive")
    start = time.perf_counter()
    mod = p ** k
    lhs = eta_power(m, p ** k, order, mod)
    rhs = eta_power(m * p, p ** (k - 1), order, mod)
    bad = first_difference(lhs, rhs)
    counter = None if bad is None else (bad, (lhs[bad] - rhs[bad]) % mod)
    return VerificationReport(
        id=f"2-9[m={m},p={p},k={k}]",
        range_checked=order,
        passed=bad is None,
        counterexample=counter,
        elapsed=time.perf_counter() - start,
    )
