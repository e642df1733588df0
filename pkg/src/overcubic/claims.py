"""bt(n) tables and the catalogue of congruences they are checked against."""
from __future__ import annotations

import enum
import hashlib
import json
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Optional

from .expr import EtaExpr
from .report import VerificationReport

TABLE_FORMAT = "overcubic-bt-table"
TABLE_VERSION = 1
DEFAULT_MODULUS = 384  # 2^7 * 3, a multiple of every modulus in the catalogue

BT_ETA = EtaExpr(1, 0, ((1, -6), (2, -3), (4, 3)))


class Kind(enum.Enum):
    VANISHING = "vanishing"
    EQUIVALENCE = "equivalence"


class ClaimError(ValueError):
    pass


class TableFormatError(ValueError):
    pass


@dataclass(frozen=True)
class ClaimSpec:
    """bt(2^alpha (a n + b)) == 0, or == sign * bt(a' n + b'), modulo ``modulus``.

    ``alpha`` ranges over every value the table reaches when ``alpha_family``
    is set and is fixed at 0 otherwise.
    """
    id: str
    kind: Kind
    a: int
    b: int
    modulus: int
    alpha_family: bool = False
    rhs: Optional[tuple[int, int, int]] = None
    paper_ref: str = ""

    def __post_init__(self):
        if self.a < 1 or self.b < 0:
            raise ClaimError(f"{self.id}: bad progression {self.a}n+{self.b}")
        if self.modulus < 2:
            raise ClaimError(f"{self.id}: modulus must be at least 2")
        if (self.kind is Kind.EQUIVALENCE) != (self.rhs is not None):
            raise ClaimError(f"{self.id}: only equivalence claims carry a right-hand progression")
        if self.rhs is not None and self.rhs[2] not in (1, -1):
            raise ClaimError(f"{self.id}: sign must be +1 or -1")

    def describe(self) -> str:
        arg = f"{self.a}n+{self.b}" if self.b else f"{self.a}n"
        arg = f"2^a({arg})" if self.alpha_family else arg
        if self.kind is Kind.VANISHING:
            return f"bt({arg}) = 0 mod {self.modulus}"
        a2, b2, sign = self.rhs
        arg2 = f"{a2}n+{b2}" if b2 else f"{a2}n"
        return f"bt({arg}) = {'-' if sign < 0 else ''}bt({arg2}) mod {self.modulus}"

    def arguments(self, limit: int) -> Iterator[tuple[int, Optional[int]]]:
        """Pairs (argument, partner argument) with both at most ``limit``, ascending."""
        pairs = []
        alpha = 0
        while True:
            scale = 2 ** alpha
            if scale * self.b > limit or (self.b == 0 and scale * self.a > limit and alpha):
                break
            n = 0
            while scale * (self.a * n + self.b) <= limit:
                arg = scale * (self.a * n + self.b)
                if self.rhs is None:
                    pairs.append((arg, None))
                else:
                    other = self.rhs[0] * n + self.rhs[1]
                    if other <= limit:
                        pairs.append((arg, other))
                n += 1
            if not self.alpha_family:
                break
            alpha += 1
        return iter(sorted(set(pairs)))


def _c(id, a, b, mod, alpha=False, ref=""):
    return ClaimSpec(id, Kind.VANISHING, a, b, mod, alpha, None, ref or f"Eq. ({id})")


def _e(id, a, b, rhs, mod, alpha=False, ref=""):
    return ClaimSpec(id, Kind.EQUIVALENCE, a, b, mod, alpha, rhs, ref or f"Eq. ({id})")


_CATALOG = [
    # Nayaka, Dharmendra and Kumar
    _c("nayaka-1", 8, 5, 8, ref="Nayaka et al., bt(8n+5) mod 8"),
    _c("nayaka-2", 16, 10, 16, ref="Nayaka et al., bt(16n+10) mod 16"),
    _c("nayaka-3", 8, 7, 32, ref="Nayaka et al., bt(8n+7) mod 32"),
    # Saikia and Sarma
    _c("v-1", 8, 7, 64),
    _c("v-2", 16, 14, 64),
    _c("v-3", 32, 28, 64),
    _c("v-4", 72, 21, 128),
    _c("v-5", 72, 69, 384),
    # the two open congruence families
    _c("1-2", 8, 7, 64, alpha=True, ref="Conjecture 1.1, Eq. (1-2)"),
    _c("1-3", 144, 42, 384, ref="Conjecture 1.2, Eq. (1-3)"),
    _c("1-4", 72, 21, 128, alpha=True, ref="Conjecture 1.2, Eq. (1-4)"),
    _c("1-5", 72, 69, 128, alpha=True, ref="Conjecture 1.2, Eq. (1-5)"),
    # intermediate steps towards the 8n+7 family
    _e("3-13", 16, 0, (8, 0, 1), 64),
    _e("3-14", 8, 0, (8, 0, 1), 64, alpha=True),
    _c("3-16", 64, 56, 64),
    _c("3-17", 64, 56, 64, alpha=True),
    # intermediate steps towards the 72n+21 and 72n+69 families
    _e("4-1", 16, 0, (16, 0, 1), 128, alpha=True),
    _e("4-8", 32, 0, (16, 0, 1), 128),
    _c("4-16", 144, 42, 128),
    _c("9n+6", 9, 6, 3, ref="unnumbered congruence after Eq. (4-19)"),
    _e("4-23", 32, 20, (16, 10, -1), 128),
    _c("4-24", 288, 84, 128),
    _e("4-27", 64, 40, (16, 10, -1), 128),
    _c("4-28", 576, 168, 128),
    _e("4-33", 128, 80, (16, 10, -1), 128),
    _c("4-34", 1152, 336, 128),
    _c("4-35", 1152, 336, 128, alpha=True, ref="Eq. (4-35), 2^k(72n+21) for k >= 4"),
    _c("4-36", 144, 138, 128),
    _c("4-37", 288, 276, 128),
    _c("4-38", 576, 552, 128),
    _c("4-39", 1152, 1104, 128),
    _c("4-40", 1152, 1104, 128, alpha=True, ref="Eq. (4-40), 2^k(72n+69) for k >= 4"),
]


def builtin_claims() -> list[ClaimSpec]:
    return list(_CATALOG)


def get_claim(id: str) -> ClaimSpec:
    for c in _CATALOG:
        if c.id == id:
            return c
    raise KeyError(id)


@dataclass(frozen=True)
class BtTable:
    limit: int
    modulus: int
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != self.limit + 1:
            raise TableFormatError(f"expected {self.limit + 1} values, got {len(self.values)}")

    def __getitem__(self, n: int) -> int:
        return self.values[n]

    def serves(self, modulus: int) -> bool:
        return self.modulus == 0 or self.modulus % modulus == 0


def bt_table(limit: int, modulus: int = DEFAULT_MODULUS) -> BtTable:
    if limit < 0:
        raise ValueError("limit must be non-negative")
    s = BT_ETA.evaluate(limit, modulus)
    return BtTable(limit, modulus, s.coeffs)


def verify_claim(claim: ClaimSpec, limit: int, table: BtTable | None = None) -> VerificationReport:
    """Scan every argument up to ``limit``; stop at the smallest failure."""
    start = time.perf_counter()
    if table is None:
        table = bt_table(limit, claim.modulus)
    if table.limit < limit:
        raise ClaimError(f"table reaches {table.limit}, claim {claim.id} needs {limit}")
    if not table.serves(claim.modulus):
        raise ClaimError(f"table modulus {table.modulus} is not a multiple of {claim.modulus}")
    m = claim.modulus
    sign = claim.rhs[2] if claim.rhs else 0
    for arg, other in claim.arguments(limit):
        value = table[arg] if other is None else table[arg] - sign * table[other]
        if value % m:
            return VerificationReport(claim.id, limit, False, (arg, value % m),
                                      time.perf_counter() - start, detail=claim.describe())
    return VerificationReport(claim.id, limit, True, elapsed=time.perf_counter() - start,
                              detail=claim.describe())


# ---- table files ---------------------------------------------------------------
#
# line 1: JSON header {"format", "version", "N", "modulus", "sha256"}
# lines 2..N+2: bt(0) .. bt(N), one decimal integer per line
# sha256 is taken over the payload lines joined with "\n" plus a final "\n".

def _payload(values) -> str:
    return "".join(f"{v}\n" for v in values)


def save_table(table: BtTable, path) -> None:
    payload = _payload(table.values)
    header = {
        "format": TABLE_FORMAT,
        "version": TABLE_VERSION,
        "N": table.limit,
        "modulus": table.modulus,
        "sha256": hashlib.sha256(payload.encode()).hexdigest(),
    }
    Path(path).write_text(json.dumps(header, sort_keys=True) + "\n" + payload, encoding="utf-8")


def load_table(path) -> BtTable:
    text = Path(path).read_text(encoding="utf-8")
    head, sep, payload = text.partition("\n")
    try:
        header = json.loads(head)
    except json.JSONDecodeError as exc:
        raise TableFormatError(f"{path}: bad header: {exc}") from None
    if not isinstance(header, dict) or header.get("format") != TABLE_FORMAT:
        raise TableFormatError(f"{path}: not a bt table")
    if header.get("version") != TABLE_VERSION:
        raise TableFormatError(f"{path}: unsupported version {header.get('version')!r}")
    try:
        limit, modulus, digest = int(header["N"]), int(header["modulus"]), str(header["sha256"])
    except (KeyError, TypeError, ValueError):
        raise TableFormatError(f"{path}: incomplete header") from None
    lines = payload.splitlines()
    if len(lines) != limit + 1:
        raise TableFormatError(f"{path}: expected {limit + 1} values, found {len(lines)}")
    if hashlib.sha256(payload.encode()).hexdigest() != digest:
        raise TableFormatError(f"{path}: checksum mismatch")
    try:
        values = tuple(int(x) for x in lines)
    except ValueError:
        raise TableFormatError(f"{path}: non-integer entry") from None
    return BtTable(limit, modulus, values)
