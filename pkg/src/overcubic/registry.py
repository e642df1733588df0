"""Every displayed identity and congruence of the overcubic-triple proofs.

Each record holds the display as proof-script text.  ``sides`` lists the
display left to right, so a chained display ``A == B == C`` is checked link
by link.  ``BT`` denotes f4^3/(f1^6 f2^3), the generating function of bt(n).
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import cached_property

from .expr import Evaluator, SeriesExpr, to_text
from .proofscript import check_chain, parse_expr
from .report import VerificationReport

BT_TEXT = "f4^3/(f1^6*f2^3)"
ENV_TEXT = {"BT": BT_TEXT}


@dataclass(frozen=True)
class IdentityRecord:
    id: str
    texts: tuple[str, ...]
    modulus: int
    paper_ref: str
    note: str = field(default="", compare=False)

    @cached_property
    def sides(self) -> tuple[SeriesExpr, ...]:
        return tuple(parse_expr(t, ENV_TEXT) for t in self.texts)

    @property
    def lhs(self) -> SeriesExpr:
        return self.sides[0]

    @property
    def rhs(self) -> SeriesExpr:
        return self.sides[-1]

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "lhs": to_text(self.lhs),
            "rhs": to_text(self.rhs),
            "chain": [to_text(x) for x in self.sides],
            "modulus": self.modulus,
            "citation": self.paper_ref,
        }


def _r(id, *texts, mod=0, ref="", note=""):
    return IdentityRecord(id, tuple(" ".join(t.split()) for t in texts), mod, ref or f"Eq. ({id})", note)


# shorthand used in many displays
I4 = "(1/f1^4)"
I2 = "(1/f1^2)"

_RECORDS = [
    # generating function and its rewriting
    _r("1-1", "btprod", BT_TEXT,
       ref="Eq. (1-1)", note="product over part sizes vs eta quotient"),
    _r("2-5", BT_TEXT, f"f4^3/f2^3 * {I4} * {I2}"),
    # 2-dissections
    _r("2-6", "1/f1^2", "f8^5/(f2^5*f16^2) + 2*q*f4^2*f16^2/(f2^5*f8)"),
    _r("2-7", "1/f1^4", "f4^14/(f2^14*f8^4) + 4*q*f4^2*f8^4/f2^10"),
    _r("2-8", "extract(BT, 0, 2)",
       f"8*q*f2^7*f4^3*f8^2 * {I4}^4 * {I2} + f2^17*f4/f8^2 * {I4}^5 * {I2}"),
    _r("2-1", "extract(BT, 0, 4)",
       f"""32*q*f2^47/(f4*f8^2) * {I4}^12 * {I2}
         + 56*q*f2^61*f8^2/f4^15 * {I4}^13 * {I2}
         + f2^71/(f4^17*f8^2) * {I4}^14 * {I2}""", mod=128),
    _r("2-2", "extract(BT, 0, 8)",
       f"""32*q*f2^169*f8^2/f4^51 * {I4}^31 * {I2}
         + 16*q*f2^155/(f4^37*f8^2) * {I4}^30 * {I2}
         + f2^179/(f4^53*f8^2) * {I4}^32 * {I2}""", mod=128),
    _r("2-3", "extract(BT, 0, 16)",
       f"""96*q*f2^385*f8^2/f4^123 * {I4}^67 * {I2}
         + f2^395/(f4^125*f8^2) * {I4}^68 * {I2}""", mod=128),
    _r("2-4", "extract(BT, 0, 32)",
       f"""96*q*f2^803/(f4^253*f8^2) * {I4}^138 * {I2}
         + 96*q*f2^817*f8^2/f4^267 * {I4}^139 * {I2}
         + f2^827/(f4^269*f8^2) * {I4}^140 * {I2}""", mod=128),
    # theta functions
    _r("3-3", "phi(1)", "f2^5/(f1^2*f4^2)"),
    _r("3-4", "psi(1)", "f2^2/f1"),
    _r("3-5", "phineg(1)", "f1^2/f2", "1 + 2*tsum"),
    _r("3-10", "phi(1) + phineg(1)", "2*phi(4)", ref="Eq. (3-10); Berndt, Entry 25"),
    _r("3-11", "phi(1) - phineg(1)", "4*q*psi(8)", ref="Eq. (3-11); Berndt, Entry 25"),
    _r("4-5", "phi(1)^2 - phineg(1)^2", "8*q*psi(4)^2", ref="Eq. (4-5); Berndt, Entry 25"),
    _r("a-1", "phi(1)^2 + phineg(1)^2", "2*phi(2)^2", ref="Eq. (a-1); Berndt, Entry 25"),
    _r("4-6", "psi(1)^2", "phi(1)*psi(2)"),
    _r("3-12-i", "psi(4)^2", "phi(4)*psi(8)", ref="first inline result after Eq. (3-12)"),
    _r("3-12-ii", "psi(8)^2", "psi(16)", mod=2, ref="second inline result after Eq. (3-12); also after Eq. (4-7)"),
    _r("3-2", "dsum", "tsum^2", "2*dsum_gt + subq(ssum, 2)"),
    # the 2^a(8n+7) family
    _r("3-1", "extract(BT, 0, 16) - extract(BT, 0, 8)",
       "-16*q*f2^15/(f1^2*f4) + f2^11*f4^3/(f1^18*f8^2) - f4^11/(f1^2*f2^13*f8^2)",
       "f2^3*f4^3/(f1^2*f8^2) * (-16*q*f8^4/f4^2 + f2^8/f1^16 - f4^8/f2^16)", mod=64),
    _r("3-6", "f2/f1^2", "1 - 2*tsum + 4*dsum", "1 - 2*tsum + 4*subq(ssum, 2)", mod=8,
       note="the geometric-series line is a derivation device and is not checked"),
    _r("3-7", "f2^8/f1^16",
       "1 + 48*tsum + 32*subq(ssum, 2) + 48*tsum^2 + 32*tsum^4",
       "1 + 48*tsum + 32*subq(ssum, 2) + 48*tsum^2 + 32*subq(ssum, 4)",
       "1 + 24*(phineg(1) - 1) + 16*(phi(2) - 1) + 12*(phineg(1) - 1)^2 + 16*(phi(4) - 1)",
       "21 + 12*phineg(1)^2 + 16*phi(2) + 16*phi(4)", mod=64),
    _r("3-8", "f4^8/f2^16", "21 + 12*phineg(2)^2 + 16*phi(4) + 16*phi(8)", mod=64),
    _r("3-9", "-16*q*f8^4/f4^2 + f2^8/f1^16 - f4^8/f2^16",
       "-16*q*psi(4)^2 + 16*phi(2) - 16*phi(8) + 12*phineg(1)^2 - 12*phineg(2)^2", mod=64),
    _r("3-12",
       "-16*q*psi(4)^2 + 12*phineg(1)^2 - 12*phineg(2)^2 + 16*(phi(2) - phi(8))",
       "-16*q*psi(4)^2 + 12*phineg(1)*(phineg(1) - phi(1)) + 16*(phi(2) - phi(8))",
       "-16*q*psi(4)^2 - 48*q*phineg(1)*psi(8) + 32*q^2*psi(16)",
       "-16*q*psi(4)^2 - 48*q*(phi(4) - 2*q*psi(8))*psi(8) + 32*q^2*psi(16)",
       "0", mod=64),
    _r("3-15", "extract(BT, 8, 16)",
       f"""48*f2^383/(f4^117*f8^2) * {I4}^67 * {I2}
         + 2*f2^397*f8^2/f4^131 * {I4}^68 * {I2}""", mod=128),
    _r("u-32n+24", "extract(BT, 24, 32)",
       "36*f2^823*f8^2/(f1^560*f4^271) + 32*f2^809/(f1^556*f4^257*f8^2)",
       "4*f4^2/f2 * f8^2/f4", mod=64, ref="unnumbered display for bt(32n+24) before Eq. (3-16)"),
    # the 72n+21 and 72n+69 families: powers of two
    _r("4-2", "extract(BT, 0, 32) - extract(BT, 0, 16)",
       "f2^43/(f1^18*f4^13*f8^2) * (96*q*f8^4/f4^2 + f2^16/f1^32 - f4^16/f2^32)", mod=128),
    _r("4-3", "f2^16/f1^32",
       "57 + 120*phineg(1)^2 + 32*phi(2) + 32*phi(4) + 16*phineg(1)^4", mod=128),
    _r("4-4", "f4^16/f2^32",
       "57 + 120*phineg(2)^2 + 32*phi(4) + 32*phi(8) + 16*phineg(2)^4", mod=128),
    _r("4-7", "96*q*f8^4/f4^2 + f2^16/f1^32 - f4^16/f2^32",
       """96*q*psi(4)^2 + 120*(phineg(1)^2 - phineg(2)^2) + 32*(phi(2) - phi(8))
          + 16*(phineg(1)^4 - phineg(2)^4)""",
       """96*q*psi(4)^2 + 120*phineg(1)*(phineg(1) - phi(1)) + 32*(phi(2) - phi(8))
          + 16*phineg(1)^2*(phineg(1)^2 - phi(1)^2)""",
       "96*q*psi(4)^2 - 480*q*phineg(1)*psi(8) + 64*q^2*psi(16) - 128*phineg(1)^2*psi(4)^2",
       """96*q*psi(4)^2 - 480*q*(phi(4) - 2*q*psi(8))*psi(8) + 64*q^2*psi(16)
          - 128*phineg(1)^2*psi(4)^2""",
       """96*q*psi(4)^2 - 480*q*phi(4)*psi(8) + 960*q^2*psi(8)^2 + 64*q^2*psi(16)
          - 128*phineg(1)^2*psi(4)^2""",
       "0", mod=128),
    _r("4-9", "extract(BT, 2, 4)",
       f"""64*q*{I4}^12*{I2} * f2^49*f8^2/f4^7
         + 28*{I4}^13*{I2} * f2^59/(f4^9*f8^2)
         + 2*{I4}^14*{I2} * f2^73*f8^2/f4^23""", mod=128),
    _r("4-10", "extract(BT, 2, 8)",
       f"""64*q*{I4}^31 * f2^163*f8^2/f4^47
         + 96*q*{I4}^30 * f2^149/(f4^33*f8^2)
         + 30*{I4}^32 * f2^173/(f4^49*f8^2)""", mod=128),
    _r("4-11", "extract(BT, 10, 16)", "32*f2^387/(f1^271*f4^122)",
       "32*(f2^2/f1)^3 * f4^2/f2", mod=128),
    # the 72n+21 and 72n+69 families: 3-dissections
    _r("4-12", "f2^2/f1", "f6*f9^2/(f3*f18) + q*f18^2/f9", ref="Eq. (4-12); Berndt, Corollary (ii)"),
    _r("4-14", "f1*f2", "f6*f9^4/(f3*f18^2) - q*f9*f18 - 2*q^2*f3*f18^4/(f6*f9^2)",
       ref="Eq. (4-14); Hirschhorn and Sellers"),
    _r("4-15", "f4/f1",
       "f12*f18^4/(f3^3*f36^2) + q*f6^2*f9^3*f36/(f3^4*f18^2) + 2*q^2*f6*f18*f36/f3^3",
       ref="Eq. (4-15); Andrews, Hirschhorn and Sellers"),
    _r("4-13", "extract(BT, 42, 48)",
       "32*q*f6^5*f12^2/f3^3 + 32*f2^3*f3^6*f12^2/(f1^3*f6^4) + 96*f6^5/f12 * f4/f1",
       "32*q*f6^5*f12^2/f3^3 + 32*f1*f2*f3^6 + 96*f6^5/f12 * f4/f1", mod=128),
    _r("u-144n+42", "extract(BT, 42, 144)",
       "96*f2^5*f6^4/(f1^3*f12^2) + 32*f1^5*f2*f3^4/f6^2", "0", mod=128,
       ref="unnumbered display for bt(144n+42) before Eq. (4-16)"),
    _r("u-mod3", BT_TEXT, "f12/(f3^2*f6)", mod=3,
       ref="unnumbered display before Eq. (4-18)"),
    _r("4-18", "extract(BT, 0, 3)", "f4/(f1^2*f2)", "f1*f4/(f2*f3)", mod=3),
    _r("4-19", "subq(extract(BT, 0, 6), 2) - q*subq(extract(BT, 3, 6), 2)",
       "f2^2/f1 * f3*f12/f6^3", mod=3,
       note="sum of bt(3n)(-q)^n, written as a 2-dissection of sum bt(3n) q^n"),
    _r("4-20", "extract(BT, 4, 8)",
       f"""32*q*{I4}^30*{I2} * f2^157*f8^2/f4^43
         + 16*{I4}^31*{I2} * f2^167/(f4^45*f8^2)
         + 2*{I4}^32*{I2} * f2^181*f8^2/f4^59""", mod=128),
    _r("4-21", "extract(BT, 4, 16)",
       f"""64*q*{I4}^67 * f2^379*f8^2/f4^119
         + 18*{I4}^68 * f2^389/(f4^121*f8^2)""", mod=128),
    _r("4-22", "extract(BT, 20, 32)", "96*f2^819/(f1^559*f4^266)", mod=128),
    _r("4-26", "extract(BT, 8, 32)",
       f"""64*q*{I4}^138 * f2^797/(f4^249*f8^2)
         + 64*q*{I4}^139 * f2^811*f8^2/f4^263
         + 50*{I4}^140 * f2^821/(f4^265*f8^2)""", mod=128),
    _r("4-26-1", "extract(BT, 40, 64)", "96*f2^1683/(f1^1135*f4^554)", mod=128),
    _r("4-30", "extract(BT, 16, 32)",
       f"""64*q*{I4}^138*{I2} * f2^805*f8^2/f4^259
         + 112*{I4}^139*{I2} * f2^815/(f4^261*f8^2)
         + 2*{I4}^140*{I2} * f2^829*f8^2/f4^275""", mod=128),
    _r("4-31", "extract(BT, 16, 64)",
       """64*q*f2^1675*f8^2/(f1^1132*f4^551) + 64*q*f2^1661/(f1^1128*f4^537*f8^2)
          + 114*f2^1685/(f1^1136*f4^553*f8^2)""",
       f"114*{I4}^284 * f2^1685/(f4^553*f8^2)", mod=128),
    _r("4-32", "extract(BT, 80, 128)", "96*f2^3411/(f1^2287*f4^1130)", mod=128),
    _r("u-144n+138", "extract(BT, 138, 144)",
       "64*f2^6*f6*f12/(f1^3*f4) + 64*f1^7*f6^4/(f2*f3^2)", "0", mod=128,
       ref="unnumbered display for bt(144n+138) before Eq. (4-36)"),
]

REGISTRY: dict[str, IdentityRecord] = {r.id: r for r in _RECORDS}


class UnknownIdentity(KeyError):
    pass


def get(id: str) -> IdentityRecord:
    try:
        return REGISTRY[id]
    except KeyError:
        raise UnknownIdentity(id) from None


def evaluator(modulus: int) -> Evaluator:
    return Evaluator(modulus, {k: parse_expr(v) for k, v in ENV_TEXT.items()})


def verify_record(rec: IdentityRecord, order: int, ev: Evaluator | None = None) -> VerificationReport:
    start = time.perf_counter()
    ev = ev or evaluator(rec.modulus)
    report = check_chain(rec.id, rec.sides, rec.modulus, order, ev)
    report.elapsed = time.perf_counter() - start
    return report


def verify_identity(id: str, order: int) -> VerificationReport:
    return verify_record(get(id), order)


def exact_ids() -> list[str]:
    return [r.id for r in _RECORDS if r.modulus == 0]


def modular_ids() -> list[str]:
    return [r.id for r in _RECORDS if r.modulus]


def export() -> list[dict]:
    return [r.to_dict() for r in sorted(_RECORDS, key=lambda r: r.id)]
