from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional


@dataclass
class VerificationReport:
    """Outcome of checking one identity or congruence claim.

    ``range_checked`` is the truncation order for identities and the largest
    argument scanned for claims.  A failing report always carries a
    counterexample ``(index, value)``, where value is the offending residue.
    """
    id: str
    range_checked: int
    passed: bool
    counterexample: Optional[tuple[int, int]] = None
    elapsed: float = 0.0
    detail: str = ""

    def __post_init__(self):
        if not self.passed and self.counterexample is None:
            raise ValueError(f"failing report {self.id!r} needs a counterexample")

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        d = asdict(self)
        d["status"] = self.status
        d["range"] = d.pop("range_checked")
        d.pop("passed")
        if d["counterexample"] is not None:
            d["counterexample"] = list(d["counterexample"])
        else:
            d.pop("counterexample")
        if not d["detail"]:
            d.pop("detail")
        return d

    def line(self) -> str:
        s = f"{self.status.upper():4}  {self.id:<22} range {self.range_checked:<6} {self.elapsed:7.2f}s"
        if self.counterexample is not None:
            n, v = self.counterexample
            s += f"  first failure at {n} (residue {v})"
        if self.detail:
            s += f"  {self.detail}"
        return s
