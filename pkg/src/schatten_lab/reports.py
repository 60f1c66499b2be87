"""Evaluated inequality sides and their verdicts."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np


class Verdict(str, Enum):
    HOLDS = "holds"
    VIOLATED = "violated"
    WITHIN_TOLERANCE = "within-tolerance"


@dataclass(frozen=True)
class GapReport:
    """One evaluated inequality.

    ``gap`` is ``lhs - rhs``.  ``expect`` is ``"ge"`` when the inequality
    asserts ``gap >= 0`` and ``"le"`` when it asserts ``gap <= 0``.  Reports
    built outside the domain where the inequality is claimed carry
    ``asserted=False``; their verdict is informative only.
    """

    lhs: float
    rhs: float
    gap: float
    verdict: Verdict
    expect: str = "ge"
    asserted: bool = True
    context: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.verdict is not Verdict.VIOLATED

    @property
    def violation(self) -> bool:
        """True only for asserted reports whose verdict is a violation."""
        return self.asserted and self.verdict is Verdict.VIOLATED

    @property
    def signed_gap(self) -> float:
        """Gap oriented so that the claimed direction is nonnegative."""
        return self.gap if self.expect == "ge" else -self.gap

    @property
    def scale(self) -> float:
        return max(1.0, abs(self.lhs), abs(self.rhs))

    def to_dict(self) -> dict:
        return {
            "lhs": self.lhs,
            "rhs": self.rhs,
            "gap": self.gap,
            "verdict": self.verdict.value,
            "expect": self.expect,
            "asserted": self.asserted,
            "context": self.context,
        }


def judge(gap: float, scale: float, tol: float, expect: str = "ge") -> Verdict:
    if expect not in ("ge", "le"):
        raise ValueError(f"expect must be 'ge' or 'le', got {expect!r}")
    if not np.isfinite(gap):
        return Verdict.VIOLATED
    if abs(gap) <= tol * scale:
        return Verdict.WITHIN_TOLERANCE
    if (gap > 0) == (expect == "ge"):
        return Verdict.HOLDS
    return Verdict.VIOLATED


def gap_report(
    lhs: float,
    rhs: float,
    *,
    expect: str = "ge",
    tol: float = 1e-9,
    asserted: bool = True,
    scale: float | None = None,
    **context,
) -> GapReport:
    lhs = float(lhs)
    rhs = float(rhs)
    gap = lhs - rhs
    if scale is None:
        scale = max(1.0, abs(lhs), abs(rhs))
    return GapReport(
        lhs=lhs,
        rhs=rhs,
        gap=gap,
        verdict=judge(gap, scale, tol, expect),
        expect=expect,
        asserted=asserted,
        context=context,
    )


def summarize(reports) -> dict:
    reports = list(reports)
    asserted = [r for r in reports if r.asserted]
    signed = [r.signed_gap for r in asserted if np.isfinite(r.signed_gap)]
    return {
        "min_gap": min(signed) if signed else None,
        "violations": sum(r.violation for r in reports),
        "samples": len(reports),
        "asserted": len(asserted),
    }
