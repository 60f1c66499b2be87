"""Numerical checks of Schatten quasinorm and antinorm inequalities."""

from .config import DEFAULT_TOL, RunConfig, Tolerances
from .errors import (
    DomainError,
    EigenError,
    InadmissibleTargetError,
    NotMajorizedError,
    SchattenLabError,
    SchemeError,
)
from .reports import GapReport, Verdict, summarize
from .schatten import kyfan, schatten, schatten_s_power, trace_norm, vector_s
from .suites import SUITES, run_suite

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOL",
    "RunConfig",
    "Tolerances",
    "DomainError",
    "EigenError",
    "InadmissibleTargetError",
    "NotMajorizedError",
    "SchattenLabError",
    "SchemeError",
    "GapReport",
    "Verdict",
    "summarize",
    "kyfan",
    "schatten",
    "schatten_s_power",
    "trace_norm",
    "vector_s",
    "SUITES",
    "run_suite",
]
