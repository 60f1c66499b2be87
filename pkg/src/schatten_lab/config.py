"""Tolerances and run configuration shared by every module."""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass, field


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances.

    ``sym`` is absolute (conjugate-symmetry certificates), ``decomp`` is
    relative (eigen/SVD reconstructions), ``quad`` is relative (integral
    representations) and ``gap`` is the slack allowed on inequality gaps,
    scaled by ``max(1, |lhs|, |rhs|)``.
    """

    sym: float = 1e-12
    decomp: float = 1e-9
    quad: float = 1e-6
    gap: float = 1e-9

    def __post_init__(self):
        for name, value in asdict(self).items():
            if not value > 0:
                raise ValueError(f"tolerance {name} must be positive, got {value}")


DEFAULT_TOL = Tolerances()


@dataclass(frozen=True)
class RunConfig:
    seed: int = 42
    trials: int = 100
    dims: tuple[int, ...] = (2, 3, 4)
    tolerances: Tolerances = field(default_factory=Tolerances)
    s_list: tuple[float, ...] = (0.75, 0.5, 0.25, -0.5, -2.0)
    p_list: tuple[float, ...] = (1.2, 2.5, 3.0, 5.0)
    grid: int = 721
    threads: int = 0
    out: str | None = None

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not self.dims or any(d < 1 for d in self.dims):
            raise ValueError("dims must be a non-empty list of positive integers")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["dims"] = list(self.dims)
        d["s_list"] = list(self.s_list)
        d["p_list"] = list(self.p_list)
        return d


def thread_count(requested: int = 0) -> int:
    """Worker count: explicit request, else ``SCHATTEN_LAB_THREADS``, else CPU count."""
    if requested > 0:
        return requested
    env = os.environ.get("SCHATTEN_LAB_THREADS", "0").strip() or "0"
    try:
        n = int(env)
    except ValueError:
        n = 0
    if n > 0:
        return n
    return max(1, min(8, os.cpu_count() or 1))
