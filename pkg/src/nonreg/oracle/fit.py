"""Least-squares fits of measured profiles against constant, log, sqrt and linear growth.

Verdicts describe the measured range only; they say nothing about limits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..common import Profile

FAMILIES = {
    "constant": lambda n: 1.0,
    "log": lambda n: math.log(n),
    "sqrt": lambda n: math.sqrt(n),
    "linear": lambda n: float(n),
}


@dataclass(frozen=True)
class Fit:
    family: str
    C: float
    max_residual: float   # largest |value / (C f(n)) - 1| over nonzero points
    consistent: bool      # value(n) <= C f(n) (1 + tol) at every measured n >= n0
    lower: float          # largest C' with value(n) >= C' f(n) at every nonzero point

    @property
    def verdict(self) -> str:
        word = "consistent" if self.consistent else "inconsistent"
        return f"{word} with O({self.family}) at measured scale"


def growth_fit(p: Profile, family: str, n0: int = 4, tol: float = 0.15) -> Fit:
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {sorted(FAMILIES)}")
    f = FAMILIES[family]
    points = [(n, v) for n, v in sorted(p.entries.items()) if n >= n0]
    if len(points) < 3:
        raise ValueError("growth_fit needs at least 3 points with n >= n0")
    nonzero = [(n, v) for n, v in points if v]
    if not nonzero:
        return Fit(family, 0.0, 0.0, True, 0.0)
    C = sum(v * f(n) for n, v in nonzero) / sum(f(n) ** 2 for n, _ in nonzero)
    residual = max(abs(v / (C * f(n)) - 1) for n, v in nonzero)
    consistent = all(v <= C * f(n) * (1 + tol) for n, v in points)
    lower = min(v / f(n) for n, v in nonzero)
    return Fit(family, C, residual, consistent, lower)
