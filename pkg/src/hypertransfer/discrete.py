"""Reference multiplier constructions on the integers: the Cesaro triangular
symbol and the one-dimensional tent (piecewise-linear) extension."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class DiscreteSymbol:
    values: Mapping[int, float]
    support_bound: int

    def __post_init__(self) -> None:
        if self.support_bound < 0:
            raise DomainError("support bound must be nonnegative")
        for k, v in self.values.items():
            if abs(k) > self.support_bound and v != 0.0:
                raise DomainError(f"value at k={k} outside the declared support")

    def __call__(self, k: int) -> float:
        return float(self.values.get(k, 0.0))


def cesaro_symbol(n: int) -> DiscreteSymbol:
    """C_n(k) = (1 - |k|/(n+1)) on [-n, n], zero outside."""
    if n < 0:
        raise DomainError("need n >= 0")
    vals = {k: 1.0 - abs(k) / (n + 1.0) for k in range(-n, n + 1)}
    return DiscreteSymbol(values=vals, support_bound=n)


def jodeit_extend_1d(m: DiscreteSymbol, xi: float) -> float:
    """Tent interpolation sum_k m(k) * tri(xi - k); exact at integers and
    affine on each unit interval."""
    if not math.isfinite(xi):
        raise DomainError(f"need finite xi, got {xi!r}")
    k0 = math.floor(xi)
    frac = xi - k0
    return m(k0) * (1.0 - frac) + m(k0 + 1) * frac


def kernel_values(m: DiscreteSymbol, grid: int) -> np.ndarray:
    """The trigonometric polynomial sum_k m(k) e^{ikt} on a uniform grid over
    [0, 2pi); real-valued for even symbols, returned as the real part."""
    if grid < 2 * m.support_bound + 1:
        raise DomainError("grid must resolve the symbol support")
    ts = 2.0 * math.pi * np.arange(grid) / grid
    total = np.zeros(grid)
    for k in range(-m.support_bound, m.support_bound + 1):
        v = m(k)
        if v != 0.0:
            total += v * np.cos(k * ts)
    return total


def positive_definite_witness(m: DiscreteSymbol, grid: int) -> bool:
    return bool(np.all(kernel_values(m, grid) >= -1e-10))


def cesaro_positivity_check(n: int, grid: int) -> bool:
    """True iff the order-n triangular kernel is nonnegative on the grid."""
    return positive_definite_witness(cesaro_symbol(n), grid)
