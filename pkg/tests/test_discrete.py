"""Triangular symbol on the integers, tent extension, and the kernel
positivity witness."""

import math

import numpy as np
import pytest

from hypertransfer.discrete import (
    DiscreteSymbol,
    cesaro_positivity_check,
    cesaro_symbol,
    jodeit_extend_1d,
    kernel_values,
    positive_definite_witness,
)
from hypertransfer.errors import DomainError


def test_cesaro_examples():
    c0 = cesaro_symbol(0)
    assert c0(0) == 1.0 and c0(1) == 0.0 and c0(-3) == 0.0
    c2 = cesaro_symbol(2)
    assert c2(0) == 1.0
    assert abs(c2(1) - 2.0 / 3.0) < 1e-15
    assert abs(c2(-2) - 1.0 / 3.0) < 1e-15
    assert c2(3) == 0.0
    assert all(0.0 <= c2(k) <= 1.0 for k in range(-5, 6))
    with pytest.raises(DomainError):
        cesaro_symbol(-1)


def test_cesaro_monotone_in_n():
    for k in (0, 1, 3, 7):
        vals = [cesaro_symbol(n)(k) for n in range(k, 40)]
        assert all(b >= a for a, b in zip(vals, vals[1:]))
        assert vals[-1] >= 1.0 - abs(k) / 40.0


def test_symbol_support_validation():
    with pytest.raises(DomainError):
        DiscreteSymbol(values={5: 1.0}, support_bound=2)
    with pytest.raises(DomainError):
        DiscreteSymbol(values={0: 1.0}, support_bound=-1)
    s = DiscreteSymbol(values={5: 0.0, 1: 0.5}, support_bound=2)  # explicit zero is fine
    assert s(1) == 0.5 and s(2) == 0.0


def test_jodeit_tent_examples():
    delta = DiscreteSymbol(values={0: 1.0}, support_bound=0)
    assert jodeit_extend_1d(delta, 0.0) == 1.0
    assert jodeit_extend_1d(delta, 0.5) == 0.5
    assert jodeit_extend_1d(delta, 1.0) == 0.0
    assert jodeit_extend_1d(delta, -0.25) == 0.75
    c2 = cesaro_symbol(2)
    assert abs(jodeit_extend_1d(c2, 1.5) - 0.5) < 1e-15
    with pytest.raises(DomainError):
        jodeit_extend_1d(delta, math.inf)


def test_jodeit_interpolates_and_affine():
    c = cesaro_symbol(4)
    for k in range(-6, 7):
        assert jodeit_extend_1d(c, float(k)) == c(k)
    rng = np.random.default_rng(2)
    for _ in range(100):
        k = int(rng.integers(-5, 5))
        lam = float(rng.uniform())
        want = (1.0 - lam) * c(k) + lam * c(k + 1)
        assert abs(jodeit_extend_1d(c, k + lam) - want) < 1e-14


def test_jodeit_partition_of_unity():
    n = 6
    flat = DiscreteSymbol(values={k: 1.0 for k in range(-n, n + 1)}, support_bound=n)
    for xi in np.linspace(-n + 1, n - 1, 41):
        assert abs(jodeit_extend_1d(flat, float(xi)) - 1.0) < 1e-14


def test_positivity_examples():
    assert cesaro_positivity_check(5, 256)
    assert cesaro_positivity_check(0, 8)
    assert all(cesaro_positivity_check(n, 256) for n in range(33))
    bad = dict(cesaro_symbol(2).values)
    bad[2] = bad[-2] = -1.0 / 3.0
    corrupted = DiscreteSymbol(values=bad, support_bound=2)
    assert not positive_definite_witness(corrupted, 256)
    # flipping the +-1 weights instead yields 1 - (4/3)cos t + (2/3)cos 2t
    # = (4/3)(cos t - 1/2)^2, which bottoms out at exactly zero: still a witness
    edge = dict(cesaro_symbol(2).values)
    edge[1] = edge[-1] = -2.0 / 3.0
    assert positive_definite_witness(DiscreteSymbol(values=edge, support_bound=2), 256)


def test_kernel_against_closed_form():
    # order-n triangular kernel = (1/(n+1)) (sin((n+1)t/2) / sin(t/2))^2
    n, grid = 7, 128
    got = kernel_values(cesaro_symbol(n), grid)
    ts = 2.0 * math.pi * np.arange(grid) / grid
    with np.errstate(invalid="ignore", divide="ignore"):
        closed = (np.sin((n + 1) * ts / 2.0) / np.sin(ts / 2.0)) ** 2 / (n + 1.0)
    closed[0] = n + 1.0
    assert np.max(np.abs(got - closed)) < 1e-10


def test_kernel_mass_and_grid():
    for n in (0, 3, 16):
        vals = kernel_values(cesaro_symbol(n), 128)
        assert abs(float(vals.mean()) - 1.0) < 1e-10  # mass = C_n(0)
    with pytest.raises(DomainError):
        kernel_values(cesaro_symbol(16), 32)
