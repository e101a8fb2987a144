"""Right lattice cocycle, domain samplers, and the Monte-Carlo transferred
symbol."""

import math

import numpy as np
import pytest

from hypertransfer.cocycle import (
    CocycleResult,
    DomainPoint,
    _beta_batch,
    _sample_xyth,
    cocycle_beta,
    domain_measure_mc,
    domain_point,
    sample_domain,
    transferred_symbol_mc,
)
from hypertransfer.errors import DomainError
from hypertransfer.modular import I2, IntMat2, symbol_m_sign, symbol_m_word
from hypertransfer.sl2 import RealMat2, cartan_a, rotation


def random_point(rng: np.random.Generator) -> DomainPoint:
    x = float(rng.uniform(-0.5, 0.5))
    y = float(math.sqrt(1.0 - x * x) / (1.0 - rng.uniform(0.0, 0.9)))
    return domain_point(x, y, float(rng.uniform(0.0, math.pi)))


def random_group_elt(rng: np.random.Generator) -> RealMat2:
    # KAK with r in [0.5, 2]: operator norm at most 2
    return (
        rotation(float(rng.uniform(0, 2 * math.pi)))
        @ cartan_a(float(rng.uniform(0.5, 2.0)))
        @ rotation(float(rng.uniform(0, 2 * math.pi)))
    )


def test_domain_point_validation():
    domain_point(0.5, 0.9, 0.0)  # corner of the domain is fine
    with pytest.raises(DomainError):
        domain_point(0.6, 2.0, 0.0)
    with pytest.raises(DomainError):
        domain_point(0.0, 0.9, 0.0)
    with pytest.raises(DomainError):
        domain_point(0.0, 2.0, math.pi)
    with pytest.raises(DomainError):
        domain_point(0.0, 2.0, -0.1)


def test_identity_gives_trivial_beta():
    rng = np.random.default_rng(7)
    for _ in range(20):
        p = random_point(rng)
        res = cocycle_beta(p, RealMat2(1.0, 0.0, 0.0, 1.0))
        assert res.beta == I2
        assert abs(res.moved.k0_angle - p.k0_angle) <= 1e-12
        for u, v in zip(res.moved.s0.entries(), p.s0.entries()):
            assert abs(u - v) <= 1e-12 * max(1.0, abs(v))


def test_rotation_gives_plusminus_identity():
    rng = np.random.default_rng(8)
    for _ in range(50):
        p = random_point(rng)
        res = cocycle_beta(p, rotation(float(rng.uniform(0, 2 * math.pi))))
        assert res.beta in (I2, I2.neg())


def test_result_invariant_and_moved_validity():
    rng = np.random.default_rng(9)
    for _ in range(200):
        p, g = random_point(rng), random_group_elt(rng)
        res = cocycle_beta(p, g)
        assert isinstance(res, CocycleResult)
        lhs = res.beta.inv().to_real() @ p.s0 @ rotation(p.k0_angle) @ g
        rhs = res.moved.s0 @ rotation(res.moved.k0_angle)
        for u, v in zip(lhs.entries(), rhs.entries()):
            assert abs(u - v) <= 1e-9
        # moved passed DomainPoint validation already; spot-check the angle
        assert 0.0 <= res.moved.k0_angle < math.pi


def test_right_cocycle_identity_exact():
    rng = np.random.default_rng(10)
    for _ in range(1000):
        p = random_point(rng)
        g1, g2 = random_group_elt(rng), random_group_elt(rng)
        whole = cocycle_beta(p, g1 @ g2).beta
        step1 = cocycle_beta(p, g1)
        step2 = cocycle_beta(step1.moved, g2)
        assert whole == step1.beta @ step2.beta


def test_k_shift_flips_at_most_sign():
    rng = np.random.default_rng(11)
    for _ in range(100):
        p, g = random_point(rng), random_group_elt(rng)
        k = rotation(float(rng.uniform(0, 2 * math.pi)))
        b = cocycle_beta(p, g).beta
        bk = cocycle_beta(p, g @ k).beta
        assert bk in (b, b.neg())


def test_sample_domain_deterministic():
    a = sample_domain(123, 50)
    b = sample_domain(123, 50)
    assert len(a) == 50
    for p, q in zip(a, b):
        assert p.s0.entries() == q.s0.entries()
        assert p.k0_angle == q.k0_angle
    c = sample_domain(124, 50)
    assert any(p.k0_angle != q.k0_angle for p, q in zip(a, c))
    with pytest.raises(DomainError):
        sample_domain(123, 0)


def test_sample_domain_marginals():
    n = 10 ** 6
    x, y, theta = _sample_xyth(2024, n)
    assert np.all(np.abs(x) <= 0.5) and np.all(y * y + x * x >= 1.0 - 1e-9)
    # theta uniform on [0, pi): mean pi/2 within 3 standard errors
    se = math.pi / math.sqrt(12.0 * n)
    assert abs(float(theta.mean()) - math.pi / 2.0) <= 3.0 * se
    # x marginal has density prop. to 1/sqrt(1-x^2): KS against the CDF
    cdf = (np.arcsin(np.sort(x)) + math.pi / 6.0) * (3.0 / math.pi)
    emp = np.arange(1, n + 1) / n
    ks = float(np.max(np.abs(cdf - emp)))
    assert ks < 0.002


def test_domain_measure_estimate():
    est, se = domain_measure_mc(5, 200_000)
    assert se > 0.0
    assert abs(est - math.pi / 3.0) <= 3.0 * se


def test_transferred_symbol_identity_and_constant():
    est, se = transferred_symbol_mc(symbol_m_word, RealMat2(1.0, 0.0, 0.0, 1.0), 4000, 3)
    assert (est, se) == (1.0, 0.0)
    est, se = transferred_symbol_mc(lambda g: 1.0, cartan_a(0.7), 4000, 3)
    assert (est, se) == (1.0, 0.0)


def test_transferred_symbol_range_and_evenness():
    g = cartan_a(0.4) @ rotation(0.3)
    est, _ = transferred_symbol_mc(symbol_m_word, g, 20_000, 12)
    assert 0.0 <= est <= 1.0
    neg = RealMat2(-g.a, -g.b, -g.c, -g.d)
    est2, se2 = transferred_symbol_mc(symbol_m_word, neg, 20_000, 12)
    assert est2 == est
    est3, _ = transferred_symbol_mc(symbol_m_word, g, 20_000, 13)
    assert est3 != est  # different seed, different draw


def test_batch_beta_matches_scalar():
    g = rotation(0.7) @ cartan_a(0.3)
    x, y, theta = _sample_xyth(77, 300)
    A, B, C, D = _beta_batch(x, y, theta, g)
    for i in range(300):
        p = domain_point(float(x[i]), float(y[i]), float(theta[i]))
        b = cocycle_beta(p, g).beta
        assert (int(A[i]), int(B[i]), int(C[i]), int(D[i])) == b.entries()


def test_batch_symbol_matches_scalar_symbols():
    g = cartan_a(0.25)
    n, seed = 5000, 21
    fast, _ = transferred_symbol_mc(symbol_m_word, g, n, seed)
    slow, _ = transferred_symbol_mc(lambda b: symbol_m_word(b), g, n, seed)
    assert fast == slow
    fast_s, _ = transferred_symbol_mc(symbol_m_sign, g, n, seed)
    slow_s, _ = transferred_symbol_mc(lambda b: float(symbol_m_sign(b)), g, n, seed)
    assert fast_s == slow_s
