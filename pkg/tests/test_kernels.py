import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from ellint.errors import PoleError, SingularParameterError
from ellint.kernels import (
    big_F,
    damped_f1,
    damped_f2,
    f1,
    f1K,
    f2,
    f2K,
    geometric_quadrant_sum,
    laurent_coefficients,
    pole_geometry,
    quadrant_sum_bruteforce,
)
from ellint.lattice import reduce_to_fundamental

TAUS = [1j, complex(0.5, math.sqrt(3) / 2), 0.3 + 1.2j, 0.25 + 1.4j, 2j, -0.4 + 1.1j]


@pytest.mark.parametrize("tau", TAUS)
def test_leading_small_lambda_limit(tau):
    lam = 1e-5
    target = 1 / (1 - tau * tau)
    assert abs(lam**2 * np.exp(-lam) * f1(tau, lam).value - target) < 1e-8
    assert abs(lam**2 * np.exp(1j * tau * lam) * f2(tau, lam).value - target) < 1e-8


def test_kernels_coincide_at_square_lattice():
    lam = np.linspace(0.05, 6, 40)
    assert np.allclose(f1(1j, lam).value, f2(1j, lam).value, rtol=1e-12)


def test_regime_reporting():
    assert f1(1j, 1e-3).regime == "series"
    assert f1(1j, 1.0).regime == "direct"
    assert f1(1j, np.array([1e-3, 1.0])).regime == "mixed"


@pytest.mark.parametrize("tau, lam, K", [(0.3 + 1.1j, 0.7, 6), (1j, 2.0, 3), (0.5 + 0.9j, 0.35, 12)])
def test_remainder_identity(tau, lam, K):
    lhs1 = 2 * damped_f1(tau, lam) - 2 * np.exp(-lam * (K + 1)) * f1K(tau, lam, K)
    rhs1 = geometric_quadrant_sum(np.exp(-lam), np.exp(-lam * tau), K)
    lhs2 = 2 * damped_f2(tau, lam) - 2 * np.exp(1j * tau * lam * (K + 1)) * f2K(tau, lam, K)
    rhs2 = geometric_quadrant_sum(np.exp(1j * tau * lam), np.exp(1j * lam), K)
    assert abs(lhs1 - rhs1) < 1e-12 * max(1, abs(rhs1))
    assert abs(lhs2 - rhs2) < 1e-12 * max(1, abs(rhs2))


def test_remainder_vanishes_for_large_K():
    assert abs(np.exp(-51.0) * f1K(1j, 1.0, 50)) < 1e-20


def test_remainder_finite_at_removable_zero():
    lam = 2 * math.pi
    v = f1K(1j, lam, 5)
    v_near = f1K(1j, lam * (1 + 1e-9), 5)
    assert np.isfinite(v) and abs(v - v_near) < 1e-6
    w = f2K(0.3 + 1.2j, lam, 4)
    assert abs(w - f2K(0.3 + 1.2j, lam * (1 + 1e-9), 4)) < 1e-6


def test_damped_kernels_decay():
    for tau in TAUS:
        assert abs(damped_f2(tau, 40.0)) < 1e-12
        assert abs(damped_f1(tau, 40.0)) < 1e-6


def test_geometric_sum_examples():
    assert geometric_quadrant_sum(0, 0.3, 5) == 0
    for p, q, K in [(0.5, 0.5, 3), (0.3, 1.0, 4), (0.2 + 0.1j, 0.7 - 0.2j, 9)]:
        assert abs(geometric_quadrant_sum(p, q, K) - quadrant_sum_bruteforce(p, q, K)) < 1e-14
    with pytest.raises(SingularParameterError):
        geometric_quadrant_sum(0.3, 0.0, 3)


cplx = st.builds(complex, st.floats(-0.9, 0.9), st.floats(-0.9, 0.9))


@given(cplx, st.builds(complex, st.floats(0.5, 1.5), st.floats(-0.3, 0.3)), st.integers(1, 30))
def test_geometric_sum_matches_enumeration(p, q, K):
    ref = quadrant_sum_bruteforce(p, q, K)
    scale = max(1.0, sum(abs(p) ** i * max(abs(q), 1 / abs(q)) ** i * (2 * i + 1) for i in range(1, K + 1)))
    assert abs(geometric_quadrant_sum(p, q, K) - ref) < 1e-9 * scale


def test_random_remainder_identities(rng):
    for _ in range(100):
        tau = reduce_to_fundamental(1, complex(rng.uniform(-1, 1), rng.uniform(0.5, 2.5))).tau
        lam = rng.uniform(0.05, 4.0)
        K = int(rng.integers(1, 15))
        lhs = 2 * damped_f1(tau, lam) - 2 * np.exp(-lam * (K + 1)) * f1K(tau, lam, K)
        rhs = geometric_quadrant_sum(np.exp(-lam), np.exp(-lam * tau), K)
        assert abs(lhs - rhs) < 1e-9 * max(1, abs(rhs))


@pytest.mark.parametrize("tau", TAUS)
def test_series_and_direct_agree_at_threshold(tau):
    lam = np.array([0.004, 0.008, 0.0099, 0.012, 0.02])
    for fn in (damped_f1, damped_f2):
        a = fn(tau, lam, threshold=0.0)
        b = fn(tau, lam, threshold=1.0)
        assert np.allclose(a, b, rtol=1e-9)


def test_laurent_leading_coefficient():
    tau = 0.3 + 1.2j
    for which in (1, 2):
        c = laurent_coefficients(tau, which)
        assert abs(c[0] - 1 / (1 - tau * tau)) < 1e-14


def test_big_F_small_z_limits():
    assert abs(big_F(2, 1e-9, 1j)) < 1e-12
    tau = 0.3 + 1.2j
    assert abs(big_F(2, 1e-9, tau) + (1 + tau * tau) / (12 * (1 - tau * tau))) < 1e-10


def test_big_F_s2_against_high_precision():
    tau = 0.3 + 1.2j
    z = 1e-4
    mpmath.mp.dps = 50
    t, x = mpmath.mpc(tau.real, tau.imag), mpmath.mpf(z)
    g1 = mpmath.exp(-x) * mpmath.cosh(t * x / 2) ** 2 / (1 - 2 * mpmath.exp(-x) * mpmath.cosh(t * x) + mpmath.exp(-2 * x))
    g2 = mpmath.exp(1j * t * x) * mpmath.cos(x / 2) ** 2 / (1 - 2 * mpmath.exp(1j * t * x) * mpmath.cos(x) + mpmath.exp(2j * t * x))
    ref = complex(-g1 + g2)
    assert abs(big_F(2, z, tau) - ref) < 1e-10


def test_big_F_s2_bounded_linearly():
    tau = 0.3 + 1.2j
    f0 = big_F(2, 1e-12, tau)
    zs = np.array([1e-5, 1e-4, 1e-3])
    d = np.abs(big_F(2, zs, tau) - f0)
    assert np.all(d <= 10 * zs)


def test_pole_geometry_examples():
    assert abs(pole_geometry(1j).rho - math.pi * math.sqrt(2)) < 1e-14
    assert abs(pole_geometry(2j).rho - 2 * math.pi / math.sqrt(5)) < 1e-14
    g = pole_geometry(0.3 + 1.2j)
    assert np.min(np.abs(g.poles)) >= g.rho - 1e-12


def test_near_pole_rejected():
    tau = 0.3 + 1.2j
    p = 2j * math.pi / (1 - tau)
    with pytest.raises(PoleError):
        f1(tau, p)
